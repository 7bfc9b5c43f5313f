"""Thread-pool execution of independent sweeps and dependency-ordered check graphs."""
import concurrent.futures
from typing import Any, Callable, Dict, List, Sequence


class ParallelExecutor:
    """Runs independent tasks on a thread pool; a failing task yields {"error": message}."""

    def __init__(self, max_workers: int = 3):
        if max_workers < 1:
            raise ValueError(f"max_workers must be positive, got {max_workers}")
        self.max_workers = max_workers

    def execute_parallel(self, tasks: List[Dict[str, Any]]) -> Dict[Any, Any]:
        """Execute independent tasks.

        Args:
            tasks: List of task dicts with 'name', 'func', and 'args'

        Returns:
            Dict mapping task names to results
        """
        results = {}
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_task = {
                executor.submit(task['func'], *task.get('args', [])): task['name']
                for task in tasks
            }
            for future in concurrent.futures.as_completed(future_to_task):
                task_name = future_to_task[future]
                try:
                    results[task_name] = future.result()
                except Exception as e:
                    results[task_name] = {"error": f"{type(e).__name__}: {e}"}
        return results

    def map_ordered(self, func: Callable, items: Sequence[Any]) -> List[Any]:
        """func over items, results in input order."""
        tasks = [{'name': i, 'func': func, 'args': [item]} for i, item in enumerate(items)]
        results = self.execute_parallel(tasks)
        return [results[i] for i in range(len(items))]

    def execute_with_dependencies(self, task_graph: Dict[str, Dict[str, Any]]) -> Dict[str, Any]:
        """Execute tasks in waves that respect 'depends_on'.

        Args:
            task_graph: Dict of task_id -> {func, args, depends_on, inject}.
                With inject set, the func gets a dict of its dependencies' results
                as the final positional argument.

        Returns:
            Dict mapping task IDs to results
        """
        results = {}
        completed = set()

        def ready(task_id: str) -> bool:
            return all(dep in completed for dep in task_graph[task_id].get('depends_on', []))

        while len(completed) < len(task_graph):
            wave = [t for t in task_graph if t not in completed and ready(t)]
            if not wave:
                remaining = set(task_graph) - completed
                raise RuntimeError(f"Circular dependency detected: {remaining}")

            tasks = []
            for task_id in wave:
                node = task_graph[task_id]
                args = list(node.get('args', []))
                if node.get('inject'):
                    args.append({dep: results[dep] for dep in node.get('depends_on', [])})
                tasks.append({'name': task_id, 'func': node['func'], 'args': args})

            results.update(self.execute_parallel(tasks))
            completed.update(wave)
        return results
