"""Command workflows behind the CLI: generation, verification, statistics, search and export."""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional
import sys
sys.path.append(str(Path(__file__).parent.parent))

from circuits.export import subparts_catalog, to_json_record, to_qasm, to_text
from circuits.gate_stats import (
    closed_form_stats,
    compare_entanglement_structures,
    compare_with_closed_forms,
    gate_stats,
    sample_indices,
)
from circuits.mub_circuit import generate_batch
from gf2n.field import IrreduciblePoly, context_for, find_irreducible, list_irreducibles
from orchestrator.parallel_executor import ParallelExecutor
from search.method_one import MethodOneSearcher, MubSet, seed_matrix
from search.search_memory import SearchMemory
from utils.config_loader import get_logs_dir, get_reports_dir, load_config
from utils.logger import RunLogger, to_jsonable
from utils.run_config import RunConfig
from verification.simulator import check_cap
from verification.structure_checks import (
    check_entanglement_structure,
    check_gate_statistics,
    check_linear_relation,
    exponent_law_report,
)
from verification.verifier import MubVerifier


class MubWorkflow:
    """Runs one CLI command and records its steps."""

    def __init__(self, config_path: Optional[str] = None):
        self.config = load_config(config_path)
        self.logger = RunLogger(str(get_logs_dir(self.config)))
        parallel = self.config['parallel_execution']
        self.executor = ParallelExecutor(max_workers=parallel['max_workers'] if parallel['enabled'] else 1)
        self.verifier = MubVerifier(self.config)
        self.searcher = MethodOneSearcher(self.config)
        self.reports_dir = get_reports_dir(self.config)

    def resolve_context(self, n: int, poly: Optional[str] = None) -> IrreduciblePoly:
        """The user's polynomial if given, else the default choice for n."""
        if n < 1:
            raise ValueError(f"n must be at least 1, got {n}")
        if poly is None:
            return find_irreducible(n)
        ctx = context_for(poly)
        if ctx.n != n:
            raise ValueError(f"polynomial {ctx.text} has degree {ctx.n}, expected {n}")
        return ctx

    def _run(self, step: str, inputs: Dict[str, Any], body):
        try:
            result = body()
            self.logger.log_step(step, inputs, self._loggable(result))
            return result
        except Exception as e:
            self.logger.log_error(step, e, inputs)
            raise
        finally:
            self.logger.save()

    @staticmethod
    def _loggable(result: Any) -> Any:
        if isinstance(result, dict):
            return {k: v for k, v in result.items() if k not in ("table", "text")}
        return result

    def _save_report(self, name: str, report: Dict[str, Any]) -> str:
        self.reports_dir.mkdir(parents=True, exist_ok=True)
        path = self.reports_dir / name
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(to_jsonable(self._loggable(report)), f, indent=2)
        return str(path)

    def cmd_gen(self, run: RunConfig) -> str:
        """Circuits for the selected indices in the requested format."""
        def body():
            ctx = self.resolve_context(run.n, run.poly)
            circuits = generate_batch(ctx, run.indices())
            if run.output_format == "qasm":
                text = "\n".join(to_qasm(c) for c in circuits)
            elif run.output_format == "text":
                text = "\n".join(to_text(c) for c in circuits) + "\n"
            else:
                text = json.dumps([to_json_record(c) for c in circuits], indent=2) + "\n"
            return {"n": run.n, "poly": ctx.text, "circuits": len(circuits), "text": text}

        return self._run("gen", run.model_dump(), body)["text"]

    def cmd_verify(self, n: int, poly: Optional[str] = None) -> Dict[str, Any]:
        """Numerical and structural verification of the whole family for one n."""
        def body():
            check_cap(n, self.config['verification']['unitary_cap'])
            ctx = self.resolve_context(n, poly)
            structure_cap = self.config['verification']['structure_cap']
            graph = {
                "full_set": {'func': self.verifier.verify_full_set, 'args': [ctx]},
                "coefficients": {'func': self.verifier.coefficient_distribution, 'args': [ctx]},
                "entanglement": {'func': check_entanglement_structure, 'args': [ctx, structure_cap]},
                "linear_relation": {'func': check_linear_relation, 'args': [ctx, structure_cap]},
                "gate_statistics": {'func': check_gate_statistics, 'args': [ctx]},
                "exponent_law": {'func': exponent_law_report, 'args': [n]},
            }
            graph["summary"] = {
                'func': self._summarize,
                'depends_on': list(graph),
                'inject': True,
            }
            results = self.executor.execute_with_dependencies(graph)
            report = results["summary"]
            report.update({"n": n, "poly": ctx.text})
            report["report_file"] = self._save_report(f"verify_n{n}.json", report)
            return report

        return self._run("verify", {"n": n, "poly": poly}, body)

    @staticmethod
    def _summarize(results: Dict[str, Any]) -> Dict[str, Any]:
        checks = []
        for name, result in results.items():
            if "error" in result and "passed" not in result:
                checks.append({"name": name, "passed": False, "error": result["error"]})
            elif "checks" in result:
                checks.extend(result["checks"])
            else:
                checks.append(result)
        failures = [c for c in checks if not c["passed"]]
        return {"checks": checks, "failures": len(failures), "passed": not failures}

    def cmd_stats(self, n: int, poly: Optional[str] = None, sample: Optional[int] = None,
                  seed: Optional[int] = None, compare_polys: bool = False) -> Dict[str, Any]:
        """Gate statistics: exhaustive when 2^n is small enough, else over a seeded sample."""
        def body():
            ctx = self.resolve_context(n, poly)
            ceiling = self.config['generation']['max_enumerated_indices']
            if sample is None and (1 << n) > ceiling:
                raise ValueError(f"2^{n} circuits exceed the enumeration ceiling; pass --sample")
            exhaustive = sample is None
            js = range(1 << n) if exhaustive else sample_indices(n, sample, seed)
            stats = gate_stats(ctx, js)
            report = {k: v for k, v in stats.items() if k != "table"}
            report["mode"] = "exhaustive" if exhaustive else f"sample of {sample} (seed {seed})"
            if exhaustive:
                report["closed_forms"] = compare_with_closed_forms(stats)
            else:
                report["closed_forms"] = {"expected": closed_form_stats(n)}
            if compare_polys:
                report["entanglement"] = compare_entanglement_structures(list(list_irreducibles(n)))
            report["report_file"] = self._save_report(f"stats_n{n}.json", report)
            return report

        return self._run("stats", {"n": n, "poly": poly, "sample": sample, "seed": seed}, body)

    def cmd_search(self, n: int, strategy: Optional[str] = None, limit: Optional[int] = None,
                   general_phases: bool = False, resume: Optional[str] = None) -> Dict[str, Any]:
        """Diagonal-extension search seeded with the configured complex Hadamard matrix."""
        settings = self.config['search']
        strategy = strategy or settings['default_strategy']

        def body():
            order = 2 * (1 << n) if general_phases else settings['phase_order']
            mset = MubSet(seed=seed_matrix(settings['seed_matrix'], n))
            memory = SearchMemory(resume) if resume else None
            resumed = memory.get_stats() if memory and memory.state else None
            outcome = self.searcher.search_extend(mset, strategy, limit, order=order, memory=memory)
            for found in outcome.sets:
                self.searcher.certify_set(found)
            report = {
                "n": n,
                "strategy": strategy,
                "phase_order": order,
                "status": outcome.status,
                "candidates": outcome.candidates,
                "steps": outcome.steps,
                "resumed_from": resumed,
                "sets": [s.to_record() for s in outcome.sets],
                "passed": all(s.certification["certified"] for s in outcome.sets),
            }
            report["report_file"] = self._save_report(f"search_n{n}.json", report)
            return report

        return self._run("search", {"n": n, "strategy": strategy, "limit": limit,
                                    "general_phases": general_phases}, body)

    def cmd_export_subparts(self, n: int) -> List[Dict[str, Any]]:
        """Catalog of the CZ(m) layers for n qubits."""
        def body():
            if n < 1:
                raise ValueError(f"n must be at least 1, got {n}")
            return {"n": n, "subparts": subparts_catalog(n)}

        return self._run("export_subparts", {"n": n}, body)["subparts"]
