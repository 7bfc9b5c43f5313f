"""Resume file for long diagonal searches."""
import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional
import sys

sys.path.append(str(Path(__file__).parent.parent))

from utils.logger import to_jsonable


class SearchMemory:
    """Persists search progress so an interrupted run can continue."""

    def __init__(self, path: str):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.state = self._load_state()

    def _load_state(self) -> Dict[str, Any]:
        """Load progress from disk."""
        if self.path.exists():
            try:
                with open(self.path, 'r', encoding='utf-8') as f:
                    return json.load(f)
            except (json.JSONDecodeError, IOError):
                # unreadable file: start over
                pass
        return {}

    def matches(self, key: Dict[str, Any]) -> bool:
        """True when the stored run was started with the same search parameters."""
        return bool(self.state) and self.state.get("key") == to_jsonable(key)

    def restore(self, key: Dict[str, Any]) -> Dict[str, Any]:
        if not self.matches(key):
            return {"chain": [], "sets": [], "explored_roots": 0, "status": None}
        return {
            "chain": [tuple(c) for c in self.state.get("chain", [])],
            "sets": [[tuple(c) for c in s] for s in self.state.get("sets", [])],
            "explored_roots": int(self.state.get("explored_roots", 0)),
            "status": self.state.get("status"),
        }

    def checkpoint(self, key: Dict[str, Any], chain: List, sets: List,
                   explored_roots: int = 0, status: Optional[str] = None):
        """Write the current progress."""
        self.state = to_jsonable({
            "key": key,
            "updated": datetime.now().isoformat(),
            "chain": chain,
            "sets": sets,
            "explored_roots": explored_roots,
            "status": status,
        })
        with open(self.path, 'w', encoding='utf-8') as f:
            json.dump(self.state, f, indent=2)

    def get_stats(self) -> Dict[str, Any]:
        """Summary of the stored progress."""
        return {
            "sets_found": len(self.state.get("sets", [])),
            "chain_length": len(self.state.get("chain", [])),
            "explored_roots": self.state.get("explored_roots", 0),
            "status": self.state.get("status"),
        }
