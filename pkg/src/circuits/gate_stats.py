"""Gate-count statistics over families of MUB circuits."""
from collections import Counter
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import sys
from pathlib import Path

import numpy as np
import pandas as pd

sys.path.append(str(Path(__file__).parent.parent))

from circuits.mub_circuit import MubCircuit, build_circuit, cz_subpart
from gf2n.field import IrreduciblePoly


def closed_form_stats(n: int) -> Dict[str, Any]:
    """Exact totals over all 2^n circuits."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    d = 1 << n
    return {
        "n": n,
        "circuits": d,
        "total_s": 3 * n * d // 2,
        "total_cz": d * n * (n - 1) // 4,
        "cz_by_distance": {u: d * (n - u) // 2 for u in range(1, n)},
        "avg_s": 3 * n / 2,
        "avg_cz": n * (n - 1) / 4,
        "max_gates_bound": (n * n + 7 * n) // 2,
    }


def _distance_profile(n: int) -> Dict[int, Counter]:
    # CZ(m) -> how many of its pairs sit at each distance t - s
    return {m: Counter(t - s for s, t in cz_subpart(n, m).pairs) for m in range(1, 2 * n - 2)}


def circuit_table(circuits: Sequence[MubCircuit]) -> pd.DataFrame:
    """One row per circuit: index, S/CZ/H counts and CZ counts per qubit distance."""
    if not circuits:
        raise ValueError("no circuits to summarize")
    n = circuits[0].n
    profile = _distance_profile(n)
    rows = []
    for c in circuits:
        by_distance = Counter()
        for m, flag in enumerate(c.cz_flags, start=1):
            if flag:
                by_distance.update(profile[m])
        row = {
            "j": c.j,
            "h_gates": n,
            "s_gates": c.s_count,
            "cz_gates": sum(by_distance.values()),
        }
        row["total_gates"] = row["h_gates"] + row["s_gates"] + row["cz_gates"]
        for u in range(1, n):
            row[f"cz_dist_{u}"] = by_distance.get(u, 0)
        rows.append(row)
    return pd.DataFrame(rows)


def gate_stats(ctx: IrreduciblePoly, js: Iterable[int]) -> Dict[str, Any]:
    """Totals, averages and maxima over the circuits U(j) for j in js."""
    circuits = [build_circuit(ctx, j) for j in js]
    df = circuit_table(circuits)
    n = ctx.n
    numeric = df.drop(columns=["j"])
    totals = numeric.sum()
    worst = df.loc[df["total_gates"].idxmax()]
    return {
        "n": n,
        "poly": ctx.text,
        "circuits": len(df),
        "total_s": int(totals["s_gates"]),
        "total_cz": int(totals["cz_gates"]),
        "cz_by_distance": {u: int(totals[f"cz_dist_{u}"]) for u in range(1, n)},
        "avg_s": float(numeric["s_gates"].mean()),
        "avg_cz": float(numeric["cz_gates"].mean()),
        "avg_gates": float(numeric["total_gates"].mean()),
        "max_gates": int(worst["total_gates"]),
        "max_gates_j": int(worst["j"]),
        "max_gates_bound": (n * n + 7 * n) // 2,
        "table": df,
    }


def sample_indices(n: int, count: int, seed: Optional[int] = None) -> List[int]:
    """Uniform random basis indices for n too large to enumerate."""
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(count, n), dtype=np.uint8)
    packed = np.packbits(bits, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def compare_with_closed_forms(stats: Dict[str, Any]) -> Dict[str, Any]:
    """Exhaustive totals against the closed forms; only meaningful for all 2^n indices."""
    expected = closed_form_stats(stats["n"])
    checks = {
        "total_s": stats["total_s"] == expected["total_s"],
        "total_cz": stats["total_cz"] == expected["total_cz"],
        "cz_by_distance": stats["cz_by_distance"] == expected["cz_by_distance"],
        "max_gates_within_bound": stats["max_gates"] <= expected["max_gates_bound"],
    }
    return {"expected": expected, "checks": checks, "passed": all(checks.values())}


def entanglement_structure(ctx: IrreduciblePoly) -> FrozenSet[Tuple[int, ...]]:
    """The set of CZ-flag vectors over all j; equal sets mean the same CZ layers up to reordering."""
    return frozenset(build_circuit(ctx, j).cz_flags for j in range(1 << ctx.n))


def compare_entanglement_structures(polys: Sequence[IrreduciblePoly]) -> Dict[str, Any]:
    if not polys:
        raise ValueError("no polynomials to compare")
    if len({p.n for p in polys}) != 1:
        raise ValueError("polynomials must share one degree")
    groups: Dict[FrozenSet, List[str]] = {}
    for p in polys:
        groups.setdefault(entanglement_structure(p), []).append(p.text)
    return {
        "n": polys[0].n,
        "polynomials": [p.text for p in polys],
        "distinct_structures": len(groups),
        "groups": list(groups.values()),
    }
