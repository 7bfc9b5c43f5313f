"""Numerical checks of mutual unbiasedness on the dense oracle."""
from dataclasses import dataclass
from math import sqrt
from typing import Any, Dict, List, Optional, Tuple
import sys
from pathlib import Path

import numpy as np
import pandas as pd

sys.path.append(str(Path(__file__).parent.parent))

from circuits.mub_circuit import build_circuit, checking_circuit, emit_gates
from gf2n.field import IrreduciblePoly
from orchestrator.parallel_executor import ParallelExecutor
from verification.simulator import (
    I_POWERS,
    apply_gatelist,
    check_cap,
    fkj_unitary,
)

ROOT_LABELS = ("+1", "+i", "-1", "-i")


@dataclass
class CoefficientTable:
    """Root-of-unity indices r with sqrt(d)·<l|f_k^j> = i^r, shape (j, k, l)."""
    n: int
    roots: np.ndarray
    snap_error: float


class MubVerifier:
    """Checks that the constructed bases are pairwise mutually unbiased."""

    def __init__(self, config: Dict[str, Any]):
        self.config = config
        settings = config['verification']
        self.tol_exact = settings['tol_exact']
        self.tol_inner = settings['tol_inner']
        self.state_cap = settings['state_cap']
        self.unitary_cap = settings['unitary_cap']
        parallel = config.get('parallel_execution', {})
        self.parallel = parallel.get('enabled', False)
        self.executor = ParallelExecutor(max_workers=parallel.get('max_workers', 3))
        self._unitaries: Dict[Tuple[int, str], np.ndarray] = {}

    def is_chm(self, U: np.ndarray, tol: Optional[float] = None) -> Tuple[bool, float]:
        """Every entry of U has squared modulus 1/d."""
        U = np.asarray(U)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {U.shape}")
        tol = self.tol_inner if tol is None else tol
        deviation = float(np.max(np.abs(np.abs(U) ** 2 - 1 / U.shape[0])))
        return deviation <= tol, deviation

    def mu_check(self, basis_a: np.ndarray, basis_b: np.ndarray) -> Tuple[bool, float]:
        """Mutual unbiasedness of two orthonormal bases given as matrix columns."""
        A, B = np.asarray(basis_a), np.asarray(basis_b)
        if A.ndim != 2 or A.shape != B.shape or A.shape[0] != A.shape[1]:
            raise ValueError(f"bases must be square and of one dimension, got {A.shape} and {B.shape}")
        d = A.shape[0]
        for name, M in (("first", A), ("second", B)):
            gram = np.max(np.abs(M.conj().T @ M - np.eye(d)))
            if gram > self.tol_inner:
                raise ValueError(f"{name} basis is not orthonormal (deviation {gram:.2e})")
        overlaps = np.abs(A.conj().T @ B) ** 2
        deviation = float(np.max(np.abs(overlaps - 1 / d)))
        return deviation <= self.tol_inner, deviation

    def circuit_unitary(self, ctx: IrreduciblePoly, j: int) -> np.ndarray:
        key = (j, ctx.text)
        if key not in self._unitaries:
            check_cap(ctx.n, self.unitary_cap)
            self._unitaries[key] = apply_gatelist(emit_gates(build_circuit(ctx, j)), ctx.n, self.state_cap)
        return self._unitaries[key]

    def unitary_stack(self, ctx: IrreduciblePoly) -> np.ndarray:
        check_cap(ctx.n, self.unitary_cap)
        return np.stack([self.circuit_unitary(ctx, j) for j in range(1 << ctx.n)])

    def check_oracle_agreement(self, ctx: IrreduciblePoly) -> Dict[str, Any]:
        """Simulated gate lists against the closed-form states."""
        worst, witness = 0.0, None
        for j in range(1 << ctx.n):
            dev = float(np.max(np.abs(self.circuit_unitary(ctx, j) - fkj_unitary(ctx, j, self.state_cap))))
            if dev > worst:
                worst, witness = dev, j
        passed = worst <= self.tol_exact
        return {
            "name": "circuit_matches_formula",
            "passed": passed,
            "max_deviation": worst,
            "witness": None if passed else witness,
        }

    def check_each_basis(self, ctx: IrreduciblePoly) -> Dict[str, Any]:
        """Each U(j) is unbiased to the computational basis."""
        worst, witness = 0.0, None
        for j in range(1 << ctx.n):
            ok, dev = self.is_chm(self.circuit_unitary(ctx, j))
            if dev > worst:
                worst = dev
            if not ok and witness is None:
                witness = j
        return {
            "name": "unbiased_to_computational",
            "passed": witness is None,
            "max_deviation": worst,
            "witness": witness,
        }

    def _pair_row(self, stack: np.ndarray, j: int) -> Tuple[float, Optional[int]]:
        d = stack.shape[1]
        if j + 1 >= len(stack):
            return 0.0, None
        products = np.matmul(stack[j].conj().T[None, :, :], stack[j + 1:])
        deviations = np.max(np.abs(np.abs(products) ** 2 - 1 / d), axis=(1, 2))
        bad = np.nonzero(deviations > self.tol_inner)[0]
        return float(deviations.max()), (j + 1 + int(bad[0])) if len(bad) else None

    def check_pairwise(self, ctx: IrreduciblePoly) -> Dict[str, Any]:
        """U(j)^† U(k) is complex Hadamard for every j < k."""
        stack = self.unitary_stack(ctx)
        rows = range(len(stack))
        if self.parallel:
            results = self.executor.map_ordered(lambda j: self._pair_row(stack, j), list(rows))
            errors = {j: r["error"] for j, r in enumerate(results) if isinstance(r, dict)}
            if errors:
                j = min(errors)
                return {"name": "pairwise_unbiased", "passed": False, "max_deviation": None,
                        "witness": [j], "error": errors[j]}
        else:
            results = [self._pair_row(stack, j) for j in rows]
        worst = max(r[0] for r in results)
        witness = next(([j, k] for j, (_, k) in enumerate(results) if k is not None), None)
        return {
            "name": "pairwise_unbiased",
            "passed": witness is None,
            "max_deviation": worst,
            "witness": witness,
        }

    def verify_checking_circuit(self, ctx: IrreduciblePoly, j: int, k: int) -> Tuple[bool, float]:
        """Simulate the U(j)^† U(k) gate list and test it is complex Hadamard."""
        gates = checking_circuit(build_circuit(ctx, j), build_circuit(ctx, k))
        return self.is_chm(apply_gatelist(gates, ctx.n, self.state_cap))

    def verify_full_set(self, ctx: IrreduciblePoly) -> Dict[str, Any]:
        """The 2^n circuit bases plus the computational basis form a complete MUB set."""
        check_cap(ctx.n, self.unitary_cap)
        checks = [
            self.check_oracle_agreement(ctx),
            self.check_each_basis(ctx),
            self.check_pairwise(ctx),
        ]
        return {
            "n": ctx.n,
            "poly": ctx.text,
            "bases": (1 << ctx.n) + 1,
            "checks": checks,
            "passed": all(c["passed"] for c in checks),
        }

    def coefficient_table(self, ctx: IrreduciblePoly) -> CoefficientTable:
        check_cap(ctx.n, self.unitary_cap)
        d = 1 << ctx.n
        scaled = np.stack([fkj_unitary(ctx, j, self.state_cap).T for j in range(d)]) * sqrt(d)
        roots = np.mod(np.rint(np.angle(scaled) / (np.pi / 2)), 4).astype(np.int8)
        snap_error = float(np.max(np.abs(scaled - I_POWERS[roots])))
        return CoefficientTable(n=ctx.n, roots=roots, snap_error=snap_error)

    def coefficient_distribution(self, ctx: IrreduciblePoly) -> Dict[str, Any]:
        """Check how the fourth-root coefficients distribute over j, k and l.

        For l = 0 every coefficient is +1. For l > 0 and fixed j the 2^n values over k
        split evenly over one conjugate pair ({+1,-1} or {+i,-i}); pooled over all
        (j, k) each root appears d^2/4 times.
        """
        table = self.coefficient_table(ctx)
        roots, d = table.roots, 1 << ctx.n
        failures: List[str] = []
        if table.snap_error > self.tol_exact:
            failures.append(f"coefficients are not fourth roots of unity (error {table.snap_error:.2e})")
        if np.any(roots[:, :, 0] != 0):
            failures.append("coefficient at l=0 differs from +1")
        for j in range(d):
            for l in range(1, d):
                counts = np.bincount(roots[j, :, l], minlength=4)
                if sorted(counts.tolist()) != [0, 0, d // 2, d // 2] or counts[0] != counts[2]:
                    failures.append(f"j={j} l={l}: uneven split {counts.tolist()}")
        per_l = [np.bincount(roots[:, :, l].ravel(), minlength=4) for l in range(1, d)]
        for l, counts in enumerate(per_l, start=1):
            if np.any(counts != d * d // 4):
                failures.append(f"l={l}: pooled counts {counts.tolist()}")
        histogram = pd.Series(np.bincount(roots.ravel(), minlength=4), index=list(ROOT_LABELS))
        return {
            "name": "coefficient_distribution",
            "n": ctx.n,
            "passed": not failures,
            "histogram": {label: int(v) for label, v in histogram.items()},
            "snap_error": table.snap_error,
            "failures": failures[:10],
        }
