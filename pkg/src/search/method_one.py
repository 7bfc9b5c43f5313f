"""Diagonal-extension search: grow {I, U1, D_1 U1, ...} one phase diagonal at a time.

A new diagonal D is admissible when U1^† D_j^† D U1 is complex Hadamard for every
diagonal D_j already in the set (D_0 = I stands for U1 itself). Entry 0 of every
diagonal is fixed to +1, and entries are roots of unity of a fixed order.
"""
from dataclasses import dataclass, field
from math import sqrt
from typing import Any, Dict, List, Optional, Sequence, Tuple
import sys
from pathlib import Path

import numpy as np
from scipy.linalg import dft, hadamard

sys.path.append(str(Path(__file__).parent.parent))

from circuits.mub_circuit import build_circuit, phase_exponents
from gf2n.field import IrreduciblePoly
from search.search_memory import SearchMemory
from verification.verifier import MubVerifier

STRATEGIES = ("exhaustive", "greedy")
STATUS_EXHAUSTED = "search exhausted"
STATUS_LIMIT = "limit reached"


def root_table(order: int) -> np.ndarray:
    if order < 1:
        raise ValueError(f"phase order must be positive, got {order}")
    if order == 4:
        return np.array([1, 1j, -1, -1j], dtype=complex)
    return np.exp(2j * np.pi * np.arange(order) / order)


@dataclass(frozen=True)
class DiagonalPhase:
    """diag(w^{k_0}, ..., w^{k_{d-1}}) with w a primitive order-th root of unity."""
    indices: Tuple[int, ...]
    order: int = 4

    def __post_init__(self):
        if any(not 0 <= k < self.order for k in self.indices):
            raise ValueError(f"phase indices {self.indices} outside 0..{self.order - 1}")
        if self.indices and self.indices[0] != 0:
            raise ValueError(f"entry 0 of a phase diagonal must be +1, got index {self.indices[0]}")

    def phases(self) -> np.ndarray:
        return root_table(self.order)[list(self.indices)]

    def matrix(self) -> np.ndarray:
        return np.diag(self.phases())


def seed_matrix(name: str, n: int) -> np.ndarray:
    """Normalized complex Hadamard seed U1: "hadamard" (H^{⊗n}) or "fourier"."""
    d = 1 << n
    if name == "hadamard":
        return hadamard(d).astype(complex) / sqrt(d)
    if name == "fourier":
        return dft(d, scale="sqrtn")
    raise ValueError(f"unknown seed matrix {name!r}")


@dataclass
class MubSet:
    seed: np.ndarray
    diagonals: List[DiagonalPhase] = field(default_factory=list)
    certification: Optional[Dict[str, Any]] = None

    @property
    def dimension(self) -> int:
        return self.seed.shape[0]

    @property
    def size(self) -> int:
        return 2 + len(self.diagonals)

    def members(self) -> List[np.ndarray]:
        """Basis matrices I, U1, D_1 U1, D_2 U1, ..."""
        d = self.dimension
        return [np.eye(d, dtype=complex), self.seed] + [
            D.phases()[:, None] * self.seed for D in self.diagonals
        ]

    def to_record(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "diagonals": [list(D.indices) for D in self.diagonals],
            "certification": self.certification,
        }


@dataclass
class SearchOutcome:
    sets: List[MubSet]
    status: str
    steps: int
    candidates: int


def galois_family(ctx: IrreduciblePoly) -> MubSet:
    """The circuit family as a diagonal family over U1 = H^{⊗n}; j = 0 is U1 itself."""
    diagonals = [
        DiagonalPhase(tuple(phase_exponents(build_circuit(ctx, j))), 4)
        for j in range(1, 1 << ctx.n)
    ]
    return MubSet(seed=seed_matrix("hadamard", ctx.n), diagonals=diagonals)


class MethodOneSearcher:
    """Searches diagonal phase extensions of a seed complex Hadamard matrix."""

    def __init__(self, config: Dict[str, Any]):
        self.config = config
        settings = config['search']
        self.tol = settings['tolerance']
        self.exhaustive_max_qubits = settings['exhaustive_max_qubits']
        self.greedy_max_qubits = settings['greedy_max_qubits']
        self.greedy_pool = settings['greedy_pool']
        self.node_budget = settings['node_budget']
        self.verifier = MubVerifier(config)

    def _check_seed(self, mset: MubSet) -> int:
        ok, dev = self.verifier.is_chm(mset.seed)
        if not ok:
            raise ValueError(f"seed matrix is not complex Hadamard (deviation {dev:.2e})")
        d = mset.dimension
        if d & (d - 1):
            raise ValueError(f"dimension {d} is not a power of two")
        return d.bit_length() - 1

    def _conjugate_is_chm(self, seed: np.ndarray, W: np.ndarray) -> np.ndarray:
        """Row-wise test that U1^† diag(w) U1 is complex Hadamard, for each row w of W."""
        d = seed.shape[0]
        M = np.einsum('la,nl,lb->nab', seed.conj(), W, seed)
        return np.max(np.abs(np.abs(M) ** 2 - 1 / d), axis=(1, 2)) <= self.tol

    def _enumerate(self, seed: np.ndarray, refs: Sequence[np.ndarray], order: int,
                   max_count: Optional[int] = None,
                   max_nodes: Optional[int] = None) -> Tuple[List[Tuple[int, ...]], bool]:
        """Lexicographic depth-first enumeration of admissible index vectors.

        A branch is cut once some entry of a partial sum sits farther from 1/sqrt(d)
        than the remaining terms can move it. Returns the vectors found and whether the
        walk covered the whole tree before max_count or max_nodes stopped it.
        """
        d = seed.shape[0]
        target = 1 / sqrt(d)
        weight = np.einsum('la,lb->lab', seed.conj(), seed)
        remaining = np.zeros((d + 1, d, d))
        remaining[:d] = np.cumsum(np.abs(weight)[::-1], axis=0)[::-1]
        roots = root_table(order)
        ref_conj = np.conj(np.array(refs))
        found: List[Tuple[int, ...]] = []
        nodes = 0
        complete = True

        def visit(l: int, partial: np.ndarray, prefix: List[int]):
            nonlocal nodes, complete
            if l == d:
                if np.all(np.abs(np.abs(partial) ** 2 - 1 / d) <= self.tol):
                    found.append(tuple(prefix))
                    if max_count is not None and len(found) >= max_count:
                        complete = False
                return
            for k in range(order):
                if not complete:
                    return
                if max_nodes is not None and nodes >= max_nodes:
                    complete = False
                    return
                nodes += 1
                nxt = partial + (ref_conj[:, l] * roots[k])[:, None, None] * weight[l]
                mag = np.abs(nxt)
                slack = remaining[l + 1]
                if np.any(mag - slack > target + self.tol) or np.any(mag + slack < target - self.tol):
                    continue
                visit(l + 1, nxt, prefix + [k])

        visit(1, ref_conj[:, 0][:, None, None] * weight[0], [0])
        return found, complete

    def admissible(self, seed: np.ndarray, refs: Sequence[np.ndarray], order: int) -> List[Tuple[int, ...]]:
        """Every index vector whose diagonal is compatible with all of refs."""
        return self._enumerate(seed, refs, order)[0]

    def compatibility(self, seed: np.ndarray, candidates: Sequence[DiagonalPhase]) -> np.ndarray:
        """compat[a, b] is True when candidates a and b may share a set."""
        if not candidates:
            return np.zeros((0, 0), dtype=bool)
        P = np.array([c.phases() for c in candidates])
        return np.array([self._conjugate_is_chm(seed, np.conj(p) * P) for p in P])

    @staticmethod
    def _frontier_pick(compat: np.ndarray, alive: np.ndarray) -> int:
        """The live candidate compatible with most other live candidates, first on ties."""
        live = np.flatnonzero(alive)
        scores = compat[np.ix_(live, live)].sum(axis=1)
        return int(live[int(np.argmax(scores))])

    def search_extend(self, mset: MubSet, strategy: str = "exhaustive", limit: Optional[int] = None,
                      order: int = 4, memory: Optional[SearchMemory] = None) -> SearchOutcome:
        """Extend mset by admissible diagonals.

        "greedy" builds one chain. Each step enumerates up to greedy_pool candidates
        compatible with the chain and takes the one that leaves the most of them
        compatible (ties go to the lexicographically first).
        "exhaustive" enumerates every admissible diagonal and grows one maximal set from
        each of them as root, the same way greedy does; identical sets are reported once.
        limit caps the number of extension steps over the whole search.
        """
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
        if limit is not None and limit < 0:
            raise ValueError(f"limit must be non-negative, got {limit}")
        n = self._check_seed(mset)
        cap = self.exhaustive_max_qubits if strategy == "exhaustive" else self.greedy_max_qubits
        if n > cap:
            raise ValueError(f"{strategy} search is limited to n <= {cap}")
        if any(D.order != order or len(D.indices) != mset.dimension for D in mset.diagonals):
            raise ValueError("existing diagonals do not match the phase order and dimension")

        key = {"n": n, "order": order, "strategy": strategy,
               "start": [list(D.indices) for D in mset.diagonals]}
        progress = memory.restore(key) if memory else {"chain": [], "sets": [], "explored_roots": 0, "status": None}

        if strategy == "greedy":
            chain, status, steps, pool = self._greedy(mset, order, limit, progress, memory, key)
            sets = [MubSet(seed=mset.seed, diagonals=list(mset.diagonals) + chain)]
            return SearchOutcome(sets=sets, status=status, steps=steps, candidates=pool)

        refs = [np.ones(mset.dimension, dtype=complex)] + [D.phases() for D in mset.diagonals]
        candidates = [DiagonalPhase(k, order) for k in self.admissible(mset.seed, refs, order)]
        compat = self.compatibility(mset.seed, candidates)
        chains, status, steps = self._exhaustive(candidates, compat, limit, progress, memory, key)
        sets = [MubSet(seed=mset.seed, diagonals=list(mset.diagonals) + [candidates[i] for i in c])
                for c in chains]
        return SearchOutcome(sets=sets, status=status, steps=steps, candidates=len(candidates))

    def _greedy(self, mset, order, limit, progress, memory, key):
        chain = [DiagonalPhase(c, order) for c in progress["chain"]]
        base = [np.ones(mset.dimension, dtype=complex)] + [D.phases() for D in mset.diagonals]
        steps = 0
        first_pool = None
        while True:
            refs = base + [D.phases() for D in chain]
            found, complete = self._enumerate(mset.seed, refs, order, self.greedy_pool, self.node_budget)
            if first_pool is None:
                first_pool = len(found)
            if not found:
                # an unfinished walk cannot rule out a further extension
                status = STATUS_EXHAUSTED if complete else STATUS_LIMIT
                break
            if limit is not None and steps >= limit:
                status = STATUS_LIMIT
                break
            pool = [DiagonalPhase(k, order) for k in found]
            compat = self.compatibility(mset.seed, pool)
            chain.append(pool[self._frontier_pick(compat, np.ones(len(pool), dtype=bool))])
            steps += 1
            if memory:
                memory.checkpoint(key, [D.indices for D in chain], [])
        if memory:
            memory.checkpoint(key, [D.indices for D in chain], [], status=status)
        return chain, status, steps, first_pool

    def _exhaustive(self, candidates, compat, limit, progress, memory, key):
        index = {c.indices: i for i, c in enumerate(candidates)}
        found: List[List[int]] = [[index[c] for c in s if c in index] for s in progress["sets"]]
        seen = {frozenset(s) for s in found}
        explored = progress["explored_roots"]
        status = STATUS_EXHAUSTED
        steps = 0

        def stored_sets():
            return [[candidates[i].indices for i in s] for s in found]

        for root in range(explored, len(candidates)):
            if limit is not None and steps >= limit:
                status = STATUS_LIMIT
                break
            steps += 1
            chain = [root]
            alive = compat[root].copy()
            while alive.any():
                if limit is not None and steps >= limit:
                    status = STATUS_LIMIT
                    break
                pick = self._frontier_pick(compat, alive)
                chain.append(pick)
                alive &= compat[pick]
                steps += 1
            if status == STATUS_LIMIT:
                # the unfinished root is redone on resume
                break
            if frozenset(chain) not in seen:
                seen.add(frozenset(chain))
                found.append(chain)
            explored = root + 1
            if memory:
                memory.checkpoint(key, [], stored_sets(), explored_roots=explored)
        if not candidates and not found:
            found.append([])
        if memory:
            memory.checkpoint(key, [], stored_sets(), explored_roots=explored, status=status)
        return found, status, steps

    def certify_set(self, mset: MubSet) -> Dict[str, Any]:
        """Check every pair of members is mutually unbiased; stores the report on mset.

        Each pair is tested twice: A^† B must be complex Hadamard, and the two bases must
        pass the full overlap check of the verifier.
        """
        members = mset.members()
        d = mset.dimension
        worst, worst_mu = 0.0, 0.0
        violations: List[List[int]] = []
        for a, A in enumerate(members):
            gram = float(np.max(np.abs(A.conj().T @ A - np.eye(d))))
            if gram > self.verifier.tol_inner:
                violations.append([a, a])
            for b in range(a + 1, len(members)):
                ok, dev = self.verifier.is_chm(A.conj().T @ members[b])
                worst = max(worst, dev)
                try:
                    mu_ok, mu_dev = self.verifier.mu_check(A, members[b])
                    worst_mu = max(worst_mu, mu_dev)
                except ValueError:
                    mu_ok = False
                if not (ok and mu_ok):
                    violations.append([a, b])
        report = {
            "certified": not violations,
            "bases": len(members),
            "max_deviation": worst,
            "max_mu_deviation": worst_mu,
            "witness": violations[0] if violations else None,
            "violations": violations,
        }
        mset.certification = report
        return report
