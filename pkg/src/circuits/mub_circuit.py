"""Mutually-unbiased-basis circuits U(j) = U_CZ(j) · U_S(j) · H^{⊗n}.

Qubit q_t carries bit l_t (little-endian). Every U(j) is H on all qubits,
then S^{a_r(j)} on qubit r, then CZ(s, t) for each s < t whose entangling
flag b_{s+t}(j) is set.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

from gf2n.field import IrreduciblePoly, parity
from gf2n.polynomial import format_poly

# (M0 x^{2r}, M1 x^{2r}) bits -> S exponent a_r
TAU_INV: Dict[Tuple[int, int], int] = {(0, 0): 0, (1, 1): 1, (0, 1): 2, (1, 0): 3}
# S exponent -> bit pair it stands for; addition of pairs is componentwise XOR
TAU: Dict[int, Tuple[int, int]] = {a: bits for bits, a in TAU_INV.items()}

SINGLE_QUBIT_GATES = ("h", "s", "z", "sdg")
S_LAYER_GATE = {1: "s", 2: "z", 3: "sdg"}


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: Tuple[int, ...]

    def __post_init__(self):
        arity = 2 if self.name == "cz" else 1
        if self.name not in SINGLE_QUBIT_GATES + ("cz",):
            raise ValueError(f"unknown gate {self.name!r}")
        if len(self.qubits) != arity:
            raise ValueError(f"gate {self.name} takes {arity} qubit(s), got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"cz needs two distinct qubits, got {self.qubits}")


GateList = List[Gate]


@dataclass(frozen=True)
class CzSubpart:
    """CZ(m): the product of CZ(s, t) over s < t with s + t = m."""
    n: int
    m: int
    pairs: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class MubCircuit:
    """Coefficient description of U(j); cz_flags[m - 1] is b_m for m = 1..2n-3."""
    n: int
    j: int
    poly: int
    s_exp: Tuple[int, ...]
    cz_flags: Tuple[int, ...]

    @property
    def poly_text(self) -> str:
        return format_poly(self.poly)

    def cz_flag(self, m: int) -> int:
        if not 1 <= m <= 2 * self.n - 3:
            return 0
        return self.cz_flags[m - 1]

    def b(self, s: int, t: int) -> int:
        """Entangling coefficient b_{s,t}(j) = b_{s+t}(j) for s != t."""
        if s == t:
            raise ValueError("b_{s,t} is defined for s != t only")
        return self.cz_flag(s + t)

    def cz_pairs(self) -> List[Tuple[int, int]]:
        return [pair for m in range(1, 2 * self.n - 2) if self.cz_flag(m)
                for pair in cz_subpart(self.n, m).pairs]

    @property
    def s_count(self) -> int:
        return sum(self.s_exp)

    @property
    def cz_count(self) -> int:
        return len(self.cz_pairs())

    @property
    def gate_count(self) -> int:
        return self.n + self.s_count + self.cz_count


def _check_index(ctx: IrreduciblePoly, j: int) -> None:
    if not 0 <= j < 1 << ctx.n:
        raise ValueError(f"basis index {j} outside 0..2^{ctx.n}-1")


def coeff_b(ctx: IrreduciblePoly, j: int, m: int) -> int:
    """b_m(j) = j · M0 · (x^m)^T."""
    _check_index(ctx, j)
    if not 1 <= m <= 2 * ctx.n - 3:
        raise ValueError(f"entangling index {m} outside 1..{2 * ctx.n - 3}")
    return parity(j & ctx.m0_column(m))


def coeff_a(ctx: IrreduciblePoly, j: int, r: int) -> int:
    """S exponent a_r(j) in {0, 1, 2, 3}."""
    _check_index(ctx, j)
    if not 0 <= r < ctx.n:
        raise ValueError(f"qubit {r} outside 0..{ctx.n - 1}")
    bits = (parity(j & ctx.m0_column(2 * r)), parity(j & ctx.m1_column(2 * r)))
    return TAU_INV[bits]


def build_circuit(ctx: IrreduciblePoly, j: int) -> MubCircuit:
    _check_index(ctx, j)
    n = ctx.n
    s_exp = tuple(
        TAU_INV[(parity(j & ctx.m0_column(2 * r)), parity(j & ctx.m1_column(2 * r)))]
        for r in range(n)
    )
    cz_flags = tuple(parity(j & ctx.m0_column(m)) for m in range(1, 2 * n - 2))
    return MubCircuit(n=n, j=j, poly=ctx.poly, s_exp=s_exp, cz_flags=cz_flags)


def generate_batch(ctx: IrreduciblePoly, js: Iterable[int]) -> List[MubCircuit]:
    return [build_circuit(ctx, j) for j in js]


def generators(ctx: IrreduciblePoly) -> List[MubCircuit]:
    """The circuits U(2^u) for u = 0..n-1."""
    return [build_circuit(ctx, 1 << u) for u in range(ctx.n)]


@lru_cache(maxsize=None)
def cz_subpart(n: int, m: int) -> CzSubpart:
    if not 1 <= m <= 2 * n - 3:
        raise ValueError(f"CZ sub-part index {m} outside 1..{2 * n - 3}")
    pairs = tuple((s, m - s) for s in range(max(0, m - n + 1), n) if s < m - s)
    return CzSubpart(n=n, m=m, pairs=pairs)


def emit_gates(circuit: MubCircuit) -> GateList:
    """Canonical order: H layer, then S layer by qubit, then CZ pairs sorted."""
    gates = [Gate("h", (q,)) for q in range(circuit.n)]
    gates += [Gate(S_LAYER_GATE[a], (q,)) for q, a in enumerate(circuit.s_exp) if a]
    gates += [Gate("cz", pair) for pair in sorted(circuit.cz_pairs())]
    return gates


def dagger(gates: Sequence[Gate]) -> GateList:
    """Inverse gate list."""
    swap = {"s": "sdg", "sdg": "s"}
    return [Gate(swap.get(g.name, g.name), g.qubits) for g in reversed(gates)]


def checking_circuit(c_j: MubCircuit, c_k: MubCircuit) -> GateList:
    """Gates of U(j)^† U(k): run U(k), then undo U(j)."""
    if (c_j.n, c_j.poly) != (c_k.n, c_k.poly):
        raise ValueError("checking circuit needs two circuits over the same field")
    return emit_gates(c_k) + dagger(emit_gates(c_j))


def compose_from_generators(gens: Sequence[MubCircuit], j: int) -> MubCircuit:
    """Assemble U(j) from U(2^0)..U(2^{n-1}) by the linear relation.

    Entangling flags add over F2; S exponents add through their bit pairs.
    """
    if not gens:
        raise ValueError("generator list is empty")
    n, poly = gens[0].n, gens[0].poly
    if len(gens) != n:
        raise ValueError(f"expected {n} generators, got {len(gens)}")
    for u, gen in enumerate(gens):
        if (gen.n, gen.poly, gen.j) != (n, poly, 1 << u):
            raise ValueError(f"generator {u} is not U(2^{u}) over the same polynomial")
    if not 0 <= j < 1 << n:
        raise ValueError(f"basis index {j} outside 0..2^{n}-1")

    pairs = [(0, 0)] * n
    flags = [0] * max(0, 2 * n - 3)
    for u, gen in enumerate(gens):
        if not j >> u & 1:
            continue
        for r, a in enumerate(gen.s_exp):
            x0, x1 = pairs[r]
            y0, y1 = TAU[a]
            pairs[r] = (x0 ^ y0, x1 ^ y1)
        flags = [f ^ g for f, g in zip(flags, gen.cz_flags)]
    s_exp = tuple(TAU_INV[bits] for bits in pairs)
    return MubCircuit(n=n, j=j, poly=poly, s_exp=s_exp, cz_flags=tuple(flags))


def phase_exponents(circuit: MubCircuit) -> List[int]:
    """Diagonal of U_CZ · U_S as powers of i: entry l is i^{Q(l)}."""
    d = 1 << circuit.n
    pairs = circuit.cz_pairs()
    out = []
    for l in range(d):
        q = sum(a for r, a in enumerate(circuit.s_exp) if l >> r & 1)
        q += 2 * sum(1 for s, t in pairs if l >> s & 1 and l >> t & 1)
        out.append(q % 4)
    return out
