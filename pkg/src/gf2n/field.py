"""GF(2^n) context: power table, the bilinear-form matrices M_r and cached products.

Field elements and row vectors over F2 are Python ints, bit t holding the
coordinate of x^t. An n x n matrix over F2 is a tuple of n row ints.
"""
from functools import cached_property, lru_cache, reduce
from operator import xor
from typing import Iterator, List, Sequence, Tuple

from .polynomial import (
    clmul,
    degree,
    first_irreducible,
    format_poly,
    is_irreducible,
    iter_candidates,
    parse_poly,
    poly_divmod,
)

BitMatrix = Tuple[int, ...]


def parity(v: int) -> int:
    return v.bit_count() & 1


def f2_rank(rows: Sequence[int]) -> int:
    """Rank over F2 of a matrix given as row bitmasks."""
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                rank += 1
                break
            row ^= pivots[top]
    return rank


class IrreduciblePoly:
    """An irreducible p(x) of degree n together with the tables GF(2)[x]/(p) needs.

    Built once per polynomial; everything derived from it is read-only.
    """

    def __init__(self, poly: int):
        n = degree(poly)
        if n < 1:
            raise ValueError(f"polynomial degree must be at least 1, got {n}")
        if not poly & 1:
            raise ValueError(f"constant term of {format_poly(poly)} must be 1")
        if not is_irreducible(poly):
            raise ValueError(f"{format_poly(poly)} is reducible over GF(2)")
        self.poly = poly
        self.n = n
        self.mask = (1 << n) - 1
        self.power_table = self._build_power_table()
        self.M0 = self._hankel_rows(0)
        # GF(2) has no component 1; M1 is the zero matrix there
        self.M1 = self._hankel_rows(1) if n > 1 else tuple(0 for _ in range(n))
        self._w0 = tuple(self._matrix_times(self.M0, v) for v in self.power_table)
        self._w1 = tuple(self._matrix_times(self.M1, v) for v in self.power_table)

    @classmethod
    def from_text(cls, text: str) -> "IrreduciblePoly":
        return cls(parse_poly(text))

    def __repr__(self) -> str:
        return f"IrreduciblePoly({format_poly(self.poly)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, IrreduciblePoly) and other.poly == self.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    @property
    def text(self) -> str:
        return format_poly(self.poly)

    def _build_power_table(self) -> Tuple[int, ...]:
        # x^{m+1} = x * x^m, folding x^n back through the low part of p
        low = self.poly & self.mask
        table = [1]
        for _ in range(2 * self.n - 2):
            v = table[-1] << 1
            if v >> self.n:
                v = (v & self.mask) ^ low
            table.append(v)
        return tuple(table)

    def _hankel_rows(self, r: int) -> BitMatrix:
        # M_r[s][t] = (x^{s+t})_r depends on s+t only
        column = 0
        for m, v in enumerate(self.power_table):
            column |= (v >> r & 1) << m
        return tuple((column >> s) & self.mask for s in range(self.n))

    @staticmethod
    def _matrix_times(rows: BitMatrix, v: int) -> int:
        """M · v^T as a column bitmask."""
        out = 0
        for s, row in enumerate(rows):
            out |= parity(row & v) << s
        return out

    def power_vector(self, m: int) -> int:
        """Coordinates of x^m for 0 <= m <= 2n-2."""
        if not 0 <= m <= 2 * self.n - 2:
            raise ValueError(f"power index {m} outside 0..{2 * self.n - 2}")
        return self.power_table[m]

    def m0_column(self, m: int) -> int:
        """Cached M0 · (x^m)^T."""
        return self._w0[m]

    def m1_column(self, m: int) -> int:
        """Cached M1 · (x^m)^T."""
        return self._w1[m]

    def build_M_r(self, r: int) -> BitMatrix:
        if not 0 <= r < self.n:
            raise ValueError(f"component {r} outside 0..{self.n - 1}")
        if r == 0:
            return self.M0
        if r == 1:
            return self.M1
        return self._hankel_rows(r)

    @cached_property
    def all_matrices(self) -> List[BitMatrix]:
        return [self.build_M_r(r) for r in range(self.n)]

    def check_element(self, v: int, what: str = "element") -> None:
        if not 0 <= v <= self.mask:
            raise ValueError(f"{what} {v} is not an element of GF(2^{self.n})")

    def vec_mat(self, j: int, M: BitMatrix) -> int:
        """Row vector j · M over F2."""
        return reduce(xor, (row for s, row in enumerate(M) if j >> s & 1), 0)

    def bit_form(self, j: int, M: BitMatrix, v: int) -> int:
        """The F2 scalar j · M · v^T."""
        return parity(self.vec_mat(j, M) & v)

    def gf_mul(self, j: int, l: int) -> int:
        """Field product; component r equals j · M_r · l^T."""
        self.check_element(j)
        self.check_element(l)
        out = 0
        while j:
            s = (j & -j).bit_length() - 1
            rest = l
            while rest:
                t = (rest & -rest).bit_length() - 1
                out ^= self.power_table[s + t]
                rest &= rest - 1
            j &= j - 1
        return out

    def gf_mul_via_forms(self, j: int, l: int) -> int:
        """Field product assembled component-wise from the bilinear forms."""
        return sum(self.bit_form(j, M, l) << r for r, M in enumerate(self.all_matrices))


def reference_mul(p: int, a: int, b: int) -> int:
    """Multiply-then-reduce product in GF(2)[x]/(p); independent of the tables."""
    return poly_divmod(clmul(a, b), p)[1]


@lru_cache(maxsize=64)
def find_irreducible(n: int) -> IrreduciblePoly:
    """Deterministic choice: the lexicographically smallest irreducible mask with constant term 1."""
    return IrreduciblePoly(first_irreducible(n))


def list_irreducibles(n: int) -> Iterator[IrreduciblePoly]:
    """All degree-n irreducibles with constant term 1, increasing bitmask order."""
    for p in iter_candidates(n):
        if is_irreducible(p):
            yield IrreduciblePoly(p)


@lru_cache(maxsize=64)
def context_for(text: str) -> IrreduciblePoly:
    return IrreduciblePoly(parse_poly(text))
