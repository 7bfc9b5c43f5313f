"""Tests for GF(2) polynomials and GF(2^n) contexts."""
import pytest
from hypothesis import given, settings, strategies as st
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from gf2n.field import (
    IrreduciblePoly,
    f2_rank,
    find_irreducible,
    list_irreducibles,
    parity,
    reference_mul,
)
from gf2n.polynomial import (
    degree,
    format_poly,
    is_irreducible,
    is_irreducible_trial,
    iter_candidates,
    parse_poly,
)

P1 = 0b1011   # x^3 + x + 1
P2 = 0b1101   # x^3 + x^2 + 1


@pytest.fixture
def ctx_p1():
    return IrreduciblePoly(P1)


@pytest.fixture
def ctx_p2():
    return IrreduciblePoly(P2)


def test_degree_of_zero_is_negative():
    """Test the zero polynomial has degree -1."""
    assert degree(0) == -1
    assert degree(1) == 0
    assert degree(P1) == 3


def test_find_irreducible_small_degrees():
    """Test the default polynomial choice for small n."""
    assert find_irreducible(1).poly == 0b11
    assert find_irreducible(2).poly == 0b111
    assert find_irreducible(3).poly == P1
    assert find_irreducible(4).poly == 0b10011
    assert find_irreducible(9).text == "x^9+x+1"


def test_is_irreducible_examples():
    """Test Rabin's test on known polynomials."""
    assert is_irreducible(0b111)
    assert is_irreducible(0b10)
    assert not is_irreducible(0b101)      # (x+1)^2
    assert not is_irreducible(0b10001)    # (x+1)^4
    assert is_irreducible(P2)
    with pytest.raises(ValueError):
        is_irreducible(1)


def test_rabin_matches_trial_division_exhaustively():
    """Test both irreducibility tests agree on every polynomial of degree 1..10."""
    for p in range(2, 1 << 11):
        assert is_irreducible(p) == is_irreducible_trial(p), format_poly(p)


def test_find_irreducible_is_lexicographically_first():
    """Test the chosen polynomial is irreducible and every earlier candidate is not (n <= 16)."""
    for n in range(1, 17):
        chosen = find_irreducible(n).poly
        assert is_irreducible_trial(chosen)
        for p in iter_candidates(n):
            if p == chosen:
                break
            assert not is_irreducible_trial(p)


def test_irreducible_counts():
    """Test the number of degree-n irreducibles with constant term 1."""
    assert [len(list(list_irreducibles(n))) for n in range(2, 7)] == [1, 2, 3, 6, 9]


def test_parse_and_format():
    """Test both text forms of a polynomial."""
    assert parse_poly("x^2+x+1") == 0b111
    assert parse_poly("0x7") == 0b111
    assert parse_poly("x**4 + x + 1") == 0b10011
    assert parse_poly("1 + x + x^3") == P1
    assert format_poly(0b10011) == "x^4+x+1"
    assert format_poly(0b10011, "hex") == "0x13"
    assert format_poly(0b11) == "x+1"
    for bad in ["", "x^2+y", "x^2+x^2", "0xzz"]:
        with pytest.raises(ValueError):
            parse_poly(bad)


def test_context_rejects_bad_polynomials():
    """Test reducible, constant and constant-free polynomials are rejected."""
    for bad in [0b101, 0b1, 0b110, 0b10]:
        with pytest.raises(ValueError):
            IrreduciblePoly(bad)


def test_power_vectors(ctx_p1, ctx_p2):
    """Test x^3 and x^4 coordinates in both degree-3 fields."""
    assert ctx_p1.power_vector(3) == 0b011   # (1,1,0): 1 + x
    assert ctx_p1.power_vector(4) == 0b110   # (0,1,1): x + x^2
    assert ctx_p2.power_vector(3) == 0b101   # (1,0,1): 1 + x^2
    assert ctx_p2.power_vector(4) == 0b111
    assert find_irreducible(2).power_vector(2) == 0b11
    with pytest.raises(ValueError):
        ctx_p1.power_vector(5)


def test_gf_mul_examples(ctx_p1):
    """Test a few products in GF(8) with x^3+x+1."""
    ctx4 = find_irreducible(2)
    assert ctx4.gf_mul(0b10, 0b10) == 0b11
    assert ctx_p1.gf_mul(0b100, 0b10) == 0b011
    assert ctx_p1.gf_mul(0b100, 0b100) == 0b110
    assert ctx_p1.gf_mul(1, 0b101) == 0b101
    with pytest.raises(ValueError):
        ctx_p1.gf_mul(8, 1)


def test_bit_form_examples():
    """Test j·M0·v^T on GF(4)."""
    ctx = find_irreducible(2)
    assert ctx.bit_form(1, ctx.M0, 1) == 1
    assert ctx.bit_form(2, ctx.M0, 2) == 1
    assert ctx.bit_form(1, ctx.M0, 2) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_gf_mul_matches_reference_exhaustively(n):
    """Test table products and bilinear-form products against multiply-then-reduce."""
    ctx = find_irreducible(n)
    for a in range(1 << n):
        for b in range(1 << n):
            expected = reference_mul(ctx.poly, a, b)
            assert ctx.gf_mul(a, b) == expected
    for a in range(0, 1 << n, max(1, (1 << n) // 16)):
        for b in range(1 << n):
            assert ctx.gf_mul_via_forms(a, b) == reference_mul(ctx.poly, a, b)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=24), st.data())
def test_gf_mul_randomized(n, data):
    """Test field laws on random elements for n up to 24."""
    ctx = find_irreducible(n)
    a, b, c = (data.draw(st.integers(min_value=0, max_value=ctx.mask)) for _ in range(3))
    assert ctx.gf_mul(a, b) == reference_mul(ctx.poly, a, b)
    assert ctx.gf_mul(a, b) == ctx.gf_mul(b, a)
    assert ctx.gf_mul(ctx.gf_mul(a, b), c) == ctx.gf_mul(a, ctx.gf_mul(b, c))
    assert ctx.gf_mul(a, b ^ c) == ctx.gf_mul(a, b) ^ ctx.gf_mul(a, c)


@pytest.mark.parametrize("n", range(1, 7))
def test_every_nonzero_element_is_invertible(n):
    """Test GF(2)[x]/(p) is a field."""
    ctx = find_irreducible(n)
    for a in range(1, 1 << n):
        assert any(ctx.gf_mul(a, b) == 1 for b in range(1, 1 << n))


@pytest.mark.parametrize("n", range(1, 13))
def test_bilinear_matrices_are_invertible(n):
    """Test every M_r has full rank over F2."""
    ctx = find_irreducible(n)
    for r in range(n):
        assert f2_rank(ctx.build_M_r(r)) == n


@pytest.mark.parametrize("n", range(1, 9))
def test_half_of_indices_hit_each_vector(n):
    """Test for nonzero v exactly half of all j give j·M0·v^T = 1."""
    ctx = find_irreducible(n)
    for v in range(1, 1 << n):
        hits = sum(ctx.bit_form(j, ctx.M0, v) for j in range(1 << n))
        assert hits == 1 << (n - 1)


def test_cached_columns_match_bit_forms(ctx_p2):
    """Test the cached M_r·(x^m)^T against direct bit forms."""
    for m in range(2 * ctx_p2.n - 1):
        xm = ctx_p2.power_vector(m)
        for j in range(8):
            assert parity(j & ctx_p2.m0_column(m)) == ctx_p2.bit_form(j, ctx_p2.M0, xm)
            assert parity(j & ctx_p2.m1_column(m)) == ctx_p2.bit_form(j, ctx_p2.M1, xm)


def test_gf_mul_matches_galois():
    """Test against an independent GF(2^n) implementation."""
    galois = pytest.importorskip("galois")
    for n in (2, 3, 5, 8):
        ctx = find_irreducible(n)
        GF = galois.GF(2 ** n, irreducible_poly=galois.Poly.Int(ctx.poly))
        for a in range(0, 1 << n, max(1, (1 << n) // 32)):
            for b in range(1 << n):
                assert ctx.gf_mul(a, b) == int(GF(a) * GF(b))


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
