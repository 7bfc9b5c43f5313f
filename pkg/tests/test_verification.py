"""Tests for the dense oracle and the mutual-unbiasedness checks."""
import numpy as np
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from circuits.mub_circuit import Gate, MubCircuit, build_circuit, emit_gates, phase_exponents
from gf2n.field import IrreduciblePoly, find_irreducible
from utils.config_loader import load_config
from verification.simulator import (
    I_POWERS,
    CapExceededError,
    alpha_vector,
    apply_gatelist,
    fkj_unitary,
    sign_matrix,
    state_ekj,
    state_fkj,
)
from verification.structure_checks import exponent_law_report
from verification.verifier import MubVerifier

H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


@pytest.fixture
def config():
    """Repository configuration with parallel sweeps switched off."""
    config = load_config()
    config['parallel_execution'] = {'enabled': False, 'max_workers': 1}
    return config


@pytest.fixture
def verifier(config):
    return MubVerifier(config)


def test_single_gates_follow_little_endian_order():
    """Test qubit 0 is the least significant bit of the basis index."""
    assert np.allclose(apply_gatelist([Gate("s", (0,))], 2), np.diag([1, 1j, 1, 1j]))
    assert np.allclose(apply_gatelist([Gate("s", (1,))], 2), np.diag([1, 1, 1j, 1j]))
    assert np.allclose(apply_gatelist([Gate("cz", (0, 1))], 2), np.diag([1, 1, 1, -1]))
    assert np.allclose(apply_gatelist([Gate("h", (0,))], 1), H)
    assert np.allclose(apply_gatelist([Gate("sdg", (0,)), Gate("s", (0,))], 1), np.eye(2))


def test_simulator_rejects_bad_input():
    """Test caps and qubit ranges."""
    with pytest.raises(CapExceededError):
        apply_gatelist([], 13)
    with pytest.raises(ValueError):
        apply_gatelist([Gate("h", (2,))], 2)


def test_single_qubit_state():
    """Test |f_0^1> = (1, -i)/sqrt(2) for n=1."""
    ctx = find_irreducible(1)
    assert np.allclose(state_fkj(ctx, 1, 0), np.array([1, -1j]) / np.sqrt(2))
    assert np.allclose(state_fkj(ctx, 0, 1), np.array([1, -1]) / np.sqrt(2))


def test_uniform_superposition():
    """Test j=0, k=0 is the uniform state."""
    assert np.allclose(state_fkj(find_irreducible(2), 0, 0), np.full(4, 0.5))


def test_circuit_example_matches_formula():
    """Test the gate list of U(3), n=2, against the closed-form unitary."""
    gates = [Gate("h", (0,)), Gate("h", (1,)), Gate("s", (0,)), Gate("z", (1,)), Gate("cz", (0, 1))]
    assert np.max(np.abs(apply_gatelist(gates, 2) - fkj_unitary(find_irreducible(2), 3))) < 1e-12


def test_hadamard_layer_is_sylvester_matrix():
    """Test U(0) is H^{⊗n}."""
    for n in range(1, 6):
        U = apply_gatelist(emit_gates(build_circuit(find_irreducible(n), 0)), n)
        assert np.allclose(U, sign_matrix(n) / np.sqrt(1 << n))


@pytest.mark.parametrize("n", range(1, 6))
def test_phase_diagonal_matches_double_product(n):
    """Test the circuit's diagonal phases against the literal product formula."""
    ctx = find_irreducible(n)
    for j in range(1 << n):
        assert np.allclose(I_POWERS[phase_exponents(build_circuit(ctx, j))], alpha_vector(ctx, j))


@pytest.mark.parametrize("n", range(1, 5))
def test_field_sign_states_are_a_reindexing(n):
    """Test e_k^j = f_{k·M0}^j, so both constructions give the same bases."""
    ctx = find_irreducible(n)
    for j in range(1 << n):
        for k in range(1 << n):
            assert np.allclose(state_ekj(ctx, j, k), state_fkj(ctx, j, ctx.vec_mat(k, ctx.M0)))


def test_is_chm(verifier):
    """Test complex Hadamard detection."""
    assert verifier.is_chm(H)[0]
    ok, dev = verifier.is_chm(np.eye(2))
    assert not ok and dev == pytest.approx(0.5)
    with pytest.raises(ValueError):
        verifier.is_chm(np.ones((2, 3)))


def test_mu_check(verifier):
    """Test mutual unbiasedness of basis pairs."""
    assert verifier.mu_check(np.eye(2), H)[0]
    assert not verifier.mu_check(H, H)[0]
    with pytest.raises(ValueError):
        verifier.mu_check(np.eye(2), np.ones((2, 2)))
    with pytest.raises(ValueError):
        verifier.mu_check(np.eye(2), np.eye(4))


@pytest.mark.parametrize("n", range(1, 7))
def test_full_set_is_mutually_unbiased(verifier, n):
    """Test all 2^n + 1 bases for n up to 6."""
    report = verifier.verify_full_set(find_irreducible(n))
    assert report["passed"], report["checks"]
    assert report["bases"] == (1 << n) + 1


def test_full_set_for_second_degree_three_polynomial(verifier):
    """Test the x^3+x^2+1 family."""
    assert verifier.verify_full_set(IrreduciblePoly.from_text("x^3+x^2+1"))["passed"]


def test_parallel_pairwise_sweep(config):
    """Test the thread-pool sweep agrees with the serial one."""
    config['parallel_execution'] = {'enabled': True, 'max_workers': 3}
    report = MubVerifier(config).check_pairwise(find_irreducible(4))
    assert report["passed"]
    assert report["max_deviation"] < 1e-10


def test_full_set_refused_above_cap(verifier):
    """Test pairwise sweeps are limited to n <= 8."""
    with pytest.raises(CapExceededError):
        verifier.verify_full_set(find_irreducible(9))


def test_repeated_s_layer_breaks_unbiasedness(verifier):
    """Test a seventh circuit sharing U(6)'s S layer is not unbiased to U(6) (x^3+x+1)."""
    ctx = IrreduciblePoly.from_text("x^3+x+1")
    u6 = verifier.circuit_unitary(ctx, 6)
    wrong = MubCircuit(n=3, j=7, poly=ctx.poly, s_exp=(2, 3, 2), cz_flags=(1, 1, 0))
    u7 = apply_gatelist(emit_gates(wrong), 3)
    assert not verifier.is_chm(u6.conj().T @ u7)[0]
    assert verifier.is_chm(u6.conj().T @ verifier.circuit_unitary(ctx, 7))[0]


def test_checking_circuits(verifier):
    """Test the U(j)^† U(k) gate lists are complex Hadamard."""
    ctx = IrreduciblePoly.from_text("x^3+x+1")
    assert verifier.verify_checking_circuit(ctx, 1, 2)[0]
    assert verifier.verify_checking_circuit(ctx, 4, 7)[0]
    assert not verifier.verify_checking_circuit(ctx, 5, 5)[0]


@pytest.mark.parametrize("n", range(1, 5))
def test_coefficient_distribution(verifier, n):
    """Test the fourth-root coefficient counts."""
    report = verifier.coefficient_distribution(find_irreducible(n))
    assert report["passed"], report["failures"]
    assert sum(report["histogram"].values()) == (1 << n) ** 3
    assert report["snap_error"] < 1e-12


def test_exponent_law():
    """Test (-1) exponents compose exactly and i exponents only up to sign."""
    report = exponent_law_report(3)
    assert report["passed"]
    assert report["sign_law_holds"]
    assert report["i_power_ratios"] == [-1, 1]


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
