"""Dense state-vector oracle for small registers.

Basis index l = sum_t l_t 2^t; qubit t is axis n-1-t of the [2]*n reshape.
"""
from math import sqrt
from typing import Sequence
import sys
from pathlib import Path

import numpy as np
from scipy.linalg import hadamard

sys.path.append(str(Path(__file__).parent.parent))

from circuits.mub_circuit import Gate
from gf2n.field import IrreduciblePoly

_SQRT2_INV = 1 / sqrt(2)
_GATE_1Q = {
    "h": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
}
# i^e for e mod 4
I_POWERS = np.array([1, 1j, -1, -1j], dtype=complex)

DEFAULT_STATE_CAP = 12
UNITARITY_TOL = 1e-10


class CapExceededError(ValueError):
    """The register is too large for the dense oracle."""


def check_cap(n: int, cap: int = DEFAULT_STATE_CAP) -> None:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the dense simulation cap of {cap} qubits")


def _apply_single_qubit(tensor: np.ndarray, matrix: np.ndarray, qubit: int, n: int) -> np.ndarray:
    axis = n - 1 - qubit
    out = np.tensordot(matrix, tensor, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def _apply_cz(tensor: np.ndarray, q0: int, q1: int, n: int) -> np.ndarray:
    idx = [slice(None)] * tensor.ndim
    idx[n - 1 - q0] = 1
    idx[n - 1 - q1] = 1
    tensor = tensor.copy()
    tensor[tuple(idx)] *= -1
    return tensor


def apply_gates(states: np.ndarray, gates: Sequence[Gate], n: int) -> np.ndarray:
    """Apply a gate list to a state (shape (d,)) or to the columns of a (d, k) array."""
    d = 1 << n
    if states.shape[0] != d:
        raise ValueError(f"state dimension {states.shape[0]} does not match n={n}")
    trailing = states.shape[1:]
    tensor = states.astype(complex).reshape([2] * n + list(trailing))
    for gate in gates:
        if any(not 0 <= q < n for q in gate.qubits):
            raise ValueError(f"gate {gate} acts outside a {n}-qubit register")
        if gate.name == "cz":
            tensor = _apply_cz(tensor, gate.qubits[0], gate.qubits[1], n)
        else:
            tensor = _apply_single_qubit(tensor, _GATE_1Q[gate.name], gate.qubits[0], n)
    return tensor.reshape((d,) + trailing)


def apply_gatelist(gates: Sequence[Gate], n: int, cap: int = DEFAULT_STATE_CAP) -> np.ndarray:
    """Unitary of a gate list as a dense d x d matrix."""
    check_cap(n, cap)
    d = 1 << n
    U = apply_gates(np.eye(d, dtype=complex), gates, n)
    deviation = np.max(np.abs(U.conj().T @ U - np.eye(d)))
    if deviation > UNITARITY_TOL:
        raise ValueError(f"gate list is not unitary (deviation {deviation:.2e})")
    return U


def alpha_vector(ctx: IrreduciblePoly, j: int) -> np.ndarray:
    """alpha_l^j = prod_{s,t} conj(i^{e}), e = j·(l_s x^s)·(l_t x^t), over all ordered (s, t)."""
    ctx.check_element(j, "basis index")
    n = ctx.n
    out = np.empty(1 << n, dtype=complex)
    for l in range(1 << n):
        total = 0
        bits = [s for s in range(n) if l >> s & 1]
        for s in bits:
            js = ctx.gf_mul(j, 1 << s)
            for t in bits:
                e = ctx.gf_mul(js, 1 << t)
                total += (e & 1) + 2 * (e >> 1 & 1)
        out[l] = np.conj(I_POWERS[total % 4])
    return out


def sign_matrix(n: int) -> np.ndarray:
    """(-1)^{k·l} as a d x d array."""
    return hadamard(1 << n).astype(float)


def state_fkj(ctx: IrreduciblePoly, j: int, k: int, cap: int = DEFAULT_STATE_CAP) -> np.ndarray:
    check_cap(ctx.n, cap)
    ctx.check_element(k, "state index")
    d = 1 << ctx.n
    signs = np.array([(-1) ** ((k & l).bit_count() & 1) for l in range(d)], dtype=float)
    return signs * alpha_vector(ctx, j) / sqrt(d)


def state_ekj(ctx: IrreduciblePoly, j: int, k: int, cap: int = DEFAULT_STATE_CAP) -> np.ndarray:
    """Construction with the field-product sign (-1)^{(k·l)_0}."""
    check_cap(ctx.n, cap)
    ctx.check_element(k, "state index")
    d = 1 << ctx.n
    signs = np.array([(-1) ** (ctx.gf_mul(k, l) & 1) for l in range(d)], dtype=float)
    return signs * alpha_vector(ctx, j) / sqrt(d)


def fkj_unitary(ctx: IrreduciblePoly, j: int, cap: int = DEFAULT_STATE_CAP) -> np.ndarray:
    """Sum_k |f_k^j><k| straight from the formula."""
    check_cap(ctx.n, cap)
    d = 1 << ctx.n
    return alpha_vector(ctx, j)[:, None] * sign_matrix(ctx.n) / sqrt(d)
