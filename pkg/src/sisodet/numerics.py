"""Small dense complex linear algebra for whitening and metric checks.

All vectors and matrices are complex128 numpy arrays.  Sizes stay at
receiver scale (a handful of antennas), so clarity beats asymptotics.
"""

from __future__ import annotations

import numpy as np
from numpy.linalg import LinAlgError


def _require_hermitian(Q: np.ndarray) -> None:
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {Q.shape}")
    scale = max(1.0, float(np.abs(Q).max()))
    if np.abs(Q - Q.conj().T).max() > 1e-10 * scale:
        raise ValueError("matrix is not Hermitian")


def cholesky_factor(Q) -> np.ndarray:
    """Lower-triangular G with G @ G.conj().T == Q.

    Raises:
        LinAlgError: If Q is not positive definite; the message names the
            first non-positive pivot.
        ValueError: If Q is not square Hermitian.
    """
    Q = np.asarray(Q, dtype=complex)
    _require_hermitian(Q)
    n = Q.shape[0]
    G = np.zeros((n, n), dtype=complex)
    for j in range(n):
        pivot = Q[j, j].real - np.sum(np.abs(G[j, :j]) ** 2)
        if pivot <= 0.0:
            raise LinAlgError(
                f"matrix is not positive definite: pivot {j} is {pivot:.3e}"
            )
        G[j, j] = np.sqrt(pivot)
        for i in range(j + 1, n):
            G[i, j] = (Q[i, j] - G[i, :j] @ G[j, :j].conj()) / G[j, j]
    return G


def quadratic_norm(x, Q) -> float:
    """Hermitian quadratic form x^H Q x as a nonnegative real.

    The imaginary residue of the form must be negligible (it is zero in
    exact arithmetic for Hermitian Q); otherwise a ValueError is raised.
    """
    x = np.asarray(x, dtype=complex).ravel()
    Q = np.asarray(Q, dtype=complex)
    if Q.shape != (x.size, x.size):
        raise ValueError(
            f"dimension mismatch: vector of size {x.size}, matrix {Q.shape}"
        )
    value = complex(np.vdot(x, Q @ x))
    if abs(value.imag) > 1e-10 * max(1.0, abs(value.real)):
        raise ValueError(f"quadratic form has imaginary residue {value.imag:.3e}")
    return value.real
