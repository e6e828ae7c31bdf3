"""Floating-point su(3) engine for the 5-dimensional quotient checks.

Inner product convention: <X, Y> = -Re tr(XY) (so the norm of
diag(i,-i,0) squared is 2).  The shrunk subalgebra K is a nonstandard
so(3) copy spanned by I2, J2, K2 below; the deformed metric scales the
K component by nu in (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

# su(2)-block basis (upper-left), and the so(3)-type triple spanning K.
I1 = np.array([[1j, 0, 0], [0, -1j, 0], [0, 0, 0]], dtype=complex)
J1 = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], dtype=complex)
K1 = np.array([[0, 1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex)

_S2 = sqrt(2.0)
I2 = np.array([[2j, 0, 0], [0, -2j, 0], [0, 0, 0]], dtype=complex)
J2 = np.array([[0, 0, _S2], [0, 0, -_S2], [-_S2, _S2, 0]], dtype=complex)
K2 = np.array(
    [[0, 0, 1j * _S2], [0, 0, 1j * _S2], [1j * _S2, 1j * _S2, 0]], dtype=complex
)

K_BASIS = (I2, J2, K2)  # each has squared norm 8

# Distinguished direction: the block-circle generator diag(i,i,-2i).
Y3 = np.array([[1j, 0, 0], [0, 1j, 0], [0, 0, -2j]], dtype=complex)


def inner(x: np.ndarray, y: np.ndarray) -> float:
    """Bi-invariant inner product -Re tr(XY)."""
    return float(-np.trace(x @ y).real)


def norm2(x: np.ndarray) -> float:
    return inner(x, x)


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def project_K(x: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto K = span{I2, J2, K2}."""
    out = np.zeros((3, 3), dtype=complex)
    for e in K_BASIS:
        out += (inner(x, e) / 8.0) * e
    return out


@dataclass(frozen=True)
class CheegerMetric:
    """Deformed metric scaling the K component by nu in (0, 1)."""

    nu: float = 0.5

    def __post_init__(self):
        if not 0 < self.nu < 1:
            raise ValueError("nu must lie strictly between 0 and 1")


def inner_nu(x: np.ndarray, y: np.ndarray, m: CheegerMetric) -> float:
    xk, yk = project_K(x), project_K(y)
    return inner(x - xk, y - yk) + m.nu * inner(xk, yk)


def is_su3(x: np.ndarray, tol: float = 1e-12) -> bool:
    return (
        np.abs(x + x.conj().T).max() < tol and abs(np.trace(x)) < tol
    )


def is_special_unitary(g: np.ndarray, tol: float = 1e-12) -> bool:
    return (
        np.abs(g @ g.conj().T - np.eye(3)).max() < tol
        and abs(np.linalg.det(g) - 1) < tol
    )


def su3_basis() -> list[np.ndarray]:
    """Orthonormal basis of su(3) under the bi-invariant product."""
    basis = [
        np.diag([1j, -1j, 0]) / _S2,
        np.diag([1j, 1j, -2j]) / sqrt(6.0),
    ]
    for r, s in ((0, 1), (0, 2), (1, 2)):
        m = np.zeros((3, 3), dtype=complex)
        m[r, s], m[s, r] = 1, -1
        basis.append(m / _S2)
        m = np.zeros((3, 3), dtype=complex)
        m[r, s], m[s, r] = 1j, 1j
        basis.append(m / _S2)
    return basis


def coords(x: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    """Coefficients of x in an inner-orthonormal basis."""
    return np.array([inner(x, e) for e in basis])


def haar_su3(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(3) element (QR of a Ginibre matrix, phases fixed)."""
    z = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))) / _S2
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    q = q / np.linalg.det(q) ** (1 / 3)
    return q


def random_su3_element(rng: np.random.Generator) -> np.ndarray:
    """Random element of su(3) with independent normal coefficients."""
    c = rng.standard_normal(8)
    out = np.zeros((3, 3), dtype=complex)
    for ci, e in zip(c, su3_basis()):
        out += ci * e
    return out


def vertical_basis_O5(g: np.ndarray) -> list[np.ndarray]:
    """Spanning set of the vertical space of the two-sided SU(2) action.

    The vectors are psi(C) - Ad(g^{-1})C for C in (I1, J1, K1), where
    psi maps the su(2)-block basis to the K triple.  Rank is 3 for
    every g (all stabilizers are finite).
    """
    gi = g.conj().T
    return [k2 - gi @ k1 @ g for k1, k2 in ((I1, I2), (J1, J2), (K1, K2))]


def horizontal_basis_O5(
    g: np.ndarray, m: CheegerMetric
) -> tuple[list[np.ndarray], np.ndarray]:
    """inner_nu-orthonormal basis of the horizontal space at g.

    Returns the five matrices and their coefficient frame (8 x 5) in the
    su3_basis coordinates.  Raises when the vertical space degenerates.
    """
    basis = su3_basis()
    vert = vertical_basis_O5(g)
    a = np.array([[inner_nu(e, v, m) for e in basis] for v in vert])
    u, s, vt = np.linalg.svd(a)
    if s.min() < 1e-9:
        raise RuntimeError("vertical space degenerated: broken invariant")
    null = vt[3:].T  # 8 x 5, Euclidean-orthonormal columns
    # re-orthonormalize under inner_nu
    gram_b = np.array([[inner_nu(e, f, m) for f in basis] for e in basis])
    gram = null.T @ gram_b @ null
    chol = np.linalg.cholesky(gram)
    frame = null @ np.linalg.inv(chol).T  # inner_nu-orthonormal coefficients
    mats = []
    for k in range(5):
        x = np.zeros((3, 3), dtype=complex)
        for c, e in zip(frame[:, k], basis):
            x += c * e
        mats.append(x)
    return mats, frame


def flatness(a: np.ndarray, b: np.ndarray) -> float:
    """Zero-curvature functional of the plane spanned by a and b.

    Vanishes exactly on planes that are flat for every deformed metric:
    both the full bracket and the bracket of the K components must be
    zero.
    """
    return norm2(bracket(a, b)) + norm2(bracket(project_K(a), project_K(b)))
