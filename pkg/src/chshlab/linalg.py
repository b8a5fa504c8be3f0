"""Small dense complex linear algebra kernel (n <= 4).

Everything here is written for tiny matrices: a cyclic Jacobi eigensolver
for Hermitian matrices up to 4x4, a dedicated real symmetric 3x3 variant,
and a 2x2 complex SVD built from the eigendecomposition of C^dag C plus
polar reconstruction. numpy is used as the array container only; no
numpy.linalg calls appear on these paths.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import (
    NoConvergenceError,
    NotHermitianError,
    NotSymmetricError,
    StateError,
)

HERMITIAN_TOL = 1e-10
SYMMETRIC_TOL = 1e-12
# Jacobi stops once the off-diagonal Frobenius norm drops below this.
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def require_finite(values) -> None:
    """Reject NaN/Inf anywhere in an array-like of scalars."""
    arr = np.asarray(values)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise StateError("non-finite component (NaN or Inf)")


def hermiticity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_residual(m) <= tol


def is_unitary(m: np.ndarray, tol: float = 1e-12) -> bool:
    eye = np.eye(m.shape[0])
    return float(np.max(np.abs(m.conj().T @ m - eye))) <= tol


def _offdiag_frobenius(h: np.ndarray) -> float:
    n = h.shape[0]
    acc = 0.0
    for p in range(n):
        for q in range(n):
            if p != q:
                acc += abs(h[p, q]) ** 2
    return math.sqrt(acc)


def hermitian_eigen(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, dim in {2, 3, 4}.

    Returns (eigenvalues ascending, eigenvectors as orthonormal columns).
    Cyclic Jacobi with complex plane rotations; raises NotHermitianError if
    the symmetry residual exceeds 1e-10 and NoConvergenceError after 100
    sweeps.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if h.shape != (n, n) or n not in (2, 3, 4):
        raise NotHermitianError(f"expected square matrix of dim 2..4, got {h.shape}")
    require_finite(h)
    if hermiticity_residual(h) > HERMITIAN_TOL:
        raise NotHermitianError(
            f"symmetry residual {hermiticity_residual(h):.3e} exceeds {HERMITIAN_TOL:.0e}"
        )

    a = (h + h.conj().T) / 2.0  # exact Hermitian working copy
    v = np.eye(n, dtype=complex)
    for _ in range(JACOBI_MAX_SWEEPS):
        if _offdiag_frobenius(a) < JACOBI_OFFDIAG_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) == 0.0:
                    continue
                # Unitary rotation U = D G D^dag that annihilates a[p,q]:
                # D carries the phase of a[p,q], G is the real Jacobi rotation.
                phi = cmath.phase(apq)
                theta = 0.5 * math.atan2(2.0 * abs(apq), (a[p, p] - a[q, q]).real)
                c = math.cos(theta)
                s = math.sin(theta)
                u = np.array(
                    [[c, -s * cmath.exp(1j * phi)], [s * cmath.exp(-1j * phi), c]],
                    dtype=complex,
                )
                a[:, [p, q]] = a[:, [p, q]] @ u
                a[[p, q], :] = u.conj().T @ a[[p, q], :]
                v[:, [p, q]] = v[:, [p, q]] @ u
                # re-pin Hermiticity of the touched pair against roundoff drift
                a[p, q] = (a[p, q] + a[q, p].conjugate()) / 2.0
                a[q, p] = a[p, q].conjugate()
    else:
        if _offdiag_frobenius(a) >= JACOBI_OFFDIAG_TOL:
            raise NoConvergenceError(
                f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def sym3_eigen_desc(s: np.ndarray) -> np.ndarray:
    """Eigenvalues of a real symmetric 3x3 matrix, descending.

    Real-arithmetic cyclic Jacobi, independent of the complex solver.
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (3, 3):
        raise NotSymmetricError(f"expected 3x3, got {s.shape}")
    require_finite(s)
    if float(np.max(np.abs(s - s.T))) > SYMMETRIC_TOL:
        raise NotSymmetricError("matrix is not symmetric within 1e-12")

    a = (s + s.T) / 2.0
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(
            2.0 * (a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2)
        )
        if off < JACOBI_OFFDIAG_TOL:
            break
        for p in range(2):
            for q in range(p + 1, 3):
                if a[p, q] == 0.0:
                    continue
                theta = 0.5 * math.atan2(2.0 * a[p, q], a[p, p] - a[q, q])
                c = math.cos(theta)
                t = math.sin(theta)
                rot = np.array([[c, -t], [t, c]])
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[[p, q], :] = rot.T @ a[[p, q], :]
                a[p, q] = a[q, p] = (a[p, q] + a[q, p]) / 2.0
    else:
        off = math.sqrt(2.0 * (a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2))
        if off >= JACOBI_OFFDIAG_TOL:
            raise NoConvergenceError(
                f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )

    return np.sort(np.diag(a))[::-1].copy()


def _perp(u: np.ndarray) -> np.ndarray:
    # unit vector orthogonal to a unit 2-vector
    return np.array([-u[1].conjugate(), u[0].conjugate()], dtype=complex)


def _canonical_column_phase(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Make the first sizeable entry of v real nonnegative; rotating u and v
    # by the same phase keeps u v^dag (hence the reconstruction) unchanged.
    for entry in v:
        if abs(entry) > 1e-12:
            phase = entry / abs(entry)
            return u / phase, v / phase
    return u, v


def svd2_complex(c: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SVD of a complex 2x2 matrix: C = U diag(s) V^dag, s descending >= 0.

    The right singular basis comes from the eigendecomposition of C^dag C;
    the left basis is rebuilt by polar reconstruction, with the second
    column completed by orthogonality whenever the matrix is (near) rank 1.
    """
    c = np.asarray(c, dtype=complex)
    if c.shape != (2, 2):
        raise NotHermitianError(f"expected 2x2, got {c.shape}")
    require_finite(c)

    gram = c.conj().T @ c
    w, vecs = hermitian_eigen(gram)
    # descending singular values
    v1 = vecs[:, 1]
    v2 = vecs[:, 0]

    cv1 = c @ v1
    s1 = float(np.sqrt(np.real(np.vdot(cv1, cv1))))
    if s1 < 1e-14:
        # numerically zero matrix: any orthonormal pair will do
        u = np.eye(2, dtype=complex)
        v = np.eye(2, dtype=complex)
        return u, np.array([s1, 0.0]), v

    u1 = cv1 / s1
    u2 = _perp(u1)
    # Phase of v2 is fixed so that u2^dag C v2 is real nonnegative; this is
    # stable even when s2 underflows (rank-1 case keeps v2 from the Gram
    # eigenbasis untouched).
    d = complex(np.vdot(u2, c @ v2))
    s2 = abs(d)
    if s2 > 1e-14:
        v2 = v2 * (d.conjugate() / s2)
    s2 = min(s2, s1)

    u1, v1 = _canonical_column_phase(u1, v1)
    u2, v2 = _canonical_column_phase(u2, v2)
    u = np.column_stack([u1, u2])
    v = np.column_stack([v1, v2])
    return u, np.array([s1, s2]), v
