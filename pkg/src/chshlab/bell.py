"""Bell/CHSH operators, exact spectra, optimal settings, Horodecki criterion.

The Bell operator for measurement directions (a, a', b, b') is

    B = (a.sigma) x ((b + b').sigma) + (a'.sigma) x ((b - b').sigma),

its square is 4 + 4 (a x a').sigma x (b x b').sigma, and with
sin x = |a x a'| |b x b'| the spectrum is {+-2 sqrt(1 +- sin x)}.  For a
pure state with Schmidt angle theta the attainable maximum of |<B>| is
2 sqrt(1 + sin^2 theta); for a general density matrix it is 2 sqrt(M) with
M the sum of the two largest eigenvalues of T^T T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NotUnitError
from .linalg import hermitian_eigen, require_finite, sym3_eigen_desc
from .rng import SeededRng
from .states import (
    PAULI,
    DensityMatrix,
    PureState,
    canonical_state,  # noqa: F401  (re-exported convenience)
    correlation_matrix,
    schmidt_decompose,
)

TSIRELSON = 2.0 * math.sqrt(2.0)

UNIT_TOL = 1e-12


def _as_unit_vector(v) -> np.ndarray:
    vec = np.array(v, dtype=float).reshape(-1)  # copy: schemes are immutable
    if vec.shape != (3,):
        raise NotUnitError(f"expected a 3-vector, got shape {vec.shape}")
    require_finite(vec)
    norm = math.sqrt(float(vec @ vec))
    if abs(norm - 1.0) > UNIT_TOL:
        raise NotUnitError(f"Bloch vector norm {norm!r} differs from 1")
    return vec


@dataclass(frozen=True)
class Observable:
    """Spin observable a.sigma for a unit Bloch vector a."""

    bloch: np.ndarray
    matrix: np.ndarray = field(repr=False)


def observable_from_bloch(v) -> Observable:
    """Build a.sigma; traceless, Hermitian, unit square."""
    vec = _as_unit_vector(v)
    m = vec[0] * PAULI[0] + vec[1] * PAULI[1] + vec[2] * PAULI[2]
    return Observable(bloch=vec, matrix=m)


@dataclass(frozen=True)
class MeasurementScheme:
    """Four unit Bloch vectors: a, a' for Alice and b, b' for Bob."""

    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _as_unit_vector(self.a))
        object.__setattr__(self, "a_prime", _as_unit_vector(self.a_prime))
        object.__setattr__(self, "b", _as_unit_vector(self.b))
        object.__setattr__(self, "b_prime", _as_unit_vector(self.b_prime))


def random_bloch(rng: SeededRng) -> np.ndarray:
    """Uniformly random unit vector (normalized Gaussian triple)."""
    while True:
        v = np.array([rng.gaussian(), rng.gaussian(), rng.gaussian()])
        norm = math.sqrt(float(v @ v))
        if norm > 1e-12:
            return v / norm


def random_scheme(rng: SeededRng) -> MeasurementScheme:
    return MeasurementScheme(
        random_bloch(rng), random_bloch(rng), random_bloch(rng), random_bloch(rng)
    )


def bell_operator(s: MeasurementScheme) -> np.ndarray:
    """4x4 Hermitian Bell operator of the scheme."""
    a = observable_from_bloch(s.a).matrix
    ap = observable_from_bloch(s.a_prime).matrix
    b = observable_from_bloch(s.b).matrix
    bp = observable_from_bloch(s.b_prime).matrix
    return np.kron(a, b + bp) + np.kron(ap, b - bp)


def chsh_value(s: MeasurementScheme, rho: DensityMatrix) -> float:
    """Tr(rho B) for the scheme's Bell operator."""
    val = complex(np.einsum("ij,ji->", rho.matrix, bell_operator(s)))
    if abs(val.imag) > 1e-10:
        raise DomainError(f"CHSH expectation has imaginary residue {val.imag!r}")
    return val.real


def commutator_product(s: MeasurementScheme) -> np.ndarray:
    """[A, A'] x [B, B'] = -4 (a x a').sigma x (b x b').sigma."""
    a = observable_from_bloch(s.a).matrix
    ap = observable_from_bloch(s.a_prime).matrix
    b = observable_from_bloch(s.b).matrix
    bp = observable_from_bloch(s.b_prime).matrix
    return np.kron(a @ ap - ap @ a, b @ bp - bp @ b)


@dataclass(frozen=True)
class BellSpectrum:
    """Closed-form spectrum of a Bell operator.

    eigenvalues are ordered {+2 sqrt(1+sin x), +2 sqrt(1-sin x),
    -2 sqrt(1-sin x), -2 sqrt(1+sin x)}; eigenvectors[:, k] is the
    numerically computed eigenvector paired with eigenvalues[k].
    """

    sin_x: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)


def bell_spectrum(s: MeasurementScheme) -> BellSpectrum:
    """Spectrum {+-2 sqrt(1 +- sin x)}, sin x = |a x a'| |b x b'|."""
    cross_a = np.cross(s.a, s.a_prime)
    cross_b = np.cross(s.b, s.b_prime)
    # clamp: the product can exceed 1 by a few ulp for orthogonal pairs
    sin_x = min(1.0, math.sqrt(float(cross_a @ cross_a) * float(cross_b @ cross_b)))

    op = bell_operator(s)
    # B^2 = 4I - [A,A'] x [B,B'], i.e. the commutator term enters negatively
    # for this operator ordering.
    residual = float(
        np.max(np.abs(op @ op - 4.0 * np.eye(4) + commutator_product(s)))
    )
    if residual > 1e-12:
        raise RuntimeError(f"Bell-square identity residual {residual:.3e} too large")

    w, v = hermitian_eigen(op)  # ascending
    hi = 2.0 * math.sqrt(1.0 + sin_x)
    lo = 2.0 * math.sqrt(1.0 - sin_x)
    eigenvalues = np.array([hi, lo, -lo, -hi])
    eigenvectors = v[:, ::-1]  # descending, matching the eigenvalue order
    return BellSpectrum(sin_x=sin_x, eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def eta_basis() -> np.ndarray:
    """Columns are the four Bell-like eigenvectors of the z/x-frame operator."""
    inv = 1.0 / math.sqrt(2.0)
    return np.array(
        [
            [inv, -inv, 0.0, 0.0],
            [0.0, 0.0, -inv, inv],
            [0.0, 0.0, inv, inv],
            [inv, inv, 0.0, 0.0],
        ],
        dtype=complex,
    )


def landau_bound(s: MeasurementScheme, rho: DensityMatrix) -> float:
    """sqrt(4 + |Tr(rho [A,A'] x [B,B'])|); always in [2, 2 sqrt(2)]."""
    val = complex(np.einsum("ij,ji->", rho.matrix, commutator_product(s)))
    return math.sqrt(4.0 + abs(val))


def analytic_max_violation(theta: float) -> float:
    """Exact maximum 2 sqrt(1 + sin^2 theta) over all measurement schemes."""
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
    return 2.0 * math.sqrt(1.0 + math.sin(theta) ** 2)


def max_violation_pure(psi: PureState) -> float:
    """Exact CHSH maximum for an arbitrary pure state."""
    return analytic_max_violation(schmidt_decompose(psi).theta)


def horodecki_M(rho: DensityMatrix) -> float:
    """Sum of the two largest eigenvalues of T^T T; max CHSH is 2 sqrt(M)."""
    t = correlation_matrix(rho)
    eig = sym3_eigen_desc(t.T @ t)
    return max(eig[0], 0.0) + max(eig[1], 0.0)


@dataclass(frozen=True)
class OptimalSettings:
    """A scheme achieving the exact pure-state maximum.

    lambda_angle is the mixing angle with tan(lambda) = sin(theta);
    achieved_value is Tr(|psi><psi| B) for the constructed scheme.
    """

    scheme: MeasurementScheme
    lambda_angle: float
    achieved_value: float


def _rotation_of(u: np.ndarray) -> np.ndarray:
    """SO(3) image of a single-qubit unitary: U^dag sigma_i U = sum_j R[i,j] sigma_j."""
    r = np.empty((3, 3))
    for i in range(3):
        conj = u.conj().T @ PAULI[i] @ u
        for j in range(3):
            r[i, j] = 0.5 * np.real(np.einsum("ij,ji->", conj, PAULI[j]))
    return r


def optimal_settings_for(psi: PureState) -> OptimalSettings:
    """Construct measurement directions attaining 2 sqrt(1 + sin^2 theta).

    In the Schmidt frame the correlation matrix is diag(sin t, sin t, -1), so
    Alice takes its two dominant singular directions (z, then x) and Bob takes
    cos(l) (T a)/|T a| +- sin(l) (T a')/|T a'| with tan(l) = sin t; the four
    vectors are then rotated back out of the Schmidt frame.  A product state
    (sin t = 0) degenerates to a = a' = z, b = b' = -z, value 2.
    """
    form = schmidt_decompose(psi)
    sin_t = math.sin(form.theta)
    lam = math.atan(sin_t)

    if sin_t < 1e-15:
        a_c = ap_c = np.array([0.0, 0.0, 1.0])
        b_c = bp_c = np.array([0.0, 0.0, -1.0])  # T z = -z: sign-matched
    else:
        a_c = np.array([0.0, 0.0, 1.0])
        ap_c = np.array([1.0, 0.0, 0.0])
        cl, sl = math.cos(lam), math.sin(lam)
        b_c = np.array([sl, 0.0, -cl])   # cos(l) (-z) + sin(l) x
        bp_c = np.array([-sl, 0.0, -cl])

    # Canonical-frame directions v pair with original-frame R^T v, where R is
    # the SO(3) rotation induced by the Schmidt unitary on that side.
    ra_t = _rotation_of(form.u_a.matrix).T
    rb_t = _rotation_of(form.u_b.matrix).T
    scheme = MeasurementScheme(ra_t @ a_c, ra_t @ ap_c, rb_t @ b_c, rb_t @ bp_c)
    achieved = chsh_value(scheme, psi.density())
    return OptimalSettings(scheme=scheme, lambda_angle=lam, achieved_value=achieved)
