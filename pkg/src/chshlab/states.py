"""Two-qubit state objects, Schmidt normal form, and entanglement measures.

Basis conventions used by the whole package, stated once:

* product basis order |00>, |01>, |10>, |11> with qubit ``a`` the left factor;
* sigma_y = [[0, -i], [i, 0]].

The canonical form of a pure state is cos(theta/2)|01> + sin(theta/2)|10>
with theta in [0, pi/2]; all phases are absorbed into the two local
unitaries returned by ``schmidt_decompose``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, StateError
from .linalg import (
    hermitian_eigen,
    hermiticity_residual,
    is_unitary,
    require_finite,
    svd2_complex,
)
from .rng import SeededRng

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# kron(sigma_i, sigma_j) for all nine (i, j); shared by correlation_matrix
# and the Bell-operator construction.
PAULI_KRON = tuple(
    tuple(np.kron(si, sj) for sj in PAULI) for si in PAULI
)

NORMALIZATION_TOL = 1e-12
DENSITY_TOL = 1e-10


class PureState:
    """Normalized two-qubit pure state (4 complex amplitudes)."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes):
        amp = np.array(amplitudes, dtype=complex).reshape(-1)  # copy: immutable
        if amp.shape != (4,):
            raise StateError(f"expected 4 amplitudes, got shape {amp.shape}")
        require_finite(amp)
        norm_sq = float(np.real(np.vdot(amp, amp)))
        if abs(norm_sq - 1.0) > NORMALIZATION_TOL:
            raise StateError(f"state not normalized: sum |amp|^2 = {norm_sq!r}")
        self.amplitudes = amp

    def density(self) -> "DensityMatrix":
        """Rank-1 projector |psi><psi| as a DensityMatrix."""
        amp = self.amplitudes
        return DensityMatrix(np.outer(amp, amp.conj()))

    def as_qubit_matrix(self) -> np.ndarray:
        """Amplitudes as a 2x2 matrix C with C[i, j] = <ij|psi>."""
        return self.amplitudes.reshape(2, 2)

    def __repr__(self) -> str:
        return f"PureState({self.amplitudes.tolist()!r})"


class DensityMatrix:
    """4x4 Hermitian, PSD, unit-trace matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (4, 4):
            raise StateError(f"expected 4x4 matrix, got shape {m.shape}")
        require_finite(m)
        if hermiticity_residual(m) > DENSITY_TOL:
            raise StateError("density matrix not Hermitian within 1e-10")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > DENSITY_TOL:
            raise StateError(f"density matrix trace {trace!r} is not 1")
        eigvals, _ = hermitian_eigen(m)
        if eigvals[0] < -DENSITY_TOL:
            raise StateError(f"density matrix has negative eigenvalue {eigvals[0]!r}")
        self.matrix = (m + m.conj().T) / 2.0

    def __repr__(self) -> str:
        return f"DensityMatrix({self.matrix.tolist()!r})"


def _unitary_from_angles(alpha: float, beta: float, gamma: float, delta: float) -> np.ndarray:
    cg = math.cos(gamma / 2.0)
    sg = math.sin(gamma / 2.0)
    return cmath.exp(-1j * alpha) * np.array(
        [
            [cmath.exp(1j * (-beta / 2 - delta / 2)) * cg,
             -cmath.exp(1j * (-beta / 2 + delta / 2)) * sg],
            [cmath.exp(1j * (beta / 2 - delta / 2)) * sg,
             cmath.exp(1j * (beta / 2 + delta / 2)) * cg],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class LocalUnitary:
    """Single-qubit unitary together with its (alpha, beta, gamma, delta) angles.

    The matrix is e^{-i alpha} times a special-unitary factor built from the
    three rotation angles; construction from a raw matrix recovers the angles
    deterministically (at gamma = 0 only beta + delta is physical and the
    extraction lands on beta = delta; at gamma = pi only beta - delta is
    physical and it lands on delta = -beta).
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not is_unitary(self.matrix, 1e-12):
            raise StateError("LocalUnitary matrix is not unitary within 1e-12")
        rebuilt = _unitary_from_angles(self.alpha, self.beta, self.gamma, self.delta)
        if float(np.max(np.abs(rebuilt - self.matrix))) > 1e-12:
            raise StateError("LocalUnitary angles do not reproduce the matrix")

    @classmethod
    def from_angles(cls, alpha: float, beta: float, gamma: float, delta: float) -> "LocalUnitary":
        return cls(alpha, beta, gamma, delta, _unitary_from_angles(alpha, beta, gamma, delta))

    @classmethod
    def from_matrix(cls, matrix) -> "LocalUnitary":
        w = np.asarray(matrix, dtype=complex)
        if w.shape != (2, 2):
            raise StateError(f"expected 2x2 matrix, got shape {w.shape}")
        require_finite(w)
        if not is_unitary(w, 1e-12):
            raise StateError("matrix is not unitary within 1e-12")
        det = w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0]
        alpha = -0.5 * cmath.phase(det)
        m = cmath.exp(1j * alpha) * w  # special-unitary up to roundoff
        gamma = 2.0 * math.atan2(abs(m[1, 0]), abs(m[0, 0]))
        p00 = cmath.phase(m[0, 0])  # -(beta + delta)/2, or 0 at gamma = pi
        p10 = cmath.phase(m[1, 0])  # (beta - delta)/2, or 0 at gamma = 0
        beta = p10 - p00
        delta = -p10 - p00
        return cls(alpha, beta, gamma, delta, w)


@dataclass(frozen=True)
class SchmidtForm:
    """Canonical decomposition: (u_a x u_b) psi = canonical_state(theta, 0)."""

    theta: float
    chi: float
    u_a: LocalUnitary
    u_b: LocalUnitary


def canonical_state(theta: float, chi: float) -> PureState:
    """The state (0, cos(theta/2), e^{i chi} sin(theta/2), 0)."""
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
    return PureState(
        [0.0, math.cos(theta / 2.0), cmath.exp(1j * chi) * math.sin(theta / 2.0), 0.0]
    )


def schmidt_decompose(psi: PureState) -> SchmidtForm:
    """Reduce psi to canonical form by a product unitary.

    theta lands in [0, pi/2] (larger Schmidt coefficient first) and chi is
    fixed to 0; every phase is pushed into the local unitaries.
    """
    c = psi.as_qubit_matrix()
    u, s, v = svd2_complex(c)
    theta = 2.0 * math.atan2(s[1], s[0])

    # psi = sum_k s_k u_k (x) conj(v_k); map u_1 -> |0>_a, u_2 -> |1>_a and
    # conj(v_1) -> |1>_b, conj(v_2) -> |0>_b, giving s1|01> + s2|10>.
    u_a = u.conj().T
    u_b = np.array([[v[0, 1], v[1, 1]], [v[0, 0], v[1, 0]]], dtype=complex)
    return SchmidtForm(
        theta=theta,
        chi=0.0,
        u_a=LocalUnitary.from_matrix(u_a),
        u_b=LocalUnitary.from_matrix(u_b),
    )


def entanglement_entropy(theta: float) -> float:
    """Entropy of either reduced state of canonical_state(theta, .), in bits."""
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
    p = math.cos(theta / 2.0) ** 2
    q = math.sin(theta / 2.0) ** 2
    total = 0.0
    for w in (p, q):
        if w > 0.0:
            total -= w * math.log2(w)
    return total


def concurrence(psi: PureState) -> float:
    """|<psi*| sigma_y x sigma_y |psi>| with psi* the componentwise conjugate."""
    amp = psi.amplitudes
    flipped = np.kron(SIGMA_Y, SIGMA_Y) @ amp
    return abs(complex(np.dot(amp, flipped)))


def fidelity(psi: PureState, phi: PureState) -> float:
    """|<psi|phi>|^2."""
    return abs(complex(np.vdot(psi.amplitudes, phi.amplitudes))) ** 2


def partial_trace(rho: DensityMatrix, keep: str) -> np.ndarray:
    """Reduced 2x2 density matrix of qubit 'a' or 'b'."""
    if keep not in ("a", "b"):
        raise DomainError(f"keep must be 'a' or 'b', got {keep!r}")
    t = rho.matrix.reshape(2, 2, 2, 2)  # indices (a, b; a', b')
    if keep == "a":
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)


def purity(rho: DensityMatrix) -> float:
    """Tr rho^2, in [1/4, 1] for a two-qubit state."""
    m = rho.matrix
    return float(np.real(np.einsum("ij,ji->", m, m)))


def correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    """3x3 real matrix t[i, j] = Tr(rho sigma_i x sigma_j), i,j in {x,y,z}."""
    t = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            val = complex(np.einsum("ij,ji->", rho.matrix, PAULI_KRON[i][j]))
            if abs(val.imag) > 1e-10:
                raise StateError(
                    f"correlation entry ({i},{j}) has imaginary residue {val.imag!r}"
                )
            t[i, j] = val.real
    return t


def random_pure(rng: SeededRng) -> PureState:
    """Haar-random pure state: 4 complex Gaussian amplitudes, normalized."""
    amp = np.array(
        [complex(rng.gaussian(), rng.gaussian()) for _ in range(4)], dtype=complex
    )
    amp /= math.sqrt(float(np.real(np.vdot(amp, amp))))
    return PureState(amp)


def random_density(rng: SeededRng, rank: int) -> DensityMatrix:
    """Ginibre-ensemble density matrix: G G^dag / Tr(G G^dag), G of size 4 x rank."""
    if rank not in (1, 2, 3, 4):
        raise DomainError(f"rank must be in 1..4, got {rank!r}")
    g = np.array(
        [
            [complex(rng.gaussian(), rng.gaussian()) for _ in range(rank)]
            for _ in range(4)
        ],
        dtype=complex,
    )
    m = g @ g.conj().T
    return DensityMatrix(m / np.real(np.trace(m)))
