"""Truncated Fock-space states, quadrature statistics, and linear loss.

Conventions used throughout the package:

    X1 = (a + a^dag) / 2,   X2 = i (a^dag - a) / 2,   [X1, X2] = i/2

so the vacuum variance of either quadrature is 1/4.  The generalized
quadrature at local-oscillator phase phi is

    X_phi = (a e^{-i phi} + a^dag e^{i phi}) / 2 = X1 cos(phi) + X2 sin(phi)

which gives X_0 = X1 and X_{pi/2} = X2.  Measuring X_phi on rho is the
same as measuring X1 on the number-rotated state
e^{-i phi n} rho e^{+i phi n} (see rotate_phase).

Squeezing is always quoted against the vacuum floor:
dB = 10 log10(V / 0.25), negative below the vacuum limit.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, InvalidState

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10
VACUUM_VARIANCE = 0.25


@dataclass(frozen=True)
class FockVector:
    """Pure state |psi> = sum_n c_n |n>, unit norm, truncated at n_max = len - 1."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 2:
            raise InvalidState("FockVector needs a 1-D amplitude array with n_max >= 1")
        norm = np.linalg.norm(amps)
        if not np.isfinite(norm) or abs(norm - 1.0) > 1e-12:
            raise InvalidState(f"FockVector norm {norm!r} is not 1 within 1e-12")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1


@dataclass(frozen=True)
class FockDensity:
    """Density matrix on the truncated Fock space: Hermitian, unit trace, PSD."""

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
            raise InvalidState("FockDensity needs a square matrix with n_max >= 1")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
            raise InvalidState("density matrix is not Hermitian within 1e-12")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidState(f"density matrix trace {tr!r} is not 1 within 1e-12")
        # eigvalsh is cheap at the truncations used here (n_max <= ~20)
        if np.min(np.linalg.eigvalsh(rho)) < PSD_TOL:
            raise InvalidState("density matrix has an eigenvalue below -1e-10")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    @property
    def n_max(self) -> int:
        return self.matrix.shape[0] - 1


@dataclass(frozen=True)
class QuadratureStats:
    """Mean and variance of X_phi for one state at one LO phase."""

    phi_lo: float
    mean: float
    variance: float

    def __post_init__(self):
        if not (self.variance > 0.0):
            raise InvalidState(f"quadrature variance {self.variance!r} must be > 0")


def make_fock_vector(amplitudes) -> FockVector:
    """Normalize raw amplitudes into a FockVector.

    A length-1 input (bare vacuum) is padded with an empty one-photon slot:
    quadrature moments need at least one level above the occupied ones.
    """
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.ndim != 1 or amps.size == 0:
        raise InvalidState("amplitudes must be a non-empty 1-D array")
    if not np.all(np.isfinite(amps.view(float))):
        raise InvalidState("amplitudes must be finite")
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise InvalidState("all-zero amplitude vector has no normalization")
    amps = amps / norm
    if amps.size < 2:
        amps = np.concatenate([amps, [0.0]])
    return FockVector(amps)


def to_density(state: FockVector) -> FockDensity:
    """Pure-state density matrix |psi><psi|."""
    return FockDensity(np.outer(state.amplitudes, state.amplitudes.conj()))


def annihilation_matrix(n_max: int) -> np.ndarray:
    """Matrix of a on the truncated space: a[m, n] = sqrt(n) delta_{m, n-1}."""
    if n_max < 1:
        raise InvalidParameter("annihilation_matrix needs n_max >= 1")
    n = np.arange(1, n_max + 1)
    return np.diag(np.sqrt(n.astype(float)), k=1).astype(complex)


def quadrature_operator(n_max: int, phi_lo: float) -> np.ndarray:
    """X_phi = (a e^{-i phi} + a^dag e^{i phi}) / 2 on the truncated space."""
    a = annihilation_matrix(n_max)
    return (a * np.exp(-1j * phi_lo) + a.conj().T * np.exp(1j * phi_lo)) / 2.0


def rotate_phase(state: FockDensity, phi: float) -> FockDensity:
    """Number-phase rotation e^{-i phi n} rho e^{+i phi n}.

    Maps X_phi statistics of rho onto X1 statistics of the rotated state.
    """
    n = np.arange(state.matrix.shape[0])
    phase = np.exp(-1j * phi * n)
    return FockDensity(state.matrix * np.outer(phase, phase.conj()))


def quadrature_stats(state: FockDensity, phi_lo: float) -> QuadratureStats:
    """Exact mean and variance of X_phi on a truncated density matrix.

    Moments are evaluated in a space one level larger than the state so the
    ladder term a^dag |n_max> is not clipped; results are exact for any
    state supported on n <= n_max.
    """
    dim = state.matrix.shape[0]
    rho = np.zeros((dim + 1, dim + 1), dtype=complex)
    rho[:dim, :dim] = state.matrix
    x = quadrature_operator(dim, phi_lo)
    mean = float(np.trace(rho @ x).real)
    second = float(np.trace(rho @ x @ x).real)
    return QuadratureStats(phi_lo=phi_lo, mean=mean, variance=second - mean * mean)


def variance_to_db(variance: float) -> float:
    """Squeezing level 10 log10(V / 0.25); negative means below vacuum."""
    if not (variance > 0.0):
        raise InvalidState(f"variance must be > 0 to convert to dB, got {variance!r}")
    return 10.0 * math.log10(variance / VACUUM_VARIANCE)


def loss_kraus_operators(n_max: int, eta: float) -> list[np.ndarray]:
    """Kraus operators of the transmission-eta beamsplitter loss channel.

    K_k = sum_{n >= k} sqrt(C(n, k) eta^{n-k} (1-eta)^k) |n-k><n|,
    k = 0 .. n_max photons lost.
    """
    if not (0.0 <= eta <= 1.0):
        raise InvalidParameter(f"loss transmission eta must be in [0, 1], got {eta!r}")
    dim = n_max + 1
    ops = []
    for k in range(dim):
        kmat = np.zeros((dim, dim), dtype=complex)
        for n in range(k, dim):
            # 0.0**0 == 1.0 handles the eta = 0 and eta = 1 endpoints exactly
            weight = math.comb(n, k) * eta ** (n - k) * (1.0 - eta) ** k
            kmat[n - k, n] = np.sqrt(weight)
        ops.append(kmat)
    return ops


def apply_loss(state: FockDensity, eta: float) -> FockDensity:
    """Pure linear loss: rho -> sum_k K_k rho K_k^dag at transmission eta.

    Exactly trace preserving on the truncated space; variance obeys
    V' = eta V + (1 - eta)/4 for every state and LO phase.
    """
    ops = loss_kraus_operators(state.n_max, eta)
    out = np.zeros_like(state.matrix)
    for k in ops:
        out = out + k @ state.matrix @ k.conj().T
    out = (out + out.conj().T) / 2.0  # scrub float asymmetry, channel is Hermiticity preserving
    return FockDensity(out)
