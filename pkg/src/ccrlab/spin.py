"""Angular-momentum ladder representation of the CCR and spin coherent states.

The (p+1)-dimensional irreducible so(3) representation is built from the
lowering-operator matrix elements <j,m-1| J- |j,m> = sqrt((j+m)(j-m+1)) with
j = p/2.  Basis ordering puts the highest weight first: index k holds the
J3 eigenvector with eigenvalue j - k.

Q = J1 / sqrt(j) and P = J2 / sqrt(j) satisfy [Q, P] = i J3 / j, so on the
k-th weight state the CCR defect ||([Q,P] - i)|k>|| equals k/j exactly.

Sign conventions (both verified exactly by the test suite):

* J2 = i (J- - J-^dag) / 2, the form consistent with J- = J1 - i J2 and
  [J1, J2] = i J3.
* Rotation covariance reads e^{-i t J3} Q e^{+i t J3} = Q cos t + P sin t,
  which is the ordering implied by [J3, J1] = i J2; writing the conjugation
  with the opposite exponent signs amounts to flipping J3 or t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .linalg import (
    BandedOperator,
    DenseOperator,
    LinCombOperator,
    PermutationPhaseOperator,
    StateVector,
    commutator_apply,
    random_state,
)

COVARIANCE_SEED = 0x5EED


@dataclass(frozen=True)
class SpinRep:
    """Ladder operators of the (p+1)-dimensional so(3) irrep, j = p/2."""

    p: int
    j: float
    J1: BandedOperator
    J2: BandedOperator
    J3: BandedOperator
    Jminus: BandedOperator


def make_spin_rep(p: int) -> SpinRep:
    if p < 1:
        raise ValueError("p must be a positive integer")
    j = p / 2.0
    k = np.arange(p, dtype=np.float64)
    lowering = np.sqrt((p - k) * (k + 1.0)).astype(np.complex128)  # J- |k> -> |k+1>
    jminus = BandedOperator(p + 1, [(1, lowering)])
    j1 = BandedOperator(p + 1, [(1, lowering / 2.0), (-1, lowering / 2.0)])
    j2 = BandedOperator(p + 1, [(1, 1j * lowering / 2.0), (-1, -1j * lowering / 2.0)])
    j3 = BandedOperator(p + 1, [(0, (j - np.arange(p + 1)).astype(np.complex128))])
    return SpinRep(p, j, j1, j2, j3, jminus)


def weight_state(rep: SpinRep, k: int) -> StateVector:
    """The J3 eigenvector with eigenvalue j - k."""
    if not 0 <= k <= rep.p:
        raise ValueError(f"k={k} outside 0..{rep.p}")
    return StateVector.basis(rep.p + 1, k)


def qp_from_spin(rep: SpinRep):
    """Hermitian pair Q = J1/sqrt(j), P = J2/sqrt(j)."""
    s = 1.0 / math.sqrt(rep.j)
    q = BandedOperator(rep.p + 1, [(o, s * v) for o, v in rep.J1.diags])
    p = BandedOperator(rep.p + 1, [(o, s * v) for o, v in rep.J2.diags])
    return q, p


def weight_state_ccr_defect(rep: SpinRep, k: int) -> float:
    """||([Q, P] - i) |k>||, which equals k/j exactly at every p."""
    xi = weight_state(rep, k)
    q, p = qp_from_spin(rep)
    return (commutator_apply(q, p, xi) - 1j * xi).norm()


def rotation_about_axis3(rep: SpinRep, theta: float) -> PermutationPhaseOperator:
    """exp(i theta J3), diagonal and exact."""
    m = rep.j - np.arange(rep.p + 1)
    return PermutationPhaseOperator.diagonal(np.exp(1j * theta * m))


def covariance_defect(rep: SpinRep, theta: float, n_vectors: int = 10, rng=None) -> float:
    """Max over random unit vectors of the rotation-covariance residual.

    Measures ||(e^{-i theta J3} Q e^{i theta J3} - Q cos theta - P sin theta) xi||;
    the identity is exact at every finite p, not just asymptotically.
    """
    if rng is None:
        rng = np.random.default_rng(COVARIANCE_SEED)
    q, p = qp_from_spin(rep)
    fwd = rotation_about_axis3(rep, theta)
    bwd = rotation_about_axis3(rep, -theta)
    rotated = LinCombOperator([(math.cos(theta), q), (math.sin(theta), p)])
    worst = 0.0
    for _ in range(n_vectors):
        xi = random_state(rep.p + 1, rng)
        lhs = bwd.apply(q.apply(fwd.apply(xi)))
        worst = max(worst, (lhs - rotated.apply(xi)).norm())
    return worst


@dataclass(frozen=True)
class SpinCoherentParams:
    """Stereographic parameter mu_c = e^{i phi} tan(theta/2) and z = mu_c sqrt(2j)."""

    theta: float
    phi: float
    mu_c: complex
    z: complex

    @classmethod
    def from_angles(cls, theta: float, phi: float, j: float) -> "SpinCoherentParams":
        if not 0.0 <= theta < math.pi:
            raise ValueError("theta must lie in [0, pi); theta = pi has no finite parameter")
        mu_c = cmath.exp(1j * phi) * math.tan(theta / 2.0)
        return cls(theta, phi, mu_c, mu_c * math.sqrt(2.0 * j))

    @classmethod
    def from_z(cls, z: complex, j: float) -> "SpinCoherentParams":
        mu_c = z / math.sqrt(2.0 * j)
        theta = 2.0 * math.atan(abs(mu_c))
        phi = cmath.phase(mu_c) % (2.0 * math.pi) if mu_c != 0 else 0.0
        return cls(theta, phi, mu_c, complex(z))


def coherent_amplitudes(rep: SpinRep, theta: float, phi: float) -> np.ndarray:
    """Weight-basis amplitudes (1+|mu|^2)^{-j} binom(2j,k)^{1/2} mu^k.

    Magnitudes are assembled in the log domain so that no intermediate
    binomial coefficient overflows, with the phase e^{i k phi} kept apart.
    """
    params = SpinCoherentParams.from_angles(theta, phi, rep.j)
    p = rep.p
    t = abs(params.mu_c)
    k = np.arange(p + 1, dtype=np.float64)
    if t == 0.0:
        amps = np.zeros(p + 1, dtype=np.complex128)
        amps[0] = 1.0
        return amps
    log_binom = gammaln(p + 1) - gammaln(k + 1) - gammaln(p - k + 1)
    log_mag = 0.5 * log_binom + k * math.log(t) - rep.j * math.log1p(t * t)
    return np.exp(log_mag) * np.exp(1j * k * params.phi)


def spin_coherent(rep: SpinRep, theta: float, phi: float) -> StateVector:
    """Unit-norm rotation of the highest-weight state by (theta, phi)."""
    return StateVector(rep.p + 1, coherent_amplitudes(rep, theta, phi))


def rotation_operator(rep: SpinRep, theta: float, phi: float) -> DenseOperator:
    """Dense exp(i theta (J1 sin phi - J2 cos phi)); cross-check use, small p only."""
    gen = math.sin(phi) * rep.J1.dense() - math.cos(phi) * rep.J2.dense()
    return DenseOperator(expm(1j * theta * gen))


def _nilpotent_exp(mat: np.ndarray, order: int) -> np.ndarray:
    out = np.eye(mat.shape[0], dtype=np.complex128)
    term = np.eye(mat.shape[0], dtype=np.complex128)
    for n in range(1, order + 1):
        term = term @ mat / n
        out = out + term
    return out


def rotation_product_form(rep: SpinRep, theta: float, phi: float) -> DenseOperator:
    """Disentangled product e^{mu J-} e^{-log(1+|mu|^2) J3} e^{-mu* J-^dag}.

    The J- exponentials are finite series (J- is nilpotent at finite p);
    intended as an independent cross-check at small p.
    """
    params = SpinCoherentParams.from_angles(theta, phi, rep.j)
    jm = rep.Jminus.dense()
    left = _nilpotent_exp(params.mu_c * jm, rep.p)
    middle = np.diag(
        np.exp(-math.log1p(abs(params.mu_c) ** 2) * (rep.j - np.arange(rep.p + 1)))
    ).astype(np.complex128)
    right = _nilpotent_exp(-np.conj(params.mu_c) * jm.conj().T, rep.p)
    return DenseOperator(left @ middle @ right)


def bose_coherent_amplitude(z: complex, k: int) -> complex:
    """e^{-|z|^2/2} z^k / sqrt(k!), the harmonic-oscillator coherent amplitude."""
    if z == 0:
        return 1.0 + 0j if k == 0 else 0j
    log_mag = -abs(z) ** 2 / 2.0 + k * math.log(abs(z)) - 0.5 * gammaln(k + 1)
    return math.exp(log_mag) * cmath.exp(1j * k * cmath.phase(z))


def coherent_limit_error(rep: SpinRep, z: complex, kmax: int) -> np.ndarray:
    """|<k-th weight | theta,phi> - e^{-|z|^2/2} z^k / sqrt(k!)| for k = 0..kmax.

    The sqrt(k!) normalization is the one the amplitudes actually converge
    to; see the convention notes in the sweep report.
    """
    if kmax > rep.p:
        raise ValueError(f"kmax={kmax} exceeds p={rep.p}")
    params = SpinCoherentParams.from_z(z, rep.j)
    amps = coherent_amplitudes(rep, params.theta, params.phi)
    return np.array(
        [abs(amps[k] - bose_coherent_amplitude(z, k)) for k in range(kmax + 1)]
    )
