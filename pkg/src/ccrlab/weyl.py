"""Clock/shift canonical pairs and the finite Heisenberg group they generate.

A canonical pair on dimension nu is a pair of unitaries with U^nu = V^nu = 1,
no smaller power equal to 1, and U V = exp(2 pi i / nu) V U.  The concrete
realization fixed here is U = diag(exp(2 pi i k / nu)) and V the cyclic shift
e_k -> e_{k+1 mod nu}; any other canonical pair is unitarily equivalent.

Powers and products of the form exp(2 pi i m / nu) V^l U^k are computed by
index arithmetic (permutation plus phase), never by matrix multiplication,
so every identity checked here is exact up to floating-point rounding at
any dimension that fits in memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    LinCombOperator,
    PermutationPhaseOperator,
    StateVector,
    commutator_apply,
    _indices,
)


@dataclass(frozen=True)
class WeylPair:
    """Dimension nu with the clock operator U and shift operator V."""

    nu: int
    U: PermutationPhaseOperator
    V: PermutationPhaseOperator

    def power_op(self, k: int = 0, l: int = 0, m: int = 0) -> PermutationPhaseOperator:
        """exp(2 pi i m / nu) V^l U^k by index arithmetic.

        Exponents are reduced mod nu in integer arithmetic before any phase
        is evaluated, so e.g. U^nu is exactly the identity.
        """
        nu = self.nu
        k, l, m = k % nu, l % nu, m % nu
        idx = _indices(nu)
        perm = (idx + l) % nu
        phases = np.exp(2j * np.pi * ((k * idx + m) % nu) / nu)
        return PermutationPhaseOperator(nu, perm, phases)


@dataclass(frozen=True)
class HeisenbergElement:
    """Group element (k, l, m) of the finite Heisenberg group over Z/nu."""

    k: int
    l: int
    m: int
    nu: int

    def __post_init__(self):
        if not (0 <= self.k < self.nu and 0 <= self.l < self.nu and 0 <= self.m < self.nu):
            raise ValueError(f"residues must lie in 0..{self.nu - 1}")


def make_canonical_pair(nu: int) -> WeylPair:
    """Clock/shift pair on C^nu; the clock eigenvector at index 0 has eigenvalue 1."""
    if nu < 1:
        raise ValueError("nu must be a positive integer")
    idx = _indices(nu)
    clock = PermutationPhaseOperator(nu, idx, np.exp(2j * np.pi * idx / nu))
    shift = PermutationPhaseOperator(nu, (idx + 1) % nu, np.ones(nu, dtype=np.complex128))
    return WeylPair(nu, clock, shift)


def clock_basis_vector(pair: WeylPair, k: int) -> StateVector:
    """|u_k>, the k-th clock eigenvector (a standard basis vector here)."""
    return StateVector.basis(pair.nu, k % pair.nu)


def fourier_basis_vector(pair: WeylPair, n: int) -> StateVector:
    """|v_n> = nu^{-1/2} sum_k exp(2 pi i n k / nu) |u_k>, a shift eigenvector.

    Satisfies V |v_n> = exp(-2 pi i n / nu) |v_n>.
    """
    nu = pair.nu
    if not 0 <= n < nu:
        raise ValueError(f"index {n} out of range for nu={nu}")
    idx = _indices(nu)
    comps = np.exp(2j * np.pi * ((n * idx) % nu) / nu) / np.sqrt(nu)
    return StateVector(nu, comps)


def heisenberg_mul(g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
    """Twisted product (k+k', l+l', m+m'+k*l') with everything mod nu."""
    if g.nu != h.nu:
        raise ValueError(f"group moduli differ: {g.nu} != {h.nu}")
    nu = g.nu
    return HeisenbergElement(
        (g.k + h.k) % nu,
        (g.l + h.l) % nu,
        (g.m + h.m + g.k * h.l) % nu,
        nu,
    )


def heisenberg_rep(pair: WeylPair, g: HeisenbergElement) -> PermutationPhaseOperator:
    """The unitary exp(2 pi i m / nu) V^l U^k representing g."""
    if g.nu != pair.nu:
        raise ValueError(f"element modulus {g.nu} != pair dimension {pair.nu}")
    return pair.power_op(k=g.k, l=g.l, m=g.m)


def plateau_vector(pair: WeylPair, l: int, mu: int) -> StateVector:
    """Uniform window over mu consecutive clock eigenvectors starting at l*mu.

    These are the approximately invariant vectors of both U and V:
    || V |l> - |l> || = sqrt(2/mu) exactly and
    || U |l> - |l> || <= 2 pi (l+1) mu / nu.
    """
    nu = pair.nu
    if mu < 1:
        raise ValueError("window size mu must be >= 1")
    if (l + 1) * mu > nu:
        raise ValueError(f"window [{l * mu}, {(l + 1) * mu}) overflows dimension {nu}")
    comps = np.zeros(nu, dtype=np.complex128)
    comps[l * mu : (l + 1) * mu] = 1.0 / math.sqrt(mu)
    return StateVector(nu, comps)


def default_window(nu: int) -> int:
    """Window size floor(sqrt(nu)): balances the sqrt(2/mu) and 2 pi mu / nu defects."""
    return max(1, math.isqrt(nu))


def quadrature_ops(pair: WeylPair, m: int = 1, n: int = 1):
    """Hermitian pair built from clock and shift powers.

    P = (i/m) sqrt(nu / 8 pi) (U^m - U^-m),
    Q = (i/n) sqrt(nu / 8 pi) (V^n - V^-n).
    Returns (P, Q).
    """
    if m < 1 or n < 1:
        raise ValueError("quadrature orders m, n must be >= 1")
    scale = math.sqrt(pair.nu / (8.0 * math.pi))
    p_op = LinCombOperator(
        [(1j * scale / m, pair.power_op(k=m)), (-1j * scale / m, pair.power_op(k=-m))]
    )
    q_op = LinCombOperator(
        [(1j * scale / n, pair.power_op(l=n)), (-1j * scale / n, pair.power_op(l=-n))]
    )
    return p_op, q_op


@dataclass(frozen=True)
class CcrDefect:
    """Relative defect norms of the two CCR surrogates on a given vector."""

    quadrature: float
    group: float


def ccr_defect(pair: WeylPair, m: int, n: int, xi: StateVector) -> CcrDefect:
    """Measure ||([Q, P] - i) xi|| / ||xi|| for both CCR surrogates.

    quadrature: commutator of the Hermitian quadrature pair;
    group: (nu / 2 pi m n) [U^m, V^n] acting as the approximate i.
    """
    norm = xi.norm()
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("need a nonzero finite-norm vector")
    p_op, q_op = quadrature_ops(pair, m, n)
    quad = commutator_apply(q_op, p_op, xi) - 1j * xi
    u_m = pair.power_op(k=m)
    v_n = pair.power_op(l=n)
    scale = pair.nu / (2.0 * math.pi * m * n)
    group = scale * commutator_apply(u_m, v_n, xi) - 1j * xi
    return CcrDefect(quad.norm() / norm, group.norm() / norm)


def commutator_factorization_residual(pair: WeylPair, m: int, n: int, xi: StateVector) -> float:
    """|| [U^m, V^n] xi - (exp(2 pi i m n / nu) - 1) V^n U^m xi ||.

    This factorization is exact at every dimension, so the residual is
    pure floating-point noise.
    """
    u_m = pair.power_op(k=m)
    v_n = pair.power_op(l=n)
    lhs = commutator_apply(u_m, v_n, xi)
    factor = np.exp(2j * np.pi * ((m * n) % pair.nu) / pair.nu) - 1.0
    rhs = factor * v_n.compose(u_m).apply(xi)
    return (lhs - rhs).norm()
