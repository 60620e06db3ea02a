"""Order-p parafermi oscillators built from p commuting fermion families.

A mode k of order p is the sum b_k = sum_alpha b_k^(alpha) of p component
annihilators.  Component (k, alpha) lives on site (alpha-1)*nu + k of a
p*nu qubit register; within its own block alpha it carries the usual
trailing-Z string (sites k+1..nu of that block), and no string across
blocks, which is exactly what makes distinct blocks commute instead of
anticommute.  The vacuum is the product state with every site unoccupied,
i.e. the basis vector with all bits set.

The normalized operators beta_k = b_k / sqrt(p) satisfy harmonic-oscillator
commutation relations up to O(1/p) defects on low-excitation states; the
deviation on a number eigenstate is not just bounded but exactly
(2/p) * ||N_k xi||.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .linalg import (
    DEFAULT_SITE_CAP,
    PauliString,
    PauliSumOperator,
    StateVector,
    commutator_apply,
    random_state,
    require_sites,
)

DEFAULT_EXCITATION_CAP = 6


class ModeExclusionError(ValueError):
    """Raising a mode beyond the order p annihilates the state."""


@dataclass(frozen=True)
class GreenSystem:
    """Order p, nu modes, and the p*nu component annihilators."""

    p: int
    nu: int
    total_sites: int
    components: dict
    vacuum: StateVector

    def site(self, k: int, alpha: int) -> int:
        return (alpha - 1) * self.nu + k

    def component(self, k: int, alpha: int) -> PauliSumOperator:
        return self.components[(k, alpha)]


def _component_string(k: int, alpha: int, p: int, nu: int) -> PauliString:
    # b = i * lower_k * Z_{k+1} ... Z_nu within block alpha
    base = (alpha - 1) * nu
    sites = [(base + k, "-")] + [(base + kk, "Z") for kk in range(k + 1, nu + 1)]
    return PauliString(1j, sites, p * nu)


def make_green_system(p: int, nu: int, site_cap: int = DEFAULT_SITE_CAP) -> GreenSystem:
    if p < 1 or nu < 1:
        raise ValueError("p and nu must be positive integers")
    total = p * nu
    require_sites(total, site_cap)
    comps = {
        (k, alpha): PauliSumOperator([_component_string(k, alpha, p, nu)], total)
        for k in range(1, nu + 1)
        for alpha in range(1, p + 1)
    }
    vacuum = StateVector.basis(1 << total, (1 << total) - 1)
    return GreenSystem(p, nu, total, comps, vacuum)


def parafermi_op(sys: GreenSystem, k: int) -> PauliSumOperator:
    """Annihilator b_k = sum over the p component strings."""
    if not 1 <= k <= sys.nu:
        raise ValueError(f"mode {k} outside 1..{sys.nu}")
    strings = [sys.component(k, alpha).strings[0] for alpha in range(1, sys.p + 1)]
    return PauliSumOperator(strings, sys.total_sites)


def normalized_op(sys: GreenSystem, k: int) -> PauliSumOperator:
    """beta_k = b_k / sqrt(p)."""
    return parafermi_op(sys, k).scaled(1.0 / np.sqrt(sys.p))


def number_ops(sys: GreenSystem):
    """(N, per-mode N_k list, per-block N^(alpha) list), all diagonal strings.

    N_k equals ([b_k^dag, b_k] + p) / 2 and the ladder relations
    N_k b_k = b_k (N_k - 1), N_k b_k^dag = b_k^dag (N_k + 1) hold.
    """
    total = sys.total_sites

    def proj(k, alpha):
        return PauliString(1.0, [(sys.site(k, alpha), "N")], total)

    per_mode = [
        PauliSumOperator([proj(k, a) for a in range(1, sys.p + 1)], total)
        for k in range(1, sys.nu + 1)
    ]
    per_block = [
        PauliSumOperator([proj(k, a) for k in range(1, sys.nu + 1)], total)
        for a in range(1, sys.p + 1)
    ]
    every = PauliSumOperator(
        [proj(k, a) for k in range(1, sys.nu + 1) for a in range(1, sys.p + 1)], total
    )
    return every, per_mode, per_block


@dataclass(frozen=True)
class FockLabel:
    """Occupation numbers (n_1, ..., n_nu); entries above p are excluded."""

    occupations: tuple

    def __post_init__(self):
        occ = tuple(int(n) for n in self.occupations)
        if any(n < 0 for n in occ):
            raise ValueError("occupations must be nonnegative")
        object.__setattr__(self, "occupations", occ)

    def total(self) -> int:
        return sum(self.occupations)


def fock_state(
    sys: GreenSystem, label, excitation_cap: int = DEFAULT_EXCITATION_CAP
) -> StateVector:
    """Normalized b_1^{dag n_1} b_2^{dag n_2} ... |vacuum>.

    A number eigenstate: N_k eigenvalue n_k for every mode.  If some
    n_k > p the raw vector vanishes (order-p exclusion) and a
    ModeExclusionError names the offending mode.
    """
    if not isinstance(label, FockLabel):
        label = FockLabel(tuple(label))
    occ = label.occupations
    if len(occ) > sys.nu:
        raise ValueError(f"label has {len(occ)} modes, system has {sys.nu}")
    if label.total() > excitation_cap:
        raise ValueError(f"total excitation {label.total()} exceeds cap {excitation_cap}")
    vec = sys.vacuum
    # rightmost factor acts first: apply creation ops for mode nu first
    for k in range(len(occ), 0, -1):
        creator = parafermi_op(sys, k).adjoint()
        for _ in range(occ[k - 1]):
            vec = creator.apply(vec)
        if occ[k - 1] and vec.norm() <= 1e-14:
            raise ModeExclusionError(
                f"mode {k}: occupation {occ[k - 1]} exceeds order {sys.p}"
            )
    return vec.normalized()


def trilinear_defect(sys: GreenSystem, n_vectors: int = 5, rng=None) -> float:
    """Worst residual of the three double-commutator relations.

    Checks, over all (k, l, m) triples and random vectors,
        [b_k, [b_l^dag, b_m]]      = 2 delta_kl b_m
        [b_k, [b_l^dag, b_m^dag]]  = 2 delta_kl b_m^dag - 2 delta_km b_l^dag
        [b_k, [b_l, b_m]]          = 0.
    These hold exactly at every finite order, so the result is rounding noise.
    """
    if rng is None:
        rng = np.random.default_rng(0x5EED)
    dim = 1 << sys.total_sites
    ann = {k: parafermi_op(sys, k) for k in range(1, sys.nu + 1)}
    cre = {k: ann[k].adjoint() for k in ann}
    worst = 0.0
    vectors = [random_state(dim, rng) for _ in range(n_vectors)]

    def double_comm(outer, left, right, xi):
        # [outer, [left, right]] xi without forming any product operator
        inner = commutator_apply(left, right, xi)
        return outer.apply(inner) - commutator_apply(left, right, outer.apply(xi))

    for k, l, m in product(range(1, sys.nu + 1), repeat=3):
        for xi in vectors:
            lhs = double_comm(ann[k], cre[l], ann[m], xi)
            rhs = (2.0 if k == l else 0.0) * ann[m].apply(xi)
            worst = max(worst, (lhs - rhs).norm())

            lhs = double_comm(ann[k], cre[l], cre[m], xi)
            rhs_vec = np.zeros(dim, dtype=np.complex128)
            if k == l:
                rhs_vec += 2.0 * cre[m].apply(xi).components
            if k == m:
                rhs_vec -= 2.0 * cre[l].apply(xi).components
            worst = max(worst, (lhs - StateVector(dim, rhs_vec)).norm())

            lhs = double_comm(ann[k], ann[l], ann[m], xi)
            worst = max(worst, lhs.norm())
    return worst


@dataclass(frozen=True)
class NormalizedCcrReport:
    """Defects of the normalized-mode commutators on one vector.

    cross_defect / cross_dagger_defect: ||[beta_k, beta_l] xi|| and
    ||[beta_k, beta_l^dag] xi||; only defined for k != l, None otherwise.
    unit_defect: ||([beta_k, beta_k^dag] - 1) xi||, with its exact value
    (2/p) ||N_k xi|| and the a-priori bound (2/p) sqrt(<xi|N^2|xi>).
    ladder_defect: ||(beta_k beta_k^dag^n - beta_k^dag^n beta_k
                      - n beta_k^dag^{n-1}) xi||.
    """

    cross_defect: float | None
    cross_dagger_defect: float | None
    unit_defect: float
    unit_defect_exact: float
    unit_defect_bound: float
    ladder_defect: float
    ladder_order: int


def normalized_ccr_checks(
    sys: GreenSystem, k: int, l: int, xi: StateVector, ladder_order: int = 1
) -> NormalizedCcrReport:
    beta_k = normalized_op(sys, k)
    beta_k_dag = beta_k.adjoint()
    if k == l:
        cross = cross_dag = None
    else:
        beta_l = normalized_op(sys, l)
        cross = commutator_apply(beta_k, beta_l, xi).norm()
        cross_dag = commutator_apply(beta_k, beta_l.adjoint(), xi).norm()

    unit = (commutator_apply(beta_k, beta_k_dag, xi) - xi).norm()
    every, per_mode, _ = number_ops(sys)
    unit_exact = (2.0 / sys.p) * per_mode[k - 1].apply(xi).norm()
    unit_bound = (2.0 / sys.p) * every.apply(xi).norm()  # (2/p) sqrt(<xi|N^2|xi>)

    n = ladder_order
    if n < 1:
        raise ValueError("ladder_order must be >= 1")
    lhs = xi
    for _ in range(n):
        lhs = beta_k_dag.apply(lhs)
    lhs = beta_k.apply(lhs)  # beta beta^dag^n xi
    term1 = beta_k.apply(xi)
    for _ in range(n):
        term1 = beta_k_dag.apply(term1)  # beta^dag^n beta xi
    term2 = xi
    for _ in range(n - 1):
        term2 = beta_k_dag.apply(term2)  # beta^dag^{n-1} xi
    ladder = (lhs - term1 - float(n) * term2).norm()

    return NormalizedCcrReport(
        cross, cross_dag, unit, unit_exact, unit_bound, ladder, n
    )


@dataclass(frozen=True)
class FockLadderReport:
    """How close the normalized modes come to bose ladder action on one label.

    norm_error: | ||beta^dag powers on vacuum|| - sqrt(prod n_k!) |.
    number_defect[k]: ||beta_k^dag beta_k xi - n_k xi||.
    inverse_defect[k]: ||beta_k beta_k^dag xi - (n_k + 1) xi||.
    raise_defect[k]: ||beta_k^dag xi - sqrt(n_k + 1) xi_{+k}||.
    lower_defect[k]: ||beta_k xi - sqrt(n_k) xi_{-k}||.
    """

    label: tuple
    norm_error: float
    number_defect: tuple
    inverse_defect: tuple
    raise_defect: tuple
    lower_defect: tuple


def _unnormalized_beta_power_vacuum(sys: GreenSystem, occ) -> StateVector:
    vec = sys.vacuum
    for k in range(len(occ), 0, -1):
        creator = normalized_op(sys, k).adjoint()
        for _ in range(occ[k - 1]):
            vec = creator.apply(vec)
    return vec


def fock_ladder_checks(
    sys: GreenSystem, label, excitation_cap: int = DEFAULT_EXCITATION_CAP
) -> FockLadderReport:
    if not isinstance(label, FockLabel):
        label = FockLabel(tuple(label))
    occ = label.occupations
    raw = _unnormalized_beta_power_vacuum(sys, occ)
    target = math.sqrt(float(np.prod([math.factorial(n) for n in occ])))
    norm_error = abs(raw.norm() - target)

    xi = fock_state(sys, label, excitation_cap)
    number_def, inverse_def, raise_def, lower_def = [], [], [], []
    for k in range(1, len(occ) + 1):
        n_k = occ[k - 1]
        beta = normalized_op(sys, k)
        beta_dag = beta.adjoint()
        number_def.append((beta_dag.apply(beta.apply(xi)) - float(n_k) * xi).norm())
        inverse_def.append((beta.apply(beta_dag.apply(xi)) - float(n_k + 1) * xi).norm())

        up = list(occ)
        up[k - 1] += 1
        try:
            up_state = fock_state(sys, FockLabel(tuple(up)), excitation_cap + 1)
            raise_def.append(
                (beta_dag.apply(xi) - np.sqrt(n_k + 1.0) * up_state).norm()
            )
        except ModeExclusionError:
            # raising past the order: the target state vanishes, so compare to 0
            raise_def.append(beta_dag.apply(xi).norm())
        if n_k == 0:
            lower_def.append(beta.apply(xi).norm())
        else:
            down = list(occ)
            down[k - 1] -= 1
            down_state = fock_state(sys, FockLabel(tuple(down)), excitation_cap)
            lower_def.append((beta.apply(xi) - np.sqrt(float(n_k)) * down_state).norm())
    return FockLadderReport(
        occ, norm_error, tuple(number_def), tuple(inverse_def), tuple(raise_def), tuple(lower_def)
    )


def vacuum_uniqueness_test(sys: GreenSystem, xi: StateVector):
    """(max_k ||beta_k xi||, |<xi|vacuum>|) for a unit vector xi.

    If every annihilation defect is small the overlap must be close to 1;
    thresholds are reported by the sweep harness, not asserted here.
    """
    if abs(xi.norm() - 1.0) > 1e-10:
        raise ValueError("xi must be normalized")
    worst = max(
        normalized_op(sys, k).apply(xi).norm() for k in range(1, sys.nu + 1)
    )
    return worst, abs(xi.inner(sys.vacuum))


def fock_span_basis(sys: GreenSystem, cap: int) -> np.ndarray:
    """Orthonormal basis (columns) of the span of all creation monomials.

    Enumerates every ordering of up to `cap` creation operators applied to
    the vacuum and orthonormalizes; this span, not just the span of the
    sorted-order states, is exactly invariant under each b_k.
    """
    dim = 1 << sys.total_sites
    creators = [parafermi_op(sys, k).adjoint() for k in range(1, sys.nu + 1)]
    vectors = [sys.vacuum.components]
    frontier = [sys.vacuum]
    for _ in range(cap):
        new_frontier = []
        for vec in frontier:
            for cre in creators:
                out = cre.apply(vec)
                if out.norm() > 1e-12:
                    new_frontier.append(out)
                    vectors.append(out.components)
        frontier = new_frontier
    stack = np.stack(vectors, axis=1)
    u, s, _ = np.linalg.svd(stack, full_matrices=False)
    rank = int(np.sum(s > 1e-10 * s[0]))
    return u[:, :rank]


def joint_annihilator_kernel(sys: GreenSystem) -> np.ndarray:
    """Orthonormal basis (columns) of the common kernel of all b_k.

    Dense SVD underneath, so this is restricted to small registers.  The
    kernel of the full register is generally larger than the vacuum line;
    uniqueness of the vacuum holds within the creation-monomial span.
    """
    require_sites(sys.total_sites, 12)
    stacked = np.vstack(
        [parafermi_op(sys, k).dense() for k in range(1, sys.nu + 1)]
    )
    _, s, vh = np.linalg.svd(stacked)
    tol = 1e-10 * max(float(s[0]), 1.0)
    return vh.conj().T[:, s < tol]
