"""Shared linear-algebra substrate: state vectors, operator realizations, norms.

Conventions fixed once, used by every module built on top of this one:

* Multi-site spaces have dimension 2**M.  Basis index n encodes site k
  (1-based) in bit k-1, little endian, so site 1 is the fastest-varying bit.
* On a single site, component 0 is the sigma3 = +1 state.  The occupation
  projector (1 + sigma3)/2 counts sites whose bit is 0, so the fully
  unoccupied product state is the basis vector with every bit set.
* Dense matrices are only materialized below DENSIFICATION_CAP; larger
  operators stay matrix free.

Norms follow the normalized-trace scale: tau(A) = (1/dim) sum_i A_ii,
hs_norm(A) = sqrt(tau(A^dag A)), operator_norm(A) = largest singular value.
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass

import numpy as np

DENSIFICATION_CAP = 4096
DEFAULT_SITE_CAP = 22

POWER_TOL = 1e-10
POWER_MAX_ITER = 10000
POWER_SEED = 0x5EED

PAULI_LABELS = ("X", "Y", "Z", "+", "-", "N")

# single-site matrices in the (sigma3=+1, sigma3=-1) component order
SINGLE_SITE = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "+": np.array([[0, 1], [0, 0]], dtype=np.complex128),
    "-": np.array([[0, 0], [1, 0]], dtype=np.complex128),
    "N": np.array([[1, 0], [0, 0]], dtype=np.complex128),
}

_ADJOINT_LABEL = {"X": "X", "Y": "Y", "Z": "Z", "+": "-", "-": "+", "N": "N"}


class DimensionMismatchError(ValueError):
    """Operator and vector (or two operators) live on different dimensions."""


class ConvergenceError(RuntimeError):
    """An iterative estimate did not reach the requested tolerance."""


class ResourceLimitError(RuntimeError):
    """A requested construction exceeds the configured memory budget."""


def require_sites(total_sites: int, site_cap: int = DEFAULT_SITE_CAP) -> None:
    """Refuse constructions whose state vectors would not fit the budget."""
    if total_sites > site_cap:
        need = 16 * (1 << total_sites)
        raise ResourceLimitError(
            f"{total_sites} sites need {need} bytes per state vector "
            f"(cap {site_cap} sites, {16 * (1 << site_cap)} bytes)"
        )


@functools.lru_cache(maxsize=8)
def _indices(dim: int) -> np.ndarray:
    idx = np.arange(dim, dtype=np.int64)
    idx.flags.writeable = False
    return idx


class _Scratch:
    """Reusable work buffers for one dimension; fresh page-backed allocations
    are far more expensive here than the arithmetic they hold."""

    __slots__ = ("idx", "bits", "sign", "work", "gather", "keep")

    def __init__(self, dim: int):
        self.idx = np.empty(dim, dtype=np.int64)
        self.bits = np.empty(dim, dtype=np.uint8)
        self.sign = np.empty(dim, dtype=np.float64)
        self.work = np.empty(dim, dtype=np.complex128)
        self.gather = np.empty(dim, dtype=np.complex128)
        self.keep = np.empty(dim, dtype=bool)


_THREAD_BUFFERS = threading.local()


def _scratch_for(dim: int) -> _Scratch:
    pools = getattr(_THREAD_BUFFERS, "pools", None)
    if pools is None:
        pools = {}
        _THREAD_BUFFERS.pools = pools
    scratch = pools.get(dim)
    if scratch is None:
        scratch = _Scratch(dim)
        pools[dim] = scratch
    return scratch


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class StateVector:
    """Complex vector with its Hilbert-space dimension carried explicitly."""

    dim: int
    components: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=np.complex128)
        if comps.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} components, got shape {comps.shape}")
        if not np.all(np.isfinite(comps.view(np.float64))):
            raise ValueError("components must be finite")
        object.__setattr__(self, "components", _freeze(comps))

    @classmethod
    def from_array(cls, comps) -> "StateVector":
        comps = np.asarray(comps, dtype=np.complex128)
        return cls(comps.shape[0], comps)

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        if not 0 <= index < dim:
            raise ValueError(f"basis index {index} out of range for dim {dim}")
        comps = np.zeros(dim, dtype=np.complex128)
        comps[index] = 1.0
        return cls(dim, comps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def inner(self, other: "StateVector") -> complex:
        """<self|other> with the left argument conjugated."""
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dims {self.dim} != {other.dim}")
        return complex(np.vdot(self.components, other.components))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.dim, self.components / n)

    def tensor(self, other: "StateVector") -> "StateVector":
        """Product state; self occupies the slow bits, other the fast bits."""
        return StateVector(self.dim * other.dim, np.kron(self.components, other.components))

    def __add__(self, other: "StateVector") -> "StateVector":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dims {self.dim} != {other.dim}")
        return StateVector(self.dim, self.components + other.components)

    def __sub__(self, other: "StateVector") -> "StateVector":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dims {self.dim} != {other.dim}")
        return StateVector(self.dim, self.components - other.components)

    def __rmul__(self, scalar) -> "StateVector":
        return StateVector(self.dim, scalar * self.components)

    def __neg__(self) -> "StateVector":
        return StateVector(self.dim, -self.components)


def random_state(dim: int, rng: np.random.Generator, normalize: bool = True) -> StateVector:
    comps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    if normalize:
        comps /= np.linalg.norm(comps)
    return StateVector(dim, comps)


class LinearOperator:
    """Base class; concrete realizations implement _apply_array and adjoint."""

    dim: int

    def apply(self, xi: StateVector) -> StateVector:
        if xi.dim != self.dim:
            raise DimensionMismatchError(f"operator dim {self.dim}, vector dim {xi.dim}")
        return StateVector(self.dim, self._apply_array(xi.components))

    def _apply_array(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def adjoint(self) -> "LinearOperator":
        raise NotImplementedError

    def dense(self, cap: int = DENSIFICATION_CAP) -> np.ndarray:
        if self.dim > cap:
            raise ValueError(f"dim {self.dim} exceeds densification cap {cap}")
        return self._dense()

    def _dense(self) -> np.ndarray:
        raise NotImplementedError

    def normalized_trace(self) -> complex:
        raise NotImplementedError

    def hs_norm(self) -> float:
        # generic fallback through the dense form; realizations with an
        # analytic expression override this
        mat = self.dense()
        return float(np.linalg.norm(mat) / np.sqrt(self.dim))


class DenseOperator(LinearOperator):
    def __init__(self, matrix):
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
        self.matrix = _freeze(matrix)
        self.dim = matrix.shape[0]

    def _apply_array(self, x):
        return self.matrix @ x

    def adjoint(self):
        return DenseOperator(self.matrix.conj().T)

    def _dense(self):
        return self.matrix.copy()

    def normalized_trace(self):
        return complex(np.trace(self.matrix) / self.dim)

    def hs_norm(self):
        return float(np.linalg.norm(self.matrix) / np.sqrt(self.dim))


class BandedOperator(LinearOperator):
    """Matrix with a few (possibly off-center) diagonals and no wraparound.

    A diagonal (offset, values) holds A[c + offset, c] = values[i] for the
    valid columns c, listed in increasing column order.
    """

    def __init__(self, dim: int, diags):
        self.dim = dim
        cleaned = []
        for offset, values in diags:
            offset = int(offset)
            values = np.asarray(values, dtype=np.complex128)
            if abs(offset) >= dim:
                raise ValueError(f"offset {offset} out of range for dim {dim}")
            if values.shape != (dim - abs(offset),):
                raise ValueError(
                    f"diagonal at offset {offset} needs {dim - abs(offset)} values, "
                    f"got {values.shape}"
                )
            cleaned.append((offset, _freeze(values)))
        self.diags = tuple(sorted(cleaned, key=lambda d: d[0]))

    def _apply_array(self, x):
        out = np.zeros(self.dim, dtype=np.complex128)
        for offset, values in self.diags:
            if offset >= 0:
                out[offset:] += values * x[: self.dim - offset]
            else:
                out[: self.dim + offset] += values * x[-offset:]
        return out

    def adjoint(self):
        return BandedOperator(self.dim, [(-o, np.conj(v)) for o, v in self.diags])

    def _dense(self):
        mat = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for offset, values in self.diags:
            cols = np.arange(max(0, -offset), self.dim - max(0, offset))
            mat[cols + offset, cols] = values
        return mat

    def normalized_trace(self):
        for offset, values in self.diags:
            if offset == 0:
                return complex(values.sum() / self.dim)
        return 0j

    def hs_norm(self):
        total = sum(float(np.sum(np.abs(v) ** 2)) for _, v in self.diags)
        return float(np.sqrt(total / self.dim))


class PauliString:
    """A product of single-site factors on distinct sites, times a scalar.

    Site labels: X, Y, Z (Pauli), + and - (raising/lowering in the bit
    convention above), N (occupation projector).  Each factor moves one
    input basis state to at most one output basis state, so application
    is a masked gather costing O(2**M).
    """

    def __init__(self, coefficient, sites, n_sites: int):
        self.coefficient = complex(coefficient)
        self.n_sites = int(n_sites)
        sites = sorted((int(k), str(lab)) for k, lab in sites)
        seen = set()
        for k, lab in sites:
            if lab not in PAULI_LABELS:
                raise ValueError(f"unknown site label {lab!r}")
            if not 1 <= k <= self.n_sites:
                raise ValueError(f"site {k} outside 1..{self.n_sites}")
            if k in seen:
                raise ValueError(f"site {k} listed twice")
            seen.add(k)
        self.sites = tuple(sites)
        self.dim = 1 << self.n_sites

        flip = sign_mask = req_one = req_zero = 0
        n_y = 0
        for k, lab in self.sites:
            bit = 1 << (k - 1)
            if lab == "X":
                flip |= bit
            elif lab == "Y":
                flip |= bit
                sign_mask |= bit
                n_y += 1
            elif lab == "Z":
                sign_mask |= bit
            elif lab == "+":
                flip |= bit
                req_one |= bit
            elif lab == "-":
                flip |= bit
                req_zero |= bit
            elif lab == "N":
                req_zero |= bit
        self._flip = flip
        self._sign_mask = sign_mask
        self._req_one = req_one
        self._req_zero = req_zero
        # the Y factor i*(-1)^bit contributes a global i per Y site plus a
        # bit-parity sign folded into _sign_mask
        self._base = self.coefficient * (1j ** n_y)

    def apply_into(self, x: np.ndarray, acc: np.ndarray) -> None:
        """acc += (this string applied to x); x is left untouched.

        All intermediates live in per-thread scratch buffers: the arithmetic
        is a handful of vectorized passes, so buffer reuse, not flops, sets
        the speed.
        """
        n = _indices(self.dim)
        sc = _scratch_for(self.dim)
        work = sc.work
        np.multiply(x, self._base, out=work)
        if self._sign_mask:
            np.bitwise_and(n, self._sign_mask, out=sc.idx)
            np.bitwise_count(sc.idx, out=sc.bits)
            np.bitwise_and(sc.bits, 1, out=sc.bits)
            np.multiply(sc.bits, -2.0, out=sc.sign)
            np.add(sc.sign, 1.0, out=sc.sign)
            np.multiply(work, sc.sign, out=work)
        if self._req_one or self._req_zero:
            if self._req_one:
                np.bitwise_and(n, self._req_one, out=sc.idx)
                np.equal(sc.idx, self._req_one, out=sc.keep)
                if self._req_zero:
                    np.bitwise_and(n, self._req_zero, out=sc.idx)
                    np.equal(sc.idx, 0, out=sc.bits)
                    np.logical_and(sc.keep, sc.bits, out=sc.keep)
            else:
                np.bitwise_and(n, self._req_zero, out=sc.idx)
                np.equal(sc.idx, 0, out=sc.keep)
            np.multiply(work, sc.keep, out=work)
        if self._flip:
            # n ^ flip is an involution: acc[m] += work[m ^ flip] scatters
            # exactly like acc[n ^ flip] += work[n]
            np.bitwise_xor(n, self._flip, out=sc.idx)
            np.take(work, sc.idx, out=sc.gather)
            np.add(acc, sc.gather, out=acc)
        else:
            np.add(acc, work, out=acc)

    def apply_to(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.complex128)
        self.apply_into(x, out)
        return out

    def adjoint(self) -> "PauliString":
        return PauliString(
            np.conj(self.coefficient),
            [(k, _ADJOINT_LABEL[lab]) for k, lab in self.sites],
            self.n_sites,
        )

    def shifted(self, by: int, n_sites: int) -> "PauliString":
        """The same factors moved up by `by` sites on a larger space."""
        return PauliString(self.coefficient, [(k + by, lab) for k, lab in self.sites], n_sites)

    def dense_matrix(self) -> np.ndarray:
        """Kronecker-built dense form, independent of apply_to."""
        labels = dict(self.sites)
        out = np.array([[1.0 + 0j]])
        for k in range(self.n_sites, 0, -1):
            out = np.kron(out, SINGLE_SITE[labels.get(k, "I")])
        return self.coefficient * out

    def normalized_trace(self) -> complex:
        value = self.coefficient
        for _, lab in self.sites:
            site_trace = np.trace(SINGLE_SITE[lab]) / 2.0
            if site_trace == 0:
                return 0j
            value *= site_trace
        return complex(value)

    _MUL_TABLE = {
        ("X", "X"): (1.0, None), ("Y", "Y"): (1.0, None), ("Z", "Z"): (1.0, None),
        ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
        ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
        ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
    }

    def compose(self, other: "PauliString") -> "PauliString":
        """Product self * other for strings with X/Y/Z factors only."""
        if self.n_sites != other.n_sites:
            raise DimensionMismatchError("site counts differ")
        mine = dict(self.sites)
        theirs = dict(other.sites)
        for lab in list(mine.values()) + list(theirs.values()):
            if lab not in ("X", "Y", "Z"):
                raise NotImplementedError("compose only supports X/Y/Z factors")
        coeff = self.coefficient * other.coefficient
        sites = []
        for k in set(mine) | set(theirs):
            a, b = mine.get(k), theirs.get(k)
            if a is None:
                sites.append((k, b))
            elif b is None:
                sites.append((k, a))
            else:
                phase, lab = self._MUL_TABLE[(a, b)]
                coeff *= phase
                if lab is not None:
                    sites.append((k, lab))
        return PauliString(coeff, sites, self.n_sites)

    def __repr__(self):
        body = " ".join(f"{lab}{k}" for k, lab in self.sites) or "1"
        return f"PauliString(({self.coefficient:g}) * {body}, sites={self.n_sites})"


def _pair_site_trace(a: str, b: str) -> complex:
    return complex(np.trace(SINGLE_SITE[a].conj().T @ SINGLE_SITE[b]) / 2.0)


class PauliSumOperator(LinearOperator):
    """Sum of Pauli strings on a common 2**M space; applies term by term."""

    def __init__(self, strings, n_sites: int | None = None):
        strings = list(strings)
        if n_sites is None:
            if not strings:
                raise ValueError("empty sum needs an explicit n_sites")
            n_sites = strings[0].n_sites
        for s in strings:
            if s.n_sites != n_sites:
                raise DimensionMismatchError("strings live on different site counts")
        self.strings = tuple(strings)
        self.n_sites = n_sites
        self.dim = 1 << n_sites

    def _apply_array(self, x):
        out = np.zeros(self.dim, dtype=np.complex128)
        for s in self.strings:
            s.apply_into(x, out)
        return out

    def adjoint(self):
        return PauliSumOperator([s.adjoint() for s in self.strings], self.n_sites)

    def scaled(self, factor) -> "PauliSumOperator":
        return PauliSumOperator(
            [PauliString(factor * s.coefficient, s.sites, s.n_sites) for s in self.strings],
            self.n_sites,
        )

    def _dense(self):
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for s in self.strings:
            out += s.dense_matrix()
        return out

    def normalized_trace(self):
        return complex(sum(s.normalized_trace() for s in self.strings))

    def hs_norm(self):
        # tau(A^dag A) expands into pairwise normalized traces of string
        # products, each of which factorizes over sites
        total = 0j
        for s in self.strings:
            for t in self.strings:
                mine, theirs = dict(s.sites), dict(t.sites)
                term = np.conj(s.coefficient) * t.coefficient
                for k in set(mine) | set(theirs):
                    term *= _pair_site_trace(mine.get(k, "I"), theirs.get(k, "I"))
                    if term == 0:
                        break
                total += term
        return float(np.sqrt(max(total.real, 0.0)))


class PermutationPhaseOperator(LinearOperator):
    """Generalized permutation: (A x)[perm[i]] = phases[i] * x[i].

    Closed under composition and adjoints, which keeps powers and products
    of clock/shift style unitaries exact index arithmetic.
    """

    def __init__(self, dim: int, perm, phases):
        self.dim = dim
        perm = np.asarray(perm, dtype=np.int64)
        phases = np.asarray(phases, dtype=np.complex128)
        if perm.shape != (dim,) or phases.shape != (dim,):
            raise ValueError("perm and phases must both have length dim")
        self.perm = _freeze(perm)
        self.phases = _freeze(phases)

    @classmethod
    def identity(cls, dim: int) -> "PermutationPhaseOperator":
        return cls(dim, _indices(dim), np.ones(dim, dtype=np.complex128))

    @classmethod
    def diagonal(cls, phases) -> "PermutationPhaseOperator":
        phases = np.asarray(phases, dtype=np.complex128)
        return cls(phases.shape[0], _indices(phases.shape[0]), phases)

    def _apply_array(self, x):
        out = np.empty(self.dim, dtype=np.complex128)
        out[self.perm] = self.phases * x
        return out

    def adjoint(self):
        inv = np.empty(self.dim, dtype=np.int64)
        inv[self.perm] = _indices(self.dim)
        new_phases = np.empty(self.dim, dtype=np.complex128)
        new_phases[self.perm] = np.conj(self.phases)
        return PermutationPhaseOperator(self.dim, inv, new_phases)

    def compose(self, other: "PermutationPhaseOperator") -> "PermutationPhaseOperator":
        """self applied after other."""
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dims {self.dim} != {other.dim}")
        return PermutationPhaseOperator(
            self.dim, self.perm[other.perm], other.phases * self.phases[other.perm]
        )

    def _dense(self):
        mat = np.zeros((self.dim, self.dim), dtype=np.complex128)
        mat[self.perm, _indices(self.dim)] = self.phases
        return mat

    def normalized_trace(self):
        fixed = self.perm == _indices(self.dim)
        return complex(self.phases[fixed].sum() / self.dim)

    def hs_norm(self):
        return float(np.sqrt(np.sum(np.abs(self.phases) ** 2) / self.dim))


class LinCombOperator(LinearOperator):
    """Linear combination sum_i c_i A_i, applied term by term."""

    def __init__(self, terms):
        terms = [(complex(c), op) for c, op in terms]
        if not terms:
            raise ValueError("empty linear combination")
        dim = terms[0][1].dim
        for _, op in terms:
            if op.dim != dim:
                raise DimensionMismatchError("terms live on different dimensions")
        self.terms = tuple(terms)
        self.dim = dim

    def _apply_array(self, x):
        out = np.zeros(self.dim, dtype=np.complex128)
        for c, op in self.terms:
            out += c * op._apply_array(x)
        return out

    def adjoint(self):
        return LinCombOperator([(np.conj(c), op.adjoint()) for c, op in self.terms])

    def _dense(self):
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for c, op in self.terms:
            out += c * op._dense()
        return out

    def normalized_trace(self):
        return complex(sum(c * op.normalized_trace() for c, op in self.terms))


def identity(dim: int) -> BandedOperator:
    return BandedOperator(dim, [(0, np.ones(dim, dtype=np.complex128))])


def commutator_apply(a: LinearOperator, b: LinearOperator, xi: StateVector) -> StateVector:
    """(AB - BA) xi without forming the product operator."""
    if not (a.dim == b.dim == xi.dim):
        raise DimensionMismatchError(f"dims {a.dim}, {b.dim}, {xi.dim} differ")
    x = xi.components
    return StateVector(xi.dim, a._apply_array(b._apply_array(x)) - b._apply_array(a._apply_array(x)))


def anticommutator_apply(a: LinearOperator, b: LinearOperator, xi: StateVector) -> StateVector:
    """(AB + BA) xi without forming the product operator."""
    if not (a.dim == b.dim == xi.dim):
        raise DimensionMismatchError(f"dims {a.dim}, {b.dim}, {xi.dim} differ")
    x = xi.components
    return StateVector(xi.dim, a._apply_array(b._apply_array(x)) + b._apply_array(a._apply_array(x)))


def kron(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """Tensor product with a on the slow bits and b on the fast bits.

    Matches np.kron on dense matrices and StateVector.tensor on vectors.
    """
    if isinstance(a, DenseOperator) and isinstance(b, DenseOperator):
        return DenseOperator(np.kron(a.matrix, b.matrix))
    if isinstance(a, PauliSumOperator) and isinstance(b, PauliSumOperator):
        n_sites = a.n_sites + b.n_sites
        strings = []
        for sa in a.strings:
            shifted = sa.shifted(b.n_sites, n_sites)
            for sb in b.strings:
                strings.append(
                    PauliString(
                        shifted.coefficient * sb.coefficient,
                        list(shifted.sites) + list(sb.sites),
                        n_sites,
                    )
                )
        return PauliSumOperator(strings, n_sites)
    raise TypeError(
        f"kron needs two Dense or two PauliSum operators, got "
        f"{type(a).__name__} and {type(b).__name__}"
    )


def normalized_trace(a: LinearOperator) -> complex:
    return a.normalized_trace()


def hs_norm(a: LinearOperator) -> float:
    return a.hs_norm()


def operator_norm(
    a: LinearOperator,
    tol: float = POWER_TOL,
    max_iter: int = POWER_MAX_ITER,
    cap: int = DENSIFICATION_CAP,
) -> float:
    """Largest singular value: exact below the cap, power iteration above.

    The power iteration runs on A^dag A from a fixed-seed start vector and
    raises ConvergenceError instead of returning a stale estimate.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a.dim <= cap:
        return float(np.linalg.svd(a.dense(cap=cap), compute_uv=False)[0])
    adj = a.adjoint()
    rng = np.random.default_rng(POWER_SEED)
    x = rng.standard_normal(a.dim) + 1j * rng.standard_normal(a.dim)
    x /= np.linalg.norm(x)
    prev = None
    for _ in range(max_iter):
        y = adj._apply_array(a._apply_array(x))
        lam = float(np.linalg.norm(y))
        if lam == 0.0:
            return 0.0
        x = y / lam
        if prev is not None and abs(lam - prev) <= tol * lam:
            return float(np.sqrt(lam))
        prev = lam
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")
