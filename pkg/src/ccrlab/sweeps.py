"""Sweep runner: executes the module test batteries over parameter grids and
emits machine-readable defect tables plus a human-readable report.

Records carry (experiment, parameter tuple, defect name, measured, bound,
pass).  A bound marks an identity that must hold at every finite size; a
record without a bound is convergence data, summarized in the report by a
fitted log-log slope against the dimension parameter.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np

from . import clifford, parafermi, spin, weyl
from .linalg import anticommutator_apply, commutator_apply, random_state

EXPERIMENTS = ("weyl", "spin", "clifford", "parafermi")

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

CSV_HEADER = "experiment,params,defect,measured,bound,pass"


class UsageError(ValueError):
    """Bad configuration: unknown experiment, empty grid, bad value."""


@dataclass(frozen=True)
class SweepConfig:
    """Grids and tolerances for one run; the seed pins every random draw."""

    experiment: str = "all"
    nu_list: tuple = (64, 256, 1024, 4096)
    mu_rule: str = "sqrt"
    p_list: tuple = (10, 100, 1000)
    mode_list: tuple = (1, 2)
    k_list: tuple = (0, 1, 2, 3)
    z_list: tuple = (1.0,)
    parafermi_orders: tuple = (1, 2, 3, 4, 8)
    clifford_nu_list: tuple = (1, 2, 3, 4, 5, 6)
    tol_exact: float = 1e-12
    tol_relation: float = 1e-10
    site_cap: int = 22
    seed: int = 0
    out: str | None = None
    fmt: str = "csv"

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS + ("all",):
            raise UsageError(f"unknown experiment {self.experiment!r}")
        if self.fmt not in ("csv", "json"):
            raise UsageError(f"unknown output format {self.fmt!r}")
        if self.mu_rule != "sqrt":
            raise UsageError(f"unknown mu rule {self.mu_rule!r}")
        grids = {
            "nu_list": self.nu_list,
            "p_list": self.p_list,
            "mode_list": self.mode_list,
            "k_list": self.k_list,
            "z_list": self.z_list,
            "parafermi_orders": self.parafermi_orders,
            "clifford_nu_list": self.clifford_nu_list,
        }
        for name, grid in grids.items():
            if len(grid) == 0:
                raise UsageError(f"{name} must not be empty")
        if any(n < 1 for n in self.nu_list + self.p_list + self.mode_list):
            raise UsageError("dimension parameters must be positive")
        if any(k < 0 for k in self.k_list):
            raise UsageError("k values must be nonnegative")
        if self.tol_exact <= 0 or self.tol_relation <= 0:
            raise UsageError("tolerances must be positive")


@dataclass(frozen=True)
class DefectRecord:
    experiment: str
    params: dict
    defect: str
    measured: float
    bound: float | None
    passed: bool
    skip_reason: str | None = None

    def params_key(self) -> str:
        return ";".join(f"{k}={_fmt_number(v)}" for k, v in sorted(self.params.items()))

    def sort_key(self):
        return (self.experiment, self.defect, sorted(self.params.items()))


def _fmt_number(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))  # shortest round-trip decimal for doubles


def _record(experiment, params, defect, measured, bound=None):
    measured = float(measured)
    passed = True if bound is None else bool(measured <= bound)
    return DefectRecord(experiment, dict(params), defect, measured, bound, passed)


def _skip(experiment, params, defect, reason):
    return DefectRecord(experiment, dict(params), defect, math.nan, None, True, reason)


# ---------------------------------------------------------------------------
# per-experiment batteries


def _weyl_records(cfg: SweepConfig, rng) -> list:
    records = []
    for nu in sorted(set(cfg.nu_list)):
        pair = weyl.make_canonical_pair(nu)
        mu = weyl.default_window(nu)
        base = {"nu": nu}

        worst = 0.0
        omega = np.exp(2j * np.pi / nu)
        for _ in range(3):
            xi = random_state(nu, rng)
            lhs = pair.U.apply(pair.V.apply(xi))
            rhs = omega * pair.V.apply(pair.U.apply(xi))
            worst = max(worst, (lhs - rhs).norm())
        records.append(_record("weyl", base, "weyl-relation", worst, cfg.tol_exact))

        xi = random_state(nu, rng)
        period = max(
            (pair.power_op(k=nu).apply(xi) - xi).norm(),
            (pair.power_op(l=nu).apply(xi) - xi).norm(),
        )
        records.append(_record("weyl", base, "clock-shift-period", period, cfg.tol_exact))

        for m, n in ((1, 1), (2, 3)):
            xi = random_state(nu, rng)
            res = weyl.commutator_factorization_residual(pair, m, n, xi)
            records.append(
                _record(
                    "weyl", {**base, "m": m, "n": n},
                    "commutator-factorization", res, cfg.tol_exact,
                )
            )

        for l in range(3):
            if (l + 1) * mu > nu:
                continue
            params = {**base, "mu": mu, "l": l}
            window = weyl.plateau_vector(pair, l, mu)
            shift_defect = (pair.V.apply(window) - window).norm()
            records.append(
                _record(
                    "weyl", params, "plateau-shift-exact",
                    abs(shift_defect - math.sqrt(2.0 / mu)), cfg.tol_exact,
                )
            )
            clock_defect = (pair.U.apply(window) - window).norm()
            records.append(
                _record(
                    "weyl", params, "plateau-clock-bound",
                    clock_defect, 2.0 * math.pi * (l + 1) * mu / nu,
                )
            )
            defects = weyl.ccr_defect(pair, 1, 1, window)
            records.append(_record("weyl", params, "group-ccr-defect", defects.group))
            if l == 0:
                records.append(
                    _record("weyl", params, "quadrature-ccr-defect", defects.quadrature)
                )

        if nu <= 64:
            worst = 0.0
            for _ in range(100):
                g = weyl.HeisenbergElement(*(int(v) for v in rng.integers(0, nu, 3)), nu)
                h = weyl.HeisenbergElement(*(int(v) for v in rng.integers(0, nu, 3)), nu)
                xi = random_state(nu, rng)
                lhs = weyl.heisenberg_rep(pair, g).apply(weyl.heisenberg_rep(pair, h).apply(xi))
                rhs = weyl.heisenberg_rep(pair, weyl.heisenberg_mul(g, h)).apply(xi)
                worst = max(worst, (lhs - rhs).norm())
            records.append(
                _record("weyl", base, "heisenberg-homomorphism", worst, cfg.tol_exact)
            )
    return records


def _spin_records(cfg: SweepConfig, rng) -> list:
    records = []
    for p in sorted(set(cfg.p_list)):
        rep = spin.make_spin_rep(p)
        base = {"p": p}

        worst = 0.0
        ops = (rep.J1, rep.J2, rep.J3)
        for (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            xi = random_state(p + 1, rng)
            res = commutator_apply(ops[a], ops[b], xi) - 1j * ops[c].apply(xi)
            worst = max(worst, res.norm())
        records.append(_record("spin", base, "so3-closure", worst, cfg.tol_relation))

        for k in sorted(set(cfg.k_list)):
            if k > p:
                continue
            measured = spin.weight_state_ccr_defect(rep, k)
            params = {**base, "k": k}
            records.append(
                _record(
                    "spin", params, "ccr-weight-exactness",
                    abs(measured - k / rep.j), cfg.tol_exact,
                )
            )
            records.append(_record("spin", params, "ccr-weight-defect", measured))

        if p <= 200:
            worst = max(
                spin.covariance_defect(rep, theta, n_vectors=4, rng=rng)
                for theta in np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False)
            )
            records.append(
                _record("spin", base, "rotation-covariance", worst, cfg.tol_relation)
            )

        for z in cfg.z_list:
            kmax = min(max(cfg.k_list), p)
            errors = spin.coherent_limit_error(rep, z, kmax)
            for k, err in enumerate(errors):
                records.append(
                    _record(
                        "spin", {**base, "z": float(z), "k": k},
                        "coherent-overlap-error", err,
                    )
                )
    return records


def _clifford_records(cfg: SweepConfig, rng) -> list:
    records = []
    for nu in sorted(set(cfg.clifford_nu_list)):
        base = {"nu": nu}
        if nu > cfg.site_cap:
            records.append(
                _skip("clifford", base, "gamma-anticommutation",
                      f"register of {nu} sites exceeds cap {cfg.site_cap}")
            )
            continue
        family = clifford.make_gammas(nu)
        dim = 1 << nu
        n_gen = 2 * nu + 1

        worst_sq = 0.0
        worst_anti = 0.0
        vectors = [random_state(dim, rng) for _ in range(2)]
        for i in range(n_gen):
            gi = family.gammas[i]
            for xi in vectors:
                worst_sq = max(worst_sq, (gi.apply(gi.apply(xi)) - xi).norm())
            for j in range(i + 1, n_gen):
                gj = family.gammas[j]
                for xi in vectors:
                    worst_anti = max(
                        worst_anti, anticommutator_apply(gi, gj, xi).norm()
                    )
        records.append(_record("clifford", base, "gamma-square", worst_sq, cfg.tol_exact))
        records.append(
            _record("clifford", base, "gamma-anticommutation", worst_anti, cfg.tol_exact)
        )

        basis = clifford.so_n_basis(family)
        keys = sorted(basis)
        worst_bracket = 0.0
        n_samples = min(20, len(keys) * (len(keys) - 1) // 2 or 1)
        for _ in range(n_samples):
            (i, j) = keys[rng.integers(0, len(keys))]
            (k, l) = keys[rng.integers(0, len(keys))]
            xi = random_state(dim, rng)
            lhs = commutator_apply(basis[(i, j)], basis[(k, l)], xi)
            acc = np.zeros(dim, dtype=np.complex128)
            for a, b, coeff in clifford.bracket_expansion(i, j, k, l):
                acc += coeff * basis[(a, b)].apply(xi).components
            worst_bracket = max(worst_bracket, np.linalg.norm(lhs.components - acc))
        records.append(
            _record("clifford", base, "so-bracket-closure", worst_bracket, cfg.tol_relation)
        )
    return records


def _parafermi_records(cfg: SweepConfig, rng) -> list:
    records = []
    grid = sorted(
        {(p, nu) for p in cfg.parafermi_orders for nu in cfg.mode_list}
    )
    for p, nu in grid:
        base = {"p": p, "modes": nu}
        if p * nu > cfg.site_cap:
            records.append(
                _skip("parafermi", base, "green-relations",
                      f"register of {p * nu} sites exceeds cap {cfg.site_cap}")
            )
            continue
        sys = parafermi.make_green_system(p, nu, site_cap=cfg.site_cap)
        dim = 1 << sys.total_sites

        worst = 0.0
        vectors = [random_state(dim, rng) for _ in range(2)]
        comps = sys.components
        for (k, a) in comps:
            for (l, b) in comps:
                ck, cl = comps[(k, a)], comps[(l, b)]
                for xi in vectors:
                    if a == b:
                        res = anticommutator_apply(ck, cl.adjoint(), xi)
                        target = xi if k == l else 0.0 * xi
                        worst = max(worst, (res - target).norm())
                        worst = max(worst, anticommutator_apply(ck, cl, xi).norm())
                    else:
                        worst = max(worst, commutator_apply(ck, cl.adjoint(), xi).norm())
                        worst = max(worst, commutator_apply(ck, cl, xi).norm())
        records.append(_record("parafermi", base, "green-relations", worst, cfg.tol_relation))

        records.append(
            _record(
                "parafermi", base, "trilinear-relations",
                parafermi.trilinear_defect(sys, n_vectors=2, rng=rng), cfg.tol_relation,
            )
        )

        worst = 0.0
        for k in range(1, nu + 1):
            for l in range(1, nu + 1):
                b_k = parafermi.parafermi_op(sys, k)
                b_l_dag = parafermi.parafermi_op(sys, l).adjoint()
                out = b_k.apply(b_l_dag.apply(sys.vacuum))
                target = (float(p) if k == l else 0.0) * sys.vacuum
                worst = max(worst, (out - target).norm())
        records.append(_record("parafermi", base, "vacuum-condition", worst, cfg.tol_relation))

        every, per_mode, _ = parafermi.number_ops(sys)
        worst = 0.0
        for k in range(1, nu + 1):
            b_k = parafermi.parafermi_op(sys, k)
            for xi in vectors:
                comm = commutator_apply(b_k.adjoint(), b_k, xi)
                lhs = 0.5 * (comm + float(p) * xi)
                worst = max(worst, (lhs - per_mode[k - 1].apply(xi)).norm())
        records.append(_record("parafermi", base, "number-identity", worst, cfg.tol_relation))

        if nu >= 2:
            xi = parafermi.fock_state(sys, (1, 1) + (0,) * (nu - 2))
            checks = parafermi.normalized_ccr_checks(sys, 1, 2, xi)
            records.append(
                _record(
                    "parafermi", {**base, "label": "1+1"},
                    "normalized-unit-exactness",
                    abs(checks.unit_defect - 2.0 / p), cfg.tol_exact,
                )
            )
            records.append(
                _record(
                    "parafermi", {**base, "label": "1+1"},
                    "normalized-unit-defect", checks.unit_defect,
                )
            )
        if p >= 2:
            ladder = parafermi.fock_ladder_checks(sys, (2,) + (0,) * (nu - 1))
            records.append(
                _record(
                    "parafermi", {**base, "label": "2"},
                    "fock-norm-error", ladder.norm_error,
                )
            )
    return records


_BATTERIES = {
    "weyl": _weyl_records,
    "spin": _spin_records,
    "clifford": _clifford_records,
    "parafermi": _parafermi_records,
}


def run_sweep(cfg: SweepConfig):
    """Execute the configured batteries; returns (records, exit_code)."""
    cfg.validate()
    names = EXPERIMENTS if cfg.experiment == "all" else (cfg.experiment,)
    rng = np.random.default_rng(cfg.seed)
    records = []
    for name in names:
        records.extend(_BATTERIES[name](cfg, rng))
    records.sort(key=DefectRecord.sort_key)
    status = EXIT_OK
    if any(r.skip_reason for r in records):
        status = EXIT_RESOURCE
    if any(r.bound is not None and not r.passed for r in records):
        status = EXIT_IDENTITY_FAILURE
    return records, status


# ---------------------------------------------------------------------------
# serialization


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        measured = "nan" if math.isnan(r.measured) else _fmt_number(r.measured)
        bound = "" if r.bound is None else _fmt_number(r.bound)
        if r.skip_reason:
            passed = "skip:" + r.skip_reason.replace(",", ";")
        else:
            passed = "true" if r.passed else "false"
        lines.append(
            f"{r.experiment},{r.params_key()},{r.defect},{measured},{bound},{passed}"
        )
    return "\n".join(lines) + "\n"


def records_to_json(records) -> str:
    payload = []
    for r in records:
        payload.append(
            {
                "experiment": r.experiment,
                "params": r.params_key(),
                "defect": r.defect,
                "measured": None if math.isnan(r.measured) else r.measured,
                "bound": r.bound,
                "pass": (("skip:" + r.skip_reason) if r.skip_reason else r.passed),
            }
        )
    return json.dumps(payload, indent=2) + "\n"


def _parse_params(text: str) -> dict:
    params = {}
    if not text:
        return params
    for item in text.split(";"):
        key, value = item.split("=", 1)
        try:
            params[key] = int(value)
        except ValueError:
            params[key] = float(value) if _is_float(value) else value
    return params


def _is_float(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def parse_records_csv(text: str) -> list:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise UsageError("not a defect-record CSV (bad header)")
    records = []
    for line in lines[1:]:
        experiment, params, defect, measured, bound, passed = line.split(",", 5)
        skip_reason = None
        if passed.startswith("skip:"):
            skip_reason = passed[5:]
            ok = True
        else:
            ok = passed == "true"
        records.append(
            DefectRecord(
                experiment,
                _parse_params(params),
                defect,
                float(measured),
                None if bound == "" else float(bound),
                ok,
                skip_reason,
            )
        )
    return records


def parse_records_json(text: str) -> list:
    records = []
    for item in json.loads(text):
        passed = item["pass"]
        skip_reason = None
        if isinstance(passed, str) and passed.startswith("skip:"):
            skip_reason = passed[5:]
            ok = True
        else:
            ok = bool(passed)
        measured = item["measured"]
        records.append(
            DefectRecord(
                item["experiment"],
                _parse_params(item["params"]),
                item["defect"],
                math.nan if measured is None else float(measured),
                item["bound"],
                ok,
                skip_reason,
            )
        )
    return records


# ---------------------------------------------------------------------------
# reporting

_CONVENTION_NOTES = (
    "note: rotation covariance is asserted as e^{-i t J3} Q e^{+i t J3} = "
    "Q cos t + P sin t, the ordering consistent with [J3, J1] = i J2; the "
    "opposite exponent order corresponds to flipping the sign of J3 or t.",
    "note: low-excitation coherent amplitudes are compared against "
    "e^{-|z|^2/2} z^k / sqrt(k!); the variant with 1/k! does not normalize "
    "and is treated as a transcription slip.",
)

_DIM_PARAM = ("p", "nu", "modes")
_SLOPE_FLOOR = 1e-13  # values at the rounding floor carry no rate information


def _slope(points) -> float | None:
    """Least-squares slope of log(measured) against log(dimension parameter)."""
    pts = [(x, y) for x, y in points if x > 0 and y > 0]
    if len({x for x, _ in pts}) < 2:
        return None
    xs = np.log([x for x, _ in pts])
    ys = np.log([y for _, y in pts])
    return float(np.polyfit(xs, ys, 1)[0])


def _series_slopes(rows) -> list:
    """One slope per series: records sharing every non-dimension parameter.

    The window size mu is derived from nu by the sweep rule, so it does not
    split series.
    """
    groups: dict = {}
    for r in rows:
        dim_key = next((key for key in _DIM_PARAM if key in r.params), None)
        if dim_key is None:
            continue
        frozen = tuple(
            sorted((k, v) for k, v in r.params.items() if k not in (dim_key, "mu"))
        )
        groups.setdefault(frozen, []).append((float(r.params[dim_key]), r.measured))
    slopes = []
    for pts in groups.values():
        if any(y <= _SLOPE_FLOOR for _, y in pts):
            continue
        s = _slope(pts)
        if s is not None:
            slopes.append(s)
    return slopes


def report(records) -> str:
    """Group records by experiment: worst defect per name, plus fitted slopes."""
    if not records:
        raise UsageError("no records to report")
    out = io.StringIO()
    by_exp = {}
    for r in records:
        by_exp.setdefault(r.experiment, []).append(r)
    for experiment in sorted(by_exp):
        out.write(f"== {experiment}\n")
        group = {}
        for r in by_exp[experiment]:
            group.setdefault(r.defect, []).append(r)
        for defect in sorted(group):
            rows = group[defect]
            skipped = [r for r in rows if r.skip_reason]
            live = [r for r in rows if not r.skip_reason]
            if live:
                worst = max(live, key=lambda r: r.measured)
                status = "pass" if all(r.passed for r in live) else "FAIL"
                line = (
                    f"  {defect}: worst {worst.measured:.6e} at {worst.params_key()}"
                    f" [{status}"
                )
                if worst.bound is not None:
                    line += f", bound {worst.bound:.3e}"
                line += "]"
                unbounded = [r for r in live if r.bound is None]
                if unbounded:
                    slopes = _series_slopes(unbounded)
                    if slopes:
                        line += f" slope {float(np.mean(slopes)):+.2f}"
                        if len(slopes) > 1:
                            line += f" ({len(slopes)} series)"
                    else:
                        line += " slope n/a"
                out.write(line + "\n")
            for r in skipped:
                out.write(f"  {defect}: skipped at {r.params_key()} ({r.skip_reason})\n")
        out.write("\n")
    if "spin" in by_exp:
        for note in _CONVENTION_NOTES:
            out.write(note + "\n")
    return out.getvalue()
