"""Command-line driver: identity-verification suite, point evaluation,
figure-data emission, zero scans, and moment tables.

Subcommands: verify | eval | figure | zeros | moments.  Exit codes:
0 all checks pass, 1 a check failed, 2 usage/configuration error,
3 numerical non-convergence or a singular evaluation point.

File outputs (CSV with '#'-prefixed header lines, or JSON with values as
decimal strings) are byte-deterministic for a fixed configuration; wall time
goes to stderr only.
"""

from __future__ import annotations

import argparse
import dataclasses
import fnmatch
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from mpmath import mp

from .approx import (
    _axis_phase,
    approx_abs_zeta,
    approx_xi_I,
    approx_xi_R,
    approx_zeta_components,
    half_line_relation,
    predict_zeros,
    solve_delta,
    xi_slope_identity,
)
from .errors import (
    BoundaryError,
    ConfigError,
    DomainError,
    IntegrandFailureError,
    MaxIterationsError,
    NoSignChangeError,
    NonConvergentError,
    NotAZeroError,
    NotRecoverableError,
    PoleError,
    SingularPointError,
    UnknownFigureError,
    UnknownIdentityError,
    UnsupportedCoefficientError,
    XieqError,
    ZeroArgumentError,
)
from .integral_eq import classify_region, identity_ids, run_identity, xi_via_region
from .moments import cancellation_check, romik_sum, theta_line_identity, upsilon_moment
from .numerics import Interval, PrecisionContext, find_root
from .transfer import background_coeff, fold_functions, m_real_imag
from .zeta_core import phases, upsilon, xi

__all__ = [
    "RunConfig",
    "SuiteReport",
    "FIGURE_IDS",
    "cmd_eval",
    "cmd_figure",
    "cmd_moments",
    "cmd_verify",
    "cmd_zeros",
    "main",
]

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_USAGE_ERRORS = (
    ConfigError,
    UnknownIdentityError,
    UnknownFigureError,
    UnsupportedCoefficientError,
    DomainError,
    BoundaryError,
    ZeroArgumentError,
)
_NUMERICAL_ERRORS = (
    NonConvergentError,
    IntegrandFailureError,
    NoSignChangeError,
    MaxIterationsError,
    NotRecoverableError,
    PoleError,
    SingularPointError,
    NotAZeroError,
)


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RunConfig:
    """Fully explicit run parameters; environment variables are never read."""

    precision_digits: int = 60
    tolerance: object = None  # mpf > 0; None picks 10^(12 - digits)
    output_format: str = "csv"
    output_path: str | None = None
    t_grid: tuple | None = None  # (start, stop, step) as mpf
    sigma_list: tuple = ()

    def __post_init__(self) -> None:
        if int(self.precision_digits) != self.precision_digits or self.precision_digits < 16:
            raise ConfigError(
                f"precision_digits must be an integer >= 16, got {self.precision_digits}"
            )
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {self.output_format!r}")
        tol = self.tolerance
        if tol is None:
            tol = mp.mpf(10) ** (12 - self.precision_digits)
        else:
            tol = mp.mpf(tol)
        if not tol > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        object.__setattr__(self, "tolerance", tol)
        if self.t_grid is not None:
            start, stop, step = (mp.mpf(x) for x in self.t_grid)
            if not step > 0:
                raise ConfigError(f"t step must be positive, got {self.t_grid[2]}")
            if not start < stop:
                raise ConfigError(f"t range must be increasing, got [{start}, {stop}]")
            object.__setattr__(self, "t_grid", (start, stop, step))
        object.__setattr__(self, "sigma_list", tuple(mp.mpf(s) for s in self.sigma_list))

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.precision_digits)


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one verify run; counts must tile the report list."""

    reports: tuple
    passed_count: int
    failed_count: int
    wall_time_seconds: float

    def __post_init__(self) -> None:
        if self.passed_count + self.failed_count != len(self.reports):
            raise ConfigError("suite counts do not match the number of reports")


# ---------------------------------------------------------------------------
# deterministic value formatting


def _sci(x, n: int) -> str:
    """Scientific decimal string with n significant digits."""
    x = mp.mpf(x)
    if mp.isnan(x):
        return "nan"
    if mp.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = mp.nstr(x, n, strip_zeros=False, min_fixed=1, max_fixed=0)
    if "e" not in s:
        s += "e+0"
    return s


def _cval(z, n: int) -> str:
    """Complex (or real) value as a decimal string without commas."""
    z = mp.mpc(z)
    if z.imag == 0:
        return _sci(z.real, n)
    sign = "+" if z.imag >= 0 else "-"
    return f"{_sci(z.real, n)}{sign}{_sci(abs(z.imag), n)}i"


def _write_lines(lines, path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", encoding="ascii") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigError(f"cannot write output file {path}: {exc}") from exc


def _config_echo(config: RunConfig, extra: str = "") -> str:
    parts = [
        f"digits={config.precision_digits}",
        f"tolerance={_sci(config.tolerance, 6)}",
        f"format={config.output_format}",
    ]
    if config.sigma_list:
        parts.append("sigma=" + ";".join(_sci(s, 17) for s in config.sigma_list))
    if config.t_grid is not None:
        parts.append("t_grid=" + ";".join(_sci(x, 17) for x in config.t_grid))
    if extra:
        parts.append(extra)
    return "# config: " + " ".join(parts)


def _emit_table(config, kind_header, extra_headers, columns, rows) -> None:
    """Write one table in the configured format to --out or stdout."""
    if config.output_format == "csv":
        lines = [kind_header, _config_echo(config)]
        lines += extra_headers
        lines.append("# columns: " + ",".join(columns))
        lines += [",".join(row) for row in rows]
        _write_lines(lines, config.output_path)
    else:
        doc = {
            "kind": kind_header.lstrip("# "),
            "config": {
                "digits": config.precision_digits,
                "tolerance": _sci(config.tolerance, 6),
                "sigma": [_sci(s, 17) for s in config.sigma_list],
                "t_grid": None
                if config.t_grid is None
                else [_sci(x, 17) for x in config.t_grid],
            },
            "notes": [h.lstrip("# ") for h in extra_headers],
            "columns": list(columns),
            "rows": [dict(zip(columns, row)) for row in rows],
        }
        _write_lines([json.dumps(doc, indent=2)], config.output_path)


# ---------------------------------------------------------------------------
# verify


def _suite_entry_ids() -> tuple:
    """Identity catalog plus the moment-cancellation and theta-line checks."""
    extra = ("eqrhom1", "eqrhom2", "eqrhom3", "theta-line-high", "theta-line-shifted")
    return tuple(sorted(identity_ids() + extra))


def _run_suite_entry(args) -> "IdentityReport":
    entry_id, digits = args
    ctx = PrecisionContext(digits)
    if entry_id.startswith("eqrhom"):
        rep = cancellation_check(int(entry_id[-1]), ctx)
        return dataclasses.replace(rep, identity_id=entry_id)
    if entry_id == "theta-line-high":
        return theta_line_identity(1, False, ctx)
    if entry_id == "theta-line-shifted":
        return theta_line_identity(1, True, ctx)
    return run_identity(entry_id, None, ctx)


def cmd_verify(config: RunConfig, filter_glob: str | None = None, jobs: int = 1):
    """Run every registered identity (or a filtered subset); returns the
    SuiteReport and the process exit code (nonzero iff any entry failed)."""
    entries = _suite_entry_ids()
    if filter_glob:
        entries = tuple(e for e in entries if fnmatch.fnmatchcase(e, filter_glob))
        if not entries:
            raise ConfigError(f"filter {filter_glob!r} matches no registered identity")
    tasks = [(e, config.precision_digits) for e in entries]
    started = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = list(pool.map(_run_suite_entry, tasks))
    else:
        raw = [_run_suite_entry(t) for t in tasks]
    wall = time.perf_counter() - started

    reports = tuple(
        dataclasses.replace(
            r, passed=bool(r.abs_residual < config.tolerance), tolerance=+config.tolerance
        )
        for r in raw
    )
    passed = sum(1 for r in reports if r.passed)
    suite = SuiteReport(
        reports=reports,
        passed_count=passed,
        failed_count=len(reports) - passed,
        wall_time_seconds=wall,
    )

    n = config.precision_digits
    rows = [
        (
            r.identity_id,
            _cval(r.lhs, n),
            _cval(r.rhs, n),
            _sci(r.abs_residual, n),
            _sci(r.rel_residual, n),
            str(r.digits_used),
            "true" if r.passed else "false",
        )
        for r in reports
    ]
    _emit_table(
        config,
        "# report: verify",
        ["# wall time goes to stderr only, keeping this output byte-deterministic"],
        ("identity_id", "lhs", "rhs", "abs_residual", "rel_residual", "digits", "passed"),
        rows,
    )
    for r in reports:
        mark = "ok  " if r.passed else "FAIL"
        print(
            f"{mark} {r.identity_id:20s} abs_residual={_sci(r.abs_residual, 3)}"
            f" tolerance={_sci(r.tolerance, 3)}",
            file=sys.stderr,
        )
    print(
        f"# verify: {suite.passed_count}/{len(reports)} passed,"
        f" wall_time_seconds={wall:.3f}",
        file=sys.stderr,
    )
    return suite, (EXIT_PASS if suite.failed_count == 0 else EXIT_CHECK_FAILED)


# ---------------------------------------------------------------------------
# eval


def cmd_eval(sigma, t, c, config: RunConfig) -> int:
    """Reconstruct xi(s) through the chamber representation at offset c,
    print it next to the direct value and zeta(s), and gate their relative
    residual at 10^(10 - digits) (or --tol if given explicitly)."""
    ctx = config.ctx
    with ctx.workdps():
        sig, tt, cc = mp.mpf(sigma), mp.mpf(t), mp.mpf(c)
        region = classify_region(sig, cc)
        s = mp.mpc(sig, tt)
        via_region = xi_via_region(s, cc, ctx)
        direct = xi(s, ctx)
        zeta_s = +mp.zeta(s)
        resid = abs(via_region - direct)
        scale = max(abs(via_region), abs(direct))
        rel = resid / scale if scale > 0 else mp.mpf(0)
        bar = mp.mpf(10) ** (10 - config.precision_digits)
        if config.tolerance != mp.mpf(10) ** (12 - config.precision_digits):
            bar = config.tolerance  # explicit --tol overrides the default gate
        passed = bool(rel < bar)

    n = config.precision_digits
    rows = [
        (
            _sci(sig, n),
            _sci(tt, n),
            _sci(cc, n),
            region.tag,
            _cval(via_region, n),
            _cval(direct, n),
            _cval(zeta_s, n),
            _sci(resid, n),
            _sci(rel, n),
            "true" if passed else "false",
        )
    ]
    _emit_table(
        config,
        "# report: eval",
        [],
        (
            "sigma",
            "t",
            "c",
            "region",
            "xi_via_region",
            "xi_direct",
            "zeta",
            "abs_residual",
            "rel_residual",
            "passed",
        ),
        rows,
    )
    print(
        f"# eval: region {region.tag}, rel_residual={_sci(rel, 3)}"
        f" gate={_sci(bar, 3)} -> {'ok' if passed else 'FAIL'}",
        file=sys.stderr,
    )
    return EXIT_PASS if passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# zeros


def cmd_zeros(config: RunConfig) -> int:
    """Scan for predicted zero ordinates, pair each against the sign-change
    oracle, and emit the pairing table with summary statistics."""
    if config.t_grid is None:
        raise ConfigError("zeros needs --t-start and --t-stop")
    start, stop, step = config.t_grid
    if stop > 2500:
        raise ConfigError(f"zeros is desk-scale: t must stay below 2500, got {stop}")
    scan_step = min(step, mp.mpf(1))
    matches = predict_zeros(Interval(start, stop), config.ctx, step=scan_step)

    n = config.precision_digits
    rows = [
        (
            _sci(m.predicted, n),
            _sci(m.matched, n),
            _sci(m.offset, n),
            _sci(m.half_gap, n),
            "true" if m.accepted else "false",
        )
        for m in matches
    ]
    accepted = sum(1 for m in matches if m.accepted)
    offsets = [m.offset for m in matches]
    summary = [
        f"# summary: predictions={len(matches)} accepted={accepted}",
        "# summary: max_offset="
        + (_sci(max(offsets), 6) if offsets else "nan")
        + " mean_offset="
        + (_sci(mp.fsum(offsets) / len(offsets), 6) if offsets else "nan"),
    ]
    _emit_table(
        config,
        "# report: zeros",
        summary,
        ("predicted", "matched", "offset", "half_gap", "accepted"),
        rows,
    )
    print(
        f"# zeros: {accepted}/{len(matches)} predictions accepted on"
        f" [{_sci(start, 6)}, {_sci(stop, 6)}]",
        file=sys.stderr,
    )
    return EXIT_PASS if accepted == len(matches) else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# moments


def _moment_rows(config: RunConfig):
    ctx = config.ctx
    rows, all_passed = [], True
    n = config.precision_digits
    bar = mp.mpf(10) ** (15 - config.precision_digits)
    if config.tolerance != mp.mpf(10) ** (12 - config.precision_digits):
        bar = config.tolerance
    for kind, fn in (("lattice-sum", romik_sum), ("axis-moment", upsilon_moment)):
        for k in range(1, 8):
            dual = fn(k, ctx)
            ok = bool(dual.rel_error < bar)
            all_passed &= ok
            rows.append(
                (
                    f"{kind}-{k}",
                    _sci(dual.closed, n),
                    _sci(dual.direct, n),
                    _sci(dual.rel_error, n),
                    _sci(dual.direct_error, n),
                    "true" if ok else "false",
                )
            )
    return rows, all_passed, bar


def cmd_moments(config: RunConfig) -> int:
    """Print all seven lattice sums and seven axis moments, closed form
    against direct numerics, with relative residuals."""
    rows, all_passed, bar = _moment_rows(config)
    _emit_table(
        config,
        "# report: moments",
        [f"# gate: rel_error < {_sci(bar, 6)}"],
        ("id", "closed_form", "direct_numeric", "rel_error", "direct_error_estimate", "passed"),
        rows,
    )
    print(
        f"# moments: {sum(1 for r in rows if r[-1] == 'true')}/{len(rows)} within"
        f" {_sci(bar, 3)}",
        file=sys.stderr,
    )
    return EXIT_PASS if all_passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# figures


FIGURE_IDS = (
    "J1J2",
    "T1abs",
    "T1diff",
    "J1All",
    "J2All",
    "ZRZI",
    "TwoXsi",
    "Q1Q2",
    "TwoSigmas",
    "ReqHalf",
    "Delta1S",
    "Delta4S",
    "delta4",
    "XiImag",
    "XiVsLamR",
    "XiVsLamI",
    "CosPhi",
    "Zdiff",
    "MsOver",
    "McOver",
    "P1234",
)

_EXP_SCALING = "exp(pi*t/4)/t^2"


def _grid_values(config: RunConfig, start, stop, step):
    if config.t_grid is not None:
        start, stop, step = config.t_grid
    else:
        start, stop, step = mp.mpf(start), mp.mpf(stop), mp.mpf(step)
    out, t = [], start
    while t <= stop + step / 2:
        out.append(+t)
        t += step
    return out


def _sigmas(config: RunConfig, *defaults):
    picked = list(config.sigma_list[: len(defaults)])
    picked += [mp.mpf(d) for d in defaults[len(picked) :]]
    return picked


def _line_zeros(lo, hi, ctx: PrecisionContext):
    """Critical-line zero ordinates from a Z-function sign scan; cheap at any
    height because the hard exponential factor is absent from Z."""
    with ctx.workdps():
        lo, hi = mp.mpf(lo), mp.mpf(hi)
        zeros, t, prev = [], lo, None
        step = mp.mpf(1) / 4
        while t <= hi + step / 2:
            val = mp.siegelz(t)
            sign = mp.sign(val)
            if prev is not None and sign != prev and sign != 0:
                zeros.append(find_root(mp.siegelz, Interval(t - step, t), ctx))
            prev = sign
            t += step
        return zeros


def _nan_row(row):
    return tuple("nan" if v is None else v for v in row)


def _exp_scale(t):
    return mp.exp(mp.pi * t / 4) / t**2


def _fig_j1j2(config: RunConfig):
    (sig,) = _sigmas(config, mp.mpf(1) / 3)
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    with ctx.workdps():
        for t in (mp.mpf("12.5"), mp.mpf(25), mp.mpf(50), mp.mpf(100), mp.mpf(200)):
            scale = _exp_scale(t)
            v_hi = t / 2 + 6
            v = v_hi / 96
            while v <= v_hi + v_hi / 192:
                t1, t2, _, _ = fold_functions(sig, t, v, ctx)
                u = upsilon(mp.mpc(0, 2 * v), ctx)
                rows.append(
                    (
                        _sci(t, n),
                        _sci(v, n),
                        _sci(abs(t1 * mp.re(u)) * scale, n),
                        _sci(t2 * mp.im(u) * scale, n),
                    )
                )
                v += v_hi / 96
    return (
        _EXP_SCALING,
        ("t", "v", "abs_integrand_even_scaled", "integrand_odd_scaled"),
        rows,
        [f"# sigma={_sci(sig, 17)}"],
    )


def _fig_t1_background(config: RunConfig, subtract: bool):
    (sig,) = _sigmas(config, mp.mpf(1) / 3)
    ctx = config.ctx
    n = config.precision_digits
    t0 = config.t_grid[0] if config.t_grid is not None else mp.mpf(10) ** 4
    rows = []
    with ctx.workdps():
        coeffs = [background_coeff(1, k, sig, ctx) for k in (1, 2, 3)]
        v = t0 / 4
        step = (3 * t0 / 4 - t0 / 4) / 200
        while v <= 3 * t0 / 4 + step / 2:
            t1 = fold_functions(sig, t0, v, ctx)[0]
            cums, run = [], mp.mpf(0)
            for k, coeff in zip((1, 2, 3), coeffs):
                run += abs(coeff.eval_at(v)) * t0 ** (-2 * k)
                cums.append(+run)
            if subtract:
                cells = [abs(abs(t1) - c) for c in cums]
            else:
                cells = cums
            rows.append(
                (_sci(v, n), _sci(abs(t1), n)) + tuple(_sci(c, n) for c in cells)
            )
            v += step
    tag = "abs_fold1_minus_background_" if subtract else "background_cumulative_"
    return (
        "none",
        ("v", "abs_fold1") + tuple(f"{tag}{k}" for k in (1, 2, 3)),
        rows,
        [f"# sigma={_sci(sig, 17)} t={_sci(t0, 17)}"],
    )


def _fig_peak_window(config: RunConfig, which: int):
    (sig,) = _sigmas(config, mp.mpf(1) / 3)
    ctx = config.ctx
    n = config.precision_digits
    t0 = config.t_grid[0] if config.t_grid is not None else mp.mpf(10) ** 4
    rows = []
    with ctx.workdps():
        norm = abs(fold_functions(sig, t0, t0 / 2, ctx)[0])
        v = t0 / 2 - 2
        step = mp.mpf(1) / 20
        while v <= t0 / 2 + 2 + step / 2:
            folds = fold_functions(sig, t0, v, ctx)
            u = upsilon(mp.mpc(0, 2 * v), ctx)
            axis = mp.re(u) if which == 1 else mp.im(u)
            fold = folds[which - 1]
            rows.append(
                (
                    _sci(v, n),
                    _sci(fold * axis, n),
                    _sci(fold, n),
                    _sci(mp.re(u) * norm, n),
                )
            )
            v += step
    name = "even" if which == 1 else "odd"
    return (
        "background column scaled by |fold1(s, t/2)|",
        ("v", f"integrand_{name}", f"fold{which}", "background_shape"),
        rows,
        [f"# sigma={_sci(sig, 17)} t={_sci(t0, 17)}"],
    )


def _fig_zrzi(config: RunConfig):
    (sig,) = _sigmas(config, mp.mpf("0.7"))
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    for t in _grid_values(config, 495, 505, "0.25"):
        zr, zi = approx_zeta_components(mp.mpc(sig, t), None, ctx)
        rows.append(
            (
                _sci(t, n),
                _sci(zr.exact, n),
                _sci(zr.value, n),
                _sci(zi.exact, n),
                _sci(zi.value, n),
            )
        )
    return (
        "none",
        ("t", "zeta_R_exact", "zeta_R_model", "zeta_I_exact", "zeta_I_model"),
        rows,
        [f"# sigma={_sci(sig, 17)}"],
    )


def _fig_twoxsi(config: RunConfig):
    s1, s2 = _sigmas(config, "0.1", "0.9")
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    with ctx.workdps():
        for t in _grid_values(config, 695, 705, "0.25"):
            scale = _exp_scale(t)
            a = mp.re(xi(mp.mpc(s1, t), ctx)) * scale
            b = mp.re(xi(mp.mpc(s2, t), ctx)) * scale
            rows.append((_sci(t, n), _sci(a, n), _sci(b, n)))
    return (
        _EXP_SCALING,
        ("t", "xi_R_sigma1_scaled", "xi_R_sigma2_scaled"),
        rows,
        [f"# sigma1={_sci(s1, 17)} sigma2={_sci(s2, 17)}"],
    )


def _fig_q1q2(config: RunConfig):
    s1, s2 = _sigmas(config, "0.2", "0.45")
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    with ctx.workdps():
        w1 = mp.sqrt(s1 * (1 - s1))
        w2 = mp.sqrt(s2 * (1 - s2))
        for t in _grid_values(config, 495, 505, "0.25"):
            scale = _exp_scale(t)
            a = w1 * mp.re(xi(mp.mpc(s1, t), ctx)) * scale
            b = w2 * mp.re(xi(mp.mpc(s2, t), ctx)) * scale
            rows.append((_sci(t, n), _sci(a, n), _sci(b, n)))
    return (
        _EXP_SCALING + ", each profile weighted by sqrt(sigma(1-sigma))",
        ("t", "scaled_profile_sigma1", "scaled_profile_sigma2"),
        rows,
        [f"# sigma1={_sci(s1, 17)} sigma2={_sci(s2, 17)}"],
    )


def _modulus_sides(sig, t, ctx):
    """Both sides of the modulus relation, weighted by its zeta-side factor
    so the comparison stays finite where that factor crosses zero."""
    with ctx.workdps():
        s = mp.mpc(sig, t)
        ph = phases(s, ctx)
        den = (sig - mp.mpf(1) / 2) * mp.sin(ph.phi) + t * mp.cos(ph.phi) / 2
        try:
            r = approx_abs_zeta(s, None, ctx)
        except SingularPointError:
            return None, None
        return +(r.exact * den / t), +(r.value * den / t)


def _fig_twosigmas(config: RunConfig):
    s1, s2 = _sigmas(config, "0.3", "0.7")
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    for t in _grid_values(config, 895, 905, "0.1"):
        l1, r1 = _modulus_sides(s1, t, ctx)
        l2, r2 = _modulus_sides(s2, t, ctx)
        cells = [None if x is None else _sci(x, n) for x in (l1, r1, l2, r2)]
        rows.append(_nan_row((_sci(t, n),) + tuple(cells)))
    return (
        "both sides multiplied by the zeta-side angular factor and by 1/t",
        ("t", "lhs_sigma1", "rhs_sigma1", "lhs_sigma2", "rhs_sigma2"),
        rows,
        [f"# sigma1={_sci(s1, 17)} sigma2={_sci(s2, 17)}"],
    )


def _fig_reqhalf(config: RunConfig):
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    for t in _grid_values(config, 895, 905, "0.1"):
        r = half_line_relation(t, None, ctx)
        rows.append((_sci(t, n), _sci(r.exact, n), _sci(r.value, n)))
    return ("none", ("t", "lhs_signed_modulus", "rhs_model"), rows, [])


def _fig_delta_profile(config: RunConfig, which: int):
    ctx = config.ctx
    n = config.precision_digits
    t_list = (
        _grid_values(config, 0, 0, 1)
        if config.t_grid is not None
        else [mp.mpf(50), mp.mpf(100), mp.mpf(200)]
    )
    rows = []
    mids = {}
    for t in t_list:
        try:
            mids[t] = solve_delta(which, mp.mpf("0.5"), t, ctx)
        except SingularPointError:
            mids[t] = None
    k = 1
    while k <= 19:
        sig = mp.mpf(k) / 20
        cells = []
        for t in t_list:
            if mids[t] is None:
                cells.append(None)
                continue
            try:
                cells.append(_sci(solve_delta(which, sig, t, ctx) / mids[t], n))
            except SingularPointError:
                cells.append(None)
        model = 2 * mp.sqrt(sig * (1 - sig))
        rows.append(_nan_row((_sci(sig, n),) + tuple(cells) + (_sci(model, n),)))
        k += 1
    cols = ("sigma",) + tuple(f"ratio_t{mp.nstr(t, 6)}" for t in t_list) + ("model",)
    return (
        "each column normalized by the solved width at sigma=1/2",
        cols,
        rows,
        [f"# solved width index: {which}"],
    )


def _fig_delta4_track(config: RunConfig):
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    for t in _grid_values(config, 700, 720, "0.1"):
        try:
            val = _sci(solve_delta(4, mp.mpf("0.5"), t, ctx), n)
        except SingularPointError:
            val = None
        rows.append(_nan_row((_sci(t, n), val, _sci(mp.mpf("0.16"), n))))
    return ("none", ("t", "half_line_odd_width", "first_approximation"), rows, [])


def _fig_xiimag(config: RunConfig):
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    with ctx.workdps():
        for t in _grid_values(config, 100, 120, "0.1"):
            chain = xi_slope_identity(t, ctx).value
            model = 16 * t**2 * mp.mpf("0.16") * mp.im(upsilon(mp.mpc(0, t), ctx)) / mp.pi
            rows.append((_sci(t, n), _sci(abs(chain), n), _sci(abs(model), n)))
    return (
        "none",
        ("t", "abs_slope_chain", "abs_model_width_0p16"),
        rows,
        [],
    )


def _fig_xivslam(config: RunConfig, imag: bool):
    (sig,) = _sigmas(config, "0.22" if imag else "0.5")
    ctx = config.ctx
    n = config.precision_digits
    fn = approx_xi_I if imag else approx_xi_R
    rows = []
    with ctx.workdps():
        for t in _grid_values(config, 795, 805, "0.1"):
            r = fn(mp.mpc(sig, t), None, ctx)
            scale = _exp_scale(t)
            rows.append((_sci(t, n), _sci(r.exact * scale, n), _sci(r.value * scale, n)))
    part = "xi_I" if imag else "xi_R"
    return (
        _EXP_SCALING,
        ("t", f"{part}_scaled", "model_scaled"),
        rows,
        [f"# sigma={_sci(sig, 17)}"],
    )


def _fig_cosphi(config: RunConfig):
    ctx = config.ctx
    n = config.precision_digits
    ts = _grid_values(config, 895, 905, "0.05")
    zeros = _line_zeros(ts[0] - 5, ts[-1] + 5, ctx)
    rows = []
    with ctx.workdps():
        for t in ts:
            c = mp.cos(_axis_phase(t))
            nearest = min(zeros, key=lambda z: abs(z - t)) if zeros else mp.nan
            rows.append((_sci(t, n), _sci(c, n), _sci(nearest, n)))
    return ("none", ("t", "cosPhi", "nearest_zero"), rows, [])


def _fig_zdiff(config: RunConfig):
    ctx = config.ctx
    n = config.precision_digits
    ts = _grid_values(config, 10, 100, "0.2")
    step = ts[1] - ts[0] if len(ts) > 1 else mp.mpf("0.2")
    zeros = _line_zeros(max(ts[0] - 2, mp.mpf(2)), ts[-1] + 2, ctx)
    rows = []
    with ctx.workdps():
        coeff = mp.mpf("5.12") / mp.pi ** (mp.mpf(3) / 4)
        for t in ts:
            lhs = abs(mp.zeta(mp.mpc(mp.mpf(1) / 2, t), derivative=1))
            z_axis = mp.zeta(mp.mpc(0, t))
            big_phi = (
                mp.arg(z_axis) + mp.im(mp.loggamma(mp.mpc(0, t / 2))) - t / 2 * mp.log(mp.pi)
            )
            rhs = coeff * abs(z_axis) * mp.sin(big_phi) * (2 / t) ** (mp.mpf(1) / 4)
            ratio = lhs / abs(rhs) if rhs != 0 else mp.inf
            marker = "1" if zeros and min(abs(z - t) for z in zeros) <= step / 2 else "0"
            rows.append((_sci(t, n), _sci(ratio, n), marker))
    return ("none", ("t", "ratio", "is_zero_marker"), rows, [])


def _fig_m_overview(config: RunConfig, real_part: bool):
    if real_part:
        (sig,) = _sigmas(config, "0.9")
        t0 = config.t_grid[0] if config.t_grid is not None else mp.mpf(10) ** 9
        points = 800
    else:
        (sig,) = _sigmas(config, "0.1")
        t0 = config.t_grid[0] if config.t_grid is not None else mp.mpf(100)
        points = 400
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    with ctx.workdps():
        step = 2 * t0 / points
        v = -t0
        while v <= t0 + step / 2:
            mr, mi = m_real_imag(sig, t0, v, ctx)
            rows.append((_sci(v, n), _sci(mr if real_part else mi, n)))
            v += step
    name = "multiplier_real" if real_part else "multiplier_imag"
    extras = [f"# sigma={_sci(sig, 17)} t={_sci(t0, 17)}"]
    if not real_part:
        extras.append(
            "# peak estimates: t/sigma at v=+t/2, -t/(1-sigma) at v=-t/2;"
            " full width at half height = sigma"
        )
    return ("none", ("v", name), rows, extras)


def _fig_p1234(config: RunConfig):
    (sig,) = _sigmas(config, mp.mpf(1) / 3)
    t0 = config.t_grid[0] if config.t_grid is not None else mp.mpf(2000)
    ctx = config.ctx
    n = config.precision_digits
    rows = []
    with ctx.workdps():
        v = t0 / 2 - 3
        step = mp.mpf(1) / 100
        while v <= t0 / 2 + 3 + step / 2:
            folds = fold_functions(sig, t0, v, ctx)
            rows.append((_sci(v, n),) + tuple(_sci(f, n) for f in folds))
            v += step
    return (
        "none",
        ("v", "fold1", "fold2", "fold3", "fold4"),
        rows,
        [f"# sigma={_sci(sig, 17)} t={_sci(t0, 17)}"],
    )


_FIGURES = {
    "J1J2": _fig_j1j2,
    "T1abs": lambda cfg: _fig_t1_background(cfg, subtract=False),
    "T1diff": lambda cfg: _fig_t1_background(cfg, subtract=True),
    "J1All": lambda cfg: _fig_peak_window(cfg, 1),
    "J2All": lambda cfg: _fig_peak_window(cfg, 2),
    "ZRZI": _fig_zrzi,
    "TwoXsi": _fig_twoxsi,
    "Q1Q2": _fig_q1q2,
    "TwoSigmas": _fig_twosigmas,
    "ReqHalf": _fig_reqhalf,
    "Delta1S": lambda cfg: _fig_delta_profile(cfg, 1),
    "Delta4S": lambda cfg: _fig_delta_profile(cfg, 4),
    "delta4": _fig_delta4_track,
    "XiImag": _fig_xiimag,
    "XiVsLamR": lambda cfg: _fig_xivslam(cfg, imag=False),
    "XiVsLamI": lambda cfg: _fig_xivslam(cfg, imag=True),
    "CosPhi": _fig_cosphi,
    "Zdiff": _fig_zdiff,
    "MsOver": lambda cfg: _fig_m_overview(cfg, real_part=False),
    "McOver": lambda cfg: _fig_m_overview(cfg, real_part=True),
    "P1234": _fig_p1234,
}


def cmd_figure(figure_id: str, config: RunConfig) -> int:
    """Emit one figure's data table with its caption scaling applied."""
    try:
        emitter = _FIGURES[figure_id]
    except KeyError:
        known = ", ".join(FIGURE_IDS)
        raise UnknownFigureError(f"unknown figure {figure_id!r}; known ids: {known}") from None
    scaling, columns, rows, extras = emitter(config)
    _emit_table(
        config,
        f"# figure: {figure_id}",
        [f"# scaling: {scaling}"] + extras,
        columns,
        rows,
    )
    print(f"# figure {figure_id}: {len(rows)} rows", file=sys.stderr)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser: argparse.ArgumentParser, default_digits: int) -> None:
    parser.add_argument(
        "--digits",
        type=int,
        default=default_digits,
        help=f"working precision in decimal digits (>= 16, default {default_digits})",
    )
    parser.add_argument("--tol", default=None, help="pass/fail tolerance (default 10^(12-digits))")
    parser.add_argument("--out", default=None, help="output file (default: stdout)")
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format (default csv)"
    )
    parser.add_argument(
        "--sigma",
        action="append",
        default=None,
        help="real part(s) of s; repeat or comma-separate to pass several",
    )
    parser.add_argument("--t-start", default=None, help="start of the t grid")
    parser.add_argument("--t-stop", default=None, help="end of the t grid")
    parser.add_argument("--t-step", default=None, help="t grid step (default per command)")
    parser.add_argument(
        "--jobs", type=int, default=1, help="parallel worker count (default 1; order-stable)"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xieq",
        description=(
            "high-precision checks for the line-operator representation of the "
            "completed zeta function"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the registered identity suite")
    _add_common(p, 60)
    p.add_argument("--filter", default=None, help="glob over identity ids (e.g. 'eqrhom*')")

    p = sub.add_parser("eval", help="evaluate xi through the chamber representation")
    _add_common(p, 60)
    p.add_argument("sigma_pos", metavar="sigma", help="real part of s (0 <= sigma <= 1)")
    p.add_argument("t_pos", metavar="t", help="imaginary part of s")
    p.add_argument(
        "c_pos", metavar="c", nargs="?", default="-1", help="line offset (default -1)"
    )

    p = sub.add_parser("figure", help="emit data for one figure id")
    _add_common(p, 24)
    p.add_argument("figure_id", help="one of: " + ", ".join(FIGURE_IDS))

    p = sub.add_parser("zeros", help="predicted zero ordinates vs the sign-change oracle")
    _add_common(p, 24)

    p = sub.add_parser("moments", help="lattice sums and axis moments, closed vs numeric")
    _add_common(p, 60)

    return parser


def _config_from_args(args) -> RunConfig:
    sigma_list = []
    if args.sigma:
        for chunk in args.sigma:
            sigma_list += [s for s in chunk.split(",") if s]
    t_grid = None
    if args.t_start is not None or args.t_stop is not None:
        if args.t_start is None or args.t_stop is None:
            raise ConfigError("--t-start and --t-stop must be given together")
        default_step = "0.25" if args.command == "zeros" else "0.1"
        t_grid = (args.t_start, args.t_stop, args.t_step or default_step)
    elif args.t_step is not None:
        raise ConfigError("--t-step needs --t-start and --t-stop")
    return RunConfig(
        precision_digits=args.digits,
        tolerance=args.tol,
        output_format=args.format,
        output_path=args.out,
        t_grid=t_grid,
        sigma_list=tuple(sigma_list),
    )


_BOUNDARY_LINES = {
    "blue": "c = -3/2",
    "red": "c = -sigma/2 - 1",
    "green": "c = sigma/2 - 3/2",
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if args.command == "verify":
            _, code = cmd_verify(config, filter_glob=args.filter, jobs=args.jobs)
            return code
        if args.command == "eval":
            return cmd_eval(args.sigma_pos, args.t_pos, args.c_pos, config)
        if args.command == "figure":
            return cmd_figure(args.figure_id, config)
        if args.command == "zeros":
            return cmd_zeros(config)
        return cmd_moments(config)
    except BoundaryError as exc:
        line = getattr(exc, "line", None)
        where = f" ({_BOUNDARY_LINES[line]} crossing line)" if line in _BOUNDARY_LINES else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return EXIT_USAGE
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except XieqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
