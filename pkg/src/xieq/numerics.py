"""Extended-precision quadrature and root finding for damped oscillatory line
integrals.

Every integrand handled here decays at least exponentially toward infinite
endpoints (the gamma-factor envelope ~ sqrt(2 pi) v^(-1/2) e^(-pi v/2) in
practice), oscillates mildly (the pi^(-iv) phase has period 2 pi / ln pi in
v), and is smooth on the open domain.  The integrator therefore works on
finite panels with adaptive bisection, truncates infinite tails where an
exponential envelope fitted to samples drops below target_tol/100, and adds
the analytic tail mass to the reported error estimate.

Removable singularities are NOT handled here; callers must pass an already
regularized integrand.  Principal-value windows are integrated through the
symmetrized fold pv_symmetric_window, which never samples the pole itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath as mp

from .errors import (
    DomainError,
    IntegrandFailureError,
    MaxIterationsError,
    NonConvergentError,
    NoSignChangeError,
)

__all__ = [
    "PrecisionContext",
    "Interval",
    "QuadratureResult",
    "integrate_line",
    "pv_symmetric_window",
    "find_root",
    "find_extremum",
    "cancellation_padding",
]

# Decay rate of |Gamma(x + iv)| as |v| grows; every kernel in the suite
# inherits this envelope, so it is the default truncation rate.
GAMMA_DECAY_RATE = math.pi / 2


@dataclass(frozen=True)
class PrecisionContext:
    """Significant decimal digits of working precision.

    epsilon is the unit roundoff at that precision, 10^(1-digits).
    """

    digits: int

    def __post_init__(self) -> None:
        if self.digits < 16:
            raise DomainError(f"digits must be >= 16, got {self.digits}")

    @property
    def epsilon(self) -> mp.mpf:
        with mp.workdps(self.digits):
            return +mp.mpf(10) ** (1 - self.digits)

    def workdps(self):
        """Context manager setting the global mpmath precision."""
        return mp.workdps(self.digits)

    def padded_for_cancellation(self, t: float) -> "PrecisionContext":
        """Precision needed to keep `digits` result digits through the
        e^(-pi t / 4) cancellation of the component integrals."""
        return PrecisionContext(self.digits + cancellation_padding(t))


def cancellation_padding(t: float) -> int:
    """Guard digits lost to cancellation at height t: 4 + ceil((pi t/4)/ln 10)."""
    t = abs(float(t))
    return 4 + math.ceil(t * math.pi / 4.0 / math.log(10.0))


@dataclass(frozen=True)
class Interval:
    """Open integration interval; endpoints may be +-inf."""

    lo: object
    hi: object

    def __post_init__(self) -> None:
        lo, hi = mp.mpf(self.lo), mp.mpf(self.hi)
        if not lo < hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def lo_finite(self) -> bool:
        return mp.isfinite(self.lo)

    @property
    def hi_finite(self) -> bool:
        return mp.isfinite(self.hi)


@dataclass(frozen=True)
class QuadratureResult:
    value: object  # mpf or mpc
    abs_error_estimate: object  # mpf >= 0
    nodes_used: int  # >= 1
    truncation_point: object  # |v| beyond which only the analytic tail bound was used

    def __post_init__(self) -> None:
        if self.abs_error_estimate < 0:
            raise DomainError("negative error estimate")
        if self.nodes_used < 1:
            raise DomainError("nodes_used must be >= 1")


class _CountingIntegrand:
    """Wraps f; counts evaluations and converts NaN/inf into a hard failure."""

    def __init__(self, f: Callable):
        self.f = f
        self.nodes = 0

    def __call__(self, v):
        self.nodes += 1
        y = self.f(v)
        y = mp.mpmathify(y)
        re, im = mp.re(y), mp.im(y)
        if not (mp.isfinite(re) and mp.isfinite(im)):
            raise IntegrandFailureError(v)
        return y


def _envelope_cut(f: _CountingIntegrand, start, sgn, rate, tol100, probe_step):
    """Abscissa V >= start where the fitted envelope A e^(-rate v) drops to
    tol100, with A matched to seven probes past `start` in direction sgn."""
    amp = mp.mpf(0)
    for k in range(7):
        v = sgn * (start + k * probe_step)
        amp = max(amp, abs(f(v)) * mp.e ** (rate * abs(v)))
    if amp == 0:
        return start
    v_cut = mp.log(amp / tol100) / rate
    return max(start, v_cut)


def _extend_tail(f, edge, sgn, tol_tail, max_depth, max_doublings=250):
    """Geometric tail verification beyond |v| = edge in direction sgn.

    Doubles the outer edge, integrating each annulus, until the extrapolated
    remainder (geometric in the observed panel ratio) fits under tol_tail.
    This both verifies the exponential-envelope cut and rescues integrands
    that only decay polynomially.

    Returns (tail_value, tail_error_bound, final_edge).
    """
    total = None
    err = mp.mpf(0)
    prev_mass = None
    ln2 = mp.log(2)
    v = edge
    for _ in range(max_doublings):
        w = 2 * v
        # map the annulus [v, 2v] onto u in [0, ln 2] via y = v e^u so the
        # panel width stays O(1); quadrature error estimates degrade badly
        # on panels of width ~v once v is large
        base = v

        def annulus(u, _b=base):
            y = _b * mp.e ** u
            return f(sgn * y) * y

        val, e = _panel(annulus, mp.mpf(0), ln2, tol_tail / 4, 0, max_depth)
        total = val if total is None else total + val
        err += e
        mass = abs(val)
        if prev_mass is not None and mass < tol_tail:
            if mass == 0 and prev_mass == 0:
                return total, err, w
            if prev_mass > 0:
                r = mass / prev_mass
                if r < mp.mpf("0.75"):
                    remainder = mass * r / (1 - r)
                    if remainder < tol_tail:
                        return total, err + remainder, w
        prev_mass = mass
        v = w
    raise NonConvergentError(
        f"tail beyond |v|={mp.nstr(mp.mpf(edge), 5)} did not converge "
        f"after {max_doublings} doublings"
    )


def _panel(f, a, b, tol, depth, max_depth):
    """Adaptive Gauss-Legendre on [a, b]; bisect while the internal error
    estimate exceeds tol and depth remains.  Gauss-Legendre nodes are strictly
    interior, so regularized endpoints are never sampled exactly."""
    val, err = mp.quad(f, [a, b], error=True, method="gauss-legendre")
    err = max(err, mp.eps * abs(val))
    if err <= tol or depth >= max_depth:
        return val, err
    m = (a + b) / 2
    v1, e1 = _panel(f, a, m, tol / 2, depth + 1, max_depth)
    v2, e2 = _panel(f, m, b, tol / 2, depth + 1, max_depth)
    return v1 + v2, e1 + e2


def integrate_line(
    f: Callable,
    domain: Interval,
    ctx: PrecisionContext,
    target_tol,
    *,
    breakpoints: Sequence = (),
    decay_rate: float = GAMMA_DECAY_RATE,
    tail_probe_from: float | None = None,
    panel_width: float = 10.0,
    max_depth: int = 14,
) -> QuadratureResult:
    """Integrate f over `domain` to absolute tolerance target_tol.

    breakpoints: abscissae where the integrand has structure (near-pole peaks,
        window edges); panels never straddle them.
    decay_rate: exponential rate a of the tail envelope A e^(-a|v|) used to
        truncate infinite endpoints; the package default is the gamma-factor
        rate pi/2.
    tail_probe_from: |v| where tail amplitude fitting starts; defaults to 8
        or just past the outermost breakpoint.
    """
    with ctx.workdps():
        tol = mp.mpf(target_tol)
        if tol <= 0:
            raise DomainError("target_tol must be positive")
        cf = _CountingIntegrand(f)
        tol100 = tol / 100

        bps = sorted(mp.mpf(b) for b in breakpoints)
        probe0 = tail_probe_from
        if probe0 is None:
            probe0 = 8.0
            if bps:
                probe0 = max(probe0, float(max(abs(b) for b in bps)) + 5.0)
        probe0 = mp.mpf(probe0)
        probe_step = mp.mpf(5) / 7  # seven probes across one-ish oscillation
        rate = mp.mpf(decay_rate)
        tol_tail = tol / 10

        lo, hi = domain.lo, domain.hi
        hi_cut = hi if domain.hi_finite else _envelope_cut(cf, probe0, 1, rate, tol100, probe_step)
        lo_cut = lo if domain.lo_finite else -_envelope_cut(cf, probe0, -1, rate, tol100, probe_step)

        # core window: domain edges / envelope cuts, interior breakpoints,
        # max panel width tied to the oscillation scale
        knots = [lo_cut] + [b for b in bps if lo_cut < b < hi_cut] + [hi_cut]
        edges = []
        for a, b in zip(knots[:-1], knots[1:]):
            n = max(1, int(mp.ceil((b - a) / panel_width)))
            step = (b - a) / n
            edges.extend(a + k * step for k in range(n))
        edges.append(hi_cut)

        n_panels = len(edges) - 1
        per_panel = tol / (2 * n_panels)
        total = None
        err_total = mp.mpf(0)
        for a, b in zip(edges[:-1], edges[1:]):
            v, e = _panel(cf, a, b, per_panel, 0, max_depth)
            total = v if total is None else total + v
            err_total += e

        trunc = max(abs(lo_cut), abs(hi_cut))
        if not domain.hi_finite:
            t_val, t_err, t_edge = _extend_tail(cf, hi_cut, 1, tol_tail, max_depth)
            total += t_val
            err_total += t_err
            trunc = max(trunc, t_edge)
        if not domain.lo_finite:
            t_val, t_err, t_edge = _extend_tail(cf, abs(lo_cut), -1, tol_tail, max_depth)
            total += t_val
            err_total += t_err
            trunc = max(trunc, t_edge)

        if err_total > tol:
            raise NonConvergentError(
                f"error estimate {mp.nstr(err_total, 5)} above tolerance {mp.nstr(tol, 5)}",
                value=total,
                abs_error_estimate=err_total,
            )
        return QuadratureResult(total, err_total, cf.nodes, trunc)


def pv_symmetric_window(
    f: Callable,
    pole,
    halfwidth,
    ctx: PrecisionContext,
    target_tol,
) -> QuadratureResult:
    """Principal value of f over [pole-halfwidth, pole+halfwidth].

    Folds the window onto u in (0, halfwidth] as f(pole+u) + f(pole-u); the
    odd pole part cancels exactly and quadrature nodes never hit u = 0.
    """
    with ctx.workdps():
        p = mp.mpf(pole)
        h = mp.mpf(halfwidth)
        if h <= 0:
            raise DomainError("halfwidth must be positive")

        def folded(u):
            return f(p + u) + f(p - u)

        return integrate_line(folded, Interval(0, h), ctx, target_tol)


def find_root(f: Callable, bracket: Interval, ctx: PrecisionContext, tol=None):
    """Brent root refinement on a sign-changing bracket.

    Stops when the bracket width drops below tol (default
    10^(5-digits) * scale) and returns the midpoint-side best estimate.
    """
    with ctx.workdps():
        a, b = mp.mpf(bracket.lo), mp.mpf(bracket.hi)
        if not (mp.isfinite(a) and mp.isfinite(b)):
            raise DomainError("root bracket must be finite")
        fa, fb = mp.mpf(f(a)), mp.mpf(f(b))
        if fa == 0:
            return a
        if fb == 0:
            return b
        if mp.sign(fa) == mp.sign(fb):
            raise NoSignChangeError(f"f({a}) and f({b}) share sign")
        scale = max(mp.mpf(1), abs(a), abs(b))
        if tol is None:
            tol = mp.mpf(10) ** (5 - ctx.digits) * scale
        else:
            tol = mp.mpf(tol)

        # Brent: inverse-quadratic / secant with bisection fallback
        c, fc = a, fa
        d = e = b - a
        for _ in range(300):
            if abs(fc) < abs(fb):
                a, b, c = b, c, b
                fa, fb, fc = fb, fc, fb
            m = (c - b) / 2
            if abs(m) <= tol or fb == 0:
                return b
            if abs(e) < tol or abs(fa) <= abs(fb):
                d = e = m
            else:
                s = fb / fa
                if a == c:
                    p = 2 * m * s
                    q = 1 - s
                else:
                    q = fa / fc
                    r = fb / fc
                    p = s * (2 * m * q * (q - r) - (b - a) * (r - 1))
                    q = (q - 1) * (r - 1) * (s - 1)
                if p > 0:
                    q = -q
                else:
                    p = -p
                if 2 * p < min(3 * m * q - abs(tol * q), abs(e * q)):
                    e = d
                    d = p / q
                else:
                    d = e = m
            a, fa = b, fb
            b = b + (d if abs(d) > tol else mp.sign(m) * tol)
            fb = mp.mpf(f(b))
            if mp.sign(fb) == mp.sign(fc):
                c, fc = a, fa
                e = d = b - a
        raise MaxIterationsError("Brent did not converge in 300 iterations")


def find_extremum(
    f: Callable,
    bracket: Interval,
    ctx: PrecisionContext,
    minimize: bool = True,
    tol=None,
):
    """Golden-section extremum refinement on a bracket assumed unimodal.

    Returns (abscissa, value).  Callers keep brackets tight around a predicted
    location; wide brackets over multi-modal data converge to an edge.
    """
    with ctx.workdps():
        a, b = mp.mpf(bracket.lo), mp.mpf(bracket.hi)
        if not (mp.isfinite(a) and mp.isfinite(b)):
            raise DomainError("extremum bracket must be finite")
        if tol is None:
            tol = (b - a) * mp.mpf(10) ** (-ctx.digits // 2)
        gr = (mp.sqrt(5) - 1) / 2
        c = b - gr * (b - a)
        d = a + gr * (b - a)
        fc, fd = mp.mpf(f(c)), mp.mpf(f(d))
        for _ in range(2000):
            if b - a <= tol:
                break
            if (fc < fd) == minimize:
                b, d, fd = d, c, fc
                c = b - gr * (b - a)
                fc = mp.mpf(f(c))
            else:
                a, c, fc = c, d, fd
                d = a + gr * (b - a)
                fd = mp.mpf(f(d))
        else:
            raise MaxIterationsError("golden section exhausted its budget")
        x = (a + b) / 2
        return x, mp.mpf(f(x))
