"""Gaussian-lattice sums, moments of the symmetric completion on the
imaginary axis, and the cancellation identities built from them.

Two families of closed forms are tabulated here:

* signed lattice sums  sum_(n>=1) (-1)^m n^(2m) e^(-pi n^2),  m = 1..7,
* axis moments  int_0^inf v^n Upsilon_I(2iv) dv  (odd n) and
  int_0^inf v^n Upsilon_R(2iv) dv  (even n),  n = 1..7,

where Upsilon(s) = zeta(s) Gamma(s/2) pi^(-s/2).  Every closed form is kept
as an exact list of (fraction, p, q) terms meaning fraction * pi^(p/4) *
Gamma(3/4)^q, evaluated lazily at whatever precision the caller asks for;
no pre-rounded decimals are stored.

The moments follow from x-derivatives, taken at x = pi, of the theta-kernel
line identity implemented by `theta_line_identity`: the inverse-Mellin
statement  int Upsilon(c+iv) (pi/x)^((c+iv)/2) dv = 4 pi sum e^(-n^2 x)
on a line right of the zeta pole, and its shifted form on the axis c = 0
where crossing the two poles leaves the extra -sqrt(pi/x) + 1/2 terms.

`cancellation_check` certifies that three specific moment combinations
vanish -- the combinations multiplying 1/t^2, 1/t^4 and 1/t^6 in the
large-height expansion of the even fundamental equation's right-hand side.
Each check runs two genuinely independent routes: exact fraction arithmetic
on the tabulated closed forms, and one fresh quadrature of the combined
integrand.  Both must land on zero within tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DomainError
from .integral_eq import _report
from .numerics import Interval, PrecisionContext, integrate_line
from .zeta_core import upsilon

__all__ = [
    "DualValue",
    "MomentTable",
    "cancellation_check",
    "moment_table",
    "romik_sum",
    "theta_line_identity",
    "upsilon_moment",
]


@dataclass(frozen=True)
class DualValue:
    """A closed form and its independently computed numerical twin."""

    closed: mp.mpf
    direct: mp.mpf
    rel_error: mp.mpf
    direct_error: mp.mpf

    def __post_init__(self) -> None:
        if self.rel_error < 0 or self.direct_error < 0:
            raise DomainError("error fields must be nonnegative")


@dataclass(frozen=True)
class MomentTable:
    """The seven signed lattice sums and seven axis moments at one precision."""

    sums: tuple
    moments: tuple
    digits: int


# --- closed forms as exact (fraction, p, q) terms: fraction pi^(p/4) G(3/4)^q

_F = Fraction

_SUM_TERMS = {
    1: ((_F(-1, 8), -3, -1),),
    2: ((_F(3, 32), -7, -1), (_F(1, 64), 9, -9)),
    3: ((_F(-15, 128), -11, -1), (_F(-15, 256), 5, -9)),
    4: ((_F(105, 512), -15, -1), (_F(105, 512), 1, -9), (_F(-1, 2048), 17, -17)),
    5: ((_F(-945, 2048), -19, -1), (_F(-1575, 2048), -3, -9), (_F(45, 8192), 13, -17)),
    6: (
        (_F(10395, 8192), -23, -1),
        (_F(51975, 16384), -7, -9),
        (_F(-1485, 32768), 9, -17),
        (_F(51, 65536), 25, -25),
    ),
    7: (
        (_F(-135135, 32768), -27, -1),
        (_F(-945945, 65536), -11, -9),
        (_F(45045, 131072), 5, -17),
        (_F(-4641, 262144), 21, -25),
    ),
}

_MOMENT_TERMS = {
    1: ((_F(1, 4), 4, 0), (_F(-1, 8), 5, -1)),
    2: ((_F(1, 8), 4, 0), (_F(1, 32), 5, -1), (_F(-1, 64), 21, -9)),
    3: ((_F(3, 256), 21, -9), (_F(-10, 256), 5, -1), (_F(-16, 256), 4, 0)),
    4: (
        (_F(-1, 2048), 37, -17),
        (_F(-76, 2048), 21, -9),
        (_F(68, 2048), 5, -1),
        (_F(-64, 2048), 4, 0),
    ),
    5: (
        (_F(5, 8192), 37, -17),
        (_F(420, 8192), 21, -9),
        (_F(-484, 8192), 5, -1),
        (_F(128, 8192), 4, 0),
    ),
    6: (
        (_F(-51, 65536), 53, -25),
        (_F(-350, 65536), 37, -17),
        (_F(-11644, 65536), 21, -9),
        (_F(5768, 65536), 5, -1),
        (_F(512, 65536), 4, 0),
    ),
    7: (
        (_F(357, 262144), 53, -25),
        (_F(2590, 262144), 37, -17),
        (_F(93492, 262144), 21, -9),
        (_F(-54760, 262144), 5, -1),
        (_F(-1024, 262144), 4, 0),
    ),
}

# weights w_n such that sum_n w_n * moment(n) must vanish: the coefficient
# combinations multiplying 1/t^2, 1/t^4, 1/t^6 in the large-height expansion
_CANCELLATION_WEIGHTS = {
    1: {2: _F(-12), 3: _F(-16), 1: _F(2)},
    2: {4: _F(1), 5: _F(96, 120), 3: _F(-40, 120), 1: _F(-1, 120)},
    3: {6: _F(224), 7: _F(128), 5: _F(-112), 3: _F(-28, 3), 1: _F(-1, 3)},
}


def _eval_terms(terms) -> mp.mpf:
    """Evaluate a (fraction, p, q) term list at the ambient precision."""
    g34 = mp.gamma(mp.mpf(3) / 4)
    total = mp.mpf(0)
    for frac, p, q in terms:
        total += (
            mp.mpf(frac.numerator)
            / frac.denominator
            * mp.pi ** (mp.mpf(p) / 4)
            * g34**q
        )
    return total


def _wp(ctx: PrecisionContext) -> PrecisionContext:
    return PrecisionContext(ctx.digits + 10)


def _dual(closed, direct, direct_error, ctx: PrecisionContext) -> DualValue:
    raw_closed, raw_direct = mp.mpf(closed), mp.mpf(direct)
    with ctx.workdps():
        # difference of the unrounded values, so agreement below the report
        # precision still shows its true size instead of exact zero
        floor = mp.mpf(10) ** (-2 * ctx.digits)
        rel = +(abs(raw_closed - raw_direct) / max(abs(raw_closed), floor))
        return DualValue(
            closed=+raw_closed,
            direct=+raw_direct,
            rel_error=rel,
            direct_error=+mp.mpf(direct_error),
        )


def romik_sum(m: int, ctx: PrecisionContext) -> DualValue:
    """Closed form of sum n^(2m) e^(-pi n^2), m in 1..7, with series oracle.

    The tabulated closed forms carry the sign (-1)^m; the returned pair is
    the plain positive-series convention, so closed = (-1)^m * table entry.
    """
    if m not in _SUM_TERMS:
        raise IndexError(f"sum order m must be in 1..7, got {m}")
    wp = _wp(ctx)
    with wp.workdps():
        closed = (-1) ** m * _eval_terms(_SUM_TERMS[m])
        total = mp.mpf(0)
        n = 1
        while True:
            term = mp.mpf(n) ** (2 * m) * mp.exp(-mp.pi * n * n)
            total += term
            if term < mp.eps * total:
                break
            n += 1
        return _dual(closed, total, term, ctx)


def upsilon_moment(n: int, ctx: PrecisionContext, tol=None) -> DualValue:
    """Closed form of the n-th axis moment with a quadrature oracle.

    Odd n weighs Upsilon_I(2iv), even n weighs Upsilon_R(2iv); the closed
    forms come from x-derivatives of the shifted theta-kernel identity at
    x = pi.  `tol` overrides the quadrature tolerance 10^(8 - digits).
    """
    if n not in _MOMENT_TERMS:
        raise IndexError(f"moment order n must be in 1..7, got {n}")
    wp = _wp(ctx)
    with wp.workdps():
        closed = _eval_terms(_MOMENT_TERMS[n])
        if tol is None:
            tol = mp.mpf(10) ** (8 - ctx.digits)
        part = mp.im if n % 2 else mp.re

        def f(v):
            v = mp.mpf(v)
            return v**n * part(upsilon(2j * v, wp))

        res = integrate_line(f, Interval(0, mp.inf), wp, mp.mpf(tol))
        return _dual(closed, res.value, res.abs_error_estimate, ctx)


def moment_table(ctx: PrecisionContext) -> MomentTable:
    """All fourteen closed forms evaluated at the context's precision."""
    wp = _wp(ctx)
    with ctx.workdps():
        with wp.workdps():
            sums = [_eval_terms(_SUM_TERMS[m]) for m in range(1, 8)]
            moms = [_eval_terms(_MOMENT_TERMS[n]) for n in range(1, 8)]
        return MomentTable(
            sums=tuple(+s for s in sums),
            moments=tuple(+m for m in moms),
            digits=ctx.digits,
        )


def cancellation_check(k: int, ctx: PrecisionContext):
    """Certify that the k-th moment combination vanishes, k in 1..3.

    Route one substitutes the tabulated closed forms with exact fraction
    weights -- the (fraction, p, q) terms cancel key by key, so the value is
    an algebraic zero up to epsilon-level rounding.  Route two integrates
    the combined weight polynomial against Upsilon_R/Upsilon_I directly.
    The report carries quadrature as lhs and algebra as rhs.
    """
    if k not in _CANCELLATION_WEIGHTS:
        raise IndexError(f"cancellation order k must be in 1..3, got {k}")
    weights = _CANCELLATION_WEIGHTS[k]
    wp = _wp(ctx)
    with wp.workdps():
        combined: dict = {}
        for n, w in weights.items():
            for frac, p, q in _MOMENT_TERMS[n]:
                combined[(p, q)] = combined.get((p, q), _F(0)) + w * frac
        algebraic = _eval_terms(
            tuple((frac, p, q) for (p, q), frac in combined.items() if frac)
        )

        w_im = {n: w for n, w in weights.items() if n % 2}
        w_re = {n: w for n, w in weights.items() if n % 2 == 0}

        def f(v):
            v = mp.mpf(v)
            u = upsilon(2j * v, wp)
            poly_r = sum(
                mp.mpf(w.numerator) / w.denominator * v**n for n, w in w_re.items()
            )
            poly_i = sum(
                mp.mpf(w.numerator) / w.denominator * v**n for n, w in w_im.items()
            )
            return poly_r * mp.re(u) + poly_i * mp.im(u)

        res = integrate_line(
            f, Interval(0, mp.inf), wp, mp.mpf(10) ** (8 - ctx.digits)
        )
    return _report(f"moment-cancellation-{k}", res.value, algebraic, ctx)


def theta_line_identity(x, c_shifted: bool, ctx: PrecisionContext):
    """Verify the theta-kernel line identity at scale x > 0.

    c_shifted=False checks the line Re s = 2, right of every pole:

        int Upsilon(2+iv) (pi/x)^((2+iv)/2) dv  =  4 pi sum_(n>=1) e^(-n^2 x).

    c_shifted=True checks the axis form: shifting the line to Re s = 0
    crosses the zeta pole (full residue) and lands on the Gamma pole (half
    residue), leaving

        pi (2 sum e^(-n^2 x) - sqrt(pi/x) + 1/2)
            = int_0^inf ((pi/x)^(iv) + (x/pi)^(iv)) Upsilon_R(2iv) dv
            + i int_0^inf ((pi/x)^(iv) - (x/pi)^(iv)) Upsilon_I(2iv) dv,

    where both folded integrands are finite at v = 0.  The report carries
    the integral route as lhs and the theta-series route as rhs.
    """
    x = mp.mpf(x)
    if x <= 0:
        raise DomainError(f"theta scale x must be positive, got {x}")
    wp = _wp(ctx)
    with wp.workdps():
        qtol = mp.mpf(10) ** (8 - ctx.digits)
        lattice = (mp.jtheta(3, 0, mp.exp(-x)) - 1) / 2
        if not c_shifted:
            def f(v):
                v = mp.mpf(v)
                s = 2 + 1j * v
                return 2 * mp.re(upsilon(s, wp) * (mp.pi / x) ** (s / 2))

            # the Gamma(1 + iv/2) factor decays like e^(-pi v / 4) only
            res = integrate_line(
                f, Interval(0, mp.inf), wp, qtol, decay_rate=mp.pi / 4
            )
            lhs, rhs = res.value, 4 * mp.pi * lattice
            return _report("theta-line-high", lhs, rhs, ctx)

        ratio_log = mp.log(mp.pi / x)

        def f_even(v):
            v = mp.mpf(v)
            return 2 * mp.cos(v * ratio_log) * mp.re(upsilon(2j * v, wp))

        def f_odd(v):
            v = mp.mpf(v)
            return -2 * mp.sin(v * ratio_log) * mp.im(upsilon(2j * v, wp))

        r_even = integrate_line(f_even, Interval(0, mp.inf), wp, qtol)
        r_odd = integrate_line(f_odd, Interval(0, mp.inf), wp, qtol)
        lhs = r_even.value + r_odd.value
        rhs = mp.pi * (2 * lattice - mp.sqrt(mp.pi / x) + mp.mpf(1) / 2)
        return _report("theta-line-shifted", lhs, rhs, ctx)
