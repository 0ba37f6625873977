"""Rational transfer kernels of the line-integral operator.

The operator multiplies the line integrand by a rational function of the
integration variable v; all s-dependence rides in polynomial coefficients.
This module evaluates that multiplier for a general contour offset c, its
real and imaginary parts on the c = -1 contour, the four fold combinations
obtained when the operator equation is split into real and imaginary parts
over [0, inf), their large-t background expansions, and the closed-form peak
geometry of the folds near v = t/2 together with a numeric extremization
oracle.

The folds are indexed 1..4 throughout:
    1: odd imaginary fold     -I(v) + I(-v)
    2: even real fold         -R(v) - R(-v) + 4
    3: odd real fold           R(v) - R(-v)
    4: even imaginary fold    -I(v) - I(-v)
where R, I are the real/imaginary parts of the c = -1 multiplier.  Folds 3
and 4 carry an overall factor (sigma - 1/2); folds 1 and 2 are symmetric
under sigma -> 1-sigma.

Peak geometry: every fold concentrates its structure in a few O(1)-wide
features around v = t/2, with closed forms accurate to first order in 1/t.
Minimum/maximum roles of the fold-3/4 features swap with the sign of
sigma - 1/2, so features are labelled positionally (left/center/right), and
the closed-form values carry the sign appropriate to the slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError, PoleError, UnsupportedCoefficientError
from .numerics import Interval, PrecisionContext, find_extremum, find_root

__all__ = [
    "TransferEval",
    "BackgroundCoeff",
    "PeakReport",
    "transfer_M",
    "m_real_imag",
    "fold_functions",
    "fold_functions_from_components",
    "background_coeff",
    "background_series",
    "peak_analytics",
    "peak_numeric",
]


@dataclass(frozen=True)
class TransferEval:
    """Multiplier value at one (c, s, v); component fields are populated only
    on the c = -1 contour where the real/imaginary split is defined."""

    M: object  # mpc
    M_R: object | None = None
    M_I: object | None = None
    T: tuple | None = None  # four fold values


@dataclass(frozen=True)
class BackgroundCoeff:
    """Polynomial in v multiplying t^(-2k) in the large-t expansion of fold j."""

    j: int
    k: int
    coefficients: tuple  # ascending powers of v

    def eval_at(self, v):
        return mp.polyval(list(reversed(self.coefficients)), mp.mpf(v))


@dataclass(frozen=True)
class PeakReport:
    """Feature table for the component/fold functions at one (sigma, t).

    Parallel tuples: labels/v_extrema/extreme_values/genuine describe one
    feature per entry; genuine is False for the plateau inflection and for
    fold-3/4 entries at sigma = 1/2 where those folds vanish identically.
    Half-height points, widths, zero crossings and plateau midpoints carry
    their own label tuples.
    """

    labels: tuple
    v_extrema: tuple
    extreme_values: tuple
    genuine: tuple
    half_height_labels: tuple
    half_height_points: tuple
    width_labels: tuple
    widths: tuple
    zero_labels: tuple
    zero_crossings: tuple
    midpoint_labels: tuple
    midpoints: tuple

    def feature(self, label: str):
        i = self.labels.index(label)
        return self.v_extrema[i], self.extreme_values[i]


def _sigma_t(s):
    z = mp.mpmathify(s.as_mpc() if hasattr(s, "as_mpc") else s)
    return mp.re(z), mp.im(z)


def transfer_M(c, s, v, ctx: PrecisionContext) -> TransferEval:
    """Multiplier at contour offset c, evaluation point s, real abscissa v.

    The rational form keeps c as the offset from the symmetry line -5/4 of
    the (sigma, c) region chart, which is also how the two denominator roots
    are best conditioned.
    """
    with ctx.workdps():
        c = mp.mpf(c)
        v = mp.mpf(v)
        z = mp.mpmathify(s.as_mpc() if hasattr(s, "as_mpc") else s)
        q = c + mp.mpf(5) / 4
        num = -((2 * z - 1) ** 2) / 2 + 2j * v - 2 * q
        den = -((2 * z - 1) ** 2) / 4 + 2j * (2j * v - 4 * q) * v + 4 * q**2
        if den == 0:
            raise PoleError(f"transfer multiplier pole at c={c}, s={z}, v={v}")
        M = +(num / den)
        if c != -1:
            return TransferEval(M=M)
        sigma, t = z.real, z.imag
        mr, mi = m_real_imag(sigma, t, v, ctx)
        return TransferEval(M=M, M_R=mr, M_I=mi, T=fold_functions(sigma, t, v, ctx))


def m_real_imag(sigma, t, v, ctx: PrecisionContext):
    """Real and imaginary parts of the c = -1 multiplier as explicit real
    rationals; shared denominator (t^2+4vt+sigma^2+4v^2-2 sigma+1)(t^2-4vt+sigma^2+4v^2)."""
    with ctx.workdps():
        sigma, t, v = mp.mpf(sigma), mp.mpf(t), mp.mpf(v)
        den = (t**2 + 4 * v * t + sigma**2 + 4 * v**2 - 2 * sigma + 1) * (
            t**2 - 4 * v * t + sigma**2 + 4 * v**2
        )
        if den == 0:
            raise PoleError(f"component denominator vanishes at v={v}")
        num_r = (
            8 * v**2 * (t**2 - sigma**2 + sigma)
            + 2 * t * v * (1 - 2 * sigma)
            + 2 * sigma**3 * (2 - sigma)
            - (4 * t**2 + 3) * sigma**2
            + (4 * t**2 + 1) * sigma
            - 2 * t**4
            - t**2
        )
        num_i = (
            8 * v**3
            + (-16 * sigma + 8) * t * v**2
            + (-6 * t**2 + 6 * sigma**2 - 6 * sigma + 2) * v
            + (2 * sigma - 1) * t
        )
        return +(-num_r / den), +(-num_i / den)


def fold_functions(sigma, t, v, ctx: PrecisionContext) -> tuple:
    """The four folds in partial-fraction form, the production route: each
    term exposes one complex pole v = (+-t/2 +- i sigma/2 ...) explicitly, so
    the near-peak region v ~ t/2 is evaluated without cancellation."""
    with ctx.workdps():
        sigma, t, v = mp.mpf(sigma), mp.mpf(t), mp.mpf(v)
        s1 = sigma - 1
        dm_s = (t - 2 * v) ** 2 + sigma**2
        dm_s1 = (t - 2 * v) ** 2 + s1**2
        dp_s = (t + 2 * v) ** 2 + sigma**2
        dp_s1 = (t + 2 * v) ** 2 + s1**2
        if 0 in (dm_s, dm_s1, dp_s, dp_s1):
            raise PoleError(f"fold denominator vanishes at v={v}")
        t1 = (
            (2 * sigma * v - t) / dm_s1
            + (2 * (1 - sigma) * v - t) / dm_s
            + (2 * sigma * v + t) / dp_s1
            + (2 * (1 - sigma) * v + t) / dp_s
        )
        sp = (1 - sigma) * sigma
        t2 = (
            (-t * (t - 2 * v) + sp) / dm_s
            + (-t * (t - 2 * v) + sp) / dm_s1
            + (-t * (t + 2 * v) + sp) / dp_s
            + (-t * (t + 2 * v) + sp) / dp_s1
            + 4
        )
        t3 = (
            (-t * (t - 2 * v) - sigma * s1) / dm_s1
            + (t * (t - 2 * v) + sigma * s1) / dm_s
            + (t * (t + 2 * v) + sigma * s1) / dp_s1
            + (-t * (t + 2 * v) - sigma * s1) / dp_s
        )
        t4 = (
            (-2 * v * s1 - t) / dm_s
            + (-2 * sigma * v + t) / dm_s1
            + (2 * sigma * v + t) / dp_s1
            + (2 * v * s1 - t) / dp_s
        )
        return (+t1, +t2, +t3, +t4)


def fold_functions_from_components(sigma, t, v, ctx: PrecisionContext) -> tuple:
    """Cross-check route: folds assembled directly from the component values
    at +-v.  Less well conditioned near v ~ t/2; kept independent of
    fold_functions on purpose."""
    with ctx.workdps():
        rp, ip = m_real_imag(sigma, t, v, ctx)
        rm, im_ = m_real_imag(sigma, t, -mp.mpf(v), ctx)
        return (+(-ip + im_), +(-rp - rm + 4), +(rp - rm), +(-ip - im_))


def background_coeff(j: int, k: int, sigma, ctx: PrecisionContext) -> BackgroundCoeff:
    """Polynomial in v multiplying t^(-2k) in the large-t series of fold j,
    valid for |v| < t/2.

    Only folds 1 and 2 admit this pure even-power expansion (folds 3 and 4
    carry an extra odd factor (2 sigma - 1)/t); orders k = 1..3 are tabulated,
    the first two printed, the third validated against direct series
    expansion of the partial fractions.
    """
    if j not in (1, 2) or k not in (1, 2, 3):
        raise UnsupportedCoefficientError(
            f"background coefficient only tabulated for j in (1,2), k in (1,2,3); got j={j}, k={k}"
        )
    with ctx.workdps():
        g = mp.mpf(sigma)
        zero = mp.mpf(0)
        if j == 1:
            table = {
                1: (zero, mp.mpf(-12)),
                2: (zero, 36 * g**2 - 36 * g + 16, zero, mp.mpf(-80)),
                3: (
                    zero,
                    -4 * (15 * g**4 - 30 * g**3 + 40 * g**2 - 25 * g + 6),
                    zero,
                    800 * g**2 - 800 * g + 320,
                    zero,
                    mp.mpf(-448),
                ),
            }
        else:
            table = {
                1: (mp.mpf(2), zero, mp.mpf(-16)),
                2: (
                    -6 * g**2 + 6 * g - 2,
                    zero,
                    48 * g**2 - 48 * g + 48,
                    zero,
                    mp.mpf(-64),
                ),
                3: (
                    10 * g**4 - 20 * g**3 + 20 * g**2 - 10 * g + 2,
                    zero,
                    -80 * g**4 + 160 * g**3 - 480 * g**2 + 400 * g - 120,
                    zero,
                    640 * g**2 - 640 * g + 480,
                    zero,
                    mp.mpf(-256),
                ),
            }
        return BackgroundCoeff(j=j, k=k, coefficients=tuple(+c for c in table[k]))


def background_series(j: int, sigma, t, v, ctx: PrecisionContext, orders=(1, 2, 3)):
    """Partial background sum  sum_k poly_jk(v) t^(-2k) over the given orders."""
    with ctx.workdps():
        t = mp.mpf(t)
        total = mp.mpf(0)
        for k in orders:
            total += background_coeff(j, k, sigma, ctx).eval_at(v) * t ** (-2 * k)
        return +total


# ---------------------------------------------------------------------------
# peak geometry


def _require_peak_domain(sigma, t):
    if not (0 < sigma < 1):
        raise DomainError(f"peak analytics needs 0 < sigma < 1, got {sigma}")
    if not t > 10:
        raise DomainError(f"peak analytics needs t > 10, got {t}")


def peak_analytics(sigma, t, ctx: PrecisionContext | None = None) -> PeakReport:
    """Closed-form feature table, first order in 1/t.

    Component entries (imag_*/real_*) describe the two multiplier components;
    fold entries describe folds 1..4.  real_center marks the plateau
    inflection near v = 0, which is not an extremum; fold-3/4 entries at
    sigma = 1/2 describe identically vanishing functions.  Values in the
    fold-3/4 slots change min/max roles with the sign of sigma - 1/2.
    """
    dps = ctx.digits if ctx is not None else mp.mp.dps
    with mp.workdps(dps):
        g = mp.mpf(sigma)
        t = mp.mpf(t)
        _require_peak_domain(g, t)
        half = t / 2
        gg = g * (1 - g)
        degenerate = g == mp.mpf("0.5")

        # fold extreme magnitudes; left slot takes -Q, right slot +Q
        q2 = t * (-4 * gg * (2 * g - 1) ** 2 + 2) / (
            gg * (4 * g**2 + 1) * (4 * (1 - g) ** 2 + 1)
        )
        q3 = 2 * t * (g - mp.mpf("0.5")) / (
            g * (g**2 - 2 * g + 2) * (1 - g) * (g**2 + 1)
        )
        f4_center = 2 * t * (g - mp.mpf("0.5")) / gg
        f4_flank = -2 * t * (g - mp.mpf("0.5")) / (1 + 2 * mp.sqrt(gg))
        f4_off = mp.sqrt(gg + mp.sqrt(gg)) / 2

        h1_off = mp.sqrt(
            -2 - 8 * g**2 + 2 * mp.sqrt(4 * g * (g - 1) * (5 * g**2 - 5 * g + 2) + 1) + 8 * g
        ) / 4
        h4_off = mp.sqrt(-2 + 2 * mp.sqrt(4 * (g - 1) ** 2 * g**2 + 1)) / 4

        # component feature values, first order in 1/t
        mr_hi = t / (2 * g)
        mr_c0 = (mp.mpf("0.5") - g) / g
        mr_c2 = (2 * g**2 - 2 * g + 1) / (4 * g * t)
        mr_lo = t / (2 * (1 - g))
        mr_d0 = (mp.mpf("0.5") - g) / (1 - g)
        mr_d2 = (2 * g**2 - 2 * g + 1) / (4 * (1 - g) * t)

        labels = (
            "imag_right_peak",
            "imag_left_peak",
            "real_outer_right",
            "real_inner_right",
            "real_center",
            "real_inner_left",
            "real_outer_left",
            "fold1_dip",
            "fold2_left",
            "fold2_right",
            "fold3_left",
            "fold3_right",
            "fold4_center",
            "fold4_left",
            "fold4_right",
        )
        v_extrema = (
            half,
            -half,
            half + g / 2 - gg / (2 * t),
            half - g / 2 - gg / (2 * t),
            (mp.mpf("0.5") - g) / (4 * t),
            -half + (1 - g) / 2 + gg / (2 * t),
            -half - (1 - g) / 2 + gg / (2 * t),
            half,
            half - gg,
            half + gg,
            half - gg / 2,
            half + gg / 2,
            half,
            half - f4_off,
            half + f4_off,
        )
        extreme_values = (
            t / g,
            -t / (1 - g),
            -mr_hi - mr_c0 - mr_c2,
            mr_hi - mr_c0 + mr_c2,
            mp.mpf(2),
            mr_lo + mr_d0 + mr_d2,
            -mr_lo + mr_d0 - mr_d2,
            t / (g * (g - 1)) + 3 / (4 * t),
            -q2,
            q2,
            -q3,
            q3,
            f4_center,
            f4_flank,
            f4_flank,
        )
        genuine = tuple(
            not (
                lab == "real_center"
                or (degenerate and lab.startswith(("fold3", "fold4")))
            )
            for lab in labels
        )
        return PeakReport(
            labels=labels,
            v_extrema=tuple(+x for x in v_extrema),
            extreme_values=tuple(+x for x in extreme_values),
            genuine=genuine,
            half_height_labels=(
                "imag_half_lo",
                "imag_half_hi",
                "fold1_half_lo",
                "fold1_half_hi",
                "fold4_half_lo",
                "fold4_half_hi",
            ),
            half_height_points=(
                +(half - g / 2),
                +(half + g / 2),
                +(half - h1_off),
                +(half + h1_off),
                +(half - h4_off),
                +(half + h4_off),
            ),
            width_labels=("imag_width", "fold1_width", "fold4_width"),
            widths=(+g, +(2 * h1_off), +(2 * h4_off)),
            zero_labels=("fold4_zero_lo", "fold4_zero_hi"),
            zero_crossings=(
                +(half - mp.sqrt(gg) / 2),
                +(half + mp.sqrt(gg) / 2),
            ),
            midpoint_labels=("real_mid_right", "real_mid_left"),
            midpoints=(
                +(half + 3 * (g - 1) ** 2 / (4 * t)),
                +(-half - 3 * g**2 / (4 * t)),
            ),
        )


def _scan_then_refine(f, center, radius, minimize, ctx, n_grid=1201):
    """Dense grid scan on [center-radius, center+radius], then golden-section
    refinement on a two-grid-step bracket around the grid extremum."""
    center, radius = mp.mpf(center), mp.mpf(radius)
    step = 2 * radius / (n_grid - 1)
    best_x, best_y = None, None
    for i in range(n_grid):
        x = center - radius + i * step
        y = f(x)
        if best_y is None or ((y < best_y) if minimize else (y > best_y)):
            best_x, best_y = x, y
    lo, hi = best_x - 2 * step, best_x + 2 * step
    return find_extremum(f, Interval(lo, hi), ctx, minimize=minimize)


def peak_numeric(sigma, t, ctx: PrecisionContext, n_grid=1201) -> PeakReport:
    """Direct extremization of the exact component/fold rationals; the oracle
    against which peak_analytics is judged.

    Scan radii derive from the closed-form feature spacing, so each bracket
    isolates one extremum; entries that are not genuine extrema (plateau
    inflection, identically-zero folds at sigma = 1/2) keep their predicted
    abscissae with the exact function value there.
    """
    predicted = peak_analytics(sigma, t, ctx)
    with ctx.workdps():
        g = mp.mpf(sigma)
        t = mp.mpf(t)

        def mr(v):
            return m_real_imag(g, t, v, ctx)[0]

        def mi(v):
            return m_real_imag(g, t, v, ctx)[1]

        def fold(j):
            return lambda v: fold_functions(g, t, v, ctx)[j - 1]

        func_for = {
            "imag": mi,
            "real": mr,
            "fold1": fold(1),
            "fold2": fold(2),
            "fold3": fold(3),
            "fold4": fold(4),
        }
        plateau = {"real": mp.mpf(2)}

        # scan radius per label: a fraction of the gap to the nearest
        # same-function feature, so each bracket holds a single extremum
        by_func: dict = {}
        for lab, x in zip(predicted.labels, predicted.v_extrema):
            by_func.setdefault(lab.split("_")[0], []).append(x)
        radii = {}
        for lab, x in zip(predicted.labels, predicted.v_extrema):
            fam = lab.split("_")[0]
            gaps = [abs(x - other) for other in by_func[fam] if other != x]
            nearest = min(gaps) if gaps else mp.mpf(1)
            radii[lab] = max(min(mp.mpf("0.4") * nearest, mp.mpf(2)), mp.mpf("1e-3"))
        # the two imaginary peaks sit a full t apart; their real scale is the
        # half-height width
        radii["imag_right_peak"] = radii["imag_left_peak"] = g

        v_out, val_out, genuine_out = [], [], []
        for lab, x_pred, y_pred, gen in zip(
            predicted.labels,
            predicted.v_extrema,
            predicted.extreme_values,
            predicted.genuine,
        ):
            fam = lab.split("_")[0]
            f = func_for[fam]
            if not gen:
                v_out.append(+mp.mpf(x_pred))
                val_out.append(+f(x_pred))
                genuine_out.append(False)
                continue
            minimize = y_pred < plateau.get(fam, mp.mpf(0))
            x_num, y_num = _scan_then_refine(
                f, x_pred, radii[lab], minimize, ctx, n_grid
            )
            v_out.append(+x_num)
            val_out.append(+y_num)
            genuine_out.append(True)

        # half heights: roots of f - extreme/2 on each side of the peak
        halves = []
        for lab_half, (lab_peak, width_hint) in {
            "imag_half_lo": ("imag_right_peak", g),
            "imag_half_hi": ("imag_right_peak", g),
            "fold1_half_lo": ("fold1_dip", predicted.widths[1]),
            "fold1_half_hi": ("fold1_dip", predicted.widths[1]),
            "fold4_half_lo": ("fold4_center", predicted.widths[2]),
            "fold4_half_hi": ("fold4_center", predicted.widths[2]),
        }.items():
            i = predicted.labels.index(lab_peak)
            fam = lab_peak.split("_")[0]
            f = func_for[fam]
            x_peak, y_peak = v_out[i], val_out[i]
            target = y_peak / 2
            side = -1 if lab_half.endswith("_lo") else 1
            a, b = sorted((x_peak, x_peak + side * 2 * mp.mpf(width_hint)))
            root = find_root(lambda v: f(v) - target, Interval(a, b), ctx)
            halves.append(+root)
        widths = (
            +(halves[1] - halves[0]),
            +(halves[3] - halves[2]),
            +(halves[5] - halves[4]),
        )
        # reorder widths to the analytic label order (imag, fold1, fold4)
        width_vals = (widths[0], widths[1], widths[2])

        # fold-4 zero crossings bracket between the central extremum and the
        # flanking ones
        zeros = []
        if predicted.genuine[predicted.labels.index("fold4_center")]:
            f4 = func_for["fold4"]
            xc = v_out[predicted.labels.index("fold4_center")]
            xl = v_out[predicted.labels.index("fold4_left")]
            xr = v_out[predicted.labels.index("fold4_right")]
            zeros.append(+find_root(f4, Interval(xl, xc), ctx))
            zeros.append(+find_root(f4, Interval(xc, xr), ctx))
        else:
            zeros = [mp.nan, mp.nan]

        # plateau midpoints: zeros of the real component between the paired
        # extrema on each side
        x1 = v_out[predicted.labels.index("real_outer_right")]
        x2 = v_out[predicted.labels.index("real_inner_right")]
        x4 = v_out[predicted.labels.index("real_inner_left")]
        x5 = v_out[predicted.labels.index("real_outer_left")]
        mid_r = find_root(mr, Interval(min(x1, x2), max(x1, x2)), ctx)
        mid_l = find_root(mr, Interval(min(x4, x5), max(x4, x5)), ctx)

        return PeakReport(
            labels=predicted.labels,
            v_extrema=tuple(v_out),
            extreme_values=tuple(val_out),
            genuine=tuple(genuine_out),
            half_height_labels=predicted.half_height_labels,
            half_height_points=tuple(halves),
            width_labels=predicted.width_labels,
            widths=width_vals,
            zero_labels=predicted.zero_labels,
            zero_crossings=tuple(zeros),
            midpoint_labels=predicted.midpoint_labels,
            midpoints=(+mid_r, +mid_l),
        )
