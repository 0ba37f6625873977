import random

import mpmath as mp
import pytest

from xieq.errors import DomainError, PoleError, UnsupportedCoefficientError
from xieq.numerics import PrecisionContext
from xieq import transfer

CTX = PrecisionContext(30)


@pytest.fixture(scope="module")
def peak_pair():
    """Closed-form and numeric feature tables at the reference point."""
    with mp.workdps(40):
        sig = mp.mpf(1) / 3
        return (
            transfer.peak_analytics(sig, 2000, CTX),
            transfer.peak_numeric(sig, 2000, CTX),
        )


def rel(a, b):
    return abs(a - b) / max(abs(b), mp.mpf("1e-30"))


class TestTransferEval:
    def test_components_recombine(self):
        s = mp.mpc("0.3", "17")
        ev = transfer.transfer_M(-1, s, mp.mpf("2.5"), CTX)
        assert abs(ev.M - (ev.M_R + 1j * ev.M_I)) < 10 * CTX.epsilon

    def test_general_offset_has_no_components(self):
        ev = transfer.transfer_M(-2, mp.mpc("0.3", "17"), 1, CTX)
        assert ev.M_R is None and ev.T is None
        # independent two-term rational route at c=-1
        s, v = mp.mpc("0.4", "9"), mp.mpf("1.2")
        two_term = -(2 * s - 1) * s / ((2j * v - 1 + s) * (2j * v - s)) + 1 / (
            2j * v - s
        )
        ev1 = transfer.transfer_M(-1, s, v, CTX)
        assert abs(ev1.M - two_term) < mp.mpf("1e-27")

    def test_pole_raises(self):
        # denominator root is real in v exactly when c sits on the lower
        # boundary line c = sigma/2 - 3/2, at v = -t/2; all inputs dyadic so
        # the cancellation is exact
        with pytest.raises(PoleError):
            transfer.transfer_M(-1.25, mp.mpc(0.5, 10), -5, CTX)


class TestFoldEquivalence:
    def test_partial_fractions_match_definitions_on_grid(self):
        # the definition route loses ~log10(t^2/sigma^2) digits near v ~ t/2,
        # so both routes run with guard digits and are compared at the
        # nominal precision
        rng = random.Random(20240817)
        guarded = PrecisionContext(45)
        with mp.workdps(50):
            for _ in range(1000):
                sig = mp.mpf(rng.uniform(0.05, 0.95))
                t = mp.mpf(rng.uniform(1, 300))
                v = mp.mpf(rng.uniform(-200, 200))
                a = transfer.fold_functions(sig, t, v, guarded)
                b = transfer.fold_functions_from_components(sig, t, v, guarded)
                scale = max(max(abs(x) for x in a), mp.mpf(1))
                for x, y in zip(a, b):
                    assert abs(x - y) <= 10 * CTX.epsilon * scale

    def test_component_symmetries(self):
        sig, t, v = mp.mpf("0.3"), mp.mpf(17), mp.mpf("2.5")
        r1, i1 = transfer.m_real_imag(sig, t, v, CTX)
        r2, i2 = transfer.m_real_imag(1 - sig, t, -v, CTX)
        assert abs(r1 - r2) < mp.mpf("1e-27")
        assert abs(i1 + i2) < mp.mpf("1e-27")

    def test_fold_symmetries(self):
        sig, t, v = mp.mpf("0.2"), mp.mpf(31), mp.mpf("4.7")
        a = transfer.fold_functions(sig, t, v, CTX)
        b = transfer.fold_functions(1 - sig, t, v, CTX)
        assert abs(a[0] - b[0]) < mp.mpf("1e-27")
        assert abs(a[1] - b[1]) < mp.mpf("1e-27")
        assert abs(a[2] + b[2]) < mp.mpf("1e-27")
        assert abs(a[3] + b[3]) < mp.mpf("1e-27")

    def test_odd_folds_vanish_on_critical_line(self):
        for t, v in ((13, 1.5), (200, 99.0), (51, -7.25)):
            folds = transfer.fold_functions(mp.mpf("0.5"), t, v, CTX)
            assert folds[2] == 0
            assert folds[3] == 0


class TestBackground:
    def test_printed_low_order_coefficients(self):
        sig = mp.mpf("0.37")
        c11 = transfer.background_coeff(1, 1, sig, CTX)
        assert c11.coefficients == (0, -12)
        c21 = transfer.background_coeff(2, 1, sig, CTX)
        assert c21.coefficients == (2, 0, -16)
        v = mp.mpf("1.3")
        c12 = transfer.background_coeff(1, 2, sig, CTX)
        assert abs(
            c12.eval_at(v) - 4 * v * (9 * sig**2 - 20 * v**2 - 9 * sig + 4)
        ) < mp.mpf("1e-27")
        c22 = transfer.background_coeff(2, 2, sig, CTX)
        assert abs(
            c22.eval_at(v)
            - (-64 * v**4 + (48 * sig**2 - 48 * sig + 48) * v**2 - 6 * sig**2 + 6 * sig - 2)
        ) < mp.mpf("1e-27")

    def test_leading_residual_order(self):
        t = mp.mpf(10) ** 6
        folds = transfer.fold_functions(mp.mpf("0.4"), t, 1, CTX)
        assert abs(t**2 * folds[0] + 12) < mp.mpf("1e-9")

    def test_third_order_completes_series(self):
        # residual after three orders must drop to O(t^-8)
        sig, v = mp.mpf("0.4"), mp.mpf(1)
        for t in (mp.mpf(500), mp.mpf(1000)):
            folds = transfer.fold_functions(sig, t, v, CTX)
            for j in (1, 2):
                resid = abs(folds[j - 1] - transfer.background_series(j, sig, t, v, CTX))
                assert resid < 10**4 * t**-8

    @pytest.mark.parametrize("j,k", [(3, 1), (4, 2), (1, 4), (2, 0), (0, 1)])
    def test_unsupported_pairs(self, j, k):
        with pytest.raises(UnsupportedCoefficientError):
            transfer.background_coeff(j, k, 0.4, CTX)


class TestPlateau:
    def test_real_component_plateau(self):
        # at fixed v the real component approaches 2 as t grows; the residual
        # 8 v^2/t^2 means the plateau only holds for |v| well inside t/2
        t = mp.mpf(10) ** 5
        for v in (0, 5, -17, 50):
            r, _ = transfer.m_real_imag(mp.mpf("0.3"), t, v, CTX)
            assert abs(r - 2) < 100 / t


class TestPeakAnalytics:
    def test_domain_guards(self):
        with pytest.raises(DomainError):
            transfer.peak_analytics(0, 100, CTX)
        with pytest.raises(DomainError):
            transfer.peak_analytics(1.2, 100, CTX)
        with pytest.raises(DomainError):
            transfer.peak_analytics(0.5, 5, CTX)

    def test_imag_peak_characteristics(self):
        # location t/2, height t/sigma, full width sigma
        sig, t = mp.mpf("0.1"), mp.mpf(100)
        rep = transfer.peak_numeric(sig, t, CTX)
        x, y = rep.feature("imag_right_peak")
        assert rel(x, t / 2) < mp.mpf("1e-3")
        assert rel(y, t / sig) < mp.mpf("1e-3")
        w = rep.widths[rep.width_labels.index("imag_width")]
        assert rel(w, sig) < mp.mpf("1e-2")

    def test_inflection_is_flagged(self):
        rep = transfer.peak_analytics(mp.mpf("0.3"), 500, CTX)
        i = rep.labels.index("real_center")
        assert rep.genuine[i] is False
        assert all(rep.genuine[j] for j in range(len(rep.labels)) if j != i)

    def test_degenerate_folds_at_center(self):
        rep = transfer.peak_analytics(mp.mpf("0.5"), 500, CTX)
        for lab in ("fold3_left", "fold3_right", "fold4_center"):
            i = rep.labels.index(lab)
            assert rep.genuine[i] is False
            assert rep.extreme_values[i] == 0

    def test_fold_values_flip_with_sigma(self):
        lo = transfer.peak_analytics(mp.mpf("0.3"), 500, CTX)
        hi = transfer.peak_analytics(mp.mpf("0.7"), 500, CTX)
        for lab in ("fold3_left", "fold4_center"):
            a = lo.extreme_values[lo.labels.index(lab)]
            b = hi.extreme_values[hi.labels.index(lab)]
            assert abs(a + b) < mp.mpf("1e-24")


class TestPeakOracle:
    def test_dip_value_first_order(self, peak_pair):
        pred, num = peak_pair
        assert rel(*[r.feature("fold1_dip")[1] for r in (pred, num)]) < mp.mpf("1e-6")
        assert rel(*[r.feature("fold4_center")[1] for r in (pred, num)]) < mp.mpf(
            "1e-6"
        )

    def test_zero_crossings(self, peak_pair):
        pred, num = peak_pair
        for p, n in zip(pred.zero_crossings, num.zero_crossings):
            assert rel(p, n) < mp.mpf("1e-6")

    def test_locations_first_order(self, peak_pair):
        pred, num = peak_pair
        for lab, p, n in zip(pred.labels, pred.v_extrema, num.v_extrema):
            if lab.startswith(("fold2", "fold3", "fold4")):
                assert rel(p, n) < mp.mpf("1e-4"), lab

    def test_half_heights_and_widths(self, peak_pair):
        pred, num = peak_pair
        for p, n in zip(pred.half_height_points, num.half_height_points):
            assert rel(p, n) < mp.mpf("1e-6")
        for p, n in zip(pred.widths, num.widths):
            assert rel(p, n) < mp.mpf("1e-6")

    def test_plateau_midpoints_are_sign_changes(self, peak_pair):
        pred, num = peak_pair
        for p, n in zip(pred.midpoints, num.midpoints):
            assert rel(p, n) < mp.mpf("1e-6")
        # the component crosses zero steeply: slope -2t/sigma^2 at the right
        # midpoint and +2t/(1-sigma)^2 at the left one
        with mp.workdps(40):
            sig, t = mp.mpf(1) / 3, mp.mpf(2000)
            h = mp.mpf("1e-6")

            def slope_at(x):
                f = lambda v: transfer.m_real_imag(sig, t, v, CTX)[0]
                return (f(x + h) - f(x - h)) / (2 * h)

            assert rel(slope_at(num.midpoints[0]), -2 * t / sig**2) < mp.mpf("0.01")
            assert rel(slope_at(num.midpoints[1]), 2 * t / (1 - sig) ** 2) < mp.mpf(
                "0.01"
            )
