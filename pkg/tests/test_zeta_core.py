import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from xieq.errors import PoleError, ZeroArgumentError
from xieq.numerics import PrecisionContext
from xieq.zeta_core import (
    PointS,
    leclair_xi,
    phases,
    point,
    romik_constant,
    upsilon,
    xi,
)

CTX = PrecisionContext(30)
CTX40 = PrecisionContext(40)

# frozen cross-package reference values; parsed above ambient precision so
# the literals keep all their digits
with mp.workdps(60):
    XI_HALF = +mp.mpf("0.497120778188314109912773739685")
    XI_THIRD_50 = +mp.mpc(
        "3.383612271166121317182403452764054190189e-15",
        "2.04833539239716116837509174384549773036e-15",
    )
    ROMIK_C = +mp.mpf("0.543217405606654007287658060755")


class TestPointS:
    def test_as_mpc(self):
        assert PointS(0.5, 14).as_mpc() == mp.mpc(0.5, 14)

    def test_point_coercion(self):
        assert point(PointS(1, 2)) == point(mp.mpc(1, 2)) == point(1 + 2j)


class TestRomikConstant:
    def test_closed_form_value(self):
        assert abs(romik_constant(CTX) - ROMIK_C) < mp.mpf("1e-29")

    def test_matches_theta_series(self):
        with CTX.workdps():
            series = 4 * mp.pi * mp.nsum(
                lambda n: n**2 * mp.e ** (-mp.pi * n**2), [1, mp.inf]
            )
        assert abs(romik_constant(CTX) - series) < mp.mpf("1e-28")


class TestXi:
    def test_central_value(self):
        assert abs(xi(PointS(0.5, 0), CTX) - XI_HALF) < mp.mpf("1e-28")

    def test_high_point_reference(self):
        v = xi(PointS(mp.mpf(1) / 3, 50), CTX40)
        assert abs(v - XI_THIRD_50) < mp.mpf("1e-50")

    def test_s_equals_one_limit(self):
        v = xi(1, CTX)
        assert abs(v - mp.pi ** mp.mpf("-0.5") * mp.gamma(mp.mpf("1.5"))) < mp.mpf(
            "1e-28"
        )
        assert abs(v - mp.mpf("0.5")) < mp.mpf("1e-28")

    def test_trivial_zero_points_finite(self):
        # even nonpositive integers pit zeta zeros against gamma poles
        for n in (0, -2, -4):
            v = xi(n, CTX)
            assert mp.isfinite(v.real) and abs(v) > 0

    @given(st.floats(0.05, 0.95), st.floats(-20, 20))
    @settings(max_examples=15, deadline=None)
    def test_functional_symmetry(self, sigma, t):
        s = mp.mpc(sigma, t)
        a, b = xi(s, CTX), xi(1 - s, CTX)
        assert abs(a - b) <= mp.mpf("1e-25") * max(abs(a), 1)


class TestUpsilon:
    def test_relation_to_xi(self):
        s = mp.mpc("0.3", "7")
        lhs = upsilon(s, CTX)
        rhs = 2 * xi(s, CTX) / (s * (s - 1))
        assert abs(lhs - rhs) < mp.mpf("1e-26")

    @pytest.mark.parametrize("s", [0, 1, -2, -6])
    def test_poles_raise(self, s):
        with pytest.raises(PoleError):
            upsilon(s, CTX)

    def test_symmetry(self):
        s = mp.mpc("0.2", "11")
        assert abs(upsilon(s, CTX) - upsilon(1 - s, CTX)) < mp.mpf("1e-24")


class TestPhases:
    def test_alpha_is_principal_arg(self):
        b = phases(PointS(0.5, 14), CTX)
        assert abs(b.alpha - mp.arg(mp.zeta(mp.mpc(0.5, 14)))) < mp.mpf("1e-27")
        assert abs(b.alpha) <= mp.pi

    def test_phi_is_arg_upsilon_mod_2pi(self):
        s = PointS(0.3, 9)
        b = phases(s, CTX)
        target = mp.arg(upsilon(s, CTX))
        diff = (b.phi - target) / (2 * mp.pi)
        assert abs(diff - mp.nint(diff)) < mp.mpf("1e-26")

    def test_omega_continuous_in_t(self):
        # principal-arg versions would jump by 2 pi somewhere on this walk
        vals = [phases(PointS(0.4, t), CTX).omega for t in mp.arange(20, 30, 0.5)]
        steps = [abs(b - a) for a, b in zip(vals, vals[1:])]
        assert max(steps) < 1

    def test_alpha_beta_quadrature_at_zero(self):
        # at an actual zeta zero the arguments differ by +- pi/2
        t_zero = mp.findroot(lambda t: mp.siegelz(t), 14.13)
        eps = mp.mpf("1e-9")
        b = phases(PointS(0.5, t_zero + eps), CTX)
        d = abs(b.alpha - b.beta)
        assert abs(d - mp.pi / 2) < mp.mpf("1e-3")

    def test_t_zero_pole(self):
        with pytest.raises(PoleError):
            phases(PointS(0.3, 0), CTX)


class TestLeclairSeries:
    def test_matches_xi_low_point(self):
        s = PointS(0.5, 3)
        assert abs(leclair_xi(s, 8, CTX) - xi(s, CTX)) < mp.mpf("1e-26")

    def test_matches_xi_off_line(self):
        s = PointS(0.25, 6)
        assert abs(leclair_xi(s, 8, CTX) - xi(s, CTX)) < mp.mpf("1e-25")

    def test_term_count_validation(self):
        with pytest.raises(ValueError):
            leclair_xi(PointS(0.5, 1), 0, CTX)

    def test_truncation_converges_fast(self):
        s = PointS(0.4, 2)
        few = leclair_xi(s, 3, CTX)
        many = leclair_xi(s, 9, CTX)
        assert abs(few - many) < mp.mpf("1e-12")
