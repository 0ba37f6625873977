import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from xieq import special
from xieq.errors import DomainError, PoleError
from xieq.numerics import PrecisionContext

CTX = PrecisionContext(30)


class TestGammaFamily:
    def test_log_gamma_principal_branch(self):
        v = special.log_gamma(mp.mpc(0.5, 10), CTX)
        assert abs(mp.e**v - mp.gamma(mp.mpc(0.5, 10))) < mp.mpf("1e-25")

    def test_log_gamma_imag_part_continuous(self):
        # arg Gamma(1/2 + it) winds past pi around t ~ 4; Im log Gamma must not jump
        lo = special.log_gamma(mp.mpc(0.5, 3.9), CTX).imag
        hi = special.log_gamma(mp.mpc(0.5, 4.1), CTX).imag
        assert abs(hi - lo) < 1

    @pytest.mark.parametrize("z", [0, -1, -2, -7])
    def test_poles_raise(self, z):
        for fn in (special.log_gamma, special.gamma, special.digamma):
            with pytest.raises(PoleError):
                fn(z, CTX)

    def test_digamma_value(self):
        euler = special.digamma(1, CTX)
        assert abs(euler + mp.euler) < mp.mpf("1e-28")


class TestZeta:
    def test_basel(self):
        assert abs(special.zeta(2, CTX) - mp.pi**2 / 6) < mp.mpf("1e-28")

    def test_pole_raises(self):
        with pytest.raises(PoleError):
            special.zeta(1, CTX)
        with pytest.raises(PoleError):
            special.zeta_prime(1, CTX)

    def test_derivative_at_zero(self):
        # zeta'(0) = -log(2 pi)/2
        v = special.zeta_prime(0, CTX)
        assert abs(v + mp.log(2 * mp.pi) / 2) < mp.mpf("1e-27")


class TestExpIntegral:
    def test_known_e1(self):
        # E_1(1) = 0.21938393439552027368...
        v = special.exp_integral_E(1, 1, CTX)
        assert abs(v - mp.e1(1)) < mp.mpf("1e-28")

    def test_rejects_left_half_plane(self):
        with pytest.raises(DomainError):
            special.exp_integral_E(2, -1, CTX)
        with pytest.raises(DomainError):
            special.exp_integral_E_quad(2, mp.mpc(0, 3), CTX)

    def test_two_routes_agree_complex_order(self):
        s = mp.mpc(-0.25, 1.5)
        z = mp.mpf(3)
        closed = special.exp_integral_E(s, z, CTX)
        quad = special.exp_integral_E_quad(s, z, CTX)
        assert abs(closed - quad.value) < mp.mpf("1e-20")

    @given(st.floats(-2, 2), st.floats(0.5, 6))
    @settings(max_examples=10, deadline=None)
    def test_routes_agree_real_orders(self, s, z):
        closed = special.exp_integral_E(s, z, CTX)
        quad = special.exp_integral_E_quad(s, z, CTX)
        assert abs(closed - quad.value) < mp.mpf("1e-18")

    def test_recurrence(self):
        # E_{s+1}(z) = (e^-z - z E_s(z)) / s
        s, z = mp.mpf(2), mp.mpf("1.7")
        lhs = special.exp_integral_E(s + 1, z, CTX)
        rhs = (mp.e**-z - z * special.exp_integral_E(s, z, CTX)) / s
        assert abs(lhs - rhs) < mp.mpf("1e-27")
