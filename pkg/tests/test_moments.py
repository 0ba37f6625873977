import mpmath as mp
import pytest

from xieq import PrecisionContext
from xieq.errors import DomainError
from xieq.moments import (
    DualValue,
    cancellation_check,
    moment_table,
    romik_sum,
    theta_line_identity,
    upsilon_moment,
)

CTX24 = PrecisionContext(24)
CTX40 = PrecisionContext(40)


def gamma34():
    return mp.gamma(mp.mpf(3) / 4)


@pytest.fixture(scope="module")
def sums40():
    return {m: romik_sum(m, CTX40) for m in range(1, 8)}


@pytest.fixture(scope="module")
def moments40():
    return {n: upsilon_moment(n, CTX40) for n in range(1, 8)}


class TestLatticeSums:
    def test_first_sum_closed_form(self, sums40):
        target = 1 / (8 * mp.pi ** (mp.mpf(3) / 4) * gamma34())
        assert abs(sums40[1].closed - target) < mp.mpf("1e-38")
        assert mp.mpf("0.0432278") < sums40[1].closed < mp.mpf("0.0432279")

    def test_second_sum_closed_form(self, sums40):
        target = (3 + mp.pi**4 / (2 * gamma34() ** 8)) / (
            32 * mp.pi ** (mp.mpf(7) / 4) * gamma34()
        )
        assert abs(sums40[2].closed - target) < mp.mpf("1e-38")

    def test_all_sums_match_series(self, sums40):
        for m, dual in sums40.items():
            assert dual.rel_error < mp.mpf("1e-40"), m

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            romik_sum(0, CTX24)
        with pytest.raises(IndexError):
            romik_sum(8, CTX24)


class TestAxisMoments:
    def test_first_moment_closed_form(self, moments40):
        target = -mp.pi / 4 * (mp.pi ** (mp.mpf(1) / 4) / (2 * gamma34()) - 1)
        assert abs(moments40[1].closed - target) < mp.mpf("1e-38")

    def test_second_moment_closed_form(self, moments40):
        target = (
            mp.pi / 8
            + mp.pi ** (mp.mpf(5) / 4) / (32 * gamma34())
            - mp.pi ** (mp.mpf(21) / 4) / (64 * gamma34() ** 9)
        )
        assert abs(moments40[2].closed - target) < mp.mpf("1e-38")

    def test_all_moments_match_quadrature(self, moments40):
        for n, dual in moments40.items():
            assert dual.rel_error < mp.mpf("1e-30"), n
            assert dual.direct_error < mp.mpf("1e-40"), n

    def test_signs_alternate(self, moments40):
        # odd moments (Upsilon_I weight) positive, even ones negative except
        # none -- the measured pattern of the first seven
        signs = [mp.sign(moments40[n].closed) for n in range(1, 8)]
        assert signs == [1, -1, 1, -1, 1, -1, 1]

    def test_tightening_tolerance_stays_within_estimate(self):
        loose = upsilon_moment(3, CTX24, tol=mp.mpf("1e-20"))
        tight = upsilon_moment(3, CTX24, tol=mp.mpf("1e-26"))
        assert abs(loose.direct - tight.direct) <= loose.direct_error + mp.mpf("1e-30")

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            upsilon_moment(0, CTX24)
        with pytest.raises(IndexError):
            upsilon_moment(8, CTX24)


class TestMomentTable:
    def test_matches_dual_values(self, sums40, moments40):
        table = moment_table(CTX40)
        assert table.digits == 40
        for m in range(1, 8):
            # table stores the signed convention (-1)^m
            assert table.sums[m - 1] == (-1) ** m * sums40[m].closed
        for n in range(1, 8):
            assert table.moments[n - 1] == moments40[n].closed

    def test_substitution_gives_epsilon_zero(self):
        # the 1/t^2 combination evaluated straight from the rounded table
        table = moment_table(CTX40)
        m1, m2, m3 = table.moments[0], table.moments[1], table.moments[2]
        resid = -12 * m2 - 16 * m3 + 2 * m1
        assert abs(resid) < mp.mpf(10) ** (-CTX40.digits + 3)


class TestCancellation:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_both_routes_vanish(self, k):
        report = cancellation_check(k, CTX40)
        assert report.passed
        assert report.identity_id == f"moment-cancellation-{k}"
        # quadrature route (lhs) and exact-fraction route (rhs) separately
        assert abs(report.lhs) < mp.mpf("1e-20")
        assert report.rhs == 0

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            cancellation_check(4, CTX24)


class TestThetaLineIdentity:
    def test_axis_form_at_pi(self):
        report = theta_line_identity(mp.pi, True, CTX40)
        assert report.passed
        assert report.abs_residual < mp.mpf("1e-20")
        series = mp.nsum(lambda n: mp.exp(-mp.pi * n * n), [1, mp.inf])
        assert abs(report.rhs - mp.pi * (2 * series - mp.mpf(1) / 2)) < mp.mpf("1e-30")

    def test_axis_form_off_pi(self):
        assert theta_line_identity(2 * mp.pi, True, CTX24).passed

    def test_high_line_form(self):
        report = theta_line_identity(mp.pi, False, CTX24)
        assert report.passed
        series = mp.nsum(lambda n: mp.exp(-mp.pi * n * n), [1, mp.inf])
        assert abs(report.rhs - 4 * mp.pi * series) < mp.mpf("1e-20")

    def test_high_line_other_scale(self):
        assert theta_line_identity(2, False, CTX24).passed

    def test_rejects_nonpositive_scale(self):
        with pytest.raises(DomainError):
            theta_line_identity(0, True, CTX24)

    def test_derivatives_recover_sums(self, sums40):
        # x-derivatives of the theta-series side at x = pi are exactly the
        # tabulated lattice-sum combinations
        def theta_side(x):
            series = mp.nsum(lambda n: mp.exp(-n * n * x), [1, mp.inf])
            return mp.pi * (2 * series - mp.sqrt(mp.pi / x) + mp.mpf(1) / 2)

        d1 = mp.diff(theta_side, mp.pi, 1)
        d2 = mp.diff(theta_side, mp.pi, 2)
        target1 = -2 * mp.pi * sums40[1].closed + mp.mpf(1) / 2
        target2 = 2 * mp.pi * sums40[2].closed - 3 / (4 * mp.pi)
        assert abs(d1 - target1) < mp.mpf("1e-15")
        assert abs(d2 - target2) < mp.mpf("1e-15")


class TestDualValue:
    def test_rejects_negative_errors(self):
        with pytest.raises(DomainError):
            DualValue(
                closed=mp.mpf(1),
                direct=mp.mpf(1),
                rel_error=mp.mpf(-1),
                direct_error=mp.mpf(0),
            )
