"""Composite zeta objects: the entire completion xi, the symmetric completion
Upsilon, the six phase functions, and an independent series representation of
xi used for cross-checks.

Conventions
-----------
xi(s)      = (s-1) pi^(-s/2) zeta(s) Gamma(1+s/2), entire, xi(s)=xi(1-s).
Upsilon(s) = zeta(s) Gamma(s/2) pi^(-s/2) = 2 xi(s)/(s(s-1)), poles at 0 and 1.
Phases: alpha and beta are principal arguments of zeta and zeta'; Phi and
omega take their Gamma part from the continuous Im log Gamma, so only the
zeta factor can introduce branch jumps.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from . import special
from .errors import PoleError, ZeroArgumentError
from .numerics import PrecisionContext

__all__ = [
    "PointS",
    "PhaseBundle",
    "point",
    "xi",
    "upsilon",
    "phases",
    "leclair_xi",
    "romik_constant",
]


@dataclass(frozen=True)
class PointS:
    """Evaluation point s = sigma + i t.  The strip constraint 0<=sigma<=1 is
    enforced by operations that need it, not by the type."""

    sigma: float
    t: float

    def as_mpc(self) -> mp.mpc:
        return mp.mpc(mp.mpf(self.sigma), mp.mpf(self.t))


@dataclass(frozen=True)
class PhaseBundle:
    phi: object  # arg zeta(s) + arg Gamma(s/2) - (t/2) log pi
    theta_v: object  # arg Gamma(3/2+iv) + arg zeta(1+2iv) - v log pi, v = t
    Phi_t: object  # arg zeta(it) + Im log Gamma(it/2) - (t/2) log pi
    alpha: object  # principal arg zeta(1/2+it)
    beta: object  # principal arg zeta'(1/2+it)
    omega: object  # Im log Gamma(sigma/2+it/2) - (t/2) log pi


def point(s) -> mp.mpc:
    """Coerce PointS / complex / mpc to mpc."""
    if isinstance(s, PointS):
        return s.as_mpc()
    return mp.mpc(mp.mpmathify(s))


def romik_constant(ctx: PrecisionContext):
    """The theta-sum constant 4 pi Sum n^2 e^(-pi n^2) = pi^(1/4)/(2 Gamma(3/4)),
    the value of the line operator at full strength."""
    with ctx.workdps():
        return +(mp.pi ** mp.mpf("0.25") / (2 * mp.gamma(mp.mpf(3) / 4)))


def xi(s, ctx: PrecisionContext):
    """Entire completion (s-1) pi^(-s/2) zeta(s) Gamma(1+s/2).

    The (s-1) zeta(s) product at s=1 is taken by its limit (=1); exact
    nonpositive even integers route through the reflection xi(s)=xi(1-s) to
    dodge the 0 * inf of zeta's trivial zeros against Gamma poles.
    """
    with ctx.workdps():
        z = point(s)
        if z.imag == 0 and z.real <= 0:
            x = z.real
            if x == mp.floor(x) and mp.floor(x) % 2 == 0:
                z = 1 - z  # reflection; now a positive odd integer
        if z == 1:
            return +mp.mpc(mp.pi ** (-z / 2) * mp.gamma(1 + z / 2))
        return +((z - 1) * mp.pi ** (-z / 2) * mp.zeta(z) * mp.gamma(1 + z / 2))


def upsilon(s, ctx: PrecisionContext):
    """Symmetric completion zeta(s) Gamma(s/2) pi^(-s/2); Upsilon(s)=Upsilon(1-s)."""
    with ctx.workdps():
        z = point(s)
        if z == 0 or z == 1:
            raise PoleError(f"upsilon pole at s = {z}")
        if z.imag == 0 and z.real < 0:
            x = z.real
            if x == mp.floor(x) and mp.floor(x) % 2 == 0:
                raise PoleError(f"upsilon gamma-factor pole at s = {z}")
        return +(mp.zeta(z) * mp.gamma(z / 2) * mp.pi ** (-z / 2))


def _principal_arg(w, what: str):
    if w == 0:
        raise ZeroArgumentError(f"argument of exact zero requested for {what}")
    return mp.arg(w)


def phases(s, ctx: PrecisionContext) -> PhaseBundle:
    """All six phase functions at s = sigma + i t.

    alpha/beta need zeta(1/2+it) and zeta'(1/2+it) nonzero; an exact zero
    raises rather than defaulting, because every downstream use (the zero
    predictor) works with cos Phi instead.
    """
    with ctx.workdps():
        z = point(s)
        sigma, t = z.real, z.imag
        if t == 0:
            raise PoleError("phases undefined at t = 0 (zeta(1) and Gamma(0) poles)")
        logpi = mp.log(mp.pi)

        phi = (
            _principal_arg(mp.zeta(z), "zeta(s)")
            + mp.arg(mp.gamma(z / 2))
            - t / 2 * logpi
        )
        theta_v = (
            mp.im(mp.loggamma(mp.mpc(1.5, t)))
            + _principal_arg(mp.zeta(mp.mpc(1, 2 * t)), "zeta(1+2iv)")
            - t * logpi
        )
        Phi_t = (
            _principal_arg(mp.zeta(mp.mpc(0, t)), "zeta(it)")
            + mp.im(mp.loggamma(mp.mpc(0, t) / 2))
            - t / 2 * logpi
        )
        half = mp.mpc(mp.mpf("0.5"), t)
        alpha = _principal_arg(mp.zeta(half), "zeta(1/2+it)")
        beta = _principal_arg(mp.zeta(half, derivative=1), "zeta'(1/2+it)")
        omega = mp.im(mp.loggamma(mp.mpc(sigma, t) / 2)) - t / 2 * logpi
        return PhaseBundle(+phi, +theta_v, +Phi_t, +alpha, +beta, +omega)


def leclair_xi(s, n_terms: int, ctx: PrecisionContext):
    """Series route to xi(s): pi(s-1) Sum n^2 E_{-s/2}(pi n^2)
    - pi s Sum n^2 E_{(s-1)/2}(pi n^2) + romik_constant, truncated at n_terms.

    Terms decay like e^(-pi n^2), so a handful of terms already beats the
    working precision at moderate |s|.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    with ctx.workdps():
        z = point(s)
        total = mp.mpc(0)
        for n in range(1, n_terms + 1):
            zn = mp.pi * n * n
            e1 = special.exp_integral_E(-z / 2, zn, ctx)
            e2 = special.exp_integral_E((z - 1) / 2, zn, ctx)
            total += n * n * (mp.pi * (z - 1) * e1 - mp.pi * z * e2)
        return +(total + romik_constant(ctx))
