"""The dimension sequence sc_n: class counts, IBSC counts, EGF coefficients.

Three independent routes are exposed: grouping set compositions into classes
(:mod:`chromkit.scorder`), enumerating integral barred set compositions, and
extracting coefficients of the exponential generating function

    F(x) = e^x / (1 + (1 + x) e^x - e^(2x)).

The asymptotic constants gamma (positive root of e^(2x) = 1 + (1 + x) e^x)
and tau (residue factor e^gamma / l'(gamma)) are computed with mpmath.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath

from .errors import ChromkitError, DomainError, SizeCapError
from .scorder import enumerate_ibscs

SC_EGF_MAX_ORDER = 64
SC_ENUMERATE_MAX_N = 9
GAMMA_MIN_TOL = 1e-14


class RationalSeries:
    """A truncated exponential generating function with exact coefficients.

    ``coeffs[k]`` is the coefficient of x^k / k!.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise DomainError("RationalSeries needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, order: int) -> "RationalSeries":
        if order >= self.order:
            return self
        return RationalSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        n = min(self.order, other.order)
        return RationalSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def __sub__(self, other):
        n = min(self.order, other.order)
        return RationalSeries([a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])])

    def __mul__(self, other):
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            out.append(sum(comb(k, i) * self.coeffs[i] * other.coeffs[k - i] for i in range(k + 1)))
        return RationalSeries(out)

    def __eq__(self, other):
        return isinstance(other, RationalSeries) and self.coeffs == other.coeffs

    def reciprocal(self) -> "RationalSeries":
        """Multiplicative inverse by Newton iteration, constant term non-zero."""
        if self.coeffs[0] == 0:
            raise DomainError("reciprocal needs a non-zero constant term")
        target = self.order
        inv = RationalSeries([1 / self.coeffs[0]])
        order = 0
        while order < target:
            order = min(2 * order + 1, target)
            a = self.truncate(order)
            one = RationalSeries([1] + [0] * order)
            prev = RationalSeries(inv.coeffs + (0,) * (order - inv.order))
            inv = prev + prev * (one - a * prev)
        return inv.truncate(target)

    def __repr__(self):
        return f"RationalSeries({list(self.coeffs)!r})"


def exp_series(order: int, scale: int = 1) -> RationalSeries:
    """EGF of e^(scale * x)."""
    return RationalSeries([Fraction(scale) ** k for k in range(order + 1)])


def x_exp_series(order: int) -> RationalSeries:
    """EGF of x * e^x (coefficient k of x^k/k! is k)."""
    return RationalSeries([Fraction(k) for k in range(order + 1)])


def x_series(order: int) -> RationalSeries:
    """EGF of the plain monomial x."""
    return RationalSeries([Fraction(1) if k == 1 else Fraction(0) for k in range(order + 1)])


def one_series(order: int) -> RationalSeries:
    return RationalSeries([1] + [0] * order)


def sc_denominator_series(order: int) -> RationalSeries:
    """EGF of 1 + (1 + x) e^x - e^(2x)."""
    return one_series(order) + exp_series(order) + x_exp_series(order) - exp_series(order, 2)


def sc_series(order: int) -> RationalSeries:
    """EGF whose coefficients are the sc_n dimensions."""
    return exp_series(order) * sc_denominator_series(order).reciprocal()


def sc_egf(order: int) -> list[int]:
    """sc_0 .. sc_order via the closed-form generating function."""
    if not (0 <= order <= SC_EGF_MAX_ORDER):
        raise SizeCapError(f"sc_egf capped at order {SC_EGF_MAX_ORDER}, got {order}")
    out = []
    for k, c in enumerate(sc_series(order).coeffs):
        if c.denominator != 1:
            raise ChromkitError(f"internal consistency: sc_{k} = {c} is not integral")
        out.append(int(c))
    return out


def sc_enumerate(n: int) -> int:
    """sc_n by direct enumeration of integral barred set compositions."""
    if not (0 <= n <= SC_ENUMERATE_MAX_N):
        raise SizeCapError(f"sc_enumerate capped at n <= {SC_ENUMERATE_MAX_N}, got {n}")
    return sum(1 for _ in enumerate_ibscs(n))


def _l(x):
    return mpmath.e ** (2 * x) - (1 + x) * mpmath.e**x - 1


def _l_prime(x):
    return 2 * mpmath.e ** (2 * x) - (2 + x) * mpmath.e**x


def gamma_tau(tol: float = 1e-14):
    """The asymptotic constants, by bisection on [0.5, 1.0] at 50 decimal digits.

    Returns mpmath floats (gamma, tau) with tau = e^gamma / l'(gamma).
    """
    if tol < GAMMA_MIN_TOL:
        raise DomainError(f"gamma_tau tolerance must be >= {GAMMA_MIN_TOL}")
    with mpmath.workdps(50):
        lo, hi = mpmath.mpf("0.5"), mpmath.mpf("1.0")
        if not (_l(lo) < 0 < _l(hi)):
            raise ChromkitError("bisection bracket lost; l must change sign on [0.5, 1]")
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if _l(mid) < 0:
                lo = mid
            else:
                hi = mid
        gamma = (lo + hi) / 2
        tau = mpmath.e**gamma / _l_prime(gamma)
        return +gamma, +tau
