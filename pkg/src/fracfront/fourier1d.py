"""One-dimensional radial Fourier route for rho >= 1.

u_{a,rho}(t, x) = (1/pi) sum_k (-1)^k a_k(t, x) with

    a_0 = integral_0^{pi/2x} E_a(t^a (1 - xi^{2 rho})) cos(x xi) d xi,
    a_k = (-1)^k integral over [(2k-1) pi/2x, (2k+1) pi/2x] of the same,

an alternating series with positive decreasing terms (k >= 1), so the first
omitted term bounds the remainder.  Also houses the analytic a_0 lower /
a_1 upper bounds and the divergence comparator they feed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import rgamma as _rgamma

from .errors import DomainError, NonConvergence, QuadratureFailure
from .logvalue import LogValue, signed_log_sum
from .specfun import EvalResult, Regime, dottie, log_mittag_leffler, mittag_leffler


@dataclass(frozen=True)
class SeriesState:
    """Progress of the alternating sum: value, last term and Leibniz bound."""

    partial_sum: float
    last_term: float
    terms: int
    remainder_bound: float


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)

# Above this argument the Mittag-Leffler factor is evaluated through its
# log-domain leading term; below, the linear-space value is exact enough.
_LOG_SWITCH = 25.0


def _log_ml_factor(alpha: float, z: float) -> LogValue:
    if z >= _LOG_SWITCH:
        return log_mittag_leffler(alpha, z)
    return LogValue.from_float(mittag_leffler(alpha, 1.0, z).value)


def _segment_integral_log(
    alpha: float, rho: float, t: float, x: float, a: float, b: float,
    rel_tol: float = 1e-9, max_doublings: int = 12,
) -> LogValue:
    """Signed log of integral_a^b E_a(t^a (1 - xi^{2 rho})) cos(x xi) d xi."""
    ta = t ** alpha

    def panels(n: int) -> LogValue:
        edges = np.linspace(a, b, n + 1)
        pieces = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
            for node, weight in zip(_GL_NODES, _GL_WEIGHTS):
                xi = float(mid + half * node)
                c = math.cos(x * xi)
                if c == 0.0:
                    continue
                ml = _log_ml_factor(alpha, ta * (1.0 - xi ** (2.0 * rho)))
                pieces.append(
                    LogValue(
                        ml.sign * (1 if c > 0 else -1),
                        ml.log_abs + math.log(abs(c)) + math.log(half * weight),
                    )
                )
        total, _ = signed_log_sum(pieces)
        return total

    n = 1
    prev = panels(n)
    for _ in range(max_doublings):
        n *= 2
        cur = panels(n)
        if (
            cur.sign == prev.sign
            and cur.sign != 0
            and abs(cur.log_abs - prev.log_abs) <= rel_tol
        ):
            return cur
        if cur.sign == 0 and prev.sign == 0:
            return cur
        prev = cur
    raise QuadratureFailure(
        f"segment [{a:.4g}, {b:.4g}] did not converge after {n} panels"
    )


def _a_coefficient_log(
    k: int, alpha: float, rho: float, t: float, x: float
) -> LogValue:
    if x <= 0.0:
        raise DomainError("the radial Fourier representation requires x > 0")
    if rho < 1.0:
        raise DomainError(f"representation stated for rho >= 1, got {rho}")
    if t <= 0.0:
        raise DomainError(f"t must be positive, got {t}")
    if k == 0:
        return _segment_integral_log(alpha, rho, t, x, 0.0, math.pi / (2.0 * x))
    lo = (2 * k - 1) * math.pi / (2.0 * x)
    hi = (2 * k + 1) * math.pi / (2.0 * x)
    seg = _segment_integral_log(alpha, rho, t, x, lo, hi)
    if seg.sign == 0:
        return seg
    # a_k carries the sign (-1)^k that makes it positive.
    return LogValue(seg.sign * (1 if k % 2 == 0 else -1), seg.log_abs)


def a_coefficient(k: int, alpha: float, rho: float, t: float, x: float) -> float:
    """The k-th positive term a_k(t, x) of the alternating representation."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0,1), got {alpha}")
    return _a_coefficient_log(k, alpha, rho, t, x).to_float()


def _solution_series_log(
    alpha: float, rho: float, t: float, x: float, tol: float,
    max_terms: int = 100000,
) -> tuple[LogValue, LogValue, int, float]:
    """(value, remainder bound, terms, cancellation) of (1/pi) sum (-1)^k a_k."""
    log_tol_pi = math.log(tol * math.pi) if tol > 0 else -math.inf
    terms: list[LogValue] = []
    k = 0
    while True:
        ak = _a_coefficient_log(k, alpha, rho, t, x)
        if ak.sign < 0:
            # Numerically negative a_k: the Leibniz structure has bottomed
            # out below quadrature noise; stop with |a_k| as the bound.
            bound = LogValue.from_log(ak.log_abs)
            break
        if k >= 1 and ak.log_abs < log_tol_pi:
            bound = LogValue.from_log(ak.log_abs) if ak.sign != 0 else LogValue.zero()
            break
        terms.append(LogValue(1 if k % 2 == 0 else -1, ak.log_abs)
                     if ak.sign != 0 else LogValue.zero())
        k += 1
        if k >= max_terms:
            raise NonConvergence(f"alternating series used {max_terms} terms")
    total, cancellation = signed_log_sum([v for v in terms if v.sign != 0])
    if cancellation > 1e12:
        raise NonConvergence(
            f"alternating sum cancels {math.log10(cancellation):.1f} digits"
        )
    log_pi = math.log(math.pi)
    value = LogValue(total.sign, total.log_abs - log_pi) if total.sign != 0 else total
    bound = LogValue.from_log(bound.log_abs - log_pi) if bound.sign != 0 else bound
    return value, bound, len(terms), cancellation


def solution_series(
    alpha: float, rho: float, t: float, x: float, tol: float
) -> EvalResult:
    """u_{a,rho}(t, x) in d = 1 for rho >= 1 by the alternating Fourier series.

    Terminates once a_{N+1} < tol * pi; the returned abs_error_bound is the
    Leibniz remainder a_{N+1}/pi plus nothing else.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0,1), got {alpha}")
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    value, bound, n, _ = _solution_series_log(alpha, rho, t, x, tol)
    if value.sign != 0 and value.log_abs > 700.0:
        raise NonConvergence("value exceeds double range; use the log-domain route")
    return EvalResult(value.to_float(), bound.to_float(), n, Regime.QUADRATURE)


def solution_at_origin(alpha: float, rho: float, t: float) -> EvalResult:
    """u_{a,rho}(t, 0) = (1/pi) integral_0^inf E_a(t^a (1 - xi^{2 rho})) d xi.

    No oscillation at the origin, so the alternating decomposition is
    unnecessary; the integrand decays only algebraically (like xi^{-2 rho}),
    hence the geometric panel layout far out.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must be in (0,1), got {alpha}")
    if rho < 1.0:
        raise DomainError(f"representation stated for rho >= 1, got {rho}")
    if t <= 0.0:
        raise DomainError(f"t must be positive, got {t}")
    ta = t ** alpha
    edges = np.concatenate([np.linspace(0.0, 1.0, 9), np.geomspace(1.0, 1e6, 73)[1:]])

    def quad(nodes, weights) -> float:
        pieces = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
            vals = [
                mittag_leffler(alpha, 1.0, ta * (1.0 - float(xi) ** (2.0 * rho))).value
                for xi in mid + half * nodes
            ]
            pieces.append(half * float(np.dot(weights, vals)))
        return math.fsum(pieces) / math.pi

    fine = quad(_GL_NODES, _GL_WEIGHTS)
    coarse_nodes, coarse_weights = np.polynomial.legendre.leggauss(16)
    coarse = quad(coarse_nodes, coarse_weights)
    # Algebraic tail beyond the last edge, C/xi^{2 rho - 1} at xi = 1e6.
    tail = abs(fine) * 1e-6 + 1e-12
    return EvalResult(fine, abs(fine - coarse) + tail, 0, Regime.QUADRATURE)


def _check_bound_inputs(n: int, alpha: float, rho: float, t: float) -> None:
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if not 1.0 / n <= alpha < 1.0:
        raise DomainError(f"alpha = {alpha} outside [1/{n}, 1)")
    if rho < 1.0:
        raise DomainError(f"rho must be >= 1, got {rho}")
    if t <= 0.0:
        raise DomainError(f"t must be positive, got {t}")


def a0_lower_bound(
    n: int, alpha: float, rho: float, t: float, x: float, ell: float | None = None
) -> float:
    """Analytic lower bound on a_0(t, x) for x > pi/2.

    (cos l / 2 rho)(x/l)^{2 rho - 1}(a / t^{a n})
        * [E_a(t^a) - E_a(t^a (1 - (l/x)^{2 rho})) + c_0(t, x)]
    with the correction c_0 assembled from the lambda_k/beta_k coefficient
    families; any cutoff l in (0, pi/2) is admissible, default the cos fixed
    point.
    """
    _check_bound_inputs(n, alpha, rho, t)
    if ell is None:
        ell = dottie()
    if not 0.0 < ell < math.pi / 2.0:
        raise DomainError(f"ell must lie in (0, pi/2), got {ell}")
    if x <= math.pi / 2.0:
        raise DomainError(f"bound requires x > pi/2, got {x}")

    ta = t ** alpha
    q = (ell / x) ** (2.0 * rho)  # in (0,1) since x > pi/2 > ell
    one_minus_q = 1.0 - q
    kmax = math.floor(n - 1 + 1.0 / (2.0 * alpha))

    def b_k(k: int) -> float:
        p = k + 2 - n
        if p == 0:
            return -math.log(one_minus_q)
        return (1.0 - one_minus_q ** p) / p

    lam_sum = math.fsum(
        _rgamma(alpha + k * alpha) * ta ** k * b_k(k) for k in range(kmax + 1)
    )
    bet_sum = math.fsum(
        _rgamma(1.0 + k * alpha - alpha * (n - 1))
        * ta ** k
        * (1.0 - one_minus_q ** (k + 2 - n)) / (k + 2 - n)
        for k in range(n - 1, kmax + 1)
    )
    c0 = (ta / alpha) * (bet_sum - lam_sum)

    bracket = (
        mittag_leffler(alpha, 1.0, ta).value
        - mittag_leffler(alpha, 1.0, ta * one_minus_q).value
        + c0
    )
    prefactor = (
        (math.cos(ell) / (2.0 * rho))
        * (x / ell) ** (2.0 * rho - 1.0)
        * alpha / ta ** n
    )
    return prefactor * bracket


def a1_upper_bound(n: int, alpha: float, rho: float, t: float, x: float) -> float:
    """Analytic upper bound on a_1(t, x) for x > 3 pi / 2.

    (a / (2 t^a rho))(2x/pi)^{2 rho - 1}
        * [E_a(t^a (1 - (pi/2x)^{2 rho})) - E_a(t^a (1 - (3 pi/2x)^{2 rho})) + c_1]
    with c_1 built from the gamma_k = 1/Gamma(1+ak) - 1/Gamma(a+ak) family.
    """
    _check_bound_inputs(n, alpha, rho, t)
    if x <= 3.0 * math.pi / 2.0:
        raise DomainError(f"bound requires x > 3 pi/2, got {x}")

    ta = t ** alpha
    q1 = 1.0 - (math.pi / (2.0 * x)) ** (2.0 * rho)
    q3 = 1.0 - (3.0 * math.pi / (2.0 * x)) ** (2.0 * rho)
    kmax = math.floor((3 * n - 2) / 2)
    c1 = (ta / alpha) * math.fsum(
        (_rgamma(1.0 + alpha * k) - _rgamma(alpha + alpha * k))
        * ta ** k
        * (q1 ** (k + 1) - q3 ** (k + 1)) / (k + 1)
        for k in range(kmax + 1)
    )
    bracket = (
        mittag_leffler(alpha, 1.0, ta * q1).value
        - mittag_leffler(alpha, 1.0, ta * q3).value
        + c1
    )
    return (alpha / (2.0 * ta * rho)) * (2.0 * x / math.pi) ** (2.0 * rho - 1.0) * bracket


def theorem17_comparator(
    n: int, alpha: float, rho: float, m: float, beta: float, t: float
) -> LogValue:
    """Log of the divergence comparator C m^{2 rho - 1} t^{b(2 rho -1) - a n} E_a(t^a).

    C = a l^{2 - 2 rho} / (2 rho) with l the cos fixed point.  Along
    x = m t^b with b < 1/(2 rho) the solution eventually dominates this
    quantity, which itself diverges.
    """
    _check_bound_inputs(n, alpha, rho, t)
    if m <= 0.0:
        raise DomainError(f"m must be positive, got {m}")
    if not 0.0 < beta < 1.0 / (2.0 * rho):
        raise DomainError(f"beta must lie in (0, 1/(2 rho)), got {beta}")
    ell = dottie()
    log_c = math.log(alpha) + (2.0 - 2.0 * rho) * math.log(ell) - math.log(2.0 * rho)
    log_val = (
        log_c
        + (2.0 * rho - 1.0) * math.log(m)
        + (beta * (2.0 * rho - 1.0) - alpha * n) * math.log(t)
        + log_mittag_leffler(alpha, t ** alpha).log_abs
    )
    return LogValue(1, log_val)
