"""Closed-form optimal friendly-jamming power for a fixed pair of links.

With the data AP transmitting at fixed power ``p_i`` and the idle AP
jamming at power ``p_j`` (both in distance-corrected Watt*m^alpha), the
secrecy difference between the legitimate link and the eavesdropper link
equals ``W * log2(f(p_j))`` where ``f`` is a ratio of two quadratics in
``p_j`` sharing the same leading and linear base terms:

    f(p_j) = (A*p_j**2 + (B + p_i*C)*p_j + p_i*D + K)
             / (A*p_j**2 + (B + p_i*E)*p_j + p_i*F + K)

All seven constants are strictly positive products of clamped distances
raised to the path-loss exponent and of the noise power, so numerator and
denominator never vanish on ``p_j >= 0``. The derivative of ``f`` has the
sign of a plain quadratic ``a*p_j**2 + b*p_j + c`` (its denominator is a
positive square), so the maximizer over ``[0, p_max]`` is one of at most
four candidates: the two clamped real roots of that quadratic plus the
two interval endpoints.
"""

import math
from dataclasses import dataclass

from .channel import shannon_capacity

# Relative threshold below which the derivative quadratic is treated as
# linear (and below which the linear term is treated as absent). Symmetric
# geometries drive the coefficients to exact zero; near-symmetric ones to
# values dominated by rounding noise.
DEGENERACY_EPS = 1e-12


@dataclass(frozen=True)
class FjGeometry:
    """Inputs of one jamming-power optimization.

    Distances are meters and must already be clamped to the reference
    distance; powers are distance-corrected (Watt*m^alpha). ``noise`` is
    the common receiver noise floor -- the closed form assumes both
    receivers see the same value.
    """

    d_im: float
    d_ie: float
    d_jm: float
    d_je: float
    alpha: float
    noise: float
    p_i: float
    p_max: float

    def __post_init__(self):
        if min(self.d_im, self.d_ie, self.d_jm, self.d_je) <= 0:
            raise ValueError("distances must be positive (and pre-clamped)")
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1")
        if self.noise <= 0:
            raise ValueError("noise must be strictly positive")
        if self.p_i <= 0:
            raise ValueError("p_i must be positive")
        if self.p_max < 0:
            raise ValueError("p_max must be nonnegative")


@dataclass(frozen=True)
class FjCoefficients:
    """The seven objective constants and the three derivative-numerator ones."""

    cap_a: float
    cap_b: float
    cap_c: float
    cap_d: float
    cap_e: float
    cap_f: float
    cap_k: float
    quad_a: float
    quad_b: float
    quad_c: float


@dataclass(frozen=True)
class FjSolution:
    """Outcome of one optimization: chosen power, its secrecy, all candidates."""

    p_opt: float
    secrecy: float
    candidates: tuple[tuple[float, float], ...]


def compute_coefficients(geom: FjGeometry) -> FjCoefficients:
    """Evaluate the objective constants A..K and the derivative quadratic a, b, c.

    The quadratic coefficients are the algebraically simplified forms

        a = p_i*A*(E - C)
        b = 2*p_i*A*(F - D)
        c = p_i*B*(F - D) + p_i**2*(C*F - E*D) + p_i*K*(C - E)

    Each ``d**alpha`` term is evaluated once and combined in products of at
    most four factors, which stays far from overflow for distances up to
    1e3 m and alpha up to 4.
    """
    n = geom.noise
    p_i = geom.p_i
    dim_a = geom.d_im ** geom.alpha
    die_a = geom.d_ie ** geom.alpha
    djm_a = geom.d_jm ** geom.alpha
    dje_a = geom.d_je ** geom.alpha

    cap_a = dim_a * die_a
    cap_b = n * die_a * dje_a * dim_a + n * dim_a * djm_a * die_a
    cap_c = djm_a * die_a
    cap_d = n * die_a * dje_a * djm_a
    cap_e = dim_a * dje_a
    cap_f = n * dim_a * djm_a * dje_a
    cap_k = n * n * dim_a * djm_a * die_a * dje_a

    quad_a = p_i * cap_a * (cap_e - cap_c)
    quad_b = 2.0 * p_i * cap_a * (cap_f - cap_d)
    quad_c = (
        p_i * cap_b * (cap_f - cap_d)
        + p_i * p_i * (cap_c * cap_f - cap_e * cap_d)
        + p_i * cap_k * (cap_c - cap_e)
    )
    return FjCoefficients(cap_a, cap_b, cap_c, cap_d, cap_e, cap_f, cap_k, quad_a, quad_b, quad_c)


def _log2_ratio(co: FjCoefficients, p_i: float, p_j: float) -> float:
    """log2 of the objective ratio f at jamming power p_j (bandwidth-free)."""
    num = co.cap_a * p_j * p_j + (co.cap_b + p_i * co.cap_c) * p_j + (p_i * co.cap_d + co.cap_k)
    den = co.cap_a * p_j * p_j + (co.cap_b + p_i * co.cap_e) * p_j + (p_i * co.cap_f + co.cap_k)
    return math.log2(num) - math.log2(den)


def secrecy_objective(geom: FjGeometry, p_j: float, bandwidth: float) -> float:
    """Secrecy capacity in bits/s at jamming power ``p_j``, via the ratio form."""
    return bandwidth * _log2_ratio(compute_coefficients(geom), geom.p_i, p_j)


def secrecy_from_capacities(geom: FjGeometry, p_j: float, bandwidth: float) -> float:
    """Secrecy capacity at ``p_j`` composed from the two link capacities.

    Independent evaluation route of :func:`secrecy_objective`; the two
    must agree to rounding error and are cross-checked in the test suite.
    """
    alpha = geom.alpha
    cap_m = shannon_capacity(
        geom.p_i * geom.d_im ** -alpha, p_j * geom.d_jm ** -alpha, geom.noise, bandwidth
    )
    cap_e = shannon_capacity(
        geom.p_i * geom.d_ie ** -alpha, p_j * geom.d_je ** -alpha, geom.noise, bandwidth
    )
    return cap_m - cap_e


def derivative_numerator_roots(co: FjCoefficients, p_scale: float) -> list[float]:
    """Real roots of ``quad_a*x**2 + quad_b*x + quad_c = 0``, unclamped.

    ``p_scale`` (typically the power cap) renders the three coefficients
    commensurable for the degeneracy tests: the quadratic term is dropped
    when it cannot matter anywhere on the interval of that scale, and the
    quadratic formula uses the cancellation-free form (coefficient
    magnitudes legitimately span ~1e-20 to ~1e10).
    """
    a, b, c = co.quad_a, co.quad_b, co.quad_c
    s = p_scale if p_scale > 0 else 1.0
    a_n = abs(a) * s * s
    b_n = abs(b) * s
    c_n = abs(c)
    if a_n <= DEGENERACY_EPS * max(b_n, c_n):
        # effectively linear; if the linear term is negligible too, the
        # derivative keeps one sign and the endpoints suffice
        if b_n <= DEGENERACY_EPS * c_n or b == 0.0:
            return []
        return [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    q = -(b + math.copysign(math.sqrt(disc), b)) / 2.0
    roots = [q / a]
    if q != 0.0:
        roots.append(c / q)
    return roots


def optimize_fj_power(geom: FjGeometry, bandwidth: float) -> FjSolution:
    """Pick the jamming power in ``[0, p_max]`` that maximizes secrecy.

    Candidates are the clamped roots of the derivative numerator plus the
    interval endpoints; the best objective value among them is the global
    maximum because the objective is smooth and every interior extremum
    is a root. Ties break to the smallest power, so jamming is never
    reported when it buys nothing.
    """
    co = compute_coefficients(geom)
    candidates = {0.0, geom.p_max}
    for root in derivative_numerator_roots(co, geom.p_max):
        candidates.add(min(max(root, 0.0), geom.p_max))
    powers = sorted(candidates)
    values = [_log2_ratio(co, geom.p_i, p) for p in powers]
    best = 0
    for k in range(1, len(powers)):
        if values[k] > values[best]:
            best = k
    return FjSolution(
        p_opt=powers[best],
        secrecy=bandwidth * values[best],
        candidates=tuple((p, bandwidth * v) for p, v in zip(powers, values)),
    )
