"""Upper-half-plane geometry: j-evaluation, j-inversion, and zero reports.

The nontrivial zeros of a form are the pullbacks of its Faber roots
through j.  In the large-weight regime those roots are huge, the nome
q = e^{2 pi i tau} is tiny, and a short truncation of the q-expansion of
j inverts accurately by Newton iteration in q.  Roots below |t| = 2000
are outside that comfort zone and are refused rather than inverted with
fabricated precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, NumericalError
from .faber import faber_polynomial
from .modforms import ModularFormSpec
from .qseries import j_series
from .roots import match_roots, scaled_faber_roots, truncated_exp_inverse_zeros

__all__ = [
    "MIN_J_MODULUS",
    "MIN_IM_FOR_SERIES",
    "HalfPlanePoint",
    "JEvaluation",
    "ZeroReportRow",
    "ZeroReport",
    "in_fundamental_domain",
    "evaluate_j",
    "invert_j",
    "reduce_to_fundamental_domain",
    "predicted_zero",
    "nontrivial_zeros",
    "zero_report",
    "verify_predictions",
]

MIN_J_MODULUS = 2000.0  # below this, Newton inversion of the truncated series is refused
MIN_IM_FOR_SERIES = 0.8  # guarantees |q| <= e^(-1.6 pi), fast tail decay
_BOUNDARY_EPS = 1e-12

OUT_OF_REGIME = "outside inversion regime"

# grow-only cache of integer j-coefficients c_{-1}, c_0, c_1, ... and float copies
_j_coeff_ints: list[int] = []
_j_coeff_floats: list[float] = []


def _j_coefficients(count: int) -> list[float]:
    """The first ``count`` coefficients of j (starting at q^-1), as floats."""
    if count > len(_j_coeff_floats):
        series = j_series(count - 1)
        ints = [int(series.coeff(n)) for n in range(-1, count - 1)]
        _j_coeff_ints[:] = ints
        _j_coeff_floats[:] = [float(c) for c in ints]
    return _j_coeff_floats[:count]


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point tau with Im(tau) > 0; ``reduced`` records membership in the
    fundamental domain (Re in [-1/2, 1/2), |tau| >= 1, and Re <= 0 on the
    unit circle)."""

    tau: complex
    reduced: bool

    def __post_init__(self):
        if not self.tau.imag > 0:
            raise DomainError(f"point must lie in the upper half-plane, got {self.tau}")


def in_fundamental_domain(tau: complex, eps: float = _BOUNDARY_EPS) -> bool:
    """The three membership predicates, with a small tolerance on the circle."""
    x, y = tau.real, tau.imag
    if y <= 0 or not (-0.5 <= x < 0.5):
        return False
    r2 = x * x + y * y
    if r2 < 1.0 - eps:
        return False
    if abs(r2 - 1.0) <= eps and x > eps:
        return False
    return True


@dataclass(frozen=True)
class JEvaluation:
    """A truncated evaluation of j together with a tail-size estimate."""

    value: complex
    tail_bound: float


def _tail_estimate(last_coeff: float, q_abs: float, n_last: int) -> float:
    # coefficient growth ~ e^(4 pi sqrt(n)); treat the first omitted ratio
    # as constant, which overstates later ratios (sqrt is concave).
    growth = math.exp(4 * math.pi * (math.sqrt(n_last + 1) - math.sqrt(max(n_last, 1))))
    r = q_abs * growth
    if r >= 1.0:
        return math.inf
    return abs(last_coeff) * q_abs**n_last * r / (1.0 - r)


def evaluate_j(tau, terms: int = 32) -> JEvaluation:
    """Partial sum of j's q-expansion with ``terms`` coefficients, at tau.

    Requires Im(tau) >= 0.8 (reduce first if necessary).  The returned
    tail bound is a geometric estimate from the last retained coefficient.
    """
    if isinstance(tau, HalfPlanePoint):
        tau = tau.tau
    tau = complex(tau)
    if tau.imag < MIN_IM_FOR_SERIES:
        raise DomainError(
            f"evaluate_j requires Im(tau) >= {MIN_IM_FOR_SERIES}, got {tau.imag}; reduce first"
        )
    if terms < 2:
        raise DomainError("evaluate_j needs at least the q^-1 and q^0 terms")
    coeffs = _j_coefficients(terms)
    q = cmath.exp(2j * math.pi * tau)
    # Horner over the unit part, then add the pole term
    acc = 0j
    for c in reversed(coeffs[1:]):
        acc = acc * q + c
    value = acc + coeffs[0] / q
    return JEvaluation(value=value, tail_bound=_tail_estimate(coeffs[-1], abs(q), terms - 2))


def _j_and_derivative(coeffs, q):
    j = coeffs[0] / q
    dj = -coeffs[0] / (q * q)
    qpow = 1.0 + 0j
    for n in range(1, len(coeffs)):
        c = coeffs[n]
        j += c * qpow  # q^(n-1)
        if n >= 2:
            dj += c * (n - 1) * qpow / q
        qpow *= q
    return j, dj


def invert_j(t: complex, tol: float = 1e-10) -> HalfPlanePoint:
    """Solve j(tau) = t by Newton iteration in the nome, for |t| >= 2000.

    The truncation length is grown until the series tail is negligible
    against tol * |t|; the iteration starts from q = 1/t.  The real part
    of the result is normalized into [-1/2, 1/2).
    """
    t = complex(t)
    if abs(t) < MIN_J_MODULUS:
        raise DomainError(f"{OUT_OF_REGIME}: |t| = {abs(t):.6g} < {MIN_J_MODULUS:.0f}")
    target = tol * abs(t)

    terms = 16
    while True:
        coeffs = _j_coefficients(terms)
        tail = _tail_estimate(coeffs[-1], 1.2 / abs(t), terms - 2)
        if tail <= 1e-3 * target:
            break
        if terms >= 160:
            raise NumericalError(f"series tail will not reach tolerance {tol:.1e}")
        terms += 8

    q = 1.0 / t
    residual = math.inf
    for _ in range(60):
        jv, djv = _j_and_derivative(coeffs, q)
        residual = abs(jv - t)
        if residual <= 0.5 * target:
            break
        if djv == 0:
            raise NumericalError("vanishing derivative during Newton iteration", best=q)
        q = q - (jv - t) / djv
        if not (0 < abs(q) < 1):
            raise NumericalError(f"Newton iterate left the unit disk: |q| = {abs(q):.3g}", best=q)
    if residual > target:
        raise NumericalError(f"Newton residual {residual:.3e} exceeds {target:.3e}", best=q)

    x = cmath.phase(q) / (2 * math.pi)
    if x >= 0.5:
        x -= 1.0
    y = -math.log(abs(q)) / (2 * math.pi)
    tau = complex(x, y)
    return HalfPlanePoint(tau=tau, reduced=in_fundamental_domain(tau))


def reduce_to_fundamental_domain(tau: complex) -> HalfPlanePoint:
    """SL(2,Z)-reduce by the standard translate/invert loop.

    Boundary conventions: Re in [-1/2, 1/2), and points on the unit
    circle are sent to the Re <= 0 half of the arc.
    """
    if isinstance(tau, HalfPlanePoint):
        tau = tau.tau
    tau = complex(tau)
    x, y = tau.real, tau.imag
    if y <= 0:
        raise DomainError(f"point must lie in the upper half-plane, got {tau}")
    for _ in range(500):
        x -= math.floor(x + 0.5)
        r2 = x * x + y * y
        if r2 < 1.0 - _BOUNDARY_EPS:
            x, y = -x / r2, y / r2
        else:
            break
    else:
        raise NumericalError(f"reduction did not converge for {tau}")
    r2 = x * x + y * y
    if abs(r2 - 1.0) <= _BOUNDARY_EPS and x > 0:
        x = -x  # -1/tau on the unit circle, up to the translation already applied
        x -= math.floor(x + 0.5)
    point = complex(x, y)
    return HalfPlanePoint(tau=point, reduced=in_fundamental_domain(point))


def predicted_zero(k: int, z: complex) -> HalfPlanePoint:
    """The predicted zero (i / 2 pi) * log(2k z), Re normalized into [-1/2, 1/2).

    The argument of z is taken in [-pi, pi), which places the predictions
    on the vertical lines Re = -arg(z)/(2 pi).
    """
    z = complex(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    if k <= 0:
        raise DomainError(f"weight must be positive, got {k}")
    modulus = 2 * k * abs(z)
    if modulus <= 1:
        raise DomainError(f"2k|z| = {modulus:.6g} <= 1 gives a non-positive height")
    theta = cmath.phase(z)
    if theta >= math.pi:
        theta = -math.pi
    x = -theta / (2 * math.pi)
    if x >= 0.5:
        x -= 1.0
    tau = complex(x, math.log(modulus) / (2 * math.pi))
    return HalfPlanePoint(tau=tau, reduced=in_fundamental_domain(tau))


def _seam_distance(a: complex, b: complex) -> float:
    """Distance modulo the unit translation gluing Re = -1/2 to Re = 1/2."""
    return min(abs(a + s - b) for s in (-1.0, 0.0, 1.0))


@dataclass(frozen=True)
class ZeroReportRow:
    """One matched triple: Faber root t, actual zero tau, predicted tau_hat.

    ``tau`` is None (with ``status`` OUT_OF_REGIME) when |t| is too small
    for trustworthy inversion; errors are seam-aware distances.
    ``t_gap`` is |t - 2k z_{D,r}|, the root's displacement from its
    rescaled limit (an O(1) quantity as the weight grows).
    """

    r: int
    t: complex
    tau: HalfPlanePoint | None
    tau_hat: HalfPlanePoint
    abs_err: float | None
    k_times_err: float | None
    t_gap: float
    status: str = "ok"


@dataclass(frozen=True)
class ZeroReport:
    k: int
    m: int
    degree: int
    rows: tuple[ZeroReportRow, ...]


def nontrivial_zeros(spec: ModularFormSpec, tol: float = 1e-10) -> list[HalfPlanePoint]:
    """The zeros of f / E_{k'} in the fundamental domain: inverse images of
    the Faber roots under j.

    Raises DomainError if any root lies outside the inversion regime
    (|t| < 2000): small weights are refused, not silently approximated.
    Each returned point tau satisfies |F(j(tau))| <= tol * max |F coeff|.
    """
    report = zero_report(spec, tol=tol, strict=True)
    return [row.tau for row in report.rows]


def zero_report(spec: ModularFormSpec, tol: float = 1e-10, strict: bool = True) -> ZeroReport:
    """Match Faber roots against the rescaled inverse zeros and invert them.

    With strict=True any out-of-regime root raises; with strict=False such
    rows carry status OUT_OF_REGIME and no actual tau (nothing is dropped).
    Rows are indexed by the inverse zeros' sorted order.
    """
    f = faber_polynomial(spec)
    d = f.degree
    k = spec.k
    if d == 0:
        return ZeroReport(k=k, m=spec.m, degree=0, rows=())

    scaled = scaled_faber_roots(f, k, tol=tol)
    limits = truncated_exp_inverse_zeros(d, tol=tol)
    pairing = match_roots(scaled.z, limits)
    root_for_limit = {j: scaled.z.roots[i] for i, j in pairing.pairs}

    f_float = [float(c) for c in f.coeffs]
    f_scale = max(abs(c) for c in f_float)

    rows = []
    for r in range(d):
        z_limit = limits.roots[r]
        t = 2 * k * root_for_limit[r]
        tau_hat = predicted_zero(k, z_limit)
        t_gap = abs(t - 2 * k * z_limit)
        if abs(t) < MIN_J_MODULUS:
            if strict:
                raise DomainError(
                    f"{OUT_OF_REGIME}: root t_{r + 1} = {t:.6g} has |t| < {MIN_J_MODULUS:.0f} "
                    f"(k = {k} too small for D = {d})"
                )
            rows.append(
                ZeroReportRow(
                    r=r + 1, t=t, tau=None, tau_hat=tau_hat, abs_err=None,
                    k_times_err=None, t_gap=t_gap, status=OUT_OF_REGIME,
                )
            )
            continue
        tau = invert_j(t, tol=tol)
        value = _horner(f_float, evaluate_j(tau.tau, terms=32).value)
        if abs(value) > tol * f_scale:
            raise NumericalError(
                f"|F(j(tau))| = {abs(value):.3e} exceeds {tol:.1e} * scale at root {t:.6g}"
            )
        err = _seam_distance(tau.tau, tau_hat.tau)
        rows.append(
            ZeroReportRow(
                r=r + 1, t=t, tau=tau, tau_hat=tau_hat, abs_err=err,
                k_times_err=k * err, t_gap=t_gap,
            )
        )
    return ZeroReport(k=k, m=spec.m, degree=d, rows=tuple(rows))


def verify_predictions(spec: ModularFormSpec, tol: float = 1e-10) -> ZeroReport:
    """The end-to-end report pairing actual zeros with predictions.

    Strict: every Faber root must be in the inversion regime.  Row errors
    are |tau_r - tau_hat_r| (seam-aware) with k * err alongside, plus the
    t-scale displacement |t_r - 2k z_{D,r}|.
    """
    return zero_report(spec, tol=tol, strict=True)


def _horner(coeffs, x):
    acc = 0j
    for c in coeffs:
        acc = acc * x + c
    return acc
