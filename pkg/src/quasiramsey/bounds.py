"""Bound propagation for off-diagonal Ramsey numbers.

The bound function is ``alpha(k, l) = 2^(C r^2) exp(-phi(k, l))`` with
``phi(k, l) = rho(l/k) log(k + l)`` and ``rho`` a smoothed ramp built from the
quintic ``tau``.  Large quantities (binomials at ``k ~ 10^7``) live in log
space as :class:`LogReal` values backed by ``mpmath`` floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .errors import DomainError, SizeError
from .graphs import SimpleGraph
from .kernels import FLOAT
from .quasirandomness import InequalityReport, format_number

EXACT_BINOMIAL_CAP = 2000
DEFAULT_C_EPS = 1.0
DEFAULT_C_EPS_SMALL = 1e-2
WORK_DPS = 40

REGIME_INDUCTION = "induction"
REGIME_ES_BASE = "es-base"
REGIME_ES_SMALLR = "es-smallr"


@dataclass(frozen=True)
class BoundConfig:
    """Parameters ``(r, epsilon, C_eps)`` of one bound function.

    ``c_eps_small`` caps ``r`` relative to ``log k`` in the inductive step.
    ``C_eps = 0`` is accepted so the bare formula can be inspected.
    """

    r: int
    epsilon: float
    C_eps: float = DEFAULT_C_EPS
    c_eps_small: float = DEFAULT_C_EPS_SMALL

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 5:
            raise DomainError(f"r must be an integer >= 5, got {self.r}")
        if not 0 < self.epsilon < 0.5:
            raise DomainError(f"epsilon must lie in (0, 1/2), got {self.epsilon}")
        if self.C_eps < 0:
            raise DomainError(f"C_eps must be nonnegative, got {self.C_eps}")
        if self.c_eps_small <= 0:
            raise DomainError(f"c_eps_small must be positive, got {self.c_eps_small}")
        object.__setattr__(self, "r", int(self.r))

    @property
    def amplitude(self) -> float:
        return (self.r - 4) / 4


# -- log-space reals ----------------------------------------------------------


@dataclass(frozen=True)
class LogReal:
    """``sign * exp(log)``; ``sign`` is -1, 0 or 1 and ``log`` is an mpmath float."""

    sign: int
    log: mpmath.mpf = mpmath.mpf("-inf")

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        log = self.log
        if not isinstance(log, mpmath.mpf):
            with mpmath.workdps(WORK_DPS):
                log = mpmath.mpf(log)
        if self.sign == 0:
            log = mpmath.mpf("-inf")
        object.__setattr__(self, "log", log)

    @classmethod
    def of(cls, x) -> "LogReal":
        if isinstance(x, LogReal):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            x = Fraction(x)
            if x == 0:
                return cls(0)
            with mpmath.workdps(WORK_DPS):
                mag = abs(x)
                return cls(1 if x > 0 else -1,
                           mpmath.log(mag.numerator) - mpmath.log(mag.denominator))
        x = mpmath.mpf(x)
        if x == 0:
            return cls(0)
        with mpmath.workdps(WORK_DPS):
            return cls(1 if x > 0 else -1, mpmath.log(abs(x)))

    @classmethod
    def from_log(cls, log) -> "LogReal":
        return cls(1, log)

    def __mul__(self, other) -> "LogReal":
        other = LogReal.of(other)
        if self.sign == 0 or other.sign == 0:
            return LogReal(0)
        with mpmath.workdps(WORK_DPS):
            return LogReal(self.sign * other.sign, self.log + other.log)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogReal":
        other = LogReal.of(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogReal")
        if self.sign == 0:
            return LogReal(0)
        with mpmath.workdps(WORK_DPS):
            return LogReal(self.sign * other.sign, self.log - other.log)

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log)

    def __add__(self, other) -> "LogReal":
        other = LogReal.of(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.log >= other.log else (other, self)
        with mpmath.workdps(WORK_DPS):
            t = mpmath.exp(small.log - big.log)
            if big.sign == small.sign:
                return LogReal(big.sign, big.log + mpmath.log1p(t))
            if t == 1:
                return LogReal(0)
            return LogReal(big.sign, big.log + mpmath.log1p(-t))

    __radd__ = __add__

    def __sub__(self, other) -> "LogReal":
        return self + (-LogReal.of(other))

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * float(mpmath.exp(self.log))

    def __repr__(self) -> str:
        if self.sign == 0:
            return "LogReal(0)"
        return f"LogReal({'+' if self.sign > 0 else '-'}exp({mpmath.nstr(self.log, 17)}))"

    def as_dict(self) -> Dict[str, object]:
        return {"sign": self.sign, "log": None if self.sign == 0 else float(self.log)}


def log_binomial(n: int, k: int) -> mpmath.mpf:
    """``log C(n, k)``: exact big integer below the cap, log-gamma above it."""
    if not 0 <= k <= n:
        raise DomainError(f"binomial C({n}, {k}) is zero")
    with mpmath.workdps(WORK_DPS):
        if n <= EXACT_BINOMIAL_CAP:
            return mpmath.log(math.comb(n, k))
        return mpmath.loggamma(n + 1) - mpmath.loggamma(k + 1) - mpmath.loggamma(n - k + 1)


# -- tau, rho and phi ---------------------------------------------------------


def tau(x):
    if not 0 <= x <= 1:
        raise DomainError(f"tau is defined on [0, 1], got {x}")
    return x * x * x * (10 + x * (-15 + 6 * x))


def tau_prime(x):
    return 30 * x * x * (1 - x) * (1 - x)


def tau_second(x):
    return 60 * x * (1 - x) * (1 - 2 * x)


def _on_unit(cfg: BoundConfig, x, order: int):
    eps = cfg.epsilon
    if x <= eps:
        return 0 * x
    u = (x - eps) / (1 - eps)
    if order == 0:
        return cfg.amplitude * tau(u)
    if order == 1:
        return cfg.amplitude * tau_prime(u) / (1 - eps)
    return cfg.amplitude * tau_second(u) / ((1 - eps) ** 2)


def rho(cfg: BoundConfig, x):
    """The ramp: zero up to epsilon, the scaled quintic up to 1, then ``rho(1/x)``."""
    if x < 0:
        raise DomainError(f"rho needs x >= 0, got {x}")
    if x > 1:
        return _on_unit(cfg, 1 / x, 0)
    return _on_unit(cfg, x, 0)


def rho_prime(cfg: BoundConfig, x):
    if x < 0:
        raise DomainError(f"rho needs x >= 0, got {x}")
    if x > 1:
        y = 1 / x
        return -_on_unit(cfg, y, 1) * y * y
    return _on_unit(cfg, x, 1)


def rho_second(cfg: BoundConfig, x):
    if x < 0:
        raise DomainError(f"rho needs x >= 0, got {x}")
    if x > 1:
        y = 1 / x
        y3 = y * y * y
        return _on_unit(cfg, y, 2) * y3 * y + 2 * _on_unit(cfg, y, 1) * y3
    return _on_unit(cfg, x, 2)


def _check_kl(k: int, l: int) -> None:
    if k < 1 or l < 1:
        raise DomainError(f"k and l must be positive, got ({k}, {l})")


def _ratio(k: int, l: int, hp: bool):
    """``min/max`` so that ``rho`` never has to reflect a rounded quotient."""
    lo, hi = min(k, l), max(k, l)
    return mpmath.mpf(lo) / hi if hp else lo / hi


def phi(cfg: BoundConfig, k: int, l: int, hp: bool = False):
    """``rho(l/k) log(k + l)``; symmetric in ``k`` and ``l`` bit for bit."""
    _check_kl(k, l)
    if hp:
        with mpmath.workdps(WORK_DPS):
            return rho(cfg, _ratio(k, l, True)) * mpmath.log(k + l)
    return rho(cfg, _ratio(k, l, False)) * math.log(k + l)


def log_alpha(cfg: BoundConfig, k: int, l: int) -> mpmath.mpf:
    with mpmath.workdps(WORK_DPS):
        return mpmath.mpf(cfg.C_eps) * cfg.r ** 2 * mpmath.log(2) - phi(cfg, k, l, hp=True)


def alpha(cfg: BoundConfig, k: int, l: int) -> float:
    return float(mpmath.exp(log_alpha(cfg, k, l)))


def _floor_alpha_binomial(cfg: BoundConfig, k: int, l: int) -> Tuple[int, int]:
    if k + l > EXACT_BINOMIAL_CAP:
        raise SizeError(f"k + l = {k + l} exceeds the exact binomial cap {EXACT_BINOMIAL_CAP}")
    _check_kl(k, l)
    binom = math.comb(k + l, k)
    digits = len(str(binom)) + int(cfg.C_eps * cfg.r ** 2 * 0.302) + 30
    with mpmath.workdps(digits):
        ratio = mpmath.mpf(min(k, l)) / max(k, l)
        value = (mpmath.mpf(2) ** (mpmath.mpf(cfg.C_eps) * cfg.r ** 2)
                 * mpmath.exp(-rho(cfg, ratio) * mpmath.log(k + l)) * binom)
        return int(mpmath.floor(value)), binom


def alpha_star(cfg: BoundConfig, k: int, l: int) -> Fraction:
    """``floor(alpha * C(k+l, k)) / C(k+l, k)`` as an exact rational."""
    top, binom = _floor_alpha_binomial(cfg, k, l)
    return Fraction(top, binom)


# -- inequality reports -------------------------------------------------------


def _report(label: str, lhs, rhs, tol: float = 0.0, pre=None) -> InequalityReport:
    slack = rhs - lhs
    holds = bool(slack >= -tol)
    return InequalityReport(float(lhs), float(rhs), holds, float(slack), list(pre or []),
                            FLOAT, label)


def rho_properties_check(cfg: BoundConfig, grid_size: int = 10_000) -> List[InequalityReport]:
    """Range, derivative and floor bounds for ``rho`` sampled on uniform grids.

    Derivatives are also sampled on ``(1, 1/epsilon]`` through the reflection.
    The floor check uses the half-width ramp ``rho_{r, epsilon/2}`` on ``[epsilon, 1]``.
    """
    if grid_size < 10:
        raise DomainError("grid_size must be at least 10")
    r, eps = cfg.r, cfg.epsilon
    unit = np.linspace(0.0, 1.0, grid_size)
    outer = 1.0 / np.linspace(eps, 1.0, grid_size)
    rho_vals = np.array([rho(cfg, x) for x in unit])
    cap = (r - 4) * unit / 2
    d1 = np.array([rho_prime(cfg, x) for x in np.concatenate([unit, outer])])
    d2 = np.array([rho_second(cfg, x) for x in np.concatenate([unit, outer])])
    half = BoundConfig(r, eps / 2, cfg.C_eps, cfg.c_eps_small)
    floor_grid = np.linspace(eps, 1.0, grid_size)
    floor_vals = np.array([rho(half, x) for x in floor_grid])
    floor = (r - 4) * eps ** 3 / 32
    tag = f"r={r},eps={eps}"
    return [
        _report(f"rho>=0[{tag}]", -rho_vals.min(), 0.0),
        _report(f"rho<=(r-4)x/2[{tag}]", (rho_vals - cap).max(), 0.0, tol=1e-12),
        _report(f"|rho'|<=r[{tag}]", np.abs(d1).max(), r),
        _report(f"|rho''|<=10r[{tag}]", np.abs(d2).max(), 10 * r),
        _report(f"rho_half>=(r-4)eps^3/32[{tag}]", floor, floor_vals.min(), tol=1e-15),
    ]


@dataclass(frozen=True)
class DerivativeAgreement:
    points: int
    max_error_first: float
    max_error_second: float

    def within(self, tol: float = 1e-6) -> bool:
        return self.max_error_first <= tol and self.max_error_second <= tol


def derivative_agreement(cfg: BoundConfig, points: int = 1000, step: float = 1e-10,
                         upper: float = 3.0) -> DerivativeAgreement:
    """Closed-form ``rho'`` and ``rho''`` against centred differences in 30-digit arithmetic.

    The sample set is a uniform interior grid on ``(0, upper)`` plus the joints
    ``epsilon`` and ``1``.
    """
    xs = list(np.linspace(0.0, upper, points + 2)[1:-1]) + [cfg.epsilon, 1.0]
    e1 = e2 = 0.0
    with mpmath.workdps(30):
        h = mpmath.mpf(step)
        for x0 in xs:
            x = mpmath.mpf(x0)
            lo, mid, hi = rho(cfg, x - h), rho(cfg, x), rho(cfg, x + h)
            fd1 = (hi - lo) / (2 * h)
            fd2 = (hi - 2 * mid + lo) / (h * h)
            e1 = max(e1, float(abs(fd1 - rho_prime(cfg, x))))
            e2 = max(e2, float(abs(fd2 - rho_second(cfg, x))))
    return DerivativeAgreement(len(xs), e1, e2)


# -- smoothness certificates --------------------------------------------------


@dataclass(frozen=True)
class SmoothnessCertificate:
    """Ratio bounds ``1 + m*b``, ``1 + m*c`` (and ``beta``, ``gamma``) for ``m in {1, 2, r-1}``."""

    k: int
    l: int
    beta: float
    gamma: float
    b: float
    c: float
    per_m: Tuple[InequalityReport, ...]
    preconditions: Tuple[Tuple[str, bool], ...]
    config: BoundConfig = field(repr=False, default=None)

    @property
    def valid(self) -> bool:
        return all(rep.holds for rep in self.per_m)


def _decrements(cfg: BoundConfig) -> Tuple[int, ...]:
    return tuple(sorted({1, 2, cfg.r - 1}))


def smoothness_certificate(cfg: BoundConfig, k: int, l: int) -> SmoothnessCertificate:
    _check_kl(k, l)
    ms = _decrements(cfg)
    if k - ms[-1] < 1 or l - ms[-1] < 1:
        raise DomainError(f"k - m and l - m must stay positive for m up to {ms[-1]}")
    r, eps = cfg.r, cfg.epsilon
    need = 200 * r ** 4 / eps ** 2
    with mpmath.workdps(WORK_DPS):
        x = mpmath.mpf(l) / k
        rv, dv = rho(cfg, x), rho_prime(cfg, x)
        big = mpmath.log(k + l)
        left = mpmath.mpf(l) * big / (k * k) * dv
        right = big / k * dv
        b = (4 * rv + eps) / (4 * (k + l)) - left
        c = (4 * rv + eps) / (4 * (k + l)) + right
        beta = (2 * rv + eps) / (2 * (k + l)) - left
        gamma = (2 * rv + eps) / (2 * (k + l)) + right
        base = phi(cfg, k, l, hp=True)
        checks: List[InequalityReport] = []
        for m in ms:
            checks.append(_report(f"exp(phi(k,l)-phi(k-{m},l))<=1+{m}b",
                                  mpmath.exp(base - phi(cfg, k - m, l, hp=True)), 1 + m * b))
            checks.append(_report(f"exp(phi(k,l)-phi(k,l-{m}))<=1+{m}c",
                                  mpmath.exp(base - phi(cfg, k, l - m, hp=True)), 1 + m * c))
        if k + l <= EXACT_BINOMIAL_CAP:
            star = alpha_star(cfg, k, l)
            for m in ms:
                for kk, ll, coeff, name in ((k - m, l, beta, "beta"), (k, l - m, gamma, "gamma")):
                    a = mpmath.exp(log_alpha(cfg, kk, ll))
                    lhs = a / (mpmath.mpf(star.numerator) / star.denominator) if star else mpmath.inf
                    checks.append(_report(f"alpha({kk},{ll})/alpha*(k,l)<=1+{m}{name}",
                                          lhs, 1 + m * coeff))
    pre = (("k,l>=200r^4/eps^2", bool(k >= need and l >= need)),)
    return SmoothnessCertificate(k, l, float(beta), float(gamma), float(b), float(c),
                                 tuple(checks), pre, cfg)


def inductive_step_preconditions(cfg: BoundConfig,
                                 cert: SmoothnessCertificate) -> List[InequalityReport]:
    """One report per hypothesis of the inductive step, both sides evaluated."""
    k, l, r = cert.k, cert.l, cfg.r
    with mpmath.workdps(WORK_DPS):
        direct = k * mpmath.mpf(cert.beta) + l * mpmath.mpf(cert.gamma)
        identity = rho(cfg, mpmath.mpf(l) / k) + mpmath.mpf(cfg.epsilon) / 2
        same = bool(abs(direct - identity) <= 1e-12 * max(1, abs(identity)))
        logk = mpmath.log(k)
        ratio_ok = bool(cfg.epsilon <= l / k <= 1)
        return [
            _report("k*beta+l*gamma<=(r-3)l/(2k)", direct, mpmath.mpf(r - 3) * l / (2 * k),
                    pre=[("k*beta+l*gamma=rho(l/k)+eps/2", same), ("l/k in [eps,1]", ratio_ok)]),
            _report("|beta|+|gamma|<=r(log k)^2/k", abs(cert.beta) + abs(cert.gamma),
                    r * logk ** 2 / k),
            _report("log alpha(k,l)>=-r(l/k)log k", -r * mpmath.mpf(l) / k * logk,
                    log_alpha(cfg, k, l)),
            _report("r<=c_eps*log k", r, cfg.c_eps_small * logk),
        ]


# -- Ramsey-graph diagnostics -------------------------------------------------


def degree_regularity_bounds(p, beta, gamma, n: int) -> Tuple[float, float]:
    """Upper bounds on ``mu`` and ``nu`` of a Ramsey graph at the smoothness parameters."""
    if n < 1:
        raise DomainError("n must be positive")
    exact = all(isinstance(v, (int, Fraction)) for v in (p, beta, gamma))
    if exact:
        p, beta, gamma = Fraction(p), Fraction(beta), Fraction(gamma)
        inv_n = Fraction(1, n)
    else:
        p, beta, gamma = float(p), float(beta), float(gamma)
        inv_n = 1 / n
    mu = max(p * beta, (1 - p) * gamma)
    nu = 2 * max(p, 1 - p) * (p * beta + (1 - p) * gamma) + inv_n
    return mu, nu


@dataclass(frozen=True)
class DegreeWindow:
    low: object
    high: object

    @property
    def empty(self) -> bool:
        return self.low >= self.high

    def __contains__(self, d) -> bool:
        return self.low <= d < self.high


def degree_window(alpha_km1l, alpha_klm1, alpha_star_kl, k: int, l: int, n: int) -> DegreeWindow:
    """Half-open interval that every degree of an extremal Ramsey graph must lie in."""
    if alpha_star_kl <= 0:
        raise DomainError("alpha* must be positive")
    vals = (alpha_km1l, alpha_klm1, alpha_star_kl)
    if all(isinstance(v, (int, Fraction)) for v in vals):
        up, down = Fraction(alpha_km1l) / alpha_star_kl, Fraction(alpha_klm1) / alpha_star_kl
        kk, ll = Fraction(k, k + l), Fraction(l, k + l)
    else:
        up, down = float(alpha_km1l) / float(alpha_star_kl), float(alpha_klm1) / float(alpha_star_kl)
        kk, ll = k / (k + l), l / (k + l)
    return DegreeWindow((1 - down * ll) * n, up * kk * n)


def _triangles(a: np.ndarray) -> int:
    a = a.astype(np.int64)
    return int(np.einsum("ij,jk,ki->", a, a, a)) // 6


def goodman(g: SimpleGraph) -> Tuple[int, int]:
    """Monochromatic triangle count both directly and from the degree sequence."""
    a = g.adjacency_matrix()
    comp = 1 - a
    np.fill_diagonal(comp, 0)
    mono = _triangles(a) + _triangles(comp)
    n = g.n
    deg = g.degrees().tolist()
    twice = sum(d * (n - 1 - d) for d in deg)
    return mono, math.comb(n, 3) - twice // 2


# -- bound evaluation ---------------------------------------------------------


@dataclass(frozen=True)
class BoundResult:
    """An upper bound on ``R(k+1, l+1)`` next to the binomial baseline."""

    k: int
    l: int
    bound_log: LogReal
    es_baseline_log: LogReal
    ratio_log: LogReal
    exact_value: Optional[int]
    r: int
    epsilon: float
    C_eps: float
    phi: float
    log_alpha: float
    regime: str
    c_derived: Optional[float] = None

    @property
    def improves(self) -> bool:
        return self.ratio_log.log < 0

    @property
    def implied_exponent(self) -> Optional[float]:
        """``-c (log k)^2`` for the derived ``c``; the log-ratio never exceeds it."""
        if self.c_derived is None:
            return None
        return -self.c_derived * math.log(max(self.k, self.l)) ** 2

    def as_row(self) -> Dict[str, str]:
        return {
            "k": str(self.k), "l": str(self.l), "r": str(self.r),
            "epsilon": format_number(self.epsilon), "C_eps": format_number(self.C_eps),
            "phi": format_number(self.phi), "log_alpha": format_number(self.log_alpha),
            "log_bound": format_number(float(self.bound_log.log)),
            "log_es": format_number(float(self.es_baseline_log.log)),
            "log_ratio": format_number(float(self.ratio_log.log)),
            "regime": self.regime,
        }

    def as_dict(self) -> Dict[str, object]:
        return {
            "k": self.k, "l": self.l, "r": self.r, "epsilon": self.epsilon, "C_eps": self.C_eps,
            "phi": self.phi, "log_alpha": self.log_alpha, "regime": self.regime,
            "bound_log": self.bound_log.as_dict(),
            "es_baseline_log": self.es_baseline_log.as_dict(),
            "ratio_log": self.ratio_log.as_dict(),
            "exact_value": None if self.exact_value is None else str(self.exact_value),
            "c_derived": self.c_derived,
            "implied_exponent": self.implied_exponent,
        }


BOUND_TABLE_FIELDS = ("k", "l", "r", "epsilon", "C_eps", "phi", "log_alpha", "log_bound",
                      "log_es", "log_ratio", "regime")


def es_baseline(k: int, l: int) -> LogReal:
    _check_kl(k, l)
    return LogReal.from_log(log_binomial(k + l, k))


def is_base_case(cfg: BoundConfig, k: int, l: int) -> bool:
    """Small ``min(k, l)`` or a lopsided ratio: there ``alpha >= 1`` and the baseline rules."""
    return min(k, l) <= 2 ** (cfg.C_eps * cfg.r) or min(k, l) < cfg.epsilon * max(k, l)


def ramsey_upper_bound(cfg: BoundConfig, k: int, l: int) -> BoundResult:
    _check_kl(k, l)
    es = es_baseline(k, l)
    la = log_alpha(cfg, k, l)
    ph = float(phi(cfg, k, l, hp=True))
    small = k + l <= EXACT_BINOMIAL_CAP
    if is_base_case(cfg, k, l):
        exact = math.comb(k + l, k) if small else None
        return BoundResult(k, l, es, es, LogReal.from_log(0), exact, cfg.r, cfg.epsilon,
                           cfg.C_eps, ph, float(la), REGIME_ES_BASE)
    with mpmath.workdps(WORK_DPS):
        bound = LogReal.from_log(la + es.log)
    exact = _floor_alpha_binomial(cfg, k, l)[0] if small else None
    return BoundResult(k, l, bound, es, LogReal.from_log(la), exact, cfg.r, cfg.epsilon,
                       cfg.C_eps, ph, float(la), REGIME_INDUCTION)


def prescribed_r(k: int, epsilon: float, C_eps: float) -> int:
    """``floor(epsilon^3 log k / (64 C_eps))``."""
    if C_eps <= 0:
        raise DomainError("C_eps must be positive here")
    with mpmath.workdps(WORK_DPS):
        return int(mpmath.floor(mpmath.mpf(epsilon) ** 3 * mpmath.log(k) / (64 * mpmath.mpf(C_eps))))


def derived_c(r: int, epsilon: float, C_eps: float, k: int) -> float:
    """``c`` with ``C r^2 log 2 - (r-4) eps^3 log k / 32 = -c (log k)^2``."""
    L = math.log(k)
    return ((r - 4) * epsilon ** 3 * L / 32 - C_eps * r * r * math.log(2)) / (L * L)


def best_bound(k: int, l: int, epsilon: float, C_eps: float = DEFAULT_C_EPS) -> BoundResult:
    """The bound at the prescribed ``r``, evaluated with the half-width ramp.

    When the prescribed ``r`` is below 5 the baseline is returned with regime
    ``es-smallr`` and ``c = 0``.  The recorded epsilon is the ramp width
    ``epsilon / 2`` actually used.
    """
    _check_kl(k, l)
    if not 0 < epsilon < 0.5:
        raise DomainError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    kk = max(k, l)
    r = prescribed_r(kk, epsilon, C_eps)
    if r < 5:
        es = es_baseline(k, l)
        exact = math.comb(k + l, k) if k + l <= EXACT_BINOMIAL_CAP else None
        return BoundResult(k, l, es, es, LogReal.from_log(0), exact, r, epsilon / 2, C_eps,
                           0.0, 0.0, REGIME_ES_SMALLR, 0.0)
    res = ramsey_upper_bound(BoundConfig(r, epsilon / 2, C_eps), k, l)
    usable = res.regime == REGIME_INDUCTION and min(k, l) >= epsilon * kk
    c = derived_c(r, epsilon, C_eps, kk) if usable else 0.0
    return BoundResult(res.k, res.l, res.bound_log, res.es_baseline_log, res.ratio_log,
                       res.exact_value, r, epsilon / 2, C_eps, res.phi, res.log_alpha,
                       res.regime, c)


def bound_table_rows(cells: Sequence[Tuple[int, int, int, float, float]]) -> List[Dict[str, str]]:
    """CSV rows for ``(k, l, r, epsilon, C_eps)`` cells, in input order."""
    return [bound_row(cell) for cell in cells]


def bound_row(cell: Tuple[int, int, int, float, float]) -> Dict[str, str]:
    k, l, r, eps, c_eps = cell
    return ramsey_upper_bound(BoundConfig(r, eps, c_eps), k, l).as_row()
