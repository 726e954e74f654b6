"""Distribution of the product Z = X*Y of two independent variance-gamma
variables: density, distribution function, sign probability, characteristic
function, tail/origin asymptotics and quantiles.

Evaluation regimes
------------------
* ``finite-sum``: both shapes half-odd-integers; closed Bessel / Lommel /
  Whittaker sums, exact up to the special-function kernel.
* ``series``: the double series of G^{4,0}_{0,4} values (small and moderate
  |z|).
* ``quadrature``: inverse-Mellin contour quadrature on per-branch saddle
  lines; takes over where float64 residue summation cancels and serves the
  distribution function's tails.
* ``asymptotic``: the two-term square-root-exponential tail laws beyond the
  configured switch.
"""

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.special as sp
from scipy.integrate import quad

from . import meijer, specfun
from ._contour import mellin_branch_integral
from ._series import pdf_series_core
from .errors import ConvergenceError, DomainError, SingularityError
from .result import ASYMPTOTIC, FINITE_SUM, QUADRATURE, SERIES, EvalResult
from .tailform import TailForm, tail_combine
from .vg import VGParams, vg_prob_nonpositive, vg_tail_forms

__all__ = [
    "SeriesPolicy", "ProductDist",
    "product_pdf", "product_pdf_series", "product_pdf_halfint",
    "product_cdf", "product_cdf_symmetric", "product_cdf_halfint",
    "product_prob_nonpositive", "product_cf",
    "product_tail_asymp", "product_pdf_asymp", "product_pdf_origin",
    "solve_tail_equation", "product_quantile",
    "TailForm", "tail_combine",
]

_SHAPE_TOL = 1e-12


@dataclass(frozen=True)
class SeriesPolicy:
    """Evaluation policy: tolerances and regime thresholds.

    ``tail_switch_rho`` and ``series_rho`` are expressed on the natural
    scale 2*sqrt(rate * |z|) of the square-root-exponential decay.
    """

    series_tol: float = 1e-10
    max_terms: int = 400
    origin_switch: float | None = None
    tail_switch_rho: float = 35.0
    series_rho: float = 12.0
    contour_tol: float = 1e-11
    g_max_layers: int = 300

    def __post_init__(self):
        if not (self.series_tol > 0.0 and self.contour_tol > 0.0):
            raise DomainError("policy tolerances must be positive")
        if self.max_terms < 8:
            raise DomainError("max_terms too small")


@dataclass(frozen=True)
class ProductDist:
    """Product of two independent variance-gamma variables."""

    px: VGParams
    py: VGParams
    policy: SeriesPolicy = field(default_factory=SeriesPolicy)

    # -- parameter helpers -------------------------------------------------

    @property
    def is_halfint(self):
        return (_is_nonneg_int(self.px.m - 0.5) and _is_nonneg_int(self.py.m - 0.5))

    @property
    def is_symmetric(self):
        return self.px.beta == 0.0 and self.py.beta == 0.0

    @property
    def xi1(self):
        """min rate product governing the right tail."""
        return min(self.px.lambda_minus * self.py.lambda_minus,
                   self.px.lambda_plus * self.py.lambda_plus)

    @property
    def xi2(self):
        """min rate product governing the left tail."""
        return min(self.px.lambda_minus * self.py.lambda_plus,
                   self.px.lambda_plus * self.py.lambda_minus)

    @property
    def origin_switch(self):
        if self.policy.origin_switch is not None:
            return self.policy.origin_switch
        return 1e-3 * 4.0 / (self.px.alpha * self.py.alpha)

    def tail_rho(self, z):
        xi = self.xi1 if z > 0.0 else self.xi2
        return 2.0 * math.sqrt(xi * abs(z))

    def g_rho(self, z):
        return 2.0 * math.sqrt(self.px.alpha * self.py.alpha * abs(z))

    @property
    def log_series_prefactor(self):
        # gamma1^{2m+1} gamma2^{2n+1} / (4 pi a1^{2m} a2^{2n} G(m+1/2) G(n+1/2))
        px, py = self.px, self.py
        return (px.log_norm_const + py.log_norm_const
                + (px.m + py.m - 2.0) * math.log(2.0)
                - px.m * math.log(px.alpha) - py.m * math.log(py.alpha))

    # -- convenience front ends --------------------------------------------

    def pdf(self, z):
        return product_pdf(self, z).value

    def cdf(self, z):
        return product_cdf(self, z)

    def sf(self, z):
        return 1.0 - product_cdf(self, z)

    def cf(self, t):
        return product_cf(self, t)

    def quantile(self, p):
        return product_quantile(self, p)

    def prob_nonpositive(self):
        return product_prob_nonpositive(self)

    def with_policy(self, **kwargs):
        return replace(self, policy=replace(self.policy, **kwargs))


def _is_nonneg_int(v):
    return v > -_SHAPE_TOL and abs(v - round(v)) < _SHAPE_TOL


def _sign(z):
    return 1.0 if z > 0.0 else (-1.0 if z < 0.0 else 0.0)


def _exp_or_zero(logv):
    return math.exp(logv) if logv > -745.0 else 0.0


# ---------------------------------------------------------------------------
# density

def product_pdf_series(d, z):
    """Density via the double series of G^{4,0}_{0,4} terms.

    Collapses to a single G value when both skewness parameters vanish and
    to a single series when one does.  Raises on z = 0 (the density is
    unbounded at the origin) and when the layer budget is exhausted.
    """
    z = float(z)
    if z == 0.0:
        raise SingularityError("product density is singular at z = 0")
    px, py, pol = d.px, d.py, d.policy
    val, err, outer, ncontour, status = pdf_series_core(
        abs(z), _sign(z), px.m, py.m, px.alpha, px.beta, py.alpha, py.beta,
        pol.series_tol, pol.series_tol * 0.03, pol.max_terms, pol.g_max_layers)
    if status != 0:
        raise ConvergenceError(
            f"density series did not converge at z={z:g} "
            f"({outer} layers, status {status})")
    pref = math.exp(d.log_series_prefactor)
    regime = SERIES if ncontour == 0 else QUADRATURE
    return EvalResult(pref * val, pref * err, regime, outer)


def product_pdf_halfint(d, z):
    """Finite double Bessel sum for half-odd-integer shapes m, n."""
    z = float(z)
    if z == 0.0:
        raise SingularityError("product density is singular at z = 0")
    if not d.is_halfint:
        raise DomainError("both shapes must be half-odd-integers")
    px, py = d.px, d.py
    m, n = px.m, py.m
    m2, n2 = int(round(m - 0.5)), int(round(n - 0.5))
    zz = abs(z)
    i = np.arange(m2 + 1.0)[:, None]
    j = np.arange(n2 + 1.0)[None, :]
    lw = (sp.gammaln(m2 + i + 1.0) - sp.gammaln(i + 1.0) - sp.gammaln(m2 - i + 1.0)
          + sp.gammaln(n2 + j + 1.0) - sp.gammaln(j + 1.0) - sp.gammaln(n2 - j + 1.0)
          + (n2 - j) * math.log(zz)
          - i * math.log(2.0 * px.alpha) - j * math.log(2.0 * py.alpha))
    order = m - n - i + j
    total = 0.0
    for lam1, b2arg in ((px.lambda_minus, py.alpha * zz - py.beta * z),
                        (px.lambda_plus, py.alpha * zz + py.beta * z)):
        arg = 2.0 * np.sqrt(lam1 * b2arg)
        kv = sp.kve(order, arg)
        logs = lw + 0.5 * order * (np.log(b2arg) - math.log(lam1)) + np.log(kv) - arg
        total += float(np.sum(np.exp(logs)))
    lpref = ((m + 0.5) * math.log(px.gamma2) + (n + 0.5) * math.log(py.gamma2)
             - (m + n) * math.log(2.0)
             - (m + 0.5) * math.log(px.alpha) - (n + 0.5) * math.log(py.alpha)
             - math.lgamma(m2 + 1.0) - math.lgamma(n2 + 1.0))
    return EvalResult(math.exp(lpref) * total, 1e-13 * math.exp(lpref) * total,
                      FINITE_SUM, (m2 + 1) * (n2 + 1))


def _pdf_contour(d, z):
    """Inverse-Mellin density on per-branch saddle lines (mid/far regime)."""
    px, py, pol = d.px, d.py, d.policy
    zz = abs(z)
    pairs = ((1, 1), (-1, -1)) if z > 0.0 else ((1, -1), (-1, 1))
    total = 0.0
    err = 0.0
    evals = 0
    for e1, e2 in pairs:
        v, e, ne, status = mellin_branch_integral(
            zz, px.m, px.alpha, px.beta, e1, py.m, py.alpha, py.beta, e2,
            False, pol.contour_tol)
        if status != 0:
            raise ConvergenceError(f"contour density stalled at z={z:g}")
        total += v
        err += e
        evals += ne
    return EvalResult(total, err, QUADRATURE, evals)


def product_pdf(d, z):
    """Density dispatcher: finite sum, series, contour or tail asymptotics."""
    z = float(z)
    if z == 0.0:
        raise SingularityError("product density is singular at z = 0")
    if d.is_halfint:
        return product_pdf_halfint(d, z)
    if d.tail_rho(z) > d.policy.tail_switch_rho:
        val = product_pdf_asymp(d, z)
        rel = 1.0 / d.tail_rho(z)
        return EvalResult(val, rel * val, ASYMPTOTIC, 2)
    if d.is_symmetric or d.g_rho(z) <= d.policy.series_rho:
        return product_pdf_series(d, z)
    return _pdf_contour(d, z)


# ---------------------------------------------------------------------------
# distribution function

def _log_gamma_pair(d):
    return math.lgamma(d.px.m + 0.5) + math.lgamma(d.py.m + 0.5)


def product_cdf_symmetric(d, z, shifted=False):
    """Closed-form distribution function for beta1 = beta2 = 0.

    ``shifted`` selects the parameter-shifted twin of the same formula
    (used as an internal consistency check); both give F(0) = 1/2 exactly.
    """
    if not d.is_symmetric:
        raise DomainError("closed symmetric form needs beta1 = beta2 = 0; "
                          "use product_cdf")
    z = float(z)
    if z == 0.0:
        return 0.5
    px, py, pol = d.px, d.py, d.policy
    m, n = px.m, py.m
    aa = px.alpha * py.alpha
    xg = aa * aa * z * z / 16.0
    lg = _log_gamma_pair(d)
    if not shifted:
        g = meijer.g41_15(xg, 0.5, [0.0, 0.0, m, n, -0.5], tol=pol.contour_tol)
        return 0.5 + aa * z / (8.0 * math.pi) * math.exp(-lg) * g.value
    g = meijer.g41_15(xg, 1.0, [0.5, 0.5, m + 0.5, n + 0.5, 0.0], tol=pol.contour_tol)
    return 0.5 + _sign(z) / (2.0 * math.pi) * math.exp(-lg) * g.value


def _halfint_coeffs(d):
    px, py = d.px, d.py
    m, n = px.m, py.m
    m2, n2 = int(round(m - 0.5)), int(round(n - 0.5))
    i = np.arange(m2 + 1.0)[:, None]
    j = np.arange(n2 + 1.0)[None, :]
    lw = (sp.gammaln(m2 + i + 1.0) - sp.gammaln(i + 1.0) - i * math.log(2.0 * px.alpha)
          + sp.gammaln(n2 + j + 1.0) - sp.gammaln(j + 1.0) - j * math.log(2.0 * py.alpha))
    p = 0.5 * (m - n - i + j)
    q = 0.5 * (m + n - i - j)
    return m2, n2, np.exp(lw), p, q


def _gtilde_grid(mu, nu, x):
    out = np.empty_like(mu)
    it = np.nditer([mu, nu], flags=["multi_index"])
    for muv, nuv in it:
        _, gt = specfun.lommel_g(float(muv), float(nuv), x)
        out[it.multi_index] = gt
    return out


def _g_grid(mu, nu, x):
    out = np.empty_like(mu)
    it = np.nditer([mu, nu], flags=["multi_index"])
    for muv, nuv in it:
        g, _ = specfun.lommel_g(float(muv), float(nuv), x)
        out[it.multi_index] = g
    return out


def product_cdf_halfint(d, z):
    """Finite Lommel-combination sums for half-odd-integer shapes."""
    if not d.is_halfint:
        raise DomainError("both shapes must be half-odd-integers")
    z = float(z)
    if z == 0.0:
        return product_prob_nonpositive(d)
    px, py = d.px, d.py
    m, n = px.m, py.m
    m2, n2, w, p, q = _halfint_coeffs(d)
    lpref = ((m + 0.5) * math.log(px.gamma2) + (n + 0.5) * math.log(py.gamma2)
             - (m + 0.5) * math.log(2.0 * px.alpha) - (n + 0.5) * math.log(2.0 * py.alpha)
             - math.lgamma(m2 + 1.0) - math.lgamma(n2 + 1.0))
    pref = math.exp(lpref)
    zz = abs(z)
    if px.beta == 0.0 and py.beta == 0.0:
        aa = px.alpha * py.alpha
        x = 2.0 * math.sqrt(aa * zz)
        gg = _g_grid(2.0 * q, 2.0 * p, x)
        s = float(np.sum(w * (py.alpha / px.alpha) ** p * gg / aa ** q))
        # the beta=0 prefactor differs from the general one:
        # alpha1^m alpha2^n / (2^{m+n} m2! n2!) with the (2 alpha)^i,j weights
        lpref0 = (m * math.log(px.alpha) + n * math.log(py.alpha)
                  - (m + n) * math.log(2.0)
                  - math.lgamma(m2 + 1.0) - math.lgamma(n2 + 1.0))
        return 0.5 + _sign(z) * math.exp(lpref0) * s
    if z > 0.0:
        pairs = ((px.lambda_minus, py.lambda_minus), (px.lambda_plus, py.lambda_plus))
    else:
        pairs = ((px.lambda_minus, py.lambda_plus), (px.lambda_plus, py.lambda_minus))
    s = 0.0
    for lam1, lam2 in pairs:
        x = 2.0 * math.sqrt(lam1 * lam2 * zz)
        gt = _gtilde_grid(2.0 * q, 2.0 * p, x)
        s += float(np.sum(w * (lam2 / lam1) ** p * gt / (lam1 * lam2) ** (q + 0.5)))
    return 1.0 - pref * s if z > 0.0 else pref * s


def _sf_contour(d, z):
    """P(Z > z) for z > 0, or P(Z <= z) for z < 0, by contour quadrature."""
    px, py, pol = d.px, d.py, d.policy
    zz = abs(z)
    pairs = ((1, 1), (-1, -1)) if z > 0.0 else ((1, -1), (-1, 1))
    total = 0.0
    err = 0.0
    evals = 0
    for e1, e2 in pairs:
        v, e, ne, status = mellin_branch_integral(
            zz, px.m, px.alpha, px.beta, e1, py.m, py.alpha, py.beta, e2,
            True, pol.contour_tol)
        if status != 0:
            raise ConvergenceError(f"contour tail stalled at z={z:g}")
        total += v
        err += e
        evals += ne
    return EvalResult(total, err, QUADRATURE, evals)


def product_cdf(d, z):
    """Distribution function F(z) = P(Z <= z), any admissible parameters."""
    z = float(z)
    if z == 0.0:
        return product_prob_nonpositive(d)
    if d.is_halfint:
        return product_cdf_halfint(d, z)
    if d.is_symmetric and d.g_rho(z) <= 30.0:
        return product_cdf_symmetric(d, z)
    sf = _sf_contour(d, z).value
    return 1.0 - sf if z > 0.0 else sf


def product_prob_nonpositive(d):
    """P(Z <= 0) from the two marginal sign probabilities."""
    p1 = vg_prob_nonpositive(d.px)
    p2 = vg_prob_nonpositive(d.py)
    return p1 + p2 - 2.0 * p1 * p2


# ---------------------------------------------------------------------------
# characteristic function

def product_cf(d, t, shifted=False):
    """Characteristic function; exactly 1 at t = 0.

    Symmetric case routes through the closed G^{3,1}_{1,3} form (real
    valued), half-integer shapes through the four-term Whittaker sum, and
    everything else through oscillation-aware Fourier quadrature of the
    density.
    """
    t = float(t)
    if t == 0.0:
        return complex(1.0)
    if d.is_symmetric:
        return complex(_cf_symmetric(d, t, shifted))
    if d.is_halfint:
        return _cf_whittaker(d, t)
    return _cf_fourier(d, t)


def _cf_symmetric(d, t, shifted=False):
    px, py, pol = d.px, d.py, d.policy
    m, n = px.m, py.m
    aa = px.alpha * py.alpha
    xg = aa * aa / (4.0 * t * t)
    lg = _log_gamma_pair(d)
    if not shifted:
        g = meijer.g31_13(xg, 0.5, [0.0, m, n], tol=pol.contour_tol)
        return aa / (2.0 * math.sqrt(math.pi) * abs(t)) * math.exp(-lg) * g.value
    g = meijer.g31_13(xg, 1.0, [0.5, m + 0.5, n + 0.5], tol=pol.contour_tol)
    return math.exp(-lg) / math.sqrt(math.pi) * g.value


def _cf_whittaker(d, t):
    if t < 0.0:
        return _cf_whittaker(d, -t).conjugate()
    px, py = d.px, d.py
    m, n = px.m, py.m
    m2, n2, w, p, q = _halfint_coeffs(d)
    lpref = ((m + 0.5) * math.log(px.gamma2) + (n + 0.5) * math.log(py.gamma2)
             - (m + 0.5) * math.log(2.0 * px.alpha) - (n + 0.5) * math.log(2.0 * py.alpha)
             - math.lgamma(m2 + 1.0) - math.lgamma(n2 + 1.0))
    pref = math.exp(lpref)
    acc = 0.0 + 0.0j
    lt = math.log(t)
    for i in range(m2 + 1):
        for j in range(n2 + 1):
            pij = float(p[i, j])
            qij = float(q[i, j])
            wij = float(w[i, j])
            term = 0.0 + 0.0j
            for lam1, lam2, pos in ((px.lambda_minus, py.lambda_minus, True),
                                    (px.lambda_plus, py.lambda_plus, True),
                                    (px.lambda_minus, py.lambda_plus, False),
                                    (px.lambda_plus, py.lambda_minus, False)):
                y = lam1 * lam2 / t
                if pos:
                    # (-i t)^{-q} exp(i y / 2) W_{-q,p}(i y)
                    pw = cmath.exp(-qij * complex(lt, -0.5 * math.pi))
                    term += ((lam2 / lam1) ** pij * pw / math.sqrt(lam1 * lam2)
                             * cmath.exp(0.5j * y) * specfun.whittaker_w(-qij, pij, 1j * y))
                else:
                    pw = cmath.exp(-qij * complex(lt, 0.5 * math.pi))
                    term += ((lam2 / lam1) ** pij * pw / math.sqrt(lam1 * lam2)
                             * cmath.exp(-0.5j * y) * specfun.whittaker_w(-qij, pij, -1j * y))
            acc += wij * term
    return pref * acc


def _cf_fourier(d, t):
    at = abs(t)
    z_hi = max((45.0 / 2.0) ** 2 / d.xi1, (45.0 / 2.0) ** 2 / d.xi2)

    def even(zv):
        return product_pdf(d, zv).value + product_pdf(d, -zv).value

    def odd(zv):
        return product_pdf(d, zv).value - product_pdf(d, -zv).value

    re, _ = quad(even, 0.0, z_hi, weight="cos", wvar=at,
                 epsabs=1e-11, epsrel=1e-10, limit=400)
    im, _ = quad(odd, 0.0, z_hi, weight="sin", wvar=at,
                 epsabs=1e-11, epsrel=1e-10, limit=400)
    if t < 0.0:
        im = -im
    return complex(re, im)


# ---------------------------------------------------------------------------
# asymptotics

def _product_tail_forms(d):
    """(right, left) combined tail laws of Z (exponent 1/2)."""
    xr, xl = vg_tail_forms(d.px)
    yr, yl = vg_tail_forms(d.py)
    right = (tail_combine(xr, yr), tail_combine(xl, yl))
    left = (tail_combine(xr, yl), tail_combine(xl, yr))
    return right, left


def product_tail_asymp(d, z):
    """Two-term tail law: P(Z > z) for z > 0, P(Z <= z) for z < 0."""
    z = float(z)
    if z == 0.0:
        raise DomainError("tail asymptotics need z != 0")
    right, left = _product_tail_forms(d)
    forms = right if z > 0.0 else left
    return sum(f.survival(abs(z)) for f in forms)


def product_pdf_asymp(d, z):
    """Two-term density tail law (differentiated tail, leading order)."""
    z = float(z)
    if z == 0.0:
        raise DomainError("tail asymptotics need z != 0")
    px, py = d.px, d.py
    m, n = px.m, py.m
    zz = abs(z)
    lpref = (0.5 * math.log(math.pi)
             + (m + 0.5) * math.log(px.gamma2) + (n + 0.5) * math.log(py.gamma2)
             - (m + 0.5) * math.log(2.0 * px.alpha) - (n + 0.5) * math.log(2.0 * py.alpha)
             - _log_gamma_pair(d) + 0.25 * (2.0 * m + 2.0 * n - 3.0) * math.log(zz))
    if z > 0.0:
        pairs = ((px.lambda_minus, py.lambda_minus), (px.lambda_plus, py.lambda_plus))
    else:
        pairs = ((px.lambda_minus, py.lambda_plus), (px.lambda_plus, py.lambda_minus))
    tot = 0.0
    for lam1, lam2 in pairs:
        tot += _exp_or_zero(lpref
                            + 0.25 * (2.0 * n - 2.0 * m - 1.0) * math.log(lam1)
                            + 0.25 * (2.0 * m - 2.0 * n - 1.0) * math.log(lam2)
                            - 2.0 * math.sqrt(lam1 * lam2 * zz))
    return tot


_ORIGIN_CASES = {1: "log", 2: "log^2", 3: "log^3", 4: "power", 5: "power-log"}


def product_pdf_origin(d, z):
    """Leading origin behaviour of the density; returns (value, case).

    Cases: 1 both shapes positive (-C log|z|); 2 one shape zero
    (C log^2|z|); 3 both zero (-C log^3|z|/3 type); 4 strict negative
    minimum shape (C |z|^{2 mmin}); 5 equal negative shapes
    (-C |z|^{2m} log|z|).  Shape classification uses absolute tolerance
    1e-12; the formulas are the exact leading terms, so the ratio against
    the series tends to 1 only as |z| -> 0.
    """
    z = float(z)
    if z == 0.0:
        raise SingularityError("origin form evaluated at z = 0")
    if abs(z) >= d.origin_switch:
        raise DomainError(f"|z| >= origin_switch={d.origin_switch:g}; "
                          "use the series evaluator")
    px, py = d.px, d.py
    m, n = px.m, py.m
    lz = math.log(abs(z))
    tol = 1e-12
    m_zero, n_zero = abs(m) < tol, abs(n) < tol
    if m_zero and n_zero:
        c = math.sqrt(px.gamma2 * py.gamma2)
        return -c / (3.0 * math.pi ** 2) * lz ** 3, 3
    if min(m, n) < -tol:
        if abs(m - n) < tol:
            mm = 0.5 * (m + n)
            c = ((px.gamma2 * py.gamma2) ** (mm + 0.5) / math.pi
                 * math.exp(2.0 * math.lgamma(-mm) - 2.0 * math.lgamma(mm + 0.5)
                            - (4.0 * mm + 1.0) * math.log(2.0)))
            return -c * abs(z) ** (2.0 * mm) * lz, 5
        # strict minimum shape dominates; swap so that pz holds it
        pz, po = (px, py) if m < n else (py, px)
        mm, nn = pz.m, po.m
        c = (pz.gamma2 ** (mm + 0.5) * po.gamma2 ** (nn + 0.5) / math.pi
             * po.alpha ** (2.0 * (mm - nn))
             * math.exp(2.0 * math.lgamma(-mm) + math.lgamma(nn - mm)
                        - math.lgamma(mm + 0.5) - math.lgamma(nn + 0.5)
                        - (4.0 * mm + 2.0) * math.log(2.0)))
        return c * abs(z) ** (2.0 * mm), 4
    if m_zero or n_zero:
        # one zero shape, the other positive; roles swap freely since the
        # series is symmetric under (m, alpha1, beta1) <-> (n, alpha2, beta2)
        pz, po = (px, py) if m_zero else (py, px)
        nn = po.m
        val = (math.sqrt(pz.gamma2) * po.gamma2 ** (nn + 0.5)
               / (2.0 * math.pi ** 1.5 * po.alpha ** (2.0 * nn))
               * math.exp(math.lgamma(nn) - math.lgamma(nn + 0.5)) * lz * lz)
        return val, 2
    val = -(px.gamma2 ** (m + 0.5) * py.gamma2 ** (n + 0.5)
            / (2.0 * math.pi * px.alpha ** (2.0 * m) * py.alpha ** (2.0 * n))
            * math.exp(math.lgamma(m) + math.lgamma(n) - _log_gamma_pair(d)) * lz)
    return val, 1


# ---------------------------------------------------------------------------
# quantiles

def solve_tail_equation(amplitude, power, rate, z):
    """Solve A x^r exp(-a sqrt(x)) = z on the decreasing branch.

    Substituting u = sqrt(x) makes g(u) = a u - 2 r log(u) - log(A/z)
    monotone beyond u = 2r/a; safeguarded bracketing + Brent iteration.
    """
    from scipy.optimize import brentq

    if amplitude <= 0.0 or rate <= 0.0 or z <= 0.0:
        raise DomainError("need positive amplitude, rate and z")
    lw = math.log(amplitude) - math.log(z)
    if power > 0.0:
        u_peak = 2.0 * power / rate
        peak_log = math.log(amplitude) + 2.0 * power * math.log(u_peak) - rate * u_peak
        if math.log(z) >= peak_log:
            raise DomainError("z is not below the peak of the tail law; "
                              "no solution on the decreasing branch")
        u_lo = u_peak * (1.0 + 1e-10)
    else:
        u_lo = 1e-300 if power == 0.0 else 1e-12
        if power == 0.0 and lw <= 0.0:
            raise DomainError("z >= amplitude with power 0: no solution")

    def g(u):
        return rate * u - 2.0 * power * math.log(u) - lw

    u_hi = max(2.0 * u_lo, (lw + 1.0) / rate + 1.0)
    for _ in range(200):
        if g(u_hi) > 0.0:
            break
        u_hi *= 2.0
    else:
        raise DomainError("failed to bracket the tail equation")
    if power > 0.0 and g(u_lo) > 0.0:
        raise DomainError("failed to bracket the tail equation")
    u = brentq(g, u_lo, u_hi, xtol=1e-14, rtol=1e-15, maxiter=200)
    return u * u


def product_quantile(d, p):
    """Quantile by monotone bracketing of the distribution function.

    Brackets never evaluate the density (singular at 0); tail seeds follow
    the square-root-exponential laws.  The returned z satisfies
    |F(z) - p| <= 1e-9 within the accuracy of the F route used.
    """
    from scipy.optimize import brentq

    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError("quantile level must be inside (0, 1)")
    p0 = product_prob_nonpositive(d)
    if p == p0:
        return 0.0

    def f(z):
        return product_cdf(d, z) - p

    if p > p0:
        seed = (math.log1p(-p)) ** 2 / (4.0 * d.xi1)
        hi = max(seed, 1.0 / (d.px.alpha * d.py.alpha))
        for _ in range(200):
            if f(hi) > 0.0:
                break
            hi *= 2.0
        else:
            raise ConvergenceError("quantile bracketing failed on the right")
        lo = 0.0
    else:
        seed = (math.log(p)) ** 2 / (4.0 * d.xi2)
        lo = -max(seed, 1.0 / (d.px.alpha * d.py.alpha))
        for _ in range(200):
            if f(lo) < 0.0:
                break
            lo *= 2.0
        else:
            raise ConvergenceError("quantile bracketing failed on the left")
        hi = 0.0
    z = brentq(f, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=300)
    return z
