"""Independent verification engines.

Everything here deliberately avoids the closed-form evaluation paths:
densities come from the product-convolution integral, distribution values
from integrating that density, characteristic values from oscillatory
Fourier quadrature of it, and samples from the variance-mean mixture.
These are the oracles the closed forms are tested against.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError, DomainError, SingularityError
from .result import QUADRATURE, EvalResult
from .vg import vg_log_pdf, vg_sample

__all__ = ["QuadConfig", "quad_pdf", "quad_cdf", "cf_fourier",
           "mc_sample_product", "ks_distance"]


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-10
    max_subdivisions: int = 400
    singularity_pads: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise DomainError("tolerances must be positive")


_DEFAULT = QuadConfig()


def _log_window(d, z):
    """Half-width of the log-substituted convolution window."""
    lam = min(d.px.lambda_minus, d.px.lambda_plus,
              d.py.lambda_minus, d.py.lambda_plus)
    w = math.log(800.0 / (lam * math.sqrt(abs(z))))
    return max(36.0, min(w, 700.0))


def quad_pdf(d, z, cfg=_DEFAULT):
    """Density by adaptive quadrature of the product-convolution integral.

    The substitution x = sqrt(|z|) e^v removes the endpoint behaviour: the
    integrand becomes a smooth positive bump, exponentially small in both
    directions, with its saddle near v = 0.  All density factors are
    combined in log space (the m <= 0 origin singularity of one factor is
    damped by the exponential tail of the other).
    """
    z = float(z)
    if z == 0.0:
        raise SingularityError("the product density is singular at z = 0")
    px, py = d.px, d.py
    rz = math.sqrt(abs(z))
    sz = 1.0 if z > 0.0 else -1.0

    def integrand(v):
        x = rz * math.exp(v)
        y = sz * rz * math.exp(-v)
        l1 = vg_log_pdf(px, x) + vg_log_pdf(py, y)
        l2 = vg_log_pdf(px, -x) + vg_log_pdf(py, -y)
        t1 = math.exp(l1) if l1 > -745.0 else 0.0
        t2 = math.exp(l2) if l2 > -745.0 else 0.0
        return t1 + t2

    w = _log_window(d, z)
    pts = [p for p in cfg.singularity_pads if -w < p < w] or None
    val, err = quad(integrand, -w, w, points=pts, limit=cfg.max_subdivisions,
                    epsabs=cfg.abs_tol, epsrel=cfg.rel_tol)
    if not math.isfinite(val):
        raise ConvergenceError(f"convolution quadrature failed at z={z:g}")
    if err > 10.0 * (cfg.abs_tol + cfg.rel_tol * abs(val)) and err > 1e-14 * abs(val):
        raise ConvergenceError(
            f"convolution quadrature tolerance not met at z={z:g} (err {err:.1e})")
    return EvalResult(val, err, QUADRATURE)


def quad_cdf(d, z, cfg=_DEFAULT):
    """Distribution function by integrating quad_pdf (tail side).

    For z > 0 integrates the upper tail; for z <= 0 the lower tail; both
    through y = z_0 e^u so the square-root-exponential decay is resolved.
    """
    z = float(z)
    if z == 0.0:
        tail = _tail_integral(d, +1, 1e-8, cfg)
        return 1.0 - tail
    if z > 0.0:
        return 1.0 - _tail_integral(d, +1, z, cfg)
    return _tail_integral(d, -1, -z, cfg)


def _tail_integral(d, side, z0, cfg):
    xi = d.xi1 if side > 0 else d.xi2
    u_hi = 2.0 * math.log(max(2.0, 1200.0 / (xi * z0))) + 4.0

    def integrand(u):
        y = z0 * math.exp(u)
        return y * quad_pdf(d, side * y, cfg).value

    val, err = quad(integrand, 0.0, u_hi, limit=cfg.max_subdivisions,
                    epsabs=cfg.abs_tol, epsrel=max(cfg.rel_tol, 1e-9))
    return val


def cf_fourier(d, t, cfg=_DEFAULT):
    """Characteristic function by oscillatory Fourier quadrature of quad_pdf."""
    t = float(t)
    if t == 0.0:
        return complex(1.0)
    at = abs(t)
    z_hi = max((45.0 ** 2 / 4.0) / d.xi1, (45.0 ** 2 / 4.0) / d.xi2)

    def even(zv):
        return quad_pdf(d, zv, cfg).value + quad_pdf(d, -zv, cfg).value

    def odd(zv):
        return quad_pdf(d, zv, cfg).value - quad_pdf(d, -zv, cfg).value

    re, _ = quad(even, 0.0, z_hi, weight="cos", wvar=at,
                 epsabs=1e-10, epsrel=1e-9, limit=cfg.max_subdivisions)
    im, _ = quad(odd, 0.0, z_hi, weight="sin", wvar=at,
                 epsabs=1e-10, epsrel=1e-9, limit=cfg.max_subdivisions)
    if t < 0.0:
        im = -im
    return complex(re, im)


def mc_sample_product(d, n, seed):
    """n i.i.d. product draws; deterministic for a given seed."""
    if n < 1:
        raise DomainError("n must be >= 1")
    rng = np.random.default_rng(seed)
    x = vg_sample(d.px, n, rng)
    y = vg_sample(d.py, n, rng)
    return x * y


def ks_distance(samples, cdf):
    """Sup-norm distance between the empirical law of ``samples`` and ``cdf``.

    ``cdf`` is either a callable applied pointwise or an array of cdf values
    already evaluated at the (unsorted) samples.
    """
    s = np.asarray(samples, dtype=float)
    if s.size == 0:
        raise DomainError("samples must be nonempty")
    order = np.argsort(s, kind="mergesort")
    if callable(cdf):
        f = np.array([cdf(v) for v in s[order]])
    else:
        f = np.asarray(cdf, dtype=float)[order]
    n = s.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
