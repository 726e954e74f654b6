"""Residue-series kernels for the Mellin-Barnes integrals used here.

The three families share one engine.  The integrand is

    prod_j Gamma(b_j - s) * [Gamma(1 - a1 + s)] / [Gamma(1 - bden + s)] * x^s,

summed as ``-sum(residues)`` over the poles of the Gamma(b_j - s) factors
(s = b_j + k, loop closed to the right).  Poles of multiplicity up to 4 are
handled by analytic Laurent expansion of every factor to third order, using
digamma/trigamma/tetragamma - no epsilon perturbation.

All constants are accumulated in (sign, log) form so that huge x^s factors
against tiny Gamma products cannot produce inf*0.

Status codes: 0 ok, 1 not converged within the layer budget.
"""

import math

import numpy as np

from ._jit import njit
from ._scalars import exp_poly3, gamma_eps_factor

_CLUSTER_TOL = 1e-9
# Per-layer rounding model: a handful of Gamma/psi evaluations each with
# ~1e-15 relative error, mildly accumulating over layers.
_EPS_UNIT = 8e-16


@njit(cache=True)
def g_residue_core(x, b, nb, has_a, a1, has_den, bden, tol, max_layers):
    """Evaluate the residue series.  Returns (value, abs_err, layers, status).

    b : float64 array holding the nb numerator b-parameters.
    has_a / a1 : optional numerator factor Gamma(1 - a1 + s).
    has_den / bden : optional denominator factor Gamma(1 - bden + s).
    """
    L = math.log(x)

    # Cluster the b's by integer spacing; poles of a cluster sit at
    # min(cluster) + k with multiplicity = #(members <= pole).
    cl_id = np.full(nb, -1, np.int64)
    cl_base = np.zeros(nb, np.float64)
    ncl = 0
    for j in range(nb):
        for c in range(ncl):
            d = b[j] - cl_base[c]
            if abs(d - math.floor(d + 0.5)) < _CLUSTER_TOL:
                cl_id[j] = c
                if b[j] < cl_base[c]:
                    cl_base[c] = b[j]
                break
        if cl_id[j] < 0:
            cl_id[j] = ncl
            cl_base[ncl] = b[j]
            ncl += 1

    total = 0.0
    peak = 0.0
    below = 0
    layers = 0
    status = 1
    for k in range(max_layers):
        layer = 0.0
        for c in range(ncl):
            sstar = cl_base[c] + k
            lead = 0
            logc = sstar * L
            sign = 1.0
            p1 = L
            p2 = 0.0
            p3 = 0.0
            for j in range(nb):
                lj, cc, sg, q1, q2, q3 = gamma_eps_factor(b[j] - sstar, -1.0)
                lead += lj
                logc += cc
                sign *= sg
                p1 += q1
                p2 += q2
                p3 += q3
            if has_a:
                lj, cc, sg, q1, q2, q3 = gamma_eps_factor(1.0 - a1 + sstar, 1.0)
                if lj < 0:
                    # numerator a-pole collides with a b-pole: undefined G
                    return math.nan, math.inf, k, 2
                lead += lj
                logc += cc
                sign *= sg
                p1 += q1
                p2 += q2
                p3 += q3
            if has_den:
                lj, cc, sg, q1, q2, q3 = gamma_eps_factor(1.0 - bden + sstar, 1.0)
                lead -= lj
                logc -= cc
                sign *= sg
                p1 -= q1
                p2 -= q2
                p3 -= q3
            if lead >= 0:
                continue
            e0, e1, e2, e3 = exp_poly3(p1, p2, p3)
            if lead == -1:
                coef = e0
            elif lead == -2:
                coef = e1
            elif lead == -3:
                coef = e2
            else:
                coef = e3
            if logc > 700.0:
                return math.nan, math.inf, k, 3  # overflow guard
            layer += -sign * math.exp(logc) * coef
        total += layer
        layers = k + 1
        a = abs(layer)
        if a > peak:
            peak = a
        if a < tol * max(abs(total), 1e-300):
            below += 1
            if below >= 3:
                status = 0
                break
        else:
            below = 0
    # roundoff model only; the stopping rule bounds truncation by ~tol*|total|
    err = peak * _EPS_UNIT * (4.0 + math.sqrt(layers))
    return total, err, layers, status
