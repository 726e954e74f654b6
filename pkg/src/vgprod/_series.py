"""Jitted assembly of the product-density double series.

The density is a double sum of weighted G^{4,0}_{0,4} values whose
b-parameters shift with the summation indices.  Each G value is produced by
the residue kernel, falling back to saddle-line contour quadrature when the
a-posteriori estimate says float64 residue summation cannot meet the
per-term tolerance.  Truncation of the outer sum follows a
three-consecutive-layers rule against the accumulated value.
"""

import math

import numpy as np

from ._contour import g40_saddle, g_contour_core
from ._jit import njit
from ._residue import g_residue_core

_EMPTY = np.zeros(1)


@njit(cache=True)
def g40_eval(x, b, tol, max_layers):
    """Best-effort G^{4,0}_{0,4}: residue series, else saddle contour.

    Returns (value, abs_err, used_contour, status).
    """
    val, err, layers, status = g_residue_core(
        x, b, 4, False, 0.0, False, 0.0, tol, max_layers)
    if status == 0 and err <= tol * max(abs(val), 1e-300):
        return val, err, 0, 0
    bmin = min(b[0], min(b[1], min(b[2], b[3])))
    c = g40_saddle(x, b)
    if c > bmin - 0.3:
        c = bmin - 0.3
    val, err, evals, status = g_contour_core(
        x, _EMPTY, 0, b, 4, _EMPTY, 0, _EMPTY, 0, c, tol, 14)
    return val, err, 1, status


@njit(cache=True)
def pdf_series_core(zabs, sgnz, m, n, a1, b1, a2, b2, series_tol, g_tol,
                    max_outer, g_max_layers):
    """Double series for the density at |z|=zabs, sign sgnz (+-1).

    Returns (value, abs_err, outer_layers, n_contour_terms, status); the
    prefactor gamma-products are applied by the caller.
    """
    xg = (a1 * a1 * a2 * a2 / 16.0) * zabs * zabs
    t1 = 2.0 * b1 / a1
    t2 = 2.0 * b2 / a2
    lt1 = math.log(abs(t1)) if t1 != 0.0 else 0.0
    lt2 = math.log(abs(t2)) if t2 != 0.0 else 0.0
    b = np.empty(4, np.float64)
    total = 0.0
    err_acc = 0.0
    peak = 0.0
    below = 0
    status = 1
    outer = 0
    ncontour = 0
    for i in range(max_outer):
        layer = 0.0
        for j in range(2 * i + 1):
            # weight = sgnz^j * t1^j * t2^(2i-j) / (j! (2i-j)!)
            if (t1 == 0.0 and j > 0) or (t2 == 0.0 and j < 2 * i):
                continue
            wlog = j * lt1 + (2 * i - j) * lt2 - math.lgamma(j + 1.0) - math.lgamma(2 * i - j + 1.0)
            if wlog < -740.0:
                continue
            w = math.exp(wlog)
            if t1 < 0.0 and j % 2 == 1:
                w = -w
            if t2 < 0.0 and (2 * i - j) % 2 == 1:
                w = -w
            if sgnz < 0.0 and j % 2 == 1:
                w = -w
            b[0] = 0.5 * j
            b[1] = i - 0.5 * j
            b[2] = m + 0.5 * j
            b[3] = n + i - 0.5 * j
            g, gerr, used_c, gstat = g40_eval(xg, b, g_tol, g_max_layers)
            if gstat != 0:
                return total, err_acc, i, ncontour, 2
            ncontour += used_c
            layer += w * g
            err_acc += abs(w) * gerr
        total += layer
        outer = i + 1
        al = abs(layer)
        if al > peak:
            peak = al
        if al < series_tol * max(abs(total), 1e-300):
            below += 1
            if below >= 3:
                status = 0
                break
        else:
            below = 0
    err = err_acc + peak * 1e-15 * (2.0 + math.sqrt(outer)) + series_tol * abs(total)
    return total, err, outer, ncontour, status
