"""Pure-numpy displacement kernel; reference path and fallback for the Cython build."""
import numpy as np
from scipy.special import gammaln


def displacement_blocks(alphas, nrows, ncols):
    """Blocks D(alpha)[:nrows, :ncols] for every alpha, shape (P, nrows, ncols).

    Entries come from sqrt(lo!/(lo+k)!) |alpha|^k e^{-|alpha|^2/2} L_lo^(k)(|alpha|^2)
    (k = |m - n|, lo = min(m, n)) run as a rescaled recurrence in lo, so no
    factorial is ever formed on its own.
    """
    alphas = np.ascontiguousarray(alphas, dtype=complex).ravel()
    P = alphas.size
    nlo = min(nrows, ncols)
    nk = max(nrows, ncols)
    out = np.zeros((P, nrows, ncols), dtype=complex)
    if P == 0 or nrows == 0 or ncols == 0:
        return out

    r = np.abs(alphas)
    x = r * r
    phi = np.angle(alphas)
    k = np.arange(nk, dtype=float)

    # h0[p, k] = e^{-x/2} r^k / sqrt(k!); r = 0 gives -inf (or nan at k = 0, fixed below)
    with np.errstate(divide="ignore", invalid="ignore"):
        logr = np.log(r)
        expo = -0.5 * x[:, None] + k[None, :] * logr[:, None] - 0.5 * gammaln(k + 1.0)[None, :]
    expo[:, 0] = -0.5 * x
    h = np.empty((P, nk, nlo))
    h[:, :, 0] = np.exp(expo)
    if nlo > 1:
        h[:, :, 1] = (1.0 + k[None, :] - x[:, None]) * h[:, :, 0] / np.sqrt(k + 1.0)[None, :]
    for j in range(1, nlo - 1):
        a = (2 * j + 1 + k[None, :] - x[:, None]) * h[:, :, j]
        b = np.sqrt(j * (j + k))[None, :] * h[:, :, j - 1]
        h[:, :, j + 1] = (a - b) / np.sqrt((j + 1) * (j + 1 + k))[None, :]

    phase = np.exp(1j * k[None, :] * phi[:, None])
    sign = (-1.0) ** k
    for kk in range(nk):
        # lower triangle including the diagonal: m = lo + kk, n = lo
        nlow = min(nrows - kk, ncols)
        if nlow > 0:
            lo = np.arange(nlow)
            out[:, lo + kk, lo] = h[:, kk, :nlow] * phase[:, kk, None]
        if kk == 0:
            continue
        nup = min(ncols - kk, nrows)
        if nup > 0:
            lo = np.arange(nup)
            out[:, lo, lo + kk] = (sign[kk] * h[:, kk, :nup]) * np.conj(phase[:, kk, None])
    return out
