# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_kernel_py.riemann_batch``.

Same inputs, outputs and conventions; loops run per point over fixed-size
scratch arrays, with the inverse done by Gauss-Jordan elimination and
partial pivoting on the complex modulus.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

DEF NMAX = 8


cdef int _invert(double complex[NMAX][NMAX] a, double complex[NMAX][NMAX] out, int n) noexcept nogil:
    cdef double complex w[NMAX][2 * NMAX]
    cdef int i, j, k, piv
    cdef double best, mag
    cdef double complex t, d
    for i in range(n):
        for j in range(n):
            w[i][j] = a[i][j]
            w[i][n + j] = 1.0 if i == j else 0.0
    for k in range(n):
        piv = k
        best = abs(w[k][k])
        for i in range(k + 1, n):
            mag = abs(w[i][k])
            if mag > best:
                best = mag
                piv = i
        if best == 0.0:
            return 1
        if piv != k:
            for j in range(2 * n):
                t = w[k][j]
                w[k][j] = w[piv][j]
                w[piv][j] = t
        d = w[k][k]
        for j in range(2 * n):
            w[k][j] = w[k][j] / d
        for i in range(n):
            if i != k:
                t = w[i][k]
                if t != 0:
                    for j in range(2 * n):
                        w[i][j] = w[i][j] - t * w[k][j]
    for i in range(n):
        for j in range(n):
            out[i][j] = w[i][n + j]
    return 0


def riemann_batch(double complex[:, :, ::1] g,
                  double complex[:, :, :, ::1] dg,
                  double complex[:, :, :, :, ::1] ddg):
    cdef Py_ssize_t npts = g.shape[0]
    cdef int n = <int>g.shape[1]
    if n > NMAX:
        raise ValueError("dimension too large for the compiled kernel")
    ginv_a = np.empty((npts, n, n), dtype=np.complex128)
    gamma_a = np.empty((npts, n, n, n), dtype=np.complex128)
    riem_a = np.empty((npts, n, n, n, n), dtype=np.complex128)
    cdef double complex[:, :, ::1] ginv = ginv_a
    cdef double complex[:, :, :, ::1] gamma = gamma_a
    cdef double complex[:, :, :, :, ::1] riem = riem_a

    cdef double complex gl[NMAX][NMAX]
    cdef double complex gi[NMAX][NMAX]
    cdef double complex first[NMAX][NMAX][NMAX]
    cdef double complex gam[NMAX][NMAX][NMAX]
    cdef double complex dgi[NMAX][NMAX][NMAX]
    cdef double complex dgam[NMAX][NMAX][NMAX][NMAX]
    cdef double complex up[NMAX][NMAX][NMAX][NMAX]
    cdef double complex acc, df
    cdef Py_ssize_t p
    cdef int r, l, m, v, k, a, b, s, fail

    for p in range(npts):
        for a in range(n):
            for b in range(n):
                gl[a][b] = g[p, a, b]
        fail = _invert(gl, gi, n)
        if fail:
            raise ZeroDivisionError("singular metric at point %d" % p)
        for a in range(n):
            for b in range(n):
                ginv[p, a, b] = gi[a][b]
        # Christoffel symbols of the first kind, then raised
        for l in range(n):
            for m in range(n):
                for v in range(n):
                    first[l][m][v] = 0.5 * (dg[p, l, v, m] + dg[p, l, m, v] - dg[p, m, v, l])
        for r in range(n):
            for m in range(n):
                for v in range(n):
                    acc = 0
                    for l in range(n):
                        acc = acc + gi[r][l] * first[l][m][v]
                    gam[r][m][v] = acc
                    gamma[p, r, m, v] = acc
        # d_k g^{rl} = -g^{ra} d_k g_ab g^{bl}
        for r in range(n):
            for l in range(n):
                for k in range(n):
                    acc = 0
                    for a in range(n):
                        for b in range(n):
                            acc = acc - gi[r][a] * dg[p, a, b, k] * gi[b][l]
                    dgi[r][l][k] = acc
        # d_k Gamma^r_{mv}
        for r in range(n):
            for m in range(n):
                for v in range(n):
                    for k in range(n):
                        acc = 0
                        for l in range(n):
                            df = 0.5 * (ddg[p, l, v, m, k] + ddg[p, l, m, v, k] - ddg[p, m, v, l, k])
                            acc = acc + dgi[r][l][k] * first[l][m][v] + gi[r][l] * df
                        dgam[r][m][v][k] = acc
        # R^r_{smv}
        for r in range(n):
            for s in range(n):
                for m in range(n):
                    for v in range(n):
                        acc = dgam[r][v][s][m] - dgam[r][m][s][v]
                        for l in range(n):
                            acc = acc + gam[r][m][l] * gam[l][v][s] - gam[r][v][l] * gam[l][m][s]
                        up[r][s][m][v] = acc
        for r in range(n):
            for s in range(n):
                for m in range(n):
                    for v in range(n):
                        acc = 0
                        for a in range(n):
                            acc = acc + gl[r][a] * up[a][s][m][v]
                        riem[p, r, s, m, v] = acc
    return ginv_a, gamma_a, riem_a
