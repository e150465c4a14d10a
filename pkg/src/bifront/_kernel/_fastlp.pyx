# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bounded-variable two-phase simplex on float64.

Mirror of _purelp.solve_bounded_lp: same operations in the same order so
both kernels return bit-identical results on identical inputs. Keep the
two files in lockstep; the pure module documents the algorithm.
"""

from libc.stdlib cimport free, malloc
from libc.math cimport INFINITY

DEF EPS_PRICE = 1e-9
DEF EPS_PIVOT = 1e-9
DEF FEAS_TOL = 1e-7
DEF TIE = 1e-9
DEF DEGEN_STEP = 1e-12
DEF BLAND_AFTER = 50

OPTIMAL = 0
INFEASIBLE = 1
STALLED = 2
UNBOUNDED = 3

KERNEL_NAME = "compiled"


def solve_bounded_lp(double[:, ::1] a_rows, double[::1] b, double[::1] cost,
                     double[::1] lo, double[::1] up, double[::1] eq,
                     int max_iters):
    cdef int m = b.shape[0]
    cdef int n = cost.shape[0]
    cdef int ncols = n + 2 * m
    cdef int RHS = ncols
    cdef int W = ncols + 1

    cdef double *T = <double *> malloc(m * W * sizeof(double))
    cdef double *z1 = <double *> malloc(W * sizeof(double))
    cdef double *z2 = <double *> malloc(W * sizeof(double))
    cdef double *ub = <double *> malloc(ncols * sizeof(double))
    cdef double *xall = <double *> malloc(ncols * sizeof(double))
    cdef char *flip = <char *> malloc(ncols * sizeof(char))
    cdef char *in_basis = <char *> malloc(ncols * sizeof(char))
    cdef int *basis = <int *> malloc((m if m > 0 else 1) * sizeof(int))
    cdef char *row_sign = <char *> malloc((m if m > 0 else 1) * sizeof(char))
    if (T == NULL or z1 == NULL or z2 == NULL or ub == NULL or xall == NULL
            or flip == NULL or in_basis == NULL or basis == NULL or row_sign == NULL):
        free(T); free(z1); free(z2); free(ub); free(xall)
        free(flip); free(in_basis); free(basis); free(row_sign)
        raise MemoryError()

    cdef int i, j, jj, iters, status, phase, degen, n_art
    cdef int jenter, best_row
    cdef bint leave_upper, arts_basic, take
    cdef double v, t, best_t, aij, ubb, piv, f, p1val, best, value
    cdef double *Ti
    cdef double *Trow
    cdef int lv

    try:
        for jj in range(W):
            z1[jj] = 0.0
            z2[jj] = 0.0
        for j in range(ncols):
            ub[j] = INFINITY
            flip[j] = 0
            in_basis[j] = 0

        for i in range(m):
            Ti = T + i * W
            for j in range(n):
                Ti[j] = a_rows[i, j]
            for j in range(n, ncols):
                Ti[j] = 0.0
            Ti[n + i] = 1.0
            Ti[n + m + i] = 1.0
            Ti[RHS] = b[i]

        for j in range(n):
            z2[j] = cost[j]
            if lo[j] == up[j]:
                ub[j] = 0.0
                if lo[j] != 0.0:
                    v = lo[j]
                    for i in range(m):
                        Ti = T + i * W
                        if Ti[j] != 0.0:
                            Ti[RHS] -= Ti[j] * v
                            Ti[j] = -Ti[j]
                    z2[j] = -z2[j]
                    flip[j] = 1
            else:
                ub[j] = up[j]

        n_art = 0
        for i in range(m):
            Ti = T + i * W
            row_sign[i] = 1
            if Ti[RHS] < 0.0:
                for jj in range(W):
                    Ti[jj] = -Ti[jj]
                row_sign[i] = -1
                Ti[n + m + i] = 1.0
            if eq[i] != 0.0:
                ub[n + i] = 0.0
            if eq[i] != 0.0 or row_sign[i] < 0:
                basis[i] = n + m + i
                in_basis[n + m + i] = 1
                n_art += 1
            else:
                basis[i] = n + i
                in_basis[n + i] = 1
                ub[n + m + i] = 0.0

        if n_art:
            for i in range(m):
                if basis[i] >= n + m:
                    z1[basis[i]] = 1.0
            for i in range(m):
                if basis[i] >= n + m:
                    Ti = T + i * W
                    for jj in range(W):
                        z1[jj] -= Ti[jj]

        iters = 0
        status = OPTIMAL
        phase = 1 if n_art else 2
        if phase == 2:
            for i in range(m):
                ub[n + m + i] = 0.0
        degen = 0

        while True:
            if iters >= max_iters:
                status = STALLED
                break

            if phase == 1:
                arts_basic = 0
                p1val = 0.0
                for i in range(m):
                    if basis[i] >= n + m:
                        arts_basic = 1
                        p1val += T[i * W + RHS]
                if not arts_basic or p1val <= 0.0:
                    phase = 2
                    degen = 0
                    for i in range(m):
                        ub[n + m + i] = 0.0
                    continue

            jenter = -1
            if degen >= BLAND_AFTER:
                for j in range(ncols):
                    if in_basis[j] or ub[j] == 0.0 or j >= n + m:
                        continue
                    if (z1[j] if phase == 1 else z2[j]) < -EPS_PRICE:
                        jenter = j
                        break
            else:
                best = -EPS_PRICE
                for j in range(ncols):
                    if in_basis[j] or ub[j] == 0.0 or j >= n + m:
                        continue
                    f = z1[j] if phase == 1 else z2[j]
                    if f < best:
                        best = f
                        jenter = j

            if jenter < 0:
                if phase == 1:
                    p1val = 0.0
                    for i in range(m):
                        if basis[i] >= n + m:
                            p1val += T[i * W + RHS]
                    if p1val > FEAS_TOL:
                        status = INFEASIBLE
                        break
                    phase = 2
                    degen = 0
                    for i in range(m):
                        ub[n + m + i] = 0.0
                    continue
                status = OPTIMAL
                break

            best_t = ub[jenter]
            best_row = -1
            leave_upper = 0
            for i in range(m):
                aij = T[i * W + jenter]
                if aij > EPS_PIVOT:
                    t = T[i * W + RHS] / aij
                    if t < best_t - TIE:
                        best_t = t
                        best_row = i
                        leave_upper = 0
                    elif t <= best_t + TIE:
                        if best_row < 0 or basis[i] < basis[best_row]:
                            best_t = t
                            best_row = i
                            leave_upper = 0
                elif aij < -EPS_PIVOT:
                    ubb = ub[basis[i]]
                    if ubb < INFINITY:
                        t = (ubb - T[i * W + RHS]) / (-aij)
                        if t < best_t - TIE:
                            best_t = t
                            best_row = i
                            leave_upper = 1
                        elif t <= best_t + TIE:
                            if best_row < 0 or basis[i] < basis[best_row]:
                                best_t = t
                                best_row = i
                                leave_upper = 1

            if best_row < 0 and best_t == INFINITY:
                status = UNBOUNDED
                break

            degen = degen + 1 if best_t < DEGEN_STEP else 0
            iters += 1

            if best_row < 0:
                v = ub[jenter]
                for i in range(m):
                    Ti = T + i * W
                    if Ti[jenter] != 0.0:
                        Ti[RHS] -= Ti[jenter] * v
                        Ti[jenter] = -Ti[jenter]
                z1[jenter] = -z1[jenter]
                z2[jenter] = -z2[jenter]
                flip[jenter] ^= 1
                continue

            if leave_upper:
                lv = basis[best_row]
                Trow = T + best_row * W
                ubb = ub[lv]
                for jj in range(W):
                    Trow[jj] = -Trow[jj]
                Trow[RHS] += ubb
                Trow[lv] = 1.0
                flip[lv] ^= 1

            Trow = T + best_row * W
            piv = Trow[jenter]
            for jj in range(W):
                Trow[jj] /= piv
            Trow[jenter] = 1.0
            for i in range(m):
                if i == best_row:
                    continue
                Ti = T + i * W
                f = Ti[jenter]
                if f != 0.0:
                    for jj in range(W):
                        Ti[jj] -= f * Trow[jj]
                    Ti[jenter] = 0.0
            f = z1[jenter]
            if f != 0.0:
                for jj in range(W):
                    z1[jj] -= f * Trow[jj]
                z1[jenter] = 0.0
            f = z2[jenter]
            if f != 0.0:
                for jj in range(W):
                    z2[jj] -= f * Trow[jj]
                z2[jenter] = 0.0
            in_basis[basis[best_row]] = 0
            in_basis[jenter] = 1
            basis[best_row] = jenter

        for j in range(ncols):
            xall[j] = 0.0
        for i in range(m):
            xall[basis[i]] = T[i * W + RHS]
        xs = [0.0] * n
        for j in range(n):
            if flip[j]:
                xs[j] = up[j] - xall[j]
            else:
                xs[j] = xall[j]
        value = 0.0
        for j in range(n):
            value += cost[j] * xs[j]

        basis_out = [basis[i] for i in range(m)]
        flip_out = [flip[j] for j in range(ncols)]
        sign_out = [row_sign[i] for i in range(m)]
        return (status, value, xs, basis_out, flip_out, sign_out, iters)
    finally:
        free(T); free(z1); free(z2); free(ub); free(xall)
        free(flip); free(in_basis); free(basis); free(row_sign)
