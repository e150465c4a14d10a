"""Pure-Python bounded-variable two-phase simplex on float64.

This is the fallback for the compiled kernel in _fastlp.pyx. The two
implementations perform the same IEEE-754 operations in the same order,
so on identical inputs they return bit-identical results. Keep any change
here in lockstep with the .pyx file.

The solver works on a dense tableau over columns laid out as

    0 .. n-1            structural variables (lower bound 0 or pinned)
    n .. n+m-1          slack of row i (pinned at 0 for equality rows)
    n+m .. n+2m-1       artificial of row i

Row i may be negated during setup so its right-hand side is nonnegative;
the artificial column is then defined as row_sign[i] * e_i in the original
system. Equality rows always start with their artificial basic, since
their pinned slack cannot carry the right-hand side. Bounds are handled
by complementing columns (flip): a flipped column stands for ub -
original variable. Results report the basis, the flip state and the row
signs so an exact layer can re-derive and certify the claimed optimum in
rational arithmetic.
"""

INF = float("inf")

EPS_PRICE = 1e-9
EPS_PIVOT = 1e-9
FEAS_TOL = 1e-7
TIE = 1e-9
DEGEN_STEP = 1e-12
BLAND_AFTER = 50

OPTIMAL = 0
INFEASIBLE = 1
STALLED = 2
UNBOUNDED = 3

KERNEL_NAME = "pure"


def solve_bounded_lp(a_rows, b, cost, lo, up, eq, max_iters):
    """Minimize cost.x subject to a_rows.x <= b (== b where eq is set)
    and lo <= x <= up.

    Every structural bound pair must satisfy lo[j] == 0 or lo[j] == up[j].
    Returns (status, value, x, basis, flip, row_sign, iters).
    """
    m = len(b)
    n = len(cost)
    ncols = n + 2 * m
    RHS = ncols

    T = [[0.0] * (ncols + 1) for _ in range(m)]
    z1 = [0.0] * (ncols + 1)
    z2 = [0.0] * (ncols + 1)
    ub = [INF] * ncols
    flip = [0] * ncols
    in_basis = [False] * ncols
    basis = [0] * m
    row_sign = [1] * m

    for i in range(m):
        Ti = T[i]
        Ai = a_rows[i]
        for j in range(n):
            Ti[j] = Ai[j]
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
                    Ti = T[i]
                    if Ti[j] != 0.0:
                        Ti[RHS] -= Ti[j] * v
                        Ti[j] = -Ti[j]
                z2[j] = -z2[j]
                flip[j] = 1
        else:
            ub[j] = up[j]

    n_art = 0
    for i in range(m):
        Ti = T[i]
        if Ti[RHS] < 0.0:
            for jj in range(ncols + 1):
                Ti[jj] = -Ti[jj]
            row_sign[i] = -1
            Ti[n + m + i] = 1.0
        if eq[i] != 0.0:
            ub[n + i] = 0.0
        if eq[i] != 0.0 or row_sign[i] < 0:
            basis[i] = n + m + i
            in_basis[n + m + i] = True
            n_art += 1
        else:
            basis[i] = n + i
            in_basis[n + i] = True
            ub[n + m + i] = 0.0

    if n_art:
        for i in range(m):
            if basis[i] >= n + m:
                z1[basis[i]] = 1.0
        for i in range(m):
            if basis[i] >= n + m:
                Ti = T[i]
                for jj in range(ncols + 1):
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
            arts_basic = False
            p1val = 0.0
            for i in range(m):
                if basis[i] >= n + m:
                    arts_basic = True
                    p1val += T[i][RHS]
            if not arts_basic or p1val <= 0.0:
                phase = 2
                degen = 0
                for i in range(m):
                    ub[n + m + i] = 0.0
                continue

        zrow = z1 if phase == 1 else z2

        # pricing: Dantzig by default, Bland after a long degenerate run
        jenter = -1
        if degen >= BLAND_AFTER:
            for j in range(ncols):
                if in_basis[j] or ub[j] == 0.0 or j >= n + m:
                    continue
                if zrow[j] < -EPS_PRICE:
                    jenter = j
                    break
        else:
            best = -EPS_PRICE
            for j in range(ncols):
                if in_basis[j] or ub[j] == 0.0 or j >= n + m:
                    continue
                if zrow[j] < best:
                    best = zrow[j]
                    jenter = j

        if jenter < 0:
            if phase == 1:
                p1val = 0.0
                for i in range(m):
                    if basis[i] >= n + m:
                        p1val += T[i][RHS]
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

        # ratio test
        best_t = ub[jenter]
        best_row = -1
        leave_upper = False
        for i in range(m):
            aij = T[i][jenter]
            if aij > EPS_PIVOT:
                t = T[i][RHS] / aij
                if t < best_t - TIE:
                    best_t = t
                    best_row = i
                    leave_upper = False
                elif t <= best_t + TIE:
                    if best_row < 0 or basis[i] < basis[best_row]:
                        best_t = t
                        best_row = i
                        leave_upper = False
            elif aij < -EPS_PIVOT:
                ubb = ub[basis[i]]
                if ubb < INF:
                    t = (ubb - T[i][RHS]) / (-aij)
                    if t < best_t - TIE:
                        best_t = t
                        best_row = i
                        leave_upper = True
                    elif t <= best_t + TIE:
                        if best_row < 0 or basis[i] < basis[best_row]:
                            best_t = t
                            best_row = i
                            leave_upper = True

        if best_row < 0 and best_t == INF:
            status = UNBOUNDED
            break

        degen = degen + 1 if best_t < DEGEN_STEP else 0
        iters += 1

        if best_row < 0:
            # bound flip of the entering column
            v = ub[jenter]
            for i in range(m):
                Ti = T[i]
                if Ti[jenter] != 0.0:
                    Ti[RHS] -= Ti[jenter] * v
                    Ti[jenter] = -Ti[jenter]
            z1[jenter] = -z1[jenter]
            z2[jenter] = -z2[jenter]
            flip[jenter] ^= 1
            continue

        if leave_upper:
            lv = basis[best_row]
            Trow = T[best_row]
            ubb = ub[lv]
            for jj in range(ncols + 1):
                Trow[jj] = -Trow[jj]
            Trow[RHS] += ubb
            Trow[lv] = 1.0
            flip[lv] ^= 1

        # pivot
        Trow = T[best_row]
        piv = Trow[jenter]
        for jj in range(ncols + 1):
            Trow[jj] /= piv
        Trow[jenter] = 1.0
        for i in range(m):
            if i == best_row:
                continue
            Ti = T[i]
            f = Ti[jenter]
            if f != 0.0:
                for jj in range(ncols + 1):
                    Ti[jj] -= f * Trow[jj]
                Ti[jenter] = 0.0
        f = z1[jenter]
        if f != 0.0:
            for jj in range(ncols + 1):
                z1[jj] -= f * Trow[jj]
            z1[jenter] = 0.0
        f = z2[jenter]
        if f != 0.0:
            for jj in range(ncols + 1):
                z2[jj] -= f * Trow[jj]
            z2[jenter] = 0.0
        in_basis[basis[best_row]] = False
        in_basis[jenter] = True
        basis[best_row] = jenter

    xall = [0.0] * ncols
    for i in range(m):
        xall[basis[i]] = T[i][RHS]
    xs = [0.0] * n
    for j in range(n):
        if flip[j]:
            xs[j] = up[j] - xall[j]
        else:
            xs[j] = xall[j]
    value = 0.0
    for j in range(n):
        value += cost[j] * xs[j]

    return (status, value, xs, list(basis), list(flip), list(row_sign), iters)
