"""Exact rational LP machinery.

Two entry points:

``exact_solve_bounded``
    A bounded-variable two-phase simplex over :class:`fractions.Fraction`.
    Slow but exact; used directly in the all-rational solver mode and as
    the fallback whenever a float-kernel claim cannot be certified.

``certify_basis``
    Re-derives the solution the float kernel claims from its returned
    basis and bound flips, in integer/rational arithmetic, and checks
    primal feasibility and reduced-cost signs exactly. On success the
    claim is proven and the exact optimum value and solution are
    returned; on any violation the caller falls back to the full
    rational simplex.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = 0
INFEASIBLE = 1
STALLED = 2
UNBOUNDED = 3

_BLAND_AFTER = 50

_ZERO = Fraction(0)
_ONE = Fraction(1)


def solve_int_linear(M, r):
    """Solve the square integer system M x = r exactly.

    Fraction-free forward elimination (Bareiss) followed by rational back
    substitution. Returns a list of Fractions, or None when M is singular.
    """
    m = len(M)
    A = [list(M[i]) + [r[i]] for i in range(m)]
    prev = 1
    for k in range(m):
        piv_row = -1
        for i in range(k, m):
            if A[i][k] != 0:
                piv_row = i
                break
        if piv_row < 0:
            return None
        if piv_row != k:
            A[k], A[piv_row] = A[piv_row], A[k]
        pk = A[k][k]
        for i in range(k + 1, m):
            Ai = A[i]
            aik = Ai[k]
            Ak = A[k]
            for j in range(k + 1, m + 1):
                Ai[j] = (pk * Ai[j] - aik * Ak[j]) // prev
            Ai[k] = 0
        prev = pk
    x = [_ZERO] * m
    for i in range(m - 1, -1, -1):
        Ai = A[i]
        acc = Fraction(Ai[m])
        for j in range(i + 1, m):
            if Ai[j]:
                acc -= Ai[j] * x[j]
        x[i] = acc / Ai[i]
    return x


def solve_int_jordan(M, r):
    """Solve M x = r over the integers, returning (numerators, den).

    One-step fraction-free Gauss-Jordan: every division is exact, the
    final diagonal carries a common determinant value, so the solution
    comes back as integer numerators over a single positive denominator.
    Returns None when M is singular.
    """
    m = len(M)
    if m == 0:
        return [], 1
    A = [list(M[i]) + [r[i]] for i in range(m)]
    prev = 1
    for k in range(m):
        piv_row = -1
        for i in range(k, m):
            if A[i][k] != 0:
                piv_row = i
                break
        if piv_row < 0:
            return None
        if piv_row != k:
            A[k], A[piv_row] = A[piv_row], A[k]
        Ak = A[k]
        pk = Ak[k]
        for i in range(m):
            if i == k:
                continue
            Ai = A[i]
            aik = Ai[k]
            if aik:
                for j in range(k + 1, m + 1):
                    Ai[j] = (pk * Ai[j] - aik * Ak[j]) // prev
                Ai[k] = 0
            elif prev != pk:
                for j in range(k + 1, m + 1):
                    if Ai[j]:
                        Ai[j] = pk * Ai[j] // prev
            if i < k:
                Ai[i] = pk
        prev = pk
    den = A[m - 1][m - 1]
    nums = [A[i][m] for i in range(m)]
    if den < 0:
        den = -den
        nums = [-v for v in nums]
    return nums, den


def certify_basis(rows, rhs, cost, lo, up, eq, basis, flip, row_sign, phase,
                  want_rc=False, cols=None):
    """Exactly evaluate a float-kernel basis claim.

    rows/rhs: integer constraint data (m rows of <= or ==, n structural
    columns, eq flags the equality rows). cost: integer phase-2 costs of
    the structural columns. lo/up: node bounds per structural column (up
    may be None for unbounded). phase 2 certifies an optimality claim;
    phase 1 certifies an infeasibility claim: a positive artificial sum
    that no real column can price down proves the real rows inconsistent
    regardless of the artificial columns themselves, so those are not
    swept. cols, when given, is the column-major copy of rows; callers
    that certify repeatedly should precompute it once.

    Returns (value, x_struct) where value is an exact Fraction and
    x_struct holds ints for columns sitting on a bound, or None when the
    basis is singular, primal infeasible, or not dual feasible at exact
    arithmetic. With want_rc the result gains a third element: per
    structural column, the exact cost of moving it off its bound (None
    for basic or pinned columns).
    """
    m = len(rhs)
    n = len(cost)
    nm = n + m
    if cols is None:
        cols = [[rows[i][j] for i in range(m)] for j in range(n)]

    pos = {}
    for k, j in enumerate(basis):
        pos[j] = k
    if len(pos) != m:
        return None

    # values of nonbasic structural columns and the reduced right side;
    # nonbasic slacks and artificials rest at zero whichever bound they
    # sit on, except where that bound does not exist
    rprime = list(rhs)
    nbv = [0] * n
    for j in range(n):
        if j in pos:
            continue
        if flip[j]:
            v = up[j]
            if v is None:
                return None
        else:
            v = lo[j]
        if v:
            nbv[j] = v
            cj = cols[j]
            for i in range(m):
                if cj[i]:
                    rprime[i] -= cj[i] * v
    for i in range(m):
        j = n + i
        if flip[j] and j not in pos and not eq[i]:
            return None  # inequality slack has no upper bound to sit on
        j = nm + i
        if flip[j] and j not in pos and phase == 1:
            return None  # phase-1 artificials are unbounded above

    bcols = []
    for j in basis:
        if j < n:
            bcols.append(cols[j])
        else:
            v = [0] * m
            if j < nm:
                v[j - n] = 1
            else:
                v[j - nm] = row_sign[j - nm]
            bcols.append(v)
    B = [[bcols[k][i] for k in range(m)] for i in range(m)]
    sol = solve_int_jordan(B, rprime)
    if sol is None:
        return None
    xnum, den = sol
    for k, j in enumerate(basis):
        num = xnum[k]
        if j < n:
            l, u = lo[j], up[j]
        elif j < nm:
            l, u = (0, 0) if eq[j - n] else (0, None)
        else:
            l, u = (0, None) if phase == 1 else (0, 0)
        if num < l * den:
            return None
        if u is not None and num > u * den:
            return None

    if phase == 1:
        cB = [1 if j >= nm else 0 for j in basis]
    else:
        cB = [cost[j] if j < n else 0 for j in basis]
    # each basis column, laid out as a row, is a row of B transposed
    dsol = solve_int_jordan(bcols, cB)
    if dsol is None:
        return None
    ynum, dend = dsol

    # reduced-cost sweep, all integer: rc here is the true value times dend
    rc_struct = [None] * n if want_rc else None
    for j in range(n):
        if j in pos or lo[j] == up[j]:
            continue
        cj = cols[j]
        rc = cost[j] * dend if phase == 2 else 0
        for i in range(m):
            if cj[i]:
                rc -= ynum[i] * cj[i]
        if flip[j]:
            if rc > 0:
                return None
        elif rc < 0:
            return None
        if want_rc:
            rc_struct[j] = Fraction(-rc if rc < 0 else rc, dend)
    # a slack column is a unit vector, so its reduced cost is just -y_i;
    # eq slacks are pinned and phase-2 artificials likewise, while
    # phase-1 artificials stay out of the sweep by design
    for i in range(m):
        if n + i in pos or eq[i]:
            continue
        if ynum[i] > 0:
            return None

    if phase == 2:
        vnum = 0
        for k, j in enumerate(basis):
            if j < n and cost[j]:
                vnum += cost[j] * xnum[k]
        value = Fraction(vnum, den)
        for j in range(n):
            if nbv[j] and cost[j]:
                value += cost[j] * nbv[j]
    else:
        vnum = 0
        for k, j in enumerate(basis):
            if j >= nm:
                vnum += xnum[k]
        value = Fraction(vnum, den)

    x_struct = []
    for j in range(n):
        k = pos.get(j)
        if k is None:
            x_struct.append((up[j] if flip[j] else lo[j]) or 0)
        else:
            x_struct.append(Fraction(xnum[k], den))
    if want_rc:
        return value, x_struct, rc_struct
    return value, x_struct


def exact_solve_bounded(rows, rhs, cost, lo, up, eq, max_iters=200000):
    """Bounded-variable two-phase simplex in exact rational arithmetic.

    Minimizes cost.x subject to rows.x <= rhs (rows flagged in eq hold
    with equality) and lo <= x <= up, where up[j] may be None for an
    unbounded column and lo[j] is either 0 or equal to up[j]. Returns
    (status, value, x) with Fractions; on INFEASIBLE or UNBOUNDED the
    value and x are None.
    """
    m = len(rhs)
    n = len(cost)
    ncols = n + 2 * m
    RHS = ncols

    T = [[_ZERO] * (ncols + 1) for _ in range(m)]
    z1 = [_ZERO] * (ncols + 1)
    z2 = [_ZERO] * (ncols + 1)
    ub = [None] * ncols  # None means unbounded
    flip = [0] * ncols
    in_basis = [False] * ncols
    basis = [0] * m

    for i in range(m):
        Ti = T[i]
        ri = rows[i]
        for j in range(n):
            Ti[j] = Fraction(ri[j])
        Ti[n + i] = _ONE
        Ti[n + m + i] = _ONE
        Ti[RHS] = Fraction(rhs[i])

    for j in range(n):
        z2[j] = Fraction(cost[j])
        lj = Fraction(lo[j])
        uj = None if up[j] is None else Fraction(up[j])
        if uj is not None and lj == uj:
            ub[j] = _ZERO
            if lj != 0:
                for i in range(m):
                    Ti = T[i]
                    if Ti[j]:
                        Ti[RHS] -= Ti[j] * lj
                        Ti[j] = -Ti[j]
                z2[j] = -z2[j]
                flip[j] = 1
        else:
            if lj != 0:
                raise ValueError("free columns must have lower bound 0")
            ub[j] = uj

    n_art = 0
    for i in range(m):
        Ti = T[i]
        negated = False
        if Ti[RHS] < 0:
            for jj in range(ncols + 1):
                Ti[jj] = -Ti[jj]
            Ti[n + m + i] = _ONE
            negated = True
        if eq[i]:
            ub[n + i] = _ZERO
        if eq[i] or negated:
            basis[i] = n + m + i
            in_basis[n + m + i] = True
            n_art += 1
        else:
            basis[i] = n + i
            in_basis[n + i] = True
            ub[n + m + i] = _ZERO

    if n_art:
        for i in range(m):
            if basis[i] >= n + m:
                z1[basis[i]] = _ONE
        for i in range(m):
            if basis[i] >= n + m:
                Ti = T[i]
                for jj in range(ncols + 1):
                    if Ti[jj]:
                        z1[jj] -= Ti[jj]

    phase = 1 if n_art else 2
    if phase == 2:
        for i in range(m):
            ub[n + m + i] = _ZERO
    degen = 0
    iters = 0
    status = OPTIMAL

    while True:
        if iters >= max_iters:
            raise RuntimeError("exact simplex failed to terminate")

        if phase == 1:
            arts_basic = any(basis[i] >= n + m for i in range(m))
            if not arts_basic:
                phase = 2
                degen = 0
                for i in range(m):
                    ub[n + m + i] = _ZERO
                continue

        zrow = z1 if phase == 1 else z2

        jenter = -1
        if degen >= _BLAND_AFTER:
            for j in range(ncols):
                if in_basis[j] or ub[j] == 0 or j >= n + m:
                    continue
                if zrow[j] < 0:
                    jenter = j
                    break
        else:
            best = _ZERO
            for j in range(ncols):
                if in_basis[j] or ub[j] == 0 or j >= n + m:
                    continue
                if zrow[j] < best:
                    best = zrow[j]
                    jenter = j

        if jenter < 0:
            if phase == 1:
                p1val = sum(
                    (T[i][RHS] for i in range(m) if basis[i] >= n + m),
                    _ZERO,
                )
                if p1val > 0:
                    status = INFEASIBLE
                    break
                phase = 2
                degen = 0
                for i in range(m):
                    ub[n + m + i] = _ZERO
                continue
            status = OPTIMAL
            break

        best_t = ub[jenter]  # None means unlimited
        best_row = -1
        leave_upper = False
        for i in range(m):
            aij = T[i][jenter]
            if aij > 0:
                t = T[i][RHS] / aij
            elif aij < 0:
                ubb = ub[basis[i]]
                if ubb is None:
                    continue
                t = (ubb - T[i][RHS]) / (-aij)
            else:
                continue
            if best_t is None or t < best_t:
                best_t = t
                best_row = i
                leave_upper = aij < 0
            elif t == best_t and (best_row < 0 or basis[i] < basis[best_row]):
                best_t = t
                best_row = i
                leave_upper = aij < 0

        if best_row < 0 and best_t is None:
            status = UNBOUNDED
            break

        degen = degen + 1 if best_t == 0 else 0
        iters += 1

        if best_row < 0:
            v = ub[jenter]
            for i in range(m):
                Ti = T[i]
                if Ti[jenter]:
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
            Trow[lv] = _ONE
            flip[lv] ^= 1

        Trow = T[best_row]
        piv = Trow[jenter]
        if piv != 1:
            for jj in range(ncols + 1):
                if Trow[jj]:
                    Trow[jj] /= piv
        Trow[jenter] = _ONE
        for i in range(m):
            if i == best_row:
                continue
            Ti = T[i]
            f = Ti[jenter]
            if f:
                for jj in range(ncols + 1):
                    if Trow[jj]:
                        Ti[jj] -= f * Trow[jj]
                Ti[jenter] = _ZERO
        f = z1[jenter]
        if f:
            for jj in range(ncols + 1):
                if Trow[jj]:
                    z1[jj] -= f * Trow[jj]
            z1[jenter] = _ZERO
        f = z2[jenter]
        if f:
            for jj in range(ncols + 1):
                if Trow[jj]:
                    z2[jj] -= f * Trow[jj]
            z2[jenter] = _ZERO
        in_basis[basis[best_row]] = False
        in_basis[jenter] = True
        basis[best_row] = jenter

    if status != OPTIMAL:
        return status, None, None

    xall = [_ZERO] * ncols
    for i in range(m):
        xall[basis[i]] = T[i][RHS]
    xs = []
    for j in range(n):
        if flip[j]:
            base = Fraction(up[j])
            xs.append(base - xall[j])
        else:
            xs.append(xall[j])
    value = _ZERO
    for j in range(n):
        if cost[j]:
            value += cost[j] * xs[j]
    return OPTIMAL, value, xs
