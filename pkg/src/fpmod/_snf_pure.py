"""Pure-Python integer normal-form kernels.

These are the hot inner loops: Hermite and Smith elimination over the
integers on list-of-list matrices of Python ints.  fpmod._snf_cy is a
Cython port of exactly this code; fpmod.backend picks whichever is
available (FPMOD_PURE=1 forces this module).  Keep the two in lockstep:
the harness determinism guarantee relies on both producing identical
output.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def hnf_int(a_rows, rows, cols):
    """Column-style Hermite form: returns (H, U) with H = A*U, U unimodular.

    Pivots are positive, entries left of a pivot are reduced modulo it.
    """
    H = [row[:] for row in a_rows]
    U = _identity(cols)
    c = 0
    for r in range(rows):
        if c >= cols:
            break
        while True:
            j0 = -1
            best = 0
            for j in range(c, cols):
                v = H[r][j]
                if v != 0 and (j0 < 0 or abs(v) < best):
                    j0 = j
                    best = abs(v)
            if j0 < 0:
                break
            others = False
            for j in range(c, cols):
                if j == j0 or H[r][j] == 0:
                    continue
                q = H[r][j] // H[r][j0]
                for i in range(rows):
                    H[i][j] -= q * H[i][j0]
                for i in range(cols):
                    U[i][j] -= q * U[i][j0]
                if H[r][j] != 0:
                    others = True
            if others:
                continue
            for i in range(rows):
                H[i][c], H[i][j0] = H[i][j0], H[i][c]
            for i in range(cols):
                U[i][c], U[i][j0] = U[i][j0], U[i][c]
            if H[r][c] < 0:
                for i in range(rows):
                    H[i][c] = -H[i][c]
                for i in range(cols):
                    U[i][c] = -U[i][c]
            p = H[r][c]
            for j in range(c):
                if H[r][j] != 0:
                    q = H[r][j] // p
                    if q:
                        for i in range(rows):
                            H[i][j] -= q * H[i][c]
                        for i in range(cols):
                            U[i][j] -= q * U[i][c]
            c += 1
            break
    return H, U


def _eliminate_at(D, U, V, t, rows, cols):
    """Clear row and column t using the pivot at (t, t)."""
    while True:
        restart = False
        for i in range(t + 1, rows):
            if D[i][t] != 0:
                q = D[i][t] // D[t][t]
                if q:
                    for j in range(cols):
                        D[i][j] -= q * D[t][j]
                    for j in range(rows):
                        U[i][j] -= q * U[t][j]
                if D[i][t] != 0:
                    D[i], D[t] = D[t], D[i]
                    U[i], U[t] = U[t], U[i]
                    restart = True
                    break
        if restart:
            continue
        for j in range(t + 1, cols):
            if D[t][j] != 0:
                q = D[t][j] // D[t][t]
                if q:
                    for i in range(rows):
                        D[i][j] -= q * D[i][t]
                    for i in range(cols):
                        V[i][j] -= q * V[i][t]
                if D[t][j] != 0:
                    for i in range(rows):
                        D[i][j], D[i][t] = D[i][t], D[i][j]
                    for i in range(cols):
                        V[i][j], V[i][t] = V[i][t], V[i][j]
                    restart = True
                    break
        if restart:
            continue
        break


def _diagonalize_from(D, U, V, t0, rows, cols):
    k = min(rows, cols)
    for t in range(t0, k):
        # move the minimal-norm nonzero of D[t:, t:] to (t, t)
        bi = bj = -1
        best = 0
        for i in range(t, rows):
            for j in range(t, cols):
                v = D[i][j]
                if v != 0 and (bi < 0 or abs(v) < best):
                    bi, bj, best = i, j, abs(v)
        if bi < 0:
            return
        if bi != t:
            D[bi], D[t] = D[t], D[bi]
            U[bi], U[t] = U[t], U[bi]
        if bj != t:
            for i in range(rows):
                D[i][bj], D[i][t] = D[i][t], D[i][bj]
            for i in range(cols):
                V[i][bj], V[i][t] = V[i][t], V[i][bj]
        _eliminate_at(D, U, V, t, rows, cols)


def snf_int(a_rows, rows, cols):
    """Smith normal form over Z: returns (U, D, V) with U*A*V = D.

    Diagonal entries are nonnegative and satisfy the divisibility chain.
    """
    D = [row[:] for row in a_rows]
    U = _identity(rows)
    V = _identity(cols)
    k = min(rows, cols)
    _diagonalize_from(D, U, V, 0, rows, cols)
    # enforce d_i | d_{i+1}
    while True:
        bad = -1
        for i in range(k - 1):
            if D[i][i] != 0 and D[i + 1][i + 1] % D[i][i] != 0:
                bad = i
                break
        if bad < 0:
            break
        # fold d_{i+1} into column i, then re-diagonalize the tail
        for i in range(rows):
            D[i][bad] += D[i][bad + 1]
        for i in range(cols):
            V[i][bad] += V[i][bad + 1]
        _diagonalize_from(D, U, V, bad, rows, cols)
    for i in range(k):
        if D[i][i] < 0:
            for j in range(cols):
                D[i][j] = -D[i][j]
            for j in range(rows):
                U[i][j] = -U[i][j]
    return U, D, V
