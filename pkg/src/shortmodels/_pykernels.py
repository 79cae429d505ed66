"""Pure-Python reference versions of the prime-field kernels.

Same signatures and results as the compiled ``_ckernels`` module.  All inputs
are lists of ints already reduced into ``[0, p)``.
"""


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form over F_p.

    Returns ``(nonzero_rows, pivot_columns)``; the input is not modified.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            for j in range(c, ncols):
                row[j] = row[j] * inv % p
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_mod_p(rows, ncols, p):
    return len(rref_mod_p(rows, ncols, p)[1])


def polmul_mod_p(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    out = [c % p for c in out]
    while out and not out[-1]:
        out.pop()
    return out


def series_mul_mod_p(a, b, m, p):
    out = [0] * m
    la, lb = min(len(a), m), min(len(b), m)
    for i in range(la):
        x = a[i]
        if x:
            for j in range(min(lb, m - i)):
                out[i + j] += x * b[j]
    return [c % p for c in out]
