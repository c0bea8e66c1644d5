"""Small dense matrix helpers over any of our exact coefficient rings.

Matrices are tuples of tuples.  Entries must support +, -, *, neg and carry
an inv() method when division is needed; FieldElem and QuotElem both qualify.
A `zero`/`one` pair is passed explicitly where needed so the helpers stay
agnostic of the ring.
"""

from .errors import SingularMatrix, SizeMismatch


def mat_freeze(rows):
    return tuple(tuple(r) for r in rows)


def identity(k, zero, one):
    return mat_freeze([[one if i == j else zero for j in range(k)]
                       for i in range(k)])


def transpose(a):
    k, m = len(a), len(a[0])
    return mat_freeze([[a[i][j] for i in range(k)] for j in range(m)])


def mat_mul(a, b):
    if len(a[0]) != len(b):
        raise SizeMismatch("matrix product shape mismatch")
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = a[i][0] * b[0][j]
            for t in range(1, len(b)):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(a, b):
    return mat_freeze([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def mat_scale(a, c):
    return mat_freeze([[x * c for x in row] for row in a])


def mat_neg(a):
    return mat_freeze([[-x for x in row] for row in a])


def is_symmetric(a):
    k = len(a)
    return all(a[i][j] == a[j][i] for i in range(k) for j in range(i + 1, k))


def mat_det(a):
    """Determinant by Gaussian elimination (entries in a field-like ring)."""
    k = len(a)
    m = [list(row) for row in a]
    det = None
    sign_flip = False
    for col in range(k):
        piv = None
        for r in range(col, k):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return a[0][0] - a[0][0]  # zero of the ring
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign_flip = not sign_flip
        pval = m[col][col]
        det = pval if det is None else det * pval
        pinv = pval.inv()
        for r in range(col + 1, k):
            if m[r][col].is_zero():
                continue
            factor = m[r][col] * pinv
            for c in range(col, k):
                m[r][c] = m[r][c] - factor * m[col][c]
    return -det if sign_flip else det


def mat_rank(a):
    k, n = len(a), len(a[0])
    m = [list(row) for row in a]
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, k):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pinv = m[rank][col].inv()
        for r in range(rank + 1, k):
            if m[r][col].is_zero():
                continue
            factor = m[r][col] * pinv
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[rank][c]
        rank += 1
        if rank == k:
            break
    return rank


def mat_inv(a, zero, one):
    k = len(a)
    m = [list(row) + [one if i == j else zero for j in range(k)]
         for i, row in enumerate(a)]
    for col in range(k):
        piv = None
        for r in range(col, k):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise SingularMatrix("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        pinv = m[col][col].inv()
        m[col] = [x * pinv for x in m[col]]
        for r in range(k):
            if r != col and not m[r][col].is_zero():
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return mat_freeze([row[k:] for row in m])
