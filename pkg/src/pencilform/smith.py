"""Module structure of a pencil: Smith normal form over k[X], elementary
divisors per point of the discriminant scheme, and Segre symbols.

The point at infinity is handled by running the one-variable Smith form in
the other chart (M0 + X*M1) rather than by homogeneous gcd theory.
Pivoting is deterministic (minimal degree, then smallest position) so the
transformation matrices are reproducible.
"""

from .errors import SingularMatrix, VanishingDiscriminant
from .pencil import disc
from .poly import Poly, scheme_of


class SmithForm:
    """U * A * V = diag(d_1, ..., d_k) with d_1 | d_2 | ... monic."""

    __slots__ = ("ctx", "U", "V", "diag")

    def __init__(self, ctx, U, V, diag):
        self.ctx = ctx
        self.U = U
        self.V = V
        self.diag = tuple(diag)


def _poly_mat_mul(a, b, ctx):
    k, m, n = len(a), len(b), len(b[0])
    out = []
    for i in range(k):
        row = []
        for j in range(n):
            acc = Poly.zero(ctx)
            for t in range(m):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def poly_mat_det(a, ctx):
    """Fraction-free determinant of a square polynomial matrix."""
    k = len(a)
    b = [row[:] for row in a]
    sign = False
    prev = Poly.one(ctx)
    for col in range(k - 1):
        piv = None
        for r in range(col, k):
            if not b[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return Poly.zero(ctx)
        if piv != col:
            b[col], b[piv] = b[piv], b[col]
            sign = not sign
        for i in range(col + 1, k):
            for j in range(col + 1, k):
                num = b[i][j] * b[col][col] - b[i][col] * b[col][j]
                q, r = divmod(num, prev)
                assert r.is_zero()
                b[i][j] = q
            b[i][col] = Poly.zero(ctx)
        prev = b[col][col]
    det = b[k - 1][k - 1]
    return -det if sign else det


def smith(a, ctx):
    """Smith normal form of a square nonsingular matrix over k[X].

    Returns a SmithForm with unimodular U, V (determinants in k^x) and the
    monic divisibility chain on the diagonal.
    """
    k = len(a)
    b = [[entry for entry in row] for row in a]
    u = [[Poly.one(ctx) if i == j else Poly.zero(ctx) for j in range(k)]
         for i in range(k)]
    v = [[Poly.one(ctx) if i == j else Poly.zero(ctx) for j in range(k)]
         for i in range(k)]

    def row_op(dst, src, q):
        # row_dst -= q * row_src
        for j in range(k):
            b[dst][j] = b[dst][j] - q * b[src][j]
            u[dst][j] = u[dst][j] - q * u[src][j]

    def col_op(dst, src, q):
        for i in range(k):
            b[i][dst] = b[i][dst] - q * b[i][src]
            v[i][dst] = v[i][dst] - q * v[i][src]

    def swap_rows(i, j):
        if i != j:
            b[i], b[j] = b[j], b[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for r in range(k):
                b[r][i], b[r][j] = b[r][j], b[r][i]
                v[r][i], v[r][j] = v[r][j], v[r][i]

    for t in range(k):
        while True:
            piv = None
            best = None
            for i in range(t, k):
                for j in range(t, k):
                    if b[i][j].is_zero():
                        continue
                    key = (b[i][j].degree, i, j)
                    if best is None or key < best:
                        best = key
                        piv = (i, j)
            if piv is None:
                raise SingularMatrix("smith requires det != 0")
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            # scale the pivot row monic to control coefficient growth
            lc_inv = b[t][t].lc().inv()
            if not b[t][t].lc().is_one():
                for j in range(k):
                    b[t][j] = b[t][j].scale(lc_inv)
                    u[t][j] = u[t][j].scale(lc_inv)
            dirty = False
            for i in range(t + 1, k):
                if not b[i][t].is_zero():
                    q, r = divmod(b[i][t], b[t][t])
                    row_op(i, t, q)
                    if not r.is_zero():
                        dirty = True
            for j in range(t + 1, k):
                if not b[t][j].is_zero():
                    q, r = divmod(b[t][j], b[t][t])
                    col_op(j, t, q)
                    if not r.is_zero():
                        dirty = True
            if dirty:
                continue
            if any(not b[i][t].is_zero() for i in range(t + 1, k)) or \
               any(not b[t][j].is_zero() for j in range(t + 1, k)):
                continue
            # pivot must divide the rest of the submatrix
            offender = None
            for i in range(t + 1, k):
                for j in range(t + 1, k):
                    if not (b[i][j] % b[t][t]).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, Poly.from_ints(ctx, [-1]))

    for i in range(k):
        if not b[i][i].lc().is_one():
            c = b[i][i].lc().inv()
            for j in range(k):
                b[i][j] = b[i][j].scale(c)
                u[i][j] = u[i][j].scale(c)
    diag = [b[i][i] for i in range(k)]
    return SmithForm(ctx, [row[:] for row in u], [row[:] for row in v], diag)


def smith_check(sf, a):
    """Exact verification: U*A*V = diag, U,V unimodular, chain divisibility."""
    ctx = sf.ctx
    k = len(sf.diag)
    prod = _poly_mat_mul(_poly_mat_mul(sf.U, a, ctx), sf.V, ctx)
    for i in range(k):
        for j in range(k):
            want = sf.diag[i] if i == j else Poly.zero(ctx)
            if prod[i][j] != want:
                return False
    for det in (poly_mat_det(sf.U, ctx), poly_mat_det(sf.V, ctx)):
        if det.is_zero() or det.degree != 0:
            return False
    for i in range(k - 1):
        if not (sf.diag[i + 1] % sf.diag[i]).is_zero():
            return False
    return True


def pencil_smith(M, chart):
    """Smith form of X*M0 + M1 (chart='x1') or M0 + X*M1 (chart='x0')."""
    ctx = M.ctx
    k = M.size
    if chart == "x1":
        a = [[Poly(ctx, [M.M1[i][j], M.M0[i][j]]) for j in range(k)]
             for i in range(k)]
    else:
        a = [[Poly(ctx, [M.M0[i][j], M.M1[i][j]]) for j in range(k)]
             for i in range(k)]
    return smith(a, ctx), a


def _valuation(f, q):
    v = 0
    while True:
        quo, rem = divmod(f, q)
        if not rem.is_zero():
            return v
        f = quo
        v += 1


class ModuleType:
    """Isomorphism class of the coherent module: per point of the scheme,
    the partition of its multiplicity given by elementary divisors."""

    __slots__ = ("ctx", "entries", "unit")

    def __init__(self, ctx, entries, unit):
        self.ctx = ctx
        self.entries = tuple(sorted(
            ((pt, tuple(sorted(part, reverse=True))) for pt, part in entries),
            key=lambda e: e[0].sort_key()))
        self.unit = unit

    def partitions(self):
        return {pt: part for pt, part in self.entries}

    def total_degree(self):
        return sum(pt.degree * sum(part) for pt, part in self.entries)

    def key(self):
        return tuple((pt.sort_key(), part) for pt, part in self.entries)

    def __eq__(self, other):
        return isinstance(other, ModuleType) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ModuleType({self.entries!r})"


def module_type(M):
    """Elementary divisor data of the pencil's coherent module.

    For each finite point: exponents of its polynomial in the Smith diagonal
    of X*M0 + M1; for the point at infinity the same on M0 + X*M1.
    """
    d = disc(M)
    if d.is_zero():
        raise VanishingDiscriminant("module_type needs a nonzero discriminant")
    sch = scheme_of(d)
    finite_points = [(pt, m) for pt, m in sch.points if not pt.is_infinity]
    entries = []
    if finite_points:
        sf, _ = pencil_smith(M, "x1")
        for pt, m in finite_points:
            part = [v for v in (_valuation(dd, pt.qpoly) for dd in sf.diag) if v > 0]
            assert sum(part) == m, "partition must sum to the multiplicity"
            entries.append((pt, part))
    s = sch.infinity_multiplicity()
    if s > 0:
        sf0, _ = pencil_smith(M, "x0")
        x = Poly.x(M.ctx)
        part = [v for v in (_valuation(dd, x) for dd in sf0.diag) if v > 0]
        assert sum(part) == s
        pt_inf = next(pt for pt, _ in sch.points if pt.is_infinity)
        entries.append((pt_inf, part))
    return ModuleType(M.ctx, entries, sch.unit)


class SegreSymbol:
    """Partitions of the geometric points over the algebraic closure.

    Stored per closed point with its residue degree; a degree-d closed point
    stands for d conjugate geometric points with equal partitions, and the
    display string expands them.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        # entries: iterable of (partition tuple desc, residue degree)
        self.entries = tuple(sorted(
            ((tuple(sorted(p, reverse=True)), d) for p, d in entries),
            key=lambda e: (e[0], e[1]), reverse=True))

    def display(self):
        parts = []
        for part, deg in self.entries:
            for _ in range(deg):
                if len(part) == 1:
                    parts.append(str(part[0]))
                else:
                    parts.append("(" + ",".join(str(e) for e in part) + ")")
        return "[" + ", ".join(parts) + "]"

    def __eq__(self, other):
        return isinstance(other, SegreSymbol) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SegreSymbol({self.display()})"


def segre_symbol(M):
    mt = module_type(M)
    return SegreSymbol((part, pt.degree) for pt, part in mt.entries)
