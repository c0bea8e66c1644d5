"""Matrix pencils: the pair type, discriminant, congruence action, freeness.

A pencil is an ordered pair (M0, M1) of square matrices over a FieldCtx,
viewed as the family X0*M0 + X1*M1.  The discriminant det(X0*M0 + X1*M1) is
computed exactly, by evaluation-interpolation when the field has enough
elements and by fraction-free (Bareiss) elimination over k[X] otherwise;
both paths are exposed so they can be checked against each other.
"""

from .errors import InputError, SingularP, SizeMismatch, VanishingDiscriminant
from .fields import EXT, PRIME, extension_field
from .matrices import (
    is_symmetric,
    mat_det,
    mat_freeze,
    mat_mul,
    mat_rank,
    transpose,
)
from .poly import BinaryForm, Poly, PolyQuotient, scheme_of


class Pencil:
    __slots__ = ("ctx", "size", "M0", "M1", "symmetric", "_disc")

    def __init__(self, ctx, M0, M1):
        M0, M1 = mat_freeze(M0), mat_freeze(M1)
        k = len(M0)
        if k < 1 or any(len(r) != k for r in M0) or len(M1) != k \
                or any(len(r) != k for r in M1):
            raise SizeMismatch("pencil needs two square matrices of equal size")
        self.ctx = ctx
        self.size = k
        self.M0 = M0
        self.M1 = M1
        self.symmetric = is_symmetric(M0) and is_symmetric(M1)
        self._disc = None

    @classmethod
    def from_ints(cls, ctx, rows0, rows1):
        return cls(ctx,
                   [[ctx.elem(c) for c in row] for row in rows0],
                   [[ctx.elem(c) for c in row] for row in rows1])

    @property
    def n(self):
        return self.size - 1

    def __eq__(self, other):
        return (isinstance(other, Pencil) and self.ctx == other.ctx
                and self.M0 == other.M0 and self.M1 == other.M1)

    def __hash__(self):
        return hash((self.ctx, self.M0, self.M1))

    def __repr__(self):
        return (f"Pencil(n={self.n}, symmetric={self.symmetric}, "
                f"M0={[[c.val for c in r] for r in self.M0]}, "
                f"M1={[[c.val for c in r] for r in self.M1]})")

    def entry_val_rows(self):
        return ([[c.val for c in r] for r in self.M0],
                [[c.val for c in r] for r in self.M1])


# -- determinant of X*M0 + M1 ---------------------------------------------------


def _det_at(M, x):
    """det(x*M0 + M1) over the base field."""
    k = M.size
    a = [[M.M0[i][j] * x + M.M1[i][j] for j in range(k)] for i in range(k)]
    return mat_det(a)


def det_poly_interpolation(M):
    """det(X*M0 + M1) via evaluation at n+2 points plus Lagrange interpolation.

    Needs at least n+2 field elements; for a too-small prime field the
    evaluation happens in an extension and the coefficients are mapped back.
    """
    ctx = M.ctx
    npts = M.size + 1
    if ctx.kind == PRIME and ctx.order < npts:
        e = 1
        while ctx.p ** e < npts:
            e += 1
        big = extension_field(ctx.p, e)
        lifted = Pencil(big,
                        [[big.elem(c.val) for c in r] for r in M.M0],
                        [[big.elem(c.val) for c in r] for r in M.M1])
        dd = det_poly_interpolation(lifted)
        coeffs = []
        for c in dd.coeffs:
            assert all(t == 0 for t in c.val[1:]), "det must live in the base field"
            coeffs.append(ctx.elem(c.val[0]))
        return Poly(ctx, coeffs)
    if ctx.is_finite and ctx.order < npts:
        raise InputError("field too small for interpolation; use Bareiss")
    if ctx.is_finite:
        xs = [ctx.from_code(i) for i in range(npts)]
    else:
        xs = [ctx.elem(0)]
        i = 1
        while len(xs) < npts:
            xs.append(ctx.elem(i))
            xs.append(ctx.elem(-i))
            i += 1
        xs = xs[:npts]
    ys = [_det_at(M, x) for x in xs]
    # Lagrange
    acc = Poly.zero(ctx)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi.is_zero():
            continue
        num = Poly.one(ctx)
        den = ctx.one
        for j, xj in enumerate(xs):
            if j != i:
                num = num * Poly(ctx, [-xj, ctx.one])
                den = den * (xi - xj)
        acc = acc + num.scale(yi * den.inv())
    return acc


def det_poly_bareiss(M):
    """det(X*M0 + M1) by fraction-free elimination over k[X]."""
    ctx = M.ctx
    k = M.size
    b = [[Poly(ctx, [M.M1[i][j], M.M0[i][j]]) for j in range(k)]
         for i in range(k)]
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
                assert r.is_zero(), "Bareiss division must be exact"
                b[i][j] = q
            b[i][col] = Poly.zero(ctx)
        prev = b[col][col]
    det = b[k - 1][k - 1]
    return -det if sign else det


def det_poly(M):
    ctx = M.ctx
    if ctx.is_finite and ctx.order < M.size + 1:
        if ctx.kind == EXT:
            return det_poly_bareiss(M)
        return det_poly_interpolation(M)  # extends the prime field internally
    return det_poly_interpolation(M)


def disc(M):
    """The discriminant binary form det(X0*M0 + X1*M1), degree n+1 (maybe zero)."""
    if M._disc is None:
        d = det_poly(M)
        M._disc = BinaryForm(M.ctx, M.size,
                             [d.coeff(i) for i in range(M.size + 1)])
    return M._disc


# -- congruence action -----------------------------------------------------------


def act(M, P):
    """M . P = (P^t M0 P, P^t M1 P) for invertible P."""
    P = mat_freeze(P)
    if len(P) != M.size or any(len(r) != M.size for r in P):
        raise SizeMismatch("P must match the pencil size")
    if mat_det(P).is_zero():
        raise SingularP("P must be invertible")
    pt = transpose(P)
    return Pencil(M.ctx, mat_mul(mat_mul(pt, M.M0), P),
                  mat_mul(mat_mul(pt, M.M1), P))


def reparametrize(M, tau):
    """Substitute (X0, X1) -> tau*(X0', X1') on the parameter line.

    tau = ((t00, t01), (t10, t11)) invertible over the base field; the new
    pair is (t00*M0 + t10*M1, t01*M0 + t11*M1), so that the new discriminant
    is the old one composed with tau.
    """
    (t00, t01), (t10, t11) = tau
    if (t00 * t11 - t01 * t10).is_zero():
        raise SingularP("reparametrization must be invertible")
    k = M.size
    N0 = [[M.M0[i][j] * t00 + M.M1[i][j] * t10 for j in range(k)] for i in range(k)]
    N1 = [[M.M0[i][j] * t01 + M.M1[i][j] * t11 for j in range(k)] for i in range(k)]
    return Pencil(M.ctx, N0, N1)


def tau_inverse(ctx, tau):
    (t00, t01), (t10, t11) = tau
    det = t00 * t11 - t01 * t10
    dinv = det.inv()
    return ((t11 * dinv, -t01 * dinv), (-t10 * dinv, t00 * dinv))


def find_regular_chart(M):
    """A deterministic tau with det(reparametrize(M, tau).M0) != 0.

    Scans (1:0), (0:1), (1:c) for c in element order; raises when the whole
    rational projective line lies in the discriminant scheme.
    """
    ctx = M.ctx
    d = disc(M)
    if d.is_zero():
        raise VanishingDiscriminant("no regular chart for a singular pencil")
    one, zero = ctx.one, ctx.zero
    if not d.eval(one, zero).is_zero():
        return ((one, zero), (zero, one))
    if not d.eval(zero, one).is_zero():
        return ((zero, one), (one, zero))
    candidates = ctx.elements() if ctx.is_finite else _rational_scan(ctx)
    for c in candidates:
        if c.is_zero():
            continue
        if not d.eval(one, c).is_zero():
            return ((one, zero), (c, one))
    raise SingularP("every rational point of P^1 lies in the scheme")


def _rational_scan(ctx):
    i = 0
    while True:
        i += 1
        yield ctx.elem(i)
        yield ctx.elem(-i)


# -- freeness and reducedness -----------------------------------------------------


def _scheme(M):
    d = disc(M)
    if d.is_zero():
        raise VanishingDiscriminant("discriminant vanishes identically")
    return scheme_of(d)


def point_rank(M, point):
    """rank(a*M0 + b*M1) over the residue field of a scheme point."""
    k = M.size
    if point.is_infinity:
        return mat_rank(M.M0)
    ring = PolyQuotient(M.ctx, point.qpoly)
    x = ring.gen
    a = [[ring.elem(Poly.constant(M.M0[i][j])) * x
          + ring.elem(Poly.constant(M.M1[i][j])) for j in range(k)]
         for i in range(k)]
    return mat_rank(a)


def is_free(M):
    """True iff the associated module is free of rank one: the evaluated
    pencil has rank exactly n at every point of the discriminant scheme."""
    sch = _scheme(M)
    return all(point_rank(M, pt) == M.size - 1 for pt, _ in sch.points)


def scheme_is_reduced(M):
    """True iff the discriminant has no repeated irreducible factor over k."""
    sch = _scheme(M)
    return all(m == 1 for _, m in sch.points)


def pencil_scheme(M):
    return _scheme(M)
