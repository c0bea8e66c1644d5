"""Orbit invariants for symmetric pencils under GL congruence.

In odd characteristic the pencil matrix is diagonalized by symmetric
row/column reduction over the truncated local ring at each scheme point,
giving diag(u_j t^{e_j}); the exponents recover the module partition and the
square classes of the units (grouped per exponent) complete the invariant
over finite fields.  Decision mode is finite odd characteristic only; the
rationals and characteristic two route to the brute-force oracle.
"""

from fractions import Fraction

from .errors import (
    CharTwo,
    InputError,
    PreconditionViolated,
    Unsupported,
    VanishingDiscriminant,
)
from .pencil import disc
from .poly import Poly, PolyQuotient, scheme_of
from .smith import module_type


def _val_and_unit(poly, pi, cap):
    """pi-adic valuation of a reduced representative and its unit part."""
    if poly.is_zero():
        return cap, None
    v = 0
    while True:
        q, r = divmod(poly, pi)
        if not r.is_zero():
            return v, poly
        poly = q
        v += 1
        if v >= cap:
            return cap, None


class _LocalRing:
    """k[X]/(pi^N) with pi-adic helpers for the symmetric reduction."""

    def __init__(self, ctx, pi, nilpotency):
        self.ctx = ctx
        self.pi = pi
        self.cap = nilpotency
        self.ring = PolyQuotient(ctx, pi ** nilpotency)

    def reduce(self, poly):
        return poly % self.ring.modulus

    def val(self, poly):
        return _val_and_unit(poly, self.pi, self.cap)[0]

    def unit_part(self, poly):
        v, unit = _val_and_unit(poly, self.pi, self.cap)
        return v, unit

    def divide(self, a, b):
        """a/b in the local ring; requires val(a) >= val(b), b != 0."""
        vb, bu = self.unit_part(b)
        if bu is None:
            raise ZeroDivisionError("division by zero in local ring")
        va = self.val(a)
        assert va >= vb, "local division needs val(a) >= val(b)"
        au = a
        for _ in range(vb):
            au, r = divmod(au, self.pi)
            assert r.is_zero()
        bu_inv = self.ring.elem(bu).inv().poly
        return self.reduce(au * bu_inv)


class LocalSymmetricForm:
    """diag(u_j t^{e_j}) data at one scheme point.

    entries: tuple of (exponent, class) sorted by exponent descending; the
    class is 0/1 (square/nonsquare in the residue field) over finite fields,
    a signed squarefree integer over Q at rational points, and None when no
    canonical representation exists (higher-degree points over Q).
    residue_units keeps the raw residue-field units for inspection.
    """

    __slots__ = ("point", "entries", "residue_units")

    def __init__(self, point, entries, residue_units):
        self.point = point
        self.entries = tuple(sorted(entries, key=lambda ec: (-ec[0], str(ec[1]))))
        self.residue_units = tuple(residue_units)

    def exponents(self):
        return tuple(sorted((e for e, _ in self.entries), reverse=True))

    def __repr__(self):
        return f"LocalSymmetricForm({self.point!r}, {self.entries!r})"


def rational_square_class(x):
    """Canonical representative of x in Q^x modulo squares: +-squarefree int."""
    if x == 0:
        raise InputError("square class of zero")
    n = abs(x.numerator * x.denominator)
    sign = -1 if x < 0 else 1
    kernel = 1
    d = 2
    while d * d <= n:
        exp = 0
        while n % d == 0:
            n //= d
            exp += 1
        if exp % 2:
            kernel *= d
        d += 1
    kernel *= n
    return sign * kernel


def _residue_square_bit(ctx, pi, unit_poly):
    """0 = square, 1 = nonsquare in the residue field k[X]/(pi), k finite odd."""
    kappa = PolyQuotient(ctx, pi)
    u = kappa.elem(unit_poly)
    assert not u.is_zero()
    order = ctx.order ** pi.degree
    return 0 if (u ** ((order - 1) // 2)).is_one() else 1


def local_diagonalize(M, point, multiplicity=None):
    """Symmetric congruence reduction of the pencil over the truncated local
    ring of one scheme point; odd characteristic only."""
    ctx = M.ctx
    if ctx.characteristic == 2:
        raise CharTwo("local diagonalization needs 2 invertible")
    if not M.symmetric:
        raise PreconditionViolated("local_diagonalize needs a symmetric pencil")
    d = disc(M)
    if d.is_zero():
        raise VanishingDiscriminant("local_diagonalize needs disc != 0")
    if multiplicity is None:
        sch = scheme_of(d)
        for pt, m in sch.points:
            if pt == point:
                multiplicity = m
                break
        if multiplicity is None:
            raise InputError("point does not lie in the discriminant scheme")

    k = M.size
    if point.is_infinity:
        pi = Poly.x(ctx)
        a_entry = lambda i, j: Poly(ctx, [M.M0[i][j], M.M1[i][j]])
    else:
        pi = point.qpoly
        a_entry = lambda i, j: Poly(ctx, [M.M1[i][j], M.M0[i][j]])
    local = _LocalRing(ctx, pi, multiplicity + 1)
    a = [[local.reduce(a_entry(i, j)) for j in range(k)] for i in range(k)]

    def sym_swap(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            for r in range(k):
                a[r][i], a[r][j] = a[r][j], a[r][i]

    def sym_add(dst, src):
        # row_dst += row_src, then col_dst += col_src
        for c in range(k):
            a[dst][c] = local.reduce(a[dst][c] + a[src][c])
        for r in range(k):
            a[r][dst] = local.reduce(a[r][dst] + a[r][src])

    def sym_eliminate(t, i, coef):
        # row_i -= coef*row_t, col_i -= coef*col_t
        for c in range(k):
            a[i][c] = local.reduce(a[i][c] - coef * a[t][c])
        for r in range(k):
            a[r][i] = local.reduce(a[r][i] - coef * a[r][t])

    entries = []
    units = []
    for t in range(k):
        vmin, pos = local.cap + 1, None
        for i in range(t, k):
            for j in range(i, k):
                v = local.val(a[i][j])
                if v < vmin:
                    vmin, pos = v, (i, j)
        assert pos is not None and vmin <= local.cap - 1, \
            "total valuation bounded by the multiplicity"
        vdiag, idiag = local.cap + 1, None
        for i in range(t, k):
            v = local.val(a[i][i])
            if v < vdiag:
                vdiag, idiag = v, i
        if vdiag == vmin:
            sym_swap(t, idiag)
        else:
            i, j = pos  # off-diagonal; both a_ii and a_jj have valuation > vmin
            sym_add(i, j)  # diagonal entry picks up 2*a_ij, a unit times pi^vmin
            sym_swap(t, i)
        pivot = a[t][t]
        for i in range(t + 1, k):
            if not a[i][t].is_zero():
                coef = local.divide(a[i][t], pivot)
                sym_eliminate(t, i, coef)
        e, unit = local.unit_part(pivot)
        if e == 0:
            continue  # unimodular part, invisible at this point
        if ctx.is_finite:
            cls = _residue_square_bit(ctx, pi, unit)
        elif pi.degree == 1:
            root = -pi.coeff(0)
            cls = rational_square_class(unit.eval(root).val)
        else:
            cls = None
        entries.append((e, cls))
        units.append(unit % pi)
    return LocalSymmetricForm(point, entries, units)


class SymOrbitInvariant:
    """Module type plus, per (point, exponent), the part count and the
    product of the unit square classes."""

    __slots__ = ("mtype", "classes")

    def __init__(self, mtype, classes):
        self.mtype = mtype
        self.classes = tuple(sorted(
            classes, key=lambda c: (c[0].sort_key(), -c[1])))

    def key(self):
        return (self.mtype.key(),
                tuple((pt.sort_key(), e, h, cls) for pt, e, h, cls in self.classes))

    def __eq__(self, other):
        return isinstance(other, SymOrbitInvariant) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SymOrbitInvariant({self.classes!r})"


def sym_invariant(M):
    """The complete GL-congruence invariant in odd characteristic.

    Over Q this is only defined when every scheme point is rational (square
    classes in higher-degree residue fields have no canonical finite form);
    Unsupported otherwise.
    """
    ctx = M.ctx
    if ctx.characteristic == 2:
        raise CharTwo("sym_invariant needs odd or zero characteristic")
    if not M.symmetric:
        raise PreconditionViolated("sym_invariant needs a symmetric pencil")
    d = disc(M)
    if d.is_zero():
        raise VanishingDiscriminant("sym_invariant needs disc != 0")
    mt = module_type(M)
    sch = scheme_of(d)
    classes = []
    for pt, m in sch.points:
        if not ctx.is_finite and pt.degree > 1:
            raise Unsupported(
                "no canonical square classes in higher-degree residue fields over Q")
        lf = local_diagonalize(M, pt, multiplicity=m)
        per_e = {}
        for e, cls in lf.entries:
            per_e.setdefault(e, []).append(cls)
        for e, clss in per_e.items():
            if ctx.is_finite:
                combined = 0
                for c in clss:
                    combined ^= c
            else:
                prod = Fraction(1)
                for c in clss:
                    prod *= c
                combined = rational_square_class(prod)
            classes.append((pt, e, len(clss), combined))
    return SymOrbitInvariant(mt, classes)


def sym_equivalent(M, M2):
    """Decide GL-congruence of two symmetric pencils.

    Finite fields of odd characteristic only: the invariant is complete
    there.  Other fields raise Unsupported (use the brute-force oracle for
    characteristic two).
    """
    ctx = M.ctx
    if ctx != M2.ctx:
        raise InputError("pencils live over different fields")
    if not (M.symmetric and M2.symmetric):
        raise PreconditionViolated("sym_equivalent needs symmetric pencils")
    if not ctx.is_finite or ctx.characteristic == 2:
        raise Unsupported(
            "decision mode is finite odd characteristic; use oracle.brute_equivalent")
    if M.size != M2.size:
        return False
    d1, d2 = disc(M), disc(M2)
    if d1.is_zero() or d2.is_zero():
        raise VanishingDiscriminant("sym_equivalent needs disc != 0")
    if scheme_of(d1).key() != scheme_of(d2).key():
        return False
    return sym_invariant(M) == sym_invariant(M2)
