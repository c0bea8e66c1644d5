"""SL-orbit parametrization on the free locus with fixed discriminant.

The finite algebra L attached to a scheme S is realized concretely as the
product of the local rings k[X]/(q_i^{m_i}) (the point at infinity uses its
own chart coordinate).  The group G_S = (k^x times L^x) modulo the elements
(N(beta)^-1, beta^2) acts simply transitively on free-locus SL-orbits; the
norm equation C_f = (-1)^(n(n+1)/2) u^2 N(alpha) parametrizes the orbits
with discriminant exactly f.

The action on explicit matrices multiplies by alpha evaluated on the module
generator -M0^{-1} M1 and rescales one basis vector by u; the transpose
placement is validated at runtime (symmetry plus the disc scaling law) and
frozen by a regression test rather than fixed a priori.
"""

from fractions import Fraction
from itertools import product
from math import isqrt

from .errors import (
    BudgetExceeded,
    ConventionFailure,
    InputError,
    NonUnit,
    PreconditionViolated,
    SchemeMismatch,
    Unsupported,
    VanishingDiscriminant,
)
from .matrices import identity, mat_det, mat_freeze, mat_inv, mat_mul, transpose
from .pencil import (
    Pencil,
    disc,
    find_regular_chart,
    is_free,
    reparametrize,
    tau_inverse,
)
from .poly import (
    Poly,
    PolyQuotient,
    char2_unit_sqrts,
    crt,
    form_split,
    local_unit_sqrts,
    poly_xgcd,
    scheme_of,
)


class AlgebraFactor:
    """One CRT factor: the local ring k[X]/(pi^m) of a scheme point."""

    __slots__ = ("point", "m", "pi", "ring")

    def __init__(self, ctx, point, m):
        self.point = point
        self.m = m
        self.pi = Poly.x(ctx) if point.is_infinity else point.qpoly
        self.ring = PolyQuotient(ctx, self.pi ** m)

    @property
    def dim(self):
        return self.ring.dim

    @property
    def residue_degree(self):
        return self.pi.degree


class FiniteAlgebra:
    """L = H^0(S, O_S) as the product of the local factors of S."""

    __slots__ = ("ctx", "scheme", "factors")

    def __init__(self, scheme):
        self.ctx = scheme.ctx
        self.scheme = scheme
        self.factors = tuple(AlgebraFactor(scheme.ctx, pt, m)
                             for pt, m in scheme.points)

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    @property
    def one(self):
        return AlgebraElem(self, [f.ring.one for f in self.factors])

    def elem(self, polys):
        return AlgebraElem(self, [f.ring.elem(p) for f, p in zip(self.factors, polys)])

    def from_chart_poly(self, poly):
        """Element from a single polynomial representative in the X1 = 1
        chart; requires S to avoid the point at infinity."""
        if any(f.point.is_infinity for f in self.factors):
            raise Unsupported(
                "chart representative needs (1,0) outside S; pass per-factor parts")
        return AlgebraElem(self, [f.ring.elem(poly) for f in self.factors])

    def units(self):
        """All units, iterated factor-by-factor in element-code order."""
        per_factor = []
        for f in self.factors:
            per_factor.append([e for e in f.ring.elements()
                               if not (e.poly % f.pi).is_zero()])
        for combo in product(*per_factor):
            yield AlgebraElem(self, list(combo))

    def unit_count(self):
        count = 1
        for f in self.factors:
            q = self.ctx.order
            count *= (q ** f.residue_degree - 1) * q ** (f.dim - f.residue_degree)
        return count

    def __repr__(self):
        return f"FiniteAlgebra({[(repr(f.point), f.m) for f in self.factors]})"


class AlgebraElem:
    __slots__ = ("algebra", "parts")

    def __init__(self, algebra, parts):
        self.algebra = algebra
        self.parts = tuple(parts)

    def is_unit(self):
        return all(not (p.poly % f.pi).is_zero()
                   for p, f in zip(self.parts, self.algebra.factors))

    def __mul__(self, other):
        return AlgebraElem(self.algebra,
                           [a * b for a, b in zip(self.parts, other.parts)])

    def inv(self):
        return AlgebraElem(self.algebra, [p.inv() for p in self.parts])

    def __eq__(self, other):
        return (isinstance(other, AlgebraElem) and self.algebra is other.algebra
                and self.parts == other.parts)

    def __hash__(self):
        return hash(self.parts)

    def key(self):
        return tuple(f.ring.elem_code(p)
                     for f, p in zip(self.algebra.factors, self.parts))

    def __repr__(self):
        return f"AlgebraElem({[p.poly for p in self.parts]!r})"


def algebra_of(scheme):
    """L = H^0(S, O_S): one factor k_i[T]/(T^{m_i}) per point, realized as
    the quotient k[X]/(q_i^{m_i})."""
    return FiniteAlgebra(scheme)


def _factor_norm(ctx, factor, part):
    """Determinant of multiplication-by-part on the factor, over k."""
    dim = factor.dim
    cols = []
    for j in range(dim):
        xj = factor.ring.elem(Poly.x(ctx) ** j)
        prod_poly = (part * xj).poly
        cols.append([prod_poly.coeff(i) for i in range(dim)])
    mat = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    return mat_det(mat)


def norm(L, alpha):
    """N_{L/k}: product over factors of the multiplication determinants."""
    acc = L.ctx.one
    for f, p in zip(L.factors, alpha.parts):
        acc = acc * _factor_norm(L.ctx, f, p)
    return acc


def _rational_sqrt(x):
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _factor_sqrts(ctx, factor, gamma_part, cap=4096):
    """All square roots of a unit in one local factor."""
    if ctx.characteristic == 2:
        return char2_unit_sqrts(factor.ring, gamma_part, cap=cap)
    if ctx.is_finite:
        return local_unit_sqrts(factor.ring, factor.pi, gamma_part)
    # rationals: residue sqrt only available at rational points
    if factor.residue_degree > 1:
        raise Unsupported("square roots in higher-degree residue fields over Q")
    root0 = _rational_sqrt((gamma_part.poly % factor.pi).eval(
        -factor.pi.coeff(0)).val)
    if root0 is None:
        return []
    ring = factor.ring
    b = ring.elem(Poly.constant(ctx.elem(root0)))
    if b.is_zero():
        return []
    inv2 = ring.elem(Poly.from_ints(ctx, [2])).inv()
    for _ in range(2 * factor.m + 4):
        if b * b == gamma_part:
            break
        b = (b + gamma_part * b.inv()) * inv2
    if b * b != gamma_part:
        return []
    return [b, -b]


def gs_equal(L, first, second):
    """Equality in G_S: (u, a) ~ (u', a') iff a/a' = beta^2 with
    u * N(beta) = u' for some unit beta."""
    u, a = first
    u2, a2 = second
    if u.is_zero() or u2.is_zero() or not a.is_unit() or not a2.is_unit():
        raise NonUnit("G_S elements need u in k^x and alpha in L^x")
    gamma = a * a2.inv()
    nu = u2 / u
    root_sets = []
    for f, g in zip(L.factors, gamma.parts):
        roots = _factor_sqrts(L.ctx, f, g)
        if not roots:
            return False
        root_sets.append(roots)
    if all(len(r) <= 2 for r in root_sets):
        total = 1
        for r in root_sets:
            total *= len(r)
        if total > 1 << 20:
            raise BudgetExceeded("too many root combinations")
    for combo in product(*root_sets):
        beta = AlgebraElem(L, list(combo))
        if norm(L, beta) == nu:
            return True
    return False


def _gs_class_orbit(L, u, alpha):
    """All pairs (N(beta)^-1 u, beta^2 alpha), beta in L^x (finite case)."""
    out = set()
    for beta in L.units():
        nb = norm(L, beta)
        out.add((L.ctx.code_of(u / nb), (beta * beta * alpha).key()))
    return out


def gs_class_label(L, u, alpha):
    """Lexicographically least equivalent (u, alpha), as codes."""
    return min(_gs_class_orbit(L, u, alpha))


def sign_elem(ctx, n):
    return ctx.one if (n * (n + 1) // 2) % 2 == 0 else -ctx.one


def sl_orbit_count(scheme, f, algebra=None):
    """Number of free-locus SL-orbits with discriminant exactly f.

    Counts {(u, alpha) : C_f = (-1)^(n(n+1)/2) u^2 N(alpha)} modulo the
    G_S relation, by enumeration; finite fields only.  Returns
    (count, labels) with canonical class labels.
    """
    ctx = scheme.ctx
    if not ctx.is_finite:
        raise Unsupported("orbit counting enumerates L^x; use existence_search over Q")
    if scheme_of(f).key() != scheme.key():
        raise SchemeMismatch("form does not cut out the given scheme")
    L = algebra if algebra is not None else algebra_of(scheme)
    n = scheme.total_degree - 1
    sgn = sign_elem(ctx, n)
    _, _, c_f = form_split(f)
    seen = set()
    labels = []
    nonzero = [ctx.from_code(c) for c in range(1, ctx.order)]
    for alpha in L.units():
        na = norm(L, alpha)
        for u in nonzero:
            if c_f != sgn * u * u * na:
                continue
            lab = (ctx.code_of(u), alpha.key())
            if lab in seen:
                continue
            orbit = _gs_class_orbit(L, u, alpha)
            seen |= orbit
            labels.append(min(orbit))
    labels.sort()
    return len(labels), labels


class ExistenceResult:
    __slots__ = ("status", "witness")

    def __init__(self, status, witness=None):
        self.status = status  # "witness" | "none" | "unknown"
        self.witness = witness

    def __repr__(self):
        return f"ExistenceResult({self.status}, {self.witness!r})"


def existence_search(scheme, f, bound=6, algebra=None):
    """Is C_f = (-1)^(n(n+1)/2) u^2 N(alpha) solvable?

    Finite fields: decided exactly by enumeration.  Over Q: bounded search
    over per-factor representatives with numerators and denominators up to
    the bound; a miss reports "unknown", never a definite no.
    """
    ctx = scheme.ctx
    if scheme_of(f).key() != scheme.key():
        raise SchemeMismatch("form does not cut out the given scheme")
    L = algebra if algebra is not None else algebra_of(scheme)
    n = scheme.total_degree - 1
    sgn = sign_elem(ctx, n)
    _, _, c_f = form_split(f)
    if ctx.is_finite:
        for alpha in L.units():
            na = norm(L, alpha)
            target = c_f / (sgn * na)
            for u in (ctx.from_code(c) for c in range(1, ctx.order)):
                if u * u == target:
                    return ExistenceResult("witness", (u, alpha))
        return ExistenceResult("none")
    # rationals: height-ordered coefficient search
    for alpha in _rational_candidates(L, bound):
        if not alpha.is_unit():
            continue
        na = norm(L, alpha)
        if na.is_zero():
            continue
        target = (c_f / (sgn * na)).val
        root = _rational_sqrt(target)
        if root is not None and root != 0:
            return ExistenceResult("witness", (ctx.elem(root), alpha))
    return ExistenceResult("unknown")


def _rational_candidates(L, bound, cap=200000):
    ctx = L.ctx
    values = [Fraction(0)]
    for h in range(1, bound + 1):
        for num in range(1, h + 1):
            for den in range(1, h + 1):
                if max(num, den) != h:
                    continue
                q = Fraction(num, den)
                if q.numerator == num and q.denominator == den:
                    values.append(q)
                    values.append(-q)
    dims = [f.dim for f in L.factors]
    count = 0
    for flat in product(range(len(values)), repeat=sum(dims)):
        count += 1
        if count > cap:
            return
        parts = []
        pos = 0
        for f, d in zip(L.factors, dims):
            coeffs = [ctx.elem(values[i]) for i in flat[pos:pos + d]]
            parts.append(f.ring.elem(Poly(ctx, coeffs)))
            pos += d
        yield AlgebraElem(L, parts)


class StabilizerInfo:
    __slots__ = ("size", "description", "elements")

    def __init__(self, size, description, elements=None):
        self.size = size
        self.description = description
        self.elements = elements

    def __repr__(self):
        return f"StabilizerInfo(size={self.size}, {self.description!r})"


def stabilizer(scheme, algebra=None):
    """{beta in L^x : beta^2 = 1, N(beta) = 1}, the SL-stabilizer of any
    free pencil with scheme S.

    Odd characteristic: sign vectors with even total flipped dimension,
    size 2^r or 2^(r-1) over the r factors.  Characteristic two: the square
    roots of one are computed by the linear-algebra solver and filtered by
    the norm condition.
    """
    L = algebra if algebra is not None else algebra_of(scheme)
    ctx = L.ctx
    if ctx.characteristic != 2:
        dims = [f.dim for f in L.factors]
        r = len(dims)
        elements = []
        for signs in product((0, 1), repeat=r):
            if sum(d for s, d in zip(signs, dims) if s) % 2:
                continue
            parts = [(-f.ring.one if s else f.ring.one)
                     for s, f in zip(signs, L.factors)]
            elements.append(AlgebraElem(L, parts))
        size = 2 ** r if all(d % 2 == 0 for d in dims) else 2 ** (r - 1)
        assert size == len(elements)
        desc = (f"sign vectors over {r} factor(s) with even flipped dimension; "
                f"order {size}")
        return StabilizerInfo(size, desc, elements)
    root_sets = []
    for f in L.factors:
        root_sets.append(char2_unit_sqrts(f.ring, f.ring.one))
    elements = []
    for combo in product(*root_sets):
        beta = AlgebraElem(L, list(combo))
        if norm(L, beta) == ctx.one:
            elements.append(beta)
    desc = f"characteristic-2 square roots of 1 with norm 1; order {len(elements)}"
    return StabilizerInfo(len(elements), desc, elements)


def g_s_order(L):
    """|G_S| = |k^x| * |stabilizer| for finite fields."""
    if not L.ctx.is_finite:
        raise Unsupported("G_S order is computed for finite fields")
    stab = stabilizer(L.scheme, algebra=L)
    return (L.ctx.order - 1) * stab.size


# -- the action on explicit matrices ----------------------------------------------


def gs_act(M, u, alpha_poly, check_free=True):
    """Act by (u, alpha) on a free symmetric pencil with M0 invertible.

    alpha_poly is a polynomial representative in L = k[X]/(ghat) where ghat
    is the monic normalization of disc(M)(X, 1); the scheme must avoid the
    point (1,0) (equivalently det M0 != 0).  The output satisfies
    disc = u^2 N(alpha) disc(M); both transpose conventions are attempted
    and the one producing symmetric matrices is used.
    """
    ctx = M.ctx
    if not M.symmetric:
        raise PreconditionViolated("gs_act needs a symmetric pencil")
    if u.is_zero():
        raise NonUnit("u must be a unit")
    d = disc(M)
    if d.is_zero():
        raise VanishingDiscriminant("gs_act needs disc != 0")
    dpoly = d.dehomog_x1()
    if dpoly.degree != M.size:
        raise PreconditionViolated("(1,0) lies in the scheme; change charts first")
    if check_free and not is_free(M):
        raise PreconditionViolated("gs_act needs a free pencil")
    ghat = dpoly.monic()
    chart = PolyQuotient(ctx, ghat)
    alpha = chart.elem(alpha_poly)
    g, _, _ = poly_xgcd(alpha.poly, ghat)
    if not g.is_one():
        raise NonUnit("alpha must be a unit in k[X]/(ghat)")

    m0_inv = mat_inv(M.M0, ctx.zero, ctx.one)
    nmat = mat_freeze([[-(x) for x in row] for row in mat_mul(m0_inv, M.M1)])
    qmat = _matrix_poly_eval(alpha.poly, nmat, ctx)
    norm_alpha = mat_det(qmat)
    if norm_alpha.is_zero():
        raise NonUnit("alpha evaluates to a singular operator")
    pmat = [[ctx.zero] * M.size for _ in range(M.size)]
    pmat[0][0] = u
    for i in range(1, M.size):
        pmat[i][i] = ctx.one
    pmat = mat_freeze(pmat)

    scale = u * u * norm_alpha
    want = tuple(c * scale for c in d.coeffs)
    for cand in (transpose(qmat), qmat):
        pt = transpose(pmat)
        out0 = mat_mul(mat_mul(pt, mat_mul(M.M0, cand)), pmat)
        out1 = mat_mul(mat_mul(pt, mat_mul(M.M1, cand)), pmat)
        result = Pencil(ctx, out0, out1)
        if not result.symmetric:
            continue
        if tuple(disc(result).coeffs) != want:
            continue
        return result
    raise ConventionFailure("no transpose convention produced a symmetric pair")


def _matrix_poly_eval(poly, mat, ctx):
    k = len(mat)
    acc = identity(k, ctx.zero, ctx.one)
    out = [[ctx.zero for _ in range(k)] for _ in range(k)]
    for c in poly.coeffs:
        if not c.is_zero():
            for i in range(k):
                for j in range(k):
                    out[i][j] = out[i][j] + acc[i][j] * c
        acc = mat_mul(acc, mat)
    return mat_freeze(out)


def gs_act_algebra(M, u, alpha, check_free=True):
    """gs_act with alpha given as an AlgebraElem of algebra_of(S).

    When (1,0) lies in S, a deterministic coordinate change moves the scheme
    off infinity, the factor representatives are transported through the
    substitution, the action is applied, and the chart is undone.
    """
    ctx = M.ctx
    d = disc(M)
    if d.is_zero():
        raise VanishingDiscriminant("gs_act needs disc != 0")
    sch = scheme_of(d)
    L = alpha.algebra
    if L.scheme.key() != sch.key():
        raise SchemeMismatch("alpha lives on a different scheme")
    tau = find_regular_chart(M)
    ident = ((ctx.one, ctx.zero), (ctx.zero, ctx.one))
    if tau == ident:
        rep = crt([(p.poly, f.ring.modulus) for p, f in zip(alpha.parts, L.factors)])
        return gs_act(M, u, rep, check_free=check_free)
    mt = reparametrize(M, tau)
    (t00, t01), (t10, t11) = tau
    pairs = []
    for f, part in zip(L.factors, alpha.parts):
        # local coordinate of the old chart expressed in the new one
        if f.point.is_infinity:
            num = Poly(ctx, [t11, t10])
            den = Poly(ctx, [t01, t00])
        else:
            num = Poly(ctx, [t01, t00])
            den = Poly(ctx, [t11, t10])
        new_pi = _transport_point(ctx, f.point, tau)
        ring = PolyQuotient(ctx, new_pi ** f.m)
        num_e, den_e = ring.elem(num), ring.elem(den)
        acc = ring.zero
        coeffs = part.poly.coeffs
        da = len(coeffs) - 1
        for j, c in enumerate(coeffs):
            term = ring.elem(Poly.constant(c)) * num_e ** j * den_e ** (da - j)
            acc = acc + term
        acc = acc * (den_e ** da).inv()
        pairs.append((acc.poly, ring.modulus))
    rep = crt(pairs)
    result_t = gs_act(mt, u, rep, check_free=check_free)
    return reparametrize(result_t, tau_inverse(ctx, tau))


def _transport_point(ctx, point, tau):
    """Monic dehomogenization of the point's form composed with tau."""
    (t00, t01), (t10, t11) = tau
    form = point.form()
    # evaluate form at (t00*X + t01, t10*X + t11)
    a = Poly(ctx, [t01, t00])
    b = Poly(ctx, [t11, t10])
    acc = Poly.zero(ctx)
    deg = form.degree
    for i, c in enumerate(form.coeffs):
        if c.is_zero():
            continue
        acc = acc + (a ** i * b ** (deg - i)).scale(c)
    if acc.degree < 1:
        raise SchemeMismatch("point transported to infinity")
    return acc.monic()
