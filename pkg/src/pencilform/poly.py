"""Univariate polynomials and binary forms over a FieldCtx.

Polynomials are dense coefficient tuples, constant term first, with no
trailing zeros (the zero polynomial has an empty tuple and degree -1).
Factorization is exact everywhere: distinct-degree / equal-degree splitting
(Cantor-Zassenhaus, with the trace-map variant in characteristic two) over
finite fields, and squarefree decomposition + factorization modulo a good
prime + linear Hensel lifting + subset recombination over the rationals
(degree bound 24, no lattice reduction).

Random choices in equal-degree splitting come from an explicitly passed,
seedable generator so all outputs are reproducible.
"""

import random
from fractions import Fraction
from math import gcd as int_gcd, isqrt

from .errors import (
    BudgetExceeded,
    DegreeBoundExceeded,
    InputError,
    NonUnit,
    Unsupported,
    ZeroForm,
    ZeroPolynomial,
)
from .fields import RATIONAL, is_prime, prime_field

RATIONAL_FACTOR_DEGREE_BOUND = 24


class Poly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        """coeffs: iterable of FieldElem, constant term first."""
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.elem(c) for c in ints])

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx):
        return cls(ctx, [ctx.one])

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [ctx.zero, ctx.one])

    @classmethod
    def constant(cls, c):
        return cls(c.ctx, [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def lc(self):
        if self.is_zero():
            raise ZeroPolynomial("leading coefficient of zero")
        return self.coeffs[-1]

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "1" if i == 0 else ("X" if i == 1 else f"X^{i}")
            terms.append(f"({c.val})*{mono}")
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ctx)
        zero = self.ctx.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ctx, out)

    def scale(self, c):
        return Poly(self.ctx, [a * c for a in self.coeffs])

    def monic(self):
        if self.is_zero():
            raise ZeroPolynomial("monic of zero")
        return self.scale(self.lc().inv())

    def shift(self, k):
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return Poly(self.ctx, [self.ctx.zero] * k + list(self.coeffs))

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroPolynomial("division by zero polynomial")
        if self.degree < other.degree:
            return Poly.zero(self.ctx), self
        inv_lc = other.lc().inv()
        rem = list(self.coeffs)
        qdeg = self.degree - other.degree
        quot = [self.ctx.zero] * (qdeg + 1)
        for k in range(qdeg, -1, -1):
            c = rem[other.degree + k] * inv_lc
            quot[k] = c
            if not c.is_zero():
                for i, b in enumerate(other.coeffs):
                    rem[i + k] = rem[i + k] - c * b
        return Poly(self.ctx, quot), Poly(self.ctx, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        result = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def eval(self, x):
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        if self.degree < 1:
            return Poly.zero(self.ctx)
        return Poly(self.ctx, [self.ctx.elem(i) * self.coeffs[i]
                               for i in range(1, len(self.coeffs))])

    def compose(self, other):
        acc = Poly.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.constant(c)
        return acc


def poly_gcd(a, b):
    """Monic gcd (zero if both zero)."""
    while not b.is_zero():
        a, b = b, a % b.monic()
    if a.is_zero():
        return a
    return a.monic()


def poly_xgcd(a, b):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic or zero."""
    ctx = a.ctx
    r0, r1 = a, b
    s0, s1 = Poly.one(ctx), Poly.zero(ctx)
    t0, t1 = Poly.zero(ctx), Poly.one(ctx)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = r0.lc().inv()
    return r0.scale(c), s0.scale(c), t0.scale(c)


def pow_mod(base, e, modulus):
    result = Poly.one(base.ctx)
    base = base % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        e >>= 1
    return result


# -- squarefree decomposition -------------------------------------------------


def _pth_root(f):
    """p-th root of f(X) = g(X^p) over a finite field (perfect, so exact)."""
    ctx = f.ctx
    p = ctx.characteristic
    root_exp = p ** (ctx.d - 1) if ctx.kind != RATIONAL else 1
    out = []
    for i in range(0, f.degree + 1, p):
        out.append(f.coeff(i) ** root_exp)
    return Poly(ctx, out)


def squarefree_decompose(f):
    """f = lc(f) * prod g_i^{m_i}, g_i monic squarefree pairwise coprime.

    Returns the list of (g_i, m_i); the unit in front is exactly lc(f).
    In characteristic p the p-th-power part is split off exactly, so the
    result is a true squarefree decomposition.
    """
    if f.is_zero():
        raise ZeroPolynomial("squarefree_decompose of zero")
    f = f.monic()
    if f.degree == 0:
        return []
    if f.ctx.characteristic == 0:
        return _yun(f)
    return _squarefree_char_p(f)


def _yun(f):
    fp = f.derivative()
    c = poly_gcd(f, fp)
    w = f // c
    out = []
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    return out


def _squarefree_char_p(f):
    p = f.ctx.characteristic
    fp = f.derivative()
    if fp.is_zero():
        return [(g, m * p) for g, m in _squarefree_char_p(_pth_root(f))]
    out = []
    c = poly_gcd(f, fp)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _squarefree_char_p(_pth_root(c)))
    out.sort(key=lambda gm: (gm[1], gm[0].sort_key()))
    return out


# -- factorization over finite fields -----------------------------------------


def _ddf(f):
    """Distinct-degree split of a monic squarefree f: list of (product, d)."""
    q = f.ctx.order
    out = []
    h = Poly.x(f.ctx)
    rem = f
    d = 0
    while rem.degree >= 2 * (d + 1):
        d += 1
        h = pow_mod(h, q, rem)
        g = poly_gcd(h - Poly.x(f.ctx), rem)
        if g.degree > 0:
            out.append((g, d))
            rem = rem // g
            h = h % rem
    if rem.degree > 0:
        out.append((rem, rem.degree))
    return out


def _random_poly(ctx, degree_bound, rng):
    return Poly(ctx, [ctx.from_code(rng.randrange(ctx.order))
                      for _ in range(degree_bound)])


def _edf(f, d, rng):
    """Equal-degree split: f monic squarefree, all factors of degree d."""
    if f.degree == d:
        return [f]
    ctx = f.ctx
    q = ctx.order
    while True:
        r = _random_poly(ctx, f.degree, rng)
        if r.degree < 1:
            continue
        if ctx.characteristic == 2:
            # trace map over F_2: r + r^2 + r^4 + ... splits the factors
            e = ctx.d * d
            t = Poly.zero(ctx)
            cur = r % f
            for _ in range(e):
                t = (t + cur) % f
                cur = (cur * cur) % f
        else:
            t = pow_mod(r, (q ** d - 1) // 2, f) - Poly.one(ctx)
        g = poly_gcd(t, f)
        if 0 < g.degree < f.degree:
            return sorted(_edf(g, d, rng) + _edf(f // g, d, rng),
                          key=Poly.sort_key)


def _factor_finite(f, rng):
    out = []
    for g, m in squarefree_decompose(f):
        for h, d in _ddf(g):
            for irr in _edf(h, d, rng):
                out.append((irr, m))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


# -- factorization over the rationals ------------------------------------------


def _to_int_primitive(f):
    """Monic-or-not rational poly -> (rational unit, primitive int coeff list)."""
    den = 1
    for c in f.coeffs:
        den = den * c.val.denominator // int_gcd(den, c.val.denominator)
    ints = [int(c.val * den) for c in f.coeffs]
    content = 0
    for c in ints:
        content = int_gcd(content, c)
    if ints[-1] < 0:
        content = -content
    ints = [c // content for c in ints]
    return Fraction(content, den), ints


def _zx_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _zx_divides(num, den):
    """Exact division in Z[X]; returns quotient or None."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return None
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1 - dn, -1, -1):
        lead = num[dn + k]
        if lead % den[dn]:
            return None
        c = lead // den[dn]
        quot[k] = c
        if c:
            for i, b in enumerate(den):
                num[i + k] -= c * b
    if any(num):
        return None
    return quot


def _primitive(ints):
    g = 0
    for c in ints:
        g = int_gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _hensel_lift(fz, factors_mod_p, p, k):
    """Lift monic factorization of fz/lc mod p to mod p^k (linear steps).

    factors_mod_p: monic, pairwise coprime Poly over F_p with product
    fz/lc mod p.  Returns lifted integer coefficient lists (symmetric reps).
    """
    fp = prime_field(p)
    # Bezout data: sigma_i * prod_{j != i} g_j == 1 mod g_i
    sigmas = []
    for i, gi in enumerate(factors_mod_p):
        rest = Poly.one(fp)
        for j, gj in enumerate(factors_mod_p):
            if j != i:
                rest = (rest * gj) % gi
        g, s, _ = poly_xgcd(rest, gi)
        assert g.is_one()
        sigmas.append(s % gi)

    lifted = [[c.val for c in g.coeffs] for g in factors_mod_p]
    lc_inv = pow(fz[-1] % p, -1, p)
    mod = p
    for _ in range(k - 1):
        new_mod = mod * p
        # monic image of fz at the next precision
        lc_inv = (lc_inv * (2 - fz[-1] * lc_inv)) % new_mod
        fhat = [(c * lc_inv) % new_mod for c in fz]
        prod = [1]
        for g in lifted:
            prod = [c % new_mod for c in _zx_mul(prod, g)]
        assert len(prod) == len(fhat)
        epoly = Poly.from_ints(fp, [((a - b) // mod) % p
                                    for a, b in zip(fhat, prod)])
        for idx, g in enumerate(lifted):
            gp = Poly.from_ints(fp, g)
            delta = (sigmas[idx] * epoly) % gp
            for i, dc in enumerate(delta.coeffs):
                if not dc.is_zero():
                    g[i] = (g[i] + mod * dc.val) % new_mod
        mod = new_mod
    half = mod // 2
    return [[(c + half) % mod - half for c in g] for g in lifted], mod


def _factor_squarefree_int(ints, rng):
    """Factor a primitive squarefree int polynomial into primitive irreducibles."""
    if len(ints) - 1 <= 1:
        return [ints]
    fp_choice = None
    p = 2
    while fp_choice is None:
        p = _next_prime(p)
        if ints[-1] % p == 0:
            continue
        fp = prime_field(p)
        fbar = Poly.from_ints(fp, ints)
        if poly_gcd(fbar, fbar.derivative()).degree == 0:
            fp_choice = (p, fbar.monic())
    p, fbar = fp_choice
    modular = [g for g, _ in _factor_finite(fbar, rng)]
    if len(modular) == 1:
        return [ints]

    n = len(ints) - 1
    height = max(abs(c) for c in ints)
    bound = (isqrt(n + 1) + 1) * (1 << n) * height * abs(ints[-1])
    k = 1
    pk = p
    while pk <= 2 * bound:
        pk *= p
        k += 1
    lifted, mod = _hensel_lift(ints, modular, p, k)

    result = []
    remaining = list(range(len(lifted)))
    current = list(ints)
    s = 1
    while 2 * s <= len(remaining):
        found = True
        while found:
            found = False
            for combo in _combinations(remaining, s):
                cand = [current[-1]]
                for idx in combo:
                    cand = [(c + mod // 2) % mod - mod // 2
                            for c in _zx_mul(cand, lifted[idx])]
                cand = _primitive(cand)
                quot = _zx_divides(current, cand)
                if quot is not None:
                    result.append(cand)
                    current = _primitive(quot)
                    remaining = [i for i in remaining if i not in combo]
                    found = True
                    break
            if 2 * s > len(remaining):
                break
        s += 1
    if len(current) - 1 > 0:
        result.append(_primitive(current))
    return result


def _combinations(items, s):
    from itertools import combinations
    return combinations(items, s)


def _next_prime(p):
    p += 1
    while not is_prime(p):
        p += 1
    return p


def _factor_rational(f, rng):
    if f.degree > RATIONAL_FACTOR_DEGREE_BOUND:
        raise DegreeBoundExceeded(
            f"rational factorization limited to degree {RATIONAL_FACTOR_DEGREE_BOUND}")
    out = []
    for g, m in squarefree_decompose(f):
        _, ints = _to_int_primitive(g)
        for part in _factor_squarefree_int(ints, rng):
            qpoly = Poly.from_ints(f.ctx, part).monic()
            out.append((qpoly, m))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def factor(f, seed=0):
    """Full factorization into monic irreducibles.

    Returns (unit, [(g, multiplicity), ...]) with f = unit * prod g^m.
    """
    if f.is_zero():
        raise ZeroPolynomial("factor of zero")
    unit = f.lc()
    if f.degree == 0:
        return unit, []
    rng = random.Random(seed)
    if f.ctx.kind == RATIONAL:
        return unit, _factor_rational(f, rng)
    return unit, _factor_finite(f, rng)


def is_irreducible(f, seed=0):
    if f.is_zero() or f.degree == 0:
        return False
    _, parts = factor(f, seed=seed)
    return len(parts) == 1 and parts[0][1] == 1


# -- binary forms ---------------------------------------------------------------


class BinaryForm:
    """Homogeneous polynomial sum_i c_i X0^i X1^(D-i) of fixed degree D."""

    __slots__ = ("ctx", "degree", "coeffs")

    def __init__(self, ctx, degree, coeffs):
        cs = tuple(coeffs)
        if len(cs) != degree + 1:
            raise InputError("coefficient vector length must be degree+1")
        self.ctx = ctx
        self.degree = degree
        self.coeffs = cs

    @classmethod
    def from_ints(cls, ctx, degree, ints):
        return cls(ctx, degree, [ctx.elem(c) for c in ints])

    @classmethod
    def homogenize(cls, poly, degree):
        """X1^(degree - deg poly) * poly(X0/X1) cleared of denominators."""
        if poly.degree > degree:
            raise InputError("degree too small to homogenize")
        return cls(poly.ctx, degree,
                   [poly.coeff(i) for i in range(degree + 1)])

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def dehomog_x1(self):
        """Substitute X1 = 1."""
        return Poly(self.ctx, list(self.coeffs))

    def eval(self, a, b):
        acc = self.ctx.zero
        for i, c in enumerate(self.coeffs):
            acc = acc + c * a ** i * b ** (self.degree - i)
        return acc

    def __mul__(self, other):
        zero = self.ctx.zero
        out = [zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(self.ctx, self.degree + other.degree, out)

    def __pow__(self, e):
        result = BinaryForm(self.ctx, 0, [self.ctx.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c):
        return BinaryForm(self.ctx, self.degree, [a * c for a in self.coeffs])

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.ctx == other.ctx
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.degree, self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms.append(f"({c.val})*X0^{i}*X1^{self.degree - i}")
        return "BinaryForm(" + (" + ".join(terms) or "0") + ")"

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))


def form_split(f):
    """Write f = X1^s * g with X1 not dividing g.

    Returns (s, g, C_f) where C_f is the coefficient of X0^(D-s) X1^s in f,
    equivalently the leading X0-coefficient of g.
    """
    if f.is_zero():
        raise ZeroForm("form_split of the zero form")
    i_max = max(i for i, c in enumerate(f.coeffs) if not c.is_zero())
    s = f.degree - i_max
    g = BinaryForm(f.ctx, i_max, f.coeffs[: i_max + 1])
    return s, g, f.coeffs[i_max]


class PointOnP1:
    """A closed point of P^1: an irreducible binary form, stored via its
    monic dehomogenization (or the flag for the point at infinity, X1)."""

    __slots__ = ("ctx", "qpoly", "is_infinity", "degree")

    def __init__(self, ctx, qpoly=None, is_infinity=False):
        self.ctx = ctx
        self.is_infinity = is_infinity
        if is_infinity:
            self.qpoly = None
            self.degree = 1
        else:
            if qpoly is None or qpoly.degree < 1:
                raise InputError("point needs a nonconstant polynomial")
            self.qpoly = qpoly.monic()
            self.degree = qpoly.degree

    @classmethod
    def infinity(cls, ctx):
        return cls(ctx, is_infinity=True)

    @classmethod
    def rational(cls, ctx, u, v):
        """The point (u : v) of P^1(k)."""
        if u.is_zero() and v.is_zero():
            raise InputError("(0,0) is not a point of P^1")
        if v.is_zero():
            return cls.infinity(ctx)
        # zero of v*X0 - u*X1, i.e. x = u/v in the X1 = 1 chart
        return cls(ctx, Poly(ctx, [-(u / v), ctx.one]))

    def form(self):
        if self.is_infinity:
            return BinaryForm(self.ctx, 1, [self.ctx.one, self.ctx.zero])
        return BinaryForm.homogenize(self.qpoly, self.qpoly.degree)

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.form().coeffs))

    def __eq__(self, other):
        return (isinstance(other, PointOnP1) and self.ctx == other.ctx
                and self.is_infinity == other.is_infinity
                and self.qpoly == other.qpoly)

    def __hash__(self):
        return hash((self.ctx, self.is_infinity, self.qpoly))

    def __repr__(self):
        if self.is_infinity:
            return "PointOnP1(X1)"
        return f"PointOnP1({self.qpoly!r})"


class SchemeS:
    """A zero-dimensional subscheme of P^1: distinct points with multiplicities
    plus the unit constant relating the product of point forms to the form it
    came from."""

    __slots__ = ("ctx", "points", "unit")

    def __init__(self, ctx, points, unit):
        pts = sorted(points, key=lambda pm: pm[0].sort_key())
        seen = set()
        for pt, m in pts:
            if m < 1:
                raise InputError("multiplicities must be >= 1")
            if pt in seen:
                raise InputError("points must be pairwise distinct")
            seen.add(pt)
        self.ctx = ctx
        self.points = tuple(pts)
        self.unit = unit

    @property
    def total_degree(self):
        return sum(pt.degree * m for pt, m in self.points)

    def infinity_multiplicity(self):
        for pt, m in self.points:
            if pt.is_infinity:
                return m
        return 0

    def form(self):
        acc = BinaryForm(self.ctx, 0, [self.unit])
        for pt, m in self.points:
            acc = acc * pt.form() ** m
        return acc

    def key(self):
        return tuple((pt.sort_key(), m) for pt, m in self.points)

    def same_points(self, other):
        return self.key() == other.key()

    def __eq__(self, other):
        return (isinstance(other, SchemeS) and self.ctx == other.ctx
                and self.points == other.points and self.unit == other.unit)

    def __hash__(self):
        return hash((self.ctx, self.points, self.unit))

    def __repr__(self):
        return f"SchemeS({list(self.points)!r}, unit={self.unit.val})"


def scheme_of(f, seed=0):
    """Factor a nonzero binary form into its discriminant subscheme."""
    if f.is_zero():
        raise ZeroForm("scheme_of the zero form")
    s, g, c_f = form_split(f)
    p = g.dehomog_x1()
    unit, parts = factor(p, seed=seed)
    assert unit == c_f
    points = [(PointOnP1(f.ctx, qpoly=q), m) for q, m in parts]
    if s > 0:
        points.append((PointOnP1.infinity(f.ctx), s))
    return SchemeS(f.ctx, points, unit)


# -- quotient rings k[X]/(m) -----------------------------------------------------


class PolyQuotient:
    """The ring k[X]/(modulus) with modulus monic of degree >= 1.

    A field when the modulus is irreducible; the local rings k[X]/(q^N) used
    for truncated power-series arithmetic are the other instances.
    """

    __slots__ = ("ctx", "modulus")

    def __init__(self, ctx, modulus):
        if modulus.is_zero() or modulus.degree < 1:
            raise InputError("modulus must have degree >= 1")
        self.ctx = ctx
        self.modulus = modulus.monic()

    @property
    def dim(self):
        return self.modulus.degree

    def elem(self, poly):
        return QuotElem(self, poly % self.modulus)

    def from_ints(self, ints):
        return self.elem(Poly.from_ints(self.ctx, ints))

    @property
    def zero(self):
        return QuotElem(self, Poly.zero(self.ctx))

    @property
    def one(self):
        return QuotElem(self, Poly.one(self.ctx))

    @property
    def gen(self):
        return self.elem(Poly.x(self.ctx))

    @property
    def order(self):
        return self.ctx.order ** self.dim

    def elements(self):
        """All elements in code order (finite base field only)."""
        q = self.ctx.order
        for code in range(q ** self.dim):
            c = code
            coeffs = []
            for _ in range(self.dim):
                coeffs.append(self.ctx.from_code(c % q))
                c //= q
            yield QuotElem(self, Poly(self.ctx, coeffs))

    def elem_code(self, a):
        q = self.ctx.order
        code = 0
        for i in range(self.dim - 1, -1, -1):
            code = code * q + self.ctx.code_of(a.poly.coeff(i))
        return code

    def __eq__(self, other):
        return (isinstance(other, PolyQuotient) and self.ctx == other.ctx
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.ctx, self.modulus))

    def __repr__(self):
        return f"PolyQuotient({self.modulus!r})"


class QuotElem:
    __slots__ = ("ring", "poly")

    def __init__(self, ring, poly):
        self.ring = ring
        self.poly = poly

    def is_zero(self):
        return self.poly.is_zero()

    def is_one(self):
        return self.poly.is_one()

    def __eq__(self, other):
        return (isinstance(other, QuotElem) and self.ring == other.ring
                and self.poly == other.poly)

    def __hash__(self):
        return hash((self.ring, self.poly))

    def __repr__(self):
        return f"QuotElem({self.poly!r} mod {self.ring.modulus!r})"

    def __add__(self, other):
        return QuotElem(self.ring, self.poly + other.poly)

    def __sub__(self, other):
        return QuotElem(self.ring, self.poly - other.poly)

    def __neg__(self):
        return QuotElem(self.ring, -self.poly)

    def __mul__(self, other):
        return QuotElem(self.ring, (self.poly * other.poly) % self.ring.modulus)

    def inv(self):
        g, s, _ = poly_xgcd(self.poly, self.ring.modulus)
        if not g.is_one():
            raise NonUnit("element is not a unit in the quotient ring")
        return QuotElem(self.ring, s % self.ring.modulus)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sort_key(self):
        return self.poly.sort_key()


def crt(pairs):
    """Chinese remainder for pairwise coprime monic moduli.

    pairs: list of (residue Poly, modulus Poly).  Returns the unique Poly of
    degree < sum(deg) congruent to each residue.
    """
    r, m = pairs[0]
    r = r % m
    for r2, m2 in pairs[1:]:
        g, s, _ = poly_xgcd(m, m2)
        if not g.is_one():
            raise InputError("crt moduli must be coprime")
        delta = (r2 - r) % m2
        r = r + m * ((s * delta) % m2)
        m = m * m2
        r = r % m
    return r


# -- square roots in quotient rings ---------------------------------------------


def quotient_field_sqrt(ring, a):
    """Square root in the field k[X]/(q), q irreducible over a finite k.

    Returns one root or None when a is a nonsquare.  Deterministic: the
    Tonelli-Shanks nonresidue is the first one in element-code order.
    """
    ctx = ring.ctx
    if not ctx.is_finite:
        raise Unsupported("quotient_field_sqrt needs a finite base field")
    order = ring.order
    if a.is_zero():
        return ring.zero
    if ctx.characteristic == 2:
        # Frobenius is bijective: sqrt(a) = a^(order/2)
        return a ** (order // 2)
    if not (a ** ((order - 1) // 2)).is_one():
        return None
    if order % 4 == 3:
        return a ** ((order + 1) // 4)
    # Tonelli-Shanks
    s, m = order - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    z = None
    for cand in ring.elements():
        if not cand.is_zero() and not (cand ** ((order - 1) // 2)).is_one():
            z = cand
            break
    c = z ** s
    t = a ** s
    r = a ** ((s + 1) // 2)
    while not t.is_one():
        i, tt = 0, t
        while not tt.is_one():
            tt = tt * tt
            i += 1
        b = c ** (1 << (m - i - 1))
        m = i
        c = b * b
        t = t * c
        r = r * b
    return r


def local_unit_sqrts(ring, pi, a):
    """All square roots of a unit a (QuotElem) in k[X]/(pi^N), k finite of
    odd characteristic.

    Hensel-lifts a residue-field root; the local ring has exactly the two
    roots +-b when the residue class is a square, none otherwise.
    """
    ctx = ring.ctx
    kappa = PolyQuotient(ctx, pi)
    b0 = quotient_field_sqrt(kappa, kappa.elem(a.poly))
    if b0 is None or b0.is_zero():
        return []
    b = ring.elem(b0.poly)
    inv2 = ring.from_ints([2]).inv()
    for _ in range(2 * ring.dim + 4):
        if b * b == a:
            break
        b = (b + a * b.inv()) * inv2
    if b * b != a:
        return []
    return [b, -b]


def char2_unit_sqrts(ring, a, cap=1 << 16):
    """All square roots of a in k[X]/(m) over a finite field of char 2.

    The squaring map is F_2-linear, so this is a linear solve; the solution
    set is a coset of the kernel.  Raises BudgetExceeded when the set has
    more than `cap` elements.
    """
    ctx = ring.ctx
    e, dim = ctx.d, ring.dim
    nbits = e * dim

    def to_bits(elem):
        bits = 0
        pos = 0
        for i in range(dim):
            code = ctx.code_of(elem.poly.coeff(i))
            for t in range(e):
                if (code >> t) & 1:
                    bits |= 1 << pos
                pos += 1
        return bits

    def from_bits(bits):
        coeffs = []
        pos = 0
        for i in range(dim):
            code = 0
            for t in range(e):
                if (bits >> pos) & 1:
                    code |= 1 << t
                pos += 1
            coeffs.append(ctx.from_code(code))
        return ring.elem(Poly(ctx, coeffs))

    # columns of the squaring map
    cols = []
    for j in range(nbits):
        bj = from_bits(1 << j)
        cols.append(to_bits(bj * bj))
    target = to_bits(a)

    # Gaussian elimination on the transposed system (rows as bit masks)
    rows = []
    rhs = []
    for i in range(nbits):
        mask = 0
        for j in range(nbits):
            if (cols[j] >> i) & 1:
                mask |= 1 << j
        rows.append(mask)
        rhs.append((target >> i) & 1)
    pivots = {}
    for i in range(nbits):
        row, b = rows[i], rhs[i]
        for col, (prow, pb) in pivots.items():
            if (row >> col) & 1:
                row ^= prow
                b ^= pb
        if row == 0:
            if b:
                return []
            continue
        col = (row & -row).bit_length() - 1
        pivots[col] = (row, b)
    # back-substitute a particular solution; free columns = kernel directions
    free_cols = [j for j in range(nbits) if j not in pivots]
    if 1 << len(free_cols) > cap:
        raise BudgetExceeded("too many square roots to enumerate")

    def solve(free_assign):
        x = 0
        for j, bit in zip(free_cols, free_assign):
            if bit:
                x |= 1 << j
        for col in sorted(pivots, reverse=True):
            prow, pb = pivots[col]
            val = pb
            rest = prow & ~(1 << col)
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if (x >> j) & 1:
                    val ^= 1
                rest ^= low
            if val:
                x |= 1 << col
        return x

    roots = []
    from itertools import product
    for assign in product((0, 1), repeat=len(free_cols)):
        x = solve(assign)
        elem = from_bits(x)
        if elem * elem == a:
            roots.append(elem)
    return roots


def all_polys(ctx, degree_bound):
    """All polynomials of degree < degree_bound in coefficient-code order."""
    q = ctx.order
    for code in range(q ** degree_bound):
        c = code
        coeffs = []
        for _ in range(degree_bound):
            coeffs.append(ctx.from_code(c % q))
            c //= q
        yield Poly(ctx, coeffs)
