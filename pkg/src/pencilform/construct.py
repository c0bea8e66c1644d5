"""Explicit symmetric pencils with prescribed determinant or module type.

The core construction takes a polynomial f of degree r whose X^r coefficient
is (-1)^((r-1)r/2) and produces the symmetric pair with entries
theta_{r-1}(alpha^(i+j)) and -theta_{r-1}(alpha^(i+j+1)), where theta reads
the X^(r-1) coefficient in k[X]/(f); then det(X*M0 + M1) = f and
-M0^{-1} M1 is the companion matrix of the monic normalization of f.  The
homogeneous variant splits off X1^s with an antidiagonal block.
"""

from .errors import (
    CoefficientConventionViolated,
    InputError,
    LeadingCoefficientMismatch,
    NonRationalPoint,
    ZeroPoint,
)
from .pencil import Pencil
from .poly import BinaryForm, Poly, form_split


def _sign(ctx, exponent):
    return ctx.one if exponent % 2 == 0 else -ctx.one


def lemma_a1_pair(f):
    """Symmetric pair of size r = deg f with det(X*M0 + M1) = f(X).

    Requires the coefficient of X^r to be exactly (-1)^((r-1)r/2).
    """
    ctx = f.ctx
    r = f.degree
    if r < 1:
        raise InputError("need degree >= 1")
    if f.lc() != _sign(ctx, (r - 1) * r // 2):
        raise LeadingCoefficientMismatch(
            "leading coefficient must be (-1)^((r-1)r/2)")
    # powers of alpha = X in k[X]/(f), up to alpha^(2r-1)
    powers = [Poly.one(ctx)]
    x = Poly.x(ctx)
    for _ in range(2 * r - 1):
        powers.append((powers[-1] * x) % f)
    theta = [p.coeff(r - 1) for p in powers]
    M0 = [[theta[i + j] for j in range(r)] for i in range(r)]
    M1 = [[-theta[i + j + 1] for j in range(r)] for i in range(r)]
    return Pencil(ctx, M0, M1)


def _antidiag(ctx, size, value):
    return [[value if i + j == size - 1 else ctx.zero for j in range(size)]
            for i in range(size)]


def _sub_antidiag(ctx, size, value):
    # ones one step below the antidiagonal; row 0 and column 0 are zero
    return [[value if i + j == size else ctx.zero for j in range(size)]
            for i in range(size)]


def _direct_sum(ctx, pairs):
    total = sum(p.size for p in pairs)
    M0 = [[ctx.zero for _ in range(total)] for _ in range(total)]
    M1 = [[ctx.zero for _ in range(total)] for _ in range(total)]
    off = 0
    for p in pairs:
        for i in range(p.size):
            for j in range(p.size):
                M0[off + i][off + j] = p.M0[i][j]
                M1[off + i][off + j] = p.M1[i][j]
        off += p.size
    return Pencil(ctx, M0, M1)


def lemma_a2_pair(f):
    """Symmetric pair with det(X0*M0 + X1*M1) = f for a binary form f.

    Writing f = X1^s * g, the coefficient of X0^(r-s) in g must equal
    (-1)^((r-1)r/2) where r = deg f.  The output is free: the rank at every
    geometric point is at least r-1.
    """
    ctx = f.ctx
    r = f.degree
    s, g, c_g = form_split(f)
    if c_g != _sign(ctx, (r - 1) * r // 2):
        raise CoefficientConventionViolated(
            "coefficient of X0^(r-s) in g must be (-1)^((r-1)r/2)")
    blocks = []
    if s > 0:
        n0 = _sub_antidiag(ctx, s, ctx.one)
        n1 = _antidiag(ctx, s, _sign(ctx, r - s))
        blocks.append(Pencil(ctx, n0, n1))
    if r - s > 0:
        sign = _sign(ctx, (r - s - 1) * (r - s) // 2 + (r - 1) * r // 2)
        ghat = g.dehomog_x1().scale(sign)
        blocks.append(lemma_a1_pair(ghat))
    return _direct_sum(ctx, blocks)


def delta_lambda_block(e, point):
    """The Segre block at a rational point (u : v): disc is exactly
    (-1)^((e-1)e/2) (v X0 - u X1)^e, the module is free with partition [e].

    For u != 0 this is the pair (v*Delta_e + Lambda_e, -u*Delta_e).  At
    u = 0 that pair degenerates (its second matrix vanishes and the module
    splits as e rank-one pieces), so the block is replaced by its image
    under the shear X1 -> X0 + X1, which keeps the discriminant and fixes
    the module type.
    """
    u, v = point
    ctx = u.ctx
    if e < 1:
        raise InputError("block size must be >= 1")
    if u.is_zero() and v.is_zero():
        raise ZeroPoint("(0,0) is not a point of P^1")
    if u.is_zero() and e > 1:
        delta = _antidiag(ctx, e, v)
        lam = _sub_antidiag(ctx, e, v)
        m0 = [[delta[i][j] + lam[i][j] for j in range(e)] for i in range(e)]
        return Pencil(ctx, m0, lam)
    delta = _antidiag(ctx, e, ctx.one)
    lam = _sub_antidiag(ctx, e, ctx.one)
    m0 = [[v * delta[i][j] + lam[i][j] for j in range(e)] for i in range(e)]
    m1 = [[-u * delta[i][j] for j in range(e)] for i in range(e)]
    return Pencil(ctx, m0, m1)


class SegreSpec:
    """Points with partitions.  Each entry's point is either a rational
    (u, v) coordinate pair or a PointOnP1 (possibly of higher degree)."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx, entries):
        norm = []
        seen = set()
        for ptspec, part in entries:
            if isinstance(ptspec, tuple):
                u, v = ptspec
                if u.is_zero() and v.is_zero():
                    raise ZeroPoint("(0,0) is not a point of P^1")
                # normalize projective coordinates: v = 1, or (1, 0)
                if v.is_zero():
                    u, v = ctx.one, ctx.zero
                    key = ("inf",)
                else:
                    u, v = u / v, ctx.one
                    key = ("fin", u.sort_key())
                ptspec = (u, v)
            else:
                key = ("pt", ptspec.sort_key())
            if key in seen:
                raise InputError("points must be pairwise distinct")
            seen.add(key)
            norm.append((ptspec, tuple(sorted(part, reverse=True))))
        self.ctx = ctx
        self.entries = tuple(norm)

    @property
    def total_degree(self):
        deg = 0
        for ptspec, part in self.entries:
            d = 1 if isinstance(ptspec, tuple) else ptspec.degree
            deg += d * sum(part)
        return deg


def segre_pair(spec):
    """Block direct sum of Segre blocks realizing the given point/partition
    data; the module type of the output is exactly the spec.  Rational
    points only (higher-degree points go through realize_pair)."""
    blocks = []
    for ptspec, part in spec.entries:
        if not isinstance(ptspec, tuple):
            if ptspec.degree > 1:
                raise NonRationalPoint(
                    "segre_pair takes rational points; use realize_pair")
            if ptspec.is_infinity:
                ptspec = (spec.ctx.one, spec.ctx.zero)
            else:
                ptspec = (-ptspec.qpoly.coeff(0), spec.ctx.one)
        for e in part:
            blocks.append(delta_lambda_block(e, ptspec))
    if not blocks:
        raise InputError("empty Segre data")
    return _direct_sum(spec.ctx, blocks)


def realize_pair(mtype):
    """A symmetric pencil whose module type is the given one.

    Each part e at a point p becomes a free block with determinant a unit
    times p(X0,X1)^e, built through the homogeneous construction with the
    sign convention arranged by a global unit scaling.  Only the GL-orbit of
    the output is canonical.
    """
    ctx = mtype.ctx
    blocks = []
    for pt, part in mtype.entries:
        if pt.degree == 1 and not pt.is_infinity:
            # rational point: cheap Segre blocks
            u = -pt.qpoly.coeff(0)
            for e in part:
                blocks.append(delta_lambda_block(e, (u, ctx.one)))
            continue
        pform = pt.form()
        for e in part:
            db = pt.degree * e
            target = pform ** e
            sign = _sign(ctx, (db - 1) * db // 2)
            _, _, c_g = form_split(target)
            blocks.append(lemma_a2_pair(target.scale(sign * c_g.inv())))
    if not blocks:
        raise InputError("empty module type")
    return _direct_sum(ctx, blocks)
