"""Exact coefficient fields: the rationals, prime fields F_p, extensions F_{p^d}.

A FieldCtx describes the field; FieldElem wraps a payload (Fraction, residue,
or coefficient tuple) together with its context.  Everything is immutable and
hashable, so values can be shared freely across threads.

Extension fields are presented as F_p[T]/(modulus) with the modulus monic and
irreducible, constant term first.  The default modulus for a requested degree
is the lexicographically smallest monic irreducible (ordered on the coefficient
tuple c_0..c_{d-1}), so contexts are reproducible.
"""

from fractions import Fraction
from itertools import zip_longest

from .errors import InputError, Unsupported, WrongCharacteristic, ZeroInput, ZeroInversion

RATIONAL = "rational"
PRIME = "prime"
EXT = "ext"

SQUARE = "square"
NONSQUARE = "nonsquare"


def is_prime(n):
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- minimal F_p[T] helpers (dense int lists, constant term first) -----------
# polyring builds the general machinery on top of FieldCtx; these few local
# routines avoid a circular import and are only used for extension moduli.


def _zp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _zp_trim(out)


def _zp_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] % p
        if c:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - c * m[i]) % p
        a.pop()
    return _zp_trim(a)


def _zp_powmod(a, e, m, p):
    result = [1]
    base = _zp_mod(a, m, p)
    while e:
        if e & 1:
            result = _zp_mod(_zp_mul(result, base, p), m, p)
        base = _zp_mod(_zp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _zp_gcd(a, b, p):
    a, b = _zp_trim(list(a)), _zp_trim(list(b))
    while b:
        # reduce a mod b (b made monic on the fly)
        inv_lc = pow(b[-1], p - 2, p)
        bm = [(c * inv_lc) % p for c in b]
        a = _zp_mod(a, bm, p)
        a, b = b, a
    return a


def _zp_is_irreducible(m, p):
    """Rabin test for a monic polynomial over F_p."""
    d = len(m) - 1
    if d < 1:
        return False
    x = [0, 1]
    # T^(p^d) == T mod m
    t = _zp_powmod(x, p ** d, m, p)
    if _zp_trim([(ti - xi) % p for ti, xi in zip_longest(t, x, fillvalue=0)]):
        return False
    dd = d
    factors = set()
    q = 2
    while q * q <= dd:
        if dd % q == 0:
            factors.add(q)
            while dd % q == 0:
                dd //= q
        q += 1
    if dd > 1:
        factors.add(dd)
    for ell in factors:
        t = _zp_powmod(x, p ** (d // ell), m, p)
        diff = [(a - b) % p for a, b in zip_longest(t, x, fillvalue=0)]
        g = _zp_gcd(diff, m, p)
        if len(g) - 1 != 0:
            return False
    return True


def default_modulus(p, d):
    """Lexicographically smallest monic irreducible of degree d over F_p."""
    if d == 1:
        return (0, 1)
    # scan coefficient tuples (c_0,...,c_{d-1}) in lexicographic order
    coeffs = [0] * d
    while True:
        m = coeffs + [1]
        if _zp_is_irreducible(m, p):
            return tuple(m)
        i = d - 1
        while i >= 0 and coeffs[i] == p - 1:
            coeffs[i] = 0
            i -= 1
        if i < 0:
            raise InputError(f"no irreducible of degree {d} over F_{p}")
        coeffs[i] += 1


class FieldCtx:
    """Description of an exact field with element arithmetic.

    kind is one of "rational", "prime", "ext".  Immutable.
    """

    __slots__ = ("kind", "p", "d", "modulus", "characteristic", "_hash")

    def __init__(self, kind, p=0, d=1, modulus=None):
        if kind == RATIONAL:
            p, d, modulus = 0, 1, None
        elif kind == PRIME:
            if not is_prime(p):
                raise InputError(f"{p} is not prime")
            d, modulus = 1, None
        elif kind == EXT:
            if not is_prime(p):
                raise InputError(f"{p} is not prime")
            if d < 2:
                raise InputError("extension degree must be >= 2")
            if modulus is None:
                modulus = default_modulus(p, d)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] != 1:
                raise InputError("modulus must be monic of degree d")
            if not _zp_is_irreducible(list(modulus), p):
                raise InputError("modulus is reducible over F_p")
        else:
            raise InputError(f"unknown field kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "characteristic", 0 if kind == RATIONAL else p)
        object.__setattr__(self, "_hash", hash((kind, p, d, modulus)))

    def __setattr__(self, *a):
        raise AttributeError("FieldCtx is immutable")

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.kind == other.kind
                and self.p == other.p and self.d == other.d
                and self.modulus == other.modulus)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FieldCtx({self.descriptor()!r})"

    # -- basics --------------------------------------------------------------

    @property
    def is_finite(self):
        return self.kind != RATIONAL

    @property
    def order(self):
        if not self.is_finite:
            raise Unsupported("infinite field has no order")
        return self.p ** self.d

    @property
    def zero(self):
        return FieldElem(self, self._reduce(0))

    @property
    def one(self):
        return FieldElem(self, self._reduce(1))

    def _reduce(self, raw):
        """Normalize a raw payload (int / Fraction / tuple) for this field."""
        if self.kind == RATIONAL:
            return raw if isinstance(raw, Fraction) else Fraction(raw)
        if self.kind == PRIME:
            return int(raw) % self.p
        if isinstance(raw, (int, Fraction)):
            if isinstance(raw, Fraction):
                if raw.denominator % self.p == 0:
                    raise ZeroInversion("denominator vanishes in F_p")
                raw = raw.numerator * pow(raw.denominator % self.p, self.p - 2, self.p)
            vec = [int(raw) % self.p] + [0] * (self.d - 1)
            return tuple(vec)
        vec = list(_zp_mod([c % self.p for c in raw], list(self.modulus), self.p))
        vec += [0] * (self.d - len(vec))
        return tuple(vec)

    def elem(self, raw):
        """Build an element from an int, Fraction, or coefficient sequence."""
        return FieldElem(self, self._reduce(raw))

    def __call__(self, raw):
        return self.elem(raw)

    # -- finite-field element codes (dense 0..q-1), used by enumeration ------

    def code_of(self, a):
        if self.kind == PRIME:
            return a.val
        if self.kind == EXT:
            code = 0
            for c in reversed(a.val):
                code = code * self.p + c
            return code
        raise Unsupported("codes exist only for finite fields")

    def from_code(self, code):
        if self.kind == PRIME:
            return FieldElem(self, code % self.p)
        if self.kind == EXT:
            vec = []
            for _ in range(self.d):
                vec.append(code % self.p)
                code //= self.p
            return FieldElem(self, tuple(vec))
        raise Unsupported("codes exist only for finite fields")

    def elements(self):
        """All field elements in code order (finite fields only)."""
        for code in range(self.order):
            yield self.from_code(code)

    def random_elem(self, rng):
        if self.is_finite:
            return self.from_code(rng.randrange(self.order))
        return self.elem(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))

    def descriptor(self):
        if self.kind == RATIONAL:
            return "q"
        if self.kind == PRIME:
            return f"fp:{self.p}"
        body = ",".join(str(c) for c in self.modulus)
        if self.modulus == default_modulus(self.p, self.d):
            return f"fq:{self.p}:{self.d}"
        return f"fq:{self.p}:{self.d}:{body}"


def rational_field():
    return FieldCtx(RATIONAL)


def prime_field(p):
    return FieldCtx(PRIME, p)


def extension_field(p, d, modulus=None):
    if d == 1:
        return FieldCtx(PRIME, p)
    return FieldCtx(EXT, p, d, modulus)


def parse_field(descr):
    """Parse `q`, `fp:<p>`, `fq:<p>:<d>`, `fq:<p>:<d>:<c0,...,1>`."""
    parts = descr.strip().split(":")
    try:
        if parts[0] == "q" and len(parts) == 1:
            return rational_field()
        if parts[0] == "fp" and len(parts) == 2:
            return prime_field(int(parts[1]))
        if parts[0] == "fq" and len(parts) in (3, 4):
            p, d = int(parts[1]), int(parts[2])
            modulus = None
            if len(parts) == 4:
                modulus = tuple(int(c) for c in parts[3].split(","))
            return extension_field(p, d, modulus)
    except ValueError as exc:
        raise InputError(f"bad field descriptor {descr!r}: {exc}") from None
    raise InputError(f"bad field descriptor {descr!r}")


class FieldElem:
    """An element of a FieldCtx.  Payload is fully reduced and hashable."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx, val):
        self.ctx = ctx
        self.val = val

    # -- predicates ------------------------------------------------------

    def is_zero(self):
        if self.ctx.kind == EXT:
            return all(c == 0 for c in self.val)
        return self.val == 0

    def is_one(self):
        return self == self.ctx.one

    def sort_key(self):
        """Total order used for canonical point/element ordering."""
        return self.val

    def __eq__(self, other):
        return (isinstance(other, FieldElem) and self.ctx == other.ctx
                and self.val == other.val)

    def __hash__(self):
        return hash((self.ctx, self.val))

    def __repr__(self):
        return f"{self.ctx.descriptor()}({self.val})"

    def _check(self, other):
        if not isinstance(other, FieldElem) or other.ctx != self.ctx:
            raise InputError("field mismatch in arithmetic")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        k = self.ctx.kind
        if k == RATIONAL:
            return FieldElem(self.ctx, self.val + other.val)
        if k == PRIME:
            return FieldElem(self.ctx, (self.val + other.val) % self.ctx.p)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.val, other.val)))

    def __sub__(self, other):
        self._check(other)
        k = self.ctx.kind
        if k == RATIONAL:
            return FieldElem(self.ctx, self.val - other.val)
        if k == PRIME:
            return FieldElem(self.ctx, (self.val - other.val) % self.ctx.p)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a - b) % p for a, b in zip(self.val, other.val)))

    def __neg__(self):
        k = self.ctx.kind
        if k == RATIONAL:
            return FieldElem(self.ctx, -self.val)
        if k == PRIME:
            return FieldElem(self.ctx, (-self.val) % self.ctx.p)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.val))

    def __mul__(self, other):
        self._check(other)
        k = self.ctx.kind
        if k == RATIONAL:
            return FieldElem(self.ctx, self.val * other.val)
        if k == PRIME:
            return FieldElem(self.ctx, (self.val * other.val) % self.ctx.p)
        ctx = self.ctx
        prod = _zp_mul(list(self.val), list(other.val), ctx.p)
        vec = list(_zp_mod(prod, list(ctx.modulus), ctx.p))
        vec += [0] * (ctx.d - len(vec))
        return FieldElem(ctx, tuple(vec))

    def inv(self):
        if self.is_zero():
            raise ZeroInversion("inverse of zero")
        k = self.ctx.kind
        if k == RATIONAL:
            return FieldElem(self.ctx, 1 / self.val)
        if k == PRIME:
            return FieldElem(self.ctx, pow(self.val, self.ctx.p - 2, self.ctx.p))
        # a^(q-2) in F_q
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def field_inv(a):
    """Multiplicative inverse; raises ZeroInversion on zero."""
    return a.inv()


def square_class(a):
    """Classify a nonzero element of a finite field of odd characteristic.

    Returns "square" or "nonsquare", decided by the Euler criterion
    a^((q-1)/2).
    """
    ctx = a.ctx
    if ctx.characteristic == 0 or ctx.characteristic == 2:
        raise WrongCharacteristic("square_class needs finite odd characteristic")
    if a.is_zero():
        raise ZeroInput("square_class of zero")
    return SQUARE if (a ** ((ctx.order - 1) // 2)).is_one() else NONSQUARE


def smallest_nonresidue(ctx):
    """Deterministically chosen smallest nonsquare of a finite odd-char field."""
    for a in ctx.elements():
        if not a.is_zero() and square_class(a) == NONSQUARE:
            return a
    raise Unsupported("no nonresidue found")  # unreachable for q > 1 odd


def ext_norm(a):
    """Norm F_{p^d} -> F_p: determinant of multiplication-by-a over F_p.

    Computed as a^((p^d-1)/(p-1)) for nonzero a; the result always lies in
    the prime subfield and is returned as an element of F_p.
    """
    ctx = a.ctx
    if ctx.kind == PRIME:
        return a
    if ctx.kind != EXT:
        raise Unsupported("ext_norm needs a finite field context")
    base = prime_field(ctx.p)
    if a.is_zero():
        return base.zero
    e = (ctx.order - 1) // (ctx.p - 1)
    nrm = a ** e
    assert all(c == 0 for c in nrm.val[1:])
    return base.elem(nrm.val[0])


def mult_matrix(a):
    """Matrix of multiplication-by-a on F_{p^d} over F_p (column convention).

    Exposed so the norm can be cross-checked against an independent
    determinant computation.
    """
    ctx = a.ctx
    if ctx.kind != EXT:
        raise Unsupported("mult_matrix needs an extension context")
    cols = []
    for i in range(ctx.d):
        basis_vec = tuple(1 if j == i else 0 for j in range(ctx.d))
        cols.append((a * FieldElem(ctx, basis_vec)).val)
    return [[cols[j][i] for j in range(ctx.d)] for i in range(ctx.d)]
