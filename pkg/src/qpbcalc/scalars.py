"""Exact coefficient field: rational functions over Q in named formal parameters.

A Scalar is num/den where num is a Laurent polynomial (integer exponents,
possibly negative, so invertible parameters like q, q^-1 need no relation)
and den is an ordinary polynomial in canonical form: primitive, no monomial
factor, positive leading coefficient, gcd(num, den) = 1.  Structural equality
is mathematical equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class ScalarError(Exception):
    pass


class DivisionByZeroError(ScalarError):
    pass


@dataclass(frozen=True)
class Parameter:
    """A named formal parameter of the coefficient field."""

    name: str
    invertible: bool = True


# ---------------------------------------------------------------------------
# raw polynomial helpers: dict[tuple[int, ...] -> Fraction], zero coeffs absent
# ---------------------------------------------------------------------------


def _padd(f, g):
    h = dict(f)
    for m, c in g.items():
        c2 = h.get(m, 0) + c
        if c2:
            h[m] = c2
        else:
            h.pop(m, None)
    return h


def _pneg(f):
    return {m: -c for m, c in f.items()}


def _pmul(f, g):
    h = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            c = h.get(m, 0) + c1 * c2
            if c:
                h[m] = c
            else:
                h.pop(m, None)
    return h


def _pscale(f, c):
    if not c:
        return {}
    return {m: a * c for m, a in f.items()}


def _lead(f):
    """Lex-largest monomial and its coefficient."""
    m = max(f)
    return m, f[m]


def _content(f):
    """Positive Fraction c with f/c having coprime integer coefficients."""
    num = 0
    den = 1
    for c in f.values():
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den)


def _min_exps(f, nvars):
    mins = [0] * nvars
    first = True
    for m in f:
        if first:
            mins = list(m)
            first = False
        else:
            mins = [min(a, b) for a, b in zip(mins, m)]
    return tuple(mins)


def _shift(f, delta):
    return {tuple(a + d for a, d in zip(m, delta)): c for m, c in f.items()}


def _degree_in(f, i):
    return max((m[i] for m in f), default=0)


def _coeffs_in(f, i):
    """Split f as a univariate poly in variable i with dict coefficients."""
    out = {}
    for m, c in f.items():
        key = m[i]
        rest = m[:i] + (0,) + m[i + 1:]
        slot = out.setdefault(key, {})
        c2 = slot.get(rest, 0) + c
        if c2:
            slot[rest] = c2
        else:
            slot.pop(rest, None)
    return {k: v for k, v in out.items() if v}


def _from_coeffs(coeffs, i):
    f = {}
    for k, slot in coeffs.items():
        for rest, c in slot.items():
            m = rest[:i] + (k,) + rest[i + 1:]
            f[m] = f.get(m, 0) + c
    return {m: c for m, c in f.items() if c}


def _pdivexact(f, g):
    """Exact division of ordinary polynomials; raises if not divisible."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return {}
    q = {}
    r = dict(f)
    gm, gc = _lead(g)
    while r:
        rm, rc = _lead(r)
        m = tuple(a - b for a, b in zip(rm, gm))
        if any(e < 0 for e in m):
            raise ScalarError("inexact polynomial division")
        c = rc / gc
        q[m] = q.get(m, 0) + c
        r = _padd(r, _pneg(_pmul({m: c}, g)))
    return q


def _gcd_univariate(f, g, i):
    """Euclid in variable i; inputs univariate in i over Q."""
    a, b = dict(f), dict(g)
    while b:
        # make b monic, reduce a mod b
        bm, bc = _lead(b)
        while a and _lead(a)[0][i] >= bm[i]:
            am, ac = _lead(a)
            shift = tuple(x - y for x, y in zip(am, bm))
            a = _padd(a, _pneg(_pmul({shift: ac / bc}, b)))
        a, b = b, a
    c = _content(a)
    a = _pscale(a, 1 / c) if c else a
    if a and _lead(a)[1] < 0:
        a = _pneg(a)
    return a


def _nvars_used(f):
    used = set()
    for m in f:
        for i, e in enumerate(m):
            if e:
                used.add(i)
    return used


def _pgcd(f, g):
    """Primitive gcd of ordinary polynomials (positive lex-leading coeff)."""
    if not f and not g:
        return {}
    if not f or not g:
        h = dict(g or f)
        c = _content(h)
        h = _pscale(h, 1 / c)
        if _lead(h)[1] < 0:
            h = _pneg(h)
        return h
    used = _nvars_used(f) | _nvars_used(g)
    nv = len(next(iter(f)))
    unit = {(0,) * nv: Fraction(1)}
    if not used:
        return dict(unit)
    i = max(used)
    others = used - {i}
    if not others:
        return _gcd_univariate(f, g, i)
    # primitive PRS in variable i, contents handled recursively
    cf = _coeffs_in(f, i)
    cg = _coeffs_in(g, i)
    cont_f = _reduce_gcd(list(cf.values()))
    cont_g = _reduce_gcd(list(cg.values()))
    cont = _pgcd(cont_f, cont_g)
    a = _primitive_wrt(f, i)
    b = _primitive_wrt(g, i)
    if _degree_in(a, i) < _degree_in(b, i):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b, i)
        a, b = b, _primitive_wrt(r, i) if r else {}
    h = _pmul(cont, a)
    c = _content(h)
    h = _pscale(h, 1 / c)
    if _lead(h)[1] < 0:
        h = _pneg(h)
    return h


def _reduce_gcd(polys):
    acc = {}
    for p in polys:
        acc = _pgcd(acc, p)
    return acc


def _primitive_wrt(f, i):
    if not f:
        return {}
    cont = _reduce_gcd(list(_coeffs_in(f, i).values()))
    return _pdivexact(f, cont)


def _pseudo_rem(a, b, i):
    """Pseudo-remainder of a by b in variable i."""
    da, db = _degree_in(a, i), _degree_in(b, i)
    cb = _coeffs_in(b, i)
    lc_b = cb[db]
    r = dict(a)
    while r and _degree_in(r, i) >= db:
        dr = _degree_in(r, i)
        cr = _coeffs_in(r, i)
        lc_r = cr[dr]
        nv = len(next(iter(r)))
        xshift = {tuple(dr - db if j == i else 0 for j in range(nv)): Fraction(1)}
        r = _padd(_pmul(r, lc_b), _pneg(_pmul(_pmul({m: c for m, c in lc_r.items()}, xshift), b)))
    return r


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------


class Scalar:
    """Canonical rational function over Q in named parameters."""

    __slots__ = ("names", "num", "den", "_hash", "unit_den")

    def __init__(self, names, num, den, _canonical=False):
        if _canonical:
            self.names = names
            self.num = num
            self.den = den
        else:
            names, num, den = _canonicalize(names, num, den)
            self.names = names
            self.num = num
            self.den = den
        self._hash = None
        self.unit_den = self.den == {(0,) * len(self.names): _FRAC_ONE}

    # -- constructors

    @staticmethod
    def from_fraction(c) -> "Scalar":
        c = Fraction(c)
        num = {(): c} if c else {}
        return Scalar((), num, {(): Fraction(1)}, _canonical=True)

    @staticmethod
    def from_int(n: int) -> "Scalar":
        return Scalar.from_fraction(Fraction(n))

    @staticmethod
    def param(name: str, exponent: int = 1) -> "Scalar":
        return Scalar((name,), {(exponent,): Fraction(1)}, {(0,): Fraction(1)},
                      _canonical=True)

    @staticmethod
    def zero() -> "Scalar":
        return _ZERO

    @staticmethod
    def one() -> "Scalar":
        return _ONE

    # -- predicates

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return (self.den == {(0,) * len(self.names): Fraction(1)}
                and self.num == {(0,) * len(self.names): Fraction(1)})

    def as_fraction(self):
        """Return the value as a Fraction if parameter-free, else None."""
        if self.names:
            return None
        if not self.num:
            return Fraction(0)
        return self.num[()] / self.den[()]

    # -- arithmetic

    def __add__(self, other):
        other = _coerce(other)
        names, (an, ad), (bn, bd) = _align(self, other)
        if self.unit_den and other.unit_den:
            return _from_laurent(names, _padd(an, bn))
        num = _padd(_pmul(an, bd), _pmul(bn, ad))
        return Scalar(names, num, _pmul(ad, bd))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.names, _pneg(self.num), dict(self.den), _canonical=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.unit_den and other.unit_den:
            if not self.num or not other.num:
                return _ZERO
            if not self.names:
                c = self.num[()]
                if c == 1:
                    return other
                return Scalar(other.names,
                              {m: a * c for m, a in other.num.items()},
                              other.den, _canonical=True)
            if not other.names:
                c = other.num[()]
                if c == 1:
                    return self
                return Scalar(self.names,
                              {m: a * c for m, a in self.num.items()},
                              self.den, _canonical=True)
            names, (an, _), (bn, _) = _align(self, other)
            return _from_laurent(names, _pmul(an, bn))
        names, (an, ad), (bn, bd) = _align(self, other)
        return Scalar(names, _pmul(an, bn), _pmul(ad, bd))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise DivisionByZeroError("scalar division by zero")
        names, (an, ad), (bn, bd) = _align(self, other)
        # bn is Laurent: peel its monomial factor into the numerator
        mins = _min_exps(bn, len(names))
        bn0 = _shift(bn, tuple(-e for e in mins))
        num = _pmul(_pmul(an, bd), {tuple(-e for e in mins): Fraction(1)})
        return Scalar(names, num, _pmul(ad, bn0))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def inverse(self) -> "Scalar":
        return _ONE / self

    def __pow__(self, n: int):
        if n == 0:
            return _ONE
        if n < 0:
            return self.inverse() ** (-n)
        r = self
        for _ in range(n - 1):
            r = r * self
        return r

    # -- equality / hashing / printing

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = _coerce(other)
            else:
                return NotImplemented
        return (self.names == other.names and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.names,
                               tuple(sorted(self.num.items())),
                               tuple(sorted(self.den.items()))))
        return self._hash

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        num = _poly_str(self.num, self.names)
        if self.den == {(0,) * len(self.names): Fraction(1)}:
            return num
        den = _poly_str(self.den, self.names)
        if len(self.num) > 1:
            num = f"({num})"
        if len(self.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_fraction(x)
    raise TypeError(f"cannot coerce {x!r} to Scalar")


def _align(a: Scalar, b: Scalar):
    if a.names == b.names:
        return a.names, (a.num, a.den), (b.num, b.den)
    names = tuple(sorted(set(a.names) | set(b.names)))
    return names, _rekey(a, names), _rekey(b, names)


def _rekey(s: Scalar, names):
    idx = [names.index(n) for n in s.names]

    def conv(f):
        out = {}
        for m, c in f.items():
            m2 = [0] * len(names)
            for i, e in zip(idx, m):
                m2[i] = e
            out[tuple(m2)] = c
        return out

    return conv(s.num), conv(s.den)


def _canonicalize(names, num, den):
    num = {m: c for m, c in num.items() if c}
    den = {m: c for m, c in den.items() if c}
    if not den:
        raise DivisionByZeroError("zero denominator")
    if not num:
        return (), {}, {(): Fraction(1)}
    nv = len(names)
    # den: clear any monomial factor into num
    dmin = _min_exps(den, nv)
    if any(dmin):
        den = _shift(den, tuple(-e for e in dmin))
        num = _shift(num, tuple(-e for e in dmin))
    # num: peel Laurent monomial, reduce the ordinary parts
    nmin = _min_exps(num, nv)
    num0 = _shift(num, tuple(-e for e in nmin))
    g = _pgcd(num0, den)
    if g and g != {(0,) * nv: Fraction(1)}:
        num0 = _pdivexact(num0, g)
        den = _pdivexact(den, g)
    # den: primitive, positive leading coefficient
    c = _content(den)
    sign = 1 if _lead(den)[1] > 0 else -1
    scale = c * sign
    if scale != 1:
        den = _pscale(den, 1 / scale)
        num0 = _pscale(num0, 1 / scale)
    num = _shift(num0, nmin)
    # drop parameters with zero exponent everywhere (after all cancellation)
    used = sorted(_nvars_used(num) | _nvars_used(den))
    if len(used) != nv:
        names = tuple(names[i] for i in used)
        num = {tuple(m[i] for i in used): c for m, c in num.items()}
        den = {tuple(m[i] for i in used): c for m, c in den.items()}
    return names, num, den


def _mono_str(m, names):
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _poly_str(f, names):
    def key(m):
        return (sum(m), m)

    terms = []
    for m in sorted(f, key=key, reverse=True):
        c = f[m]
        mono = _mono_str(m, names)
        if not mono:
            t = str(c)
        elif c == 1:
            t = mono
        elif c == -1:
            t = f"-{mono}"
        else:
            t = f"{c}*{mono}"
        terms.append(t)
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


_FRAC_ONE = Fraction(1)


def _from_laurent(names, num):
    """Canonical scalar with unit denominator from a Laurent dict."""
    num = {m: c for m, c in num.items() if c}
    if not num:
        return _ZERO
    used = sorted(_nvars_used(num))
    if len(used) != len(names):
        names = tuple(names[i] for i in used)
        num = {tuple(m[i] for i in used): c for m, c in num.items()}
    return Scalar(names, num, {(0,) * len(names): _FRAC_ONE},
                  _canonical=True)


_ZERO = Scalar((), {}, {(): Fraction(1)}, _canonical=True)
_ONE = Scalar((), {(): Fraction(1)}, {(): Fraction(1)}, _canonical=True)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Field arithmetic dispatch; op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ScalarError(f"unknown op {op!r}")


def q_binomial(n: int, k: int, base: Scalar) -> Scalar:
    """Deformed binomial coefficient via the product formula.

    (n k)_b = prod_{i=k+1}^{n} (b^i - 1) / prod_{i=1}^{n-k} (b^i - 1).
    """
    if k < 0 or k > n:
        raise ScalarError(f"q_binomial requires 0 <= k <= n, got n={n} k={k}")
    one = Scalar.one()
    num = one
    for i in range(k + 1, n + 1):
        num = num * (base ** i - one)
    den = one
    for i in range(1, n - k + 1):
        den = den * (base ** i - one)
    return num / den
