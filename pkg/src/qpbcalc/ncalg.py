"""Free noncommutative polynomials, rewrite systems and normal forms.

Words are tuples of generator names.  A presentation orients its defining
relations as rewrite rules lhs -> rhs where every monomial of rhs is strictly
smaller than lhs in the degree-lexicographic order induced by the declared
generator order; reduction to normal form then terminates and, for the
shipped presentations, is confluent (checked by critical-pair enumeration).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .report import CheckReport, timed
from .scalars import Scalar

Word = tuple  # tuple of generator names

INHOMOGENEOUS = "inhomogeneous"


class NCAlgError(Exception):
    pass


class UndeclaredSymbolError(NCAlgError):
    pass


class BudgetExceededError(NCAlgError):
    pass


def _budget() -> int:
    return int(os.environ.get("QPBCALC_REDUCE_BUDGET", "2000000"))


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    weight: int = 0
    inverse_of: str | None = None


class NCPoly:
    """Finite map word -> Scalar; zero coefficients absent."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    @staticmethod
    def zero() -> "NCPoly":
        return NCPoly()

    @staticmethod
    def one() -> "NCPoly":
        return NCPoly({(): Scalar.one()})

    @staticmethod
    def word(w, coeff: Scalar | None = None) -> "NCPoly":
        return NCPoly({tuple(w): coeff if coeff is not None else Scalar.one()})

    @staticmethod
    def gen(name: str, coeff: Scalar | None = None) -> "NCPoly":
        return NCPoly.word((name,), coeff)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NCPoly") -> "NCPoly":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            c2 = terms.get(w)
            c2 = c if c2 is None else c2 + c
            if c2.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = c2
        out = NCPoly()
        out.terms = terms
        return out

    def __neg__(self) -> "NCPoly":
        out = NCPoly()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c: Scalar) -> "NCPoly":
        if c.is_zero():
            return NCPoly()
        out = NCPoly()
        out.terms = {w: a * c for w, a in self.terms.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def coefficient(self, w) -> Scalar:
        return self.terms.get(tuple(w), Scalar.zero())

    def symbols(self):
        out = set()
        for w in self.terms:
            out.update(w)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = "*".join(w) if w else "1"
            cs = str(c)
            if cs == "1" and w:
                parts.append(mono)
            elif cs == "-1" and w:
                parts.append(f"-{mono}")
            elif w:
                cs = f"({cs})" if (" " in cs or "/" in cs) else cs
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})" if " " in cs else cs)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCPoly


class AlgebraPresentation:
    """Generators, oriented relations, and the normal-form engine."""

    def __init__(self, name, generators, rules, auto_inverses=True):
        self.name = name
        self.generators = tuple(generators)
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise NCAlgError(f"duplicate generator names in {name}")
        self.symbol = {g.name: g for g in self.generators}
        rules = [RewriteRule(tuple(l), r) for l, r in rules]
        if auto_inverses:
            rules += self._cancellation_rules(rules)
        self.rules = tuple(rules)
        self._by_first = {}
        for rule in self.rules:
            self._by_first.setdefault(rule.lhs[0], []).append(rule)
        for lst in self._by_first.values():
            lst.sort(key=lambda r: (-len(r.lhs), r.lhs))
        self._nf_cache: dict[Word, NCPoly] = {}
        self._validate()

    # -- construction helpers

    def _cancellation_rules(self, rules):
        have = {r.lhs for r in rules}
        extra = []
        for g in self.generators:
            if g.inverse_of is not None:
                pair = (g.name, g.inverse_of)
                if pair not in have:
                    extra.append(RewriteRule(pair, NCPoly.one()))
                    have.add(pair)
        return extra

    def _validate(self):
        for g in self.generators:
            if g.inverse_of is not None:
                h = self.symbol.get(g.inverse_of)
                if h is None or h.inverse_of != g.name:
                    raise NCAlgError(
                        f"{self.name}: inverse pairing broken for {g.name}")
        for rule in self.rules:
            if len(rule.lhs) < 1:
                raise NCAlgError(f"{self.name}: empty rule lhs")
            self._check_declared(rule.lhs)
            for w in rule.rhs.terms:
                self._check_declared(w)
                if not self.word_less(w, rule.lhs):
                    raise NCAlgError(
                        f"{self.name}: rule {'*'.join(rule.lhs)} has "
                        f"non-decreasing monomial {'*'.join(w) or '1'}")

    def _check_declared(self, word):
        for s in word:
            if s not in self._index:
                raise UndeclaredSymbolError(
                    f"{self.name}: undeclared symbol {s!r}")

    # -- term order

    def word_key(self, w):
        return (len(w), tuple(self._index[s] for s in w))

    def word_less(self, w1, w2) -> bool:
        return self.word_key(w1) < self.word_key(w2)

    # -- reduction

    def _find_redex(self, word):
        for i in range(len(word)):
            for rule in self._by_first.get(word[i], ()):
                n = len(rule.lhs)
                if word[i:i + n] == rule.lhs:
                    return i, rule
        return None

    def normal_word(self, word) -> NCPoly:
        """Normal form of a single word, as an NCPoly."""
        word = tuple(word)
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        self._check_declared(word)
        budget = _budget()
        acc: dict[Word, Scalar] = {}
        stack: list[tuple[Word, Scalar]] = [(word, Scalar.one())]
        steps = 0
        while stack:
            w, c = stack.pop()
            hit = self._nf_cache.get(w)
            if hit is not None:
                for w2, c2 in hit.terms.items():
                    _acc_add(acc, w2, c2 * c)
                continue
            m = self._find_redex(w)
            if m is None:
                _acc_add(acc, w, c)
                continue
            steps += 1
            if steps > budget:
                raise BudgetExceededError(
                    f"{self.name}: reduction budget exceeded on "
                    f"{'*'.join(word)}")
            i, rule = m
            pre, post = w[:i], w[i + len(rule.lhs):]
            for mid, c2 in rule.rhs.terms.items():
                stack.append((pre + mid + post, c * c2))
        out = NCPoly()
        out.terms = acc
        self._nf_cache[word] = out
        return out

    def reduce(self, p: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for w, c in p.terms.items():
            out = out + self.normal_word(w).scale(c)
        return out

    def multiply(self, p: NCPoly, r: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for w1, c1 in p.terms.items():
            for w2, c2 in r.terms.items():
                out = out + self.normal_word(w1 + w2).scale(c1 * c2)
        return out

    def product(self, *polys: NCPoly) -> NCPoly:
        out = NCPoly.one()
        for p in polys:
            out = self.multiply(out, p)
        return out

    def is_irreducible(self, word) -> bool:
        return self._find_redex(tuple(word)) is None

    def irreducible_words(self, max_len: int):
        """All normal-form words of length <= max_len (irreducible prefixes)."""
        frontier = [()]
        yield ()
        for _ in range(max_len):
            nxt = []
            for w in frontier:
                for g in self.generators:
                    w2 = w + (g.name,)
                    if self._find_redex(w2) is None:
                        nxt.append(w2)
                        yield w2
            frontier = nxt

    # -- grading

    def weight_of_word(self, w) -> int:
        return sum(self.symbol[s].weight for s in w)

    def weight(self, p: NCPoly):
        """Coaction weight of p, or "inhomogeneous" if monomials disagree."""
        if p.is_zero():
            return 0
        weights = {self.weight_of_word(w) for w in p.terms}
        if len(weights) == 1:
            return weights.pop()
        return INHOMOGENEOUS

    # -- diagnostics

    def confluence_check(self, max_overlap_len: int = 6,
                         example: str = "") -> CheckReport:
        """Resolve all critical pairs of overlapping rule left-hand sides."""
        rep = CheckReport(
            suite="confluence", example=example or self.name,
            truncation={"max_overlap_len": max_overlap_len},
            ref="diamond check: both reductions of every overlap word agree")
        with timed(rep):
            for i1, r1 in enumerate(self.rules):
              for i2, r2 in enumerate(self.rules):
                a, b = r1.lhs, r2.lhs
                # overlap: suffix of a = prefix of b, proper on both sides
                for k in range(1, min(len(a), len(b))):
                    if a[-k:] != b[:k]:
                        continue
                    word = a + b[k:]
                    if len(word) > max_overlap_len:
                        continue
                    p1 = self._splice(r1.rhs, (), b[k:])
                    p2 = self._splice(r2.rhs, a[:len(a) - k], ())
                    rep.record(self.reduce(p1) == self.reduce(p2),
                               "*".join(word), "confluent pair",
                               "two distinct normal forms",
                               ref="overlap")
                # containment: b occurs inside a (including equal lhs, r1 != r2)
                if r1 is r2 or (len(a) == len(b) and i1 > i2):
                    continue
                for i in range(len(a) - len(b) + 1):
                    if a[i:i + len(b)] != b:
                        continue
                    if len(a) > max_overlap_len:
                        continue
                    p1 = r1.rhs
                    p2 = self._splice(r2.rhs, a[:i], a[i + len(b):])
                    rep.record(self.reduce(p1) == self.reduce(p2),
                               "*".join(a), "confluent pair",
                               "two distinct normal forms",
                               ref="containment")
        return rep

    def _splice(self, rhs: NCPoly, pre, post) -> NCPoly:
        out = NCPoly.zero()
        for w, c in rhs.terms.items():
            out = out + NCPoly.word(tuple(pre) + w + tuple(post), c)
        return out

    def __repr__(self):
        return f"AlgebraPresentation({self.name}, {len(self.rules)} rules)"


def _acc_add(acc, w, c):
    c2 = acc.get(w)
    c2 = c if c2 is None else c2 + c
    if c2.is_zero():
        acc.pop(w, None)
    else:
        acc[w] = c2


def reduce(p: NCPoly, pres: AlgebraPresentation) -> NCPoly:
    return pres.reduce(p)


def multiply(p: NCPoly, r: NCPoly, pres: AlgebraPresentation) -> NCPoly:
    return pres.multiply(p, r)


def weight(p: NCPoly, pres: AlgebraPresentation):
    return pres.weight(p)


def confluence_check(pres: AlgebraPresentation, max_overlap_len: int = 6,
                     example: str = "") -> CheckReport:
    return pres.confluence_check(max_overlap_len, example)
