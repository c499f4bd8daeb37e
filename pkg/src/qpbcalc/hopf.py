"""Hopf algebra structure on a presented algebra.

Coproduct and counit are given on generators and extended as algebra
morphisms; the antipode and its inverse extend anti-multiplicatively.
All structure maps are checked against the defining relations, which is
what makes the generator tables well defined on the quotient.
"""

from __future__ import annotations

from .ncalg import AlgebraPresentation, NCPoly, UndeclaredSymbolError
from .report import CheckReport, timed
from .scalars import Scalar
from .tensors import TensorPoly


class HopfError(Exception):
    pass


class HopfPresentation:
    def __init__(self, base: AlgebraPresentation, delta, epsilon, antipode,
                 antipode_inv):
        self.base = base
        self.delta_tab = dict(delta)
        self.eps_tab = dict(epsilon)
        self.s_tab = dict(antipode)
        self.sinv_tab = dict(antipode_inv)
        for g in base.generators:
            for tab, what in ((self.delta_tab, "delta"),
                              (self.eps_tab, "epsilon"),
                              (self.s_tab, "antipode"),
                              (self.sinv_tab, "antipode_inv")):
                if g.name not in tab:
                    raise HopfError(f"missing {what} entry for {g.name}")
        self._delta_cache: dict = {(): TensorPoly.unit((base, base))}
        self._s_cache: dict = {(): NCPoly.one()}
        self._sinv_cache: dict = {(): NCPoly.one()}

    # -- structure maps (multiplicative / anti-multiplicative extensions)

    def coproduct(self, p: NCPoly) -> TensorPoly:
        out = TensorPoly.zero((self.base, self.base))
        for w, c in self.base.reduce(p).terms.items():
            out = out + self._delta_word(w).scale(c)
        return out

    def _delta_word(self, w) -> TensorPoly:
        cached = self._delta_cache.get(w)
        if cached is not None:
            return cached
        head = self._delta_word(w[:-1])
        g = w[-1]
        if g not in self.delta_tab:
            raise UndeclaredSymbolError(f"no coproduct table for {g!r}")
        out = head.tensor_mul(self.delta_tab[g])
        self._delta_cache[w] = out
        return out

    def counit(self, p: NCPoly) -> Scalar:
        out = Scalar.zero()
        for w, c in self.base.reduce(p).terms.items():
            e = Scalar.one()
            for g in w:
                e = e * self.eps_tab[g]
            out = out + e * c
        return out

    def antipode(self, p: NCPoly) -> NCPoly:
        return self._anti(p, self.s_tab, self._s_cache)

    def antipode_inv(self, p: NCPoly) -> NCPoly:
        return self._anti(p, self.sinv_tab, self._sinv_cache)

    def _anti(self, p, tab, cache) -> NCPoly:
        out = NCPoly.zero()
        for w, c in self.base.reduce(p).terms.items():
            out = out + self._anti_word(w, tab, cache).scale(c)
        return out

    def _anti_word(self, w, tab, cache) -> NCPoly:
        cached = cache.get(w)
        if cached is not None:
            return cached
        g = w[0]
        if g not in tab:
            raise UndeclaredSymbolError(f"no antipode table for {g!r}")
        out = self.base.multiply(self._anti_word(w[1:], tab, cache), tab[g])
        cache[w] = out
        return out

    # -- derived maps

    def pi_epsilon(self, p: NCPoly) -> NCPoly:
        """h - eps(h) 1, the projection onto the counit kernel."""
        return self.base.reduce(p) - NCPoly.one().scale(self.counit(p))

    def coproduct_iter(self, p: NCPoly, n: int) -> TensorPoly:
        """(n+1)-fold Sweedler legs via repeated coproduct on the last leg."""
        legs = (self.base,) * (n + 1)
        if n == 0:
            return TensorPoly.from_polys((self.base,), self.base.reduce(p))
        cur = self.coproduct(p)
        for k in range(2, n + 1):
            cur = cur.map_terms(
                lambda ws: _splice_last(self, ws, k),
                (self.base,) * (k + 1))
        return TensorPoly(legs, cur.terms)

    def adjoint_coaction(self, p: NCPoly) -> TensorPoly:
        """Ad(h) = h_2 (x) S(h_1) h_3."""
        triple = self.coproduct_iter(p, 2)

        def contract(ws):
            w1, w2, w3 = ws
            right = self.base.multiply(self.antipode(NCPoly.word(w1)),
                                       NCPoly.word(w3))
            return TensorPoly.from_polys((self.base, self.base),
                                         NCPoly.word(w2), right)

        return triple.map_terms(contract, (self.base, self.base))

    # -- grouplike structure (structure groups are group algebras here)

    def is_grouplike_word(self, w) -> bool:
        t = TensorPoly.from_polys((self.base, self.base),
                                  NCPoly.word(w), NCPoly.word(w))
        return (self._delta_word(tuple(w)) == t
                and self.counit(NCPoly.word(w)).is_one())

    def grouplike_inverse_word(self, w):
        """S(w) for a grouplike basis word, as a word."""
        s = self.antipode(NCPoly.word(w))
        if len(s.terms) != 1:
            raise HopfError(f"not grouplike: {w}")
        ((w2, c),) = s.terms.items()
        if not c.is_one():
            raise HopfError(f"not grouplike: {w}")
        return w2

    # -- axioms

    def verify_hopf_axioms(self, max_word_len: int = 4,
                           example: str = "") -> CheckReport:
        H = self.base
        rep = CheckReport(
            suite="hopf", example=example or H.name,
            truncation={"max_word_len": max_word_len},
            ref="coassociativity, counitality, antipode axioms, "
                "morphism property on relations")
        with timed(rep):
            legs3 = (H, H, H)
            for w in H.irreducible_words(max_word_len):
                p = NCPoly.word(w)
                name = "*".join(w) or "1"
                d = self.coproduct(p)
                lhs = d.map_terms(
                    lambda ws: TensorPoly(
                        legs3,
                        {k + (ws[1],): c for k, c in
                         self._delta_word(ws[0]).terms.items()}), legs3)
                rhs = d.map_terms(
                    lambda ws: TensorPoly(
                        legs3,
                        {(ws[0],) + k: c for k, c in
                         self._delta_word(ws[1]).terms.items()}), legs3)
                rep.record(lhs == rhs, f"coassoc({name})", "equal legs",
                           "mismatch", ref="(Delta (x) id)Delta = (id (x) Delta)Delta")
                left = _apply_counit(self, d, 0)
                right = _apply_counit(self, d, 1)
                pn = H.reduce(p)
                rep.record(left == pn and right == pn, f"counit({name})",
                           str(pn), f"{left} / {right}",
                           ref="(eps (x) id)Delta = id = (id (x) eps)Delta")
                e1 = NCPoly.one().scale(self.counit(p))
                s_left = _convolve(self, d, anti_left=True)
                s_right = _convolve(self, d, anti_left=False)
                rep.record(s_left == e1 and s_right == e1,
                           f"antipode({name})", str(e1),
                           f"{s_left} / {s_right}",
                           ref="S(h1)h2 = eps(h)1 = h1 S(h2)")
                rep.record(self.antipode_inv(self.antipode(p)) == pn
                           and self.antipode(self.antipode_inv(p)) == pn,
                           f"antipode_inverse({name})", str(pn), "mismatch",
                           ref="S^-1 S = id = S S^-1")
            # morphism property on the defining relations
            for rule in H.rules:
                lw = NCPoly.word(rule.lhs)
                rep.record(self._delta_word(rule.lhs) == self.coproduct(rule.rhs),
                           f"delta-respects({'*'.join(rule.lhs)})",
                           "equal tensors", "mismatch",
                           ref="Delta well defined on the quotient")
                rep.record(self.counit(lw) == self.counit(rule.rhs),
                           f"eps-respects({'*'.join(rule.lhs)})",
                           "equal scalars", "mismatch",
                           ref="eps well defined on the quotient")
                rep.record(self._anti_word(rule.lhs, self.s_tab, self._s_cache)
                           == self.antipode(rule.rhs),
                           f"antipode-respects({'*'.join(rule.lhs)})",
                           "equal elements", "mismatch",
                           ref="S well defined on the quotient")
            # counit is a character on generator pairs
            for g1 in H.generators:
                for g2 in H.generators:
                    prod = H.normal_word((g1.name, g2.name))
                    rep.record(self.counit(prod) ==
                               self.eps_tab[g1.name] * self.eps_tab[g2.name],
                               f"eps-char({g1.name},{g2.name})",
                               "eps(gh)=eps(g)eps(h)", "mismatch",
                               ref="counit is an algebra character")
        return rep


def _splice_last(hopf, ws, k):
    """Replace the last leg of a k-leg term by its coproduct."""
    head = ws[:-1]
    d = hopf._delta_word(ws[-1])
    legs = (hopf.base,) * (k + 1)
    return TensorPoly(legs, {head + pair: c for pair, c in d.terms.items()})


def _apply_counit(hopf, t: TensorPoly, leg: int) -> NCPoly:
    out = NCPoly.zero()
    for ws, c in t.terms.items():
        e = hopf.counit(NCPoly.word(ws[leg]))
        keep = ws[1 - leg]
        out = out + NCPoly.word(keep, e * c)
    return hopf.base.reduce(out)


def _convolve(hopf, d: TensorPoly, anti_left: bool) -> NCPoly:
    out = NCPoly.zero()
    for (w1, w2), c in d.terms.items():
        if anti_left:
            prod = hopf.base.multiply(hopf.antipode(NCPoly.word(w1)),
                                      NCPoly.word(w2))
        else:
            prod = hopf.base.multiply(NCPoly.word(w1),
                                      hopf.antipode(NCPoly.word(w2)))
        out = out + prod.scale(c)
    return out


# -- operation fronts ---------------------------------------------------------

def coproduct(h: NCPoly, hopf: HopfPresentation) -> TensorPoly:
    return hopf.coproduct(h)


def antipode(h: NCPoly, hopf: HopfPresentation) -> NCPoly:
    return hopf.antipode(h)


def antipode_inv(h: NCPoly, hopf: HopfPresentation) -> NCPoly:
    return hopf.antipode_inv(h)


def pi_epsilon(h: NCPoly, hopf: HopfPresentation) -> NCPoly:
    return hopf.pi_epsilon(h)


def adjoint_coaction(h: NCPoly, hopf: HopfPresentation) -> TensorPoly:
    return hopf.adjoint_coaction(h)


def verify_hopf_axioms(hopf: HopfPresentation, max_word_len: int = 4,
                       example: str = "") -> CheckReport:
    return hopf.verify_hopf_axioms(max_word_len, example)
