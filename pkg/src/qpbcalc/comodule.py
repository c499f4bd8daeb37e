"""Right comodule algebras, coinvariants, the Hopf-Galois canonical map and
the degree-zero braiding.

Equality in the balanced tensor product A (x)_B A is decided on canonical
representatives: the images under the canonical map chi(a (x) a') =
a a'_0 (x) a'_1, which is bijective for a Hopf-Galois extension.  The
translation map tau = chi^-1(1 (x) -) is stored on the grouplike generators
of the structure Hopf algebra and extended to arbitrary grouplike words by
the product identity tau(hg) = g<1> h<1> (x) h<2> g<2>.
"""

from __future__ import annotations

from .hopf import HopfPresentation
from .linalg import kernel
from .ncalg import NCPoly
from .report import CheckReport, timed
from .tensors import TensorPoly


class ComoduleError(Exception):
    pass


class TruncationError(ComoduleError):
    pass


class ComoduleAlgebra:
    def __init__(self, name, A, H: HopfPresentation, coaction):
        self.name = name
        self.A = A
        self.H = H
        self.coact_tab = dict(coaction)
        for g in A.generators:
            if g.name not in self.coact_tab:
                raise ComoduleError(f"missing coaction entry for {g.name}")
        self._coact_cache = {(): TensorPoly.unit((A, H.base))}
        self.diagonal = self._detect_diagonal()

    def _detect_diagonal(self):
        for g in self.A.generators:
            t = self.coact_tab[g.name]
            if len(t.terms) != 1:
                return False
            ((wa, wh), c) = next(iter(t.terms.items()))
            if wa != (g.name,) or not c.is_one():
                return False
            if not self.H.is_grouplike_word(wh):
                return False
        return True

    # -- coaction

    def coact(self, p: NCPoly) -> TensorPoly:
        out = TensorPoly.zero((self.A, self.H.base))
        for w, c in self.A.reduce(p).terms.items():
            out = out + self._coact_word(w).scale(c)
        return out

    def _coact_word(self, w) -> TensorPoly:
        cached = self._coact_cache.get(w)
        if cached is not None:
            return cached
        out = self._coact_word(w[:-1]).tensor_mul(self.coact_tab[w[-1]])
        self._coact_cache[w] = out
        return out

    def coact_iter(self, p: NCPoly, n: int) -> TensorPoly:
        """A-leg followed by n structure legs: (id (x) Delta^(n-1)) Delta_A."""
        legs = (self.A,) + (self.H.base,) * n
        cur = self.coact(p)
        for k in range(2, n + 1):
            cur = cur.map_terms(
                lambda ws: TensorPoly(
                    (self.A,) + (self.H.base,) * k,
                    {ws[:-1] + pair: c for pair, c in
                     self.H._delta_word(ws[-1]).terms.items()}),
                (self.A,) + (self.H.base,) * k)
        return TensorPoly(legs, cur.terms)

    def htag(self, w) -> tuple:
        """The grouplike tag of an A-basis word, for diagonal coactions."""
        t = self._coact_word(tuple(w))
        if len(t.terms) != 1:
            raise ComoduleError(f"coaction not diagonal on {w}")
        ((wa, wh), c) = next(iter(t.terms.items()))
        return wh

    # -- coinvariants

    def coinvariant_basis(self, max_word_len: int) -> list:
        if self.diagonal:
            out = []
            for w in self.A.irreducible_words(max_word_len):
                if not self.htag(w):
                    out.append(NCPoly.word(w))
            return out
        return self._coinvariants_by_solve(max_word_len)

    def _coinvariants_by_solve(self, max_word_len: int) -> list:
        words = list(self.A.irreducible_words(max_word_len))
        vectors = []
        for w in words:
            diff = self.coact(NCPoly.word(w)) - TensorPoly.from_polys(
                (self.A, self.H.base), NCPoly.word(w), NCPoly.one())
            vectors.append(dict(diff.terms))
        combos = kernel(vectors)
        out = []
        for combo in combos:
            p = NCPoly.zero()
            for i, c in combo.items():
                p = p + NCPoly.word(words[i], c)
            out.append(p)
        return out

    # -- validation

    def validate(self, max_word_len: int = 3, example: str = "") -> CheckReport:
        rep = CheckReport(
            suite="comodule", example=example or self.name,
            truncation={"max_word_len": max_word_len},
            ref="coaction is an algebra morphism, coassociative and counital")
        with timed(rep):
            for rule in self.A.rules:
                lhs = self._coact_word(rule.lhs)
                rep.record(lhs == self.coact(rule.rhs),
                           f"coact-respects({'*'.join(rule.lhs)})",
                           "equal tensors", "mismatch",
                           ref="well defined on the quotient")
            legs = (self.A, self.H.base, self.H.base)
            for w in self.A.irreducible_words(max_word_len):
                p = NCPoly.word(w)
                d = self.coact(p)
                lhs = d.map_terms(
                    lambda ws: TensorPoly(
                        legs, {pair + (ws[1],): c for pair, c in
                               self._coact_word(ws[0]).terms.items()}), legs)
                rhs = self.coact_iter(p, 2)
                rep.record(lhs == rhs, f"coassoc({'*'.join(w) or '1'})",
                           "equal", "mismatch",
                           ref="(Delta_A (x) id)Delta_A = (id (x) Delta)Delta_A")
                collapsed = NCPoly.zero()
                for (wa, wh), c in d.terms.items():
                    collapsed = collapsed + NCPoly.word(
                        wa, c * self.H.counit(NCPoly.word(wh)))
                rep.record(self.A.reduce(collapsed) == self.A.reduce(p),
                           f"counit({'*'.join(w) or '1'})", "identity",
                           "mismatch", ref="(id (x) eps)Delta_A = id")
        return rep


class TranslationData:
    """tau on the grouplike generators, extended by the product identity."""

    def __init__(self, ca: ComoduleAlgebra, tau_table, cleaving=None,
                 label=""):
        self.ca = ca
        self.tab = {g: t for g, t in tau_table.items()}
        self.cleaving = cleaving  # optional (j, jinv) callables on H-words
        self.label = label
        self._cache = {(): TensorPoly.unit((ca.A, ca.A))}

    @staticmethod
    def from_cleaving(ca: ComoduleAlgebra, j, jinv, label="") -> "TranslationData":
        """Cleft case: tau(g) = jinv(g) (x) j(g) on grouplike generators."""
        tab = {}
        for g in ca.H.base.generators:
            w = (g.name,)
            tab[g.name] = TensorPoly.from_polys((ca.A, ca.A), jinv(w), j(w))
        return TranslationData(ca, tab, cleaving=(j, jinv), label=label)

    def tau_word(self, w) -> TensorPoly:
        w = tuple(w)
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        if len(w) == 1:
            t = self.tab.get(w[0])
            if t is None:
                raise TruncationError(
                    f"{self.label}: no translation data for {w[0]!r}")
            self._cache[w] = t
            return t
        head = self.tau_word(w[:-1])   # tau(h)
        last = self.tau_word(w[-1:])   # tau(g)
        # tau(hg) = g<1> h<1> (x) h<2> g<2>
        A = self.ca.A
        out = TensorPoly.zero((A, A))
        for (x1, x2), cx in last.terms.items():
            for (y1, y2), cy in head.terms.items():
                piece = TensorPoly.from_polys(
                    (A, A), A.normal_word(x1 + y1), A.normal_word(y2 + x2))
                out = out + piece.scale(cx * cy)
        self._cache[w] = out
        return out

    def tau(self, h: NCPoly) -> TensorPoly:
        out = TensorPoly.zero((self.ca.A, self.ca.A))
        for w, c in self.ca.H.base.reduce(h).terms.items():
            out = out + self.tau_word(w).scale(c)
        return out


class BalancedTensor:
    """Element of A (x)_B A: raw representative plus canonical chi-image."""

    __slots__ = ("ca", "raw", "_canonical")

    def __init__(self, ca: ComoduleAlgebra, raw: TensorPoly | None = None,
                 canonical: TensorPoly | None = None):
        self.ca = ca
        self.raw = raw
        self._canonical = canonical

    @property
    def canonical(self) -> TensorPoly:
        if self._canonical is None:
            self._canonical = chi(self.ca, self.raw)
        return self._canonical

    def __eq__(self, other):
        return (isinstance(other, BalancedTensor) and self.ca is other.ca
                and self.canonical == other.canonical)

    def __str__(self):
        if self.raw is not None:
            return f"[{self.raw}]"
        return f"chi^-1[{self.canonical}]"

    __repr__ = __str__


# -- canonical map and friends -------------------------------------------------

def chi(ca: ComoduleAlgebra, x: TensorPoly) -> TensorPoly:
    """chi(a (x)_B a') = a a'_0 (x) a'_1, raw pairs to (A, H)."""
    A, H = ca.A, ca.H.base
    out = TensorPoly.zero((A, H))
    for (wa, wb), c in x.terms.items():
        for (w0, w1), c2 in ca._coact_word(wb).terms.items():
            piece = TensorPoly.from_polys((A, H), A.normal_word(wa + w0),
                                          NCPoly.word(w1))
            out = out + piece.scale(c * c2)
    return out


def chi_inv(ca: ComoduleAlgebra, td: TranslationData,
            y: TensorPoly) -> BalancedTensor:
    """chi^-1(a (x) h) = a tau(h); raw representative built from tau."""
    A = ca.A
    out = TensorPoly.zero((A, A))
    for (wa, wh), c in y.terms.items():
        for (x1, x2), c2 in td.tau_word(wh).terms.items():
            piece = TensorPoly.from_polys((A, A), A.normal_word(wa + x1),
                                          NCPoly.word(x2))
            out = out + piece.scale(c * c2)
    return BalancedTensor(ca, raw=out, canonical=None)


def tau(h: NCPoly, td: TranslationData) -> BalancedTensor:
    return BalancedTensor(td.ca, raw=td.tau(h))


def sigma(x: BalancedTensor, td: TranslationData) -> BalancedTensor:
    """sigma(a (x)_B a') = a_0 a' tau(a_1)."""
    ca = td.ca
    A = ca.A
    out = TensorPoly.zero((A, A))
    for (wa, wb), c in x.raw.terms.items():
        for (w0, w1), c2 in ca._coact_word(wa).terms.items():
            for (x1, x2), c3 in td.tau_word(w1).terms.items():
                piece = TensorPoly.from_polys(
                    (A, A), A.normal_word(w0 + wb + x1), NCPoly.word(x2))
                out = out + piece.scale(c * c2 * c3)
    return BalancedTensor(ca, raw=out)


def sigma_inv(x: BalancedTensor, td: TranslationData) -> BalancedTensor:
    """sigma^-1(a (x)_B a') = tau(S^-1(a'_1)) a a'_0."""
    ca = td.ca
    A = ca.A
    out = TensorPoly.zero((A, A))
    for (wa, wb), c in x.raw.terms.items():
        for (w0, w1), c2 in ca._coact_word(wb).terms.items():
            sinv = ca.H.antipode_inv(NCPoly.word(w1))
            for ws, c3 in sinv.terms.items():
                for (x1, x2), c4 in td.tau_word(ws).terms.items():
                    piece = TensorPoly.from_polys(
                        (A, A), NCPoly.word(x1),
                        A.normal_word(x2 + wa + w0))
                    out = out + piece.scale(c * c2 * c3 * c4)
    return BalancedTensor(ca, raw=out)


def multiply_balanced(x: BalancedTensor, y: BalancedTensor) -> BalancedTensor:
    """Product pulled back through chi (tensor product algebra on A (x) H)."""
    ca = x.ca
    return BalancedTensor(ca, canonical=x.canonical.tensor_mul(y.canonical))


def collapse(x: BalancedTensor) -> NCPoly:
    """Multiplication map A (x)_B A -> A on the raw representative."""
    A = x.ca.A
    out = NCPoly.zero()
    for (wa, wb), c in x.raw.terms.items():
        out = out + A.normal_word(wa + wb).scale(c)
    return out


def canonical_triple(ca: ComoduleAlgebra, t3: TensorPoly) -> TensorPoly:
    """Embed A (x)_B A (x)_B A into A (x) H (x) H:
    a (x) b (x) c -> a b0 c0 (x) b1 c1 (x) c2."""
    A, H = ca.A, ca.H.base
    out = TensorPoly.zero((A, H, H))
    for (wa, wb, wc), c in t3.terms.items():
        for (b0, b1), c2 in ca._coact_word(wb).terms.items():
            for (c0, c1, c2h), c3 in ca.coact_iter(NCPoly.word(wc), 2).terms.items():
                piece = TensorPoly.from_polys(
                    (A, H, H), A.normal_word(wa + b0 + c0),
                    H.normal_word(b1 + c1), NCPoly.word(c2h))
                out = out + piece.scale(c * c2 * c3)
    return out


def triple_map(ca, t3: TensorPoly, fn, slot: int) -> TensorPoly:
    """Apply a BalancedTensor -> BalancedTensor map to legs (slot, slot+1)."""
    A = ca.A
    out = TensorPoly.zero((A, A, A))
    for ws, c in t3.terms.items():
        pair = TensorPoly.from_polys((A, A), NCPoly.word(ws[slot]),
                                     NCPoly.word(ws[slot + 1]))
        res = fn(BalancedTensor(ca, raw=pair)).raw
        for (p1, p2), c2 in res.terms.items():
            new = ws[:slot] + (p1, p2) + ws[slot + 2:]
            piece = TensorPoly.from_polys((A,) * 3, *[NCPoly.word(w) for w in new])
            out = out + piece.scale(c * c2)
    return out


# -- operation fronts -----------------------------------------------------------

def coact(a: NCPoly, ca: ComoduleAlgebra) -> TensorPoly:
    return ca.coact(a)


def coinvariant_basis(ca: ComoduleAlgebra, max_word_len: int) -> list:
    return ca.coinvariant_basis(max_word_len)


# -- grouplike basis words of H up to a weight bound ----------------------------

def h_basis_words(H: HopfPresentation, max_word_len: int):
    return list(H.base.irreducible_words(max_word_len))


# -- the identity suite ---------------------------------------------------------

def tau_identity_suite(ca: ComoduleAlgebra, td: TranslationData,
                       max_word_len: int = 3, example: str = "") -> CheckReport:
    A, H = ca.A, ca.H
    rep = CheckReport(
        suite="tau", example=example or ca.name,
        truncation={"max_word_len": max_word_len},
        ref="translation map identities: chi tau = unit tensor, "
            "anti-multiplicativity, counit collapse, coaction shifts, "
            "coinvariant centrality")
    rep.notes.append("faithful flatness of the extension is assumed, not tested")
    with timed(rep):
        hw = h_basis_words(H, max_word_len)
        unit_ah = TensorPoly.unit((A, H.base))
        for w in hw:
            name = "*".join(w) or "1"
            t = td.tau_word(w)
            bt = BalancedTensor(ca, raw=t)
            got = bt.canonical
            want = TensorPoly.from_polys((A, H.base), NCPoly.one(),
                                         NCPoly.word(w))
            rep.record(got == want, f"tau6({name})", str(want), str(got),
                       ref="chi(tau(h)) = 1 (x) h")
            prod = collapse(bt)
            want1 = NCPoly.one().scale(H.counit(NCPoly.word(w)))
            rep.record(prod == want1, f"tau1({name})", str(want1), str(prod),
                       ref="h<1> h<2> = eps(h) 1")
        # tau5: a_0 tau(a_1) = 1 (x)_B a on A basis words
        for w in A.irreducible_words(max_word_len):
            name = "*".join(w) or "1"
            out = TensorPoly.zero((A, A))
            ok = True
            try:
                for (w0, w1), c in ca._coact_word(w).terms.items():
                    for (x1, x2), c2 in td.tau_word(w1).terms.items():
                        piece = TensorPoly.from_polys(
                            (A, A), A.normal_word(w0 + x1), NCPoly.word(x2))
                        out = out + piece.scale(c * c2)
            except TruncationError:
                rep.mark_inconclusive(f"tau5({name})",
                                      "translation data out of range")
                continue
            lhs = BalancedTensor(ca, raw=out)
            rhs = BalancedTensor(ca, raw=TensorPoly.from_polys(
                (A, A), NCPoly.one(), NCPoly.word(w)))
            rep.record(lhs == rhs, f"tau5({name})", str(rhs.canonical),
                       str(lhs.canonical), ref="a0 tau(a1) = 1 (x)_B a")
        # tau2 on pairs of H words
        for w1 in hw:
            for w2 in hw:
                if len(w1) + len(w2) > max_word_len:
                    continue
                prod = H.base.normal_word(w1 + w2)
                lhs = TensorPoly.zero((A, A))
                for wp, c in prod.terms.items():
                    lhs = lhs + td.tau_word(wp).scale(c)
                ta, tb = td.tau_word(w1), td.tau_word(w2)
                rhs = TensorPoly.zero((A, A))
                for (x1, x2), cx in tb.terms.items():
                    for (y1, y2), cy in ta.terms.items():
                        piece = TensorPoly.from_polys(
                            (A, A), A.normal_word(x1 + y1),
                            A.normal_word(y2 + x2))
                        rhs = rhs + piece.scale(cx * cy)
                name = f"{'*'.join(w1) or '1'},{'*'.join(w2) or '1'}"
                rep.record(BalancedTensor(ca, raw=lhs) ==
                           BalancedTensor(ca, raw=rhs),
                           f"tau2({name})", "equal balanced tensors",
                           "mismatch",
                           ref="tau(hg) = g<1>h<1> (x) h<2>g<2>")
        # tau3 / tau4 as three-leg identities (A, H, H after canonicalizing)
        legsAAH = (A, H.base, H.base)
        for w in hw:
            name = "*".join(w) or "1"
            t = td.tau_word(w)
            lhs3 = TensorPoly.zero((A, A, H.base))
            for (x1, x2), c in t.terms.items():
                for (w0, w1x), c2 in ca._coact_word(x2).terms.items():
                    piece = TensorPoly.from_polys(
                        (A, A, H.base), NCPoly.word(x1), NCPoly.word(w0),
                        NCPoly.word(w1x))
                    lhs3 = lhs3 + piece.scale(c * c2)
            rhs3 = TensorPoly.zero((A, A, H.base))
            for (h1, h2), c in H._delta_word(w).terms.items():
                for (x1, x2), c2 in td.tau_word(h1).terms.items():
                    piece = TensorPoly.from_polys(
                        (A, A, H.base), NCPoly.word(x1), NCPoly.word(x2),
                        NCPoly.word(h2))
                    rhs3 = rhs3 + piece.scale(c * c2)
            rep.record(_canon12(ca, lhs3) == _canon12(ca, rhs3),
                       f"tau3({name})", "equal", "mismatch",
                       ref="tau then coact on second leg = coproduct then tau")
            lhs4 = TensorPoly.zero((A, A, H.base))
            for (x1, x2), c in t.terms.items():
                for (w0, w1x), c2 in ca._coact_word(x1).terms.items():
                    piece = TensorPoly.from_polys(
                        (A, A, H.base), NCPoly.word(w0), NCPoly.word(x2),
                        NCPoly.word(w1x))
                    lhs4 = lhs4 + piece.scale(c * c2)
            rhs4 = TensorPoly.zero((A, A, H.base))
            for (h1, h2), c in H._delta_word(w).terms.items():
                s = H.antipode(NCPoly.word(h1))
                for (x1, x2), c2 in td.tau_word(h2).terms.items():
                    for wsw, c3 in s.terms.items():
                        piece = TensorPoly.from_polys(
                            (A, A, H.base), NCPoly.word(x1), NCPoly.word(x2),
                            NCPoly.word(wsw))
                        rhs4 = rhs4 + piece.scale(c * c2 * c3)
            rep.record(_canon12(ca, lhs4) == _canon12(ca, rhs4),
                       f"tau4({name})", "equal", "mismatch",
                       ref="coact on first leg twists by the antipode")
        # tau7: centrality over the coinvariant basis
        coinv = ca.coinvariant_basis(max_word_len)
        for b in coinv:
            for w in hw:
                t = td.tau_word(w)
                left = TensorPoly.zero((A, A))
                right = TensorPoly.zero((A, A))
                for (x1, x2), c in t.terms.items():
                    left = left + TensorPoly.from_polys(
                        (A, A), A.multiply(b, NCPoly.word(x1)),
                        NCPoly.word(x2)).scale(c)
                    right = right + TensorPoly.from_polys(
                        (A, A), NCPoly.word(x1),
                        A.multiply(NCPoly.word(x2), b)).scale(c)
                rep.record(BalancedTensor(ca, raw=left) ==
                           BalancedTensor(ca, raw=right),
                           f"tau7({b},{'*'.join(w) or '1'})",
                           "b tau(h) = tau(h) b", "mismatch",
                           ref="centrality over coinvariants")
    return rep


def _canon12(ca, t3: TensorPoly) -> TensorPoly:
    """Canonicalize the balanced pair in legs (0, 1), keeping leg 2."""
    A, H = ca.A, ca.H.base
    out = TensorPoly.zero((A, H, H))
    for (wa, wb, wh), c in t3.terms.items():
        for (w0, w1), c2 in ca._coact_word(wb).terms.items():
            piece = TensorPoly.from_polys(
                (A, H, H), A.normal_word(wa + w0), NCPoly.word(w1),
                NCPoly.word(wh))
            out = out + piece.scale(c * c2)
    return out
