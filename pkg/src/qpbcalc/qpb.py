"""The complete-calculus layer on a quantum principal bundle.

Wraps a comodule algebra with calculi on the total space and the structure
Hopf algebra.  The extended coaction is computed multiplicatively from
per-letter tensor tables; well-definedness against every calculus relation
is the completeness check.  Vertical forms are A (x) Lambda with the
twisted product; horizontal and base forms are bidegree conditions.
"""

from __future__ import annotations

from .calculus import (
    DiffCalculus,
    Element,
    GradedTensor,
    cartan_maurer,
    lambda_element,
    left_tag,
    to_lambda,
)
from .comodule import BalancedTensor, ComoduleAlgebra, TranslationData, chi
from .linalg import in_span, kernel, rref, span_in_window
from .ncalg import NCPoly
from .report import CheckReport, timed
from .scalars import Scalar
from .tensors import TensorPoly


class QPBError(Exception):
    pass


def _vadd(d, k, c):
    c2 = d.get(k)
    c2 = c if c2 is None else c2 + c
    if c2.is_zero():
        d.pop(k, None)
    else:
        d[k] = c2


# -- complete coaction on the structure calculus (regular bundle over itself) --


def h_delta_letter_table(calc: DiffCalculus) -> dict:
    """Letter tables of the DGA extension of the comultiplication,
    Delta(letter) = sum Delta(a_i) d_x(Delta(b_i)) from the expansions."""
    hopf = calc.hopf
    legs = (calc, calc)
    out = {}
    for f in calc.letters:
        acc = GradedTensor.zero(legs)
        for a, b in calc.expansion[f]:
            da = hopf.coproduct(a)
            db = hopf.coproduct(b)
            left = GradedTensor.zero(legs)
            for (w1, w2), c in da.terms.items():
                _vadd(left.terms, (((w1), ()), ((w2), ())), c)
            right = GradedTensor.zero(legs)
            for (w1, w2), c in db.terms.items():
                _vadd(right.terms, (((w1), ()), ((w2), ())), c)
            acc = acc + left.wedge(right.d())
        out[f] = acc
    return out


def h_complete_delta(calc: DiffCalculus, x: Element,
                     _tables={}) -> GradedTensor:
    """The DGA morphism extension of the comultiplication on Omega(H)."""
    key = id(calc)
    tables = _tables.get(key)
    if tables is None:
        tables = h_delta_letter_table(calc)
        _tables[key] = tables
    hopf = calc.hopf
    legs = (calc, calc)
    out = GradedTensor.zero(legs)
    for (w, F), c in x.terms.items():
        acc = GradedTensor.zero(legs)
        for (w1, w2), c2 in hopf._delta_word(w).terms.items():
            _vadd(acc.terms, ((w1, ()), (w2, ())), c2)
        for f in F:
            acc = acc.wedge(tables[f])
        out = out + acc.scale(c)
    return out


# -- the bundle object ----------------------------------------------------------


class CompleteCalculus:
    def __init__(self, name, ca: ComoduleAlgebra, omega_A: DiffCalculus,
                 omega_H: DiffCalculus, delta_letter, td: TranslationData):
        self.name = name
        self.ca = ca
        self.omega_A = omega_A
        self.omega_H = omega_H
        self.delta_letter = dict(delta_letter)  # A-letter -> GradedTensor
        self.td = td
        self.legs = (omega_A, omega_H)
        self._delta_cache = {}
        self._lam_act_cache = {}
        self._lam_wedge_cache = {}
        self._lam_d_cache = {}
        self._cm_cache = {}

    # -- extended coaction

    def delta_bullet(self, x: Element) -> GradedTensor:
        out = GradedTensor.zero(self.legs)
        for (w, F), c in x.terms.items():
            out = out + self._delta_mono(w, F).scale(c)
        return out

    def _delta_mono(self, w, F) -> GradedTensor:
        key = (w, F)
        cached = self._delta_cache.get(key)
        if cached is not None:
            return cached
        acc = GradedTensor.zero(self.legs)
        for (w0, w1), c in self.ca._coact_word(w).terms.items():
            _vadd(acc.terms, ((w0, ()), (w1, ())), c)
        for f in F:
            acc = acc.wedge(self.delta_letter[f])
        self._delta_cache[key] = acc
        return acc

    def ver(self, k: int, l: int, x: Element) -> GradedTensor:
        """Bidegree-(k, l) component of the extended coaction."""
        return self.delta_bullet(x).component((k, l))

    # -- vertical projection and vertical forms

    def pi_v(self, x: Element) -> dict:
        """Vertical projection into A (x) Lambda, keyed (word, letter word)."""
        out = {}
        for key, c in self.delta_bullet(x).terms.items():
            (wa, fa), (wh, fh) = key
            if fa:
                continue
            _vadd(out, (wa, fh), c)
        return out

    def lambda_act(self, F, hword) -> dict:
        """theta_F <- h = S(h) theta_F h decomposed over the lambda basis."""
        key = (tuple(F), tuple(hword))
        cached = self._lam_act_cache.get(key)
        if cached is None:
            oh = self.omega_H
            hopf = oh.hopf
            inv = hopf.grouplike_inverse_word(tuple(hword))
            el = oh.product(oh.of_poly(NCPoly.word(inv)),
                            lambda_element(oh, F),
                            oh.of_poly(NCPoly.word(hword)))
            cached = to_lambda(oh, el)
            self._lam_act_cache[key] = cached
        return cached

    def lambda_wedge(self, F1, F2) -> dict:
        key = (tuple(F1), tuple(F2))
        cached = self._lam_wedge_cache.get(key)
        if cached is None:
            oh = self.omega_H
            cached = to_lambda(oh, oh.mul(lambda_element(oh, F1),
                                          lambda_element(oh, F2)))
            self._lam_wedge_cache[key] = cached
        return cached

    def lambda_d(self, F) -> dict:
        key = tuple(F)
        cached = self._lam_d_cache.get(key)
        if cached is None:
            oh = self.omega_H
            cached = to_lambda(oh, oh.d(lambda_element(oh, F)))
            self._lam_d_cache[key] = cached
        return cached

    def cm_lambda(self, hword) -> dict:
        """varpi(pi_eps(h)) over the lambda basis."""
        key = tuple(hword)
        cached = self._cm_cache.get(key)
        if cached is None:
            cached = to_lambda(self.omega_H,
                               cartan_maurer(self.omega_H, NCPoly.word(hword)))
            self._cm_cache[key] = cached
        return cached

    def ver_wedge(self, x: dict, y: dict) -> dict:
        """(a (x) theta)(a' (x) theta') = a a'_0 (x) (theta <- a'_1) theta'."""
        A = self.ca.A
        out = {}
        for (w1, F1), c1 in x.items():
            for (w2, F2), c2 in y.items():
                for (a0, a1), c3 in self.ca._coact_word(w2).terms.items():
                    acted = self.lambda_act(F1, a1)
                    for Fm, c4 in acted.items():
                        wed = self.lambda_wedge(Fm, F2)
                        for Ff, c5 in wed.items():
                            prod = A.normal_word(w1 + a0)
                            for wf, c6 in prod.terms.items():
                                _vadd(out, (wf, Ff),
                                      c1 * c2 * c3 * c4 * c5 * c6)
        return out

    def ver_d(self, x: dict) -> dict:
        """d_v(a (x) theta) = a (x) d theta + a_0 (x) varpi(pi(a_1)) theta."""
        out = {}
        for (w, F), c in x.items():
            for F2, c2 in self.lambda_d(F).items():
                _vadd(out, (w, F2), c * c2)
            for (a0, a1), c2 in self.ca._coact_word(w).terms.items():
                cm = self.cm_lambda(a1)
                for Fcm, c3 in cm.items():
                    for Ff, c4 in self.lambda_wedge(Fcm, F).items():
                        _vadd(out, (a0, Ff), c * c2 * c3 * c4)
        return out

    def delta_v(self, x: dict) -> dict:
        """Extended coaction on vertical forms, keyed
        ((word, lambda letters), (H word, H letters))."""
        oh = self.omega_H
        out = {}
        for (w, F), c in x.items():
            g = h_complete_delta(oh, lambda_element(oh, F))
            bucket = {}
            for ((w1, F1), (w2, F2)), c2 in g.terms.items():
                piece = bucket.setdefault((w2, F2), Element(oh))
                _vadd(piece.terms, (w1, F1), c2)
            for (w2, F2), piece in bucket.items():
                lam = to_lambda(oh, piece)
                for (a0, a1), c3 in self.ca._coact_word(w).terms.items():
                    tail = oh.pres.normal_word(a1 + w2)
                    for wt, c4 in tail.terms.items():
                        for Fl, c5 in lam.items():
                            _vadd(out, ((a0, Fl), (wt, F2)),
                                  c * c3 * c4 * c5)
        return out

    # -- membership predicates

    def is_horizontal(self, x: Element) -> bool:
        return all(l == 0 for _, l in self.delta_bullet(x).bidegrees())

    def is_base(self, x: Element) -> bool:
        want = GradedTensor.of(self.legs, x, self.omega_H.unit())
        return self.delta_bullet(x) == want

    # -- truncated bases

    def omega_basis(self, degree: int, max_word_len: int):
        for w in self.ca.A.irreducible_words(max_word_len):
            for F in self.omega_A.basis_forms(degree):
                yield (w, F)

    def element_of(self, w, F) -> Element:
        return Element(self.omega_A, {(tuple(w), tuple(F)): Scalar.one()})

    def base_form_basis(self, degree: int, max_word_len: int):
        """Basis of base forms of a given degree over the truncated words."""
        domain = list(self.omega_basis(degree, max_word_len))
        vectors = []
        for w, F in domain:
            x = self.element_of(w, F)
            diff = self.delta_bullet(x) - GradedTensor.of(
                self.legs, x, self.omega_H.unit())
            vectors.append(dict(diff.terms))
        out = []
        for combo in kernel(vectors):
            el = Element(self.omega_A)
            for i, c in combo.items():
                w, F = domain[i]
                _vadd(el.terms, (w, F), c)
            out.append(el)
        return out

    # -- suites --------------------------------------------------------------

    def completeness_check(self, max_word_len: int = 2,
                           example: str = "") -> CheckReport:
        oa, oh = self.omega_A, self.omega_H
        rep = CheckReport(
            suite="complete", example=example or self.name,
            truncation={"max_word_len": max_word_len},
            ref="extended coaction is a well-defined DGA morphism; "
                "vertical components decompose multiplicatively")
        with timed(rep):
            # right-action relations
            for f in oa.letters:
                for g in self.ca.A.generators:
                    lhs = self.delta_bullet(
                        oa.mul(oa.form(f), oa.of_poly(NCPoly.gen(g.name))))
                    rhs = self.delta_letter[f].wedge(
                        self._delta_mono((g.name,), ()))
                    rep.record(lhs == rhs, f"raction({f},{g.name})",
                               "equal", "mismatch",
                               ref="coaction respects the bimodule relations")
            # wedge straightening relations
            for f1 in oa.letters:
                for f2 in oa.letters:
                    lhs = self.delta_bullet(oa.mul(oa.form(f1), oa.form(f2)))
                    rhs = self.delta_letter[f1].wedge(self.delta_letter[f2])
                    rep.record(lhs == rhs, f"wedge({f1},{f2})",
                               "equal", "mismatch",
                               ref="coaction respects the wedge relations")
            # differential compatibility
            for g in self.ca.A.generators:
                lhs = self.delta_bullet(oa.d_gen[g.name])
                rhs = self._delta_mono((g.name,), ()).d()
                rep.record(lhs == rhs, f"d({g.name})", "equal", "mismatch",
                           ref="coaction intertwines the differentials")
            for f in oa.letters:
                lhs = self.delta_bullet(oa.d(oa.form(f)))
                rhs = self.delta_letter[f].d()
                rep.record(lhs == rhs, f"d({f})", "equal", "mismatch",
                           ref="coaction intertwines the differentials")
            # counitality and the coaction square on letters
            for f in oa.letters:
                x = oa.form(f)
                collapsed = Element(oa)
                for ((wa, fa), (wh, fh)), c in \
                        self.delta_bullet(x).terms.items():
                    if fh:
                        continue
                    e = oh.hopf.counit(NCPoly.word(wh))
                    _vadd(collapsed.terms, (wa, fa), c * e)
                rep.record(collapsed == x, f"counit({f})", str(x),
                           str(collapsed), ref="(id (x) eps) Delta = id")
                lhs3 = {}
                for ((wa, fa), (wh, fh)), c in \
                        self.delta_bullet(x).terms.items():
                    inner = self._delta_mono(wa, fa)
                    for key2, c2 in inner.terms.items():
                        _vadd(lhs3, key2 + ((wh, fh),), c * c2)
                rhs3 = {}
                for ((wa, fa), (wh, fh)), c in \
                        self.delta_bullet(x).terms.items():
                    inner = h_complete_delta(
                        oh, Element(oh, {(wh, fh): Scalar.one()}))
                    for key2, c2 in inner.terms.items():
                        _vadd(rhs3, ((wa, fa),) + key2, c * c2)
                rep.record(lhs3 == rhs3, f"coassoc({f})", "equal", "mismatch",
                           ref="coaction square commutes")
            # higher vertical maps decompose on letter pairs
            for f1 in oa.letters:
                for f2 in oa.letters:
                    prod = oa.mul(oa.form(f1), oa.form(f2))
                    full = self.delta_bullet(prod)
                    d1 = self.delta_letter[f1]
                    d2 = self.delta_letter[f2]
                    for k in range(0, 3):
                        for l in range(0, 3):
                            lhs = full.component((k, l))
                            rhs = GradedTensor.zero(self.legs)
                            for m in range(0, 2):
                                a = d1.component((m, 1 - m))
                                b = d2.component((k - m, l - (1 - m)))
                                rhs = rhs + a.wedge(b)
                            rep.record(lhs == rhs,
                                       f"ver{k}{l}({f1},{f2})",
                                       "decomposes", "mismatch",
                                       ref="vertical components of a product")
        return rep

    def atiyah_check(self, max_word_len: int = 3,
                     example: str = "") -> CheckReport:
        rep = CheckReport(
            suite="atiyah", example=example or self.name,
            truncation={"max_word_len": max_word_len},
            ref="0 -> hor1 -> Omega1 -> ver1 -> 0 exact at truncation")
        with timed(rep):
            domain = list(self.omega_basis(1, max_word_len))
            piv_vecs = []
            hor_vecs = []
            for w, F in domain:
                x = self.element_of(w, F)
                piv_vecs.append(self.pi_v(x))
                hor_vecs.append(dict(self.ver(0, 1, x).terms))
            ker_piv = kernel(piv_vecs)
            ker_hor = kernel(hor_vecs)
            rep.record(rref(ker_piv) == rref(ker_hor),
                       "ker pi_v = hor1",
                       f"dim {len(ker_hor)}", f"dim {len(ker_piv)}",
                       ref="kernel of the vertical projection")
            # surjectivity onto A (x) Lambda^1 at truncation
            wide = [self.pi_v(self.element_of(w, F))
                    for w, F in self.omega_basis(1, max_word_len + 1)]
            image = rref(wide)
            lam1 = self.omega_H.basis_forms(1)
            missing = []
            for w in self.ca.A.irreducible_words(max_word_len):
                for F in lam1:
                    if not in_span(image, {(w, F): Scalar.one()}):
                        missing.append((w, F))
            rep.record(not missing, "pi_v surjective",
                       "all targets reached",
                       f"missing {missing[:3]}",
                       ref="vertical projection onto the truncated target")
        return rep

    def bm_check(self, max_word_len: int = 3, degrees=(1, 2),
                 example: str = "") -> CheckReport:
        rep = CheckReport(
            suite="bm", example=example or self.name,
            truncation={"max_word_len": max_word_len,
                        "degrees": list(degrees)},
            ref="horizontal forms coincide with A Omega(B) A at truncation")
        with timed(rep):
            words = list(self.ca.A.irreducible_words(max_word_len + 2))
            for k in degrees:
                if k > self.omega_A.top_degree:
                    continue
                domain = list(self.omega_basis(k, max_word_len))
                hor_rows = []
                for w, F in domain:
                    x = self.element_of(w, F)
                    db = self.delta_bullet(x)
                    bad = GradedTensor(self.legs, {
                        key: c for key, c in db.terms.items()
                        if len(key[1][1]) > 0})
                    hor_rows.append((dict(bad.terms), (w, F)))
                combos = kernel([r for r, _ in hor_rows])
                hor_vecs = []
                for combo in combos:
                    vec = {}
                    for i, c in combo.items():
                        _vadd(vec, hor_rows[i][1], c)
                    hor_vecs.append(vec)
                base = self.base_form_basis(k, min(max_word_len, 2))
                rows = []
                for xi in base:
                    for w1 in words:
                        for w2 in words:
                            if len(w1) + len(w2) > max_word_len + 2:
                                continue
                            prod = self.omega_A.product(
                                self.omega_A.of_poly(NCPoly.word(w1)), xi,
                                self.omega_A.of_poly(NCPoly.word(w2)))
                            if not prod.is_zero():
                                rows.append(dict(prod.terms))
                window = lambda key: len(key[0]) <= max_word_len
                bm_span = span_in_window(rows, window)
                rep.record(rref(hor_vecs) == bm_span,
                           f"hor{k} = A Omega{k}(B) A",
                           f"span dim {len(bm_span)}",
                           f"span dim {len(rref(hor_vecs))}",
                           ref="windowed comparison of truncated spans")
        return rep

    def vertical_check(self, max_word_len: int = 3,
                       example: str = "") -> CheckReport:
        rep = CheckReport(
            suite="vertical", example=example or self.name,
            truncation={"max_word_len": max_word_len},
            ref="vertical forms: d_v squares to zero and the extended "
                "coaction intertwines pi_v")
        with timed(rep):
            lam_degrees = [k for k in range(self.omega_H.top_degree + 1)]
            for w in self.ca.A.irreducible_words(max_word_len):
                for k in lam_degrees:
                    for F in self.omega_H.basis_forms(k):
                        x = {(w, F): Scalar.one()}
                        got = self.ver_d(self.ver_d(x))
                        rep.record(not got, f"dd({'*'.join(w) or '1'},{F})",
                                   "0", str(got),
                                   ref="square of the vertical differential")
            # (pi_v (x) id) Delta = Delta_v pi_v on generators and letters
            items = [self.omega_A.of_poly(NCPoly.gen(g.name))
                     for g in self.ca.A.generators]
            items += [self.omega_A.form(f) for f in self.omega_A.letters]
            for x in items:
                lhs = {}
                for ((wa, fa), (wh, fh)), c in \
                        self.delta_bullet(x).terms.items():
                    piv = self.pi_v(self.element_of(wa, fa))
                    for vkey, c2 in piv.items():
                        _vadd(lhs, (vkey, (wh, fh)), c * c2)
                rhs = self.delta_v(self.pi_v(x))
                rep.record(lhs == rhs, f"diagram({x})", "commutes",
                           "mismatch", ref="compatibility of the coactions")
            # pi_v is a morphism of differential graded algebras
            for x in items:
                lhs = self.pi_v(self.omega_A.d(x))
                rhs = self.ver_d(self.pi_v(x))
                rep.record(lhs == rhs, f"pi_v-d({x})", "commutes",
                           "mismatch",
                           ref="vertical projection intertwines the "
                               "differentials")
                for y in items:
                    lhs2 = self.pi_v(self.omega_A.mul(x, y))
                    rhs2 = self.ver_wedge(self.pi_v(x), self.pi_v(y))
                    rep.record(lhs2 == rhs2, f"pi_v-mul({x};{y})",
                               "multiplicative", "mismatch",
                               ref="vertical projection respects products")
        return rep

    # -- connections -----------------------------------------------------------

    def connection_map(self, s: dict, x: Element) -> Element:
        """Pi(a d a') = a a'_0 s(varpi(pi(a'_1))), via letter expansions."""
        oa = self.omega_A
        out = Element(oa)
        for (w, F), c in x.terms.items():
            if len(F) != 1:
                raise QPBError("connection projector acts on 1-forms")
            f = F[0]
            for a, b in oa.expansion[f]:
                ab = oa.pres.multiply(NCPoly.word(w), a)
                for wb, cb in oa.pres.reduce(b).terms.items():
                    for (b0, b1), c2 in self.ca._coact_word(wb).terms.items():
                        cm = self.cm_lambda(b1)
                        for Fl, c3 in cm.items():
                            piece = oa.mul(oa.of_poly(
                                oa.pres.multiply(ab, NCPoly.word(b0))), s[Fl])
                            out = out + piece.scale(c * cb * c2 * c3)
        return out

    def connection_check(self, s: dict, max_word_len: int = 3,
                         example: str = "") -> CheckReport:
        oa, oh = self.omega_A, self.omega_H
        rep = CheckReport(
            suite="connection", example=example or self.name,
            truncation={"max_word_len": max_word_len},
            ref="section property, colinearity, induced projector, "
                "strongness")
        with timed(rep):
            one = Scalar.one()
            for F in oh.basis_forms(1):
                got = self.pi_v(s[F])
                rep.record(got == {((), F): one}, f"section({F})",
                           f"1 (x) theta_{F}", str(got),
                           ref="pi_v after the connection form is the unit")
                gt = self.delta_bullet(s[F]).component((1, 0))
                want = GradedTensor.of(self.legs, s[F], oh.unit())
                rep.record(gt == want, f"colinear({F})",
                           "s(theta) (x) 1", str(gt),
                           ref="adjoint colinearity (trivial adjoint tags)")
            # induced projector: idempotent with kernel hor1
            domain = list(self.omega_basis(1, max_word_len))
            images = []
            for w, F in domain:
                x = self.element_of(w, F)
                px = self.connection_map(s, x)
                ppx = self.connection_map(s, px)
                rep.record(ppx == px, f"idempotent({'*'.join(w) or '1'},{F})",
                           "Pi Pi = Pi", "mismatch",
                           ref="projector property")
                images.append(dict((px - x).terms))  # rows of Pi - id
            ker_pi = kernel([dict(self.connection_map(
                s, self.element_of(w, F)).terms) for w, F in domain])
            hor_vecs = kernel([dict(self.ver(0, 1, self.element_of(
                w, F)).terms) for w, F in domain])
            rep.record(rref(ker_pi) == rref(hor_vecs), "ker Pi = hor1",
                       f"dim {len(hor_vecs)}", f"dim {len(ker_pi)}",
                       ref="kernel comparison at truncation")
            # strongness: (id - Pi)(d a) inside Omega1(B) A
            base1 = self.base_form_basis(1, min(max_word_len, 2))
            rows = []
            words = list(self.ca.A.irreducible_words(max_word_len))
            for xi in base1:
                for w2 in words:
                    prod = oa.mul(xi, oa.of_poly(NCPoly.word(w2)))
                    if not prod.is_zero():
                        rows.append(dict(prod.terms))
            span = rref(rows)
            for w in words:
                if not w:
                    continue
                da = oa.d_poly(NCPoly.word(w))
                resid = da - self.connection_map(s, da)
                ok = in_span(span, dict(resid.terms))
                rep.record(ok, f"strong({'*'.join(w)})",
                           "(id - Pi) d a in Omega1(B) A", "outside span",
                           ref="strongness of the induced connection")
        return rep

    def strong_connection_check(self, ell, max_n: int = 3,
                                example: str = "") -> CheckReport:
        """ell: callable on structure basis words returning raw A (x) A."""
        ca = self.ca
        A, H = ca.A, ca.H
        rep = CheckReport(
            suite="strong", example=example or self.name,
            truncation={"max_n": max_n},
            ref="unitality, splitting of the canonical surjection, "
                "colinearity on both legs, translation-map agreement")
        with timed(rep):
            rep.record(ell(()) == TensorPoly.unit((A, A)), "ell(1)",
                       "1 (x) 1", str(ell(())),
                       ref="unital normalization")
            for w in H.base.irreducible_words(max_n):
                if not w:
                    continue
                name = "*".join(w)
                lw = ell(w)
                got = chi(ca, lw)
                want = TensorPoly.from_polys((A, H.base), NCPoly.one(),
                                             NCPoly.word(w))
                rep.record(got == want, f"splitting({name})", str(want),
                           str(got), ref="chi' ell = 1 (x) h")
                legsAAH = (A, A, H.base)
                lhs = TensorPoly.zero(legsAAH)
                for (x1, x2), c in lw.terms.items():
                    for (y0, y1), c2 in ca._coact_word(x2).terms.items():
                        lhs = lhs + TensorPoly.from_polys(
                            legsAAH, NCPoly.word(x1), NCPoly.word(y0),
                            NCPoly.word(y1)).scale(c * c2)
                rhs = TensorPoly.zero(legsAAH)
                for (h1, h2), c in H._delta_word(w).terms.items():
                    for (x1, x2), c2 in ell(h1).terms.items():
                        rhs = rhs + TensorPoly.from_polys(
                            legsAAH, NCPoly.word(x1), NCPoly.word(x2),
                            NCPoly.word(h2)).scale(c * c2)
                rep.record(lhs == rhs, f"right-colinear({name})",
                           "equal raw tensors", "mismatch",
                           ref="coaction on the second leg")
                legsAHA = (A, H.base, A)
                lhs2 = TensorPoly.zero(legsAHA)
                for (x1, x2), c in lw.terms.items():
                    for (y0, y1), c2 in ca._coact_word(x1).terms.items():
                        lhs2 = lhs2 + TensorPoly.from_polys(
                            legsAHA, NCPoly.word(y0), NCPoly.word(y1),
                            NCPoly.word(x2)).scale(c * c2)
                rhs2 = TensorPoly.zero(legsAHA)
                for (h1, h2), c in H._delta_word(w).terms.items():
                    s = H.antipode(NCPoly.word(h1))
                    for (x1, x2), c2 in ell(h2).terms.items():
                        for ws, c3 in s.terms.items():
                            rhs2 = rhs2 + TensorPoly.from_polys(
                                legsAHA, NCPoly.word(x1), NCPoly.word(ws),
                                NCPoly.word(x2)).scale(c * c2 * c3)
                rep.record(lhs2 == rhs2, f"left-colinear({name})",
                           "equal raw tensors", "mismatch",
                           ref="antipode twist on the first leg")
                lhs3 = BalancedTensor(ca, raw=lw)
                rhs3 = BalancedTensor(ca, raw=self.td.tau_word(w))
                rep.record(lhs3 == rhs3, f"tau-agreement({name})",
                           "pi_B ell = tau", "mismatch",
                           ref="projection to the balanced tensor product")
        return rep

    # -- structure-calculus decomposition ---------------------------------------

    def xi_decomposition(self, x: Element) -> dict:
        """Omega(H) -> H (x) Lambda, keyed (word, lambda letters)."""
        oh = self.omega_H
        if x.calc is not oh:
            raise QPBError("xi acts on structure-calculus elements")
        out = {}
        for (w, F), c in x.terms.items():
            if F:
                tag = oh.pres.normal_word(w + left_tag(oh, F))
            else:
                tag = oh.pres.normal_word(w)
            for wt, c2 in tag.terms.items():
                _vadd(out, (wt, F), c * c2)
        return out

    def xi_inverse(self, pairs: dict) -> Element:
        oh = self.omega_H
        out = Element(oh)
        for (w, F), c in pairs.items():
            out = out + oh.mul(oh.of_poly(NCPoly.word(w)),
                               lambda_element(oh, F)).scale(c)
        return out
