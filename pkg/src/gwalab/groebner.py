"""Buchberger's algorithm over Q[z1,z2] with cofactor tracking.

Monomial order: graded reverse lexicographic with z1 > z2 (in two variables:
higher total degree wins, ties broken by smaller z2-exponent).  Every basis
element carries an exact expression as a combination of the input
generators, so ideal-membership answers come with certificates.  The
application is the smoothness criterion: W = B(sigma, phi) is homologically
smooth exactly when 1 lies in (phi, d phi/dz1, d phi/dz2), and a SMOOTH
verdict must ship cofactors (alpha, beta1, beta2) with
alpha*phi + beta1*phi1 + beta2*phi2 = 1.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly2, as_fraction

ORDER_TAG = "grevlex(z1>z2)"


class EmptyInput(Exception):
    pass


def grevlex_key(exp):
    return (exp[0] + exp[1], exp[0])


def leading_term(p: Poly2):
    """(exponent, coefficient) of the grevlex-leading term; None for 0."""
    if p.is_zero():
        return None
    exp = max((e for e, _ in p.items()), key=grevlex_key)
    return exp, p.coeff(*exp)


def _divides(e1, e2) -> bool:
    return e1[0] <= e2[0] and e1[1] <= e2[1]


def _mono_quot(e2, e1):
    return (e2[0] - e1[0], e2[1] - e1[1])


class _Tracked:
    """A polynomial together with its expression over the inputs."""

    __slots__ = ("poly", "cof")

    def __init__(self, poly: Poly2, cof):
        self.poly = poly
        self.cof = list(cof)

    def scale(self, c):
        return _Tracked(self.poly.scale(c), [q.scale(c) for q in self.cof])


def _reduce(item: _Tracked, basis) -> _Tracked:
    """Fully reduce item.poly modulo the basis, updating cofactors."""
    p = item.poly
    cof = list(item.cof)
    out = Poly2.zero()
    while not p.is_zero():
        exp, c = leading_term(p)
        hit = None
        for g in basis:
            lt = leading_term(g.poly)
            if lt is not None and _divides(lt[0], exp):
                hit = (g, lt)
                break
        if hit is None:
            mono = Poly2.monomial(*exp, c)
            out = out + mono
            p = p - mono
            continue
        g, (gexp, gc) = hit
        factor = Poly2.monomial(*_mono_quot(exp, gexp), c / gc)
        p = p - factor * g.poly
        for k in range(len(cof)):
            cof[k] = cof[k] - factor * g.cof[k]
    # invariant: whenever item.poly was a combination of the inputs with
    # coefficients item.cof, the remainder 'out' equals sum cof[k]*inputs[k]
    return _Tracked(out, cof)


class GBasis:
    """A reduced Groebner basis with cofactor matrix over the inputs."""

    def __init__(self, generators, cofactors, inputs):
        self.generators = generators      # list[Poly2], monic, inter-reduced
        self.cofactors = cofactors        # cofactors[k][i]: coeff of inputs[i]
        self.inputs = inputs
        self.order = ORDER_TAG

    def verify_cofactors(self) -> bool:
        for g, row in zip(self.generators, self.cofactors):
            acc = Poly2.zero()
            for q, f in zip(row, self.inputs):
                acc = acc + q * f
            if acc != g:
                return False
        return True

    def reduce(self, p: Poly2) -> Poly2:
        """Normal form of p modulo the basis."""
        item = _reduce(_Tracked(p, [Poly2.zero()] * len(self.inputs)),
                       [_Tracked(g, row) for g, row in
                        zip(self.generators, self.cofactors)])
        return item.poly

    def contains(self, p: Poly2) -> bool:
        return self.reduce(p).is_zero()

    def is_unit_ideal(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_one()


def s_polynomial(g1: _Tracked, g2: _Tracked) -> _Tracked:
    (e1, c1) = leading_term(g1.poly)
    (e2, c2) = leading_term(g2.poly)
    lcm = (max(e1[0], e2[0]), max(e1[1], e2[1]))
    m1 = Poly2.monomial(*_mono_quot(lcm, e1), Fraction(1) / c1)
    m2 = Poly2.monomial(*_mono_quot(lcm, e2), Fraction(1) / c2)
    poly = m1 * g1.poly - m2 * g2.poly
    cof = [m1 * a - m2 * b for a, b in zip(g1.cof, g2.cof)]
    return _Tracked(poly, cof)


def buchberger(gens) -> GBasis:
    """Reduced Groebner basis of (gens) with exact cofactors."""
    inputs = list(gens)
    basis = []
    for i, g in enumerate(inputs):
        if g.is_zero():
            continue
        cof = [Poly2.zero()] * len(inputs)
        cof[i] = Poly2.one()
        basis.append(_Tracked(g, cof))
    if not basis:
        raise EmptyInput("all generators are zero")

    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop(0)
        e1 = leading_term(basis[i].poly)[0]
        e2 = leading_term(basis[j].poly)[0]
        # product criterion: coprime leading monomials reduce to zero
        if min(e1[0], e2[0]) == 0 and min(e1[1], e2[1]) == 0:
            continue
        s = _reduce(s_polynomial(basis[i], basis[j]), basis)
        if s.poly.is_zero():
            continue
        basis.append(s)
        k = len(basis) - 1
        pairs.extend((t, k) for t in range(k))

    # minimalize: drop members whose lead is divisible by another lead
    basis.sort(key=lambda g: grevlex_key(leading_term(g.poly)[0]))
    minimal = []
    for g in basis:
        e = leading_term(g.poly)[0]
        if any(_divides(leading_term(h.poly)[0], e) for h in minimal):
            continue
        minimal.append(g)

    # inter-reduce tails and normalize to monic
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = _reduce(g, others) if others else g
        if r.poly.is_zero():
            continue
        _, lc = leading_term(r.poly)
        reduced.append(r.scale(Fraction(1) / lc))
    reduced.sort(key=lambda g: grevlex_key(leading_term(g.poly)[0]))

    return GBasis([g.poly for g in reduced], [g.cof for g in reduced], inputs)


class Certificate:
    """Cofactors (alpha, beta1, beta2) with alpha*phi + beta1*phi1 + beta2*phi2 = 1."""

    __slots__ = ("alpha", "beta1", "beta2")

    def __init__(self, alpha: Poly2, beta1: Poly2, beta2: Poly2):
        self.alpha = alpha
        self.beta1 = beta1
        self.beta2 = beta2

    def verify(self, phi: Poly2) -> bool:
        combo = self.alpha * phi + self.beta1 * phi.partial(1) \
            + self.beta2 * phi.partial(2)
        return combo.is_one()

    def to_dict(self):
        return {"alpha": str(self.alpha), "beta1": str(self.beta1),
                "beta2": str(self.beta2)}

    def __repr__(self):
        return "Certificate(alpha=%s, beta1=%s, beta2=%s)" % (
            self.alpha, self.beta1, self.beta2)


def contains_one(gens):
    """Decide 1 in (gens); on success return verified unit cofactors.

    Returns (True, cofactor_row) or (False, None).  The cofactor row is
    re-verified by direct expansion before being returned.
    """
    try:
        gb = buchberger(gens)
    except EmptyInput:
        return False, None
    if not gb.is_unit_ideal():
        return False, None
    row = gb.cofactors[0]
    acc = Poly2.zero()
    for q, f in zip(row, gens):
        acc = acc + q * f
    if not acc.is_one():
        raise AssertionError("cofactor bookkeeping produced an invalid certificate")
    return True, row


def rational_common_zero(polys, bound: int = 8):
    """Best-effort search for a common rational zero on a bounded grid.

    Scans coordinates num/den with |num| <= bound, 1 <= den <= bound.
    Returns (lam1, lam2) or None; absence proves nothing.
    """
    values = sorted({Fraction(n, d)
                     for d in range(1, bound + 1)
                     for n in range(-bound, bound + 1)})
    for a in values:
        for b in values:
            if all(p.eval_at(a, b) == 0 for p in polys):
                return (a, b)
    return None


class SmoothnessVerdict:
    """Outcome of the smoothness criterion for W = B(sigma, phi)."""

    def __init__(self, smooth: bool, reason: str, certificate=None, common_zero=None):
        self.smooth = smooth
        self.reason = reason          # "certificate" | "zero-phi" | "proper-ideal"
        self.certificate = certificate
        self.common_zero = common_zero

    def to_dict(self):
        out = {"smooth": self.smooth, "reason": self.reason}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.common_zero is not None:
            out["common_zero"] = [str(v) for v in self.common_zero]
        return out

    def __repr__(self):
        return "SMOOTH(%s)" % self.certificate if self.smooth \
            else "NOT_SMOOTH(%s)" % self.reason


def smoothness_test(W) -> SmoothnessVerdict:
    """Apply the criterion: smooth iff 1 in (phi, phi_1, phi_2).

    Accepts a GwaAlgebra (only its phi matters; the verdict is independent
    of sigma).  phi = 0 short-circuits to NOT_SMOOTH.
    """
    phi = W.phi
    if phi.is_zero():
        return SmoothnessVerdict(False, "zero-phi")
    gens = [phi, phi.partial(1), phi.partial(2)]
    ok, row = contains_one(gens)
    if ok:
        cert = Certificate(row[0], row[1], row[2])
        if not cert.verify(phi):
            raise AssertionError("certificate failed re-expansion")
        return SmoothnessVerdict(True, "certificate", certificate=cert)
    zero = rational_common_zero(gens)
    return SmoothnessVerdict(False, "proper-ideal", common_zero=zero)
