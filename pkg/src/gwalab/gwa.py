"""Normal-form arithmetic in the generalized Weyl algebra W = B(sigma, phi).

W is generated over B = Q[z1,z2] by x and y subject to

    x b = sigma(b) x,   y b = sigma^{-1}(b) y,   y x = phi,   x y = sigma(phi).

W is a free left B-module on { y^i (i>=1), 1, x^j (j>=1) }; an element is
stored as a map from the Z-degree (|x| = 1, |y| = -1) to its B-coefficient.
Mixed powers x^j y^i and y^i x^j reduce by closed-form products of
sigma-twists of phi; the closed forms are cross-checked against single-step
rewriting in the test suite.
"""

from __future__ import annotations

from fractions import Fraction

from .autword import AutWord
from .poly import Poly2, as_fraction


class GwaElem:
    """Element of W in normal form: degree n -> coefficient in B.

    Degree n > 0 holds the coefficient of x^n, n < 0 that of y^(-n), and
    n = 0 the B-part.
    """

    __slots__ = ("alg", "_t")

    def __init__(self, alg: "GwaAlgebra", terms=None):
        self.alg = alg
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for n, p in items:
                if p.is_zero():
                    continue
                n = int(n)
                acc = t.get(n)
                if acc is None:
                    t[n] = p
                else:
                    acc = acc + p
                    if acc.is_zero():
                        del t[n]
                    else:
                        t[n] = acc
        self._t = t

    # -- structure ---------------------------------------------------------

    def coeff(self, n: int) -> Poly2:
        return self._t.get(n, Poly2.zero())

    def degrees(self):
        return sorted(self._t)

    def items(self):
        return self._t.items()

    def sorted_items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    @property
    def y_part(self):
        """Map i >= 1 -> coefficient of y^i."""
        return {-n: p for n, p in self._t.items() if n < 0}

    @property
    def mid(self) -> Poly2:
        return self.coeff(0)

    @property
    def x_part(self):
        """Map j >= 1 -> coefficient of x^j."""
        return {n: p for n, p in self._t.items() if n > 0}

    def graded_component(self, n: int) -> "GwaElem":
        """The degree-n piece under |x| = 1, |y| = -1."""
        p = self._t.get(n)
        return GwaElem(self.alg, {} if p is None else {n: p})

    # -- linear operations ---------------------------------------------------

    def _check(self, other):
        if self.alg is not other.alg:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, GwaElem):
            return NotImplemented
        self._check(other)
        t = dict(self._t)
        for n, p in other._t.items():
            acc = t.get(n)
            if acc is None:
                t[n] = p
            else:
                acc = acc + p
                if acc.is_zero():
                    del t[n]
                else:
                    t[n] = acc
        out = GwaElem.__new__(GwaElem)
        out.alg = self.alg
        out._t = t
        return out

    def __neg__(self):
        out = GwaElem.__new__(GwaElem)
        out.alg = self.alg
        out._t = {n: -p for n, p in self._t.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, GwaElem):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GwaElem":
        c = as_fraction(c)
        if not c:
            return GwaElem(self.alg)
        out = GwaElem.__new__(GwaElem)
        out.alg = self.alg
        out._t = {n: p.scale(c) for n, p in self._t.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GwaElem):
            return NotImplemented
        self._check(other)
        return self.alg.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GwaElem):
            return NotImplemented
        return self.alg is other.alg and self._t == other._t

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for n, p in self.sorted_items():
            if n == 0:
                parts.append("(%s)" % p)
            elif n > 0:
                parts.append("(%s)*x^%d" % (p, n) if n > 1 else "(%s)*x" % p)
            else:
                parts.append("(%s)*y^%d" % (p, -n) if n < -1 else "(%s)*y" % p)
        return " + ".join(parts)


class GwaAlgebra:
    """The generalized Weyl algebra B(sigma, phi) over B = Q[z1,z2].

    phi = 0 is a legal algebra; consumers that need phi regular (the free
    resolution machinery) must check ``phi_is_zero`` and refuse.
    """

    def __init__(self, sigma: AutWord, phi: Poly2):
        self.sigma = sigma
        self.phi = phi
        self.sigma_phi = sigma.apply(phi, 1)
        self.phi_is_zero = phi.is_zero()
        self._rho_cache = {}

    # -- element constructors ----------------------------------------------

    def zero(self) -> GwaElem:
        return GwaElem(self)

    def one(self) -> GwaElem:
        return GwaElem(self, {0: Poly2.one()})

    def from_poly(self, p: Poly2) -> GwaElem:
        return GwaElem(self, {0: p})

    def basis(self, n: int, coeff: Poly2 | None = None) -> GwaElem:
        """coeff * x^n (n > 0), coeff * y^(-n) (n < 0), or coeff itself."""
        return GwaElem(self, {n: Poly2.one() if coeff is None else coeff})

    def x(self) -> GwaElem:
        return self.basis(1)

    def y(self) -> GwaElem:
        return self.basis(-1)

    def z(self, axis: int) -> GwaElem:
        return self.from_poly(Poly2.variable(axis))

    def generator(self, name: str) -> GwaElem:
        table = {"x": self.x, "y": self.y}
        if name in table:
            return table[name]()
        if name == "z1":
            return self.z(1)
        if name == "z2":
            return self.z(2)
        raise KeyError(name)

    # -- twisting and mixed-power reduction -----------------------------------

    def twist(self, p: Poly2, n: int) -> Poly2:
        """sigma^n(p)."""
        return self.sigma.apply(p, n)

    def rho(self, m: int, n: int) -> Poly2:
        """The B-coefficient in xi_m * xi_n = rho(m, n) * xi_{m+n}.

        Here xi_k is x^k (k > 0), 1 (k = 0) or y^(-k) (k < 0).  Crossing
        powers annihilate pairwise through yx = phi, xy = sigma(phi):

            x^j y^i = prod_{k=0}^{min(i,j)-1} sigma^(j-k)(phi) * xi_{j-i}
            y^i x^j = prod_{k=0}^{min(i,j)-1} sigma^(1-i+k)(phi) * xi_{j-i}
        """
        if m == 0 or n == 0 or (m > 0) == (n > 0):
            return Poly2.one()
        key = (m, n)
        cached = self._rho_cache.get(key)
        if cached is not None:
            return cached
        out = Poly2.one()
        if m > 0:
            j, i = m, -n
            for k in range(min(i, j)):
                out = out * self.twist(self.phi, j - k)
        else:
            i, j = -m, n
            for k in range(min(i, j)):
                out = out * self.twist(self.phi, 1 - i + k)
        self._rho_cache[key] = out
        return out

    def mul(self, u: GwaElem, v: GwaElem) -> GwaElem:
        """Normal form of u * v."""
        acc = {}
        for m, p in u.items():
            for n, q in v.items():
                c = p * self.twist(q, m) * self.rho(m, n)
                if c.is_zero():
                    continue
                d = m + n
                prev = acc.get(d)
                if prev is None:
                    acc[d] = c
                else:
                    prev = prev + c
                    if prev.is_zero():
                        del acc[d]
                    else:
                        acc[d] = prev
        out = GwaElem.__new__(GwaElem)
        out.alg = self
        out._t = acc
        return out

    def product(self, *elems: GwaElem) -> GwaElem:
        out = self.one()
        for e in elems:
            out = self.mul(out, e)
        return out

    # -- Nakayama twist -------------------------------------------------------

    def nakayama_map(self) -> "NakayamaMap":
        return NakayamaMap(self.sigma.jacobian())

    def nakayama_apply(self, w: GwaElem) -> GwaElem:
        return self.nakayama_map().apply(w)

    def __repr__(self):
        return "GwaAlgebra(sigma=%r, phi=%s)" % (self.sigma, self.phi)


class NakayamaMap:
    """The algebra automorphism x -> J x, y -> J^{-1} y, z_i -> z_i."""

    __slots__ = ("J",)

    def __init__(self, J: Fraction):
        J = as_fraction(J)
        if not J:
            raise ValueError("Nakayama twist needs J != 0")
        self.J = J

    def apply(self, w: GwaElem) -> GwaElem:
        out = GwaElem.__new__(GwaElem)
        out.alg = w.alg
        out._t = {n: p.scale(self.J**n) for n, p in w.items()}
        return out

    def is_identity(self) -> bool:
        return self.J == 1

    def images(self):
        """Printable images of the four generators."""
        return {"x": "%s*x" % self.J if self.J != 1 else "x",
                "y": "%s*y" % (1 / self.J) if self.J != 1 else "y",
                "z1": "z1", "z2": "z2"}
