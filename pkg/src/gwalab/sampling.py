"""Seeded random generators for property suites.

All randomized checks draw from one ``random.Random`` stream, so a fixed
seed reproduces every report byte for byte.  Bounds are kept small enough
for seconds-scale runs but large enough to be non-degenerate.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .autword import Affine, AutWord, Elementary
from .cohomology import Cochain3, E12Canonical
from .envelope import EnvElem
from .gwa import GwaAlgebra, GwaElem
from .poly import Poly2, Poly4, tensor


class Sampler:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def fraction(self, height: int = 5, nonzero: bool = False) -> Fraction:
        while True:
            num = self.rng.randint(-height, height)
            den = self.rng.randint(1, height)
            v = Fraction(num, den)
            if v or not nonzero:
                return v

    def poly2(self, max_degree: int = 3, max_terms: int = 4,
              height: int = 5, nonzero: bool = False) -> Poly2:
        while True:
            terms = {}
            for _ in range(self.rng.randint(1, max_terms)):
                i = self.rng.randint(0, max_degree)
                j = self.rng.randint(0, max_degree - i)
                c = self.fraction(height)
                if c:
                    terms[(i, j)] = terms.get((i, j), Fraction(0)) + c
            p = Poly2(terms)
            if not (nonzero and p.is_zero()):
                return p

    def poly_in_one_var(self, axis: int, max_degree: int = 2,
                        height: int = 3) -> Poly2:
        """A polynomial avoiding z_axis (shift material for elementaries)."""
        other = 2 if axis == 1 else 1
        terms = {}
        for _ in range(self.rng.randint(1, 2)):
            d = self.rng.randint(0, max_degree)
            exp = (0, d) if other == 2 else (d, 0)
            terms[exp] = terms.get(exp, Fraction(0)) + self.fraction(height)
        return Poly2(terms)

    def generator(self, height: int = 3):
        kind = self.rng.choice(("elem1", "elem2", "affine"))
        if kind == "elem1":
            return Elementary(1, self.poly_in_one_var(1, height=height))
        if kind == "elem2":
            return Elementary(2, self.poly_in_one_var(2, height=height))
        while True:
            a, b = self.fraction(height), self.fraction(height)
            c, d = self.fraction(height), self.fraction(height)
            if a * d - b * c:
                break
        e, f = self.fraction(height), self.fraction(height)
        return Affine(((a, b), (c, d)), (e, f))

    def autword(self, max_len: int = 3, height: int = 3) -> AutWord:
        n = self.rng.randint(0, max_len)
        return AutWord([self.generator(height) for _ in range(n)])

    def algebra(self, max_len: int = 3, phi_degree: int = 3,
                height: int = 3, phi_nonzero: bool = True) -> GwaAlgebra:
        sigma = self.autword(max_len, height)
        phi = self.poly2(max_degree=phi_degree, height=height,
                         nonzero=phi_nonzero)
        return GwaAlgebra(sigma, phi)

    def gwa_elem(self, W: GwaAlgebra, max_exp: int = 3, degree: int = 2,
                 height: int = 3, max_parts: int = 3) -> GwaElem:
        terms = {}
        for _ in range(self.rng.randint(1, max_parts)):
            n = self.rng.randint(-max_exp, max_exp)
            p = self.poly2(max_degree=degree, height=height)
            if not p.is_zero():
                terms[n] = terms.get(n, Poly2.zero()) + p
        return GwaElem(W, terms)

    def env_elem(self, W: GwaAlgebra, max_exp: int = 3, degree: int = 2,
                 height: int = 3, max_terms: int = 2) -> EnvElem:
        terms = {}
        for _ in range(self.rng.randint(1, max_terms)):
            m = self.rng.randint(-max_exp, max_exp)
            n = self.rng.randint(-max_exp, max_exp)
            c = tensor(self.poly2(max_degree=degree, height=height),
                       self.poly2(max_degree=degree, height=height))
            prev = terms.get((m, n), Poly4.zero())
            terms[(m, n)] = prev + c
        return EnvElem(W, terms)

    def cochain3(self, W: GwaAlgebra, max_exp: int = 3, degree: int = 2,
                 height: int = 2) -> Cochain3:
        def e():
            return self.env_elem(W, max_exp, degree, height)
        return Cochain3((e(), e()), (e(), e(), e(), e()), (e(), e()))

    def canonical_class(self, W: GwaAlgebra, max_index: int = 3,
                        degree: int = 2, height: int = 3) -> E12Canonical:
        c1 = {}
        c2 = {}
        for _ in range(self.rng.randint(1, 3)):
            i = self.rng.randint(1, max_index)
            fam = self.rng.choice((c1, c2))
            p = self.poly2(max_degree=degree, height=height)
            if not p.is_zero():
                fam[i] = fam.get(i, Poly2.zero()) + p
        return E12Canonical(c1, c2)
