"""Polynomial automorphisms of Q[z1,z2] as words in tame generators.

An automorphism is given as a composable word of *elementary* maps
(z_k -> z_k + shift(z_other), the other variable fixed) and invertible
*affine* maps.  Working with generator words keeps inversion exact and
guarantees the input really is an automorphism; the Jacobian determinant of
every word is a nonzero constant.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly2, as_fraction


class Elementary:
    """z_axis -> z_axis + shift, where shift involves only the other variable."""

    __slots__ = ("axis", "shift")

    def __init__(self, axis: int, shift: Poly2):
        if axis not in (1, 2):
            raise ValueError("axis must be 1 or 2")
        if shift.degree_in(axis) > 0:
            raise ValueError(
                "elementary shift on axis %d must not involve z%d" % (axis, axis))
        self.axis = axis
        self.shift = shift

    def images(self):
        if self.axis == 1:
            return (Poly2.variable(1) + self.shift, Poly2.variable(2))
        return (Poly2.variable(1), Poly2.variable(2) + self.shift)

    def inverse(self) -> "Elementary":
        return Elementary(self.axis, -self.shift)

    def jacobian(self) -> Fraction:
        return Fraction(1)

    def __eq__(self, other):
        return (isinstance(other, Elementary)
                and self.axis == other.axis and self.shift == other.shift)

    def __repr__(self):
        return "elem%d(%s)" % (self.axis, self.shift)


class Affine:
    """z -> A z + b with A an invertible 2x2 rational matrix."""

    __slots__ = ("matrix", "translation", "_det")

    def __init__(self, matrix, translation=(0, 0)):
        (a, b), (c, d) = matrix
        a, b, c, d = (as_fraction(v) for v in (a, b, c, d))
        det = a * d - b * c
        if not det:
            raise ValueError("affine matrix is singular")
        self.matrix = ((a, b), (c, d))
        self.translation = (as_fraction(translation[0]), as_fraction(translation[1]))
        self._det = det

    def images(self):
        (a, b), (c, d) = self.matrix
        e, f = self.translation
        z1, z2 = Poly2.variable(1), Poly2.variable(2)
        f1 = z1.scale(a) + z2.scale(b) + Poly2.const(e)
        f2 = z1.scale(c) + z2.scale(d) + Poly2.const(f)
        return (f1, f2)

    def inverse(self) -> "Affine":
        (a, b), (c, d) = self.matrix
        e, f = self.translation
        det = self._det
        inv = ((d / det, -b / det), (-c / det, a / det))
        # solve A^{-1}(z - t): translation part is -A^{-1} t
        t = (-(inv[0][0] * e + inv[0][1] * f), -(inv[1][0] * e + inv[1][1] * f))
        return Affine(inv, t)

    def jacobian(self) -> Fraction:
        return self._det

    def __eq__(self, other):
        return (isinstance(other, Affine) and self.matrix == other.matrix
                and self.translation == other.translation)

    def __repr__(self):
        (a, b), (c, d) = self.matrix
        e, f = self.translation
        return "affine([[%s,%s],[%s,%s]],[%s,%s])" % (a, b, c, d, e, f)


class AutWord:
    """A word of generators; ``factors[-1]`` is applied first.

    Images of powers sigma^n(z_i) are memoised, as generalized Weyl algebra
    arithmetic twists by arbitrary powers of sigma.  The caches are only
    mutated under the GIL via single dict assignments, so sharing a warmed-up
    word between threads is safe.
    """

    __slots__ = ("factors", "_images", "_jac", "_pow_cache")

    def __init__(self, factors=()):
        self.factors = tuple(factors)
        jac = Fraction(1)
        for g in self.factors:
            jac *= g.jacobian()
        self._jac = jac
        z1, z2 = Poly2.variable(1), Poly2.variable(2)
        self._images = {0: (z1, z2)}
        self._pow_cache = {}

    @classmethod
    def identity(cls) -> "AutWord":
        return cls(())

    def is_identity_word(self) -> bool:
        return not self.factors

    @property
    def f1(self) -> Poly2:
        return self.images(1)[0]

    @property
    def f2(self) -> Poly2:
        return self.images(1)[1]

    def jacobian(self) -> Fraction:
        return self._jac

    def inverse(self) -> "AutWord":
        return AutWord(tuple(g.inverse() for g in reversed(self.factors)))

    def compose(self, other: "AutWord") -> "AutWord":
        """The word for self o other (other applied first)."""
        return AutWord(self.factors + other.factors)

    def images(self, n: int):
        """(sigma^n(z1), sigma^n(z2)), for any integer n."""
        cached = self._images.get(n)
        if cached is not None:
            return cached
        if n > 0:
            prev = self.images(n - 1)
            step = self._base_images(+1)
        else:
            prev = self.images(n + 1)
            step = self._base_images(-1)
        img = (prev[0].subst(step[0], step[1]), prev[1].subst(step[0], step[1]))
        self._images[n] = img
        return img

    def _base_images(self, direction: int):
        key = ("base", direction)
        cached = self._pow_cache.get(key)
        if cached is not None:
            return cached
        factors = self.factors if direction > 0 else tuple(
            g.inverse() for g in reversed(self.factors))
        z1, z2 = Poly2.variable(1), Poly2.variable(2)
        f1, f2 = z1, z2
        for g in reversed(factors):
            g1, g2 = g.images()
            f1 = f1.subst(g1, g2)
            f2 = f2.subst(g1, g2)
        self._pow_cache[key] = (f1, f2)
        return (f1, f2)

    def _image_power(self, n: int, axis: int, k: int) -> Poly2:
        # sigma^n(z_axis)^k with memoisation
        if k == 0:
            return Poly2.one()
        key = (n, axis, k)
        cached = self._pow_cache.get(key)
        if cached is None:
            cached = self._image_power(n, axis, k - 1) * self.images(n)[axis - 1]
            self._pow_cache[key] = cached
        return cached

    def apply(self, p: Poly2, power: int = 1) -> Poly2:
        """sigma^power applied to p by substitution; power may be negative."""
        if power == 0 or p.is_zero() or p.is_constant():
            return p
        out = Poly2.zero()
        for (i, j), c in p.sorted_items():
            out = out + (self._image_power(power, 1, i)
                         * self._image_power(power, 2, j)).scale(c)
        return out

    def __eq__(self, other):
        # equality of words, not of the automorphisms they define
        return isinstance(other, AutWord) and self.factors == other.factors

    def __repr__(self):
        if not self.factors:
            return "id"
        return "; ".join(repr(g) for g in self.factors)


def symbolic_jacobian(sigma: AutWord) -> Poly2:
    """det(d f_i / d z_j) computed from the images, as a polynomial.

    For an automorphism word this is a constant polynomial equal to
    ``sigma.jacobian()``; the cross-check is exposed for tests.
    """
    f1, f2 = sigma.images(1)
    return f1.partial(1) * f2.partial(2) - f2.partial(1) * f1.partial(2)
