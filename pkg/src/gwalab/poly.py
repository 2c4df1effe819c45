"""Sparse polynomials over Q in two commuting variables, and their tensor square.

``Poly2`` models Q[z1,z2]; ``Poly4`` models Q[z1,z2] (x) Q[z1,z2] with the
exponent quadruple (i, j, k, l) standing for z1^i z2^j (x) z1^k z2^l.
Coefficients are :class:`fractions.Fraction`, always exact, and zero
coefficients are never stored.  Instances are immutable by convention.
"""

from __future__ import annotations

from fractions import Fraction


def as_fraction(value) -> Fraction:
    """Coerce an int / str / Fraction into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _grlex_key(exp):
    # graded lexicographic: total degree first, then the tuple itself
    return (sum(exp), exp)


class Poly2:
    """A sparse exact polynomial in z1, z2."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, c in items:
                c = as_fraction(c)
                if not c:
                    continue
                exp = (int(exp[0]), int(exp[1]))
                acc = t.get(exp)
                if acc is None:
                    t[exp] = c
                else:
                    acc = acc + c
                    if acc:
                        t[exp] = acc
                    else:
                        del t[exp]
        self._t = t

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def one(cls) -> "Poly2":
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): as_fraction(c)})

    @classmethod
    def variable(cls, axis: int) -> "Poly2":
        if axis == 1:
            return cls({(1, 0): Fraction(1)})
        if axis == 2:
            return cls({(0, 1): Fraction(1)})
        raise ValueError("axis must be 1 or 2")

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "Poly2":
        return cls({(i, j): as_fraction(c)})

    # -- inspection ------------------------------------------------------

    def items(self):
        return self._t.items()

    def sorted_items(self):
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._t

    def is_one(self) -> bool:
        return self._t == {(0, 0): Fraction(1)}

    def is_constant(self) -> bool:
        return all(exp == (0, 0) for exp in self._t)

    def constant_value(self) -> Fraction:
        if not self._t:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant: %s" % self)
        return self._t[(0, 0)]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._t:
            return -1
        return max(i + j for i, j in self._t)

    def degree_in(self, axis: int) -> int:
        if not self._t:
            return -1
        k = 0 if axis == 1 else 1
        return max(exp[k] for exp in self._t)

    def coeff(self, i: int, j: int) -> Fraction:
        return self._t.get((i, j), Fraction(0))

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        t = dict(self._t)
        for exp, c in other._t.items():
            acc = t.get(exp)
            if acc is None:
                t[exp] = c
            else:
                acc = acc + c
                if acc:
                    t[exp] = acc
                else:
                    del t[exp]
        out = Poly2.__new__(Poly2)
        out._t = t
        return out

    def __neg__(self):
        out = Poly2.__new__(Poly2)
        out._t = {exp: -c for exp, c in self._t.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        t = {}
        for (a, b), c in self._t.items():
            for (i, j), d in other._t.items():
                exp = (a + i, b + j)
                cd = c * d
                acc = t.get(exp)
                if acc is None:
                    t[exp] = cd
                else:
                    acc = acc + cd
                    if acc:
                        t[exp] = acc
                    else:
                        del t[exp]
        out = Poly2.__new__(Poly2)
        out._t = t
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Poly2":
        c = as_fraction(c)
        if not c:
            return Poly2.zero()
        out = Poly2.__new__(Poly2)
        out._t = {exp: c * v for exp, v in self._t.items()}
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly2.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # -- calculus and evaluation ------------------------------------------

    def partial(self, axis: int) -> "Poly2":
        """Formal partial derivative with respect to z1 (axis=1) or z2."""
        t = {}
        for (i, j), c in self._t.items():
            if axis == 1:
                if i:
                    t[(i - 1, j)] = c * i
            elif axis == 2:
                if j:
                    t[(i, j - 1)] = c * j
            else:
                raise ValueError("axis must be 1 or 2")
        out = Poly2.__new__(Poly2)
        out._t = t
        return out

    def eval_at(self, a, b) -> Fraction:
        a = as_fraction(a)
        b = as_fraction(b)
        total = Fraction(0)
        for (i, j), c in self._t.items():
            total += c * a**i * b**j
        return total

    def subst(self, p1: "Poly2", p2: "Poly2") -> "Poly2":
        """Substitute z1 -> p1, z2 -> p2 (a ring homomorphism)."""
        pow1 = {0: Poly2.one()}
        pow2 = {0: Poly2.one()}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1) * base
            return cache[n]

        out = Poly2.zero()
        for (i, j), c in self.sorted_items():
            out = out + (power(pow1, p1, i) * power(pow2, p2, j)).scale(c)
        return out

    # -- printing ----------------------------------------------------------

    def __repr__(self):
        return "Poly2(%s)" % str(self)

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for (i, j), c in sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True):
            factors = []
            if i:
                factors.append("z1" if i == 1 else "z1^%d" % i)
            if j:
                factors.append("z2" if j == 1 else "z2^%d" % j)
            if not factors or abs(c) != 1:
                factors.insert(0, str(abs(c)))
            term = "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + term)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


Z1 = Poly2.variable(1)
Z2 = Poly2.variable(2)
P_ONE = Poly2.one()


class Poly4:
    """An element of Q[z1,z2] (x) Q[z1,z2], with commutative multiplication."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, c in items:
                c = as_fraction(c)
                if not c:
                    continue
                exp = tuple(int(e) for e in exp)
                acc = t.get(exp)
                if acc is None:
                    t[exp] = c
                else:
                    acc = acc + c
                    if acc:
                        t[exp] = acc
                    else:
                        del t[exp]
        self._t = t

    @classmethod
    def zero(cls) -> "Poly4":
        return cls()

    @classmethod
    def one(cls) -> "Poly4":
        return cls({(0, 0, 0, 0): Fraction(1)})

    @classmethod
    def const(cls, c) -> "Poly4":
        return cls({(0, 0, 0, 0): as_fraction(c)})

    def items(self):
        return self._t.items()

    def sorted_items(self):
        return sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]))

    def is_zero(self) -> bool:
        return not self._t

    def __add__(self, other):
        if not isinstance(other, Poly4):
            return NotImplemented
        t = dict(self._t)
        for exp, c in other._t.items():
            acc = t.get(exp)
            if acc is None:
                t[exp] = c
            else:
                acc = acc + c
                if acc:
                    t[exp] = acc
                else:
                    del t[exp]
        out = Poly4.__new__(Poly4)
        out._t = t
        return out

    def __neg__(self):
        out = Poly4.__new__(Poly4)
        out._t = {exp: -c for exp, c in self._t.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Poly4):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly4):
            return NotImplemented
        t = {}
        for (a, b, c, d), u in self._t.items():
            for (i, j, k, l), v in other._t.items():
                exp = (a + i, b + j, c + k, d + l)
                uv = u * v
                acc = t.get(exp)
                if acc is None:
                    t[exp] = uv
                else:
                    acc = acc + uv
                    if acc:
                        t[exp] = acc
                    else:
                        del t[exp]
        out = Poly4.__new__(Poly4)
        out._t = t
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Poly4":
        c = as_fraction(c)
        if not c:
            return Poly4.zero()
        out = Poly4.__new__(Poly4)
        out._t = {exp: c * v for exp, v in self._t.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly4):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # -- tensor structure --------------------------------------------------

    def mu(self) -> Poly2:
        """Multiply the two tensor factors together (the map B (x) B -> B)."""
        out = {}
        for (a, b, c, d), v in self._t.items():
            exp = (a + c, b + d)
            acc = out.get(exp)
            if acc is None:
                out[exp] = v
            else:
                acc = acc + v
                if acc:
                    out[exp] = acc
                else:
                    del out[exp]
        p = Poly2.__new__(Poly2)
        p._t = out
        return p

    def map_factors(self, u, v) -> "Poly4":
        """Apply the linear maps u to left factors and v to right factors.

        ``u`` and ``v`` take a Poly2 and return a Poly2; ``None`` means the
        identity.  Acts monomial by monomial, so u, v need only be linear.
        """
        out = Poly4.zero()
        for (a, b, c, d), coeff in self.sorted_items():
            left = Poly2.monomial(a, b)
            right = Poly2.monomial(c, d)
            if u is not None:
                left = u(left)
            if v is not None:
                right = v(right)
            out = out + tensor(left, right).scale(coeff)
        return out

    def eval_factors(self, lam_left, lam_right) -> Fraction:
        """Evaluate left factors at lam_left and right factors at lam_right."""
        a1, a2 = lam_left
        b1, b2 = lam_right
        total = Fraction(0)
        for (a, b, c, d), v in self._t.items():
            total += v * as_fraction(a1) ** a * as_fraction(a2) ** b \
                * as_fraction(b1) ** c * as_fraction(b2) ** d
        return total

    def __repr__(self):
        return "Poly4(%s)" % str(self)

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for (a, b, c, d), v in sorted(self._t.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True):
            left = str(Poly2.monomial(a, b, abs(v)))
            right = str(Poly2.monomial(c, d))
            parts.append(("- " if v < 0 else "+ ") + "%s(x)%s" % (left, right))
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def tensor(p: Poly2, q: Poly2) -> Poly4:
    """The tensor p (x) q in B (x) B."""
    t = {}
    for (a, b), c in p.items():
        for (i, j), d in q.items():
            t[(a, b, i, j)] = c * d
    out = Poly4.__new__(Poly4)
    out._t = t
    return out


def embed_left(p: Poly2) -> Poly4:
    """The ring embedding p -> p (x) 1."""
    return tensor(p, P_ONE)


def embed_right(p: Poly2) -> Poly4:
    """The embedding p -> 1 (x) p."""
    return tensor(P_ONE, p)
