"""Cochain-level verification machinery with coefficients in M = W^e.

Two subsystems:

* The degree-3/4 cochain spaces of the total complex, the differential
  between them, the eight cocycle equations in degree 4, and the explicit
  construction of a 3-cochain n with d(n) = m from a 4-cocycle m and a
  smoothness certificate.  This is the machine-checkable content of the
  vanishing of fourth cohomology for smooth instances.

* The degree-(1,2) cohomology classes that carry the Nakayama structure:
  kernel-parameterized class families, their canonical (c1, c2) form, the
  evaluation map Phi into W, and the W-bimodule action on classes.  The
  compatibility Phi(class <| w) = Phi(class) * nu(w) is what identifies the
  Nakayama automorphism nu.
"""

from __future__ import annotations

from fractions import Fraction

from .envelope import DifferentialSet, EnvElem
from .gwa import GwaAlgebra, GwaElem
from .groebner import Certificate
from .nccalc import TwistLabel, twisted_delta
from .poly import Poly2, tensor


class NotACocycle(Exception):
    pass


def _vec_add(*vecs):
    out = list(vecs[0])
    for v in vecs[1:]:
        out = [a + b for a, b in zip(out, v)]
    return out


class Cochain3:
    """Degree-3 cochain: components over blocks (1,2), (2,1), (3,0)."""

    __slots__ = ("n12", "n21", "n30")

    def __init__(self, n12, n21, n30):
        if len(n12) != 2 or len(n21) != 4 or len(n30) != 2:
            raise ValueError("component lengths must be 2, 4, 2")
        self.n12 = tuple(n12)
        self.n21 = tuple(n21)
        self.n30 = tuple(n30)

    @classmethod
    def zero(cls, W: GwaAlgebra) -> "Cochain3":
        z = EnvElem.zero(W)
        return cls((z, z), (z, z, z, z), (z, z))

    def components(self):
        return self.n12 + self.n21 + self.n30

    def is_zero(self):
        return all(c.is_zero() for c in self.components())

    def __eq__(self, other):
        return (isinstance(other, Cochain3) and self.n12 == other.n12
                and self.n21 == other.n21 and self.n30 == other.n30)


class Cochain4:
    """Degree-4 cochain: components over blocks (2,2), (3,1), (4,0)."""

    __slots__ = ("m22", "m31", "m40")

    def __init__(self, m22, m31, m40):
        if len(m22) != 2 or len(m31) != 4 or len(m40) != 2:
            raise ValueError("component lengths must be 2, 4, 2")
        self.m22 = tuple(m22)
        self.m31 = tuple(m31)
        self.m40 = tuple(m40)

    @classmethod
    def zero(cls, W: GwaAlgebra) -> "Cochain4":
        z = EnvElem.zero(W)
        return cls((z, z), (z, z, z, z), (z, z))

    def components(self):
        return self.m22 + self.m31 + self.m40

    def is_zero(self):
        return all(c.is_zero() for c in self.components())

    def __eq__(self, other):
        return (isinstance(other, Cochain4) and self.m22 == other.m22
                and self.m31 == other.m31 and self.m40 == other.m40)


def cochain_d3(ds: DifferentialSet, n: Cochain3) -> Cochain4:
    """The total-complex differential from degree 3 to degree 4 cochains."""
    m22 = _vec_add(ds.d_h[(1, 2)].apply_cochain(list(n.n12)),
                   ds.d_v[(2, 1)].apply_cochain(list(n.n21)))
    m31 = _vec_add(ds.t[(1, 2)].apply_cochain(list(n.n12)),
                   ds.d_h[(2, 1)].apply_cochain(list(n.n21)),
                   ds.d_v[(3, 0)].apply_cochain(list(n.n30)))
    m40 = _vec_add(ds.t[(2, 1)].apply_cochain(list(n.n21)),
                   ds.d_h[(3, 0)].apply_cochain(list(n.n30)))
    return Cochain4(m22, m31, m40)


def cocycle4_equations(ds: DifferentialSet, m: Cochain4):
    """The eight left-hand sides whose vanishing makes m a 4-cocycle."""
    into32 = _vec_add(ds.d_h[(2, 2)].apply_cochain(list(m.m22)),
                      ds.d_v[(3, 1)].apply_cochain(list(m.m31)))
    into41 = _vec_add(ds.t[(2, 2)].apply_cochain(list(m.m22)),
                      ds.d_h[(3, 1)].apply_cochain(list(m.m31)),
                      ds.d_v[(4, 0)].apply_cochain(list(m.m40)))
    into50 = _vec_add(ds.t[(3, 1)].apply_cochain(list(m.m31)),
                      ds.d_h[(4, 0)].apply_cochain(list(m.m40)))
    return list(into32) + list(into41) + list(into50)


class CocycleReport:
    def __init__(self, equations):
        self.equations = equations  # list of (name, ok)

    @property
    def ok(self):
        return all(ok for _, ok in self.equations)

    def to_dict(self):
        return {"ok": self.ok,
                "checks": [{"identity": name, "ok": ok}
                           for name, ok in self.equations]}


def is_cocycle4(ds: DifferentialSet, m: Cochain4) -> CocycleReport:
    values = cocycle4_equations(ds, m)
    return CocycleReport([("cocycle-eq-%d" % (k + 1), v.is_zero())
                          for k, v in enumerate(values)])


def build_n(ds: DifferentialSet, cert: Certificate, m: Cochain4) -> Cochain3:
    """The explicit 3-cochain n with d(n) = m, given a unit certificate.

    Raises NotACocycle unless m satisfies all eight cocycle equations.
    """
    if not is_cocycle4(ds, m).ok:
        raise NotACocycle("input 4-cochain is not a cocycle")
    W = ds.alg
    sig = W.sigma
    phi = W.phi
    alpha, b1, b2 = cert.alpha, cert.beta1, cert.beta2

    def one_t(p: Poly2) -> EnvElem:
        return EnvElem.from_poly4(W, tensor(Poly2.one(), p))

    ob1, ob2 = one_t(b1), one_t(b2)
    osb1, osb2 = one_t(sig.apply(b1, 1)), one_t(sig.apply(b2, 1))
    # 1 (x) alpha*y
    oay = EnvElem.from_tensor(W, W.one(), GwaElem(W, {-1: alpha}))

    S, D1, D2 = TwistLabel("sigma"), TwistLabel("d1"), TwistLabel("d2")
    SD1, SD2 = TwistLabel("sigma", "d1"), TwistLabel("sigma", "d2")

    def dd(axis, u, v) -> EnvElem:
        return EnvElem.from_poly4(W, twisted_delta(phi, axis, u, v, sig))

    m22_1, m22_2 = m.m22
    m31_1, m31_2, m31_3, m31_4 = m.m31
    m40_1, m40_2 = m.m40

    n12_1 = ob1 * m31_2 - ob2 * m31_1
    n12_2 = osb1 * m31_4 - osb2 * m31_3 + oay * m22_1
    n21_1 = ob1 * m40_1 + ob2 * (dd(2, None, D2) * m22_1)
    n21_2 = ob2 * m40_1 - ob1 * (dd(1, None, D1) * m22_1)
    n21_3 = osb1 * m40_2 - oay * m31_1 + osb2 * (dd(2, S, SD2) * m22_2)
    n21_4 = osb2 * m40_2 - oay * m31_2 - osb1 * (dd(1, S, SD1) * m22_2)
    n30_1 = -(ob1 * (dd(1, S, D1) * m31_1)) - ob2 * (dd(2, S, D2) * m31_2)
    n30_2 = oay * m40_1 - osb1 * (dd(1, None, SD1) * m31_3) \
        - osb2 * (dd(2, None, SD2) * m31_4)

    return Cochain3((n12_1, n12_2), (n21_1, n21_2, n21_3, n21_4),
                    (n30_1, n30_2))


# -- degree-(1,2) classes and the Nakayama structure --------------------------

_FAMILY_DOMAINS = {
    "a1": lambda i, j: i >= 1 and j >= 1,
    "a2": lambda i, j: i >= 1 and j >= 0,
    "a3": lambda i, j: i >= 0 and j >= 1,
    "b4": lambda i, j: i >= 1 and j >= 1,
}


class E12Kernel:
    """Kernel-parameterized class: four families of B-coefficients.

    The free data of an element of the kernel at column 1, row 2 consists of
    the families a1 (supported on x^i (x) x^j blocks, i,j >= 1), a2
    (x^i (x) y^j, i >= 1, j >= 0), a3 (y^i (x) x^j, i >= 0, j >= 1) and b4
    (y^i (x) y^j, i, j >= 1); the partner component of each block is
    determined by the kernel equations.
    """

    __slots__ = ("a1", "a2", "a3", "b4")

    def __init__(self, a1=None, a2=None, a3=None, b4=None):
        for name, fam in (("a1", a1), ("a2", a2), ("a3", a3), ("b4", b4)):
            dom = _FAMILY_DOMAINS[name]
            out = {}
            for (i, j), c in (fam or {}).items():
                if not dom(i, j):
                    raise ValueError("index (%d,%d) outside the %s family"
                                     % (i, j, name))
                if not c.is_zero():
                    out[(i, j)] = c
            setattr(self, name, out)

    def families(self):
        return {"a1": self.a1, "a2": self.a2, "a3": self.a3, "b4": self.b4}

    def is_zero(self):
        return not (self.a1 or self.a2 or self.a3 or self.b4)


class E12Canonical:
    """Canonical representative: c1_i (x^i (x) 1 blocks) and c2_i (y^i (x) x)."""

    __slots__ = ("c1", "c2")

    def __init__(self, c1=None, c2=None):
        self.c1 = {int(i): c for i, c in (c1 or {}).items()
                   if i >= 1 and not c.is_zero()}
        self.c2 = {int(i): c for i, c in (c2 or {}).items()
                   if i >= 1 and not c.is_zero()}
        if any(i < 1 for i in (c1 or {})) or any(i < 1 for i in (c2 or {})):
            raise ValueError("canonical indices start at 1")

    def to_kernel(self) -> E12Kernel:
        return E12Kernel(a2={(i, 0): c for i, c in self.c1.items()},
                         a3={(i, 1): c for i, c in self.c2.items()})

    def is_zero(self):
        return not (self.c1 or self.c2)

    def __eq__(self, other):
        return (isinstance(other, E12Canonical)
                and self.c1 == other.c1 and self.c2 == other.c2)

    def __repr__(self):
        return "E12Canonical(c1=%s, c2=%s)" % (
            {i: str(c) for i, c in sorted(self.c1.items())},
            {i: str(c) for i, c in sorted(self.c2.items())})


def _is_canonical_block(fam: str, i: int, j: int) -> bool:
    if fam == "a2":
        return j == 0
    if fam == "a3":
        return j == 1 and i >= 1
    return False


def canonicalize_e12(W: GwaAlgebra, x: E12Kernel,
                     step_budget: int | None = None) -> E12Canonical:
    """Rewrite a kernel-parameterized class into its unique canonical form.

    Each rewrite adds a coboundary to shift one block; the second-leg
    exponent strictly decreases, so the loop terminates.  A step budget
    guards the termination argument.
    """
    J = W.sigma.jacobian()
    Jinv = Fraction(1) / J
    sig = W.sigma
    phi = W.phi
    fams = {name: dict(d) for name, d in x.families().items()}

    def bump(fam, i, j, c):
        if c.is_zero():
            return
        d = fams[fam]
        key = (i, j)
        acc = d.get(key)
        if acc is None:
            d[key] = c
        else:
            acc = acc + c
            if acc.is_zero():
                del d[key]
            else:
                d[key] = acc

    if step_budget is None:
        weight = sum(j for fam in fams.values() for (_, j) in fam)
        step_budget = 64 + 8 * (weight + sum(len(f) for f in fams.values()))

    steps = 0
    while True:
        pending = None
        for fam in ("a1", "a2", "a3", "b4"):
            keys = [k for k in sorted(fams[fam])
                    if not _is_canonical_block(fam, *k)]
            if keys:
                pending = (fam, keys[0])
                break
        if pending is None:
            break
        steps += 1
        if steps > step_budget:
            raise RuntimeError("canonicalization exceeded its step budget")
        fam, (i, j) = pending
        c = fams[fam].pop((i, j))
        if fam == "a1":
            moved = sig.apply(c, 1).scale(Jinv)
            if j >= 2:
                bump("a1", i + 1, j - 1, moved)
            else:
                bump("a2", i + 1, 0, moved)
        elif fam == "a2":
            # j >= 1 here
            if i >= 2:
                bump("a2", i - 1, j - 1,
                     (sig.apply(phi, 1) * sig.apply(c, -1)).scale(J))
            else:
                bump("b4", 1, j, sig.apply(c, -2).scale(-J))
        elif fam == "a3":
            if i >= 1:
                # j >= 2 here
                bump("a3", i - 1, j - 1,
                     (sig.apply(phi, 1) * sig.apply(c, 1)).scale(Jinv))
            elif j >= 2:
                bump("a1", 1, j - 1, sig.apply(c, 1).scale(Jinv))
            else:
                bump("a2", 1, 0, sig.apply(c, 1).scale(Jinv))
        else:  # b4
            if j >= 2:
                bump("b4", i + 1, j - 1, sig.apply(c, -1).scale(J))
            else:
                bump("a3", i, 1, c.scale(-J))

    return E12Canonical(c1={i: c for (i, j), c in fams["a2"].items()},
                        c2={i: c for (i, j), c in fams["a3"].items()})


def phi_map(W: GwaAlgebra, y: E12Canonical) -> GwaElem:
    """Evaluate a canonical class in W:
    sum_i J^i sigma^{-1}(c1_i) x^(i-1) + sum_i J^(-i) c2_i y^i."""
    J = W.sigma.jacobian()
    out = W.zero()
    for i, c in sorted(y.c1.items()):
        out = out + GwaElem(W, {i - 1: W.sigma.apply(c, -1).scale(J**i)})
    for i, c in sorted(y.c2.items()):
        out = out + GwaElem(W, {-i: c.scale(J**-i)})
    return out


_GENERATORS = ("x", "y", "z1", "z2")


def bimodule_action(W: GwaAlgebra, y: E12Canonical, gen: str,
                    side: str) -> E12Canonical:
    """Act by a generator on a canonical class and re-canonicalize.

    ``side='right'`` multiplies the first tensor leg on the right;
    ``side='left'`` multiplies the second leg on the left (the surviving
    regular structure of W^e).
    """
    if gen not in _GENERATORS:
        raise ValueError("generator must be one of %s" % (_GENERATORS,))
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    sig = W.sigma
    phi = W.phi
    kernel = E12Kernel()
    fams = kernel.families()

    def bump(fam, i, j, c):
        if c.is_zero():
            return
        key = (i, j)
        acc = fams[fam].get(key)
        fams[fam][key] = c if acc is None else acc + c
        if fams[fam][key].is_zero():
            del fams[fam][key]

    if side == "right":
        if gen in ("z1", "z2"):
            v = Poly2.variable(1 if gen == "z1" else 2)
            for i, c in y.c1.items():
                bump("a2", i, 0, c * sig.apply(v, i))
            for i, c in y.c2.items():
                bump("a3", i, 1, c * sig.apply(v, -i))
        elif gen == "x":
            for i, c in y.c1.items():
                bump("a2", i + 1, 0, c)
            for i, c in y.c2.items():
                bump("a3", i - 1, 1, c * sig.apply(phi, 1 - i))
        else:  # y
            for i, c in y.c1.items():
                if i >= 2:
                    bump("a2", i - 1, 0, c * sig.apply(phi, i))
                else:
                    bump("b4", 1, 1, -sig.apply(c, -1))
            for i, c in y.c2.items():
                bump("a3", i + 1, 1, c)
    else:
        if gen in ("z1", "z2"):
            v = Poly2.variable(1 if gen == "z1" else 2)
            for i, c in y.c1.items():
                bump("a2", i, 0, sig.apply(v, 1) * c)
            for i, c in y.c2.items():
                bump("a3", i, 1, v * c)
        elif gen == "x":
            for i, c in y.c1.items():
                bump("a1", i, 1, c)
            for i, c in y.c2.items():
                bump("a3", i, 2, c)
        else:  # y
            for i, c in y.c1.items():
                bump("a2", i, 1, c)
            for i, c in y.c2.items():
                bump("b4", i + 1, 1, -sig.apply(c, -1))

    return canonicalize_e12(W, kernel)
