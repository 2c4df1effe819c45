"""Noncommutative differential calculus on B = Q[z1,z2].

Implements the 1-form d g = g (x) 1 - 1 (x) g, the noncommutative partial
derivations Delta_1, Delta_2 : B -> B (x) B, their twisted variants
(u (x) v) o Delta_i, and the noncommutative Jacobian determinant of an
automorphism.  Everything here lives in the commutative ring B (x) B.
"""

from __future__ import annotations

from .autword import AutWord
from .poly import P_ONE, Poly2, Poly4, embed_right, tensor


def nc_diff(g: Poly2) -> Poly4:
    """The noncommutative differential 1-form d g = g (x) 1 - 1 (x) g."""
    return tensor(g, P_ONE) - tensor(P_ONE, g)


def delta(g: Poly2, axis: int) -> Poly4:
    """Noncommutative partial derivation Delta_axis(g).

    On a monomial z1^a z2^b:
      Delta_1 -> sum_{k=1..a} z1^(a-k) (x) z1^(k-1) z2^b
      Delta_2 -> sum_{k=1..b} z1^a z2^(b-k) (x) z2^(k-1)
    extended linearly.  Satisfies mu o Delta_axis = d/dz_axis.
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    terms = []
    for (a, b), c in g.items():
        if axis == 1:
            for k in range(1, a + 1):
                terms.append(((a - k, 0, k - 1, b), c))
        else:
            for k in range(1, b + 1):
                terms.append(((a, b - k, 0, k - 1), c))
    return Poly4(terms)


class TwistLabel:
    """A composition of named maps of B used to twist Delta_i and d.

    Atoms: ``id``, ``sigma``, ``sigma_inv``, ``d1``, ``d2``.  The atom tuple
    is applied right to left, e.g. ``("sigma", "d1")`` is sigma o d/dz1.
    Compositions of length <= 2 cover every twist needed here.
    """

    ATOMS = ("id", "sigma", "sigma_inv", "d1", "d2")

    __slots__ = ("atoms",)

    def __init__(self, *atoms: str):
        for a in atoms:
            if a not in self.ATOMS:
                raise ValueError("unknown twist atom %r" % (a,))
        self.atoms = tuple(a for a in atoms if a != "id")

    def interpret(self, sigma: AutWord | None):
        """Return the map Poly2 -> Poly2 this label names."""
        def run(p: Poly2) -> Poly2:
            for a in reversed(self.atoms):
                if a == "sigma":
                    p = sigma.apply(p, 1)
                elif a == "sigma_inv":
                    p = sigma.apply(p, -1)
                elif a == "d1":
                    p = p.partial(1)
                else:
                    p = p.partial(2)
            return p

        if self.atoms and any(a in ("sigma", "sigma_inv") for a in self.atoms) \
                and sigma is None:
            raise ValueError("twist %r needs an automorphism" % (self.atoms,))
        return run

    def __repr__(self):
        return "TwistLabel(%s)" % ", ".join(self.atoms or ("id",))


ID = TwistLabel("id")


def _as_map(twist, sigma):
    if twist is None:
        return None
    if isinstance(twist, TwistLabel):
        if not twist.atoms:
            return None
        return twist.interpret(sigma)
    return twist  # already a callable


def twisted_delta(g: Poly2, axis: int, u=None, v=None, sigma: AutWord | None = None) -> Poly4:
    """(u (x) v) o Delta_axis applied to g.

    ``u`` and ``v`` may be TwistLabels (interpreted against ``sigma``),
    callables on Poly2, or None for the identity.
    """
    return delta(g, axis).map_factors(_as_map(u, sigma), _as_map(v, sigma))


def twisted_diff(g: Poly2, u=None, v=None, sigma: AutWord | None = None) -> Poly4:
    """The twisted 1-form u(g) (x) 1 - 1 (x) v(g)."""
    um = _as_map(u, sigma)
    vm = _as_map(v, sigma)
    left = g if um is None else um(g)
    right = g if vm is None else vm(g)
    return tensor(left, P_ONE) - tensor(P_ONE, right)


def nc_jacobian(sigma: AutWord) -> Poly4:
    """Noncommutative Jacobian det of sigma:
    Delta_1(f1) Delta_2(f2) - Delta_1(f2) Delta_2(f1) in B (x) B."""
    f1, f2 = sigma.images(1)
    return delta(f1, 1) * delta(f2, 2) - delta(f2, 1) * delta(f1, 2)


def mu(t: Poly4) -> Poly2:
    """Multiplication map B (x) B -> B."""
    return t.mu()


# The four variants of the coefficient-extraction identity
#   Delta_i(g) - (twisted Delta_i)(g) * (twisted d z_i) = 1 (x) (twist of dg/dz_i),
# one per twisting pattern.  Each returns (lhs, rhs) for the caller to compare.

def delta_partial_identity(g: Poly2, axis: int, variant: int, sigma: AutWord):
    """lhs/rhs of variant 1..4 of the derivation-vs-partial identity."""
    z = Poly2.variable(axis)
    gi = g.partial(axis)
    d_ax = "d%d" % axis
    if variant == 1:
        lhs = delta(g, axis) - twisted_delta(g, axis, None, TwistLabel(d_ax), sigma) \
            * nc_diff(z)
        rhs = embed_right(gi)
    elif variant == 2:
        lhs = twisted_delta(g, axis, TwistLabel("sigma"), None, sigma) \
            - twisted_delta(g, axis, TwistLabel("sigma"), TwistLabel(d_ax), sigma) \
            * twisted_diff(z, TwistLabel("sigma"), None, sigma)
        rhs = embed_right(gi)
    elif variant == 3:
        lhs = twisted_delta(g, axis, None, TwistLabel("sigma"), sigma) \
            - twisted_delta(g, axis, None, TwistLabel("sigma", d_ax), sigma) \
            * twisted_diff(z, None, TwistLabel("sigma"), sigma)
        rhs = embed_right(sigma.apply(gi, 1))
    elif variant == 4:
        lhs = twisted_delta(g, axis, TwistLabel("sigma"), TwistLabel("sigma"), sigma) \
            - twisted_delta(g, axis, TwistLabel("sigma"), TwistLabel("sigma", d_ax), sigma) \
            * twisted_diff(z, TwistLabel("sigma"), TwistLabel("sigma"), sigma)
        rhs = embed_right(sigma.apply(gi, 1))
    else:
        raise ValueError("variant must be 1..4")
    return lhs, rhs
