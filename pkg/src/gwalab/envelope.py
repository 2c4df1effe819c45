"""Arithmetic over the enveloping algebra W^e = W (x) W^op and the
differential matrices of the free bimodule resolution of W.

An element of W^e is stored as a map (m, n) -> Poly4, where the key is the
pair of x/y-degrees of the two tensor legs and the Poly4 holds the B (x) B
coefficient: the quadruple (i, j, k, l) stands for

    z1^i z2^j xi_m  (x)  z1^k z2^l xi_n,

with xi_d = x^d (d > 0), 1 (d = 0), y^(-d) (d < 0).  Multiplication reverses
the right legs: (w1 (x) w2)(w3 (x) w4) = w1 w3 (x) w4 w2.

Free-module maps are row-convention matrices: the matrix of a left
W^e-linear map F sends basis row i to the i-th row of entries, and the
matrix of a composite G o F (F applied first) is matrix(F) * matrix(G),
entries multiplying in the order (F entry) * (G entry).  The convention is
pinned by a calibration test reproducing the worked column
(1 (x) phi - phi (x) 1; 1 (x) sigma(phi) - sigma(phi) (x) 1).
"""

from __future__ import annotations

from fractions import Fraction

from .gwa import GwaAlgebra, GwaElem
from .nccalc import delta, nc_jacobian
from .poly import Poly2, Poly4, as_fraction, tensor


class DimensionMismatch(Exception):
    pass


class ZeroPhi(Exception):
    pass


class EnvElem:
    """Element of W^e = W (x) W^op."""

    __slots__ = ("alg", "_t")

    def __init__(self, alg: GwaAlgebra, terms=None):
        self.alg = alg
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                if c.is_zero():
                    continue
                key = (int(key[0]), int(key[1]))
                acc = t.get(key)
                if acc is None:
                    t[key] = c
                else:
                    acc = acc + c
                    if acc.is_zero():
                        del t[key]
                    else:
                        t[key] = acc
        self._t = t

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, alg) -> "EnvElem":
        return cls(alg)

    @classmethod
    def one(cls, alg) -> "EnvElem":
        return cls(alg, {(0, 0): Poly4.one()})

    @classmethod
    def from_poly4(cls, alg, t: Poly4) -> "EnvElem":
        return cls(alg, {(0, 0): t})

    @classmethod
    def from_tensor(cls, alg, u: GwaElem, v: GwaElem) -> "EnvElem":
        """u (x) v for u, v in W."""
        terms = {}
        for m, p in u.items():
            for n, q in v.items():
                terms[(m, n)] = tensor(p, q)
        return cls(alg, terms)

    @classmethod
    def scalar(cls, alg, c) -> "EnvElem":
        return cls(alg, {(0, 0): Poly4.const(as_fraction(c))})

    # -- structure -----------------------------------------------------------

    def items(self):
        return self._t.items()

    def sorted_items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def _check(self, other):
        if self.alg is not other.alg:
            raise ValueError("elements of different enveloping algebras")

    def __add__(self, other):
        if not isinstance(other, EnvElem):
            return NotImplemented
        self._check(other)
        t = dict(self._t)
        for key, c in other._t.items():
            acc = t.get(key)
            if acc is None:
                t[key] = c
            else:
                acc = acc + c
                if acc.is_zero():
                    del t[key]
                else:
                    t[key] = acc
        out = EnvElem.__new__(EnvElem)
        out.alg = self.alg
        out._t = t
        return out

    def __neg__(self):
        out = EnvElem.__new__(EnvElem)
        out.alg = self.alg
        out._t = {k: -c for k, c in self._t.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, EnvElem):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "EnvElem":
        c = as_fraction(c)
        if not c:
            return EnvElem(self.alg)
        out = EnvElem.__new__(EnvElem)
        out.alg = self.alg
        out._t = {k: t.scale(c) for k, t in self._t.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, EnvElem):
            return NotImplemented
        self._check(other)
        alg = self.alg
        acc = {}
        for (m, n), c in self._t.items():
            for (m2, n2), c2 in other._t.items():
                # (p xi_m (x) q xi_n)(p' xi_m2 (x) q' xi_n2)
                #   = p sigma^m(p') rho(m,m2) xi_{m+m2}
                #     (x) q' sigma^{n2}(q) rho(n2,n) xi_{n2+n}
                rl = alg.rho(m, m2)
                rr = alg.rho(n2, n)
                if rl.is_zero() or rr.is_zero():
                    continue
                left = c if n2 == 0 else c.map_factors(
                    None, lambda s, k=n2: alg.twist(s, k))
                right = c2 if m == 0 else c2.map_factors(
                    lambda s, k=m: alg.twist(s, k), None)
                prod = left * right
                if not (rl.is_one() and rr.is_one()):
                    prod = prod * tensor(rl, rr)
                if prod.is_zero():
                    continue
                key = (m + m2, n + n2)
                prev = acc.get(key)
                if prev is None:
                    acc[key] = prod
                else:
                    prev = prev + prod
                    if prev.is_zero():
                        del acc[key]
                    else:
                        acc[key] = prev
        out = EnvElem.__new__(EnvElem)
        out.alg = self.alg
        out._t = acc
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, EnvElem):
            return NotImplemented
        return self.alg is other.alg and self._t == other._t

    def mu_w(self) -> GwaElem:
        """Multiply the two legs inside W (the augmentation W^e -> W)."""
        alg = self.alg
        out = alg.zero()
        for (m, n), c in self._t.items():
            rho = alg.rho(m, n)
            for (i, j, k, l), v in c.items():
                coeff = (Poly2.monomial(i, j)
                         * alg.twist(Poly2.monomial(k, l), m) * rho).scale(v)
                out = out + GwaElem(alg, {m + n: coeff})
        return out

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for (m, n), c in self.sorted_items():
            parts.append("[deg (%d,%d)] %s" % (m, n, c))
        return " ++ ".join(parts)


def env_generator(alg: GwaAlgebra, left_deg: int, right_deg: int) -> EnvElem:
    """xi_{left_deg} (x) xi_{right_deg}, e.g. (1, 0) -> x (x) 1."""
    return EnvElem(alg, {(left_deg, right_deg): Poly4.one()})


class EnvMatrix:
    """A dense matrix over W^e; rows are images of basis elements."""

    __slots__ = ("alg", "rows", "cols", "entries")

    def __init__(self, alg: GwaAlgebra, entries):
        self.alg = alg
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged matrix")

    @classmethod
    def zero(cls, alg, rows: int, cols: int) -> "EnvMatrix":
        z = EnvElem.zero(alg)
        return cls(alg, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, alg, n: int) -> "EnvMatrix":
        z = EnvElem.zero(alg)
        e = EnvElem.one(alg)
        return cls(alg, [[e if i == j else z for j in range(n)] for i in range(n)])

    def __add__(self, other):
        if not isinstance(other, EnvMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return EnvMatrix(self.alg, [
            [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
            for i in range(self.rows)])

    def __neg__(self):
        return EnvMatrix(self.alg, [[-e for e in row] for row in self.entries])

    def __sub__(self, other):
        if not isinstance(other, EnvMatrix):
            return NotImplemented
        return self + (-other)

    def matmul(self, other: "EnvMatrix") -> "EnvMatrix":
        """Plain matrix product; entry products keep this matrix on the left."""
        if self.cols != other.rows:
            raise DimensionMismatch(
                "cannot multiply %dx%d by %dx%d"
                % (self.rows, self.cols, other.rows, other.cols))
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = EnvElem.zero(self.alg)
                for t in range(self.cols):
                    a = self.entries[i][t]
                    b = other.entries[t][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return EnvMatrix(self.alg, out)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, EnvMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            self.entries[i][j] == other.entries[i][j]
            for i in range(self.rows) for j in range(self.cols))

    def apply_cochain(self, v: list) -> list:
        """Matrix action on an M-valued cochain vector, M = W^e.

        Hom(-, M) of the free-module map with this matrix sends
        (v_1..v_cols) to (sum_j entries[i][j] * v_j)_i, entries acting by
        left multiplication.
        """
        if len(v) != self.cols:
            raise DimensionMismatch("cochain length %d, expected %d" % (len(v), self.cols))
        out = []
        for i in range(self.rows):
            acc = EnvElem.zero(self.alg)
            for j in range(self.cols):
                e = self.entries[i][j]
                if e.is_zero() or v[j].is_zero():
                    continue
                acc = acc + e * v[j]
            out.append(acc)
        return out

    def __repr__(self):
        return "EnvMatrix(%dx%d)" % (self.rows, self.cols)


def compose(m1: EnvMatrix, m2: EnvMatrix) -> EnvMatrix:
    """Matrix of the composite map m1 o m2 (m2 applied first).

    With the row convention this is matrix(m2) * matrix(m1); entries multiply
    in W^e with the m2 entry on the left.
    """
    return m2.matmul(m1)


def block_dim(p: int, q: int) -> int:
    """Rank of the free module at column p, row q of the resolution grid."""
    if q not in (0, 1, 2):
        return 0
    if p == 0:
        return 2 if q == 1 else 1
    return 4 if q == 1 else 2


class DifferentialSet:
    """All differential matrices of the resolution grid up to column P.

    Matrices are keyed by their *target* (p, q):
      d_v[(p, q)] : block (p, q+1) -> (p, q)
      d_h[(p, q)] : block (p+1, q) -> (p, q)
      t[(p, q)]   : block (p+2, q-1) -> (p, q)
    Columns p >= 3 repeat columns p - 2.
    """

    def __init__(self, alg: GwaAlgebra, depth: int, d_v, d_h, t):
        self.alg = alg
        self.depth = depth
        self.d_v = d_v
        self.d_h = d_h
        self.t = t


def build_differentials(W: GwaAlgebra, depth: int = 5) -> DifferentialSet:
    """Construct every d_v, d_h, t matrix for columns 0..depth.

    Requires phi != 0 (the resolution needs phi regular) and depth >= 4.
    """
    if W.phi_is_zero:
        raise ZeroPhi("the defining element phi is zero; no free resolution here")
    if depth < 4:
        raise ValueError("depth must be at least 4")

    f1, f2 = W.sigma.images(1)
    phi = W.phi

    def bb(t4: Poly4) -> EnvElem:
        return EnvElem.from_poly4(W, t4)

    def tw(t4: Poly4, left: bool, right: bool) -> Poly4:
        u = (lambda s: W.twist(s, 1)) if left else None
        v = (lambda s: W.twist(s, 1)) if right else None
        return t4.map_factors(u, v)

    z1, z2 = Poly2.variable(1), Poly2.variable(2)
    dz = {1: tensor(z1, Poly2.one()) - tensor(Poly2.one(), z1),
          2: tensor(z2, Poly2.one()) - tensor(Poly2.one(), z2)}
    dl = {i: tw(dz[i], True, False) for i in (1, 2)}   # sigma on the left leg
    dr = {i: tw(dz[i], False, True) for i in (1, 2)}
    db = {i: tw(dz[i], True, True) for i in (1, 2)}

    D = {i: delta(phi, i) for i in (1, 2)}
    Dl = {i: tw(D[i], True, False) for i in (1, 2)}
    Dr = {i: tw(D[i], False, True) for i in (1, 2)}
    Db = {i: tw(D[i], True, True) for i in (1, 2)}
    Df = {(i, j): delta(f, i) for i in (1, 2) for j, f in ((1, f1), (2, f2))}
    jnc = nc_jacobian(W.sigma)

    x1 = env_generator(W, 1, 0)    # x (x) 1
    xr = env_generator(W, 0, 1)    # 1 (x) x
    y1 = env_generator(W, -1, 0)   # y (x) 1
    yr = env_generator(W, 0, -1)   # 1 (x) y
    zero = EnvElem.zero(W)

    def M(rows):
        return EnvMatrix(W, rows)

    d_v = {
        (0, 0): M([[bb(dz[1])], [bb(dz[2])]]),
        (0, 1): M([[bb(-dz[2]), bb(dz[1])]]),
        (1, 0): M([[bb(dl[1]), zero], [bb(dl[2]), zero],
                   [zero, bb(dr[1])], [zero, bb(dr[2])]]),
        (1, 1): M([[bb(-dl[2]), bb(dl[1]), zero, zero],
                   [zero, zero, bb(-dr[2]), bb(dr[1])]]),
        (2, 0): M([[bb(dz[1]), zero], [bb(dz[2]), zero],
                   [zero, bb(db[1])], [zero, bb(db[2])]]),
        (2, 1): M([[bb(-dz[2]), bb(dz[1]), zero, zero],
                   [zero, zero, bb(-db[2]), bb(db[1])]]),
    }

    d_h = {
        (0, 0): M([[xr - x1], [yr - y1]]),
        (0, 1): M([[x1 - xr * bb(Df[(1, 1)]), -(xr * bb(Df[(2, 1)]))],
                   [-(xr * bb(Df[(1, 2)])), x1 - xr * bb(Df[(2, 2)])],
                   [-yr + y1 * bb(Df[(1, 1)]), y1 * bb(Df[(2, 1)])],
                   [y1 * bb(Df[(1, 2)]), -yr + y1 * bb(Df[(2, 2)])]]),
        (0, 2): M([[-x1 + xr * bb(jnc)], [yr - y1 * bb(jnc)]]),
        (1, 0): M([[y1, xr], [yr, x1]]),
        (1, 1): M([[-y1, zero, -xr, zero],
                   [zero, -y1, zero, -xr],
                   [-yr, zero, -x1, zero],
                   [zero, -yr, zero, -x1]]),
        (1, 2): M([[y1, xr], [yr, x1]]),
        (2, 0): M([[-x1, xr], [yr, -y1]]),
        (2, 1): M([[x1, zero, -xr, zero],
                   [zero, x1, zero, -xr],
                   [-yr, zero, y1, zero],
                   [zero, -yr, zero, y1]]),
        (2, 2): M([[-x1, xr], [yr, -y1]]),
    }

    t = {
        (0, 1): M([[bb(D[1]), bb(D[2])],
                   [bb(Db[1] * Df[(1, 1)] + Db[2] * Df[(1, 2)]),
                    bb(Db[1] * Df[(2, 1)] + Db[2] * Df[(2, 2)])]]),
        (0, 2): M([[bb(-D[2])], [bb(D[1])],
                   [bb(-(jnc * Db[2]))], [bb(jnc * Db[1])]]),
        (1, 1): M([[bb(Dl[1]), bb(Dl[2]), zero, zero],
                   [zero, zero, bb(Dr[1]), bb(Dr[2])]]),
        (1, 2): M([[bb(-Dl[2]), zero], [bb(Dl[1]), zero],
                   [zero, bb(-Dr[2])], [zero, bb(Dr[1])]]),
        (2, 1): M([[bb(D[1]), bb(D[2]), zero, zero],
                   [zero, zero, bb(Db[1]), bb(Db[2])]]),
        (2, 2): M([[bb(-D[2]), zero], [bb(D[1]), zero],
                   [zero, bb(-Db[2])], [zero, bb(Db[1])]]),
    }

    # columns repeat with period two from column 3 on
    for p in range(3, depth + 1):
        for q in (0, 1):
            d_v[(p, q)] = d_v[(p - 2, q)]
        for q in (0, 1, 2):
            d_h[(p, q)] = d_h[(p - 2, q)]
        for q in (1, 2):
            t[(p, q)] = t[(p - 2, q)]

    return DifferentialSet(W, depth, d_v, d_h, t)


# -- verification suites -----------------------------------------------------

def verify_homotopy(ds: DifferentialSet) -> "ComplexReport":
    """Check every instance of the five structure identities.

    All composites are formed with ``compose`` and compared with the exact
    zero matrix.
    """
    P = ds.depth
    checks = []

    def record(name, target, value):
        checks.append({"identity": name, "target": list(target),
                       "ok": value.is_zero()})

    for p in range(0, P + 1):
        record("dv.dv = 0", (p, 0),
               compose(ds.d_v[(p, 0)], ds.d_v[(p, 1)]))

    for p in range(0, P):
        for q in (0, 1):
            s = compose(ds.d_h[(p, q)], ds.d_v[(p + 1, q)]) \
                + compose(ds.d_v[(p, q)], ds.d_h[(p, q + 1)])
            record("dh.dv + dv.dh = 0", (p, q), s)

    for p in range(0, P - 1):
        for q in (0, 1, 2):
            s = compose(ds.d_h[(p, q)], ds.d_h[(p + 1, q)])
            if q <= 1:
                s = s + compose(ds.d_v[(p, q)], ds.t[(p, q + 1)])
            if q >= 1:
                s = s + compose(ds.t[(p, q)], ds.d_v[(p + 2, q - 1)])
            record("dh.dh + dv.t + t.dv = 0", (p, q), s)

    for p in range(0, P - 2):
        for q in (1, 2):
            s = compose(ds.d_h[(p, q)], ds.t[(p + 1, q)]) \
                + compose(ds.t[(p, q)], ds.d_h[(p + 2, q - 1)])
            record("dh.t + t.dh = 0", (p, q), s)

    for p in range(0, P - 3):
        record("t.t = 0", (p, 2),
               compose(ds.t[(p, 2)], ds.t[(p + 2, 1)]))

    return ComplexReport("homotopy-identities", checks)


def total_blocks(n: int):
    """The (p, q) blocks of total degree n, p ascending."""
    return [(p, n - p) for p in range(max(0, n - 2), n + 1)]


def total_matrix(ds: DifferentialSet, n: int) -> EnvMatrix:
    """The block matrix of d : Tot_n -> Tot_{n-1}."""
    sources = total_blocks(n)
    targets = total_blocks(n - 1)
    col_offsets, cols = {}, 0
    for blk in targets:
        col_offsets[blk] = cols
        cols += block_dim(*blk)
    rows = sum(block_dim(*blk) for blk in sources)
    out = EnvMatrix.zero(ds.alg, rows, cols)
    row0 = 0
    for (p, q) in sources:
        for (tp, tq), mat in (((p, q - 1), ds.d_v.get((p, q - 1))),
                              ((p - 1, q), ds.d_h.get((p - 1, q))),
                              ((p - 2, q + 1), ds.t.get((p - 2, q + 1)))):
            if mat is None or (tp, tq) not in col_offsets:
                continue
            c0 = col_offsets[(tp, tq)]
            for i in range(mat.rows):
                for j in range(mat.cols):
                    out.entries[row0 + i][c0 + j] = mat.entries[i][j]
        row0 += block_dim(p, q)
    return out


def total_d_squared(ds: DifferentialSet) -> "ComplexReport":
    """Assemble the total complex and check d o d = 0 degree by degree,
    plus the augmentation and the period-two repetition of the tail."""
    P = ds.depth
    mats = {n: total_matrix(ds, n) for n in range(1, P + 1)}
    checks = []

    for n in range(1, P):
        square = mats[n + 1].matmul(mats[n])
        checks.append({"identity": "d.d = 0 on Tot", "target": [n + 1, n - 1],
                       "ok": square.is_zero()})

    aug_ok = all(e.mu_w().is_zero() for row in mats[1].entries for e in row)
    checks.append({"identity": "mu∘d = 0 (augmentation)", "target": [1, 0],
                   "ok": aug_ok})

    for n in range(3, P - 1):
        checks.append({"identity": "period-two tail (d_n = d_n+2)",
                       "target": [n + 2, n],
                       "ok": mats[n] == mats[n + 2]})

    return ComplexReport("total-complex", checks)


class ComplexReport:
    """A flat list of named pass/fail checks."""

    def __init__(self, name: str, checks):
        self.name = name
        self.checks = checks

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c["ok"]]

    def to_dict(self):
        return {"suite": self.name, "ok": self.ok, "checks": self.checks}

    def __repr__(self):
        return "ComplexReport(%s: %d checks, %s)" % (
            self.name, len(self.checks), "ok" if self.ok else "FAILED")
