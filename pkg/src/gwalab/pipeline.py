"""End-to-end analysis of a GWA instance, and the example catalog.

``analyze`` combines the smoothness criterion, the Jacobian/Nakayama data
and, for non-smooth instances with a rational common zero, the Tor witness
chain.  The catalog ships N(p,q) (with its full presentation-validation
data), two synthetic instances, and documented template entries whose GWA
data must be filled in before they become analyzable.
"""

from __future__ import annotations

import importlib.resources
from fractions import Fraction

from .envelope import build_differentials
from .groebner import smoothness_test
from .gwa import GwaAlgebra
from .parse import (CatalogData, GwaRing, ParseError, eval_expr, eval_fraction,
                    eval_poly, parse_autword, parse_catalog, parse_expr_ast)
from .torwitness import run_witness_chain


class UnknownEntry(Exception):
    pass


class RelationFails(Exception):
    def __init__(self, index, source):
        self.index = index
        self.source = source
        super().__init__("relation %d does not reduce to zero: %s"
                         % (index, source))


class AnalysisReport:
    """Everything the criterion and the twist formula say about one instance."""

    def __init__(self, phi_regular, verdict, jacobian, nakayama_images,
                 calabi_yau, twisted_cy_dimension, bv_applicable,
                 witness=None, notes=None):
        self.phi_regular = phi_regular
        self.verdict = verdict
        self.jacobian = jacobian
        self.nakayama_images = nakayama_images
        self.calabi_yau = calabi_yau
        self.twisted_cy_dimension = twisted_cy_dimension
        self.bv_applicable = bv_applicable
        self.witness = witness
        self.notes = notes or []

    @property
    def smooth(self):
        return self.verdict.smooth

    def to_dict(self):
        out = {
            "phi_regular": self.phi_regular,
            "smooth": self.verdict.to_dict(),
            "jacobian": str(self.jacobian),
            "nakayama": self.nakayama_images,
            "calabi_yau": self.calabi_yau,
            "twisted_cy_dimension": self.twisted_cy_dimension,
            "bv_applicable": self.bv_applicable,
            "notes": self.notes,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def analyze(W: GwaAlgebra, lam=None, with_witness=True) -> AnalysisReport:
    """Full verdict for one instance.

    ``lam`` optionally supplies a common zero for the witness chain; when
    omitted, the grid search result from the smoothness test is used.
    """
    verdict = smoothness_test(W)
    J = W.sigma.jacobian()
    nu = W.nakayama_map()
    notes = []
    witness = None

    if verdict.smooth:
        if nu.is_identity():
            notes.append("J = 1: the Nakayama twist is the identity (Calabi-Yau)")
        notes.append("Nakayama twist is diagonal on generators, hence semisimple")
    else:
        if verdict.reason == "zero-phi":
            notes.append("phi = 0 forces infinite global dimension; "
                         "not homologically smooth")
        elif with_witness:
            chosen = lam if lam is not None else verdict.common_zero
            if chosen is not None:
                ds = build_differentials(W, depth=5)
                witness = run_witness_chain(W, chosen, ds)
            else:
                notes.append("criterion says NOT_SMOOTH; no rational common "
                             "zero found, witness unavailable over Q")

    smooth = verdict.smooth
    return AnalysisReport(
        phi_regular=not W.phi_is_zero,
        verdict=verdict,
        jacobian=J,
        nakayama_images=nu.images(),
        calabi_yau=smooth and J == 1,
        twisted_cy_dimension=3 if smooth else None,
        bv_applicable=smooth,
        witness=witness,
        notes=notes,
    )


# -- catalog -------------------------------------------------------------------

class CatalogEntry:
    """A catalog entry: instance data plus presentation-validation data."""

    def __init__(self, data: CatalogData):
        self.data = data

    @property
    def name(self):
        return self.data.name

    @property
    def is_template(self):
        return self.data.is_template

    def specialize(self, bindings) -> GwaAlgebra:
        """Instantiate the entry's GWA at rational parameter values."""
        if self.is_template:
            raise ParseError(
                "entry %r is a template; fill in phi and sigma first"
                % self.name)
        params = {}
        for p in self.data.params:
            if p not in bindings:
                raise ParseError("entry %r needs parameter %r" % (self.name, p))
            params[p] = Fraction(bindings[p])
        for key, value in bindings.items():
            params.setdefault(key, Fraction(value))
        phi = eval_poly(self.data.phi_src[0], params, self.data.phi_src[1])
        sigma = parse_autword(self.data.sigma_src[0], params,
                              self.data.sigma_src[1])
        return GwaAlgebra(sigma, phi)

    def lam(self, bindings):
        if self.data.lam_src is None:
            return None
        params = {k: Fraction(v) for k, v in bindings.items()}
        src, lineno = self.data.lam_src
        parts = src.split(",")
        if len(parts) != 2:
            raise ParseError("lambda needs two components", lineno)
        return (eval_fraction(parts[0], params, lineno),
                eval_fraction(parts[1], params, lineno))

    def validate_presentation(self, bindings, W: GwaAlgebra | None = None,
                              phi_override=None):
        """Push every defining relation through the generator map.

        Returns a list of per-relation check dicts; raises RelationFails on
        the first relation whose normal form is nonzero.  ``phi_override``
        supports negative controls in tests.
        """
        if not self.data.relations or not self.data.gen_map:
            raise ParseError("entry %r has no presentation data" % self.name)
        if W is None:
            W = self.specialize(bindings)
        if phi_override is not None:
            W = GwaAlgebra(W.sigma, phi_override)
        params = {k: Fraction(v) for k, v in bindings.items()}
        ring = GwaRing(W)
        env = {k: ring.from_const(v) for k, v in params.items()}
        for gen, (lineno, src) in self.data.gen_map.items():
            ast = parse_expr_ast(src, lineno)
            base = {"x": W.x(), "y": W.y(), "z1": W.z(1), "z2": W.z(2)}
            base.update(env)
            env[gen] = eval_expr(ast, base, ring)
        checks = []
        for idx, (lineno, src) in enumerate(self.data.relations):
            ast = parse_expr_ast(src, lineno)
            value = eval_expr(ast, env, ring)
            ok = value.is_zero()
            checks.append({"identity": "relation %d: %s" % (idx + 1, src),
                           "ok": ok})
            if not ok:
                raise RelationFails(idx + 1, src)
        return checks


_BUILTIN_FILES = ("npq.cat", "circle.cat", "cusp.cat", "oq_sl2.cat",
                  "u_sl2.cat", "down_up.cat", "quantum_lens.cat",
                  "seifert.cat")


def builtin_catalog() -> dict:
    """Load the catalog entries bundled with the package."""
    entries = {}
    root = importlib.resources.files("gwalab") / "catalog"
    for fname in _BUILTIN_FILES:
        text = (root / fname).read_text(encoding="utf-8")
        entry = CatalogEntry(parse_catalog(text))
        entries[entry.name] = entry
    return entries


def get_entry(name: str) -> CatalogEntry:
    entries = builtin_catalog()
    if name not in entries:
        raise UnknownEntry("no catalog entry named %r (have: %s)"
                           % (name, ", ".join(sorted(entries))))
    return entries[name]


def run_catalog(name: str, specializations) -> list:
    """Validate and analyze a catalog entry at each parameter binding."""
    entry = get_entry(name)
    results = []
    for bindings in specializations:
        W = entry.specialize(bindings)
        presentation = None
        if entry.data.relations:
            presentation = entry.validate_presentation(bindings, W)
        report = analyze(W, lam=entry.lam(bindings))
        results.append({
            "entry": name,
            "params": {k: str(Fraction(v)) for k, v in sorted(bindings.items())},
            "presentation": presentation,
            "analysis": report.to_dict(),
        })
    return results
