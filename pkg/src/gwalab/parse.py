"""Parsing for polynomial expressions, automorphism words, instance files
and catalog entry files.

Grammar (whitespace-insensitive, ``#`` starts a comment):

    expr    := muldiv (('+' | '-') muldiv)*
    muldiv  := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := INTEGER | NAME | '(' expr ')'

Division requires a nonzero constant divisor (so rationals are written
``a/b``); exponents must evaluate to nonnegative integer constants.  The
same expression syntax serves commutative polynomials in z1, z2, scalar
constants, and noncommutative words in declared generators (where ``*``
keeps its written order).

Automorphism words:  ``elem1(<poly in z2>)``, ``elem2(<poly in z1>)``,
``affine([[a,b],[c,d]],[e,f])``, joined by ``;``, rightmost applied first.

Instance files are ``key = value`` lines: ``phi``, ``sigma``, optional
``lambda = r1, r2``, and any other key binds a rational parameter.
Catalog files extend this with ``[relations]`` and ``[map]`` sections.
"""

from __future__ import annotations

from fractions import Fraction

from .autword import Affine, AutWord, Elementary
from .gwa import GwaAlgebra
from .poly import Poly2


class ParseError(Exception):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = " (line %d%s)" % (line, ", col %d" % col if col else "")
        super().__init__(message + where)


class UnboundParameter(ParseError):
    pass


# -- tokenizer ---------------------------------------------------------------

_OPS = set("+-*/^()[],;=")


class Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):
        return "Token(%s, %r)" % (self.kind, self.value)


def tokenize(text, line_offset=1):
    tokens = []
    line, col = line_offset, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            start = i
            c0 = col
            while i < len(text) and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(Token("num", int(text[start:i]), line, c0))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            c0 = col
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(Token("name", text[start:i], line, c0))
            continue
        if ch in _OPS:
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    tokens.append(Token("eof", None, line, col))
    return tokens


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError("expected %r, found %r" % (kind, tok.value),
                             tok.line, tok.col)
        return self.next()


# -- expression AST -----------------------------------------------------------

def _parse_expr(s: _Stream):
    node = _parse_muldiv(s)
    while s.peek().kind in ("+", "-"):
        op = s.next().kind
        rhs = _parse_muldiv(s)
        node = ("add" if op == "+" else "sub", node, rhs)
    return node


def _parse_muldiv(s: _Stream):
    node = _parse_unary(s)
    while s.peek().kind in ("*", "/"):
        op = s.next().kind
        rhs = _parse_unary(s)
        node = ("mul" if op == "*" else "div", node, rhs)
    return node


def _parse_unary(s: _Stream):
    if s.peek().kind == "-":
        s.next()
        return ("neg", _parse_unary(s))
    return _parse_power(s)


def _parse_power(s: _Stream):
    node = _parse_atom(s)
    if s.peek().kind == "^":
        s.next()
        exponent = _parse_unary(s)
        node = ("pow", node, exponent)
    return node


def _parse_atom(s: _Stream):
    tok = s.peek()
    if tok.kind == "num":
        s.next()
        return ("num", Fraction(tok.value))
    if tok.kind == "name":
        s.next()
        return ("name", tok.value, tok.line, tok.col)
    if tok.kind == "(":
        s.next()
        node = _parse_expr(s)
        s.expect(")")
        return node
    raise ParseError("expected a number, name or '('", tok.line, tok.col)


def parse_expr_ast(text, line_offset=1):
    s = _Stream(tokenize(text, line_offset))
    node = _parse_expr(s)
    s.expect("eof")
    return node


def expr_names(ast):
    """All names referenced by an expression AST."""
    kind = ast[0]
    if kind == "num":
        return set()
    if kind == "name":
        return {ast[1]}
    if kind == "neg":
        return expr_names(ast[1])
    return expr_names(ast[1]) | expr_names(ast[2])


def eval_expr(ast, env, ring):
    """Evaluate an AST in a ring adapter.

    ``env`` maps names to ring elements; ``ring`` provides from_const,
    add/sub/mul/neg/pow and const_of (returning a Fraction or None).
    Multiplication keeps the written order, so noncommutative targets work.
    """
    kind = ast[0]
    if kind == "num":
        return ring.from_const(ast[1])
    if kind == "name":
        name = ast[1]
        if name not in env:
            raise UnboundParameter("unbound name %r" % name, ast[2], ast[3])
        return env[name]
    if kind == "neg":
        return ring.neg(eval_expr(ast[1], env, ring))
    a = eval_expr(ast[1], env, ring)
    if kind == "pow":
        e = eval_expr(ast[2], env, ring)
        c = ring.const_of(e)
        if c is None or c.denominator != 1 or c < 0:
            raise ParseError("exponent must be a nonnegative integer constant")
        return ring.pow(a, int(c))
    b = eval_expr(ast[2], env, ring)
    if kind == "add":
        return ring.add(a, b)
    if kind == "sub":
        return ring.sub(a, b)
    if kind == "mul":
        return ring.mul(a, b)
    if kind == "div":
        c = ring.const_of(b)
        if c is None:
            raise ParseError("division by a non-constant expression")
        if c == 0:
            raise ParseError("division by zero")
        return ring.mul(a, ring.from_const(Fraction(1) / c))
    raise AssertionError("unknown AST node %r" % (kind,))


class PolyRing:
    """Adapter producing Poly2 values."""

    @staticmethod
    def from_const(c):
        return Poly2.const(c)

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)
    pow = staticmethod(lambda a, n: a**n)

    @staticmethod
    def const_of(p):
        return p.constant_value() if p.is_constant() else None


class FractionRing:
    """Adapter for plain rational constants."""

    @staticmethod
    def from_const(c):
        return Fraction(c)

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)
    pow = staticmethod(lambda a, n: a**n)

    @staticmethod
    def const_of(v):
        return v


class GwaRing:
    """Adapter producing GwaElem values (order-preserving products)."""

    def __init__(self, W: GwaAlgebra):
        self.W = W

    def from_const(self, c):
        return self.W.from_poly(Poly2.const(c))

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)

    def mul(self, a, b):
        return self.W.mul(a, b)

    neg = staticmethod(lambda a: -a)

    def pow(self, a, n):
        out = self.W.one()
        for _ in range(n):
            out = self.W.mul(out, a)
        return out

    @staticmethod
    def const_of(e):
        if e.is_zero():
            return Fraction(0)
        if list(e.degrees()) == [0] and e.mid.is_constant():
            return e.mid.constant_value()
        return None


def poly_env(params):
    env = {"z1": Poly2.variable(1), "z2": Poly2.variable(2)}
    for k, v in params.items():
        env[k] = Poly2.const(v)
    return env


def eval_poly(text_or_ast, params, line_offset=1) -> Poly2:
    ast = text_or_ast if isinstance(text_or_ast, tuple) \
        else parse_expr_ast(text_or_ast, line_offset)
    return eval_expr(ast, poly_env(params), PolyRing)


def eval_fraction(text_or_ast, params, line_offset=1) -> Fraction:
    ast = text_or_ast if isinstance(text_or_ast, tuple) \
        else parse_expr_ast(text_or_ast, line_offset)
    env = {k: Fraction(v) for k, v in params.items()}
    return eval_expr(ast, env, FractionRing)


# -- automorphism words -------------------------------------------------------

def _parse_const(s: _Stream, params):
    node = _parse_expr(s)
    env = {k: Fraction(v) for k, v in params.items()}
    return eval_expr(node, env, FractionRing)


def _parse_pair(s: _Stream, params):
    s.expect("[")
    a = _parse_const(s, params)
    s.expect(",")
    b = _parse_const(s, params)
    s.expect("]")
    return (a, b)


def parse_autword(text, params=None, line_offset=1) -> AutWord:
    """Parse a generator word; rightmost factor applies first."""
    params = params or {}
    s = _Stream(tokenize(text, line_offset))
    factors = []
    while True:
        tok = s.peek()
        if tok.kind == "eof" and not factors:
            break  # empty word = identity
        head = s.expect("name")
        if head.value in ("elem1", "elem2"):
            axis = 1 if head.value == "elem1" else 2
            s.expect("(")
            shift_ast = _parse_expr(s)
            s.expect(")")
            shift = eval_expr(shift_ast, poly_env(params), PolyRing)
            if shift.degree_in(axis) > 0:
                raise ParseError(
                    "elem%d shift must not involve z%d" % (axis, axis),
                    head.line, head.col)
            factors.append(Elementary(axis, shift))
        elif head.value == "affine":
            s.expect("(")
            s.expect("[")
            row1 = _parse_pair(s, params)
            s.expect(",")
            row2 = _parse_pair(s, params)
            s.expect("]")
            s.expect(",")
            trans = _parse_pair(s, params)
            s.expect(")")
            try:
                factors.append(Affine((row1, row2), trans))
            except ValueError as exc:
                raise ParseError(str(exc), head.line, head.col)
        elif head.value == "id":
            pass
        else:
            raise ParseError("unknown automorphism generator %r" % head.value,
                             head.line, head.col)
        if s.peek().kind == ";":
            s.next()
            continue
        s.expect("eof")
        break
    return AutWord(factors)


# -- instance files ------------------------------------------------------------

class InstanceData:
    """Parsed instance: the algebra data plus optional extras."""

    def __init__(self, phi: Poly2, sigma: AutWord, lam, params):
        self.phi = phi
        self.sigma = sigma
        self.lam = lam
        self.params = params

    def algebra(self) -> GwaAlgebra:
        return GwaAlgebra(self.sigma, self.phi)


def _split_lines(text):
    """Yield (lineno, stripped content) skipping blanks and comments."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield lineno, content


def parse_instance(text, overrides=None) -> InstanceData:
    """Parse an instance file; ``overrides`` pre-binds parameters."""
    overrides = dict(overrides or {})
    params = {}
    phi_src = sigma_src = lam_src = None
    for lineno, content in _split_lines(text):
        if content.startswith("["):
            raise ParseError("sections are not allowed in instance files",
                             lineno)
        if "=" not in content:
            raise ParseError("expected 'key = value'", lineno)
        key, value = content.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key == "phi":
            phi_src = (value, lineno)
        elif key == "sigma":
            sigma_src = (value, lineno)
        elif key == "lambda":
            lam_src = (value, lineno)
        else:
            if key in overrides:
                params[key] = Fraction(overrides.pop(key))
            else:
                params[key] = eval_fraction(value, params, lineno)
    params.update({k: Fraction(v) for k, v in overrides.items()})

    if phi_src is None:
        raise ParseError("missing 'phi ='")
    if sigma_src is None:
        raise ParseError("missing 'sigma ='")
    phi = eval_poly(phi_src[0], params, phi_src[1])
    sigma = parse_autword(sigma_src[0], params, sigma_src[1])
    lam = None
    if lam_src is not None:
        s = _Stream(tokenize(lam_src[0], lam_src[1]))
        a = _parse_const(s, params)
        s.expect(",")
        b = _parse_const(s, params)
        s.expect("eof")
        lam = (a, b)
    return InstanceData(phi, sigma, lam, params)


# -- catalog entry files --------------------------------------------------------

class CatalogData:
    """Raw parsed catalog entry, before parameter specialization."""

    def __init__(self):
        self.name = None
        self.description = ""
        self.note = ""
        self.params = []
        self.phi_src = None
        self.sigma_src = None
        self.lam_src = None
        self.relations = []       # list of (lineno, source text)
        self.gen_map = {}         # generator name -> (lineno, source text)

    @property
    def is_template(self):
        return self.phi_src is None or self.sigma_src is None


def parse_catalog(text) -> CatalogData:
    data = CatalogData()
    section = None
    for lineno, content in _split_lines(text):
        if content.startswith("[") and content.endswith("]"):
            section = content[1:-1].strip().lower()
            if section not in ("relations", "map"):
                raise ParseError("unknown section %r" % section, lineno)
            continue
        if section == "relations":
            data.relations.append((lineno, content))
            continue
        if section == "map":
            if "=" not in content:
                raise ParseError("expected 'generator = expression'", lineno)
            key, value = content.split("=", 1)
            data.gen_map[key.strip()] = (lineno, value.strip())
            continue
        if "=" not in content:
            raise ParseError("expected 'key = value'", lineno)
        key, value = content.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key == "name":
            data.name = value
        elif key == "description":
            data.description = value
        elif key == "note":
            data.note = value
        elif key == "params":
            data.params = [p.strip() for p in value.split(",") if p.strip()]
        elif key == "phi":
            data.phi_src = (value, lineno)
        elif key == "sigma":
            data.sigma_src = (value, lineno)
        elif key == "lambda":
            data.lam_src = (value, lineno)
        else:
            raise ParseError("unknown key %r" % key, lineno)
    if data.name is None:
        raise ParseError("catalog entry needs a 'name ='")
    return data
