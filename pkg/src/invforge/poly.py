"""Sparse multivariate polynomials with exact field coefficients.

Monomials are exponent tuples; the canonical term order is descending
lexicographic on exponent tuples (x1 > x2 > ...), which is also the order
used for rendering, monomial bases and single-divisor division.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import EntryParseError, FieldError
from .fields import FieldElement, _Tokens, _parse_atom


class Polynomial:
    """Immutable sparse polynomial: spec, variable count, {exponents: coeff}."""

    __slots__ = ("spec", "nvars", "terms", "_hash")

    def __init__(self, spec, nvars, terms):
        clean = {e: c for e, c in terms.items() if not c.is_zero()}
        self.spec = spec
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(spec, nvars):
        return Polynomial(spec, nvars, {})

    @staticmethod
    def constant(spec, nvars, value):
        if isinstance(value, (int, Fraction)):
            value = spec.from_fraction(Fraction(value))
        return Polynomial(spec, nvars, {(0,) * nvars: value})

    @staticmethod
    def variable(spec, nvars, i):
        expo = [0] * nvars
        expo[i] = 1
        return Polynomial(spec, nvars, {tuple(expo): spec.one()})

    @staticmethod
    def monomial(spec, nvars, expo, coeff=None):
        coeff = spec.one() if coeff is None else coeff
        return Polynomial(spec, nvars, {tuple(expo): coeff})

    # -- ring operations -----------------------------------------------------

    def _check(self, other):
        if self.spec != other.spec or self.nvars != other.nvars:
            raise FieldError("polynomial ring mismatch")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                terms[e] = terms[e] + c
            else:
                terms[e] = c
        return Polynomial(self.spec, self.nvars, terms)

    def __sub__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                terms[e] = terms[e] - c
            else:
                terms[e] = -c
        return Polynomial(self.spec, self.nvars, terms)

    def __neg__(self):
        return Polynomial(self.spec, self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + c
                else:
                    terms[e] = c
        return Polynomial(self.spec, self.nvars, terms)

    def scale(self, c):
        if c.is_zero():
            return Polynomial.zero(self.spec, self.nvars)
        return Polynomial(self.spec, self.nvars,
                          {e: coef * c for e, coef in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise FieldError("negative polynomial power")
        result = Polynomial.constant(self.spec, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.spec == other.spec
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, self.nvars,
                               tuple(sorted(self.terms.items(), reverse=True))))
        return self._hash

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self):
        """Lowest total degree of a nonzero term (the multiplicity at 0)."""
        if not self.terms:
            raise FieldError("zero polynomial has no minimal degree")
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def leading(self):
        """(exponent, coeff) of the leading term in descending lex order."""
        if not self.terms:
            raise FieldError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(c.inverse())

    # -- evaluation / substitution -----------------------------------------

    def evaluate(self, point):
        """Value at a tuple of FieldElements."""
        total = self.spec.zero()
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v = v * (x ** a)
            total = total + v
        return total

    def compose(self, images):
        """Substitute images[i] for variable i; images share one ring."""
        if len(images) != self.nvars:
            raise FieldError("compose needs one image per variable")
        target = images[0] if images else None
        out = None
        power_cache = [dict() for _ in images]
        for e, c in self.terms.items():
            term = Polynomial.constant(target.spec, target.nvars, 1).scale(c) \
                if target is not None else None
            for i, a in enumerate(e):
                if a:
                    cache = power_cache[i]
                    if a not in cache:
                        cache[a] = images[i] ** a
                    term = term * cache[a]
            out = term if out is None else out + term
        if out is None:
            return Polynomial.zero(self.spec if target is None else target.spec,
                                   self.nvars if target is None else target.nvars)
        return out

    def translate(self, point):
        """f(x + point) via per-variable binomial expansion."""
        spec = self.spec
        terms = {}
        for e, c in self.terms.items():
            # expand prod_i (x_i + p_i)^{e_i}
            partial = {(): c}
            for i, a in enumerate(e):
                p_i = point[i]
                new = {}
                if a == 0 or p_i.is_zero():
                    for pref, coef in partial.items():
                        new[pref + (a,)] = coef
                else:
                    powers = [spec.one()]
                    for _ in range(a):
                        powers.append(powers[-1] * p_i)
                    for pref, coef in partial.items():
                        for k in range(a + 1):
                            w = coef * spec.from_int(math.comb(a, k)) * powers[a - k]
                            key = pref + (k,)
                            if key in new:
                                new[key] = new[key] + w
                            else:
                                new[key] = w
                partial = new
            for expo, coef in partial.items():
                if expo in terms:
                    terms[expo] = terms[expo] + coef
                else:
                    terms[expo] = coef
        return Polynomial(spec, self.nvars, terms)

    def substitute_linear(self, rows):
        """Replace variable i by the linear form rows[i] (list of coefficients)."""
        images = []
        for row in rows:
            terms = {}
            for j, c in enumerate(row):
                if not c.is_zero():
                    e = [0] * self.nvars
                    e[j] = 1
                    terms[tuple(e)] = c
            images.append(Polynomial(self.spec, self.nvars, terms))
        return self.compose(images)

    # -- division ------------------------------------------------------------

    def divmod_single(self, divisor):
        """Division with remainder by a single polynomial (descending lex)."""
        self._check(divisor)
        if divisor.is_zero():
            raise FieldError("polynomial division by zero")
        lead_e, lead_c = divisor.leading()
        lead_c_inv = lead_c.inverse()
        quo = Polynomial.zero(self.spec, self.nvars)
        rem = Polynomial.zero(self.spec, self.nvars)
        cur = self
        while not cur.is_zero():
            e, c = cur.leading()
            if all(a >= b for a, b in zip(e, lead_e)):
                shift = tuple(a - b for a, b in zip(e, lead_e))
                t = Polynomial.monomial(self.spec, self.nvars, shift, c * lead_c_inv)
                quo = quo + t
                cur = cur - t * divisor
            else:
                t = Polynomial.monomial(self.spec, self.nvars, e, c)
                rem = rem + t
                cur = cur - t
        return quo, rem

    def divides(self, multiple):
        """True iff self divides `multiple` exactly."""
        _, rem = multiple.divmod_single(self)
        return rem.is_zero()

    # -- rendering ------------------------------------------------------------

    def render(self, var_names=None):
        if not self.terms:
            return "0"
        names = var_names or default_var_names(self.nvars)
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, a in enumerate(e):
                if a == 1:
                    factors.append(names[i])
                elif a > 1:
                    factors.append(f"{names[i]}^{a}")
            cstr = c.render()
            multi_term = ("+" in cstr) or (" - " in cstr)
            negative = cstr.startswith("-") and not multi_term
            coeff = f"({cstr})" if multi_term else (cstr[1:] if negative else cstr)
            if not factors:
                body = coeff
            elif coeff == "1":
                body = "*".join(factors)
            else:
                body = coeff + "*" + "*".join(factors)
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"<poly {self.render()}>"


def default_var_names(nvars):
    return tuple(f"x{i + 1}" for i in range(nvars))


# ---------------------------------------------------------------------------
# polynomial parser: terms of entry-grammar coefficients times variable powers,
# joined by + and -.  Accepts x1..xn names plus x,y,z,w aliases for nvars <= 4
# (z stays the field generator symbol only inside coefficient parentheses).
# ---------------------------------------------------------------------------

def parse_polynomial(text, nvars, spec, var_names=None):
    names = list(var_names or default_var_names(nvars))
    aliases = {}
    if var_names is None and nvars <= 4:
        # single-letter conveniences; 'z' stays the field generator when the
        # spec actually has one (extension representations of degree > 1)
        letters = ["x", "y", "z", "w"] if spec.degree == 1 else ["x", "y", "w"]
        for alias, idx in zip(letters, range(nvars)):
            aliases[alias] = idx
    for idx, nm in enumerate(names):
        aliases[nm] = idx
    toks = _PolyTokens(text, aliases, spec)
    poly = _poly_expr(toks, nvars, spec)
    toks.skip_ws()
    if toks.pos != len(text):
        raise EntryParseError(f"unexpected character {text[toks.pos]!r}", toks.pos)
    return poly


class _PolyTokens(_Tokens):
    def __init__(self, text, aliases, spec):
        super().__init__(text)
        self.aliases = aliases
        self.spec = spec

    def try_variable(self):
        self.skip_ws()
        best = None
        for name, idx in self.aliases.items():
            if self.text.startswith(name, self.pos):
                if best is None or len(name) > len(best[0]):
                    best = (name, idx)
        if best is None:
            return None
        name, idx = best
        end = self.pos + len(name)
        if end < len(self.text) and self.text[end].isdigit():
            raise EntryParseError(f"unknown variable starting with {name!r}", self.pos)
        self.pos = end
        return idx


def _poly_expr(toks, nvars, spec):
    value = _poly_term(toks, nvars, spec)
    while True:
        ch = toks.peek()
        if ch == "+":
            toks.take()
            value = value + _poly_term(toks, nvars, spec)
        elif ch == "-":
            toks.take()
            value = value - _poly_term(toks, nvars, spec)
        else:
            return value


def _poly_term(toks, nvars, spec):
    value = _poly_factor(toks, nvars, spec)
    while toks.peek() == "*":
        toks.take()
        value = value * _poly_factor(toks, nvars, spec)
    return value


def _poly_factor(toks, nvars, spec):
    negate = False
    if toks.peek() == "-":
        toks.take()
        negate = True
    value = _poly_atom(toks, nvars, spec)
    if toks.peek() == "^":
        toks.take()
        value = value ** toks.take_uint()
    return -value if negate else value


def _poly_atom(toks, nvars, spec):
    ch = toks.peek()
    if ch is None:
        raise EntryParseError("unexpected end of input", toks.pos)
    if ch == "(":
        toks.take()
        value = _poly_expr(toks, nvars, spec)
        if toks.peek() != ")":
            raise EntryParseError("expected ')'", toks.pos)
        toks.take()
        return value
    idx = toks.try_variable()
    if idx is not None:
        return Polynomial.variable(spec, nvars, idx)
    # fall back to a single coefficient atom (int, fraction, bare z);
    # products and sums stay at the polynomial level
    coeff = _parse_atom(toks, spec)
    return Polynomial.constant(spec, nvars, 1).scale(coeff)
