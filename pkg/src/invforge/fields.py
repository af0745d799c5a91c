"""Exact arithmetic in Q, finite fields F_{p^m} and number fields Q[z]/(m(z)).

Cyclotomic fields are number fields with the n-th cyclotomic polynomial as
modulus; they additionally carry the conjugation automorphism z -> z^(n-1).
Elements are canonical representatives: a reduced Fraction over Q, or a
coefficient tuple of degree < deg(modulus) otherwise.  Everything here is
immutable and hashable, so values can be shared freely.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from functools import lru_cache

from .errors import EntryParseError, FieldError

RATIONAL = "rational"
FINITE = "finite"
NUMBER_FIELD = "number_field"


# ---------------------------------------------------------------------------
# univariate integer / F_p polynomial helpers (coefficient lists, c[0] = const)
# ---------------------------------------------------------------------------

def _trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def _int_poly_divmod(num, den):
    """Exact divmod of integer-coefficient polynomials; den monic assumed."""
    num = _trim(num)
    den = _trim(den)
    quo = [0] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    while len(rem) >= len(den):
        k = len(rem) - len(den)
        lead = rem[-1]
        quo[k] = lead
        for i, d in enumerate(den):
            rem[k + i] -= lead * d
        rem = _trim(rem)
    return quo, rem


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n):
    """Integer coefficients of the n-th cyclotomic polynomial, constant first."""
    if n < 1:
        raise FieldError(f"cyclotomic index must be >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]  # z^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _int_poly_divmod(poly, cyclotomic_coeffs(d))
            assert not rem
    return tuple(poly)


def _modp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _modp_divmod(num, den, p):
    num = _trim([c % p for c in num])
    den = _trim([c % p for c in den])
    if not den:
        raise FieldError("polynomial division by zero")
    inv_lead = pow(den[-1], p - 2, p)
    quo = [0] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    while len(rem) >= len(den):
        k = len(rem) - len(den)
        f = (rem[-1] * inv_lead) % p
        quo[k] = f
        for i, d in enumerate(den):
            rem[k + i] = (rem[k + i] - f * d) % p
        rem = _trim(rem)
    return quo, rem


def _modp_gcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        _, r = _modp_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _modp_powmod(base, e, mod, p):
    result = [1]
    base = _modp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _modp_divmod(_modp_mul(result, base, p), mod, p)[1]
        base = _modp_divmod(_modp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _modp_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible_coeffs(coeffs, p):
    """Irreducibility of a univariate polynomial over F_p (degree <= 12).

    Trial factorization: f of degree m is irreducible iff gcd(f, z^(p^d) - z)
    is trivial for every d <= m/2.
    """
    f = _trim([c % p for c in coeffs])
    m = len(f) - 1
    if m < 1:
        raise FieldError("irreducibility test needs degree >= 1")
    if m > 12:
        raise FieldError(f"irreducibility test supports degree <= 12, got {m}")
    if m == 1:
        return True
    x = [0, 1]
    for d in range(1, m // 2 + 1):
        frob = _modp_powmod(x, p ** d, f, p)  # z^(p^d) mod f
        g = _modp_gcd(f, _modp_sub(frob, x, p), p)
        if len(g) - 1 >= 1:
            return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    for q in range(2, int(math.isqrt(n)) + 1):
        if n % q == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# field specifications
# ---------------------------------------------------------------------------

class FieldSpec:
    """One of Q, F_{p^m} = F_p[z]/(modulus), or Q[z]/(min_poly).

    Immutable; use the constructors `rationals`, `finite_field`,
    `number_field`, `cyclotomic`.  Equality and hashing are structural.
    """

    __slots__ = ("kind", "p", "modulus", "cyclotomic_n", "degree",
                 "_red_table", "_hash")

    def __init__(self, kind, p=None, modulus=None, cyclotomic_n=None):
        self.kind = kind
        self.p = p
        self.modulus = tuple(modulus) if modulus is not None else None
        self.cyclotomic_n = cyclotomic_n
        self.degree = (len(self.modulus) - 1) if self.modulus else 1
        self._red_table = None
        self._hash = hash((kind, p, self.modulus, cyclotomic_n))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rationals():
        return _RATIONALS

    @staticmethod
    def finite_field(p, modulus=None):
        """F_p for modulus None, else F_p[z]/(modulus) with modulus monic irreducible."""
        if not _is_prime(p):
            raise FieldError(f"finite field characteristic must be prime, got {p}")
        if modulus is None:
            modulus = (0, 1)  # z: representatives are the constants, i.e. F_p itself
        mod = _trim([int(c) % p for c in modulus])
        if len(mod) < 2:
            raise FieldError("finite field modulus must have degree >= 1")
        if mod[-1] != 1:
            raise FieldError("finite field modulus must be monic")
        if len(mod) - 1 >= 2:
            if len(mod) - 1 <= 12:
                if not is_irreducible_coeffs(mod, p):
                    raise FieldError("finite field modulus is reducible over F_p")
            else:
                warnings.warn("finite field modulus degree > 12: irreducibility not verified")
        return FieldSpec(FINITE, p=p, modulus=tuple(mod))

    @staticmethod
    def number_field(min_poly):
        """Q[z]/(min_poly), min_poly monic with rational coefficients.

        Irreducibility over Q is checked up to degree 8 (rational-root test
        plus modular irreducibility probes); larger degrees are accepted with
        a warning and errors surface later as non-invertible elements.
        """
        mp = [Fraction(c) for c in min_poly]
        while mp and mp[-1] == 0:
            mp.pop()
        if len(mp) < 2:
            raise FieldError("number field min_poly must have degree >= 1")
        if mp[-1] != 1:
            raise FieldError("number field min_poly must be monic")
        _check_min_poly_irreducible(mp)
        return FieldSpec(NUMBER_FIELD, modulus=tuple(mp))

    @staticmethod
    def cyclotomic(n):
        """Q(zeta_n) presented as Q[z]/(Phi_n)."""
        if n < 1:
            raise FieldError(f"cyclotomic index must be >= 1, got {n}")
        coeffs = tuple(Fraction(c) for c in cyclotomic_coeffs(n))
        return FieldSpec(NUMBER_FIELD, modulus=coeffs, cyclotomic_n=n)

    # -- basic protocol ------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.kind == other.kind
                and self.p == other.p and self.modulus == other.modulus
                and self.cyclotomic_n == other.cyclotomic_n)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FieldSpec({self.describe()})"

    def describe(self):
        if self.kind == RATIONAL:
            return "rational"
        if self.kind == FINITE:
            if self.degree == 1:
                return f"finite({self.p})"
            mod = render_univariate(self.modulus)
            return f"finite({self.p}, {mod})"
        if self.cyclotomic_n is not None:
            return f"cyclotomic({self.cyclotomic_n})"
        return f"number_field({render_univariate(self.modulus)})"

    # -- properties ----------------------------------------------------------

    def characteristic(self):
        return self.p if self.kind == FINITE else 0

    def size(self):
        """Number of elements; raises for infinite fields."""
        if self.kind != FINITE:
            raise FieldError("infinite field has no size")
        return self.p ** self.degree

    def is_cyclotomic(self):
        return self.cyclotomic_n is not None

    # -- element constructors --------------------------------------------

    def zero(self):
        return FieldElement(self, self._norm_rep(0))

    def one(self):
        return FieldElement(self, self._norm_rep(1))

    def from_int(self, k):
        return FieldElement(self, self._norm_rep(k))

    def from_fraction(self, fr):
        fr = Fraction(fr)
        if self.kind == RATIONAL:
            return FieldElement(self, fr)
        if self.kind == FINITE:
            den = fr.denominator % self.p
            if den == 0:
                raise FieldError("denominator not invertible in finite field")
            val = (fr.numerator * pow(den, self.p - 2, self.p)) % self.p
            return FieldElement(self, self._const_tuple(val))
        return FieldElement(self, self._const_tuple(fr))

    def gen(self):
        """The class of z (only meaningful for extension representations)."""
        if self.kind == RATIONAL:
            raise FieldError("rational field has no generator z")
        if self.degree == 1:
            # z reduces to a constant modulo a degree-1 modulus
            if self.kind == FINITE:
                return FieldElement(self, self._const_tuple((-self.modulus[0]) % self.p))
            return FieldElement(self, self._const_tuple(-self.modulus[0]))
        rep = [0] * self.degree
        rep[1] = 1
        if self.kind == FINITE:
            return FieldElement(self, tuple(rep))
        return FieldElement(self, tuple(Fraction(c) for c in rep))

    def _const_tuple(self, c):
        rep = [0] * self.degree
        if self.kind == FINITE:
            rep[0] = int(c) % self.p
            return tuple(rep)
        rep = [Fraction(0)] * self.degree
        rep[0] = Fraction(c)
        return tuple(rep)

    def _norm_rep(self, k):
        if self.kind == RATIONAL:
            return Fraction(k)
        return self._const_tuple(k)

    def elements(self):
        """All elements of a finite field, in deterministic coefficient order."""
        if self.kind != FINITE:
            raise FieldError("cannot enumerate an infinite field")
        reps = [()]
        for _ in range(self.degree):
            reps = [r + (c,) for r in reps for c in range(self.p)]
        return [FieldElement(self, r) for r in reps]

    def random_element(self, rng, height=10):
        if self.kind == RATIONAL:
            den = rng.randint(1, height)
            return FieldElement(self, Fraction(rng.randint(-height, height), den))
        if self.kind == FINITE:
            return FieldElement(self, tuple(rng.randrange(self.p)
                                            for _ in range(self.degree)))
        return FieldElement(self, tuple(Fraction(rng.randint(-height, height))
                                        for _ in range(self.degree)))

    # -- representative arithmetic ----------------------------------------

    def _reduction_table(self):
        # image of z^k for k = deg .. 2*deg-2, for fast products
        if self._red_table is None:
            deg = self.degree
            table = []
            if self.kind == FINITE:
                tail = [(-c) % self.p for c in self.modulus[:deg]]
            else:
                tail = [-c for c in self.modulus[:deg]]
            cur = list(tail)  # z^deg
            table.append(tuple(cur))
            for _ in range(deg - 2):
                # multiply by z and reduce
                carry = cur[-1]
                cur = [0] + cur[:-1]
                if carry:
                    cur = [a + carry * t for a, t in zip(cur, tail)]
                    if self.kind == FINITE:
                        cur = [c % self.p for c in cur]
                table.append(tuple(cur))
            self._red_table = table
        return self._red_table

    def _add(self, a, b):
        if self.kind == RATIONAL:
            return a + b
        if self.kind == FINITE:
            return tuple((x + y) % self.p for x, y in zip(a, b))
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        if self.kind == RATIONAL:
            return a - b
        if self.kind == FINITE:
            return tuple((x - y) % self.p for x, y in zip(a, b))
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        if self.kind == RATIONAL:
            return -a
        if self.kind == FINITE:
            return tuple((-x) % self.p for x in a)
        return tuple(-x for x in a)

    def _mul(self, a, b):
        if self.kind == RATIONAL:
            return a * b
        deg = self.degree
        if deg == 1:
            v = a[0] * b[0]
            return ((v % self.p,) if self.kind == FINITE else (v,))
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        table = self._reduction_table()
        out = prod[:deg]
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                row = table[k - deg]
                out = [o + c * r for o, r in zip(out, row)]
        if self.kind == FINITE:
            return tuple(c % self.p for c in out)
        return tuple(Fraction(c) for c in out)

    def _is_zero(self, a):
        if self.kind == RATIONAL:
            return a == 0
        return all(c == 0 for c in a)

    def _inv(self, a):
        if self._is_zero(a):
            raise FieldError("division by zero")
        if self.kind == RATIONAL:
            return 1 / a
        # extended Euclid against the modulus: find s with s*a = gcd mod modulus
        if self.kind == FINITE:
            r0, r1 = list(self.modulus), _trim([c % self.p for c in a])
            s0, s1 = [], [1]
            while len(r1) > 1:
                q, r = _modp_divmod(r0, r1, self.p)
                s_new = _modp_sub(s0, _modp_mul(q, s1, self.p), self.p)
                r0, r1, s0, s1 = r1, r, s1, s_new
                if not r1:
                    raise FieldError("element not invertible (reducible modulus?)")
            cinv = pow(r1[0], self.p - 2, self.p)
            inv = [(x * cinv) % self.p for x in s1]
            inv = (inv + [0] * self.degree)[: self.degree]
            return tuple(inv)
        r0 = [Fraction(c) for c in self.modulus]
        r1 = _trim_frac([Fraction(c) for c in a])
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _frac_poly_divmod(r0, r1)
            s_new = _frac_poly_sub(s0, _frac_poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s_new
            if not r1:
                raise FieldError("element not invertible (reducible min_poly?)")
        c = r1[0]
        inv = [x / c for x in s1]
        inv = (inv + [Fraction(0)] * self.degree)[: self.degree]
        return tuple(inv)

    def conjugate_element(self, elt):
        """Complex conjugation z -> z^(n-1) on a cyclotomic field."""
        if not self.is_cyclotomic():
            raise FieldError("conjugation requires a cyclotomic field spec")
        n = self.cyclotomic_n
        zbar = self.gen() ** ((n - 1) % n) if n > 1 else self.one()
        out = self.zero()
        power = self.one()
        for c in elt.rep:
            if c:
                out = out + FieldElement(self, self._const_tuple(c)) * power
            power = power * zbar
        return out


def _frac_poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim_frac([x - y for x, y in zip(a, b)])


def _trim_frac(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _frac_poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim_frac(out)


def _frac_poly_divmod(num, den):
    num, den = _trim_frac(num), _trim_frac(den)
    quo = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    while len(rem) >= len(den):
        k = len(rem) - len(den)
        f = rem[-1] / den[-1]
        quo[k] = f
        for i, d in enumerate(den):
            rem[k + i] -= f * d
        rem = _trim_frac(rem)
    return quo, rem


def _check_min_poly_irreducible(mp):
    deg = len(mp) - 1
    if deg == 1:
        return
    if deg > 8:
        warnings.warn("min_poly degree > 8: irreducibility not verified")
        return
    # clear denominators for the rational-root test
    den = 1
    for c in mp:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ip = [int(c * den) for c in mp]
    lead, const = ip[-1], ip[0]
    if const == 0:
        raise FieldError("min_poly is reducible over Q (root 0)")
    for r in _divisors(abs(const)):
        for s in _divisors(abs(lead)):
            for sign in (1, -1):
                root = Fraction(sign * r, s)
                if sum(c * root ** i for i, c in enumerate(mp)) == 0:
                    raise FieldError(f"min_poly is reducible over Q (root {root})")
    # modular probes: one irreducible reduction certifies irreducibility over Q
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if lead % p == 0 or den % p == 0:
            continue
        dinv = pow(den % p, p - 2, p)
        red = [(c * dinv) % p for c in ip]
        if len(_trim(red)) - 1 != deg:
            continue
        if is_irreducible_coeffs(red, p):
            return
    warnings.warn("min_poly irreducibility over Q not certified by modular probes")


def _divisors(n):
    out = []
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


_RATIONALS = FieldSpec(RATIONAL)


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

class FieldElement:
    """Canonical element of a FieldSpec (immutable, hashable)."""

    __slots__ = ("spec", "rep", "_hash")

    def __init__(self, spec, rep):
        self.spec = spec
        self.rep = rep
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("field spec mismatch")
            return other
        if isinstance(other, int):
            return self.spec.from_int(other)
        if isinstance(other, Fraction):
            return self.spec.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec._add(self.rep, other.rep))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec._sub(self.rep, other.rep))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec._sub(other.rep, self.rep))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec._mul(self.rep, other.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec._mul(self.rep, self.spec._inv(other.rep)))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec._mul(other.rep, self.spec._inv(self.rep)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec._neg(self.rep))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        return FieldElement(self.spec, self.spec._inv(self.rep))

    def is_zero(self):
        return self.spec._is_zero(self.rep)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = self._coerce(other)
            except FieldError:
                return NotImplemented
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.rep == other.rep

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, self.rep))
        return self._hash

    def conjugate(self):
        return self.spec.conjugate_element(self)

    def as_rational(self):
        """The element as a Fraction, if it is a rational constant."""
        if self.spec.kind == RATIONAL:
            return self.rep
        if self.spec.kind == NUMBER_FIELD and all(c == 0 for c in self.rep[1:]):
            return self.rep[0]
        raise FieldError("element is not a rational constant")

    def render(self):
        """Canonical string in the entry grammar; parse_element round-trips it."""
        if self.spec.kind == RATIONAL:
            return _render_fraction(self.rep)
        parts = []
        for k, c in enumerate(self.rep):
            if c == 0:
                continue
            parts.append((k, c))
        if not parts:
            return "0"
        out = []
        for idx, (k, c) in enumerate(parts):
            if self.spec.kind == FINITE:
                coeff_str, negative = str(c), False
            else:
                coeff_str, negative = _render_fraction(abs(c)), c < 0
            if k == 0:
                body = coeff_str
            else:
                zpow = "z" if k == 1 else f"z^{k}"
                body = zpow if coeff_str == "1" else f"{coeff_str}*{zpow}"
            if idx == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"<{self.render()} in {self.spec.describe()}>"


def _render_fraction(fr):
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"


# ---------------------------------------------------------------------------
# entry-expression parser
#
# expr   := term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := ['-'] atom ('^' uint)?
# atom   := int | int '/' int | 'z' | '(' expr ')'
#
# The unary minus is a superset of the published grammar so canonical renders
# of negative leading coefficients parse back.
# ---------------------------------------------------------------------------

class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def take_uint(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise EntryParseError("expected an integer", start)
        return int(self.text[start:self.pos])


def parse_element(text, spec):
    """Parse an entry expression to a canonical FieldElement of `spec`."""
    toks = _Tokens(text)
    value = _parse_expr(toks, spec)
    toks.skip_ws()
    if toks.pos != len(text):
        raise EntryParseError(f"unexpected character {text[toks.pos]!r}", toks.pos)
    return value


def _parse_expr(toks, spec):
    value = _parse_term(toks, spec)
    while True:
        ch = toks.peek()
        if ch == "+":
            toks.take()
            value = value + _parse_term(toks, spec)
        elif ch == "-":
            toks.take()
            value = value - _parse_term(toks, spec)
        else:
            return value


def _parse_term(toks, spec):
    value = _parse_factor(toks, spec)
    while toks.peek() == "*":
        toks.take()
        value = value * _parse_factor(toks, spec)
    return value


def _parse_factor(toks, spec):
    negate = False
    if toks.peek() == "-":
        toks.take()
        negate = True
    value = _parse_atom(toks, spec)
    if toks.peek() == "^":
        toks.take()
        value = value ** toks.take_uint()
    return -value if negate else value


def _parse_atom(toks, spec):
    ch = toks.peek()
    if ch is None:
        raise EntryParseError("unexpected end of input", toks.pos)
    if ch == "(":
        toks.take()
        value = _parse_expr(toks, spec)
        if toks.peek() != ")":
            raise EntryParseError("expected ')'", toks.pos)
        toks.take()
        return value
    if ch == "z":
        toks.take()
        return spec.gen()
    if ch.isdigit():
        num = toks.take_uint()
        if toks.peek() == "/":
            toks.take()
            pos = toks.pos
            den = toks.take_uint()
            if den == 0:
                raise EntryParseError("division by zero", pos)
            return spec.from_fraction(Fraction(num, den))
        return spec.from_int(num)
    raise EntryParseError(f"unexpected character {ch!r}", toks.pos)


def render_univariate(coeffs):
    """Render an integer/Fraction coefficient list as an entry expression in z."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        c = Fraction(c)
        coeff_str, negative = _render_fraction(abs(c)), c < 0
        if k == 0:
            body = coeff_str
        else:
            zpow = "z" if k == 1 else f"z^{k}"
            body = zpow if coeff_str == "1" else f"{coeff_str}*{zpow}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts) if parts else "0"


def is_irreducible_mod_p(f):
    """Irreducibility over F_p of a univariate Polynomial with prime-field
    coefficients (degree 1..12)."""
    spec = f.spec
    if spec.kind != FINITE or spec.degree != 1:
        raise FieldError("polynomial must live over a prime finite field")
    if f.nvars != 1:
        raise FieldError("irreducibility test needs a univariate polynomial")
    deg = f.total_degree()
    coeffs = [0] * (deg + 1)
    for (k,), c in f.terms.items():
        coeffs[k] = c.rep[0]
    return is_irreducible_coeffs(coeffs, spec.p)


def cyclotomic_polynomial(n):
    """Phi_n as a univariate Polynomial over Q (monic, degree phi(n))."""
    from .poly import Polynomial  # local import: poly depends on fields

    spec = FieldSpec.rationals()
    terms = {}
    for k, c in enumerate(cyclotomic_coeffs(n)):
        if c:
            terms[(k,)] = spec.from_int(c)
    return Polynomial(spec, 1, terms)


def parse_field_spec(text):
    """Parse a field description: rational | cyclotomic(N) | finite(P[, MOD]) | number_field(POLY)."""
    s = text.strip()
    if s == "rational":
        return FieldSpec.rationals()
    for head in ("cyclotomic", "finite", "number_field"):
        if s.startswith(head + "(") and s.endswith(")"):
            inner = s[len(head) + 1:-1].strip()
            if head == "cyclotomic":
                return FieldSpec.cyclotomic(int(inner))
            if head == "finite":
                if "," in inner:
                    p_text, mod_text = inner.split(",", 1)
                    p = int(p_text)
                    mod = _univariate_coeffs(mod_text.strip(), integral=True)
                    return FieldSpec.finite_field(p, mod)
                return FieldSpec.finite_field(int(inner))
            poly = _univariate_coeffs(inner, integral=False)
            return FieldSpec.number_field(poly)
    raise EntryParseError(f"unrecognized field spec {text!r}")


def _univariate_coeffs(text, integral):
    """Coefficients of a univariate polynomial literal in z (constant first)."""
    from .poly import parse_polynomial  # local import: poly depends on fields

    base = FieldSpec.rationals()
    poly = parse_polynomial(text, 1, base, var_names=("z",))
    deg = poly.total_degree()
    coeffs = [Fraction(0)] * (deg + 1)
    for expo, c in poly.terms.items():
        coeffs[expo[0]] = c.as_rational()
    if integral:
        if any(c.denominator != 1 for c in coeffs):
            raise EntryParseError(f"modulus over F_p needs integer coefficients: {text!r}")
        return [int(c) for c in coeffs]
    return coeffs
