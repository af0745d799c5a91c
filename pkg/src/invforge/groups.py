"""Finite matrix groups: closure, structure queries, automorphisms, characters.

Only constant finite groups of k-points are modeled (no scheme structure).
A FiniteMatrixGroup is immutable after closure; element indices follow the
deterministic breadth-first closure order, which is part of the contract.
"""

from __future__ import annotations

from .errors import (BoundExceededError, ClosureCapError, InvForgeError,
                     LinalgError, ModularityError)
from .fields import parse_element, parse_field_spec
from .linalg import Matrix, Subspace, commutant_basis, eigenvalue_candidates, kernel
from . import tables

DEFAULT_CLOSURE_CAP = 20000
DEFAULT_AUT_BOUND = 400


class FiniteMatrixGroup:
    """Closed set of invertible matrices with indexed multiplication."""

    __slots__ = ("spec", "n", "elements", "generator_indices", "name",
                 "_index", "_mult", "_inv", "_orders", "_table", "_cache")

    def __init__(self, spec, n, elements, generator_indices, name=None):
        self.spec = spec
        self.n = n
        self.elements = tuple(elements)
        self.generator_indices = tuple(generator_indices)
        self.name = name
        self._index = {m.key(): i for i, m in enumerate(self.elements)}
        self._mult = {}
        self._inv = [None] * len(self.elements)
        self._orders = [None] * len(self.elements)
        self._table = None
        self._cache = {}

    # -- construction ----------------------------------------------------

    @staticmethod
    def close(gens, cap=DEFAULT_CLOSURE_CAP, name=None):
        """Breadth-first closure of invertible generators under products."""
        if not gens:
            raise InvForgeError("need at least one generator")
        spec = gens[0].spec
        n = gens[0].rows
        for g in gens:
            if g.spec != spec or g.rows != n or g.cols != n:
                raise LinalgError("generators must be square, one size, one field")
            if not g.is_invertible():
                raise LinalgError("singular generator")
        ident = Matrix.identity(spec, n)
        elements = [ident]
        index = {ident.key(): 0}
        frontier = [ident]
        while frontier:
            new_frontier = []
            for m in frontier:
                for g in gens:
                    prod = m * g
                    if prod.key() not in index:
                        index[prod.key()] = len(elements)
                        elements.append(prod)
                        new_frontier.append(prod)
                        if len(elements) > cap:
                            raise ClosureCapError(
                                f"closure exceeded cap {cap}: group infinite or too large")
            frontier = new_frontier
        gen_idx = [index[g.key()] for g in gens]
        return FiniteMatrixGroup(spec, n, elements, gen_idx, name=name)

    # -- basics ------------------------------------------------------------

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        nm = self.name or "group"
        return f"<{nm}: order {self.order} in GL_{self.n}({self.spec.describe()})>"

    @property
    def identity_index(self):
        return 0

    def generators(self):
        return [self.elements[i] for i in self.generator_indices]

    def index_of(self, matrix):
        key = matrix.key()
        if key not in self._index:
            raise InvForgeError("matrix is not an element of the group")
        return self._index[key]

    def mult(self, i, j):
        key = (i, j)
        out = self._mult.get(key)
        if out is None:
            prod = self.elements[i] * self.elements[j]
            out = self._index[prod.key()]
            self._mult[key] = out
        return out

    def inverse(self, i):
        if self._inv[i] is None:
            if i == 0:
                self._inv[i] = 0
            else:
                y = i  # walk the powers of i up to i^(ord-1)
                while self.mult(i, y) != 0:
                    y = self.mult(y, i)
                self._inv[i] = y
        return self._inv[i]

    def element_order(self, i):
        if self._orders[i] is None:
            k, x = 1, i
            while x != 0:
                x = self.mult(x, i)
                k += 1
            self._orders[i] = k
        return self._orders[i]

    def table_group(self):
        """Full multiplication table as a TableGroup (same element indexing)."""
        if self._table is None:
            n = self.order
            self._table = tables.TableGroup(
                [[self.mult(i, j) for j in range(n)] for i in range(n)],
                name=self.name)
        return self._table

    def center_indices(self):
        gens = self.generator_indices
        return [i for i in range(self.order)
                if all(self.mult(i, g) == self.mult(g, i) for g in gens)]

    def scalar_indices(self):
        return [i for i in range(self.order) if self.elements[i].is_scalar()]

    def conjugacy_classes(self):
        """Classes (sorted index tuples) via orbit closure under generators."""
        key = "conjugacy_classes"
        if key not in self._cache:
            assigned = [None] * self.order
            classes = []
            gen_pairs = [(g, self.inverse(g)) for g in self.generator_indices]
            for x in range(self.order):
                if assigned[x] is not None:
                    continue
                orbit = {x}
                frontier = [x]
                while frontier:
                    y = frontier.pop()
                    for g, ginv in gen_pairs:
                        c = self.mult(self.mult(g, y), ginv)
                        if c not in orbit:
                            orbit.add(c)
                            frontier.append(c)
                idx = len(classes)
                for y in orbit:
                    assigned[y] = idx
                classes.append(tuple(sorted(orbit)))
            self._cache[key] = tuple(classes)
        return self._cache[key]

    def subgroup_closure(self, indices):
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in indices:
                y = self.mult(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def subgroup(self, indices, name=None):
        """Closed subgroup (re-closed for safety) as a new FiniteMatrixGroup."""
        closed = sorted(self.subgroup_closure(indices))
        mats = [self.elements[i] for i in closed]
        gens = [self.elements[i] for i in indices] or [self.elements[0]]
        sub = FiniteMatrixGroup.close(gens, cap=len(mats) + 1, name=name)
        assert sub.order == len(mats)
        return sub


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def close_group(gens, cap=DEFAULT_CLOSURE_CAP, name=None):
    return FiniteMatrixGroup.close(gens, cap=cap, name=name)


def pseudo_reflections(g: FiniteMatrixGroup):
    """Indices of elements (not 1) fixing a hyperplane pointwise: rank(m-I) = 1."""
    ident = Matrix.identity(g.spec, g.n)
    out = []
    for i, m in enumerate(g.elements):
        if i == g.identity_index:
            continue
        if (m - ident).rank() == 1:
            out.append(i)
    return out


def reflection_subgroup(g: FiniteMatrixGroup):
    refl = pseudo_reflections(g)
    if not refl:
        return FiniteMatrixGroup.close([Matrix.identity(g.spec, g.n)],
                                       cap=2, name="trivial")
    sub = g.subgroup(refl, name="reflection subgroup")
    # normality: conjugates of pseudo-reflections are pseudo-reflections
    members = {g.elements[i].key() for i in g.subgroup_closure(refl)}
    for w in refl:
        for gi in g.generator_indices:
            c = g.mult(g.mult(gi, w), g.inverse(gi))
            assert g.elements[c].key() in members, "reflection subgroup not normal"
    return sub


def is_absolutely_irreducible(g: FiniteMatrixGroup):
    return len(commutant_basis(g.generators())) == 1


def is_diagonalizable_over_k(g: FiniteMatrixGroup):
    """True iff G is abelian with a full common eigenbasis over the declared field."""
    gens = g.generators()
    for i in g.generator_indices:
        for j in g.generator_indices:
            if g.mult(i, j) != g.mult(j, i):
                return False
    spec, n = g.spec, g.n
    pieces = [Matrix.identity(spec, n).entries]
    for m in gens:
        if m.is_scalar():
            continue
        lams = eigenvalue_candidates(m)
        refined = []
        for basis in pieces:
            bt = Matrix(spec, basis).transpose()
            covered = 0
            for lam in lams:
                rest = (m - Matrix.scalar(spec, n, lam)) * bt
                ker = kernel(rest)
                if ker.dim == 0:
                    continue
                vecs = []
                for coeff in ker.basis:
                    vec = [spec.zero()] * n
                    for c, brow in zip(coeff, basis):
                        if not c.is_zero():
                            vec = [a + c * b for a, b in zip(vec, brow)]
                    vecs.append(vec)
                sub = Subspace(spec, n, vecs)
                covered += sub.dim
                refined.append(sub.basis)
            if covered != len(basis):
                return False  # eigenvalues missing over k
        pieces = refined
    return True


def elementary_abelian_rank(g: FiniteMatrixGroup, ell):
    """Max r with (Z/ell)^r <= G; 0 if no element of order ell."""
    return tables.elementary_abelian_rank(_index_table(g), ell)


def _index_table(g):
    """Lazy TableGroup veneer over the group's own mult cache."""
    return g.table_group()


def automorphism_group(g: FiniteMatrixGroup, bound=DEFAULT_AUT_BOUND):
    """All abstract automorphisms as GroupAutomorphism objects (sorted)."""
    key = ("automorphism_group", bound)
    if key not in g._cache:
        if g.order > bound:
            raise BoundExceededError(
                f"automorphism bound {bound} exceeded (|G| = {g.order})")
        tg = g.table_group()
        perms = tables.automorphisms(tg, bound=bound)
        inner = tables.inner_automorphisms(tg)
        g._cache[key] = [GroupAutomorphism(p, p in inner) for p in perms]
    return g._cache[key]


class GroupAutomorphism:
    """Automorphism as a permutation of element indices."""

    __slots__ = ("perm", "inner")

    def __init__(self, perm, inner):
        self.perm = tuple(perm)
        self.inner = inner

    def __call__(self, i):
        return self.perm[i]

    def __eq__(self, other):
        return isinstance(other, GroupAutomorphism) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        tag = "inner" if self.inner else "outer"
        return f"GroupAutomorphism({tag}, {self.perm})"

    def compose(self, other):
        """self after other (apply other first)."""
        return tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))


def outer_classes(g: FiniteMatrixGroup, bound=DEFAULT_AUT_BOUND):
    """Coset representatives of Aut(G)/Inn(G), identity coset first.

    Each class is represented by its lexicographically least permutation.
    """
    auts = automorphism_group(g, bound=bound)
    tg = g.table_group()
    inner = sorted(tables.inner_automorphisms(tg))
    seen = set()
    reps = []
    for a in auts:
        if a.perm in seen:
            continue
        coset = {tuple(a.perm[i] for i in inn) for inn in inner}
        rep = min(coset)
        for p in coset:
            seen.add(p)
        reps.append(rep)
    reps.sort()
    identity_perm = tuple(range(g.order))
    id_coset_rep = None
    for rep in reps:
        coset = {tuple(rep[i] for i in inn) for inn in inner}
        if identity_perm in coset:
            id_coset_rep = rep
            break
    ordered = [id_coset_rep] + [r for r in reps if r != id_coset_rep]
    return [GroupAutomorphism(r, r == id_coset_rep) for r in ordered]


def natural_character(g: FiniteMatrixGroup):
    """chi(x) = trace(x) for every element index."""
    return tuple(m.trace() for m in g.elements)


def character_inner_product(g: FiniteMatrixGroup, chi, psi):
    """<chi, psi> = (1/|G|) sum chi(x) conj(psi(x)), char 0 only.

    Conjugation uses the cyclotomic automorphism z -> z^(n-1) when available
    and psi(x^{-1}) otherwise (equal for characters of representations).
    """
    if g.spec.characteristic() != 0:
        raise ModularityError("character inner product needs characteristic 0")
    total = g.spec.zero()
    use_conj = g.spec.is_cyclotomic()
    for i in range(g.order):
        if use_conj:
            total = total + chi[i] * psi[i].conjugate()
        else:
            total = total + chi[i] * psi[g.inverse(i)]
    return total / g.spec.from_int(g.order)


def natural_character_self_product(g: FiniteMatrixGroup):
    chi = natural_character(g)
    return character_inner_product(g, chi, chi)


# ---------------------------------------------------------------------------
# group definition files: UTF-8 key/value lines
#   field = cyclotomic(20) | rational | finite(P[, MOD]) | number_field(POLY)
#   dim = N
#   name = label            (optional)
#   cap = N                 (optional)
#   generator = e11, e12, ..., eNN   (row-major entry expressions; repeatable)
# ---------------------------------------------------------------------------

def parse_group_text(text, close=True):
    fields = {"generator": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvForgeError(f"group file line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if key == "generator":
            fields["generator"].append(value)
        else:
            fields[key] = value
    if "field" not in fields or "dim" not in fields:
        raise InvForgeError("group file needs 'field' and 'dim'")
    spec = parse_field_spec(fields["field"])
    n = int(fields["dim"])
    gens = []
    for gtext in fields["generator"]:
        entries = [e.strip() for e in gtext.split(",")]
        if len(entries) != n * n:
            raise InvForgeError(
                f"generator needs {n * n} entries, got {len(entries)}")
        values = [parse_element(e, spec) for e in entries]
        gens.append(Matrix(spec, [values[i * n:(i + 1) * n] for i in range(n)]))
    name = fields.get("name")
    cap = int(fields.get("cap", DEFAULT_CLOSURE_CAP))
    if not close:
        return spec, n, gens, name, cap
    return FiniteMatrixGroup.close(gens, cap=cap, name=name)


def load_group_file(path, close=True):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group_text(fh.read(), close=close)
