"""Graded invariant rings of finite matrix groups.

Degreewise invariant spaces, Hilbert dimension tables, the Molien series,
Reynolds projection, minimal generators with their degree gcd, scaled torus
exponents, lowest-degree relations, and the pseudo-reflection reduction.

The action used throughout is f |-> f(g x): substitute variable i by the
linear form given by row i of g.  A polynomial is G-invariant iff it is
fixed by this substitution for every generator, in any characteristic.
"""

from __future__ import annotations

import math

from .errors import InvForgeError, ModularityError
from .groups import FiniteMatrixGroup, reflection_subgroup
from .linalg import Matrix, kernel
from .poly import Polynomial


def monomials(nvars, degree):
    """Degree-d exponent tuples in descending lexicographic order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    if nvars == 0:
        return [()] if degree == 0 else []
    rec((), degree, nvars)
    out.sort(reverse=True)
    return out


def apply_matrix(g: Matrix, f: Polynomial) -> Polynomial:
    """f(g x): substitute x_i -> sum_j g[i][j] x_j."""
    return f.substitute_linear(g.entries)


def is_invariant(group: FiniteMatrixGroup, f: Polynomial) -> bool:
    return all(apply_matrix(m, f) == f for m in group.generators())


class GradedDims:
    """Dimension table d -> dim of the degree-d graded piece.

    For homogeneous invariants the graded pieces of the filtration by
    multiplicity at the origin coincide with the degree pieces, so the
    two accessors below agree by construction.
    """

    __slots__ = ("dims",)

    def __init__(self, dims):
        self.dims = tuple(int(d) for d in dims)

    def __getitem__(self, d):
        return self.dims[d]

    def __len__(self):
        return len(self.dims)

    def __eq__(self, other):
        return isinstance(other, GradedDims) and self.dims == other.dims

    def __repr__(self):
        return f"GradedDims({list(self.dims)})"

    def multiplicity_quotient_dims(self):
        """dims of (multiplicity >= r) / (multiplicity >= r+1) per r."""
        return self.dims


# ---------------------------------------------------------------------------
# degreewise invariant spaces
# ---------------------------------------------------------------------------

def invariant_space(group: FiniteMatrixGroup, d):
    """rref-canonical basis of the degree-d invariants, any characteristic.

    Joint kernel of rho_d(gen) - 1 over the generators.  When every
    generator maps monomials to single terms (diagonal/permutation-like
    actions) the kernel is read off orbit transports in linear time;
    otherwise the kernel is computed densely, one generator at a time.
    """
    if d < 0:
        raise InvForgeError("degree must be >= 0")
    spec, nvars = group.spec, group.n
    if d == 0:
        return [Polynomial.constant(spec, nvars, 1)]
    basis = monomials(nvars, d)
    gens = group.generators()
    images = []
    monomial_action = True
    for g in gens:
        img = []
        for e in basis:
            p = apply_matrix(g, Polynomial.monomial(spec, nvars, e))
            img.append(p)
            if len(p.terms) > 1:
                monomial_action = False
        images.append(img)
    if monomial_action:
        vectors = _monomial_fixed_vectors(spec, basis, images)
    else:
        vectors = _dense_fixed_vectors(spec, basis, images)
    out = []
    for v in vectors:
        terms = {e: c for e, c in zip(basis, v) if not c.is_zero()}
        out.append(Polynomial(spec, nvars, terms))
    return out


def _monomial_fixed_vectors(spec, basis, images):
    """Joint fixed vectors when each generator sends monomial -> scalar*monomial.

    Transport coefficients along generator moves; a component survives iff
    every loop has scalar 1.  Output is rref-canonical: within a component
    the lex-greatest monomial carries coefficient 1.
    """
    index = {e: i for i, e in enumerate(basis)}
    n = len(basis)
    moves = [[] for _ in range(n)]  # i -> list of (j, lam): gen maps m_i to lam*m_j
    for img in images:
        for i, p in enumerate(img):
            if p.is_zero():
                # a generator must act invertibly on the degree-d piece
                raise InvForgeError("zero image of a monomial under a group element")
            (e, c), = p.terms.items()
            moves[i].append((index[e], c))
    zero, one = spec.zero(), spec.one()
    coeff = [None] * n
    comp = [None] * n
    vectors = []
    for root in range(n):
        if comp[root] is not None:
            continue
        comp_id = len(vectors)
        comp[root] = comp_id
        coeff[root] = one
        stack = [root]
        members = [root]
        consistent = True
        while stack:
            i = stack.pop()
            for j, lam in moves[i]:
                # f invariant and f_i on m_i forces f_j = lam * f_i on m_j
                want = coeff[i] * lam
                if comp[j] is None:
                    comp[j] = comp_id
                    coeff[j] = want
                    members.append(j)
                    stack.append(j)
                elif comp[j] != comp_id or coeff[j] != want:
                    if comp[j] != comp_id:
                        raise InvForgeError("inconsistent orbit bookkeeping")
                    consistent = False
        if consistent:
            v = [zero] * n
            scale = coeff[root].inverse()  # root is lex-greatest in its component
            for m in members:
                v[m] = coeff[m] * scale
            vectors.append(v)
        else:
            vectors.append(None)
    return [v for v in vectors if v is not None]


def _dense_fixed_vectors(spec, basis, images):
    """Joint kernel of (rho(gen) - 1), one generator restriction at a time."""
    index = {e: i for i, e in enumerate(basis)}
    n = len(basis)
    current = Matrix.identity(spec, n).entries  # rows span the running kernel
    for img in images:
        # rows of (rho - 1) applied to current basis vectors, as columns
        cols = []
        for row in current:
            acc = [spec.zero()] * n
            for i, c in enumerate(row):
                if c.is_zero():
                    continue
                p = img[i]
                for e, pc in p.terms.items():
                    acc[index[e]] = acc[index[e]] + c * pc
                acc[i] = acc[i] - c
            cols.append(acc)
        ker = kernel(Matrix(spec, cols).transpose())
        new_rows = []
        for coeffs in ker.basis:
            vec = [spec.zero()] * n
            for c, row in zip(coeffs, current):
                if not c.is_zero():
                    vec = [a + c * b for a, b in zip(vec, row)]
            new_rows.append(vec)
        if not new_rows:
            return []
        red, pivots = Matrix(spec, new_rows).rref()
        current = [list(r) for r in red.entries[: len(pivots)]]
    return [list(row) for row in current]


def hilbert_dims(group: FiniteMatrixGroup, d_max) -> GradedDims:
    if d_max < 0:
        raise InvForgeError("d_max must be >= 0")
    return GradedDims([len(invariant_space(group, d)) for d in range(d_max + 1)])


# ---------------------------------------------------------------------------
# Molien series (characteristic 0)
# ---------------------------------------------------------------------------

def molien_series(group: FiniteMatrixGroup, d_max) -> GradedDims:
    """Coefficients of (1/|G|) sum_g 1/det(1 - t g) up to degree d_max.

    Elements are bucketed by characteristic polynomial; each bucket's series
    inverse is a linear recurrence of length n.
    """
    if group.spec.characteristic() != 0:
        raise ModularityError("Molien series requires characteristic 0")
    spec, n = group.spec, group.n
    buckets = {}
    from .linalg import char_poly
    for m in group.elements:
        cp = char_poly(m)
        key = tuple(cp.terms.get((k,), spec.zero()).rep for k in range(n + 1))
        if key in buckets:
            buckets[key][1] += 1
        else:
            buckets[key] = [cp, 1]
    totals = [spec.zero() for _ in range(d_max + 1)]
    for cp, count in buckets.values():
        # det(1 - t g) = sum_k c_{n-k} t^k for char poly x^n + c_1 x^{n-1} + ...
        den = [cp.terms.get((n - k,), spec.zero()) for k in range(n + 1)]
        inv = [spec.one()]
        for m_ in range(1, d_max + 1):
            acc = spec.zero()
            for k in range(1, min(m_, n) + 1):
                acc = acc + den[k] * inv[m_ - k]
            inv.append(-acc)
        cnt = spec.from_int(count)
        for d in range(d_max + 1):
            totals[d] = totals[d] + cnt * inv[d]
    order = spec.from_int(group.order)
    dims = []
    for d, tot in enumerate(totals):
        val = (tot / order).as_rational()
        if val.denominator != 1 or val < 0:
            raise InvForgeError(f"non-integral Molien coefficient at degree {d}")
        dims.append(int(val))
    return GradedDims(dims)


# ---------------------------------------------------------------------------
# Reynolds projection
# ---------------------------------------------------------------------------

def reynolds(group: FiniteMatrixGroup, f: Polynomial) -> Polynomial:
    """(1/|G|) sum_g f(g x); projection onto invariants when char does not divide |G|."""
    p = group.spec.characteristic()
    if p and group.order % p == 0:
        raise ModularityError("Reynolds projection needs char not dividing |G|")
    total = Polynomial.zero(group.spec, group.n)
    for m in group.elements:
        total = total + apply_matrix(m, f)
    return total.scale(group.spec.from_int(group.order).inverse())


# ---------------------------------------------------------------------------
# minimal generators
# ---------------------------------------------------------------------------

class GeneratorSet:
    """Minimal homogeneous generators with degrees and their gcd e."""

    __slots__ = ("group", "generators", "e", "d_max")

    def __init__(self, group, generators, d_max):
        self.group = group
        self.generators = tuple(generators)  # (degree, Polynomial), degree ascending
        self.d_max = d_max
        degs = [d for d, _ in generators]
        self.e = math.gcd(*degs) if degs else 0

    @property
    def degrees(self):
        return [d for d, _ in self.generators]

    @property
    def polynomials(self):
        return [p for _, p in self.generators]

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"GeneratorSet(degrees {self.degrees}, e = {self.e})"


def minimal_generators(group: FiniteMatrixGroup, d_max=None) -> GeneratorSet:
    """Degree-by-degree minimal generators of the invariant ring.

    d_max defaults to |G| (valid bound whenever char does not divide |G|);
    the modular case requires an explicit bound.  In characteristic 0 the
    Molien series prunes degrees that products of earlier generators
    already fill.
    """
    p = group.spec.characteristic()
    modular = p != 0 and group.order % p == 0
    if d_max is None:
        if modular:
            raise ModularityError(
                "modular case: pass an explicit degree bound d_max")
        d_max = group.order
    mol = None
    if p == 0:
        mol = molien_series(group, d_max)
    gens = []
    power_cache = {}
    for d in range(1, d_max + 1):
        target_dim = mol[d] if mol is not None else None
        if target_dim == 0:
            continue
        products = _generator_products(group, gens, d, power_cache)
        span_rows, span_rank = _rref_rows(group.spec, group.n, d, products)
        if target_dim is not None and span_rank == target_dim:
            continue
        space = invariant_space(group, d)
        if target_dim is None and span_rank == len(space):
            continue
        basis_order = monomials(group.n, d)
        idx = {e: i for i, e in enumerate(basis_order)}
        for f in space:
            vec = [group.spec.zero()] * len(basis_order)
            for e, c in f.terms.items():
                vec[idx[e]] = c
            residue = _reduce_vec(vec, span_rows)
            lead = next((i for i, c in enumerate(residue) if not c.is_zero()), None)
            if lead is None:
                continue
            inv = residue[lead].inverse()
            normalized = [c * inv for c in residue]
            terms = {basis_order[i]: c for i, c in enumerate(normalized)
                     if not c.is_zero()}
            gens.append((d, Polynomial(group.spec, group.n, terms)))
            _insert_row(span_rows, normalized)
    return GeneratorSet(group, gens, d_max)


def _generator_products(group, gens, d, power_cache):
    """Products of earlier generators with total degree d (monomials in gens)."""
    degs = [dg for dg, _ in gens]
    out = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(acc)
            return
        if i == len(gens):
            return
        dg, poly = gens[i]
        max_e = remaining // dg
        for e in range(max_e, -1, -1):
            if e:
                key = (i, e)
                if key not in power_cache:
                    power_cache[key] = poly ** e
                rec(i + 1, remaining - e * dg, acc * power_cache[key]
                    if acc is not None else power_cache[key])
            else:
                rec(i + 1, remaining, acc)

    rec(0, d, None)
    return [p for p in out if p is not None]


def _rref_rows(spec, nvars, d, polys):
    basis_order = monomials(nvars, d)
    idx = {e: i for i, e in enumerate(basis_order)}
    rows = []
    for p in polys:
        vec = [spec.zero()] * len(basis_order)
        for e, c in p.terms.items():
            vec[idx[e]] = c
        residue = _reduce_vec(vec, rows)
        lead = next((i for i, c in enumerate(residue) if not c.is_zero()), None)
        if lead is not None:
            inv = residue[lead].inverse()
            _insert_row(rows, [c * inv for c in residue])
    return rows, len(rows)


def _reduce_vec(vec, rref_rows):
    vec = list(vec)
    for row in rref_rows:
        lead = next(i for i, c in enumerate(row) if not c.is_zero())
        if not vec[lead].is_zero():
            f = vec[lead]
            vec = [a - f * b for a, b in zip(vec, row)]
    return vec


def _insert_row(rows, normalized):
    lead = next(i for i, c in enumerate(normalized) if not c.is_zero())
    for k, row in enumerate(rows):
        if not row[lead].is_zero():
            f = row[lead]
            rows[k] = [a - f * b for a, b in zip(row, normalized)]
    rows.append(normalized)
    rows.sort(key=lambda row: next(i for i, c in enumerate(row) if not c.is_zero()))


def scaled_torus_exponents(gs: GeneratorSet):
    """Generator degrees divided by their gcd; overall gcd of the output is 1."""
    if not gs.generators:
        return []
    return [d // gs.e for d in gs.degrees]


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

class Relation:
    """A polynomial in generator symbols y_1..y_m vanishing on the generators."""

    __slots__ = ("poly", "weighted_degree", "degrees")

    def __init__(self, poly, weighted_degree, degrees):
        self.poly = poly
        self.weighted_degree = weighted_degree
        self.degrees = tuple(degrees)

    def support(self):
        return sorted(self.poly.terms.keys(), reverse=True)

    def __repr__(self):
        return f"Relation({self.poly.render(self._names())} at wdeg {self.weighted_degree})"

    def _names(self):
        return tuple(f"y{i + 1}" for i in range(self.poly.nvars))


def weighted_monomials(degrees, w):
    """Exponent tuples e with sum e_i * degrees[i] = w, descending lex."""
    out = []

    def rec(i, remaining, prefix):
        if i == len(degrees):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        max_e = remaining // degrees[i]
        for e in range(max_e, -1, -1):
            rec(i + 1, remaining - e * degrees[i], prefix + [e])

    rec(0, w, [])
    out.sort(reverse=True)
    return out


def find_relation(gs: GeneratorSet, wdeg_max):
    """Lowest-weighted-degree relation among the generators, or None.

    Returns the rref-canonical kernel element of the evaluation map
    {monomials in y of weighted degree w} -> k[x].
    """
    group = gs.group
    spec = group.spec
    m = len(gs.generators)
    degrees = gs.degrees
    power_cache = {}
    for w in range(1, wdeg_max + 1):
        expos = weighted_monomials(degrees, w)
        if len(expos) < 2:
            continue
        evals = []
        for e in expos:
            prod = None
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in power_cache:
                        power_cache[key] = gs.polynomials[i] ** a
                    prod = power_cache[key] if prod is None else prod * power_cache[key]
            evals.append(prod if prod is not None
                         else Polynomial.constant(spec, group.n, 1))
        basis_order = monomials(group.n, w)
        idx = {x: i for i, x in enumerate(basis_order)}
        rows = []
        for p in evals:
            vec = [spec.zero()] * len(basis_order)
            for x, c in p.terms.items():
                vec[idx[x]] = c
            rows.append(vec)
        ker = kernel(Matrix(spec, rows).transpose())
        if ker.dim:
            coeffs = ker.basis[0]
            terms = {e: c for e, c in zip(expos, coeffs) if not c.is_zero()}
            lead = max(terms)
            poly = Polynomial(spec, m, terms).scale(terms[lead].inverse())
            return Relation(poly, w, degrees)
    return None


def check_presented_automorphism(rel: Relation, images):
    """True iff substituting the images into the relation lands in (relation).

    Exact single-divisor division in the generator-symbol ring; valid for
    hypersurface presentations (one relation)."""
    if len(images) != rel.poly.nvars:
        raise InvForgeError("need one image per generator symbol")
    composed = rel.poly.compose(images)
    if composed.is_zero():
        return True
    return rel.poly.divides(composed)


# ---------------------------------------------------------------------------
# pseudo-reflection reduction
# ---------------------------------------------------------------------------

class ReductionReport:
    """Outcome of the reflection-subgroup reduction k[x]^G = k[basics]^(G/W)."""

    __slots__ = ("applicable", "reflection_group", "basics", "coset_action",
                 "reason")

    def __init__(self, applicable, reflection_group, basics, coset_action, reason):
        self.applicable = applicable
        self.reflection_group = reflection_group
        self.basics = basics
        self.coset_action = coset_action  # list of (coset rep index, Matrix)
        self.reason = reason

    def __repr__(self):
        state = "ok" if self.applicable else f"not applicable ({self.reason})"
        return f"ReductionReport({state})"


def cst_quotient_action(group: FiniteMatrixGroup) -> ReductionReport:
    """Quotient by the reflection subgroup, acting on its basic invariants.

    W = subgroup generated by all pseudo-reflections; its invariant ring is
    verified to be polynomial (n generators, degree product = |W|).  The
    returned action expresses each coset representative on the basics when
    that action is linear degree-by-degree; otherwise the report is flagged
    not-applicable.
    """
    p = group.spec.characteristic()
    if p and group.order % p == 0:
        raise ModularityError("reduction defined for char not dividing |G|")
    spec, n = group.spec, group.n
    w = reflection_subgroup(group)
    basics = minimal_generators(w, d_max=w.order)
    prod = 1
    for d in basics.degrees:
        prod *= d
    if len(basics) != n or prod != w.order:
        raise InvForgeError(
            "reflection subgroup invariants are not polynomial "
            f"(found {len(basics)} generators, degree product {prod}, |W| = {w.order})")
    # coset representatives of G/W inside G (minimal index per coset)
    w_keys = {m.key() for m in w.elements}
    w_indices = [i for i, m in enumerate(group.elements) if m.key() in w_keys]
    coset_of = {}
    reps = []
    for i in range(group.order):
        if i in coset_of:
            continue
        members = sorted(group.mult(i, h) for h in w_indices)
        for y in members:
            coset_of[y] = len(reps)
        reps.append(members[0])
    action = []
    for rep in reps:
        mat_rows = [[spec.zero()] * n for _ in range(n)]
        g_mat = group.elements[rep]
        for j, (dj, bj) in enumerate(basics.generators):
            img = apply_matrix(g_mat, bj)
            sol = _express_in_basics(spec, group.n, img, basics, dj)
            if sol is None:
                return ReductionReport(
                    False, w, basics, None,
                    f"coset representative {rep} does not act linearly on the basics")
            for i_, c in sol:
                mat_rows[i_][j] = c
        action.append((rep, Matrix(spec, mat_rows)))
    return ReductionReport(True, w, basics, action, None)


def _express_in_basics(spec, nvars, img, basics, degree):
    """img as a linear combination of the basics of the same degree, or None."""
    same = [(i, b) for i, (d, b) in enumerate(basics.generators) if d == degree]
    basis_order = monomials(nvars, degree)
    idx = {e: i for i, e in enumerate(basis_order)}
    cols = []
    for _, b in same:
        vec = [spec.zero()] * len(basis_order)
        for e, c in b.terms.items():
            vec[idx[e]] = c
        cols.append(vec)
    target = [spec.zero()] * len(basis_order)
    for e, c in img.terms.items():
        target[idx[e]] = c
    aug = Matrix(spec, cols + [target]).transpose()
    red, pivots = aug.rref()
    k = len(same)
    if k in pivots:
        return None  # target outside the span
    sol = [spec.zero()] * k
    for r, pc in enumerate(pivots):
        sol[pc] = red.entries[r][k]
    return [(same[i][0], sol[i]) for i in range(k)]
