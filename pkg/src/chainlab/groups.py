"""Finite groups acting on weighted chain complexes.

The bar construction gives, for a finite group G, a chain complex with
basis G^{n+1} in degree n, the l1 norm, and the left translation
action.  Tensoring with a monomial coefficient module, passing to
coinvariants with the quotient norm or to invariants of the dual with
the restricted max norm, and taking (co)homology yields the finite
models of group l1-homology and bounded cohomology this package
verifies theorems on.

Coefficient modules are restricted to monomial isometries (signed,
scaled permutations): these are exactly the actions for which the
weighted l1/max norms of all derived complexes stay inside the same
family and every norm computation stays exact.

Truncation: a bar complex built up to degree N has no boundaries
arriving from degree N+1, so degree-N homology of anything built from
it overstates the true space; results at degree N are flagged rather
than suppressed.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .complexes import (NormedComplex, NormSpec, ChainMap, HOMOLOGICAL,
                        COHOMOLOGICAL, L1, LINF, validate, dual, dual_map,
                        chain_map, operator_norm, operator_norm_matrix)
from .homology import (HomologySpace, homology, seminorm, coseminorm,
                       homology_class, induced_matrix)
from .linalg import Matrix, Vector, vec, solve, solve_matrix, inverse
from .lp import min_weighted_l1
from .rationals import ZERO, ONE, rat
from .simplicial import SimplicialComplex, ordered_chain_complex

DEFAULT_SIZE_CAP = 10_000


def _size_cap() -> int:
    raw = os.environ.get("CHAINLAB_SIZE_CAP")
    return int(raw) if raw else DEFAULT_SIZE_CAP


# -- groups ------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """A group law on indices 0..order-1, fully checked at build time."""
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]


def finite_group(table) -> FiniteGroup:
    """Check the group axioms on an explicit multiplication table."""
    table = tuple(tuple(row) for row in table)
    n = len(table)
    if n == 0:
        raise ValueError("empty multiplication table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not (0 <= v < n):
                raise ValueError(f"table[{i}][{j}] = {v} out of range")
    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise ValueError("no identity element")
    inverse = [None] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == identity and table[b][a] == identity:
                inverse[a] = b
                break
        if inverse[a] is None:
            raise ValueError(f"element {a} has no inverse")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ValueError(f"not associative at ({a},{b},{c})")
    return FiniteGroup(table, identity, tuple(inverse))


def trivial_group() -> FiniteGroup:
    return finite_group([[0]])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    return finite_group([[(i + j) % n for j in range(n)] for i in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of n letters in lexicographic order; (s*t)(x) = s(t(x))."""
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[x]] for x in range(n))] for t in perms]
             for s in perms]
    return finite_group(table)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Pairs (x, y) indexed x * |b| + y."""
    nb = b.order
    table = [[a.mul(x1, x2) * nb + b.mul(y1, y2)
              for x2 in range(a.order) for y2 in range(nb)]
             for x1 in range(a.order) for y1 in range(nb)]
    return finite_group(table)


def group_homomorphism_check(g: FiniteGroup, h: FiniteGroup, phi
                             ) -> tuple[int, int] | None:
    """None when phi respects multiplication, else a witness pair."""
    for a in range(g.order):
        for b in range(g.order):
            if phi[g.mul(a, b)] != h.mul(phi[a], phi[b]):
                return (a, b)
    return None


# -- monomial modules ---------------------------------------------------


@dataclass(frozen=True)
class MonomialModule:
    """A weighted space with a signed scaled permutation per element.

    Isometry of the weighted l1 norm forces each matrix entry sending
    coordinate j to i to have absolute value w_j / w_i; this is
    checked, as are the homomorphism property over the full table and
    the identity acting as the identity matrix.
    """
    group: FiniteGroup
    weights: tuple[Fraction, ...]
    actions: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.weights)


def monomial_module(group: FiniteGroup, weights, actions) -> MonomialModule:
    weights = tuple(rat(w) for w in weights)
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    d = len(weights)
    actions = tuple(actions)
    if len(actions) != group.order:
        raise ValueError(f"expected {group.order} action matrices")
    for g, m in enumerate(actions):
        if m.shape != (d, d):
            raise ValueError(f"action of element {g} has shape {m.shape}")
        hit_rows = set()
        for j in range(d):
            items = list(m.cols[j].items())
            if len(items) != 1:
                raise ValueError(f"action of element {g} is not monomial in "
                                 f"column {j}")
            i, c = items[0]
            if i in hit_rows:
                raise ValueError(f"action of element {g} is not a permutation")
            hit_rows.add(i)
            if abs(c) * weights[i] != weights[j]:
                raise ValueError(f"action of element {g} does not preserve "
                                 f"the weighted norm at column {j}")
    if actions[group.identity] != Matrix.identity(d):
        raise ValueError("identity element must act as the identity")
    for a in range(group.order):
        for b in range(group.order):
            if actions[a] @ actions[b] != actions[group.mul(a, b)]:
                raise ValueError(f"action is not a homomorphism at ({a},{b})")
    return MonomialModule(group, weights, actions)


def trivial_module(group: FiniteGroup, dim: int = 1, weights=None) -> MonomialModule:
    if weights is None:
        weights = (ONE,) * dim
    return monomial_module(group, weights,
                           [Matrix.identity(dim) for _ in range(group.order)])


def dual_module(v: MonomialModule) -> MonomialModule:
    """Reciprocal weights, action of g is the transpose of g^{-1}'s."""
    return monomial_module(
        v.group, tuple(ONE / w for w in v.weights),
        [v.actions[v.group.inv(g)].transpose() for g in range(v.group.order)])


# -- the bar complex ----------------------------------------------------


@dataclass(frozen=True)
class BarComplex:
    group: FiniteGroup
    top_degree: int
    complex: NormedComplex
    actions: tuple[tuple[Matrix, ...], ...]     # [degree][element]


def _bar_tuples(order: int, n: int):
    tuples = [()]
    for _ in range(n + 1):
        tuples = [t + (g,) for t in tuples for g in range(order)]
    return tuples


def _bar_label(t: tuple[int, ...]) -> str:
    return f"{t[0]}·[" + "|".join(str(g) for g in t[1:]) + "]"


def bar_complex(g: FiniteGroup, top_degree: int) -> BarComplex:
    """Basis G^{n+1} in degree n, l1 norm, left translation action."""
    if top_degree < 0:
        raise ValueError("top degree must be >= 0")
    cap = _size_cap()
    o = g.order
    for n in range(top_degree + 1):
        if o ** (n + 1) > cap:
            raise ValueError(f"bar complex degree {n} would have dimension "
                             f"{o ** (n + 1)}, over the cap {cap}")
    bases = [_bar_tuples(o, n) for n in range(top_degree + 1)]
    index = [{t: i for i, t in enumerate(b)} for b in bases]
    dims = tuple(len(b) for b in bases)
    maps = []
    for n in range(1, top_degree + 1):
        entries = []
        for j, t in enumerate(bases[n]):
            entries.append((index[n - 1][(g.mul(t[0], t[1]),) + t[2:]], j, ONE))
            for k in range(1, n):
                merged = t[:k] + (g.mul(t[k], t[k + 1]),) + t[k + 2:]
                entries.append((index[n - 1][merged], j,
                                -ONE if k % 2 else ONE))
            entries.append((index[n - 1][t[:-1]], j, -ONE if n % 2 else ONE))
        maps.append(Matrix.from_entries(dims[n - 1], dims[n], entries))
    norms = tuple(NormSpec(L1, (ONE,) * d) for d in dims)
    labels = tuple(tuple(_bar_label(t) for t in b) for b in bases)
    cx = NormedComplex(HOMOLOGICAL, dims, tuple(maps), norms, labels)
    report = validate(cx)
    if not report.ok:
        raise RuntimeError("bar complex failed validation: " + report.lines()[0])
    actions = []
    for n in range(top_degree + 1):
        per_element = []
        for a in range(o):
            entries = [(index[n][(g.mul(a, t[0]),) + t[1:]], j, ONE)
                       for j, t in enumerate(bases[n])]
            per_element.append(Matrix.from_entries(dims[n], dims[n], entries))
        actions.append(tuple(per_element))
    bc = BarComplex(g, top_degree, cx, tuple(actions))
    _check_equivariance(bc.group, cx, bc.actions)
    return bc


def _check_equivariance(group: FiniteGroup, cx: NormedComplex, actions) -> None:
    for n, per_element in enumerate(actions):
        if actions[n][group.identity] != Matrix.identity(cx.dim(n)):
            raise RuntimeError(f"identity does not act trivially at degree {n}")
        for a in range(group.order):
            for b in range(group.order):
                if per_element[a] @ per_element[b] != per_element[group.mul(a, b)]:
                    raise RuntimeError(f"action not a homomorphism at degree "
                                       f"{n}, elements ({a},{b})")
    for n in range(len(actions) - 1):
        out = cx.outgoing(n + 1) if cx.orientation == HOMOLOGICAL else None
        for a in range(group.order):
            if cx.orientation == HOMOLOGICAL:
                if out @ actions[n + 1][a] != actions[n][a] @ out:
                    raise RuntimeError(f"boundary does not commute with the "
                                       f"action of {a} at degree {n + 1}")
            else:
                cob = cx.coboundary(n)
                if cob @ actions[n][a] != actions[n + 1][a] @ cob:
                    raise RuntimeError(f"coboundary does not commute with the "
                                       f"action of {a} at degree {n}")


@dataclass(frozen=True)
class EquivariantComplex:
    group: FiniteGroup
    complex: NormedComplex
    actions: tuple[tuple[Matrix, ...], ...]


def equivariant_complex(group: FiniteGroup, cx: NormedComplex, actions
                        ) -> EquivariantComplex:
    actions = tuple(tuple(per) for per in actions)
    if len(actions) != cx.top_degree + 1:
        raise ValueError("one action tuple per degree required")
    _check_equivariance(group, cx, actions)
    return EquivariantComplex(group, cx, actions)


def tensor_coefficients(b: BarComplex, v: MonomialModule) -> EquivariantComplex:
    """Bar tensor module: product basis, product weights, diagonal action.

    Index layout is bar-major: pair (bar j, module i) sits at
    j * dim(v) + i.  The boundary is the bar boundary tensor the
    identity of v.
    """
    if v.group is not b.group and v.group != b.group:
        raise ValueError("module and bar complex must share the group")
    dv = v.dim
    cx = b.complex
    dims = tuple(d * dv for d in cx.dims)
    maps = []
    for m in cx.maps:
        entries = []
        for j in range(m.ncols):
            for i, c in m.cols[j].items():
                entries.extend((i * dv + k, j * dv + k, c) for k in range(dv))
        maps.append(Matrix.from_entries(m.nrows * dv, m.ncols * dv, entries))
    norms = tuple(NormSpec(L1, tuple(bw * vw for bw in spec.weights
                                     for vw in v.weights))
                  for spec in cx.norms)
    labels = None
    if cx.labels is not None:
        labels = tuple(tuple(f"{bl}⊗{k}" for bl in per for k in range(dv))
                       for per in cx.labels)
    tz = NormedComplex(HOMOLOGICAL, dims, tuple(maps), norms, labels)
    actions = []
    for n, per_element in enumerate(b.actions):
        per = []
        for a, pm in enumerate(per_element):
            am = v.actions[a]
            entries = []
            for j in range(pm.ncols):
                (i, _), = pm.cols[j].items()
                for vj in range(dv):
                    (vi, vc), = am.cols[vj].items()
                    entries.append((i * dv + vi, j * dv + vj, vc))
            per.append(Matrix.from_entries(dims[n], dims[n], entries))
        actions.append(tuple(per))
    return equivariant_complex(b.group, tz, actions)


# -- coinvariants and invariants -----------------------------------------


def _orbit_scalars(group: FiniteGroup, actions, dim: int):
    """Partition 0..dim-1 into orbits with transported scalars.

    For coinvariant classes: [e_j] = lam_j * [e_rep].  g e_j = c e_i
    forces [e_j] = c [e_i], so lam_i = lam_j / c.  An orbit where the
    transport disagrees with itself (monodromy) makes the class zero.
    Returns (orbits, lams, alive) with orbits a list of index lists
    led by their representative.
    """
    seen = [False] * dim
    orbits, lams, alive = [], {}, []
    for start in range(dim):
        if seen[start]:
            continue
        lam = {start: ONE}
        queue = [start]
        order = [start]
        ok = True
        while queue:
            j = queue.pop()
            for a in range(group.order):
                (i, c), = actions[a].cols[j].items()
                forced = lam[j] / c
                if i in lam:
                    if lam[i] != forced:
                        ok = False
                else:
                    lam[i] = forced
                    queue.append(i)
                    order.append(i)
        for i in order:
            seen[i] = True
        orbits.append(order)
        lams.update(lam)
        alive.append(ok)
    return orbits, lams, alive


@dataclass(frozen=True)
class Coinvariants:
    """Quotient complex with its projection and orbit bookkeeping."""
    complex: NormedComplex
    projections: tuple[Matrix, ...]
    representatives: tuple[tuple[int, ...], ...]
    dead_orbits: tuple[int, ...]       # count per degree


def coinvariants(x: EquivariantComplex) -> Coinvariants:
    """Quotient by the span of g.v - v, with the quotient l1 norm.

    One coordinate per orbit that survives the scalar transport; the
    quotient norm of each class is a genuine minimum computed by LP
    over the orbit's relation subspace (relations never mix orbits, so
    the LP restricts to the orbit's coordinates).  The induced
    boundary is checked to be well defined.
    """
    cx = x.complex
    if cx.orientation != HOMOLOGICAL:
        raise ValueError("coinvariants expects a homological complex")
    projections, reps_per_degree, new_norms, dead_counts = [], [], [], []
    for n in range(cx.top_degree + 1):
        dim = cx.dim(n)
        orbits, lams, alive = _orbit_scalars(x.group, x.actions[n], dim)
        live = [o for o, ok in zip(orbits, alive) if ok]
        dead_counts.append(len(orbits) - len(live))
        reps = tuple(o[0] for o in live)
        entries = []
        for row, orbit in enumerate(live):
            entries.extend((row, j, lams[j]) for j in orbit)
        q = Matrix.from_entries(len(live), dim, entries)
        weights = []
        spec = cx.norm_at(n)
        for orbit in live:
            rel_cols = []
            pos = {j: t for t, j in enumerate(orbit)}
            for j in orbit:
                for a in range(x.group.order):
                    if a == x.group.identity:
                        continue
                    (i, c), = x.actions[n][a].cols[j].items()
                    col = {pos[i]: c}
                    col[pos[j]] = col.get(pos[j], ZERO) - ONE
                    rel_cols.append({k: v for k, v in col.items() if v != 0})
            span = Matrix(len(orbit), len(rel_cols), rel_cols)
            target = [ZERO] * len(orbit)
            target[pos[orbit[0]]] = ONE
            w = tuple(spec.weights[j] for j in orbit)
            weights.append(min_weighted_l1(target, span, w).value)
        projections.append(q)
        reps_per_degree.append(reps)
        new_norms.append(NormSpec(L1, tuple(weights)))
    qmaps = []
    for n in range(1, cx.top_degree + 1):
        d = cx.boundary(n)
        cols = [projections[n - 1].apply(d.column(r)) for r in reps_per_degree[n]]
        qd = Matrix.from_cols(projections[n - 1].nrows, cols)
        if qd @ projections[n] != projections[n - 1] @ d:
            raise RuntimeError(f"boundary does not descend to coinvariants "
                               f"at degree {n}")
        qmaps.append(qd)
    labels = None
    if cx.labels is not None:
        labels = tuple(tuple(f"[{cx.labels[n][r]}]" for r in reps_per_degree[n])
                       for n in range(cx.top_degree + 1))
    out = NormedComplex(HOMOLOGICAL, tuple(m.nrows for m in projections),
                        tuple(qmaps), tuple(new_norms), labels)
    report = validate(out)
    if not report.ok:
        raise RuntimeError("coinvariant complex failed validation: "
                           + report.lines()[0])
    return Coinvariants(out, tuple(projections), tuple(reps_per_degree),
                        tuple(dead_counts))


@dataclass(frozen=True)
class Invariants:
    """Fixed subcomplex with the restricted max norm."""
    complex: NormedComplex
    inclusions: tuple[Matrix, ...]      # columns are the invariant vectors
    representatives: tuple[tuple[int, ...], ...]
    dead_orbits: tuple[int, ...]


def invariants(x: EquivariantComplex) -> Invariants:
    """Fixed vectors of a cochain action, one basis vector per live orbit.

    On the orbit of e_rep the fixed vector is sum lam'_i e_i with the
    reciprocal transport lam'_i = c lam'_j; the restricted max norm is
    diagonal on these vectors because orbits do not overlap.
    """
    cx = x.complex
    if cx.orientation != COHOMOLOGICAL:
        raise ValueError("invariants expects a cochain complex")
    inclusions, reps_per_degree, new_norms, dead_counts = [], [], [], []
    for n in range(cx.top_degree + 1):
        dim = cx.dim(n)
        orbits, lams, alive = _orbit_scalars(x.group, x.actions[n], dim)
        live = [o for o, ok in zip(orbits, alive) if ok]
        dead_counts.append(len(orbits) - len(live))
        reps = tuple(o[0] for o in live)
        spec = cx.norm_at(n)
        entries = []
        weights = []
        for col, orbit in enumerate(live):
            # invariant transport is reciprocal to the class transport
            entries.extend((j, col, ONE / lams[j]) for j in orbit)
            weights.append(max(spec.weights[j] / abs(lams[j]) for j in orbit))
        u = Matrix.from_entries(dim, len(live), entries)
        for col in range(u.ncols):
            vecu = u.column(col)
            for a in range(x.group.order):
                if x.actions[n][a].apply(vecu) != vecu:
                    raise RuntimeError(f"constructed vector not fixed at "
                                       f"degree {n}")
        inclusions.append(u)
        reps_per_degree.append(reps)
        new_norms.append(NormSpec(LINF, tuple(weights)))
    imaps = []
    for n in range(cx.top_degree):
        delta = cx.coboundary(n)
        cols = []
        for col in range(inclusions[n].ncols):
            img = delta.apply(inclusions[n].column(col))
            s = solve(inclusions[n + 1], img)
            if s is None:
                raise RuntimeError(f"coboundary leaves the fixed subspace "
                                   f"at degree {n}")
            cols.append(s)
        imaps.append(Matrix.from_cols(inclusions[n + 1].ncols, cols))
    labels = None
    if cx.labels is not None:
        labels = tuple(tuple(f"avg[{cx.labels[n][r]}]" for r in reps_per_degree[n])
                       for n in range(cx.top_degree + 1))
    out = NormedComplex(COHOMOLOGICAL, tuple(m.ncols for m in inclusions),
                        tuple(imaps), tuple(new_norms), labels)
    report = validate(out)
    if not report.ok:
        raise RuntimeError("invariant complex failed validation: "
                           + report.lines()[0])
    return Invariants(out, tuple(inclusions), tuple(reps_per_degree),
                      tuple(dead_counts))


def equivariant_dual(x: EquivariantComplex) -> EquivariantComplex:
    """Dual complex with the action (g.phi)(v) = phi(g^{-1} v)."""
    acts = tuple(tuple(x.actions[n][x.group.inv(a)].transpose()
                       for a in range(x.group.order))
                 for n in range(x.complex.top_degree + 1))
    return equivariant_complex(x.group, dual(x.complex), acts)


def coinvariant_dual_identification(x: EquivariantComplex) -> ChainMap:
    """The isometric identification dual(X_G) = (dual X)^G, degreewise.

    The transpose of the projection sends a class functional to the
    fixed vector with the same transported scalars, so in the chosen
    bases the identification is coordinatewise; each image must carry
    exactly the source weight, which re-proves the quotient-norm LP
    values against the closed-form fixed-vector norms.
    """
    co = coinvariants(x)
    inv = invariants(equivariant_dual(x))
    a = dual(co.complex)
    b = inv.complex
    mats = []
    for n in range(a.top_degree + 1):
        lift = co.projections[n].transpose()
        m = solve_matrix(inv.inclusions[n], lift)
        if m is None:
            raise RuntimeError(f"class functionals are not fixed vectors "
                               f"at degree {n}")
        mats.append(m)
        wa = a.norm_at(n).weights
        wb = b.norm_at(n).weights
        for j in range(m.ncols):
            (i, c), = m.cols[j].items()
            if wa[j] != abs(c) * wb[i]:
                raise RuntimeError(f"identification is not isometric at "
                                   f"degree {n}, class {j}")
    f = chain_map(a, b, mats)
    for n, m in enumerate(mats):
        if m.nrows != m.ncols or inverse(m) is None:
            raise RuntimeError(f"identification is not bijective at degree {n}")
    return f


def module_dual_identification(v: MonomialModule) -> ChainMap:
    """(V_G)' = (V')^G for a single module, as a degree-0 complex."""
    vcx = NormedComplex(HOMOLOGICAL, (v.dim,), (), (NormSpec(L1, v.weights),))
    return coinvariant_dual_identification(
        equivariant_complex(v.group, vcx, (v.actions,)))


# -- group homology and bounded cohomology -------------------------------


@dataclass(frozen=True)
class GroupDegree:
    degree: int
    dimension: int
    seminorms: tuple[Fraction, ...] | None   # per homology basis class
    reliable: bool


@dataclass(frozen=True)
class GroupHomologyResult:
    group_order: int
    top_degree: int
    complex: NormedComplex
    degrees: tuple[GroupDegree, ...]
    spaces: tuple[HomologySpace, ...]


def _degree_reports(cx: NormedComplex, top: int, with_seminorms: bool,
                    quotient) -> tuple[tuple[GroupDegree, ...], tuple]:
    degrees, spaces = [], []
    for n in range(top + 1):
        hs = homology(cx, n)
        reliable = n <= top - 1
        norms = None
        if with_seminorms and reliable:
            vals = []
            for j in range(hs.dimension):
                rep = hs.cycle_basis.column(j)
                vals.append(quotient(cx, n, rep))
            norms = tuple(vals)
        degrees.append(GroupDegree(n, hs.dimension, norms, reliable))
        spaces.append(hs)
    return tuple(degrees), tuple(spaces)


def l1_homology_of_group(g: FiniteGroup, v: MonomialModule | None = None,
                         top_degree: int = 3, with_seminorms: bool = True
                         ) -> GroupHomologyResult:
    """Homology of the coinvariant bar complex with coefficients in v.

    Degree top_degree is computed from a truncated complex and flagged
    unreliable; its seminorms are suppressed for the same reason.
    """
    if v is None:
        v = trivial_module(g)
    bar = bar_complex(g, top_degree)
    x = tensor_coefficients(bar, v)
    co = coinvariants(x)

    def quot(cx, n, rep):
        return seminorm(cx, homology_class(cx, n, rep)).value

    degrees, spaces = _degree_reports(co.complex, top_degree, with_seminorms, quot)
    return GroupHomologyResult(g.order, top_degree, co.complex, degrees, spaces)


def bounded_cohomology_of_group(g: FiniteGroup, v: MonomialModule | None = None,
                                top_degree: int = 3, with_seminorms: bool = True
                                ) -> GroupHomologyResult:
    """Cohomology of the fixed points of the dual bar complex.

    Bounded maps into v are modelled as the dual of the tensor with
    the dual module, which keeps every norm in the weighted max
    family.
    """
    if v is None:
        v = trivial_module(g)
    bar = bar_complex(g, top_degree)
    x = tensor_coefficients(bar, dual_module(v))
    inv = invariants(equivariant_dual(x))

    def quot(cx, n, rep):
        return coseminorm(cx, homology_class(cx, n, rep)).value

    degrees, spaces = _degree_reports(inv.complex, top_degree, with_seminorms, quot)
    return GroupHomologyResult(g.order, top_degree, inv.complex, degrees, spaces)


# -- induced maps --------------------------------------------------------


def induced_map(g: FiniteGroup, h: FiniteGroup, phi, top_degree: int,
                v: MonomialModule | None = None,
                w: MonomialModule | None = None,
                f: Matrix | None = None) -> ChainMap:
    """The tensor-complex map of a homomorphism with coefficients.

    Bar tuples go over term by term; the coefficient morphism f must
    intertwine the actions through phi and not increase norms, so the
    whole map has operator norm at most 1, which is checked.
    """
    phi = tuple(phi)
    if len(phi) != g.order or any(not 0 <= p < h.order for p in phi):
        raise ValueError("phi must map indices of g to indices of h")
    witness = group_homomorphism_check(g, h, phi)
    if witness is not None:
        a, b = witness
        raise ValueError(f"not a homomorphism: phi({a}*{b}) != "
                         f"phi({a})*phi({b})")
    if v is None:
        v = trivial_module(g)
    if w is None:
        w = trivial_module(h)
    if f is None:
        if v.dim != w.dim:
            raise ValueError("a coefficient morphism is required when the "
                             "module dimensions differ")
        f = Matrix.identity(v.dim)
    if f.shape != (w.dim, v.dim):
        raise ValueError(f"coefficient morphism has shape {f.shape}, "
                         f"expected {(w.dim, v.dim)}")
    for a in range(g.order):
        if f @ v.actions[a] != w.actions[phi[a]] @ f:
            raise ValueError(f"coefficient morphism is not equivariant at "
                             f"element {a}")
    fnorm = operator_norm_matrix(f, NormSpec(L1, v.weights),
                                 NormSpec(L1, w.weights))
    if fnorm > 1:
        raise ValueError(f"coefficient morphism has norm {fnorm} > 1")
    xg = tensor_coefficients(bar_complex(g, top_degree), v)
    xh = tensor_coefficients(bar_complex(h, top_degree), w)
    mats = []
    for n in range(top_degree + 1):
        src = _bar_tuples(g.order, n)
        tgt_index = {t: i for i, t in enumerate(_bar_tuples(h.order, n))}
        entries = []
        for j, t in enumerate(src):
            i = tgt_index[tuple(phi[x] for x in t)]
            for vj in range(v.dim):
                for vi, c in f.cols[vj].items():
                    entries.append((i * w.dim + vi, j * v.dim + vj, c))
        mats.append(Matrix.from_entries(xh.complex.dim(n), xg.complex.dim(n),
                                        entries))
    out = chain_map(xg.complex, xh.complex, mats)
    for n in range(top_degree + 1):
        if xg.complex.dim(n) and operator_norm(out, n) > 1:
            raise RuntimeError(f"induced map norm exceeds 1 at degree {n}")
    return out


def descend_to_coinvariants(f: ChainMap, src: Coinvariants, tgt: Coinvariants
                            ) -> ChainMap:
    """Push an equivariant map to the quotient complexes.

    Well-definedness is asserted exactly: the descended matrix must
    intertwine the projections.
    """
    if src.complex.top_degree != tgt.complex.top_degree:
        raise ValueError("source and target must cover the same degrees")
    mats = []
    for n in range(src.complex.top_degree + 1):
        cols = [tgt.projections[n].apply(f.at(n).column(r))
                for r in src.representatives[n]]
        m = Matrix.from_cols(tgt.complex.dim(n), cols)
        if m @ src.projections[n] != tgt.projections[n] @ f.at(n):
            raise RuntimeError(f"map does not descend at degree {n}")
        mats.append(m)
    return chain_map(src.complex, tgt.complex, mats)


def bar_coinvariants(g: FiniteGroup, v: MonomialModule | None, top_degree: int
                     ) -> Coinvariants:
    if v is None:
        v = trivial_module(g)
    return coinvariants(tensor_coefficients(bar_complex(g, top_degree), v))


# -- fixed-point identifications at the bottom degree ---------------------


@dataclass(frozen=True)
class BottomIdentification:
    """Exact matrix identifying a degree-0 (co)homology with V_G or V^G."""
    matrix: Matrix
    bijective: bool
    seminorms_match: bool


def h0_against_module_coinvariants(g: FiniteGroup, v: MonomialModule,
                                   top_degree: int = 2) -> BottomIdentification:
    """Degree-0 group homology against the module coinvariants.

    The chain-level map v -> e (x) v induces the comparison; it is an
    isomorphism matching quotient seminorms class by class.
    """
    x = tensor_coefficients(bar_complex(g, top_degree), v)
    co = coinvariants(x)
    hs = homology(co.complex, 0)
    # module coinvariants: reuse the machinery on v concentrated in degree 0
    vcx = NormedComplex(HOMOLOGICAL, (v.dim,), (), (NormSpec(L1, v.weights),),
                        None)
    vco = coinvariants(equivariant_complex(g, vcx, (v.actions,)))
    e = g.identity
    cols = []
    for r in vco.representatives[0]:
        chain = [ZERO] * x.complex.dim(0)
        chain[e * v.dim + r] = ONE          # the pair (identity, e_r)
        cols.append(hs.quotient_projector.apply(co.projections[0].apply(chain)))
    m = Matrix.from_cols(hs.dimension, cols)
    bij = m.nrows == m.ncols and (m.ncols == 0 or inverse(m) is not None)
    match = True
    for j in range(vco.complex.dim(0)):
        lhs = vco.complex.norm_at(0).weights[j]
        rep = hs.cycle_basis.apply(m.column(j))
        rhs = seminorm(co.complex, homology_class(co.complex, 0, rep)).value
        match = match and lhs == rhs
    return BottomIdentification(m, bij, match)


def h0_against_module_invariants(g: FiniteGroup, v: MonomialModule,
                                 top_degree: int = 2) -> BottomIdentification:
    """Degree-0 bounded cohomology against the module invariants."""
    x = tensor_coefficients(bar_complex(g, top_degree), dual_module(v))
    inv = invariants(equivariant_dual(x))
    hs = homology(inv.complex, 0)
    vcx = NormedComplex(COHOMOLOGICAL, (v.dim,), (),
                        (NormSpec(LINF, v.weights),), None)
    vinv = invariants(equivariant_complex(g, vcx, (v.actions,)))
    # evaluation at the identity: an invariant 0-cochain f is determined
    # by f(e) in V, and the comparison sends u to the cochain g |-> g.u
    e = g.identity
    cols = []
    for col in range(vinv.complex.dim(0)):
        u = vinv.inclusions[0].column(col)
        chain = [ZERO] * x.complex.dim(0)
        for a in range(g.order):
            au = v.actions[a].apply(u)
            for i, val in enumerate(au):
                if val != 0:
                    chain[a * v.dim + i] = val
        s = solve(inv.inclusions[0], vec(chain))
        if s is None:
            raise RuntimeError("comparison cochain is not invariant")
        cols.append(hs.quotient_projector.apply(s))
    m = Matrix.from_cols(hs.dimension, cols)
    bij = m.nrows == m.ncols and (m.ncols == 0 or inverse(m) is not None)
    match = True
    for j in range(vinv.complex.dim(0)):
        lhs = vinv.complex.norm_at(0).weights[j]
        rep = hs.cycle_basis.apply(m.column(j))
        rhs = coseminorm(inv.complex, homology_class(inv.complex, 0, rep)).value
        match = match and lhs == rhs
    return BottomIdentification(m, bij, match)


# -- the fundamental-domain map -------------------------------------------


@dataclass(frozen=True)
class EtaResult:
    map: ChainMap                       # ordered cover chains -> bar complex
    bar: BarComplex
    cover_complex: NormedComplex
    cover_bases: tuple[tuple[tuple[int, ...], ...], ...]
    cover_actions: tuple[tuple[Matrix, ...], ...]
    vertex_actions: tuple[tuple[int, ...], ...]
    domain: tuple[int, ...]


def _check_vertex_action(g: FiniteGroup, k: SimplicialComplex, vertex_actions
                         ) -> tuple[tuple[int, ...], ...]:
    va = tuple(tuple(p) for p in vertex_actions)
    if len(va) != g.order:
        raise ValueError(f"expected {g.order} vertex permutations")
    n = k.vertex_count
    simplex_set = set(k.simplices)
    for a, p in enumerate(va):
        if sorted(p) != list(range(n)):
            raise ValueError(f"element {a} does not permute the vertices")
        for s in k.simplices:
            if tuple(sorted(p[x] for x in s)) not in simplex_set:
                raise ValueError(f"element {a} does not map simplex {s} "
                                 "into the complex")
    if va[g.identity] != tuple(range(n)):
        raise ValueError("identity element must fix all vertices")
    for a in range(g.order):
        for b in range(g.order):
            composed = tuple(va[a][va[b][x]] for x in range(n))
            if composed != va[g.mul(a, b)]:
                raise ValueError(f"vertex action is not a homomorphism "
                                 f"at ({a},{b})")
    for a in range(g.order):
        if a != g.identity and any(va[a][x] == x for x in range(n)):
            fixed = next(x for x in range(n) if va[a][x] == x)
            raise ValueError(f"action is not free: element {a} fixes "
                             f"vertex {fixed}")
    return va


def propose_domain(g: FiniteGroup, k: SimplicialComplex, vertex_actions
                   ) -> tuple[int, ...]:
    """Lexicographically smallest vertex of each orbit."""
    va = _check_vertex_action(g, k, vertex_actions)
    seen = set()
    out = []
    for x in range(k.vertex_count):
        if x in seen:
            continue
        orbit = {va[a][x] for a in range(g.order)}
        seen.update(orbit)
        out.append(min(orbit))
    return tuple(sorted(out))


def eta_map(g: FiniteGroup, k: SimplicialComplex, vertex_actions, domain
            ) -> EtaResult:
    """Collapse cover chains onto the bar complex through a domain choice.

    Every vertex w has a unique mover h with h^{-1} w in the domain;
    an ordered simplex (w_0..w_n) goes to the single bar element
    h_0 . [h_0^{-1} h_1 | ... | h_{n-1}^{-1} h_n].  The result is an
    equivariant chain map of operator norm exactly 1, all three
    properties checked degree by degree.
    """
    va = _check_vertex_action(g, k, vertex_actions)
    domain = tuple(sorted(domain))
    if any(not 0 <= x < k.vertex_count for x in domain):
        raise ValueError("domain vertex out of range")
    hits = {x: [] for x in range(k.vertex_count)}
    for a in range(g.order):
        for f in domain:
            hits[va[a][f]].append(a)
    mover = {}
    for x, lst in hits.items():
        if len(lst) != 1:
            raise ValueError(f"domain covers vertex {x} {len(lst)} times, "
                             "expected exactly once")
        mover[x] = lst[0]
    top = k.dimension
    cover, bases = ordered_chain_complex(k)
    bar = bar_complex(g, top)
    bar_index = [{t: i for i, t in enumerate(_bar_tuples(g.order, n))}
                 for n in range(top + 1)]
    mats = []
    for n in range(top + 1):
        entries = [(bar_index[n][_simplex_word(g, mover, t)], j, ONE)
                   for j, t in enumerate(bases[n])]
        mats.append(Matrix.from_entries(bar.complex.dim(n),
                                        cover.dim(n), entries))
    f = chain_map(cover, bar.complex, mats)
    cover_actions = []
    for n in range(top + 1):
        index = {t: i for i, t in enumerate(bases[n])}
        per = []
        for a in range(g.order):
            entries = [(index[tuple(va[a][w] for w in t)], j, ONE)
                       for j, t in enumerate(bases[n])]
            per.append(Matrix.from_entries(cover.dim(n), cover.dim(n), entries))
        cover_actions.append(tuple(per))
    _check_equivariance(g, cover, cover_actions)
    for n in range(top + 1):
        for a in range(g.order):
            if mats[n] @ cover_actions[n][a] != bar.actions[n][a] @ mats[n]:
                raise RuntimeError(f"eta is not equivariant at degree {n}, "
                                   f"element {a}")
        if cover.dim(n) and operator_norm(f, n) != 1:
            raise RuntimeError(f"eta operator norm is not 1 at degree {n}")
    return EtaResult(f, bar, cover, bases, tuple(cover_actions), va, domain)


def _simplex_word(g: FiniteGroup, mover, t: tuple[int, ...]) -> tuple[int, ...]:
    hs = [mover[w] for w in t]
    return (hs[0],) + tuple(g.mul(g.inv(hs[i]), hs[i + 1])
                            for i in range(len(t) - 1))


def theta_map(res: EtaResult) -> ChainMap:
    """Dual of eta, compared entrywise against its evaluation formula.

    theta sends a bar functional to the cochain whose value on an
    ordered simplex is the functional at that simplex's group word.
    The matrix this formula produces must coincide with the transpose
    of eta in every degree.
    """
    g = res.bar.group
    mover = {}
    for a in range(g.order):
        for f in res.domain:
            mover[res.vertex_actions[a][f]] = a
    theta = dual_map(res.map)
    for n in range(res.cover_complex.top_degree + 1):
        index = {t: i for i, t in enumerate(_bar_tuples(g.order, n))}
        entries = [(j, index[_simplex_word(g, mover, t)], ONE)
                   for j, t in enumerate(res.cover_bases[n])]
        formula = Matrix.from_entries(res.cover_complex.dim(n),
                                      res.bar.complex.dim(n), entries)
        if formula != theta.at(n):
            raise RuntimeError(f"theta does not match its formula at "
                               f"degree {n}")
    return theta


def eta_coinvariant_h0(res: EtaResult) -> Matrix:
    """Induced matrix on degree-0 homology of the coinvariant complexes.

    Two eta maps for different fundamental domains must give the same
    matrix here; this is the finite shadow of their chain homotopy.
    """
    g = res.bar.group
    co_src = coinvariants(equivariant_complex(g, res.cover_complex,
                                              res.cover_actions))
    co_tgt = coinvariants(equivariant_complex(g, res.bar.complex,
                                              res.bar.actions))
    descended = descend_to_coinvariants(res.map, co_src, co_tgt)
    return induced_matrix(descended, 0)
