"""Mapping cones and the translation between homology and dual cohomology.

The homological cone of f : C -> D puts C_{n-1} next to D_n with the
l1 direct-sum norm; the cochain cone shifts the source up and carries
the max norm.  The degreewise identification between the dual of a
cone and a shifted cochain cone is constructed explicitly and checked
entry by entry, never approximately.

Frozen conventions (any consistent choice works, this one is ours):
  * cone(f)_n = C_{n-1} (+) D_n, boundary [[-d_C, 0], [f, d_D]];
  * cocone(g)^n = A^{n+1} (+) B^n for g : A -> B, coboundary
    [[-delta_A, 0], [g, delta_B]];
  * shifted_cocone(g)^n = A^n (+) B^{n-1}, coboundary
    [[delta_A, 0], [-g, -delta_B]].  This is the degree-shifted cocone
    with the bottom A^0 term kept; shifting the finitely supported
    cocone directly would truncate it away.
The dual of cone(f) is then identified with
shifted_cocone(negate(dual_map(f))) by the plain block swap, no signs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complexes import (NormedComplex, NormSpec, ChainMap, HOMOLOGICAL,
                        COHOMOLOGICAL, L1, LINF, validate, dual, dual_map,
                        negate, chain_map)
from .homology import (homology, homology_dims, homology_iso_degrees,
                       induced_matrix)
from .linalg import Matrix, Vector, vec, solve, inverse, rank
from .lp import min_weighted_l1, min_weighted_linf
from .rationals import ZERO, ONE


@dataclass(frozen=True)
class Cone:
    """A cone complex with its provenance and block structure.

    blocks[n] = (a, b): the first a coordinates in degree n come from
    the shifted complex, the remaining b from the unshifted one.
    """
    complex: NormedComplex
    source_map: ChainMap
    blocks: tuple[tuple[int, int], ...]


def _checked(f: ChainMap) -> None:
    bad = f.validate()
    if bad:
        raise ValueError("invalid chain map: " + bad[0])


def _require_kind(c: NormedComplex, kind: str, role: str) -> None:
    for n in range(c.top_degree + 1):
        if c.dim(n) and c.norm_at(n).kind != kind:
            raise ValueError(f"{role} must carry {kind} norms, "
                             f"degree {n} has {c.norm_at(n).kind}")


def _concat_norms(kind: str, first: NormSpec, second: NormSpec) -> NormSpec:
    return NormSpec(kind, first.weights + second.weights)


def _concat_labels(a, b, pa: str, pb: str):
    if a is None or b is None:
        return None
    return tuple(f"{pa}:{s}" for s in a) + tuple(f"{pb}:{s}" for s in b)


def _labels_at(c: NormedComplex, n: int):
    if c.labels is None or not (0 <= n <= c.top_degree):
        return () if c.labels is not None else None
    return c.labels[n]


def cone(f: ChainMap) -> Cone:
    """The mapping cone of a homological chain map."""
    _checked(f)
    C, D = f.source, f.target
    if C.orientation != HOMOLOGICAL:
        raise ValueError("cone expects a homological chain map")
    _require_kind(C, L1, "cone source")
    _require_kind(D, L1, "cone target")
    top = max(C.top_degree + 1, D.top_degree)
    dims = tuple(C.dim(n - 1) + D.dim(n) for n in range(top + 1))
    maps = []
    for n in range(1, top + 1):
        # degree n block (C_{n-1}, D_n) maps to (C_{n-2}, D_{n-1})
        maps.append(Matrix.block([
            [-C.boundary(n - 1), Matrix.zeros(C.dim(n - 2), D.dim(n))],
            [f.at(n - 1), D.boundary(n)],
        ]))
    norms = tuple(_concat_norms(L1, C.norm_at(n - 1), D.norm_at(n))
                  for n in range(top + 1))
    labels = None
    if C.labels is not None and D.labels is not None:
        labels = tuple(_concat_labels(_labels_at(C, n - 1), _labels_at(D, n),
                                      "src", "tgt") for n in range(top + 1))
    cx = NormedComplex(HOMOLOGICAL, dims, tuple(maps), norms, labels)
    report = validate(cx)
    if not report.ok:
        raise RuntimeError("cone failed validation: " + report.lines()[0])
    blocks = tuple((C.dim(n - 1), D.dim(n)) for n in range(top + 1))
    return Cone(cx, f, blocks)


def cocone(g: ChainMap) -> Cone:
    """The mapping cone of a cochain map, source shifted up, max norm."""
    _checked(g)
    A, B = g.source, g.target
    if A.orientation != COHOMOLOGICAL:
        raise ValueError("cocone expects a cochain map")
    _require_kind(A, LINF, "cocone source")
    _require_kind(B, LINF, "cocone target")
    top = max(A.top_degree - 1, B.top_degree)
    dims = tuple(A.dim(n + 1) + B.dim(n) for n in range(top + 1))
    maps = []
    for n in range(top):
        maps.append(Matrix.block([
            [-A.coboundary(n + 1), Matrix.zeros(A.dim(n + 2), B.dim(n))],
            [g.at(n + 1), B.coboundary(n)],
        ]))
    norms = tuple(_concat_norms(LINF, A.norm_at(n + 1), B.norm_at(n))
                  for n in range(top + 1))
    labels = None
    if A.labels is not None and B.labels is not None:
        labels = tuple(_concat_labels(_labels_at(A, n + 1), _labels_at(B, n),
                                      "src", "tgt") for n in range(top + 1))
    cx = NormedComplex(COHOMOLOGICAL, dims, tuple(maps), norms, labels)
    report = validate(cx)
    if not report.ok:
        raise RuntimeError("cocone failed validation: " + report.lines()[0])
    blocks = tuple((A.dim(n + 1), B.dim(n)) for n in range(top + 1))
    return Cone(cx, g, blocks)


def shifted_cocone(g: ChainMap) -> Cone:
    """The cochain cone shifted one degree up, keeping the bottom term.

    Degree n holds A^n (+) B^{n-1}; at n = 0 this is plain A^0, the
    term a shift of the finitely supported cocone would drop.
    """
    _checked(g)
    A, B = g.source, g.target
    if A.orientation != COHOMOLOGICAL:
        raise ValueError("shifted_cocone expects a cochain map")
    _require_kind(A, LINF, "shifted cocone source")
    _require_kind(B, LINF, "shifted cocone target")
    top = max(A.top_degree, B.top_degree + 1)
    dims = tuple(A.dim(n) + B.dim(n - 1) for n in range(top + 1))
    maps = []
    for n in range(top):
        maps.append(Matrix.block([
            [A.coboundary(n), Matrix.zeros(A.dim(n + 1), B.dim(n - 1))],
            [-g.at(n), -B.coboundary(n - 1)],
        ]))
    norms = tuple(_concat_norms(LINF, A.norm_at(n), B.norm_at(n - 1))
                  for n in range(top + 1))
    labels = None
    if A.labels is not None and B.labels is not None:
        labels = tuple(_concat_labels(_labels_at(A, n), _labels_at(B, n - 1),
                                      "src", "tgt") for n in range(top + 1))
    cx = NormedComplex(COHOMOLOGICAL, dims, tuple(maps), norms, labels)
    report = validate(cx)
    if not report.ok:
        raise RuntimeError("shifted cocone failed validation: " + report.lines()[0])
    blocks = tuple((A.dim(n), B.dim(n - 1)) for n in range(top + 1))
    return Cone(cx, g, blocks)


def cone_dual_iso(f: ChainMap) -> tuple[ChainMap, bool]:
    """Identify the dual of cone(f) with the shifted cocone of -f'.

    Degreewise the dual cone holds (C'^{n-1}, D'^n) and the shifted
    cocone holds (D'^n, C'^{n-1}); the identification is the block
    swap.  Commutation with the coboundaries is checked entry by entry
    by the chain-map constructor and the weight permutation is checked
    explicitly, so the returned map is an isometric isomorphism.
    """
    _checked(f)
    if f.source.orientation != HOMOLOGICAL:
        raise ValueError("cone_dual_iso expects a homological chain map")
    X = dual(cone(f).complex)
    Y = shifted_cocone(negate(dual_map(f))).complex
    C, D = f.source, f.target
    mats = []
    for n in range(X.top_degree + 1):
        a = C.dim(n - 1)        # C'-block of X, second block of Y
        b = D.dim(n)            # D'-block of X, first block of Y
        mats.append(Matrix.block([
            [Matrix.zeros(b, a), Matrix.identity(b)],
            [Matrix.identity(a), Matrix.zeros(a, b)],
        ]))
    iso = chain_map(X, Y, mats)     # raises unless all squares commute
    for n in range(X.top_degree + 1):
        wx = X.norm_at(n).weights
        wy = Y.norm_at(n).weights
        m = mats[n]
        for j in range(m.ncols):
            (i, v), = m.cols[j].items()
            if v != 1 or wy[i] != wx[j]:
                raise RuntimeError(f"cone dual identification is not isometric "
                                   f"at degree {n}, coordinate {j}")
    return iso, True


def iso_via_cone(f: ChainMap) -> bool:
    """Does f induce isomorphisms in all degrees?  Computed two ways.

    Direct rank computation on (co)homology and vanishing of the cone's
    homology must agree; disagreement would falsify the long exact
    sequence and raises.
    """
    _checked(f)
    if f.source.orientation == HOMOLOGICAL:
        k = cone(f).complex
    else:
        k = shifted_cocone(f).complex
    direct = all(homology_iso_degrees(f))
    via_cone = all(d == 0 for d in homology_dims(k))
    if direct != via_cone:
        raise RuntimeError(f"cone criterion disagrees with direct ranks: "
                           f"direct {direct}, cone {via_cone}")
    return direct


def cone_rank_identity(f: ChainMap) -> tuple[tuple[int, int, int], ...]:
    """Per degree: dim H_n(cone f) against coker H_n(f) + ker H_{n-1}(f).

    The pairs must agree by the long exact sequence of the cone; the
    first mismatch raises.  Returns (degree, lhs, rhs) triples.
    """
    _checked(f)
    if f.source.orientation != HOMOLOGICAL:
        raise ValueError("cone_rank_identity expects a homological chain map")
    k = cone(f).complex
    out = []
    for n in range(k.top_degree + 1):
        lhs = homology(k, n).dimension
        hd = homology(f.target, n).dimension
        hc_prev = homology(f.source, n - 1).dimension if n >= 1 else 0
        r_n = rank(induced_matrix(f, n))
        r_prev = rank(induced_matrix(f, n - 1)) if n >= 1 else 0
        rhs = (hd - r_n) + (hc_prev - r_prev)
        if lhs != rhs:
            raise RuntimeError(f"long exact sequence rank identity fails at "
                               f"degree {n}: {lhs} != {rhs}")
        out.append((n, lhs, rhs))
    return tuple(out)


# -- translation between seminorms and dual co-seminorms --------------


@dataclass(frozen=True)
class ProbeCheck:
    side: str               # "chain" or "cochain"
    degree: int
    before: Fraction
    after: Fraction
    ok: bool


@dataclass(frozen=True)
class TranslationReport:
    """Outcome of comparing f with its dual on (co)homology.

    Part one is unconditional: homology_iso and dual_cohomology_iso
    must match.  Part two is scoped: isometric_hypothesis records
    whether the dual map preserved co-seminorms on the checked set,
    and seminorms_preserved is only filled in when it did.  In probe
    mode each check compares two norms for equality; in exhaustive
    mode each check verifies a unit-ball generator lands inside the
    other unit ball, certifying isometry on the whole ball.
    """
    homology_iso: bool
    dual_cohomology_iso: bool
    chain_probes: int
    cochain_probes: int
    exhaustive: bool
    probe_scope: str
    isometric_hypothesis: bool | None
    seminorms_preserved: bool | None
    checks: tuple[ProbeCheck, ...]


def _class_rep(space, coords: Vector) -> Vector:
    return space.cycle_basis.apply(coords)


def _linf_ball_vertices(K: Matrix, weights) -> list[Vector]:
    """Vertices of {c : max_j w_j |(Kc)_j| <= 1}; needs K.ncols <= 3."""
    d = K.ncols
    if d == 0:
        return []
    if d > 3:
        raise ValueError("vertex enumeration limited to dimension <= 3")
    rows = K.to_rows()
    scaled = [tuple(weights[j] * x for x in rows[j]) for j in range(K.nrows)]
    out: set[tuple] = set()
    for picked in combinations(range(len(scaled)), d):
        sub = [scaled[j] for j in picked]
        for signs in range(1 << d):
            rhs = [ONE if signs >> t & 1 else -ONE for t in range(d)]
            c = solve(Matrix.from_rows(sub, ncols=d), rhs)
            if c is None:
                continue
            if all(abs(sum(r * x for r, x in zip(row, c))) <= 1 for row in scaled):
                out.add(tuple(c))
    return [vec(v) for v in sorted(out)]


def _l1_ball_generators(K: Matrix, weights) -> list[Vector]:
    """A finite set with convex hull {c : sum_j w_j |(Kc)_j| <= 1}.

    The l1 expression is the support function of the zonotope spanned
    by the weighted rows of K, so the ball is its polar; candidate
    points come from directions orthogonal to row pairs (facet normals
    in dimension 3), single rows (dimension 2), or the line itself.
    Candidates that support lower faces land on the boundary and do
    not disturb the hull.  Needs K.ncols <= 3 and K of full rank.
    """
    d = K.ncols
    if d == 0:
        return []
    if d > 3:
        raise ValueError("ball generation limited to dimension <= 3")
    rows = K.to_rows()
    gens = [tuple(weights[j] * x for x in rows[j]) for j in range(K.nrows)]

    def height(n):
        return sum(abs(sum(g * x for g, x in zip(gen, n))) for gen in gens)

    normals = []
    if d == 1:
        normals.append((ONE,))
    elif d == 2:
        for g in gens:
            if g != (ZERO, ZERO):
                normals.append((-g[1], g[0]))
    else:
        for a, b in combinations(gens, 2):
            n = (a[1] * b[2] - a[2] * b[1],
                 a[2] * b[0] - a[0] * b[2],
                 a[0] * b[1] - a[1] * b[0])
            if any(x != 0 for x in n):
                normals.append(n)
    if not normals:
        raise ValueError("ball generation needs a spanning set of rows")
    out: set[tuple] = set()
    for n in normals:
        h = height(n)
        if h == 0:
            raise ValueError("ball generation needs a spanning set of rows")
        out.add(tuple(x / h for x in n))
        out.add(tuple(-x / h for x in n))
    return [vec(v) for v in sorted(out)]


def _quotient_min(c: NormedComplex, n: int, rep: Vector) -> Fraction:
    spec = c.norm_at(n)
    if spec.kind == L1:
        return min_weighted_l1(rep, c.incoming(n), spec.weights).value
    return min_weighted_linf(rep, c.incoming(n), spec.weights).value


def _ball_mapped_inside(src: NormedComplex, tgt: NormedComplex, n: int,
                        t_mat: Matrix, checks: list[ProbeCheck],
                        side: str) -> bool:
    """Do unit-ball generators of H_n(src) land in the unit ball of H_n(tgt)?"""
    hs = homology(src, n)
    spec = src.norm_at(n)
    K = hs.kernel_basis
    if K.ncols == 0:
        return True
    if spec.kind == L1:
        gens = _l1_ball_generators(K, spec.weights)
    else:
        gens = _linf_ball_vertices(K, spec.weights)
    ht = homology(tgt, n)
    ok = True
    for g in gens:
        coords = hs.quotient_projector.apply(K.apply(g))
        image_rep = _class_rep(ht, t_mat.apply(coords))
        value = _quotient_min(tgt, n, image_rep)
        good = value <= 1
        checks.append(ProbeCheck(side, n, ONE, value, good))
        ok = ok and good
    return ok


def translation_check(f: ChainMap, probes=(), exhaustive: bool = False
                      ) -> TranslationReport:
    """Compare f on homology with its dual on cohomology.

    Part one asserts the biconditional: f induces isomorphisms in all
    degrees exactly when its dual does.  Part two, only meaningful in
    the isomorphism case, checks whether the dual preserves quotient
    co-seminorms; when it does on the checked set, the seminorms of f
    are compared on the chain-side set and the outcome reported.

    Probes are classes on f.source (chain side) or on dual(f.target)
    (cochain side); homology basis classes of every degree are always
    included.  With exhaustive=True the checks instead run over unit
    ball generators in every degree, which certifies isometry on the
    whole ball but is only available while all cycle and cocycle
    spaces have dimension at most 3; a hypothesis confirmed that way
    makes a chain-side failure a logic error, hence an exception.
    """
    _checked(f)
    if f.source.orientation != HOMOLOGICAL:
        raise ValueError("translation_check expects a homological chain map")
    C, D = f.source, f.target
    Dp, Cp = dual(D), dual(C)
    fp = dual_map(f)
    iso_chain = all(homology_iso_degrees(f))
    iso_cochain = all(homology_iso_degrees(fp))
    if iso_chain != iso_cochain:
        raise RuntimeError(f"duality biconditional fails: homology {iso_chain}, "
                           f"dual cohomology {iso_cochain}")

    chain_probes: list = []
    cochain_probes: list = []
    for p in probes:
        if p.parent == C:
            chain_probes.append(p)
        elif p.parent == Dp:
            cochain_probes.append(p)
        else:
            raise ValueError("probes must live on the source complex or on "
                             "the dual of the target")

    if not iso_chain:
        scope = "not applicable: no isomorphism on homology"
        return TranslationReport(iso_chain, iso_cochain, len(chain_probes),
                                 len(cochain_probes), exhaustive, scope,
                                 None, None, ())

    checks: list[ProbeCheck] = []
    top = max(C.top_degree, D.top_degree)

    if exhaustive:
        hypothesis = True
        for n in range(top + 1):
            t = induced_matrix(fp, n)
            tinv = inverse(t)
            if t.nrows != t.ncols or tinv is None:
                raise RuntimeError("isomorphism lost between rank check and "
                                   f"inversion at degree {n}")
            hypothesis &= _ball_mapped_inside(Dp, Cp, n, t, checks, "cochain")
            hypothesis &= _ball_mapped_inside(Cp, Dp, n, tinv, checks, "cochain")
        preserved = None
        if hypothesis:
            preserved = True
            for n in range(top + 1):
                t = induced_matrix(f, n)
                tinv = inverse(t)
                preserved &= _ball_mapped_inside(C, D, n, t, checks, "chain")
                preserved &= _ball_mapped_inside(D, C, n, tinv, checks, "chain")
            if not preserved:
                raise RuntimeError("dual co-seminorms certified isometric but "
                                   "a seminorm moved; this cannot happen")
        scope = "unit-ball generators in all degrees (exhaustive)"
        return TranslationReport(iso_chain, iso_cochain, len(chain_probes),
                                 len(cochain_probes), True, scope,
                                 hypothesis, preserved, tuple(checks))

    # probe mode: basis classes everywhere, plus whatever was supplied
    hypothesis = True
    for n in range(top + 1):
        hsp = homology(Dp, n)
        reps = [hsp.cycle_basis.column(j) for j in range(hsp.dimension)]
        reps += [vec(p.representative) for p in cochain_probes if p.degree == n]
        ht = homology(Cp, n)
        t = induced_matrix(fp, n)
        for r in reps:
            before = _quotient_min(Dp, n, r)
            image_rep = _class_rep(ht, t.apply(hsp.quotient_projector.apply(r)))
            after = _quotient_min(Cp, n, image_rep)
            good = before == after
            checks.append(ProbeCheck("cochain", n, before, after, good))
            hypothesis = hypothesis and good
    preserved = None
    if hypothesis:
        preserved = True
        for n in range(top + 1):
            hs = homology(C, n)
            reps = [hs.cycle_basis.column(j) for j in range(hs.dimension)]
            reps += [vec(p.representative) for p in chain_probes if p.degree == n]
            ht = homology(D, n)
            t = induced_matrix(f, n)
            for r in reps:
                before = _quotient_min(C, n, r)
                image_rep = _class_rep(ht, t.apply(hs.quotient_projector.apply(r)))
                after = _quotient_min(D, n, image_rep)
                good = before == after
                checks.append(ProbeCheck("chain", n, before, after, good))
                preserved = preserved and good
    scope = (f"homology basis classes in degrees 0..{top} plus "
             f"{len(chain_probes)} chain and {len(cochain_probes)} cochain "
             f"supplied classes")
    return TranslationReport(iso_chain, iso_cochain, len(chain_probes),
                             len(cochain_probes), False, scope,
                             hypothesis, preserved, tuple(checks))
