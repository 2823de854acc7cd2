"""Finite simplicial complexes feeding the normed chain machinery.

Chain complexes use the simplex bases with unit l1 weights by default,
so the norm of a chain is the sum of absolute coefficients.  The
module also builds fundamental cycles of closed pseudo-manifolds by
orientation propagation, bounds the norm of the fundamental class by
LP, triangulates K x [0,1] by the staircase decomposition for the
prism operator, and tracks the partial sums of the degree-d self-map
series.  Everything is exact; no statement about limits in completions
is ever produced.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .complexes import NormedComplex, NormSpec, ChainMap, HOMOLOGICAL, L1, \
    unit_l1, validate
from .homology import homology_class, seminorm
from .linalg import Matrix, Vector, vec, vzero, vadd
from .rationals import ZERO, ONE, rat, rat_str


def _closure(tops) -> set[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    stack = [tuple(t) for t in tops]
    while stack:
        s = stack.pop()
        if s in out or not s:
            continue
        out.add(s)
        if len(s) > 1:
            stack.extend(s[:i] + s[i + 1:] for i in range(len(s)))
    return out


@dataclass(frozen=True)
class SimplicialComplex:
    """All simplices, explicitly listed and closed under taking faces.

    Construct directly only with a face-closed list; the constructor
    rejects gaps and names a missing face.  from_top computes the
    closure of a list of generating simplices.
    """
    vertex_count: int
    simplices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for s in self.simplices:
            if not s:
                raise ValueError("empty simplex")
            if list(s) != sorted(set(s)):
                raise ValueError(f"simplex {s} is not strictly increasing")
            if s[0] < 0 or s[-1] >= self.vertex_count:
                raise ValueError(f"simplex {s} has a vertex out of range")
            if s in seen:
                raise ValueError(f"duplicate simplex {s}")
            seen.add(s)
        for s in self.simplices:
            if len(s) > 1:
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    if face not in seen:
                        raise ValueError(f"not closed under faces: {s} "
                                         f"is listed but {face} is missing")
        object.__setattr__(self, "simplices",
                           tuple(sorted(self.simplices, key=lambda s: (len(s), s))))

    @classmethod
    def from_top(cls, vertex_count: int, tops) -> "SimplicialComplex":
        """Closure of a generating list; each top is a set of vertices."""
        canonical = []
        for t in tops:
            if len(set(t)) != len(t):
                raise ValueError(f"generating simplex {tuple(t)} repeats a vertex")
            canonical.append(tuple(sorted(t)))
        return cls(vertex_count,
                   tuple(sorted(_closure(canonical), key=lambda s: (len(s), s))))

    @property
    def dimension(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def of_dim(self, k: int) -> tuple[tuple[int, ...], ...]:
        return tuple(s for s in self.simplices if len(s) == k + 1)

    def maximal(self) -> tuple[tuple[int, ...], ...]:
        sets = [set(s) for s in self.simplices]
        out = []
        for i, s in enumerate(self.simplices):
            if not any(j != i and sets[i] < sets[j] for j in range(len(sets))):
                out.append(s)
        return tuple(out)

    def is_pure(self) -> bool:
        n = self.dimension
        return all(len(s) == n + 1 for s in self.maximal())


def chain_complex(k: SimplicialComplex, weights=None) -> NormedComplex:
    """The simplicial chain complex, one l1 coordinate per simplex.

    Basis order within a degree is lexicographic.  weights, when
    given, is one positive-rational sequence per degree.
    """
    n = k.dimension
    by_dim = [k.of_dim(d) for d in range(n + 1)]
    dims = tuple(len(b) for b in by_dim)
    index = [{s: i for i, s in enumerate(b)} for b in by_dim]
    maps = []
    for d in range(1, n + 1):
        entries = []
        for j, s in enumerate(by_dim[d]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                entries.append((index[d - 1][face], j, -ONE if i % 2 else ONE))
        maps.append(Matrix.from_entries(dims[d - 1], dims[d], entries))
    if weights is None:
        norms = tuple(unit_l1(d) for d in dims)
    else:
        if len(weights) != n + 1:
            raise ValueError(f"expected {n + 1} weight sequences")
        norms = tuple(NormSpec(L1, tuple(rat(w) for w in ws)) for ws in weights)
    labels = tuple(tuple("-".join(map(str, s)) for s in b) for b in by_dim)
    cx = NormedComplex(HOMOLOGICAL, dims, tuple(maps), norms, labels)
    report = validate(cx)
    if not report.ok:
        raise RuntimeError("simplicial chain complex failed validation: "
                           + report.lines()[0])
    return cx


@dataclass(frozen=True)
class FundamentalCycle:
    """A +-1 coefficient per top simplex forming an exact cycle."""
    complex: SimplicialComplex
    coefficients: tuple[Fraction, ...]     # indexed like of_dim(dimension)

    def as_vector(self) -> Vector:
        return vec(self.coefficients)


class NonOrientable(Exception):
    """Orientation propagation hit a contradiction.

    witness is a tuple of top simplices forming a loop along which no
    consistent orientation exists.
    """

    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


def fundamental_cycle(k: SimplicialComplex) -> FundamentalCycle:
    """Propagate orientations across facets, starting +1 at the first top.

    Requires a closed pseudo-manifold: pure, every codimension-1 face
    in exactly two top simplices, connected top adjacency.
    """
    n = k.dimension
    if not k.is_pure():
        small = min((s for s in k.maximal() if len(s) != n + 1), key=len)
        raise ValueError(f"not pure: maximal simplex {small} has dimension "
                         f"{len(small) - 1}, top dimension is {n}")
    tops = k.of_dim(n)
    if n == 0:
        if len(tops) != 1:
            raise ValueError("top adjacency is not connected: "
                             f"{len(tops)} isolated vertices")
        return FundamentalCycle(k, (ONE,))
    facet_tops: dict[tuple, list[int]] = {}
    for j, s in enumerate(tops):
        for i in range(len(s)):
            facet_tops.setdefault(s[:i] + s[i + 1:], []).append((j, i))
    for face, touching in facet_tops.items():
        if len(touching) != 2:
            raise ValueError(f"face {face} lies in {len(touching)} top "
                             "simplices, expected exactly 2")
    sign: dict[int, Fraction] = {0: ONE}
    parent: dict[int, int] = {0: 0}
    queue = deque([0])
    while queue:
        j = queue.popleft()
        s = tops[j]
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            (a, ia), (b, ib) = facet_tops[face]
            other, io = ((b, ib) if a == j else (a, ia))
            here = ia if a == j else ib
            forced = -sign[j] * (-ONE if here % 2 else ONE) * (-ONE if io % 2 else ONE)
            if other not in sign:
                sign[other] = forced
                parent[other] = j
                queue.append(other)
            elif sign[other] != forced:
                # walk both ancestries to the root: the union is an odd loop
                def path(x):
                    p = [x]
                    while parent[p[-1]] != p[-1]:
                        p.append(parent[p[-1]])
                    return p
                loop = [tops[t] for t in path(j)] + [tops[t] for t in path(other)]
                raise NonOrientable(
                    f"no consistent orientation: facet {face} joins top "
                    f"simplices {tops[j]} and {tops[other]} with conflicting "
                    "propagated signs", tuple(loop))
    if len(sign) != len(tops):
        missing = next(i for i in range(len(tops)) if i not in sign)
        raise ValueError("top adjacency is not connected: "
                         f"{tops[missing]} unreachable from {tops[0]}")
    z = FundamentalCycle(k, tuple(sign[j] for j in range(len(tops))))
    cc = chain_complex(k)
    if any(x != 0 for x in cc.boundary(n).apply(z.as_vector())):
        raise RuntimeError("propagated orientation is not a cycle")
    return z


@dataclass(frozen=True)
class SvBound:
    """LP value of the fundamental class seminorm.

    The value only bounds the simplicial volume of the underlying
    space from above; the note travels with every report.
    """
    value: Fraction
    cycle: FundamentalCycle
    minimizer: Vector
    certificate: Vector | None
    note: str = ("upper bound: the l1-seminorm of the fundamental class in "
                 "this triangulation bounds, and need not equal, the "
                 "simplicial volume of the underlying space")


def sv_upper_bound(k: SimplicialComplex) -> SvBound:
    z = fundamental_cycle(k)
    cc = chain_complex(k)
    alpha = homology_class(cc, k.dimension, z.as_vector())
    res = seminorm(cc, alpha)
    return SvBound(res.value, z, res.witness, res.certificate)


# -- prisms ------------------------------------------------------------
#
# K x [0,1] is triangulated by staircases: over a simplex (v_0..v_p)
# the prism splits into the (p+1) simplices [v_0..v_i, w_i..w_p] with
# w_j the copy of v_j one level up.  Level-0 vertices come before all
# level-1 vertices, so the staircase tuples are already sorted.


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """One barycentric subdivision; new vertex i is the barycenter of
    the i-th simplex of K in its canonical order.

    Top simplices are the flags of faces of the maximal simplices;
    each flag comes from exactly one insertion order of the vertices.
    """
    index = {s: i for i, s in enumerate(k.simplices)}
    tops = []
    for s in k.maximal():
        for p in permutations(s):
            tops.append(tuple(index[tuple(sorted(p[:i + 1]))]
                              for i in range(len(p))))
    return SimplicialComplex.from_top(len(k.simplices), tops)


def product_with_interval(k: SimplicialComplex) -> SimplicialComplex:
    n = k.vertex_count
    tops = []
    for s in k.maximal():
        for i in range(len(s)):
            tops.append(s[:i + 1] + tuple(n + v for v in s[i:]))
    return SimplicialComplex.from_top(2 * n, tops)


def level_inclusion(k: SimplicialComplex, prod: SimplicialComplex,
                    level: int, degree: int) -> Matrix:
    """Degree-d chain matrix of K -> K x [0,1] at the given level."""
    shift = 0 if level == 0 else k.vertex_count
    src = k.of_dim(degree)
    tgt = {s: i for i, s in enumerate(prod.of_dim(degree))}
    entries = [(tgt[tuple(v + shift for v in s)], j, ONE)
               for j, s in enumerate(src)]
    return Matrix.from_entries(len(tgt), len(src), entries)


@dataclass(frozen=True)
class PrismResult:
    product: SimplicialComplex
    degree: int                       # degree of the prism chain b
    chain: Vector                     # b, in product coordinates
    bottom: Vector                    # inclusion of z at level 0
    top: Vector                       # inclusion of z at level 1
    chain_norm: Fraction
    norm_bound: Fraction              # degree * |z|


def prism(k: SimplicialComplex, degree: int, coefficients) -> PrismResult:
    """The chain b with boundary j1(z) - j0(z) in K x [0,1].

    z must be a cycle; each simplex of z contributes its staircase
    with alternating signs, so |b| <= (degree+1) * |z|.
    """
    z = vec(coefficients)
    cc = chain_complex(k)
    if len(z) != cc.dim(degree):
        raise ValueError(f"expected {cc.dim(degree)} coefficients in degree "
                         f"{degree}, got {len(z)}")
    residual = cc.boundary(degree).apply(z)
    if any(x != 0 for x in residual):
        bad = next(i for i, x in enumerate(residual) if x != 0)
        raise ValueError("prism input must be a cycle; boundary coefficient "
                         f"{rat_str(residual[bad])} on face "
                         f"{k.of_dim(degree - 1)[bad]}")
    prod = product_with_interval(k)
    n = k.vertex_count
    up_index = {s: i for i, s in enumerate(prod.of_dim(degree + 1))}
    b = [ZERO] * len(up_index)
    for j, s in enumerate(k.of_dim(degree)):
        if z[j] == 0:
            continue
        for i in range(len(s)):
            stair = s[:i + 1] + tuple(n + v for v in s[i:])
            b[up_index[stair]] += (-ONE if i % 2 else ONE) * z[j]
    b = vec(b)
    j0 = level_inclusion(k, prod, 0, degree).apply(z)
    j1 = level_inclusion(k, prod, 1, degree).apply(z)
    pcc = chain_complex(prod)
    boundary = pcc.boundary(degree + 1).apply(b)
    want = tuple(x - y for x, y in zip(j1, j0))
    if boundary != want:
        raise RuntimeError("prism boundary identity failed")
    norm = sum(map(abs, b), ZERO)
    bound = (degree + 1) * sum(map(abs, z), ZERO)
    if norm > bound:
        raise RuntimeError("prism norm bound failed")
    return PrismResult(prod, degree + 1, b, j0, j1, norm, bound)


# -- ordered-tuple chains ----------------------------------------------


def ordered_chain_complex(k: SimplicialComplex, top_degree: int | None = None
                          ) -> tuple[NormedComplex, tuple[tuple[tuple[int, ...], ...], ...]]:
    """Chains on injective ordered vertex tuples spanning simplices of K.

    Unlike the sorted-simplex model, every ordering is its own basis
    element; a vertex permutation of K therefore acts by permuting the
    basis with no signs, which is what equivariant constructions need.
    Returns the complex and the per-degree tuple bases.
    """
    if top_degree is None:
        top_degree = k.dimension
    bases = []
    for d in range(top_degree + 1):
        tuples = []
        for s in k.of_dim(d):
            tuples.extend(permutations(s))
        bases.append(tuple(sorted(tuples)))
    index = [{t: i for i, t in enumerate(b)} for b in bases]
    maps = []
    for d in range(1, top_degree + 1):
        entries = []
        for j, t in enumerate(bases[d]):
            for i in range(len(t)):
                face = t[:i] + t[i + 1:]
                entries.append((index[d - 1][face], j, -ONE if i % 2 else ONE))
        maps.append(Matrix.from_entries(len(bases[d - 1]), len(bases[d]), entries))
    dims = tuple(len(b) for b in bases)
    labels = tuple(tuple("-".join(map(str, t)) for t in b) for b in bases)
    cx = NormedComplex(HOMOLOGICAL, dims, tuple(maps),
                       tuple(unit_l1(d) for d in dims), labels)
    return cx, tuple(bases)


# -- self-map series ---------------------------------------------------


@dataclass(frozen=True)
class SeriesReport:
    """Exact bookkeeping for the partial sums sum_{k<K} d^{-k} f^k(b).

    The telescoping identity makes each partial sum a primitive of
    z - d^{-K} f^K(z); term_norms and remainder_norms record the norm
    ledger, observed_ratio the largest step ratio between consecutive
    nonzero terms.  No claim about the K -> infinity limit is made:
    that would live in a completion this model does not contain.
    """
    d: int
    steps: int
    degree: int
    term_norms: tuple[Fraction, ...]          # |d^{-k} f^k(b)| for k < steps
    partial_norms: tuple[Fraction, ...]       # |b_K| for K = 1..steps
    remainder_norms: tuple[Fraction, ...]     # |d^{-K} f^K(z)| for K = 1..steps
    observed_ratio: Fraction | None
    geometric_decay: bool | None


def invisibility_series(f: ChainMap, degree: int, z, d: int, b,
                        steps: int = 8) -> SeriesReport:
    """Partial sums of the self-map series with exact telescoping.

    Preconditions checked exactly: f is a self-map, |d| >= 2, z is a
    cycle in the given degree, and the primitive identity
    boundary(b) = z - (1/d) f(z).  A violated primitive identity is
    rejected with the residual spelled out.
    """
    if f.source != f.target:
        raise ValueError("series needs a self-map")
    c = f.source
    if c.orientation != HOMOLOGICAL:
        raise ValueError("series expects a homological complex")
    if abs(d) < 2:
        raise ValueError(f"|d| must be at least 2, got {d}")
    if steps < 1:
        raise ValueError("steps must be positive")
    z = vec(z)
    b = vec(b)
    if len(z) != c.dim(degree) or len(b) != c.dim(degree + 1):
        raise ValueError("z or b has the wrong dimension for this degree")
    if any(x != 0 for x in c.boundary(degree).apply(z)):
        raise ValueError("z must be a cycle")
    fz = f.at(degree).apply(z)
    want = tuple(x - y / d for x, y in zip(z, fz))
    got = c.boundary(degree + 1).apply(b)
    if got != want:
        residual = tuple(g - w for g, w in zip(got, want))
        err = ValueError("primitive identity fails: boundary(b) - "
                         "(z - f(z)/d) = (" +
                         ", ".join(rat_str(x) for x in residual) + ")")
        err.residual = residual
        raise err

    norm = c.norm_at(degree + 1).norm
    norm_z = c.norm_at(degree).norm
    term = b
    power_z = z
    partial = vzero(c.dim(degree + 1))
    term_norms = []
    partial_norms = []
    remainder_norms = []
    for kk in range(steps):
        term_norms.append(norm(term))
        partial = vadd(partial, term)
        power_z = tuple(x / d for x in f.at(degree).apply(power_z))
        # telescoping: boundary of the partial sum is z - d^{-K} f^K(z)
        lhs = c.boundary(degree + 1).apply(partial)
        rhs = tuple(x - y for x, y in zip(z, power_z))
        if lhs != rhs:
            raise RuntimeError(f"telescoping identity failed at step {kk + 1}")
        partial_norms.append(norm(partial))
        remainder_norms.append(norm_z(power_z))
        term = tuple(x / d for x in f.at(degree + 1).apply(term))
    ratios = [b2 / b1 for b1, b2 in zip(term_norms, term_norms[1:]) if b1 != 0]
    observed = max(ratios) if ratios else None
    decay = None if observed is None else observed < 1
    return SeriesReport(d, steps, degree, tuple(term_norms),
                        tuple(partial_norms), tuple(remainder_norms),
                        observed, decay)
