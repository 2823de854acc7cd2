"""Finite-dimensional normed (co)chain complexes over the rationals.

A complex stores one space per degree 0..top_degree, a weighted l1 or
weighted linf norm per degree, and the differentials as exact matrices.
Homological complexes carry boundaries going down, cohomological ones
coboundaries going up; everything else (duals, cones, homology) is built
on top of this single representation.

Reduced and unreduced homology seminorms coincide here because every
space is finite dimensional and no completion step exists; ``completion``
is provided as a documented identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Vector
from .rationals import ZERO, ONE, rat_str

HOMOLOGICAL = "homological"
COHOMOLOGICAL = "cohomological"
L1 = "l1"
LINF = "linf"


@dataclass(frozen=True)
class NormSpec:
    """A weighted l1 or weighted linf norm on one graded piece.

    kind "l1":   |x| = sum_i weights[i] * abs(x_i)
    kind "linf": |x| = max_i weights[i] * abs(x_i)

    With this convention the dual of l1(w) is linf with weights 1/w, i.e.
    |f| = max_i abs(f_i) / w_i, and dualizing twice is the identity.
    """
    kind: str
    weights: tuple[Fraction, ...]

    def validate(self) -> list[str]:
        problems = []
        if self.kind not in (L1, LINF):
            problems.append(f"unknown norm kind {self.kind!r}")
        for i, w in enumerate(self.weights):
            if not isinstance(w, Fraction):
                problems.append(f"weight {i} is not an exact rational")
            elif w <= 0:
                problems.append(f"weight {i} = {rat_str(w)} is not positive")
        return problems

    @property
    def dim(self) -> int:
        return len(self.weights)

    def norm(self, v: Vector) -> Fraction:
        if len(v) != self.dim:
            raise ValueError("vector/norm dimension mismatch")
        if self.kind == L1:
            return sum((w * abs(x) for w, x in zip(self.weights, v)), ZERO)
        if not v:
            return ZERO
        return max(w * abs(x) for w, x in zip(self.weights, v))

    def dual(self) -> "NormSpec":
        dual_kind = LINF if self.kind == L1 else L1
        return NormSpec(dual_kind, tuple(ONE / w for w in self.weights))


def unit_l1(dim: int) -> NormSpec:
    return NormSpec(L1, (ONE,) * dim)


def unit_linf(dim: int) -> NormSpec:
    return NormSpec(LINF, (ONE,) * dim)


@dataclass(frozen=True)
class NormedComplex:
    """Graded spaces with differentials and norms.

    ``maps[k]`` is the boundary C_{k+1} -> C_k for homological complexes
    (shape dims[k] x dims[k+1]) and the coboundary C^k -> C^{k+1} for
    cohomological ones (shape dims[k+1] x dims[k]); both lists have
    length top_degree.
    """
    orientation: str
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    norms: tuple[NormSpec, ...]
    labels: tuple[tuple[str, ...], ...] | None = None

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def dim(self, n: int) -> int:
        if 0 <= n <= self.top_degree:
            return self.dims[n]
        return 0

    def norm_at(self, n: int) -> NormSpec:
        if 0 <= n <= self.top_degree:
            return self.norms[n]
        return NormSpec(self.norms[0].kind if self.norms else L1, ())

    def boundary(self, n: int) -> Matrix:
        """The boundary out of degree n (homological only)."""
        if self.orientation != HOMOLOGICAL:
            raise ValueError("boundary() requires a homological complex")
        if 1 <= n <= self.top_degree:
            return self.maps[n - 1]
        return Matrix.zeros(self.dim(n - 1), self.dim(n))

    def coboundary(self, n: int) -> Matrix:
        """The coboundary out of degree n (cohomological only)."""
        if self.orientation != COHOMOLOGICAL:
            raise ValueError("coboundary() requires a cohomological complex")
        if 0 <= n < self.top_degree:
            return self.maps[n]
        return Matrix.zeros(self.dim(n + 1), self.dim(n))

    def outgoing(self, n: int) -> Matrix:
        """The differential leaving degree n, zero-padded at the ends."""
        if self.orientation == HOMOLOGICAL:
            return self.boundary(n)
        return self.coboundary(n)

    def incoming(self, n: int) -> Matrix:
        """The differential arriving at degree n, zero-padded at the ends."""
        if self.orientation == HOMOLOGICAL:
            if 0 <= n < self.top_degree:
                return self.maps[n]
            return Matrix.zeros(self.dim(n), self.dim(n + 1))
        if 1 <= n <= self.top_degree:
            return self.maps[n - 1]
        return Matrix.zeros(self.dim(n), self.dim(n - 1))


@dataclass(frozen=True)
class Violation:
    degree: int | None
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        if self.ok:
            return ["valid"]
        return [f"degree {v.degree}: [{v.kind}] {v.message}" for v in self.violations]


def validate(c: NormedComplex) -> ValidationReport:
    """Check shapes, positive weights, and that consecutive maps compose to zero."""
    out: list[Violation] = []
    if c.orientation not in (HOMOLOGICAL, COHOMOLOGICAL):
        out.append(Violation(None, "orientation", f"unknown orientation {c.orientation!r}"))
        return ValidationReport(tuple(out))
    top = c.top_degree
    if len(c.maps) != top:
        out.append(Violation(None, "shape",
                             f"expected {top} differentials, found {len(c.maps)}"))
        return ValidationReport(tuple(out))
    if len(c.norms) != top + 1:
        out.append(Violation(None, "norm", f"expected {top + 1} norms, found {len(c.norms)}"))
        return ValidationReport(tuple(out))
    for n, d in enumerate(c.dims):
        if d < 0:
            out.append(Violation(n, "shape", "negative dimension"))
    for k, m in enumerate(c.maps):
        if c.orientation == HOMOLOGICAL:
            want = (c.dims[k], c.dims[k + 1])
            name = f"boundary {k + 1} -> {k}"
        else:
            want = (c.dims[k + 1], c.dims[k])
            name = f"coboundary {k} -> {k + 1}"
        if m.shape != want:
            out.append(Violation(k, "shape", f"{name} has shape {m.shape}, expected {want}"))
    if any(v.kind == "shape" for v in out):
        return ValidationReport(tuple(out))
    for n, spec in enumerate(c.norms):
        if spec.dim != c.dims[n]:
            out.append(Violation(n, "norm", f"norm has {spec.dim} weights, degree has {c.dims[n]}"))
        for msg in spec.validate():
            out.append(Violation(n, "norm", msg))
    if c.labels is not None:
        for n, lab in enumerate(c.labels):
            if len(lab) != c.dims[n]:
                out.append(Violation(n, "labels", "label count mismatch"))
    for k in range(len(c.maps) - 1):
        prod = c.maps[k] @ c.maps[k + 1] if c.orientation == HOMOLOGICAL \
            else c.maps[k + 1] @ c.maps[k]
        if not prod.is_zero():
            i = j = None
            for jj, col in enumerate(prod.cols):
                if col:
                    ii = min(col)
                    i, j, bad = ii, jj, col[ii]
                    break
            deg = k + 2 if c.orientation == HOMOLOGICAL else k
            out.append(Violation(
                deg, "exactness",
                f"composite of differentials out of degree {deg} is nonzero at "
                f"entry ({i},{j}) = {rat_str(bad)}"))
    return ValidationReport(tuple(out))


def dual(c: NormedComplex) -> NormedComplex:
    """The dual complex: transposed differentials, dual norms, flipped orientation.

    Applying dual twice returns the original complex on the nose.
    """
    flipped = COHOMOLOGICAL if c.orientation == HOMOLOGICAL else HOMOLOGICAL
    return NormedComplex(
        orientation=flipped,
        dims=c.dims,
        maps=tuple(m.transpose() for m in c.maps),
        norms=tuple(s.dual() for s in c.norms),
        labels=c.labels,
    )


def suspension(c: NormedComplex) -> NormedComplex:
    """Shift degrees up by one and negate all differentials.

    Degree 0 of the result is the zero space; for cochain complexes this
    truncates the would-be degree -1 term, see the mapping cone module
    for the shift that keeps it.
    """
    dims = (0,) + c.dims
    norms = (NormSpec(c.norms[0].kind if c.norms else L1, ()),) + c.norms
    if c.orientation == HOMOLOGICAL:
        # new boundary 1 -> 0 is the zero map onto the zero space
        maps = (Matrix.zeros(0, c.dims[0]),) + tuple(-m for m in c.maps)
    else:
        maps = (Matrix.zeros(c.dims[0], 0),) + tuple(-m for m in c.maps)
    labels = ((),) + c.labels if c.labels is not None else None
    return NormedComplex(c.orientation, dims, maps, norms, labels)


def completion(c: NormedComplex) -> NormedComplex:
    """Identity: finite-dimensional normed spaces are already complete."""
    return c


def operator_norm_matrix(f: Matrix, source: NormSpec, target: NormSpec) -> Fraction:
    """Exact operator norm of a matrix between weighted l1 spaces.

    For weighted l1 norms the operator norm is attained on a basis vector:
    max over columns j of sum_i target_w[i]*|F_ij| / source_w[j].
    Norms other than l1 -> l1 are out of scope here and rejected.
    """
    if source.kind != L1 or target.kind != L1:
        raise ValueError("operator norms are computed for weighted l1 spaces only")
    if f.ncols != source.dim or f.nrows != target.dim:
        raise ValueError("matrix/norm shape mismatch")
    best = ZERO
    for j, col in enumerate(f.cols):
        total = sum((target.weights[i] * abs(v) for i, v in col.items()), ZERO)
        best = max(best, total / source.weights[j])
    return best


@dataclass(frozen=True)
class ChainMap:
    """A degreewise map commuting with the differentials.

    mats[n] has shape target.dims[n] x source.dims[n]; degrees beyond a
    complex's top are zero spaces, so maps between complexes of different
    lengths pad with empty matrices.
    """
    source: NormedComplex
    target: NormedComplex
    mats: tuple[Matrix, ...]

    @property
    def top_degree(self) -> int:
        return len(self.mats) - 1

    def at(self, n: int) -> Matrix:
        if 0 <= n < len(self.mats):
            return self.mats[n]
        return Matrix.zeros(self.target.dim(n), self.source.dim(n))

    def validate(self) -> list[str]:
        problems = []
        if self.source.orientation != self.target.orientation:
            problems.append("source and target orientation differ")
            return problems
        want = max(self.source.top_degree, self.target.top_degree) + 1
        if len(self.mats) != want:
            problems.append(f"expected {want} degree matrices, found {len(self.mats)}")
            return problems
        for n, m in enumerate(self.mats):
            if m.shape != (self.target.dim(n), self.source.dim(n)):
                problems.append(f"degree {n}: shape {m.shape}, expected "
                                f"{(self.target.dim(n), self.source.dim(n))}")
        if problems:
            return problems
        top = len(self.mats) - 1
        if self.source.orientation == HOMOLOGICAL:
            for n in range(1, top + 1):
                lhs = self.at(n - 1) @ self.source.boundary(n)
                rhs = self.target.boundary(n) @ self.at(n)
                if lhs != rhs:
                    problems.append(f"does not commute with boundaries at degree {n}")
        else:
            for n in range(0, top):
                lhs = self.at(n + 1) @ self.source.coboundary(n)
                rhs = self.target.coboundary(n) @ self.at(n)
                if lhs != rhs:
                    problems.append(f"does not commute with coboundaries at degree {n}")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()


def chain_map(source: NormedComplex, target: NormedComplex,
              mats: list[Matrix] | tuple[Matrix, ...], check: bool = True) -> ChainMap:
    f = ChainMap(source, target, tuple(mats))
    if check:
        problems = f.validate()
        if problems:
            raise ValueError("invalid chain map: " + "; ".join(problems))
    return f


def identity_map(c: NormedComplex) -> ChainMap:
    return ChainMap(c, c, tuple(Matrix.identity(d) for d in c.dims))


def zero_map(source: NormedComplex, target: NormedComplex) -> ChainMap:
    top = max(source.top_degree, target.top_degree)
    return ChainMap(source, target,
                    tuple(Matrix.zeros(target.dim(n), source.dim(n)) for n in range(top + 1)))


def negate(f: ChainMap) -> ChainMap:
    return ChainMap(f.source, f.target, tuple(-m for m in f.mats))


def scale_map(f: ChainMap, s: Fraction) -> ChainMap:
    return ChainMap(f.source, f.target, tuple(m.scale(s) for m in f.mats))


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """g after f; the middle complexes must be the same object up to equality."""
    if f.target != g.source:
        raise ValueError("compose: inner complexes differ")
    top = max(len(f.mats), len(g.mats)) - 1
    return ChainMap(f.source, g.target,
                    tuple(g.at(n) @ f.at(n) for n in range(top + 1)))


def dual_map(f: ChainMap) -> ChainMap:
    """The dual chain map f' : target' -> source', degreewise transpose."""
    return ChainMap(dual(f.target), dual(f.source),
                    tuple(m.transpose() for m in f.mats))


def operator_norm(f: ChainMap, n: int) -> Fraction:
    if not (0 <= n <= max(f.source.top_degree, f.target.top_degree)):
        raise ValueError(f"degree {n} out of range")
    return operator_norm_matrix(f.at(n), f.source.norm_at(n), f.target.norm_at(n))
