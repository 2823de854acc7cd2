"""Homology of normed complexes and the induced seminorms.

Works uniformly for both orientations: the degree-n homology of a
complex is ker(outgoing differential) / im(incoming differential),
computed by exact Gaussian elimination with deterministic pivoting.
At finite dimension no completion is involved, so reduced and
unreduced seminorms agree by construction; the quotient seminorm of a
class is a genuine minimum computed by the LP engine.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import (NormedComplex, HOMOLOGICAL, COHOMOLOGICAL, L1, LINF,
                        ChainMap, dual)
from .linalg import (Matrix, Vector, nullspace, column_space_basis,
                     extend_independent, solve, solve_matrix, inverse, vec)
from .lp import min_weighted_l1, min_weighted_linf, linear_program, solve as lp_solve, \
    OPTIMAL, INFEASIBLE, EQ, LE, MinNormResult
from .rationals import ZERO, ONE, rat


@dataclass(frozen=True)
class HomologySpace:
    """Degree-n homology with a chosen basis of representative cycles.

    cycle_basis columns are cycles whose classes form a basis; together
    with boundary_basis they span the full kernel.  quotient_projector
    maps a cycle (as a chain vector) to its class coordinates; its

    values on non-cycles are meaningless.
    """
    degree: int
    dimension: int
    cycle_basis: Matrix
    boundary_basis: Matrix
    kernel_basis: Matrix
    quotient_projector: Matrix

    def class_coordinates(self, cycle: Vector) -> Vector:
        return self.quotient_projector.apply(cycle)


@dataclass(frozen=True)
class HomologyClass:
    """A (co)homology class carried by an explicit representative."""
    parent: NormedComplex
    degree: int
    representative: tuple[Fraction, ...]


def is_cycle(c: NormedComplex, n: int, v) -> bool:
    v = vec(v)
    if len(v) != c.dim(n):
        raise ValueError("representative has wrong dimension")
    return all(x == 0 for x in c.outgoing(n).apply(v))


def homology_class(c: NormedComplex, n: int, v) -> HomologyClass:
    v = vec(v)
    if not is_cycle(c, n, v):
        raise ValueError(f"representative is not in the kernel at degree {n}")
    return HomologyClass(c, n, v)


def homology(c: NormedComplex, n: int) -> HomologySpace:
    """ker/im at degree n with explicit representative cycles."""
    if not (0 <= n <= c.top_degree):
        return HomologySpace(n, 0, Matrix.zeros(0, 0), Matrix.zeros(0, 0),
                             Matrix.zeros(0, 0), Matrix.zeros(0, 0))
    kernel = nullspace(c.outgoing(n))
    boundaries = column_space_basis(c.incoming(n))
    picked = extend_independent(boundaries, kernel)
    cycle_basis = kernel.select_columns(picked)
    dim_h = len(picked)
    # coordinates: solve [boundaries | cycle_basis | filler] x = v and read
    # off the cycle_basis block; filler completes to a basis of the chain space
    frame = Matrix.block([[boundaries, cycle_basis]])
    filler_idx = extend_independent(frame, Matrix.identity(c.dim(n)))
    full = Matrix.block([[frame, Matrix.identity(c.dim(n)).select_columns(filler_idx)]])
    inv = inverse(full)
    if inv is None:
        raise RuntimeError("internal error: chain space frame is singular")
    b = boundaries.ncols
    rows = inv.to_rows()[b:b + dim_h]
    projector = Matrix.from_rows(rows, ncols=c.dim(n))
    return HomologySpace(n, dim_h, cycle_basis, boundaries, kernel, projector)


def homology_dims(c: NormedComplex) -> list[int]:
    return [homology(c, n).dimension for n in range(c.top_degree + 1)]


def seminorm(c: NormedComplex, alpha: HomologyClass) -> MinNormResult:
    """The l1 quotient seminorm of a homology class, with minimizing chain.

    The certificate in the result is the optimal dual functional: a
    cocycle of dual norm at most 1 evaluating to the seminorm on alpha.
    """
    if c.orientation != HOMOLOGICAL:
        raise ValueError("seminorm expects a homological complex")
    spec = c.norm_at(alpha.degree)
    if spec.kind != L1:
        raise ValueError("seminorm expects weighted l1 chain norms")
    if alpha.parent != c:
        raise ValueError("class does not belong to this complex")
    return min_weighted_l1(alpha.representative, c.incoming(alpha.degree), spec.weights)


def coseminorm(c: NormedComplex, phi: HomologyClass) -> MinNormResult:
    """The linf quotient seminorm of a cohomology class."""
    if c.orientation != COHOMOLOGICAL:
        raise ValueError("coseminorm expects a cohomological complex")
    spec = c.norm_at(phi.degree)
    if spec.kind != LINF:
        raise ValueError("coseminorm expects weighted linf cochain norms")
    if phi.parent != c:
        raise ValueError("class does not belong to this complex")
    return min_weighted_linf(phi.representative, c.incoming(phi.degree), spec.weights)


def kronecker(phi: HomologyClass, alpha: HomologyClass) -> Fraction:
    """Evaluation of a cohomology class on a homology class.

    Plain coordinate pairing of representatives; cocycle/cycle validity
    makes the value independent of the chosen representatives.
    """
    if phi.degree != alpha.degree:
        raise ValueError("kronecker pairing needs matching degrees")
    if len(phi.representative) != len(alpha.representative):
        raise ValueError("representative dimensions differ")
    return sum((p * a for p, a in zip(phi.representative, alpha.representative)), ZERO)


@dataclass(frozen=True)
class DualityReport:
    degree: int
    primal_seminorm: Fraction
    dual_sup: Fraction
    certificate: HomologyClass | None
    agree: bool


def seminorm_duality(c: NormedComplex, alpha: HomologyClass) -> DualityReport:
    """Compare the seminorm of alpha with its dual description.

    The dual side computes sup { 1/|phi| : phi a dual-complex cocycle,
    <phi, alpha> = 1 } by minimizing |phi|_linf subject to the literal
    pairing constraint <phi, alpha> = 1; an infeasible program means the
    sup runs over the empty set and is 0 by convention.  Both sides are
    exact and the report asserts they agree.
    """
    if c.orientation != HOMOLOGICAL:
        raise ValueError("seminorm_duality expects a homological complex")
    n = alpha.degree
    primal = seminorm(c, alpha).value
    spec = c.norm_at(n)
    dual_weights = tuple(ONE / w for w in spec.weights)  # linf convention
    m = c.dim(n)
    cocycle_rows = c.incoming(n).transpose()  # transpose of the incoming boundary
    k = cocycle_rows.nrows
    # variables: phi (m free), t (>= 0); minimize t
    entries = []
    rhs = []
    senses = []
    for i in range(k):
        senses.append(EQ)
        rhs.append(ZERO)
    for j, col in enumerate(cocycle_rows.cols):
        for i, v in col.items():
            entries.append((i, j, v))
    row = k
    for j, v in enumerate(alpha.representative):
        if v != 0:
            entries.append((row, j, v))
    rhs.append(ONE)
    senses.append(EQ)
    row += 1
    for i in range(m):
        w = dual_weights[i]
        entries.append((row, i, w))
        entries.append((row, m, -ONE))
        rhs.append(ZERO)
        senses.append(LE)
        row += 1
        entries.append((row, i, -w))
        entries.append((row, m, -ONE))
        rhs.append(ZERO)
        senses.append(LE)
        row += 1
    lhs = Matrix.from_entries(row, m + 1, entries)
    objective = (ZERO,) * m + (ONE,)
    bounds = ((None, None),) * m + ((ZERO, None),)
    lp = linear_program(objective, lhs, rhs, senses, bounds)
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        # infeasible: no cocycle evaluates to 1 on alpha, the sup is empty
        if sol.status != INFEASIBLE:
            raise RuntimeError(f"norm-minimizing program ended {sol.status}")
        dual_sup = ZERO
        certificate = None
    else:
        value = sol.objective_value
        if value <= 0:
            raise RuntimeError("pairing-normalized cocycle with zero norm")
        dual_sup = ONE / value
        certificate = HomologyClass(dual(c), n, sol.primal[:m])
    report = DualityReport(n, primal, dual_sup, certificate, primal == dual_sup)
    if not report.agree:
        raise RuntimeError(
            f"seminorm duality failed at degree {n}: primal {primal}, dual {dual_sup}")
    return report


def vanishing_duality(c: NormedComplex) -> bool:
    """Homology vanishes in all degrees iff dual cohomology does.

    Computes both sides and insists on the biconditional; returns True
    when both vanish, False when both are nonzero.
    """
    if c.orientation != HOMOLOGICAL:
        raise ValueError("vanishing_duality expects a homological complex")
    h_vanish = all(d == 0 for d in homology_dims(c))
    ch_vanish = all(d == 0 for d in homology_dims(dual(c)))
    if h_vanish != ch_vanish:
        raise RuntimeError("duality principle violated: "
                           f"homology vanishing {h_vanish}, dual cohomology {ch_vanish}")
    return h_vanish


def evaluation_pairing(c: NormedComplex, n: int) -> tuple[Matrix, bool]:
    """Kronecker pairing matrix between dual cohomology and homology bases.

    Returns the matrix <phi_i, alpha_j> and whether it is a square
    invertible matrix, i.e. whether evaluation identifies H^n(C') with
    the dual space of H_n(C) at this finite scale.
    """
    hs = homology(c, n)
    cs = homology(dual(c), n)
    pairing = cs.cycle_basis.transpose() @ hs.cycle_basis
    ok = pairing.nrows == pairing.ncols and inverse(pairing) is not None
    return pairing, ok


def induced_matrix(f: ChainMap, n: int) -> Matrix:
    """The matrix of H_n(f) (or H^n(f)) in the chosen class coordinates."""
    hs = homology(f.source, n)
    ht = homology(f.target, n)
    mapped = f.at(n) @ hs.cycle_basis
    return ht.quotient_projector @ mapped


def homology_iso_degrees(f: ChainMap) -> list[bool]:
    """Degreewise: does f induce an isomorphism on (co)homology?"""
    top = max(f.source.top_degree, f.target.top_degree)
    out = []
    for n in range(top + 1):
        hs = homology(f.source, n)
        ht = homology(f.target, n)
        if hs.dimension != ht.dimension:
            out.append(False)
            continue
        if hs.dimension == 0:
            out.append(True)
            continue
        out.append(inverse(induced_matrix(f, n)) is not None)
    return out
