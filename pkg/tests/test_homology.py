"""Homology spaces, quotient seminorms, and the dual description."""
import random
from fractions import Fraction

import pytest

import chainlab.io as cio
from chainlab.complexes import dual, identity_map, zero_map
from chainlab.homology import (HomologyClass, coseminorm, evaluation_pairing,
                               homology, homology_class, homology_dims,
                               homology_iso_degrees, induced_matrix, is_cycle,
                               kronecker, seminorm, seminorm_duality,
                               vanishing_duality)
from chainlab.linalg import Matrix, rank, vadd, vscale
from chainlab.randgen import random_complex, random_self_map

from conftest import corpus_path
from oracles import min_l1_oracle

EXPECTED_DIMS = {
    "point.json": [1],
    "interval.json": [1, 0],
    "circle3.json": [1, 1],
    "square4.json": [1, 1],
    "boundary_tetra.json": [1, 0, 1],
    "torus7.json": [1, 2, 1],
    "rp2_chain.json": [1, 0, 0],
    "weighted_circle.json": [1, 1],
    "dual_circle.json": [1, 1],
    "acyclic2.json": [0, 0],
    "cone_pyramid.json": [1, 0, 0],
}


def test_homology_dims_frozen(corpus_complexes):
    for name, c in corpus_complexes.items():
        assert homology_dims(c) == EXPECTED_DIMS[name], name


def test_homology_space_structure(corpus_complexes):
    for name, c in corpus_complexes.items():
        for n in range(c.top_degree + 1):
            h = homology(c, n)
            assert h.degree == n
            for j in range(h.cycle_basis.ncols):
                assert is_cycle(c, n, h.cycle_basis.column(j))
            # boundary columns really are boundaries and the two blocks
            # together span the kernel
            assert rank(h.boundary_basis) == rank(c.incoming(n))
            kernel = Matrix.block([[h.cycle_basis, h.boundary_basis]])
            assert rank(kernel) == rank(h.kernel_basis) == kernel.ncols
            proj = h.quotient_projector
            assert proj @ h.cycle_basis == Matrix.identity(h.dimension)
            assert (proj @ h.boundary_basis).is_zero()


def test_class_rejections(corpus_complexes):
    c = corpus_complexes["circle3.json"]
    with pytest.raises(ValueError, match="not in the kernel"):
        homology_class(c, 1, (1, 0, 0))  # single edge has nonzero boundary
    with pytest.raises(ValueError, match="dimension"):
        is_cycle(c, 1, (1, 0))


def test_seminorm_frozen_values(corpus_complexes):
    c = corpus_complexes["circle3.json"]
    a = homology_class(c, 1, homology(c, 1).cycle_basis.column(0))
    r = seminorm(c, a)
    assert r.value == 3
    assert sorted(abs(x) for x in r.witness) == [1, 1, 1]

    w = corpus_complexes["weighted_circle.json"]
    aw = homology_class(w, 1, homology(w, 1).cycle_basis.column(0))
    assert seminorm(w, aw).value == 9  # weights 2 + 3 + 4, nothing to subtract

    t = corpus_complexes["boundary_tetra.json"]
    at = homology_class(t, 2, homology(t, 2).cycle_basis.column(0))
    assert seminorm(t, at).value == 4

    p = corpus_complexes["point.json"]
    assert seminorm(p, homology_class(p, 0, (1,))).value == 1


def test_seminorm_zero_on_boundaries(corpus_complexes):
    cp = corpus_complexes["cone_pyramid.json"]
    b = cp.maps[1].column(0)
    assert seminorm(cp, homology_class(cp, 1, b)).value == 0


def test_seminorm_matches_subset_oracle():
    rng = random.Random(21)
    checked = 0
    while checked < 15:
        c = random_complex(rng, max_top=3, max_dim=4)
        if c.orientation != "homological":
            continue
        for n in range(c.top_degree + 1):
            h = homology(c, n)
            if h.dimension == 0 or c.dim(n) == 0:
                continue
            a = homology_class(c, n, h.cycle_basis.column(0))
            got = seminorm(c, a).value
            want = min_l1_oracle(a.representative,
                                 c.incoming(n).to_rows(),
                                 c.norm_at(n).weights)
            assert got == want
            checked += 1


def test_seminorm_certificate_is_dual_cocycle(corpus_complexes):
    c = corpus_complexes["torus7.json"]
    h = homology(c, 1)
    for j in range(h.dimension):
        a = homology_class(c, 1, h.cycle_basis.column(j))
        r = seminorm(c, a)
        assert is_cycle(dual(c), 1, r.certificate)
        assert dual(c).norm_at(1).norm(r.certificate) <= 1


def test_seminorm_orientation_and_kind_guards(corpus_complexes):
    c = corpus_complexes["circle3.json"]
    d = corpus_complexes["dual_circle.json"]
    a = homology_class(c, 1, homology(c, 1).cycle_basis.column(0))
    phi = homology_class(d, 1, homology(d, 1).cycle_basis.column(0))
    with pytest.raises(ValueError, match="homological"):
        seminorm(d, phi)
    with pytest.raises(ValueError, match="cohomological"):
        coseminorm(c, a)
    with pytest.raises(ValueError, match="belong"):
        seminorm(corpus_complexes["square4.json"], a)


def test_coseminorm_frozen(corpus_complexes):
    d = corpus_complexes["dual_circle.json"]
    phi = homology_class(d, 1, homology(d, 1).cycle_basis.column(0))
    assert coseminorm(d, phi).value == Fraction(1, 3)


def test_kronecker_pairing(corpus_complexes):
    c = corpus_complexes["boundary_tetra.json"]
    dc = dual(c)
    a = homology_class(c, 2, homology(c, 2).cycle_basis.column(0))
    phi = homology_class(dc, 2, homology(dc, 2).cycle_basis.column(0))
    v = kronecker(phi, a)
    assert v != 0

    # bilinear in both slots
    two_a = HomologyClass(c, 2, vscale(Fraction(2), a.representative))
    assert kronecker(phi, two_a) == 2 * v

    # invariant when the cycle moves by a boundary
    moved = HomologyClass(c, 2, vadd(a.representative, c.incoming(2).column(0))) \
        if c.incoming(2).ncols else a
    assert kronecker(phi, moved) == v

    b = homology_class(c, 0, homology(c, 0).cycle_basis.column(0))
    with pytest.raises(ValueError, match="degree"):
        kronecker(phi, b)


def test_seminorm_duality_frozen(corpus_complexes):
    c = corpus_complexes["boundary_tetra.json"]
    a = homology_class(c, 2, homology(c, 2).cycle_basis.column(0))
    rep = seminorm_duality(c, a)
    assert rep.agree and rep.primal_seminorm == rep.dual_sup == 4
    cert = rep.certificate
    assert cert is not None and cert.parent == dual(c)
    assert sorted(str(x) for x in cert.representative) == ["-1/4", "-1/4", "1/4", "1/4"]
    assert kronecker(cert, a) == 1
    assert dual(c).norm_at(2).norm(cert.representative) == Fraction(1, 4)


def test_seminorm_duality_zero_class(corpus_complexes):
    c = corpus_complexes["boundary_tetra.json"]
    z = homology_class(c, 1, (0,) * 6)
    rep = seminorm_duality(c, z)
    assert rep.agree and rep.primal_seminorm == rep.dual_sup == 0
    assert rep.certificate is None


def test_seminorm_duality_sweep(corpus_complexes):
    for name, c in corpus_complexes.items():
        if c.orientation != "homological":
            continue
        for n in range(c.top_degree + 1):
            h = homology(c, n)
            for j in range(h.dimension):
                a = homology_class(c, n, h.cycle_basis.column(j))
                rep = seminorm_duality(c, a)
                assert rep.agree, (name, n, j)
                if rep.primal_seminorm != 0:
                    cert = rep.certificate
                    norm = dual(c).norm_at(n).norm(cert.representative)
                    assert norm * rep.primal_seminorm == 1


def test_vanishing_duality(corpus_complexes):
    assert vanishing_duality(corpus_complexes["acyclic2.json"]) is True
    assert vanishing_duality(corpus_complexes["boundary_tetra.json"]) is False
    assert vanishing_duality(corpus_complexes["torus7.json"]) is False


def test_evaluation_pairing(corpus_complexes):
    c = corpus_complexes["boundary_tetra.json"]
    for n in range(3):
        pairing, ok = evaluation_pairing(c, n)
        assert ok
        assert pairing.shape in {(0, 0), (1, 1)}
    m, ok = evaluation_pairing(corpus_complexes["torus7.json"], 1)
    assert ok and m.shape == (2, 2)


def test_induced_matrix_functorial():
    rng = random.Random(31)
    for _ in range(12):
        c = random_complex(rng, orientation="homological")
        f = random_self_map(rng, c)
        g = random_self_map(rng, c)
        from chainlab.complexes import compose
        gf = compose(g, f)
        for n in range(c.top_degree + 1):
            assert induced_matrix(gf, n) == induced_matrix(g, n) @ induced_matrix(f, n)
        i = identity_map(c)
        for n in range(c.top_degree + 1):
            assert induced_matrix(i, n) == Matrix.identity(homology(c, n).dimension)


def test_homology_iso_degrees_frozen(corpus_maps):
    expected = {
        "identity_tetra.json": [True, True, True],
        "scale2_circle.json": [True, True],
        "double_square.json": [True, True],
        "neg_square.json": [True, True],
        "collapse_circle.json": [True, False],
        "point_into_interval.json": [True, True],
        "square_to_circle.json": [True, True],
        "perturbed_cone.json": [True, True, True],
    }
    for name, f in corpus_maps.items():
        assert homology_iso_degrees(f) == expected[name], name


def test_zero_map_not_iso_where_homology_lives(corpus_complexes):
    c = corpus_complexes["circle3.json"]
    assert homology_iso_degrees(zero_map(c, c)) == [False, False]
