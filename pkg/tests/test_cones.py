"""Mapping cones, the dual-cone identification, and seminorm translation."""
import random
from fractions import Fraction

import pytest

from chainlab.complexes import (COHOMOLOGICAL, HOMOLOGICAL, dual, dual_map,
                                identity_map, negate, validate)
from chainlab.cones import (cocone, cone, cone_dual_iso, cone_rank_identity,
                            iso_via_cone, shifted_cocone, translation_check)
from chainlab.homology import homology, homology_class, homology_dims
from chainlab.linalg import Matrix, vscale
from chainlab.randgen import random_chain_map, random_self_map, random_complex

CONE_DIMS = {
    "identity_tetra.json": (4, 10, 10, 4),
    "scale2_circle.json": (3, 6, 3),
    "double_square.json": (4, 8, 4),
    "neg_square.json": (4, 8, 4),
    "collapse_circle.json": (1, 3, 3),
    "point_into_interval.json": (2, 2),
    "square_to_circle.json": (3, 7, 4),
    "perturbed_cone.json": (5, 13, 12, 4),
}

ISO = {
    "identity_tetra.json": True,
    "scale2_circle.json": True,
    "double_square.json": True,
    "neg_square.json": True,
    "collapse_circle.json": False,
    "point_into_interval.json": True,
    "square_to_circle.json": True,
    "perturbed_cone.json": True,
}


def test_cone_dims_and_acyclicity(corpus_maps):
    for name, f in corpus_maps.items():
        k = cone(f)
        assert k.complex.dims == CONE_DIMS[name], name
        assert validate(k.complex).ok
        acyclic = all(d == 0 for d in homology_dims(k.complex))
        assert acyclic == ISO[name], name


def test_cone_block_structure(corpus_maps):
    f = corpus_maps["square_to_circle.json"]
    k = cone(f)
    C, D = f.source, f.target
    assert k.blocks == tuple((C.dim(n - 1), D.dim(n))
                             for n in range(k.complex.top_degree + 1))
    for n in range(k.complex.top_degree + 1):
        w = k.complex.norm_at(n).weights
        assert w == C.norm_at(n - 1).weights + D.norm_at(n).weights
    # differential: -d_C on the shifted block, f feeding into d_D
    d1 = k.complex.maps[0]
    expected = Matrix.block([
        [Matrix.zeros(0, C.dim(0) + D.dim(1))],
        [Matrix.block([[f.at(0), D.boundary(1)]])],
    ])
    assert d1 == expected


def test_cone_orientation_guards(corpus_maps):
    f = corpus_maps["identity_tetra.json"]
    fd = dual_map(f)
    with pytest.raises(ValueError, match="cone expects"):
        cone(fd)
    with pytest.raises(ValueError, match="cocone expects"):
        cocone(f)
    with pytest.raises(ValueError, match="shifted_cocone expects"):
        shifted_cocone(f)


def test_shifted_cocone_keeps_bottom(corpus_maps):
    f = corpus_maps["scale2_circle.json"]
    g = dual_map(f)
    A, B = g.source, g.target
    s = shifted_cocone(g)
    assert s.complex.dims == tuple(A.dim(n) + B.dim(n - 1)
                                   for n in range(s.complex.top_degree + 1))
    assert s.blocks[0] == (A.dim(0), 0)
    assert validate(s.complex).ok

    plain = cocone(g)
    assert plain.complex.dims == tuple(A.dim(n + 1) + B.dim(n)
                                       for n in range(plain.complex.top_degree + 1))


def test_iso_via_cone_frozen(corpus_maps):
    for name, f in corpus_maps.items():
        assert iso_via_cone(f) == ISO[name], name
        # the dual map must land on the same side of the dichotomy
        assert iso_via_cone(dual_map(f)) == ISO[name], name


def test_cone_rank_identity_corpus(corpus_maps):
    for name, f in corpus_maps.items():
        triples = cone_rank_identity(f)
        for degree, lhs, rhs in triples:
            assert lhs == rhs, (name, degree)
    # the one non-iso map concentrates cone homology in degree 2
    collapse = dict((d, l) for d, l, _ in
                    cone_rank_identity(corpus_maps["collapse_circle.json"]))
    assert collapse == {0: 0, 1: 0, 2: 1}


def test_cone_rank_identity_random():
    rng = random.Random(17)
    for _ in range(30):
        f = random_chain_map(rng, orientation=HOMOLOGICAL)
        for _, lhs, rhs in cone_rank_identity(f):
            assert lhs == rhs


def test_cone_dual_iso(corpus_maps):
    for name, f in corpus_maps.items():
        iso, ok = cone_dual_iso(f)
        assert ok, name
        assert iso.source == dual(cone(f).complex)
        assert not iso.validate()
        for m in iso.mats:
            assert m.nnz() == m.ncols  # a permutation matrix in each degree


def test_cone_dual_iso_random():
    rng = random.Random(23)
    for _ in range(25):
        f = random_chain_map(rng, orientation=HOMOLOGICAL)
        _, ok = cone_dual_iso(f)
        assert ok


def test_translation_identity_is_isometric(corpus_maps):
    rep = translation_check(corpus_maps["identity_tetra.json"])
    assert rep.homology_iso and rep.dual_cohomology_iso
    assert rep.isometric_hypothesis is True
    assert rep.seminorms_preserved is True
    assert len(rep.checks) == 4 and all(k.ok for k in rep.checks)


def test_translation_scaling_fails_hypothesis(corpus_maps):
    for name in ("scale2_circle.json", "double_square.json"):
        rep = translation_check(corpus_maps[name])
        assert rep.homology_iso and rep.dual_cohomology_iso
        assert rep.isometric_hypothesis is False
        assert rep.seminorms_preserved is None, "no claim without the hypothesis"
        assert all(k.side == "cochain" for k in rep.checks)
    rep = translation_check(corpus_maps["scale2_circle.json"])
    moved = {(k.degree, str(k.before), str(k.after)) for k in rep.checks}
    assert moved == {(0, "1", "2"), (1, "1/3", "2/3")}


def test_translation_no_iso_no_scope(corpus_maps):
    rep = translation_check(corpus_maps["collapse_circle.json"])
    assert not rep.homology_iso and not rep.dual_cohomology_iso
    assert rep.probe_scope == "not applicable: no isomorphism on homology"
    assert rep.isometric_hypothesis is None
    assert rep.checks == ()


def test_translation_supplied_probes(corpus_maps):
    f = corpus_maps["identity_tetra.json"]
    c = f.source
    h2 = homology(c, 2)
    chain_probe = homology_class(c, 2, vscale(Fraction(2), h2.cycle_basis.column(0)))
    dp = dual(f.target)
    hp = homology(dp, 2)
    cochain_probe = homology_class(dp, 2, vscale(Fraction(3), hp.cycle_basis.column(0)))

    rep = translation_check(f, probes=(chain_probe, cochain_probe))
    assert rep.chain_probes == 1 and rep.cochain_probes == 1
    seen = {(k.side, k.degree, str(k.before)) for k in rep.checks}
    assert ("chain", 2, "8") in seen          # doubled fundamental class
    assert ("cochain", 2, "3/4") in seen      # tripled dual class
    assert all(k.ok for k in rep.checks)

    stranger = homology_class(corpus_maps["scale2_circle.json"].source, 1,
                              homology(corpus_maps["scale2_circle.json"].source,
                                       1).cycle_basis.column(0))
    with pytest.raises(ValueError, match="probes must live"):
        translation_check(f, probes=(stranger,))


def test_translation_exhaustive(corpus_maps):
    f = corpus_maps["scale2_circle.json"]
    rep = translation_check(f, exhaustive=True)
    assert rep.exhaustive and rep.isometric_hypothesis is False
    assert rep.seminorms_preserved is None

    c = f.source
    good = translation_check(identity_map(c), exhaustive=True)
    assert good.isometric_hypothesis is True
    assert good.seminorms_preserved is True
    assert good.probe_scope == "unit-ball generators in all degrees (exhaustive)"

    big = corpus_maps["identity_tetra.json"]
    # tetra cocycle spaces are too large for vertex enumeration
    from chainlab.io import load_complex
    from conftest import corpus_path
    torus = load_complex(corpus_path("torus7.json"))
    with pytest.raises(ValueError, match="dimension <= 3"):
        translation_check(identity_map(torus), exhaustive=True)


def test_translation_rejects_cochain_side(corpus_maps):
    with pytest.raises(ValueError, match="homological"):
        translation_check(dual_map(corpus_maps["identity_tetra.json"]))


def test_translation_random_sweep():
    rng = random.Random(41)
    for _ in range(40):
        c = random_complex(rng, orientation=HOMOLOGICAL)
        f = random_self_map(rng, c)
        rep = translation_check(f)
        assert rep.homology_iso == rep.dual_cohomology_iso
        if not rep.homology_iso:
            assert rep.isometric_hypothesis is None
        elif rep.isometric_hypothesis:
            assert rep.seminorms_preserved is True
