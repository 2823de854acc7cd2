"""Seeded generators: valid complexes, honest chain maps, determinism."""
import random

from chainlab.complexes import COHOMOLOGICAL, HOMOLOGICAL, validate
from chainlab.randgen import random_chain_map, random_complex, random_self_map


def test_random_complexes_are_valid():
    for seed in range(40):
        rng = random.Random(seed)
        c = random_complex(rng)
        assert validate(c).ok, seed
        assert c.top_degree <= 4
        assert all(d <= 5 for d in c.dims)


def test_both_orientations():
    rng = random.Random(1)
    seen = set()
    for _ in range(20):
        seen.add(random_complex(rng).orientation)
        seen.add(random_complex(rng, orientation=COHOMOLOGICAL).orientation)
    assert COHOMOLOGICAL in seen and HOMOLOGICAL in seen


def test_self_maps_commute_with_boundaries():
    for seed in range(30):
        rng = random.Random(seed)
        c = random_complex(rng)
        f = random_self_map(rng, c)
        assert f.validate() == [], seed


def test_random_chain_map_bundles():
    rng = random.Random(9)
    for _ in range(10):
        f = random_chain_map(rng)
        assert f.source is f.target
        assert f.validate() == []


def test_determinism():
    a = random_complex(random.Random(123))
    b = random_complex(random.Random(123))
    assert a == b
    fa = random_self_map(random.Random(7), a)
    fb = random_self_map(random.Random(7), b)
    assert fa.mats == fb.mats


def test_size_caps_respected():
    rng = random.Random(2)
    for _ in range(20):
        c = random_complex(rng, max_top=2, max_dim=3)
        assert c.top_degree <= 2
        assert all(d <= 3 for d in c.dims)
