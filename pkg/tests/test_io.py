"""File round trips and named parse failures."""
import json
import random

import pytest

import chainlab.io as cio
from chainlab.io import ParseError
from chainlab.randgen import random_complex, random_self_map
from chainlab.simplicial import SimplicialComplex

from conftest import corpus_path


def test_complex_round_trip(tmp_path):
    rng = random.Random(5)
    for i in range(10):
        c = random_complex(rng)
        p = str(tmp_path / f"c{i}.json")
        cio.save_complex(p, c)
        assert cio.load_complex(p) == c


def test_corpus_complexes_round_trip(tmp_path, corpus_complexes):
    for name, c in corpus_complexes.items():
        p = str(tmp_path / name)
        cio.save_complex(p, c)
        assert cio.load_complex(p) == c


def test_chain_map_round_trip(tmp_path):
    rng = random.Random(6)
    c = random_complex(rng, orientation="homological")
    f = random_self_map(rng, c)
    cio.save_complex(str(tmp_path / "c.json"), c)
    cio.save_chain_map(str(tmp_path / "f.json"), f, "c.json", "c.json")
    loaded = cio.load_chain_map(str(tmp_path / "f.json"))
    assert loaded.source == c and loaded.mats == f.mats


def test_chain_map_empty_rows_mean_zeros(tmp_path, corpus_maps):
    f = corpus_maps["collapse_circle.json"]
    assert any(m.is_zero() for m in f.mats)


def test_group_and_module_round_trip(tmp_path, corpus_groups, corpus_modules):
    for name, g in corpus_groups.items():
        p = str(tmp_path / name)
        cio.save_group(p, g)
        assert cio.load_group(p).table == g.table
    z2 = corpus_groups["z2.json"]
    v = corpus_modules["swap_z2.json"]
    p = str(tmp_path / "swap.json")
    cio.save_module(p, v)
    assert cio.load_module(p, z2) == v


def test_simplicial_round_trip(tmp_path, corpus_triangulations, corpus_groups):
    k = corpus_triangulations["icosahedron.json"]
    g = corpus_groups["z2.json"]
    action = cio.load_vertex_action(corpus_path("icosahedron.json"), g)
    p = str(tmp_path / "ico.json")
    cio.save_simplicial(p, k, action=action)
    again = cio.load_simplicial(p)
    assert again.simplices == k.simplices
    assert cio.load_vertex_action(p, g) == action


def test_cycle_round_trip(tmp_path):
    p = str(tmp_path / "z.json")
    cio.save_cycle(p, 2, ["1", "-1/2", 0])
    degree, coeffs = cio.load_cycle(p)
    assert degree == 2
    assert [str(x) for x in coeffs] == ["1", "-1/2", "0"]


def _corrupt(tmp_path, name, mutate):
    src = json.load(open(corpus_path(name)))
    mutate(src)
    p = str(tmp_path / name)
    with open(p, "w") as fh:
        json.dump(src, fh)
    return p


def test_parse_errors_name_path_and_field(tmp_path):
    missing = str(tmp_path / "nope.json")
    with pytest.raises(ParseError, match="cannot read"):
        cio.load_complex(missing)

    garbled = str(tmp_path / "bad.json")
    with open(garbled, "w") as fh:
        fh.write("{not json")
    with pytest.raises(ParseError, match="invalid JSON at line 1"):
        cio.load_complex(garbled)

    p = _corrupt(tmp_path, "circle3.json", lambda d: d.pop("norms"))
    with pytest.raises(ParseError, match="missing field 'norms'"):
        cio.load_complex(p)

    p = _corrupt(tmp_path, "circle3.json",
                 lambda d: d.__setitem__("top_degree", 7))
    with pytest.raises(ParseError, match="top_degree disagrees"):
        cio.load_complex(p)

    def bad_weight(d):
        d["norms"][1]["weights"][0] = "-2"
    p = _corrupt(tmp_path, "circle3.json", bad_weight)
    with pytest.raises(ParseError, match="non-positive weight"):
        cio.load_complex(p)

    def ragged(d):
        d["boundaries"][0][0] = ["1"]
    p = _corrupt(tmp_path, "circle3.json", ragged)
    with pytest.raises(ParseError, match="boundaries\\[0\\]"):
        cio.load_complex(p)

    for exc in (pytest.raises(ParseError, match="bad rational '0.5'"),):
        def float_string(d):
            d["boundaries"][0][0][0] = "0.5"
        p = _corrupt(tmp_path, "circle3.json", float_string)
        with exc:
            cio.load_complex(p)


def test_parse_error_names_broken_exactness(tmp_path):
    def break_d2(d):
        d["boundaries"][1][0][0] = "7"
    p = _corrupt(tmp_path, "boundary_tetra.json", break_d2)
    # shape-valid but d.d != 0: load succeeds, validation is a separate step
    c = cio.load_complex(p)
    from chainlab.complexes import validate
    assert not validate(c).ok


def test_corrupt_corpus_file_parses_but_fails_validation():
    # the corruption is mathematical (d.d != 0), not syntactic
    c = cio.load_complex(corpus_path("corrupt.json"))
    from chainlab.complexes import validate
    report = validate(c)
    assert not report.ok
    assert any("exactness" == v.kind for v in report.violations)


def test_map_shape_mismatch_named(tmp_path, corpus_complexes):
    cio.save_complex(str(tmp_path / "c.json"),
                     corpus_complexes["circle3.json"])
    spec = {"source": "c.json", "target": "c.json",
            "mats": [[["1", "0", "0"], ["0", "1", "0"]],
                     [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]]}
    p = str(tmp_path / "f.json")
    with open(p, "w") as fh:
        json.dump(spec, fh)
    with pytest.raises(ParseError, match="mats\\[0\\] has shape"):
        cio.load_chain_map(p)


def test_module_loader_reports_action_defects(tmp_path, corpus_groups):
    z2 = corpus_groups["z2.json"]
    spec = {"dim": 1, "weights": ["1"], "action": [[[0, 0, "1"]],
                                                   [[0, 0, "2"]]]}
    p = str(tmp_path / "m.json")
    with open(p, "w") as fh:
        json.dump(spec, fh)
    with pytest.raises(ParseError, match="preserve"):
        cio.load_module(p, z2)


def test_simplicial_loader_rejects_bad_tops(tmp_path):
    p = str(tmp_path / "k.json")
    with open(p, "w") as fh:
        json.dump({"vertices": 3, "simplices": [[0, 1, 1]]}, fh)
    with pytest.raises(ParseError, match="repeats a vertex"):
        cio.load_simplicial(p)


def test_written_files_are_stable(tmp_path, corpus_complexes):
    a = str(tmp_path / "a.json")
    b = str(tmp_path / "b.json")
    cio.save_complex(a, corpus_complexes["weighted_circle.json"])
    cio.save_complex(b, corpus_complexes["weighted_circle.json"])
    assert open(a).read() == open(b).read()
    assert open(a).read().endswith("\n")
