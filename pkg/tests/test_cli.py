"""Command line contract: exit codes, stable JSON, assertion reporting."""
import json
import os
import random
import shutil

import pytest

import chainlab.io as cio
from chainlab.cli import main
from chainlab.complexes import validate
from chainlab.randgen import random_complex

from conftest import CORPUS, corpus_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_validate_ok(capsys):
    code, doc, _ = run_json(capsys, "validate", corpus_path("circle3.json"))
    assert code == 0
    assert set(doc) == {"command", "inputs", "results", "assertions", "timing"}
    assert doc["timing"] is None
    assert all(a["ok"] for a in doc["assertions"])
    digest = doc["inputs"][corpus_path("circle3.json")]
    assert len(digest) == 64 and set(digest) <= set("0123456789abcdef")


def test_validate_corrupt_exits_one(capsys):
    code, doc, _ = run_json(capsys, "validate", corpus_path("corrupt.json"))
    assert code == 1
    bad = [a for a in doc["assertions"] if not a["ok"]]
    assert bad and "composite" in bad[0]["witness"]


def test_missing_file_reports_error(capsys):
    code, out, err = run(capsys, "validate", "no-such-file.json")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_unknown_command_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_exit_code_tracks_validation():
    import tempfile
    rng = random.Random(3)
    with tempfile.TemporaryDirectory() as d:
        for i in range(10):
            c = random_complex(rng)
            p = os.path.join(d, f"c{i}.json")
            cio.save_complex(p, c)
            assert main(["validate", p]) == (0 if validate(c).ok else 1)


def test_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "duality-check", corpus_path("circle3.json"),
                      "--seed", "42", "--format", "json")
    _, second, _ = run(capsys, "duality-check", corpus_path("circle3.json"),
                       "--seed", "42", "--format", "json")
    assert first == second


def test_text_format(capsys):
    code, out, _ = run(capsys, "validate", corpus_path("circle3.json"),
                       "--format", "text")
    assert code == 0
    assert "summary:" in out
    assert "wall clock" in out
    assert "[PASS]" in out


def test_approx_marking(capsys):
    code, doc, _ = run_json(capsys, "seminorm", corpus_path("circle3.json"),
                            "--class", corpus_path("cycle_circle3.json"),
                            "--approx")
    assert code == 0
    assert "not authoritative" in doc["approx_note"]
    value = doc["results"]["seminorm"]
    assert value["exact"] == "3" and value["approx"] == "3.0"
    assert all(set(entry) == {"exact", "approx"}
               for entry in doc["results"]["minimizer"])


def test_homology_command(capsys):
    code, doc, _ = run_json(capsys, "homology", corpus_path("torus7.json"))
    assert code == 0
    assert doc["results"]["dims"] == [7, 21, 14]
    assert doc["results"]["homology dimensions"] == {
        "degree 0": 1, "degree 1": 2, "degree 2": 1}
    code, doc, _ = run_json(capsys, "homology", corpus_path("torus7.json"),
                            "--degree", "1")
    assert doc["results"]["homology dimensions"] == {"degree 1": 2}


def test_seminorm_command(capsys):
    code, doc, _ = run_json(capsys, "seminorm", corpus_path("circle3.json"),
                            "--class", corpus_path("cycle_circle3.json"))
    assert code == 0
    assert doc["results"]["seminorm"] == "3"
    assert all(a["ok"] for a in doc["assertions"])


def test_seminorm_rejects_non_cycle(capsys, tmp_path):
    p = str(tmp_path / "bad.json")
    cio.save_cycle(p, 1, ["1", "0", "0"])
    code, doc, _ = run_json(capsys, "seminorm", corpus_path("circle3.json"),
                            "--class", p)
    assert code == 1
    bad = [a for a in doc["assertions"] if not a["ok"]]
    assert bad


def test_dual_command_round_trip(capsys, tmp_path):
    out_path = str(tmp_path / "dual.json")
    code, doc, _ = run_json(capsys, "dual", corpus_path("weighted_circle.json"),
                            "--out", out_path)
    assert code == 0
    d = cio.load_complex(out_path)
    assert d.orientation == "cohomological"
    assert d.norms[1].kind == "l1" or d.norms[0].kind == "linf"


def test_cone_command(capsys):
    code, doc, _ = run_json(capsys, "cone", corpus_path("collapse_circle.json"))
    assert code == 0
    assert doc["results"]["cone dims"] == [1, 3, 3]
    assert doc["results"]["cone homology dimensions"] == [0, 0, 1]
    assert doc["results"]["induces isomorphisms"] is False


def test_translate_check_scaled_map_makes_no_claim(capsys):
    code, doc, _ = run_json(capsys, "translate-check",
                            corpus_path("scale2_circle.json"))
    assert code == 0
    names = [a["name"] for a in doc["assertions"]]
    assert any("no seminorm claim" in n for n in names)
    assert "norm comparisons" in doc["results"]


def test_translate_check_exhaustive(capsys):
    code, doc, _ = run_json(capsys, "translate-check",
                            corpus_path("identity_tetra.json"))
    assert code == 0
    assert all(a["ok"] for a in doc["assertions"])


def test_translate_check_probes_file(capsys, tmp_path):
    probes = {"probes": [{"side": "chain", "degree": 2,
                          "coefficients": ["2", "-2", "2", "-2"]}]}
    p = str(tmp_path / "probes.json")
    with open(p, "w") as fh:
        json.dump(probes, fh)
    code, doc, _ = run_json(capsys, "translate-check",
                            corpus_path("identity_tetra.json"), "--probes", p)
    assert code == 0
    comparisons = doc["results"]["norm comparisons"]
    chain = {k: v for k, v in comparisons.items() if k.startswith("chain")}
    assert "8 vs 8" in chain.values()


def test_duality_check(capsys):
    code, doc, _ = run_json(capsys, "duality-check",
                            corpus_path("boundary_tetra.json"))
    assert code == 0
    assert doc["results"]["all homology vanishes"] is False
    assert all(a["ok"] for a in doc["assertions"])


def test_group_l1h(capsys):
    code, doc, _ = run_json(capsys, "group", "l1h", corpus_path("z2.json"),
                            "--top", "3")
    assert code == 0
    degrees = doc["results"]["degrees"]
    assert degrees["degree 0"]["dimension"] == 1
    assert degrees["degree 0"]["seminorms"] == ["1"]
    assert degrees["degree 1"]["dimension"] == 0
    assert degrees["degree 2"]["dimension"] == 0
    assert degrees["degree 3"]["reliable"] is False
    assert "not reliable" in degrees["degree 3"]["seminorms"]


def test_group_bch_with_coeffs(capsys):
    code, doc, _ = run_json(capsys, "group", "bch", corpus_path("z2.json"),
                            "--coeffs", corpus_path("swap_z2.json"),
                            "--top", "2")
    assert code == 0
    assert doc["results"]["coefficients"] == corpus_path("swap_z2.json")
    assert doc["results"]["degrees"]["degree 1"]["dimension"] == 0


def test_group_eta(capsys):
    code, doc, _ = run_json(capsys, "group", "eta",
                            corpus_path("icosahedron.json"),
                            corpus_path("z2.json"))
    assert code == 0
    assert doc["results"]["domain"] == [0, 1, 2, 3, 4, 5]
    code2, doc2, _ = run_json(capsys, "group", "eta",
                              corpus_path("icosahedron.json"),
                              corpus_path("z2.json"),
                              "--domain", "1,2,3,4,5,11")
    assert code2 == 0
    key = "induced on H0 of coinvariants"
    assert doc["results"][key] == [["1"]]
    assert doc2["results"][key] == doc["results"][key]


def test_simplicial_fundamental_nonorientable(capsys):
    code, doc, _ = run_json(capsys, "simplicial", "fundamental",
                            corpus_path("tri_rp2.json"))
    assert code == 1
    bad = [a for a in doc["assertions"] if not a["ok"]]
    assert bad and "orientation" in bad[0]["witness"]


def test_simplicial_sv_bound(capsys):
    code, doc, _ = run_json(capsys, "simplicial", "sv-bound",
                            corpus_path("tri_tetra.json"))
    assert code == 0
    assert doc["results"]["value"] == "4"
    assert "upper bound" in doc["results"]["note"]


def test_simplicial_prism(capsys, tmp_path):
    p = str(tmp_path / "z.json")
    cio.save_cycle(p, 1, ["1", "-1", "1"])
    code, doc, _ = run_json(capsys, "simplicial", "prism",
                            corpus_path("tri_circle.json"), "--cycle", p)
    assert code == 0
    assert doc["results"]["chain norm"] == "6"
    assert doc["results"]["norm bound"] == "6"


def test_simplicial_series(capsys):
    code, doc, _ = run_json(capsys, "simplicial", "series",
                            corpus_path("series_perturbed.json"))
    assert code == 0
    assert doc["results"]["observed ratio"] == "3/2"
    assert doc["results"]["geometric decay"] is False


def test_corpus_verify_green(capsys):
    code, doc, _ = run_json(capsys, "corpus-verify", "--dir", str(CORPUS))
    assert code == 0
    assert all(a["ok"] for a in doc["assertions"])
    assert len(doc["assertions"]) > 200


def test_corpus_verify_sections(capsys):
    code, doc, _ = run_json(capsys, "corpus-verify", "--dir", str(CORPUS),
                            "--sections", "duality,modules")
    assert code == 0
    names = " ".join(a["name"] for a in doc["assertions"])
    assert "duality" in names and "module" in names
    assert "prism" not in names


def test_corpus_verify_flags_tampering(capsys, tmp_path):
    work = tmp_path / "corpus"
    shutil.copytree(CORPUS, work)
    target = work / "torus7.json"
    doc = json.loads(target.read_text())
    doc["boundaries"][1][0][0] = "5"
    target.write_text(json.dumps(doc))
    code, report, _ = run_json(capsys, "corpus-verify", "--dir", str(work))
    assert code == 1
    bad = [a for a in report["assertions"] if not a["ok"]]
    assert len(bad) == 1
    assert "torus7" in bad[0]["name"]
