import json
import re

import pytest

from mcgverify.cli import main

from conftest import registry


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_rejects_small_genus(capsys):
    code, _, err = run(capsys, "verify", "--genus", "4")
    assert code == 2 and "genus must be ≥ 5" in err


def test_verify_without_seeds_for_unshipped_genus(capsys):
    code, _, err = run(capsys, "verify", "--genus", "9")
    assert code == 2 and "no shipped seeds" in err


def test_verify_bad_steps(capsys):
    code, _, err = run(capsys, "verify", "--genus", "5", "--steps", "7")
    assert code == 2


def test_verify_invalid_seed_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"genus": 5, "a0": [0] * 33, "b0": [0] * 33}))
    code, _, err = run(capsys, "verify", "--genus", "5", "--seeds", str(p))
    assert code == 2 and "seed invalid" in err


def test_verify_step1_json_and_text_agree(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--genus", "5", "--steps", "1", "--format", "json", "--out", str(tmp_path))
    report = json.loads(out)
    assert code == 0 and report["ok"] and report["falsified"] == []
    assert (tmp_path / "report_g5.json").exists()
    code2, text, _ = run(capsys, "verify", "--genus", "5", "--steps", "1")
    assert code2 == code and text.startswith("genus 5: VERIFIED")


def test_word_rotation(capsys):
    reg = registry(5)
    code, out, _ = run(capsys, "word", "--genus", "5", "r", "a0")
    assert code == 0
    assert out.splitlines()[0] == "weights: " + ",".join(map(str, reg.a(1).weights))


def test_word_q_squared_is_identity(capsys):
    reg = registry(5)
    code, out, _ = run(capsys, "word", "--genus", "5", "qq", "b3")
    assert code == 0 and ",".join(map(str, reg.b(3).weights)) in out


def test_word_parse_error(capsys):
    code, _, err = run(capsys, "word", "--genus", "5", "x", "a0")
    assert code == 2 and "position 1" in err


def test_word_unknown_curve(capsys):
    code, _, err = run(capsys, "word", "--genus", "5", "r", "zz9")
    assert code == 2 and err.startswith("error:")


def test_word_json(capsys):
    code, out, _ = run(capsys, "word", "--genus", "5", "--format", "json", "t", "b0")
    d = json.loads(out)
    assert code == 0 and d["character"] == -1 and d["weights"] == list(registry(5).b(0).weights)


def test_curve_pairs(capsys):
    code, out, _ = run(capsys, "curve", "--genus", "5", "b0", "a4")
    assert code == 0 and "intersection bracket: (1,1)" in out
    assert re.search(r"algebraic intersection: -?1$", out, re.M)
    _, out, _ = run(capsys, "curve", "--genus", "5", "b0", "b4")
    assert "b0 and b4: disjoint" in out
    _, out, _ = run(capsys, "curve", "--genus", "5", "a0", "a0")
    assert "disjoint" in out and "algebraic intersection: 0" in out


def test_curve_literal(capsys):
    w = ",".join(map(str, registry(5).a(3).weights))
    code, out, _ = run(capsys, "curve", "--genus", "5", "--format", "json", w)
    assert code == 0 and json.loads(out)["essential"] is True
    code, _, err = run(capsys, "curve", "--genus", "5", "1,2,3")
    assert code == 2 and "bad curve literal" in err


def test_utilities_accept_small_genus_with_seed_file(tmp_path, capsys):
    code, _, err = run(capsys, "curve", "--genus", "1", "a0")
    assert code == 2 and "genus must be ≥ 2" in err


def test_svg(tmp_path, capsys):
    code, out, _ = run(capsys, "svg", "--genus", "5", "--out", str(tmp_path), "a0", "a1")
    files = list(tmp_path.iterdir())
    assert code == 0 and len(files) == 1
    assert files[0].read_text().startswith('<?xml version="1.0"')
    code, out, _ = run(capsys, "svg", "--genus", "5", "--out", str(tmp_path / "empty"))
    assert code == 0 and out == "" and not (tmp_path / "empty").exists()
