import json
from fractions import Fraction

import pytest

from coinvariants import main as cli_main
from coinvariants.cli.query import parse_frame, parse_insertion, resolve_label
from coinvariants.config import loader
from coinvariants.errors import QueryError
from coinvariants.main import EXIT_DOMAIN, EXIT_INVALID, EXIT_OK, EXIT_VERIFY_FAILED, run
from coinvariants.registry import cyclic_group, save_pointed, save_spec, virasoro


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# query parsing
# ---------------------------------------------------------------------------

def test_insertion_expressions(yang_lee):
    assert parse_insertion(yang_lee, "Wmin^4,V^2").points == (0, 0, 1, 1, 1, 1)
    assert parse_insertion(yang_lee, "[W1_2,V,Wmin]").points == (1, 0, 1)
    assert parse_insertion(yang_lee, "").points == ()
    assert parse_insertion(yang_lee, "Wmax").points == (0,)


@pytest.mark.parametrize("expr", ["W^x", "Nope^2", "[Wmin", "Wmin^-1"])
def test_bad_insertion_expressions(yang_lee, expr):
    with pytest.raises(QueryError):
        parse_insertion(yang_lee, expr)


def test_frames_and_labels(yang_lee):
    assert parse_frame(yang_lee, "Wmin,V") == (1, 0)
    assert parse_frame(yang_lee, None) is None
    with pytest.raises(QueryError):
        parse_frame(yang_lee, "V")
    with pytest.raises(QueryError):
        resolve_label(yang_lee, " ")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def test_rank_yang_lee(capsys):
    code, out, _ = _run(capsys, "rank", "--voa", "virasoro:2,5", "--ins", "Wmin^6", "--genus", "0")
    assert code == EXIT_OK
    assert out.strip() == "5"


def test_rank_json_and_frame(capsys):
    code, out, _ = _run(capsys, "rank", "--voa", "virasoro:2,5", "--frame", "Wmin,Wmin", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["rank"] == 1
    assert doc["frame"] == ["W1_2", "W1_2"]


def test_rank_on_a_pointed_file(capsys, tmp_path):
    path = tmp_path / "z5.json"
    data = cyclic_group(5, [0, Fraction(2, 5), Fraction(3, 5), Fraction(3, 5), Fraction(2, 5)], 4)
    path.write_text(save_pointed(data), encoding="utf-8")
    code, out, _ = _run(capsys, "rank", "--voa", f"pointed:{path}", "--ins", "x^5", "--genus", "2")
    assert code == EXIT_OK
    assert out.strip() == "25"
    code, out, _ = _run(capsys, "rank", "--voa", f"pointed:{path}", "--ins", "x^4", "--genus", "2")
    assert out.strip() == "0"


def test_fa_matrix_paper_order(capsys):
    code, out, _ = _run(capsys, "fa-matrix", "--voa", "virasoro:2,5", "--ins", "Wmin", "--paper-order", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["labels"] == ["W1_2", "V"]
    assert doc["entries"] == [[1, 1], [1, 0]]


def test_fa_matrix_table(capsys):
    code, out, _ = _run(capsys, "fa-matrix", "--voa", "sl2:1", "--genus", "1")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert len(lines) == 3
    assert lines[1].split("|")[1].split() == ["2", "0"]


def test_genfunc_check(capsys):
    code, out, _ = _run(capsys, "genfunc", "--voa", "virasoro:2,7", "--step", "Wmin", "--coeffs", "8", "--check")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "f(z) = (1 + z - z^2)/(1 - 2*z - z^2 + z^3)"
    assert "check: agrees" in out


def test_genfunc_json(capsys):
    code, out, _ = _run(capsys, "genfunc", "--voa", "virasoro:2,5", "--step", "Wmin", "--coeffs", "5", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["series"] == [1, 2, 3, 5, 8]
    assert doc["num"] == [1, 1]
    assert doc["den"] == [1, -1, -1]


def test_genfunc_output_does_not_depend_on_workers(capsys, monkeypatch, tmp_path):
    outputs = []
    for workers in (1, 8):
        settings = tmp_path / f"settings{workers}.yaml"
        settings.write_text(f"cli:\n  max_workers: {workers}\n", encoding="utf-8")
        monkeypatch.setenv(loader.SETTINGS_ENV_VAR, str(settings))
        code, out, _ = _run(capsys, "genfunc", "--voa", "sl2:3", "--step", "W1", "--frame", "V,W2",
                            "--coeffs", "10", "--check", "--json")
        assert code == EXIT_OK
        outputs.append(out)
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0])["agrees"] is True


def test_divisor_command(capsys):
    code, out, _ = _run(capsys, "divisor", "--voa", "virasoro:3,4", "--ins", "[Wmax,Wmax,Wmax,Wmax]", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["class"]["lambda"] == "1/4"
    assert doc["degree_on_M04"] == "2"
    assert doc["checks"]["genus0"]["holds"] is True


def test_divisor_table_prints_negated_boundary(capsys):
    code, out, _ = _run(capsys, "divisor", "--voa", "virasoro:2,5", "--ins", "[Wmin]", "--genus", "1")
    assert code == EXIT_OK
    assert "delta_irr   1/5" in out
    assert "type1:" in out


def test_nef_command(capsys):
    code, out, _ = _run(capsys, "nef", "--voa", "lattice:A1", "--holomorphic-c", "8", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["types"]["1"] == "equivalent-fails"
    assert doc["padding_exponent"] == 1


def test_verify_passes_on_a_tensor(capsys):
    code, out, _ = _run(capsys, "verify", "--voa", "tensor:(virasoro:2,5,sl2:1)", "--max-n", "2", "--max-g", "1")
    assert code == EXIT_OK
    assert "kronecker" in out
    assert "c1-law" in out
    assert "FAIL" not in out


def test_verify_fails_on_corrupted_data(capsys, tmp_path):
    doc = json.loads(save_spec(virasoro(2, 7)))
    doc["three_point"] = [e for e in doc["three_point"] if e[:3] != [1, 2, 2]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = _run(capsys, "verify", "--voa", f"spec:{path}")
    assert code == EXIT_INVALID
    assert "commutativity" in err


def test_registry_listing(capsys):
    code, out, _ = _run(capsys, "registry", "--json")
    assert code == EXIT_OK
    assert "virasoro" in json.loads(out)["families"]
    code, out, _ = _run(capsys, "registry", "--voa", "sl2:2", "--json")
    assert json.loads(out)["central_charge"] == "3/2"
    code, out, _ = _run(capsys, "registry", "--voa", "virasoro:3,4")
    assert out.splitlines()[0] == "virasoro:3,4: 3 modules, c = 1/2"


@pytest.mark.parametrize("argv,expected", [
    (["rank", "--voa", "nope:1"], EXIT_INVALID),
    (["rank", "--voa", "virasoro:2,5", "--ins", "Nope"], EXIT_INVALID),
    (["rank", "--voa", "virasoro:2,5", "--strict-stability"], EXIT_DOMAIN),
    (["rank", "--voa", "virasoro:2,5", "--frame", "V,V", "--strict-stability"], EXIT_DOMAIN),
    (["rank", "--voa", "virasoro:2,5", "--ins", "Wmin^4", "--genus", "-1"], EXIT_INVALID),
    (["divisor", "--voa", "virasoro:2,5", "--ins", "[Wmin,Wmin]"], EXIT_DOMAIN),
    (["genfunc", "--voa", "virasoro:2,5", "--step", ""], EXIT_DOMAIN),
    (["nef", "--voa", "sl2:2"], EXIT_INVALID),
    (["nef", "--voa", "lattice:A1", "--holomorphic-c", "0.5"], EXIT_INVALID),
    (["nef", "--voa", "lattice:A1", "--holomorphic-c", "-1"], EXIT_DOMAIN),
    (["rank"], EXIT_INVALID),
    (["frobnicate"], EXIT_INVALID),
])
def test_exit_codes(capsys, argv, expected):
    code, _, _ = _run(capsys, *argv)
    assert code == expected


def test_failed_check_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli_main, "_direct_coefficients", lambda *args: [0] * args[-1])
    code, out, _ = _run(capsys, "genfunc", "--voa", "virasoro:2,5", "--step", "Wmin", "--coeffs", "3", "--check")
    assert code == EXIT_VERIFY_FAILED
    assert "check: DISAGREES" in out


def test_framed_rank_respects_strict_stability(capsys):
    code, out, _ = _run(capsys, "rank", "--voa", "virasoro:2,5", "--ins", "Wmin", "--frame", "V,V",
                        "--strict-stability")
    assert code == EXIT_OK
    assert out.strip() == "0"


def test_failing_f_curve_check_is_a_result(capsys):
    code, out, _ = _run(capsys, "divisor", "--voa", "lattice:A1", "--ins", "[V]", "--genus", "1")
    assert code == EXIT_OK
    assert "type1: FAILS" in out
