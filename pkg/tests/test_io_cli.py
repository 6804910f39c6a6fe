import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from trilines import Configuration, ProjPoint, incidence_report
from trilines.cli import main
from trilines.errors import ParseError
from trilines.io import parse_config, report_dict, write_config

big = st.integers(-(10**30), 10**30)
configs = st.lists(st.tuples(big, big, big).filter(lambda v: v != (0, 0, 0)), min_size=3, max_size=15).map(
    lambda raw: list(dict.fromkeys(ProjPoint(*v) for v in raw))
).filter(lambda pts: len(pts) >= 3).map(lambda pts: Configuration(tuple(pts)))


@settings(max_examples=60)
@given(configs)
def test_write_then_parse_is_identity(X):
    assert parse_config(write_config(X, {"family": "test"})) == X


def test_parse_grammar():
    X = parse_config("# header\n\n  1 2\n3 4 5\n-6 0 0\n")
    assert X.points == (ProjPoint(1, 2), ProjPoint(3, 4, 5), ProjPoint(1, 0, 0))


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("0 0\n1 0\n1 x\n", 3),
        ("0 0\n1\n1 1\n", 2),
        ("0 0\n1 0 0 1\n1 1\n", 2),
        ("0 0\n1.5 0\n1 1\n", 2),
        ("0 0\n0 0 0\n1 1\n0 1\n", 2),
        ("1 1\n2 0\n# c\n2 2 2\n", 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert info.value.lineno == lineno
    assert str(info.value).startswith(f"line {lineno}:")


def test_parse_needs_three_points():
    with pytest.raises(ParseError):
        parse_config("0 0\n1 1\n")


def test_report_dict_is_exact_and_consistent():
    X = Configuration.of([(10**25, 1), (0, 0), (1, 0), (0, 1)])
    doc = json.loads(json.dumps(report_dict(incidence_report(X))))
    assert doc["points"][0]["point"] == [str(10**25), "1", "1"]
    assert [p["count"] for p in doc["points"]] == oracle.counts(X.points)
    assert doc["spanned_line_count"] == len(doc["lines"])
    assert doc["ordinary_line_count"] == sum(1 for l in doc["lines"] if l["points"] == 2)


# -- command-line behaviour, in process -----------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_text_and_json(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", str(fixtures_dir / "near_pencil.txt"))
    assert code == 0
    fields = dict(line.split("\t", 1) for line in out.splitlines()[:7])
    assert fields == {
        "n": "5", "spanned_lines": "5", "t": "4", "threshold": "3", "dirac": "yes",
        "ordinary_points": "1", "ordinary_lines": "4",
    }
    code, out, _ = run(capsys, "analyze", "--json", str(fixtures_dir / "aikn2_k4.txt"))
    doc = json.loads(out)
    assert code == 0 and doc["n"] == 17 and doc["t"] == 8 and doc["dirac"] is False


@pytest.mark.parametrize("name", ["duplicate.txt", "bad_token.txt", "zero_triple.txt", "collinear.txt", "missing.txt"])
def test_analyze_input_errors_exit_2(capsys, fixtures_dir, name):
    code, out, err = run(capsys, "analyze", str(fixtures_dir / name))
    assert code == 2 and out == ""
    assert err.startswith("error:")


def test_duplicate_names_both_lines(capsys, fixtures_dir):
    _, _, err = run(capsys, "analyze", str(fixtures_dir / "duplicate.txt"))
    assert "line 4" in err and "line 3" in err


def test_witness_reports_oracle_agreement(capsys, fixtures_dir):
    code, out, _ = run(capsys, "witness", "--json", str(fixtures_dir / "concurrent_5_4_6.txt"))
    doc = json.loads(out)
    assert code == 0
    assert doc["witness"]["count"] == doc["oracle_count"] >= doc["witness"]["threshold"]


def test_witness_without_cover_exit_2(capsys, fixtures_dir):
    code, _, err = run(capsys, "witness", str(fixtures_dir / "aikn2_k4.txt"))
    assert code == 2 and "not covered by three concurrent lines" in err


def test_witness_certificate_mismatch_exit_1(capsys, fixtures_dir, monkeypatch):
    import trilines.cli as cli
    from dataclasses import replace

    real = cli.find_ordinary_point
    monkeypatch.setattr(cli, "find_ordinary_point", lambda X, S: replace(real(X, S), count=10**6))
    code, _, err = run(capsys, "witness", str(fixtures_dir / "star_3_3_3.txt"))
    assert code == 1 and "certificate mismatch" in err


def test_generate_is_deterministic_and_validated(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["generate", "--family", "aikn2", "--k", "4", "-o", str(a)]) == 0
    assert main(["generate", "--family", "aikn2", "--k", "4", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert parse_config(a.read_text()).n == 17
    capsys.readouterr()
    code, _, err = run(capsys, "generate", "--family", "aikn1", "--k", "1")
    assert code == 2 and "k must be at least 2" in err
    code, _, _ = run(capsys, "generate", "--family", "random-concurrent", "--counts", "0,0,4")
    assert code == 2


def test_generate_header_records_provenance(capsys):
    code, out, _ = run(capsys, "generate", "--family", "random-concurrent", "--counts", "2,3,4", "--apex", "--seed", "12")
    assert code == 0
    header = dict(l[2:].split(": ", 1) for l in out.splitlines()[1:] if l.startswith("# "))
    assert header["counts"] == "2,3,4" and header["apex_included"] == "yes" and header["seed"] == "12"
    assert header["n"] == "10"


def test_verify_exit_codes(capsys, fixtures_dir):
    fig2, star = str(fixtures_dir / "aikn2_k4.txt"), str(fixtures_dir / "star_3_3_3.txt")
    assert run(capsys, "verify", "--expect", "no", fig2)[0] == 0
    assert run(capsys, "verify", "--expect", "yes", star, str(fixtures_dir / "concurrent_5_4_6.txt"))[0] == 0
    code, out, _ = run(capsys, "verify", "--expect", "yes", star, fig2)
    assert code == 1 and "MISMATCH" in out
    assert run(capsys, "verify", star, str(fixtures_dir / "duplicate.txt"))[0] == 2


def test_render_writes_svg(capsys, tmp_path, fixtures_dir):
    out = tmp_path / "fig.svg"
    assert main(["render", str(fixtures_dir / "triangle.txt"), "-o", str(out)]) == 0
    assert out.read_text().lstrip().startswith("<?xml")
    code, _, err = run(capsys, "render", str(fixtures_dir / "triangle.txt"), "-o", str(tmp_path / "no" / "x.svg"))
    assert code == 2 and "cannot write" in err
