import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeskit import cli
from reeskit.session import SessionError, parse_session

CLASSIC_P3 = "field 32003\nring a b\nideal I = a^3, b^3, a*b^2\nideal J = a^3, b^3\n"


def test_parse_basic_session():
    s = parse_session(CLASSIC_P3)
    assert list(s.ideals) == ["I", "J"]
    assert s.modulus == 32003
    assert s.y_index("I") == 2


def test_kuhl_session_relations():
    text = (
        "ring U0 U1 U2 X Y\n"
        "rel U0*Y\nrel U0*X - U1*Y\nrel U1*X - U2*Y\nrel U2*X\nrel U0*X^2\n"
        "ideal I = X, Y\n"
    )
    s = parse_session(text)
    assert len(s.relations) == 5
    assert not s.ring.is_polynomial_ring()


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("ring a a", 1, 8, "duplicate variable"),
        ("ring a b\nideal I = a, c", 2, 14, "unknown variable"),
        ("ring a b\nideal I = a\nideal I = b", 3, 7, "duplicate ideal"),
        ("ring a b\nideal I = a b", 2, 13, "implicit"),
        ("ring a b\nideal I = a^", 2, 13, ""),
        ("ideal I = a", 1, 1, "before ring"),
        ("ring a\nrole I y = 1", 2, 6, "unknown ideal"),
    ],
)
def test_positioned_errors(text, line, column, fragment):
    with pytest.raises(SessionError) as info:
        parse_session(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in info.value.message


def test_canonical_round_trip_on_corpus():
    for path in cli.corpus_files():
        s = cli.load_session(path)
        again = parse_session(s.canonical())
        assert again.structure() == s.structure()
        assert again.canonical() == s.canonical()


exps = st.integers(0, 3)
monomial_text = st.builds(lambda c, e1, e2: f"{c}*a^{e1}*b^{e2}", st.integers(1, 50), exps, exps)
poly_text = st.lists(monomial_text, min_size=1, max_size=3).map(" - ".join)


@settings(max_examples=50, deadline=None)
@given(st.lists(poly_text, min_size=1, max_size=3), st.lists(poly_text, max_size=2))
def test_round_trip_property(gens, rels):
    text = "ring a b\n" + "".join(f"rel {r}\n" for r in rels) + "ideal I = " + ", ".join(gens) + "\n"
    s = parse_session(text)
    assert parse_session(s.canonical()).structure() == s.structure()


# -- commands ---------------------------------------------------------------------

def run_cli(tmp_path, text, argv):
    path = tmp_path / "s.rk"
    path.write_text(text)
    parser = cli.build_parser()
    args = parser.parse_args([argv[0], "-f", str(path), *argv[1:]])
    session = cli.load_session(str(path), args.field)
    report, code = cli.run(args.command, session, args)
    return report, code


def test_reltype_command(tmp_path):
    report, code = run_cli(tmp_path, CLASSIC_P3, ["reltype", "--ideal", "I"])
    assert code == 0
    assert report["result"] == {"relation_type": 3}
    assert report["schema"] == "reeskit.report/1"


def test_chain_command(tmp_path):
    text = "ring a b\nideal I = a^5, b^5, a*b^4\nideal J = a^5, b^5\n"
    report, _ = run_cli(tmp_path, text, ["chain", "--J", "J", "--I", "I", "--max", "6"])
    entries = [e["generators"] for e in report["result"]["entries"]]
    assert entries == [["b", "a^4"], ["b", "a^3"], ["b", "a^2"], ["b", "a"], ["1"], ["1"]]
    assert [e["n"] for e in report["result"]["entries"]] == [1, 2, 3, 4, 5, 6]


def test_member_zero(tmp_path):
    report, _ = run_cli(tmp_path, CLASSIC_P3, ["member", "--ideal", "I", "--poly", "0"])
    assert report["result"]["member"] is True


def test_assertion_failure_exit_code(tmp_path):
    text = "ring a b\nideal M = a^2, a*b, b^2\n"
    report, code = run_cli(tmp_path, text, ["thmA", "--ideal", "M", "--cap", "3"])
    assert code == 2
    assert report["error"]["type"] == "TnFailed"


def test_input_error_exit_code(tmp_path):
    report, code = run_cli(tmp_path, CLASSIC_P3, ["reltype", "--ideal", "K"])
    assert code == 1
    assert "unknown ideal" in report["error"]["message"]


def test_max_rounds_reported(tmp_path):
    text = "ring s t\nideal B = s^5, t^5, s^2*t^3\n"
    report, code = run_cli(tmp_path, text, ["detclosure", "--ideal", "B", "--rounds", "1"])
    assert code == 2
    assert report["result"]["rounds"] == 1


def test_json_is_deterministic(tmp_path, capsys):
    path = tmp_path / "s.rk"
    path.write_text(CLASSIC_P3)
    outputs = []
    for _ in range(2):
        assert cli.main(["fresh", "-f", str(path), "--ideal", "I", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        report.pop("timing")
        outputs.append(cli.dumps(report))
    assert outputs[0] == outputs[1]


def test_field_override_changes_hash(tmp_path, capsys):
    path = tmp_path / "s.rk"
    path.write_text(CLASSIC_P3)
    hashes = []
    for extra in ([], ["--field", "101"]):
        cli.main(["reltype", "-f", str(path), "--ideal", "I", "--json", *extra])
        report = json.loads(capsys.readouterr().out)
        hashes.append(report["input_hash"])
        assert report["result"]["relation_type"] == 3
    assert hashes[0] != hashes[1]


def test_text_output(tmp_path, capsys):
    path = tmp_path / "s.rk"
    path.write_text(CLASSIC_P3)
    assert cli.main(["reltype", "-f", str(path), "--ideal", "I"]) == 0
    assert "relation_type        3" in capsys.readouterr().out


def test_missing_file(capsys):
    assert cli.main(["reltype", "-f", "/nonexistent.rk", "--ideal", "I"]) == 1


@pytest.mark.parametrize("command", sorted(cli.COMMANDS))
def test_every_command_runs(tmp_path, command):
    text = "ring a b\nideal I = a^3, b^3, a*b^2\nideal J = a^3, b^3\n"
    extra = {
        "ideal": ["--ideal", "I"], "order": [], "poly": ["--poly", "a^3*b"], "vars": ["--vars", "a"],
        "J": ["--J", "J"], "I": ["--I", "I"], "max": [], "n": [], "p": ["--p", "3"],
    }
    _, opts = cli.COMMANDS[command]
    argv = [command, "--cap", "4"] + [x for o in opts for x in extra[o]]
    report, code = run_cli(tmp_path, text, argv)
    assert code == 0, report.get("error")
    assert "result" in report


def test_corpus_suite_passes():
    out = io.StringIO()
    assert cli.run_suite(None, out=out) == 0
    lines = out.getvalue().splitlines()
    assert lines[-1].endswith("expectations hold")
    assert not [l for l in lines if l.startswith("FAIL")]
