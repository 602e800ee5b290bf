import json

import pytest

import cbord.main as cli
from cbord.homfly import _trace
from cbord.main import EXIT_BUDGET, EXIT_FAILURE, EXIT_INPUT, EXIT_OK, main


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == EXIT_OK else None)


@pytest.fixture(autouse=True)
def no_budget_override(monkeypatch):
    monkeypatch.delenv("CBORD_BUDGET", raising=False)


def test_homfly_examples(capsys):
    code, report = run_json(capsys, "homfly", "B2: 1 1 1")
    assert code == EXIT_OK
    assert report["command"] == "homfly"
    assert report["input"] == "B2: 1 1 1"
    assert report["results"]["polynomial"] == "2*v^2 + 1*v^2*z^2 - 1*v^4"
    assert report["results"]["ord_v"] == 2
    assert report["results"]["mfw_bounds"] == [2, 4]

    code, report = run_json(capsys, "homfly", "B3: 1 -2 1 -2")
    assert report["results"]["ord_v"] == -2

    code, report = run_json(capsys, "homfly", "B1:")
    assert report["results"]["polynomial"] == "1"


def test_homfly_accepts_quasipositive_words(capsys):
    code, report = run_json(capsys, "homfly", "QP2: (| 1) (| 1) (| 1)")
    assert code == EXIT_OK
    assert report["input"] == "QP2: (| 1) (| 1) (| 1)"
    assert report["results"]["ord_v"] == 2


def test_text_output(capsys):
    assert main(["homfly", "B2:  1 1 1"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "homfly: B2: 1 1 1"
    assert "  ord_v: 2" in lines
    assert "  mfw_bounds: [2, 4]" in lines


def test_signature_and_alexander(capsys):
    code, report = run_json(capsys, "signature", "B2: 1 1 1")
    assert report["results"]["signature"] == -2
    assert report["results"]["determinant"] == 3
    assert report["results"]["seifert_matrix"] == [[-1, 1], [0, -1]]

    code, report = run_json(capsys, "signature", "--tree", "(2 (-2))")
    assert report["input"] == "(2 (-2))"
    assert report["results"]["signature"] == 0
    assert report["results"]["determinant"] == -5

    code, report = run_json(capsys, "alexander", "B3: 1 -2 1 -2")
    assert report["results"]["alexander"] == "1 - 3*t^1 + 1*t^2"
    assert report["results"]["trivial"] is False

    code, report = run_json(capsys, "alexander", "B2:")
    assert report["results"]["alexander"] == "0"
    assert report["warnings"]


def test_signature_needs_exactly_one_source(capsys):
    assert main(["signature"]) == EXIT_INPUT
    assert main(["signature", "B2: 1", "--tree", "(-2)"]) == EXIT_INPUT
    assert "cbord: error" in capsys.readouterr().err


def test_obstruct_examples(capsys):
    code, report = run_json(capsys, "obstruct", "B2: -1 -1 -1", "--auto-sigma")
    assert code == EXIT_OK
    results = report["results"]
    assert results["obstructed"] is True
    assert results["signature"] == 2
    rules = {c["rule"]: c["verdict"] for c in results["certificates"]}
    assert rules["cor_3_4"] == "OBSTRUCTED"

    code, report = run_json(capsys, "obstruct", "B2: 1 1 1", "--genus-lb", "1")
    assert report["results"]["obstructed"] is False
    assert report["results"]["M"] == {"value": 1, "kind": "exact", "provenance": "user-supplied"}
    assert all(c["verdict"] == "NOT_OBSTRUCTED" for c in report["results"]["certificates"])

    code, report = run_json(capsys, "obstruct", "--tree", "(2 (-2))")
    assert report["results"]["spc_verdict"] == "no"
    assert report["results"]["certificates"][0]["rule"] == "tree_valuation"


def test_obstruct_uses_the_exact_quasipositive_genus(capsys):
    code, report = run_json(capsys, "obstruct", "QP2: (| 1) (| 1) (| 1)")
    assert report["results"]["M"]["kind"] == "exact"
    assert report["results"]["obstructed"] is False


def test_obstruct_signature_on_links_is_skipped(capsys):
    code, report = run_json(capsys, "obstruct", "B2: -1 -1", "--auto-sigma")
    assert code == EXIT_OK
    assert any("knots only" in w for w in report["warnings"])
    assert report["results"]["obstructed"] is True


def test_obstruct_flag_conflicts(capsys):
    assert main(["obstruct", "B2: 1 1 1", "--genus-lb", "1", "--auto-sigma"]) == EXIT_INPUT
    assert main(["obstruct", "--tree", "(-2)", "--auto-sigma"]) == EXIT_INPUT
    assert main(["obstruct", "B2: 1 1 1", "--genus-lb", "<=1"]) == EXIT_INPUT


def test_plumbing_examples(capsys):
    code, report = run_json(capsys, "plumbing", "(-2 (-2))")
    results = report["results"]
    assert (results["ord_v"], results["r"], results["spc_verdict"]) == (2, 1, "yes")

    code, report = run_json(capsys, "plumbing", "(2 (-2))")
    results = report["results"]
    assert (results["ord_v"], results["r"], results["spc_verdict"]) == (-2, 1, "no")
    assert results["genus_lower_bound"] == 0

    assert main(["plumbing", "(0)"]) == EXIT_INPUT
    assert "zero weight" in capsys.readouterr().err


def test_plumbing_reports_excessiveness_failures(capsys):
    code, report = run_json(capsys, "plumbing", "(-2 (-2) (-2) (-2))")
    assert code == EXIT_OK
    assert report["results"]["strongly_excessive"] is False
    assert report["results"]["ord_v"] is None
    assert report["results"]["r"] == 3
    assert report["warnings"] == ["condition b fails: vertex 0 has |n| = 1 < v - 1 = 2"]


def test_plumbing_parse_error(capsys):
    assert main(["plumbing", "(-2 (3))"]) == EXIT_INPUT
    assert "position 5" in capsys.readouterr().err


@pytest.mark.parametrize("argv, verdict", [
    (["cor26", "--MK", "0", "--p", "3", "--q", "2"], "OBSTRUCTED"),
    (["cor26", "--MK", "0", "--p", "2", "--q", "2"], "NOT_OBSTRUCTED"),
    (["thm23", "--MK", "0", "--MJ", "1"], "OBSTRUCTED"),
    (["cor16", "--M", "1", "--order", "2"], "OBSTRUCTED"),
    (["cor19", "--M", "1"], "OBSTRUCTED"),
    (["prop14", "--M1", "2", "--M2", "2", "--Msum", "<=2"], "OBSTRUCTED"),
    (["cor24", "--M1", "1", "--M2", "1", "--Msum", "2"], "OBSTRUCTED"),
    (["thm25", "--MJ", "1", "--MK", "0", "--t", "2", "--omega", "2"], "NOT_OBSTRUCTED"),
    (["cor27", "--sigma", "-2"], "OBSTRUCTED"),
])
def test_certify(capsys, argv, verdict):
    code, report = run_json(capsys, "certify", *argv)
    assert code == EXIT_OK
    assert report["results"]["verdict"] == verdict
    assert report["results"]["certificate"]["verdict"] == verdict


def test_certify_echo_and_trace(capsys):
    assert main(["certify", "cor16", "--M", "1", "--order", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "certify: cor16 --M 1 --order 2"
    assert "contradiction" in out


def test_certify_errors(capsys):
    assert main(["certify", "cor26", "--MK", "0"]) == EXIT_INPUT
    assert "rule cor26 needs --p" in capsys.readouterr().err
    assert main(["certify", "cor27", "--sigma", "-2", "--K-not-null-concordant"]) == EXIT_INPUT
    assert "hypothesis not met" in capsys.readouterr().err
    assert main(["certify", "thm23", "--MK", ">=0", "--MJ", "1"]) == EXIT_INPUT
    assert main(["certify", "nosuchrule"]) == EXIT_INPUT


def test_input_errors_exit_with_2(capsys):
    assert main(["homfly", "B2: 2"]) == EXIT_INPUT
    assert main(["homfly", "C2: 1"]) == EXIT_INPUT
    assert main(["frobnicate"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT


def test_budget_exceeded_exits_with_3(capsys, monkeypatch):
    assert main(["--max-strands", "2", "homfly", "B3: 1 2 1 2"]) == EXIT_BUDGET
    assert "budget" in capsys.readouterr().err

    monkeypatch.setenv("CBORD_BUDGET", "8:3")
    assert main(["homfly", "B2: 1 1 1 1"]) == EXIT_BUDGET
    assert main(["--max-letters", "4", "homfly", "B2: 1 1 1 1"]) == EXIT_OK

    monkeypatch.setenv("CBORD_BUDGET", "plenty")
    assert main(["homfly", "B2: 1 1 1"]) == EXIT_INPUT


def test_unexpected_errors_exit_with_1(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise RuntimeError("engine fault")

    monkeypatch.setattr(cli, "homfly", broken)
    assert main(["homfly", "B2: 1 1 1"]) == EXIT_FAILURE


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "cbord" in capsys.readouterr().out


def _batch(tmp_path, capsys, text, *extra):
    path = tmp_path / "jobs.txt"
    path.write_text(text, encoding="utf-8")
    code = main(["batch", str(path), *extra])
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    return code, records


def test_batch_of_valid_lines(tmp_path, capsys):
    code, records = _batch(tmp_path, capsys, 'homfly "B2: 1 1 1"\nplumbing "(-2 (-2))"\ncertify cor19 --M 1\n')
    assert code == EXIT_OK
    assert [r["command"] for r in records] == ["homfly", "plumbing", "certify"]


def test_batch_with_a_bad_line(tmp_path, capsys):
    code, records = _batch(tmp_path, capsys, 'homfly "B2: 1 1 1"\nhomfly "B2: 7"\nsignature "B2: 1 1 1"\n')
    assert code == EXIT_FAILURE
    assert len(records) == 3
    assert records[1]["exit_code"] == EXIT_INPUT
    assert records[1]["input"] == 'homfly "B2: 7"'
    assert records[2]["results"]["signature"] == -2


def test_batch_empty_file(tmp_path, capsys):
    code, records = _batch(tmp_path, capsys, "")
    assert code == EXIT_OK
    assert records == []


def test_batch_skips_comments_and_keeps_order_with_workers(tmp_path, capsys):
    lines = ["# corpus", ""] + [f'homfly "B2: {" ".join(["1"] * k)}"' for k in range(1, 7)]
    code, records = _batch(tmp_path, capsys, "\n".join(lines), "--workers", "3")
    assert code == EXIT_OK
    assert [r["results"]["maxdeg_v"] for r in records] == [0, 3, 4, 5, 6, 7]


def test_batch_budget_and_nesting(tmp_path, capsys):
    code, records = _batch(tmp_path, capsys, 'homfly "B3: 1 2 1 2"\nbatch other.txt\n')
    assert code == EXIT_FAILURE
    assert "results" in records[0]
    assert records[1]["exit_code"] == EXIT_INPUT

    path = tmp_path / "small.txt"
    path.write_text('homfly "B3: 1 2 1 2"\n', encoding="utf-8")
    assert main(["--max-strands", "2", "batch", str(path)]) == EXIT_FAILURE
    record = json.loads(capsys.readouterr().out)
    assert record["exit_code"] == EXIT_BUDGET


def test_batch_missing_file(tmp_path, capsys):
    assert main(["batch", str(tmp_path / "missing.txt")]) == EXIT_INPUT


HOMFLY_KEYS = ["polynomial", "ord_v", "maxdeg_v", "components", "mfw_bounds"]
SIGNATURE_KEYS = ["signature", "inertia", "determinant", "nullity", "seifert_matrix"]
ALEXANDER_KEYS = ["alexander", "trivial", "seifert_matrix"]
OBSTRUCT_KEYS = ["ord_v", "components", "signature", "M", "spc_verdict", "obstructed", "certificates"]
PLUMBING_KEYS = [
    "weights", "k", "s", "p", "q", "strongly_excessive", "ord_v", "r", "genus_lower_bound",
    "signature", "alexander", "determinant", "spc_verdict", "certificate",
]
CERTIFY_KEYS = ["verdict", "certificate"]


@pytest.mark.parametrize("argv, keys", [
    (["homfly", "B2: 1 1 1"], HOMFLY_KEYS),
    (["homfly", "QP3: (1 | 2) (| 1)"], HOMFLY_KEYS),
    (["signature", "B2: 1 1 1"], SIGNATURE_KEYS),
    (["signature", "--tree", "(2 (-2))"], SIGNATURE_KEYS),
    (["alexander", "B3: 1 -2 1 -2"], ALEXANDER_KEYS),
    (["obstruct", "B2: -1 -1 -1", "--auto-sigma"], OBSTRUCT_KEYS),
    (["obstruct", "B2: 1 1 1"], OBSTRUCT_KEYS),
    (["obstruct", "--tree", "(-2 (-2))"], OBSTRUCT_KEYS),
    (["plumbing", "(-2 (-2))"], PLUMBING_KEYS),
    (["plumbing", "(-2 (-2) (-2) (-2))"], PLUMBING_KEYS),
    (["certify", "cor26", "--MK", "0", "--p", "3", "--q", "2"], CERTIFY_KEYS),
    (["certify", "cor27", "--sigma", "-2"], CERTIFY_KEYS),
])
def test_json_reports_have_a_fixed_key_set(capsys, argv, keys):
    code, report = run_json(capsys, *argv)
    assert code == EXIT_OK
    assert list(report) == ["command", "input", "results", "warnings"]
    assert list(report["results"]) == keys
    assert list(cli.RESULT_KEYS[report["command"]]) == keys


def test_obstruct_fills_keys_the_input_does_not_use(capsys):
    code, report = run_json(capsys, "obstruct", "B2: 1 1 1")
    assert report["results"]["signature"] is None
    assert report["results"]["spc_verdict"] is None

    code, report = run_json(capsys, "obstruct", "--tree", "(-2 (-2))")
    assert report["results"]["M"] is None
    assert (report["results"]["ord_v"], report["results"]["components"]) == (2, 1)


def test_batch_error_records_have_a_fixed_key_set(tmp_path, capsys):
    code, records = _batch(tmp_path, capsys, 'homfly "B2: 7"\nfrobnicate\nhomfly "B2: 1"\n')
    assert code == EXIT_FAILURE
    assert [list(r) for r in records[:2]] == [["command", "input", "error", "exit_code"]] * 2
    assert records[0]["command"] == "homfly"
    assert records[1]["command"] is None
    assert records[1]["exit_code"] == EXIT_INPUT
    assert list(records[2]) == ["command", "input", "results", "warnings"]


def test_batch_clears_the_trace_cache(tmp_path, capsys):
    code, records = _batch(tmp_path, capsys, 'homfly "B3: 1 -2 1 -2"\n')
    assert code == EXIT_OK
    assert _trace.cache_info().currsize == 0


def test_obstruct_on_a_deep_chain(capsys):
    depth = 1500
    text = "".join("(-2 " for _ in range(depth - 1)) + "(-2)" + ")" * (depth - 1)
    code, report = run_json(capsys, "obstruct", "--tree", text)
    assert code == EXIT_OK
    assert report["results"]["ord_v"] == depth
    assert report["results"]["spc_verdict"] == "yes"
