import json

import pytest

from nlarm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fk_home(capsys):
    code, out, _ = run(capsys, "fk", "--q", "0,0,0,0")
    assert code == 0
    assert "[0.22105, 0.0, 0.18945]" in out


def test_fk_bad_arity(capsys):
    code, _, _ = run(capsys, "fk", "--q", "0,0,0")
    assert code == 1


def test_ik_reachable(capsys):
    code, out, _ = run(capsys, "ik", "--pos", "0.15,0.05,0.1", "--pitch", "0.3")
    assert code == 0
    assert "converged: True" in out


def test_ik_on_axis(capsys):
    code, _, err = run(capsys, "ik", "--pos", "0,0,0.2")
    assert code == 2
    assert "base z-axis" in err


def test_unknown_subcommand(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_eval_intents_gpt4(capsys):
    code, out, _ = run(capsys, "eval-intents", "--backend", "scripted_gpt4",
                       "--trials", "3")
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip() and l.strip()[0].isdigit()]
    assert len(lines) == 11
    failing = [l.split()[0] for l in lines if "FAIL" in l]
    assert failing == ["4"]


def test_eval_intents_gpt35(capsys):
    code, out, _ = run(capsys, "eval-intents", "--backend", "scripted_gpt35")
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip() and l.strip()[0].isdigit()]
    failing = {l.split()[0] for l in lines if "FAIL" in l}
    assert failing == {"4", "5", "7", "8", "9"}


def test_reproduce_stats(capsys):
    code, out, _ = run(capsys, "reproduce-stats")
    assert code == 0
    assert "t = 1.784" in out
    assert "p = 0.105" in out


def test_reproduce_stats_json(capsys):
    code, out, _ = run(capsys, "reproduce-stats", "--json")
    assert code == 0
    payload = json.loads(out[out.index("{"):])
    assert len(payload["rows"]) == 11


def test_reproduce_stats_missing_fixture(capsys, tmp_path):
    code, _, err = run(capsys, "reproduce-stats", "--fixture",
                       str(tmp_path / "nope.json"))
    assert code == 2
    assert err


def test_pick_demo_single_color(capsys):
    code, out, _ = run(capsys, "pick-demo", "--color", "red", "--trials", "2")
    assert code == 0
    assert "2/2 picks succeeded" in out


@pytest.mark.slow
def test_pick_demo_full_grid(capsys):
    code, out, _ = run(capsys, "pick-demo", "--trials", "5")
    assert code == 0
    assert "15/15 picks succeeded" in out


def test_bench_rule_backend(capsys):
    code, out, _ = run(capsys, "bench", "--backend", "rule", "--reps", "2")
    assert code == 0
    assert out.count("command") == 11


def test_repl_matches_service_pipeline(capsys, monkeypatch):
    # same text through repl and the service layer must yield the same intent
    inputs = iter(["pick up the green cube", ""])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(inputs))
    code, out, _ = run(capsys, "repl")
    assert code == 0
    assert "'action': 'pick_up'" in out
    assert "'color': 'green'" in out

    from nlarm.service import ArmService, ServiceConfig
    service = ArmService(ServiceConfig())
    try:
        response = service.submit("pick up the green cube")
    finally:
        service.close()
    assert response["intent"]["action"] == "pick_up"
    assert response["intent"]["color"] == "green"
