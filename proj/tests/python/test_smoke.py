import os
from pathlib import Path

import pytest

import honeyauth

DATA_DIR = Path(os.environ.get("HONEYAUTH_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def model():
    lines = (DATA_DIR / "toy_corpus.txt").read_text(encoding="utf-8").splitlines()
    return honeyauth.train_model(lines)


def test_crackcalc():
    assert honeyauth.keyspace(8, 62) == "218340105584896"
    assert honeyauth.entropy_bits(8, 62) == pytest.approx(47.63, abs=0.01)
    years = honeyauth.exhaustive_seconds(8, 62, 60.0) / honeyauth.SECONDS_PER_YEAR
    assert years == pytest.approx(115313, rel=1e-3)
    assert honeyauth.budget_seconds(5e9, 4500.0) / 86400 == pytest.approx(12.86, rel=1e-2)
    assert "argon2id" in honeyauth.render_tables()


def test_policy():
    assert honeyauth.check_password("Password1!") == []
    assert "MINLEN" in honeyauth.check_password("abc")
    with pytest.raises(honeyauth.ConfigError):
        honeyauth.check_password("x", "bogus=1")
    status, offending = honeyauth.check_sweetword_set(["Password1!", "short"])
    assert offending == [1]
    assert status != "OK"


def test_generate_and_assemble(model):
    decoys = honeyauth.generate("sunshine1987", "hybrid", k=20, seed=7, model=model)
    assert len(decoys) == 19
    assert "sunshine1987" not in decoys
    assert decoys == honeyauth.generate("sunshine1987", "hybrid", k=20, seed=7, model=model)
    words, index = honeyauth.assemble("sunshine1987", decoys, 3)
    assert words[index] == "sunshine1987"
    assert sorted(words) == sorted(decoys + ["sunshine1987"])


def test_generate_with_pii(model):
    pii = {"username": "casey7", "birth_year": 1990, "name_tokens": ["casey", "smith"]}
    decoys = honeyauth.generate("casey1990!", "hybrid", k=10, seed=1, model=model, pii=pii)
    assert len(decoys) == 9
    with pytest.raises(honeyauth.ConfigError):
        honeyauth.generate("casey1990!", "hybrid", model=model, pii={"shoe_size": 9})


def test_model_round_trip(model):
    again = honeyauth.CorpusModel.from_json(model.to_json())
    assert again.total == model.total == 5000
    assert again.log_prob("football12") == pytest.approx(model.log_prob("football12"))
    assert honeyauth.structure_template("Love12!") == "L4D2S1"


def test_gauntlet(model):
    assert honeyauth.flatness_score(0.05, 20) == pytest.approx(1.0)
    assert honeyauth.flatness_score(1.0, 20) == pytest.approx(0.0)
    order = honeyauth.attacker_rank("A3", ["zzqxv9!k", "password1"], model)
    assert sorted(order) == [0, 1]
    reals = [line for line in (DATA_DIR / "toy_corpus.txt").read_text().splitlines() if len(line) >= 8][:60]
    csv = honeyauth.sweep(reals, ["random"], ["A1", "A4"], model, k=10, seed=5)
    lines = csv.strip().splitlines()
    assert lines[0] == "generator,level,accounts,k,p_top1,ci95,epsilon"
    assert len(lines) == 3


def test_kdf_and_checker():
    digest = honeyauth.kdf_hash("secret", "test-kdf", bytes(16))
    assert len(digest) == 32
    assert digest == honeyauth.kdf_hash("secret", "test-kdf", bytes(16))
    idx = honeyauth.CheckerIndex()
    assert idx.request("SET alice 20 4").strip() == "OK"
    assert idx.request("CHECK alice 4").strip() == "REAL"
    assert idx.request("CHECK alice 5").strip() == "HONEY"
    assert len(idx) == 1


def test_responder():
    assert honeyauth.decide_action(0.1, False) == "Allow"
    risk = honeyauth.score_risk(ip_reputation=1.0, honey_event=True)
    assert risk == pytest.approx(0.65)
    assert honeyauth.decide_action(risk, True) == "RestrictedToken"


def test_run_cli():
    code, out, err = honeyauth.run_cli(["crackcalc", "--length", "8", "--alphabet", "62", "--rate", "60"])
    assert code == 0, err
    assert "115" in out
    code, _, err = honeyauth.run_cli(["no-such-command"])
    assert code == 1
    assert err
