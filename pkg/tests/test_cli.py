import hashlib
import json

import numpy as np
import pytest

from parityspace.cli import main
from parityspace.distributions import read_field_csv
from parityspace.parity import ParityMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parity_bj_summary(capsys, cache_dir, tmp_path):
    out = tmp_path / "bj.json"
    code, text, _ = run(capsys, "parity", "--kind", "bj", "--dim", "8", "--out", str(out),
                        "--cache-dir", str(cache_dir))
    assert code == 0
    summary = json.loads(text)
    mat = ParityMatrix.from_json(json.loads(out.read_text()))
    assert summary["trace"] == pytest.approx(np.trace(mat.entries).real)
    assert summary["provenance"] == "recursive"


def test_parity_exact_method(capsys, cache_dir):
    code, text, _ = run(capsys, "parity", "--kind", "born-jordan", "--dim", "12", "--method", "exact",
                        "--cache-dir", str(cache_dir))
    assert code == 0 and json.loads(text)["provenance"] == "exact"
    assert "rank9_energy_fraction" in json.loads(text)


def test_warm_cache_identical(capsys, cache_dir, tmp_path):
    digests = []
    for name in ("a.json", "b.json"):
        p = tmp_path / name
        assert run(capsys, "parity", "--kind", "bj", "--dim", "30", "--out", str(p),
                   "--cache-dir", str(cache_dir))[0] == 0
        digests.append(hashlib.md5(p.read_bytes()).hexdigest())
    assert digests[0] == digests[1]
    assert (cache_dir / "bj_exact.txt").exists()


def test_positive_s_rejected(capsys):
    code, _, err = run(capsys, "parity", "--kind", "s", "--s", "0.5")
    assert code == 2 and "unbounded" in err


def test_missing_tau(capsys):
    assert run(capsys, "parity", "--kind", "tau")[0] == 2


def test_tau_parity(capsys):
    code, text, _ = run(capsys, "parity", "--kind", "tau", "--tau", "0.25", "--dim", "60")
    assert code == 0 and json.loads(text)["spectral_norm"] <= 1.1547005383792515 + 1e-9


def test_dist_fock4_symmetric(capsys, tmp_path):
    csv = tmp_path / "f.csv"
    code, text, _ = run(capsys, "dist", "--state", "fock:4", "--kind", "bj", "--grid=-3:3:31,-3:3:31",
                        "--out", str(csv), "--jobs", "2")
    s = json.loads(text)
    assert code == 0 and s["four_fold_symmetric"] is True
    assert read_field_csv(csv).values.shape == (31, 31)


def test_dist_marginals(capsys, tmp_path):
    base = tmp_path / "m.csv"
    code, text, _ = run(capsys, "dist", "--state", "cat", "--grid=-6:6:61,-6:6:61",
                        "--marginals", str(base))
    assert code == 0
    for suffix, label in (("_x", "x"), ("_p", "p")):
        lines = (tmp_path / f"m{suffix}.csv").read_text().splitlines()
        assert lines[0] == f"# marginal={label}" and len(lines) == 62
    assert json.loads(text)["total_integral"] == pytest.approx(1.0, abs=1e-6)


def test_dist_coherent_state(capsys):
    code, text, _ = run(capsys, "dist", "--state", "coherent:0.5,-0.5", "--kind", "husimi",
                        "--grid=-2:2:5,-2:2:5")
    assert code == 0 and json.loads(text)["min"] > 0


def test_bad_state(capsys):
    assert run(capsys, "dist", "--state", "squeezed")[0] == 2


def test_bad_grid(capsys):
    assert run(capsys, "dist", "--grid", "1:2")[0] == 2


def test_config_defaults_and_override(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"kind": "s", "s": -0.5, "dim": 10}))
    code, text, _ = run(capsys, "parity", "--config", str(cfg))
    assert code == 0 and json.loads(text)["kind"] == "s=-0.5" and json.loads(text)["dim"] == 10
    code, text, _ = run(capsys, "parity", "--config", str(cfg), "--dim", "6")
    assert json.loads(text)["dim"] == 6


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    code, _, err = run(capsys, "parity", "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_config_missing_file(capsys, tmp_path):
    assert run(capsys, "parity", "--config", str(tmp_path / "none.json"))[0] == 2


def test_validate_subset(capsys, tmp_path):
    out = tmp_path / "v.json"
    code, text, err = run(capsys, "validate", "--only", "1,11,15", "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == 0 and rep["all_passed"]
    assert err.count("PASS") == 3


def test_quantize(capsys):
    code, text, _ = run(capsys, "quantize", "--max-degree", "2", "--dim", "30")
    assert code == 0 and len(json.loads(text)) == 12


def test_conjecture_exit_code(capsys, monkeypatch):
    from parityspace.bornjordan import recursion

    table = recursion.build_m_table

    def corrupt(N):
        M = table(N)
        M[2, 1] += 1
        return M

    monkeypatch.setattr(recursion, "build_m_table", corrupt)
    code, _, err = run(capsys, "parity", "--kind", "bj", "--dim", "20")
    assert code == 3 and "(2, 1)" in err
