import io
import json

import pytest

from flagorbits.cli import run
from flagorbits.flag_models import ProjectivePoint, parse_point


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_conditions_su21():
    code, out, _ = call("check-conditions", "--form", "su", "--p", "2", "--q", "1", "--n", "2")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "admissible" and data["models"] == ["P^2"]


def test_verify_triality():
    code, out, _ = call("verify-triality")
    assert code == 0
    data = json.loads(out)
    assert data["automorphism"]["pairs_checked"] == 378
    assert data["so53_conditions"]["contained"] is True


def test_classify_manifolds_so71_twisted():
    code, out, _ = call("classify-manifolds", "--form", "so", "--p", "7", "--q", "1", "--twist", "1", "--n", "6")
    assert code == 0
    names = [m["name"] for m in json.loads(out)["models"]]
    assert names == ["Q_6", "Q_6 \\ S^1_{7,1}"]


def test_classify_point_round_trips():
    code, out, _ = call("classify", "--form", "su", "--p", "2", "--q", "1", "--point", "1:0:1")
    assert code == 0
    data = json.loads(out)
    assert data["label"]["name"] == "Q" and data["boundary_uncertain"] is False
    assert ProjectivePoint.from_json(data["point"]) == parse_point("1:0:1")
    assert json.loads(json.dumps(data, sort_keys=True, indent=2)) == data


def test_orbit_dim_and_text_format():
    code, out, _ = call("orbit-dim", "--form", "so", "--p", "5", "--q", "3", "--twist", "1",
                        "--point", "1:0:0:0:i:0:0:0")
    assert code == 0 and json.loads(out)["orbit_dim"] == 9
    code, out, _ = call("orbit-dim", "--form", "sl_r", "--point", "1:0:0:0", "--format", "text")
    assert code == 0 and "dimension 3" in out


def test_parabolic_table():
    code, out, _ = call("parabolic-table", "--series", "D", "--k", "8")
    assert code == 0
    assert len(json.loads(out)["classes"]) == 3


def test_validation_errors_exit_2():
    assert call("classify", "--form", "su", "--point", "1:0:1")[0] == 2
    assert call("classify", "--form", "su", "--p", "2", "--q", "1", "--point", "1:0")[0] == 2
    assert call("check-conditions", "--form", "sl_r", "--p", "1", "--q", "1", "--n", "2")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("classify", "--bogus")[0] == 2
    code, _, err = call("classify-manifolds", "--form", "su", "--p", "2", "--q", "1", "--n", "3")
    assert code == 2 and "error" in err


def test_property_failure_exits_1(monkeypatch):
    import flagorbits.cli as cli

    class Bad:
        passed = False
        pairs_checked = 378

        def to_dict(self):
            return {"passed": False}

    monkeypatch.setattr(cli, "verify_theta_automorphism", lambda: Bad())
    assert call("verify-triality")[0] == 1


def test_explore_byte_identical_for_same_seed():
    argv = ("explore", "--form", "su", "--p", "2", "--q", "1", "--n", "2", "--samples", "200", "--seed", "7")
    a, b = call(*argv), call(*argv)
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["seed"] == 7


def test_seed_from_environment(monkeypatch):
    argv = ("explore", "--form", "sl_r", "--n", "2", "--samples", "100")
    monkeypatch.setenv("FLAGORBITS_SEED", "5")
    env_out = call(*argv)[1]
    assert json.loads(env_out)["seed"] == 5
    assert env_out == call(*argv, "--seed", "5")[1]
    monkeypatch.setenv("FLAGORBITS_SEED", "x")
    assert call(*argv)[0] == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text('form = "su"\np = 2\nq = 1\nformat = text\n')
    code, out, _ = call("check-conditions", "--n", "2", "--config", str(cfg))
    assert code == 0 and "P^2" in out
    # command-line flags win over the file
    code, out, _ = call("check-conditions", "--n", "2", "--q", "0", "--p", "3", "--config", str(cfg))
    assert code == 0 and out.startswith("su(3,0)")
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert call("check-conditions", "--config", str(bad))[0] == 2
    assert call("check-conditions", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_zero_tol_override():
    argv = ("classify", "--form", "su", "--p", "2", "--q", "1", "--point", "1:0:1.00000001")
    assert json.loads(call(*argv)[1])["label"]["name"] == "B-"
    assert json.loads(call(*argv, "--zero-tol", "1e-6")[1])["label"]["name"] == "Q"
    assert call(*argv, "--zero-tol", "0")[0] == 2
