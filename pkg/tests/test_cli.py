import json

import pytest

from hypersido import __version__, density, kappa
from hypersido.cli import main, parse_config
from hypersido.hypergraph import build_family


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


class TestExamples:
    def test_kappa_c6(self, capsys):
        code, env, _ = run_json(capsys, "kappa", "--family", "tight-cycle", "--ell", "6", "--r", "3")
        assert code == 0
        assert env["payload"]["kappa"] == ["0", "0", "0", "3", "6", "1"]
        assert env["payload"]["method"] == "dp"
        assert env["payload"]["params"] == {"ell": 6, "r": 3}

    def test_kappa_plain(self, capsys):
        code, out, _ = run(capsys, "kappa", "--family", "tight-cycle", "--ell", "6", "--r", "3", "--plain")
        assert code == 0 and out.strip() == "0,0,0,3,6,1"

    @pytest.mark.parametrize("method", ["bruteforce", "closed", "dp"])
    def test_kappa_methods_agree(self, capsys, method):
        code, env, _ = run_json(capsys, "kappa", "--family", "tight-cycle", "--ell", "9", "--r", "3",
                                "--method", method)
        assert code == 0 and env["payload"]["method"] == method
        expected = kappa.kappa_poly_bruteforce(build_family("tight-cycle", {"ell": 9, "r": 3}))
        assert env["payload"]["kappa"] == expected.as_strings()

    def test_certify_loose_triangle(self, capsys):
        code, env, _ = run_json(capsys, "certify", "--family", "loose-triangle", "--kernel", "linear-girth",
                                "--c", "1/3")
        assert code == 0
        assert env["payload"]["margin"] == "1/27"
        assert env["payload"]["verdict"] == "not_sidorenko"
        assert env["exact"] is True

    def test_scan_small(self, capsys):
        code, out, _ = run(capsys, "scan", "--max-vertices", "15", "--table")
        assert code == 0
        assert "certificate" in out.splitlines()[0]
        assert len(out.strip().splitlines()) > 3

    def test_poly_eval(self, capsys):
        code, env, _ = run_json(capsys, "poly-eval", "--family", "tight-cycle", "--ell", "6", "--r", "3", "--x=-2/3")
        assert code == 0 and env["payload"]["value"] == "-80/729" and env["payload"]["sign"] == -1

    def test_poly_eval_coefficients(self, capsys):
        code, env, _ = run_json(capsys, "poly-eval", "--coefficients", "0,0,0,0,0,1,4,1", "--x=-2/3")
        assert code == 0 and env["payload"]["value"] == "-704/6561"

    def test_negativity(self, capsys):
        code, env, _ = run_json(capsys, "negativity", "--family", "tight-cycle", "--ell", "12", "--r", "3")
        assert code == 0 and env["payload"]["negative_point"].startswith("-")

    def test_negativity_inconclusive(self, capsys):
        code, out, err = run(capsys, "negativity", "--coefficients", "0,0,0,1", "--plain")
        assert code == 4
        assert out.strip() == "no negative point found (not a proof)"

    def test_levi(self, capsys):
        code, env, _ = run_json(capsys, "levi", "--family", "half-octahedron")
        assert code == 0
        assert (env["payload"]["vertices"], env["payload"]["edges"]) == (10, 12)

    def test_common_classify(self, capsys):
        code, env, _ = run_json(capsys, "common", "--family", "grid", "--r", "3", "--classify-only")
        assert code == 0
        cls = env["payload"]["classification"]
        assert cls["2m"] == 6 and len(cls["candidates"]) == 1

    def test_common_search_needs_seed(self, capsys):
        code, _, err = run(capsys, "common", "--family", "half-octahedron")
        assert code == 2 and "seed" in err

    def test_sample_estimate_marked_inexact(self, capsys):
        code, env, _ = run_json(capsys, "sample", "--family", "single-edge", "--r", "2", "--kernel", "constant",
                                "--value", "1/2", "--n", "12", "--trials", "5", "--seed", "3", "--expected", "1/2")
        assert code == 0 and env["exact"] is False
        assert abs(float(env["payload"]["mean"]) - 0.5) < 0.2


class TestExitCodes:
    def test_usage(self, capsys):
        assert run(capsys, "kappa", "--family", "nope")[0] == 2
        assert run(capsys, "kappa", "--family", "tight-cycle", "--ell", "2", "--r", "3")[0] == 2
        assert run(capsys)[0] == 2
        assert run(capsys, "frobnicate")[0] == 2

    def test_sample_requires_seed(self, capsys):
        assert run(capsys, "sample", "--family", "single-edge", "--r", "2", "--kernel", "constant",
                   "--value", "1/2")[0] == 2

    def test_resource_flag(self, capsys):
        code, _, err = run(capsys, "kappa", "--family", "grid", "--r", "3", "--method", "bruteforce",
                           "--enum-edges", "3")
        assert code == 3 and "resource" in err

    def test_resource_env(self, capsys, monkeypatch):
        monkeypatch.setenv("HYPERSIDO_ENUM_EDGES", "3")
        assert run(capsys, "kappa", "--family", "grid", "--r", "3", "--method", "bruteforce")[0] == 3

    def test_budgets_restored(self, capsys):
        before = kappa.BRUTEFORCE_MAX_EDGES, density.FACTOR_SIZE_CAP
        run(capsys, "kappa", "--family", "grid", "--r", "3", "--enum-edges", "3", "--factor-cap", "10")
        assert (kappa.BRUTEFORCE_MAX_EDGES, density.FACTOR_SIZE_CAP) == before

    def test_nonpositive_budget(self, capsys):
        assert run(capsys, "kappa", "--family", "grid", "--r", "3", "--enum-edges", "0")[0] == 2

    def test_inconclusive_certify(self, capsys):
        code, env, _ = run_json(capsys, "certify", "--family", "tight-cycle", "--ell", "6", "--r", "3",
                                "--kernel", "constant", "--value", "1/2")
        assert code == 4 and env["status"] == "inconclusive"

    def test_grid_search_inconclusive(self, capsys):
        code, _, _ = run(capsys, "common", "--family", "grid", "--r", "3", "--seed", "0", "--atoms", "2",
                         "--restarts", "1", "--max-iterations", "2")
        assert code == 4


class TestEnvelope:
    def test_fields(self, capsys):
        _, env, _ = run_json(capsys, "catalog")
        assert env["tool"] == "hypersido" and env["version"] == __version__
        assert env["timestamp"] is None and env["command"] == {"command": "catalog"}

    def test_timestamp_opt_in(self, capsys):
        _, env, _ = run_json(capsys, "catalog", "--timestamp")
        assert env["timestamp"]

    def test_byte_identical(self, capsys):
        argv = ["sample", "--family", "tight-cycle", "--ell", "5", "--r", "3", "--kernel", "constant",
                "--value", "1/2", "--n", "9", "--seed", "11"]
        outs = [run(capsys, *argv)[1] for _ in range(2)]
        assert outs[0] == outs[1]
        argv = ["auto-witness", "--family", "tight-cycle", "--ell", "6", "--r", "3"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "out.json"
        _, out, _ = run(capsys, "kappa", "--family", "tight-cycle", "--ell", "6", "--r", "3", "--output", str(path))
        assert path.read_text() == out

    def test_sorted_keys(self, capsys):
        _, out, _ = run(capsys, "catalog")
        assert out == json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n"


class TestConfig:
    def test_config_file(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"command": "kappa", "family": "tight-cycle", "ell": 6, "r": 3}))
        code, env, _ = run_json(capsys, "--config", str(path))
        assert code == 0 and env["payload"]["kappa"] == ["0", "0", "0", "3", "6", "1"]

    def test_flags_override(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"command": "kappa", "family": "tight-cycle", "ell": 6, "r": 3}))
        code, env, _ = run_json(capsys, "--config", str(path), "--ell", "9")
        assert env["payload"]["params"]["ell"] == 9

    def test_nested_params(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"command": "kappa", "family": "tight-cycle", "params": {"ell": 6, "r": 3}}))
        code, env, _ = run_json(capsys, "--config", str(path))
        assert code == 0 and env["payload"]["kappa"][-1] == "1"

    def test_bad_config(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("[1, 2]")
        assert run(capsys, "--config", str(path))[0] == 2
        assert run(capsys, "--config", str(tmp_path / "missing.json"))[0] == 2

    def test_kernel_c_not_config(self):
        cfg = parse_config(["certify", "--family", "loose-triangle", "--kernel", "linear-girth", "--c", "1/6"])
        assert cfg.options["c"] == "1/6"


class TestVerify:
    @pytest.mark.parametrize("argv", [
        ["certify", "--family", "loose-triangle", "--kernel", "linear-girth", "--c", "1/6"],
        ["auto-witness", "--family", "tight-cycle", "--ell", "6", "--r", "3"],
        ["auto-witness", "--family", "tight-cycle-minus-edge", "--ell", "9", "--r", "3"],
    ])
    def test_emitted_certificates_verify(self, capsys, tmp_path, argv):
        path = tmp_path / "cert.json"
        assert run(capsys, *argv, "--output", str(path))[0] == 0
        code, env, _ = run_json(capsys, "verify", "--certificate", str(path))
        assert code == 0 and env["payload"]["verified"] is True
        assert env["payload"]["verdict"] == "not_sidorenko"

    def test_bare_certificate(self, capsys, tmp_path):
        _, env, _ = run_json(capsys, "certify", "--family", "loose-triangle", "--kernel", "linear-girth",
                             "--c", "1/3")
        path = tmp_path / "bare.json"
        path.write_text(json.dumps(env["payload"]))
        assert run(capsys, "verify", "--certificate", str(path))[0] == 0

    def test_tampered_certificate_rejected(self, capsys, tmp_path):
        _, env, _ = run_json(capsys, "certify", "--family", "loose-triangle", "--kernel", "linear-girth",
                             "--c", "1/3")
        env["payload"]["margin"] = "1/26"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(env))
        assert run(capsys, "verify", "--certificate", str(path))[0] == 2


class TestCatalog:
    def test_listing(self, capsys):
        _, env, _ = run_json(capsys, "catalog")
        names = {f["family"] for f in env["payload"]["families"]}
        assert {"tight-cycle", "tight-cycle-minus-edge", "loose-cycle", "grid", "half-octahedron",
                "levi-of", "disjoint-union"} <= names
        by_name = {f["family"]: f for f in env["payload"]["families"]}
        assert "2" in by_name["grid"]["params"]["r"]
        assert "r" in by_name["tight-cycle"]["params"]["ell"]

    def test_minimal_builds(self, capsys):
        _, env, _ = run_json(capsys, "catalog")
        for entry in env["payload"]["families"]:
            H = build_family(entry["family"], entry["minimal"])
            assert H.e >= 1


class TestStoredWitnesses:
    FIX = __import__("pathlib").Path(__file__).parent / "fixtures"

    def test_common_half_octahedron(self, capsys):
        code, env, _ = run_json(capsys, "common", "--family", "half-octahedron",
                                "--kernel-file", str(self.FIX / "half_octahedron_witness.json"))
        assert code == 0 and env["payload"]["lifted"] is True
        assert env["payload"]["report"]["verdict"] == "not_common"
        assert env["payload"]["report"]["deficit"].startswith("-")

    def test_levi_transfer(self, capsys):
        code, env, _ = run_json(capsys, "levi", "--family", "half-octahedron",
                                "--kernel-file", str(self.FIX / "levi_half_octahedron_witness.json"))
        t = env["payload"]["transfer"]
        assert code == 0 and t["t_H(h)"] == t["t_L(f)"] and t["t_H(h)"].startswith("-")
