import json

import numpy as np
import pytest

from qdft.cli import EXIT_CONFIG, EXIT_INVARIANT, EXIT_IO, EXIT_OK, main
from qdft.report import RunReport, emit_report


@pytest.fixture
def files(tmp_path):
    sig = tmp_path / "sig.csv"
    sig.write_text("1\n1\n1\n1\n")
    rnd = tmp_path / "rnd.csv"
    rng = np.random.default_rng(0)
    rnd.write_text("\n".join(f"{a:.17g},{b:.17g}" for a, b in rng.normal(size=(32, 2))))
    img = tmp_path / "img.pgm"
    i, j = np.mgrid[0:8, 0:8]
    img.write_bytes(b"P5\n8 8\n255\n" + (i * 8 + j * 4).astype("u1").tobytes())
    return {"sig": sig, "rnd": rnd, "img": img, "dir": tmp_path}


def run(argv, out):
    code = main(argv + ["--output", str(out)])
    return code, out.read_bytes() if out.exists() else b""


class TestReport:
    def test_empty_json(self):
        rep = RunReport("dft1d", {"epsilon": 0.01}, n=4, ledger={"grover_iterations": 0})
        d = json.loads(emit_report(rep, "json"))
        assert d["entries"] == [] and d["nS"] == 0
        assert d["ledger"] == {"grover_iterations": 0}

    def test_csv_header(self):
        rep = RunReport("dft2d", {}, entries=[{"index": "1:2", "re": -0.0, "im": 1.5, "energy": 2.25}])
        lines = emit_report(rep, "csv").decode().splitlines()
        assert lines[-2] == "index,re,im,energy"
        assert lines[-1] == "1:2,0,1.5,2.25"
        assert all(l.startswith("#") for l in lines[:-2])

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(RunReport("x", {}), "xml")


class TestDft1d:
    def test_constant_signal_csv(self, files):
        code, data = run(["dft1d", "--input", str(files["sig"]), "--format", "csv"], files["dir"] / "o.csv")
        assert code == EXIT_OK
        rows = [l for l in data.decode().splitlines() if not l.startswith("#")]
        assert rows == ["index,re,im,energy", "0,2,0,4"]

    def test_json_fields(self, files):
        code, data = run(["dft1d", "--input", str(files["rnd"]), "--epsilon", "0.1"], files["dir"] / "o.json")
        assert code == EXIT_OK
        d = json.loads(data)
        assert d["config"]["epsilon"] == 0.1 and d["config"]["budget_multiplier"] == 8.0
        assert d["nS"] == len(d["entries"]) == sum(s["accepted"] for s in d["trace"])
        assert d["residual_energy"] / d["total_energy"] < 0.1
        assert {"alpha", "beta", "index", "marked"} <= d["trace"][0].keys()
        assert "wall_clock_seconds" not in d

    def test_deterministic(self, files):
        argv = ["dft1d", "--input", str(files["rnd"]), "--seed", "5"]
        _, a = run(argv, files["dir"] / "a.json")
        _, b = run(argv, files["dir"] / "b.json")
        assert a == b

    def test_timing_opt_in(self, files):
        _, data = run(["dft1d", "--input", str(files["sig"]), "--timing"], files["dir"] / "t.json")
        assert "wall_clock_seconds" in json.loads(data)

    def test_figure(self, files):
        fig = files["dir"] / "spec.png"
        code, _ = run(["dft1d", "--input", str(files["rnd"]), "--figure", str(fig)], files["dir"] / "o.json")
        assert code == EXIT_OK
        assert fig.read_bytes()[:4] == b"\x89PNG"


class TestErrors:
    def test_missing_file(self, files):
        assert main(["dft1d", "--input", str(files["dir"] / "nope.csv")]) == EXIT_IO

    def test_parse_error(self, files):
        bad = files["dir"] / "bad.csv"
        bad.write_text("1\nx\n")
        assert main(["dft1d", "--input", str(bad)]) == EXIT_IO

    @pytest.mark.parametrize(
        "extra", [["--epsilon", "0"], ["--epsilon", "1.5"], ["--budget-multiplier", "0.5"], ["--seed", "-1"]]
    )
    def test_bad_config(self, files, extra):
        assert main(["dft1d", "--input", str(files["sig"])] + extra) == EXIT_CONFIG

    def test_argparse_errors_exit_2(self):
        with pytest.raises(SystemExit) as err:
            main(["dft1d"])
        assert err.value.code == EXIT_CONFIG


class TestDft2d:
    def test_pairs(self, files):
        code, data = run(["dft2d", "--input", str(files["img"]), "--format", "csv"], files["dir"] / "o.csv")
        assert code == EXIT_OK
        rows = [l for l in data.decode().splitlines() if not l.startswith("#")][1:]
        assert rows and all(r.split(",")[0].count(":") == 1 for r in rows)

    def test_blocks(self, files):
        fig = files["dir"] / "img.png"
        code, data = run(
            ["dft2d", "--input", str(files["img"]), "--block", "4", "--figure", str(fig)], files["dir"] / "o.json"
        )
        assert code == EXIT_OK
        d = json.loads(data)
        assert {e["index"].count(":") for e in d["entries"]} == {3}
        blocks = {tuple(map(int, e["index"].split(":")[:2])) for e in d["entries"]}
        assert blocks == {(0, 0), (0, 1), (1, 0), (1, 1)}
        assert fig.exists()

    def test_modes(self, files):
        for flag in ("--exhaustive-2d", "--sparse-2d"):
            code, data = run(["dft2d", "--input", str(files["img"]), flag], files["dir"] / "o.json")
            assert code == EXIT_OK
        assert json.loads(data)["first_pass"] == "sparse"

    def test_block_too_big(self, files):
        assert main(["dft2d", "--input", str(files["img"]), "--block", "16"]) == EXIT_CONFIG


class TestConvBenchGrover:
    def test_conv(self, files):
        code, data = run(
            ["conv", "--input", str(files["rnd"]), "--kernel", str(files["sig"]), "--epsilon", "0.001"],
            files["dir"] / "c.json",
        )
        assert code == EXIT_OK
        d = json.loads(data)
        assert len(d["w_hat"]) == 32
        assert d["relative_l2_error"] < 0.5

    def test_bench_csv(self, files):
        fig = files["dir"] / "bench.png"
        code, data = run(
            ["bench", "--sizes", "16,64", "--trials", "3", "--format", "csv", "--literal-oracle", "--figure", str(fig)],
            files["dir"] / "b.csv",
        )
        assert code == EXIT_OK
        lines = [l for l in data.decode().splitlines() if not l.startswith("#")]
        assert lines[0].startswith("kind,variant,N,trials,mean_iterations")
        assert len(lines) == 1 + 4
        assert fig.exists()

    def test_bench_2d(self, files):
        code, data = run(["bench", "--kind", "2d", "--sizes", "4,8", "--trials", "2"], files["dir"] / "b.json")
        assert code == EXIT_OK
        assert "exclude" in json.loads(data)["loglog_slopes"]

    def test_grover_check(self, files):
        code, data = run(["grover-check", "--sizes", "2,4,8", "--max-j", "20"], files["dir"] / "g.json")
        assert code == EXIT_OK
        assert json.loads(data)["max_deviation"] <= 1e-12

    def test_grover_check_failure_exit(self, files, monkeypatch):
        import qdft.cli

        monkeypatch.setattr(qdft.cli, "GROVER_TOL", -1.0)
        code, _ = run(["grover-check", "--sizes", "2"], files["dir"] / "g.json")
        assert code == EXIT_INVARIANT
