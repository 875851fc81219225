import json
import subprocess
import sys

from tophom.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constants_csv(capsys):
    code, out, _ = run_cli(capsys, ["constants", "--d-min", "2", "--d-max", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "d,beta_d,c_star,c_collapse,beta_asym,c_star_asym"
    assert len(lines) == 3
    row = lines[1].split(",")
    assert row[0] == "2"
    assert float(row[1]) == 0.8834139672416275
    assert float(row[2]) == 2.7538058299730612


def test_gamma_table(capsys):
    code, out, _ = run_cli(capsys, ["gamma", "--d", "2", "--c", "3.0", "--r-max", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,gamma_r,beta_r"
    assert len(lines) == 5
    assert lines[1].startswith("0,0,")


def test_sample_json(capsys):
    code, out, _ = run_cli(
        capsys,
        ["sample", "--n", "20", "--d", "2", "--c", "2.0", "--seed", "11"],
    )
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"f_d", "zeta_star", "s_star", "h_d", "phases"}
    assert obj["h_d"] >= 0


def test_sample_skip_homology(capsys):
    code, out, _ = run_cli(
        capsys,
        ["sample", "--n", "20", "--d", "2", "--c", "2.0", "--seed", "11",
         "--skip-homology"],
    )
    assert code == 0
    assert json.loads(out)["h_d"] is None


def test_process_jsonl_and_aggregates(capsys, tmp_path):
    out_path = tmp_path / "records.jsonl"
    code, out, _ = run_cli(
        capsys,
        ["process", "--n", "8", "--d", "2", "--trials", "5", "--seed", "3",
         "--out", str(out_path)],
    )
    assert code == 0
    agg = json.loads(out.strip().splitlines()[-1])
    assert agg["trials"] == 5
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 5
    rec = json.loads(lines[0])
    assert rec["n"] == 8 and rec["trial"] == 0


def test_threshold_scan_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        ["threshold-scan", "--n", "15", "--d", "2", "--c-min", "1.0",
         "--c-max", "3.0", "--step", "1.0", "--trials", "3", "--seed", "2"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "c,trials,frac_s_positive,frac_h_positive,mean_s_density"
    assert len(lines) == 4


def test_gw_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        ["gw", "--d", "2", "--c", "2.0", "--r-max", "1", "--samples", "500",
         "--seed", "4", "--direct-n", "60", "--direct-faces", "200"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("d,c,r,samples,tree_estimate")


def test_invalid_value_exits_2(capsys):
    # c > n is rejected by the sampler with ValueError
    code, _, err = run_cli(
        capsys, ["sample", "--n", "10", "--d", "2", "--c", "50", "--seed", "1"]
    )
    assert code == 2
    assert "error" in err


def test_unknown_command_exits_2():
    proc = subprocess.run(
        [sys.executable, "-m", "tophom.cli", "bogus"], capture_output=True
    )
    assert proc.returncode == 2


def test_threads_do_not_change_output():
    base = [sys.executable, "-m", "tophom.cli", "process", "--n", "9", "--d", "2",
            "--trials", "6", "--seed", "17"]
    outs = []
    for threads in ("1", "3"):
        proc = subprocess.run(base + ["--threads", threads], capture_output=True)
        assert proc.returncode == 0
        outs.append(proc.stdout)
    assert outs[0] == outs[1]


def test_entry_point_installed():
    proc = subprocess.run(["tophom", "--help"], capture_output=True)
    assert proc.returncode == 0
    assert b"constants" in proc.stdout
