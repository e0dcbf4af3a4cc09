import json
import math
import os
import subprocess
import sys

import pytest

from powerfree.cli import (ExperimentConfig, REPRO, build_parser, main,
                           parse_argmap, parse_condition, parse_system,
                           parse_trig, system_text, trig_text)
from powerfree.dynamics import (CyclicRotation, IrrationalRotation,
                                TwoPointSwap)
from powerfree.ergodic import (AllIntegers, BeattyMap, IdentityMap,
                               KfreeValues, ProductKfree, ProgressionMap,
                               TwinSquarefree)

SYSTEM_TEXTS = [
    "twopoint:1.0,-1.0,0",
    "twopoint:2.5,0.5,1",
    "cyclic:3,0,1.0;0.0;0.0",
    "cyclic:4,2,0.25;1.5;-1.0;0.0",
    "circle:0.5609,0.3,1.0+1.0cos1",
    "circle:0.123,0.0,2.0+0.5cos3+1.5sin2",
]


def test_system_descriptor_round_trip():
    for text in SYSTEM_TEXTS:
        system, obs, x = parse_system(text)
        printed = system_text(system, obs, x)
        system2, obs2, x2 = parse_system(printed)
        assert system_text(system2, obs2, x2) == printed
        assert type(system2) is type(system)
        assert obs2 == obs


def test_parse_system_golden_alpha():
    system, obs, x = parse_system("circle:golden,0.3,1.0+1.0cos1")
    assert isinstance(system, IrrationalRotation)
    assert abs(system.alpha - (math.sqrt(5.0) - 1.0) / 2.0) == 0.0
    assert x == 0.3


def test_parse_trig_grammar():
    obs = parse_trig("1.5+2cos3+0.5sin1")
    assert obs.constant == 1.5
    assert obs.cos_terms == ((3, 2.0),)
    assert obs.sin_terms == ((1, 0.5),)
    obs2 = parse_trig("1+1cos1")
    assert obs2.constant == 1.0 and obs2.cos_terms == ((1, 1.0),)
    neg = parse_trig("1.0+-0.5cos2")
    assert neg.cos_terms == ((2, -0.5),)
    assert parse_trig(trig_text(obs)) == obs
    with pytest.raises(ValueError):
        parse_trig("1.0+bogus2")


def test_condition_descriptors():
    assert isinstance(parse_condition("all"), AllIntegers)
    assert isinstance(parse_condition("twinsqfree"), TwinSquarefree)
    kf = parse_condition("kfree:1,0,1:2")
    assert isinstance(kf, KfreeValues)
    assert kf.label() == "kfree:1,0,1:2"
    pr = parse_condition("product:1,0,1*2,0,1:2")
    assert isinstance(pr, ProductKfree)
    with pytest.raises(ValueError):
        parse_condition("nonsense")


def test_argmap_descriptors():
    assert isinstance(parse_argmap("identity"), IdentityMap)
    pm = parse_argmap("prog:3,1")
    assert isinstance(pm, ProgressionMap)
    assert pm.m == 3 and pm.r == 1
    bm = parse_argmap("beatty:13/8,0.5")
    assert isinstance(bm, BeattyMap)
    from fractions import Fraction
    assert bm.alpha == Fraction(13, 8)
    with pytest.raises(ValueError):
        parse_argmap("wat:1")


def test_experiment_config_round_trip():
    cfg = ExperimentConfig(name="estermann", coeffs=[1, 0, 1], k=2,
                           N=10 ** 7, checkpoints=[10 ** 5, 10 ** 6, 10 ** 7],
                           system="twopoint:1.0,-1.0,0", condition="all",
                           argmap="identity", P=10 ** 6, out="results")
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    blank = ExperimentConfig(name="x")
    assert ExperimentConfig.from_json(blank.to_json()) == blank


def test_config_json_schema_keys():
    cfg = ExperimentConfig(name="t")
    keys = set(json.loads(cfg.to_json()))
    assert keys == {"name", "coeffs", "k", "N", "checkpoints", "system",
                    "condition", "argmap", "P", "out"}


def test_rho_csv_output(tmp_path):
    out = tmp_path / "rho.csv"
    rc = main(["rho", "--poly", "1,0,1", "--k", "2", "--primes", "50",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "p,is_bad,rho_p,rho_pk"
    rows = {int(l.split(",")[0]): l.split(",") for l in lines[1:]}
    two_at = sorted(p for p, r in rows.items() if r[3] == "2")
    assert two_at == [5, 13, 17, 29, 37, 41]
    assert rows[2][1] == "1"            # p = 2 flagged bad


def test_density_json_output(tmp_path):
    out = tmp_path / "d.json"
    rc = main(["density", "--poly", "1,0,1", "--k", "2", "--P", "10000",
               "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["density"]["lower"] <= doc["density"]["value"]
    assert doc["config"]["coeffs"] == [1, 0, 1]
    assert doc["hypothesis_checks"]["squarefree_poly"] is True


def test_count_csv_and_checkpoint_validation(tmp_path):
    out = tmp_path / "c.csv"
    rc = main(["count", "--poly", "1,0,1", "--k", "2", "--N", "10000",
               "--checkpoints", "100,1000,10000", "--P", "10000",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "N,count,target,abs_error,rel_error"
    assert len(lines) == 4
    assert int(lines[3].split(",")[1]) == 8952
    bad = main(["count", "--poly", "1,0,1", "--k", "2", "--N", "10",
                "--checkpoints", "5,5"])
    assert bad == 2


def test_eftail_output(tmp_path):
    out = tmp_path / "e.csv"
    rc = main(["eftail", "--poly", "1,0,1", "--k", "2", "--N", "10000",
               "--checkpoints", "1000,10000", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "N,Y,pairs"
    n, y, pairs = lines[1].split(",")
    assert int(y) == int(1000 ** 0.9)


def test_ergodic_csv(tmp_path):
    out = tmp_path / "g.csv"
    rc = main(["ergodic", "--system", "twopoint:1.0,-1.0,0", "--condition",
               "all", "--argmap", "identity", "--N", "1000",
               "--checkpoints", "10,100,1000", "--P", "1000",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "N,selected,average,target,residual"
    assert lines[1].split(",")[2] == "0.0"
    assert lines[3].split(",")[2] == "-0.014"


def test_exit_codes():
    assert main(["count", "--poly", "0,0,1", "--k", "2", "--N", "100"]) == 4
    assert main(["density", "--poly", "1,0,1", "--k", "1", "--P", "100"]) == 2
    assert main(["eftail", "--poly", "1,0,1", "--k", "2",
                 "--N", "10000000"]) == 3
    assert main(["nonsense"]) == 2


def test_csv_byte_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["count", "--poly", "1,0,1", "--k", "2", "--N", "20000",
            "--checkpoints", "100,20000", "--P", "10000"]
    assert main([*argv, "--threads", "1", "--out", str(a)]) == 0
    assert main([*argv, "--threads", "8", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_repro_registry_complete():
    assert set(REPRO) == {"pnt", "carlitz", "estermann", "hb17",
                          "browning18", "thm11", "cor12", "thm31", "thm41",
                          "cor42", "thm51"}


def test_repro_writes_artifacts(tmp_path):
    rc = main(["repro", "browning18", "--out", str(tmp_path)])
    assert rc == 0
    csv_path = tmp_path / "browning18.csv"
    json_path = tmp_path / "browning18.json"
    assert csv_path.exists() and json_path.exists()
    doc = json.loads(json_path.read_text())
    assert doc["experiment"] == "browning18"
    assert set(doc["config"]) == {"name", "coeffs", "k", "N", "checkpoints",
                                  "system", "condition", "argmap", "P",
                                  "out"}
    assert "tolerances" in doc and "hypothesis_checks" in doc
    assert doc["results"]["within_tolerance"] is True
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "N,count,target,abs_error,rel_error"
    assert len(lines) == 4


def test_console_script_stdout():
    proc = subprocess.run(
        [sys.executable, "-m", "powerfree.cli", "sieve", "--N", "6"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "n,omega,mobius,squarefree,liouville"
    assert proc.stdout.splitlines()[2] == "2,1,-1,1,-1"


def test_parser_threads_default():
    ap = build_parser()
    ns = ap.parse_args(["sieve", "--N", "10"])
    assert ns.threads == max(1, os.cpu_count() or 1)
