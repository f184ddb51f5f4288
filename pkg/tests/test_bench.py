import math
import subprocess
import sys

import pytest

from greensynth import ConfigError, Medium, Observation, greens3d_exact
from greensynth.bench import (
    CSV_HEADER,
    DEFAULT_N_SWEEP,
    parse_config,
    run_suite,
)
from greensynth.contours import VARIANTS

MINIMAL = """
[case demo]
r = 1.4142135623730951
theta0 = 0.5235987755982988
"""

SMALL_SUITE = """
paths = linear, exact_sd_theta
rules = gauss_legendre
N_sweep = 8, 16, 32, 64
emit_maps = false

[case tiny]
r = 1.4142135623730951
theta0 = 0.5235987755982988
"""


def test_parse_minimal_defaults():
    cfg = parse_config(MINIMAL)
    assert len(cfg.cases) == 1
    case = cfg.cases[0]
    assert case.case_id == "demo"
    assert case.k0_real == 2 * math.pi
    assert cfg.n_sweep == DEFAULT_N_SWEEP
    assert cfg.paths == VARIANTS  # all six by default
    assert cfg.rules == ("riemann_midpoint", "gauss_legendre")
    assert case.delta_shift == 0.0 and case.imposed_loss == 0.0
    assert case.limit_scale == 1.0


def test_parse_regularizers():
    cfg = parse_config(MINIMAL + "delta_shift = 0.1\nimposed_loss = 0.0079577\n")
    case = cfg.cases[0]
    assert case.delta_shift == 0.1
    assert abs(case.imposed_loss - 0.0079577) < 1e-12
    # the configured loss fraction realizes k0'' = imposed_loss * k0'
    med = case.medium().with_imposed_loss(case.imposed_loss)
    assert abs(med.k0.imag - 0.0079577 * 2 * math.pi) < 1e-9


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ConfigError) as err:
        parse_config("bogus_key = 3\n" + MINIMAL)
    assert "line 1" in str(err.value)
    with pytest.raises(ConfigError) as err:
        parse_config(MINIMAL + "unknown_case_key = 1\n")
    assert "unknown case key" in str(err.value)
    with pytest.raises(ConfigError):
        parse_config("paths = linear\n")  # no cases
    with pytest.raises(ConfigError):
        parse_config(MINIMAL + "r = 2\n")  # duplicate key
    with pytest.raises(ConfigError):
        parse_config("N_sweep = 8, 4\n" + MINIMAL)
    with pytest.raises(ConfigError):
        parse_config("[case a]\ntheta0 = 0.5\n")  # missing r
    with pytest.raises(ConfigError) as err:
        parse_config("paths = warp\n" + MINIMAL)
    assert "warp" in str(err.value)


def test_parse_order_independent():
    a = parse_config("rules = gauss_legendre\npaths = linear\n" + MINIMAL)
    b = parse_config("paths = linear\nrules = gauss_legendre\n" + MINIMAL)
    assert a == b


def test_run_suite_schema_and_determinism(tmp_path):
    cfg = parse_config(SMALL_SUITE)
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    run_suite(cfg, out1)
    run_suite(cfg, out2)
    text1 = (out1 / "tiny.csv").read_text().splitlines()
    text2 = (out2 / "tiny.csv").read_text().splitlines()
    assert text1[0] == CSV_HEADER
    strip = lambda lines: [",".join(l.split(",")[:-1]) for l in lines]
    assert strip(text1) == strip(text2)  # identical apart from wall_ns
    # rows sorted by (path, rule, N) and E satisfies the result invariant
    obs = Observation.from_polar(1.4142135623730951, 0.5235987755982988)
    med = Medium(2 * math.pi + 0j)
    g = greens3d_exact(obs, med)
    keys = []
    for line in text1[1:]:
        cid, path, rule, n, ire, iim, e, _ = line.split(",")
        assert cid == "tiny"
        keys.append((path, rule, int(n)))
        value = complex(float(ire), float(iim))
        recomputed = 4 * math.pi * obs.r * abs(g - value)
        assert abs(recomputed - float(e)) <= 1e-12 * max(float(e), 1e-30)
    assert keys == sorted(keys)
    assert {k[0] for k in keys} == {"linear", "exact_sd_theta"}
    assert {k[2] for k in keys} == {8, 16, 32, 64}


def test_run_suite_emit_maps(tmp_path):
    cfg = parse_config(SMALL_SUITE.replace("emit_maps = false", "emit_maps = true"))
    report = run_suite(cfg, tmp_path / "maps")
    names = {p.name for p in report.map_paths}
    assert names == {"tiny.theta_map.csv", "tiny.sd_nodes.csv", "tiny.krho_loci.csv"}
    header = (tmp_path / "maps" / "tiny.theta_map.csv").read_text().splitlines()[0]
    assert header == "theta_re,theta_im,logabs_integrand,re_f"
    loci_header = (tmp_path / "maps" / "tiny.krho_loci.csv").read_text().splitlines()[0]
    assert loci_header == "k0_im,kz,krho_re,krho_im"
    nodes = (tmp_path / "maps" / "tiny.sd_nodes.csv").read_text().splitlines()
    assert nodes[0] == "theta_re,theta_im"
    assert len(nodes) == 101


def _run_cli(args):
    return subprocess.run([sys.executable, "-m", "greensynth.cli", *args],
                          capture_output=True, text=True)


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    proc = _run_cli(["run", "--config", str(bad), "--out", str(tmp_path / "o")])
    assert proc.returncode == 2
    assert "config error" in proc.stderr

    missing = _run_cli(["run", "--config", str(tmp_path / "nope.cfg"),
                        "--out", str(tmp_path / "o")])
    assert missing.returncode == 2

    good = tmp_path / "good.cfg"
    good.write_text(SMALL_SUITE)
    proc = _run_cli(["run", "--config", str(good), "--out", str(tmp_path / "out")])
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "out" / "tiny.csv").exists()
    assert "case tiny:" in proc.stdout
    # summary carries one classification line per (path, rule)
    assert "linear" in proc.stdout and "exact_sd_theta" in proc.stdout
    assert "slope" in proc.stdout


def test_cli_sommerfeld():
    proc = _run_cli(["sommerfeld", "--loss", "0.05", "--n", "400"])
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "PASS" in proc.stdout


def test_cli_selftest():
    proc = _run_cli(["selftest"])
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
