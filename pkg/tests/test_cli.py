import dataclasses
import json
import math
import os
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lovecap import cli, selector, small, tables
from lovecap.errors import ValidityError
from lovecap.special import constants


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def field(out, name):
    return re.search(rf"^{name}\s+(\S+)", out, re.M).group(1)


def test_capacitance_large_method(capsys):
    code, out, _ = run(capsys, "capacitance", "--kappa", "1e6", "--method", "large")
    assert code == 0
    assert float(field(out, "C")) == pytest.approx(1 / math.pi + 2 / (math.pi**2 * 1e6), rel=1e-12)
    assert field(out, "method") == "large"


def test_capacitance_auto_small(capsys):
    code, out, _ = run(capsys, "capacitance", "--kappa", "0.1")
    assert code == 0
    assert field(out, "method") == "small(order=7)"
    assert float(field(out, "C")) == pytest.approx(small.eval_small_kappa(0.1), rel=1e-14)


def test_capacitance_auto_nystrom(capsys):
    code, out, _ = run(capsys, "capacitance", "--kappa", "2", "--method", "auto")
    assert code == 0
    assert field(out, "method") == "nystrom"
    assert float(field(out, "error_estimate")) <= 1e-10


def test_capacitance_out_of_range_names_valid_method(capsys):
    code, _, err = run(capsys, "capacitance", "--kappa", "0.5", "--method", "large")
    assert code != 0
    assert "'small'" in err
    code, _, err = run(capsys, "capacitance", "--kappa", "1e-3", "--method", "nystrom")
    assert code != 0 and "small" in err


def test_capacitance_physical_units(capsys):
    eps0 = 8.8541878128e-12
    code, out, _ = run(capsys, "capacitance", "--radius", "0.1", "--gap", "0.001", "--epsilon0", str(eps0))
    assert code == 0
    expected = 4 * math.pi * eps0 * 0.1 * small.eval_small_kappa(0.01)
    assert float(field(out, "capacitance_F")) == pytest.approx(expected, rel=1e-11)
    code, _, _ = run(capsys, "capacitance", "--radius", "0.1", "--gap", "0.001")
    assert code == 2
    code, _, _ = run(capsys, "capacitance")
    assert code == 2


def test_table_command(tmp_path, capsys):
    out_path = tmp_path / "table.csv"
    code, _, _ = run(capsys, "table", "--kmin", "0.1", "--kmax", "10", "--points", "5", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "kappa,C,method,error_estimate"
    methods = [line.split(",")[2] for line in lines[1:]]
    assert methods == ["small(order=7)", "small(order=7)", "nystrom", "nystrom", "large"]


def test_fig1_file(tmp_path, capsys):
    out_path = tmp_path / "fig1.csv"
    code, _, _ = run(capsys, "fig1", "--kmin", "0.1", "--kmax", "10", "--points", "3", "--out", str(out_path))
    assert code == 0
    raw = out_path.read_bytes()
    assert raw.startswith(b"kappa,C_nystrom,C_small_o6,C_large\n")
    assert b"\r" not in raw
    rows = tables.read_fig1(out_path)
    assert [r[0] for r in rows] == pytest.approx([0.1, 1.0, 10.0])
    k01, k1, k10 = rows
    assert k01[3] is None and k10[2] is None and k1[2] is None and k1[3] is None
    assert abs(k01[1] - k01[2]) < 1e-6
    assert abs(k10[1] - k10[3]) < 1e-8
    # re-evaluating at the parsed kappa reproduces the stored numbers
    assert small.eval_small_kappa(k01[0], 6) == pytest.approx(k01[2], rel=1e-11)
    assert b",NA" in raw


def test_fig1_rejects_bad_grid(capsys):
    code, _, err = run(capsys, "fig1", "--kmin", "2", "--kmax", "1")
    assert code == 1 and "kmin" in err


def test_fig1_unwritable_path(tmp_path, capsys):
    code, _, err = run(capsys, "fig1", "--points", "2", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 1 and "error" in err


def test_derive_coeffs_order_zero(tmp_path, capsys):
    out_path = tmp_path / "c.json"
    code, out, _ = run(capsys, "derive-coeffs", "--order", "0", "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text(encoding="utf-8"))
    entry = next(e for e in doc["entries"] if e["kind"] == "c" and (e["n"], e["m"], e["k"]) == (0, 0, 1))
    assert entry["poly_lnk"] == ["0.5"]
    assert doc["P"] == 0 and doc["precision"] == 50


def _max_deviation(out):
    return float(re.search(r"max relative deviation (\S+)", out).group(1))


def test_derive_coeffs_order_one_deviation(capsys):
    code, out, _ = run(capsys, "derive-coeffs", "-P", "1")
    assert code == 0
    assert _max_deviation(out) < 1e-30


def test_derive_coeffs_order_seven_deviation(tmp_path, capsys):
    code, out, _ = run(capsys, "--digits", "50", "derive-coeffs", "--order", "7", "--out", str(tmp_path / "c7.json"))
    assert code == 0
    line7 = re.search(r"^\s+7\s+\S+\s+(\S+)$", out, re.M)
    assert float(line7.group(1)) < 1e-25


def test_lieb_liniger_tonks(capsys):
    code, out, _ = run(capsys, "lieb-liniger", "--gamma", "1e4")
    assert code == 0
    assert float(field(out, "e")) == pytest.approx(math.pi**2 / 3, rel=0.05)
    assert field(out, "backend") == "nystrom"


def test_lieb_liniger_cross_backend(capsys):
    code, out, _ = run(capsys, "lieb-liniger", "--gamma", "1")
    assert code == 0
    diff = float(re.search(r"e\[small-series\].*difference (\S+)", out).group(1))
    assert diff < 1e-4


def test_lieb_liniger_negative_gamma(capsys):
    code, _, err = run(capsys, "lieb-liniger", "--gamma", "-1")
    assert code != 0 and "gamma" in err


def test_digits_flag_is_scoped(capsys, monkeypatch):
    monkeypatch.delenv("LOVECAP_PRECISION", raising=False)
    code, _, _ = run(capsys, "--digits", "30", "capacitance", "--kappa", "0.2")
    assert code == 0
    assert "LOVECAP_PRECISION" not in os.environ
    code, _, err = run(capsys, "--digits", "5", "capacitance", "--kappa", "0.2")
    assert code == 2


def test_check_subset_passes(capsys):
    code, out, _ = run(capsys, "check", "--criteria", "4,7,10")
    assert code == 0
    assert len(re.findall(r"^\[PASS\]", out, re.M)) == 3


def test_check_rejects_unknown_criterion(capsys):
    with pytest.raises(SystemExit):
        cli.main(["check", "--criteria", "42"])
    capsys.readouterr()


def test_check_detects_corrupted_constant(capsys, monkeypatch):
    def corrupted(digits=None):
        reg = constants(digits)
        return dataclasses.replace(reg, zeta3=reg.zeta3 * 1.01)

    monkeypatch.setattr(small, "constants", corrupted)
    monkeypatch.setattr(small, "_series_cache", {})
    code, out, _ = run(capsys, "check", "--criteria", "5")
    assert code == 1
    assert "[FAIL] criterion 5 series-rederivation" in out
    assert "failed: criterion 5" in out


# ---------------------------------------------------------------------------
# method selection


def test_auto_thresholds():
    assert selector.resolve_method(0.999) == "small"
    assert selector.resolve_method(1.0) == "nystrom"
    assert selector.resolve_method(4.0) == "nystrom"
    assert selector.resolve_method(4.001) == "large"
    assert selector.resolve_method(0.3, "large") == "large"


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-6, max_value=1e9, allow_nan=False))
def test_auto_stays_inside_validated_range(kappa):
    method = selector.resolve_method(kappa)
    lo, hi = selector.valid_range(method)
    assert lo <= kappa <= hi


def test_explicit_method_out_of_range():
    with pytest.raises(ValidityError, match="use method 'large'"):
        selector.capacitance(100.0, "small")
