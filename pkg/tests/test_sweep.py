import csv
import io
import math

import numpy as np
import pytest

from cavityswitch import Axis, ModelParams, SweepSpec, make_point, preset, run_sweep, scattering_amplitudes
from cavityswitch.sweep import CSV_COLUMNS, PRESETS, analytic_loci, bisect_transmission, invert_dispersion, worker_count

K_RES = 2 * math.pi / 3


def test_presets_present():
    assert set(PRESETS) == {"fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig3a", "fig3b", "fig3c"}
    with pytest.raises(KeyError, match="fig9"):
        preset("fig9")


def test_fig2_preset_parameters():
    for name in ("fig2a", "fig2b", "fig2c", "fig2d", "fig2e"):
        base = preset(name).base
        assert base.omega_2 - base.omega_a == 2 and base.xi == 2 and base.g_b == 1
    assert preset("fig2c").base.delta_b == -3
    assert preset("fig2b").base.n == 30


def test_fig3_operating_points():
    for name, da in (("fig3a", 0.8), ("fig3b", -0.8)):
        spec = preset(name)
        assert make_point(spec.base, spec.k).delta_a == pytest.approx(da, abs=1e-14)
    spec = preset("fig3c")
    pt = make_point(spec.base, spec.k)
    assert (pt.delta_a, pt.delta_b) == pytest.approx((1.0, 2.0), abs=1e-14)


def test_fig2e_dip():
    table = run_sweep(preset("fig2e"))
    assert len(table.rows) == 1001
    for k in (K_RES, -K_RES):
        p = preset("fig2e").base
        assert scattering_amplitudes(p, make_point(p, k)).T < 1e-12
    in_band = [r for r in table.rows if r.branch not in ("BandEdge",)]
    dips = [r for r in in_band if abs(abs(r.axis_value) - K_RES) > 1e-9]
    assert min(r.T for r in dips) > 0


def test_fig2a_fig2b_agree_at_resonance():
    a = run_sweep(preset("fig2a", m=7, lo=-K_RES, hi=K_RES))
    b = run_sweep(preset("fig2b", m=7, lo=-K_RES, hi=K_RES))
    assert a.T[0] == pytest.approx(1.0, abs=1e-12)
    assert abs(a.T[0] - b.T[0]) < 1e-12 and abs(a.T[-1] - b.T[-1]) < 1e-12


def test_fig2c_shifted_transmission_window():
    # delta_b = -3 moves full transmission to delta_a = 3
    spec = preset("fig2c")
    loci = analytic_loci(spec)["full_transmission"]
    assert loci, "expected an in-band transmission point"
    for k in loci:
        assert make_point(spec.base, k).delta_a == pytest.approx(3.0, abs=1e-12)


def test_fig3a_loci():
    spec = preset("fig3a")
    loci = analytic_loci(spec)
    assert loci["full_transmission"] == pytest.approx([-0.8])
    assert loci["full_reflection"] == pytest.approx([1 / 0.8 - 0.8])
    table = run_sweep(spec)
    assert table.rows[0].axis_value == -5 and table.rows[-1].axis_value == 5
    for x in loci["full_transmission"]:
        p = spec.params_at(x)
        assert scattering_amplitudes(p, make_point(p, spec.k)).T == pytest.approx(1.0, abs=1e-12)


def test_fig3b_mirror_loci():
    loci = analytic_loci(preset("fig3b"))
    assert loci["full_transmission"] == pytest.approx([0.8])
    assert loci["full_reflection"] == pytest.approx([-1 / 0.8 + 0.8])


def test_fig3c_reflection_then_decoupling():
    spec = preset("fig3c")
    assert analytic_loci(spec)["full_reflection"] == pytest.approx([3.0])
    p = spec.params_at(3.0)
    assert scattering_amplitudes(p, make_point(p, spec.k)).R == pytest.approx(1.0, abs=1e-12)
    table = run_sweep(spec)
    x = table.axis_values
    assert np.all(table.T[x >= 200] > 0.99)
    assert table.T[-1] > table.T[x >= 200][0]


def test_bisect_half_transmission():
    spec = preset("fig3a")
    x = bisect_transmission(spec, 0.5, -0.8, 0.45)
    p = spec.params_at(x)
    assert scattering_amplitudes(p, make_point(p, spec.k)).T == pytest.approx(0.5, abs=1e-10)


def test_sweep_is_deterministic():
    a = run_sweep(preset("fig3a", m=101)).to_csv()
    b = run_sweep(preset("fig3a", m=101)).to_csv()
    assert a == b


def test_csv_layout(tmp_path):
    table = run_sweep(preset("fig2a", m=5))
    text = table.to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 6
    assert rows[1][0] == "k" and float(rows[1][1]) == -math.pi
    path = tmp_path / "out.csv"
    table.to_csv(path)
    assert path.read_text() == text


def test_error_rows_are_tagged():
    # delta_a + delta_b = 0 and sin k = 0 on the left band edge
    base = ModelParams(omega_a=0, omega_b=1, omega_2=-2, omega_3=-1, xi=1, g_b=1, n=1)
    table = run_sweep(SweepSpec(base, Axis.K, -math.pi, math.pi, m=5))
    branches = table.branches
    assert branches[2] == "error:DegenerateBandEdge"
    assert math.isnan(table.rows[2].T)
    assert table.summary()["errors"] == 1
    assert branches[0] == "BandEdge"


def test_oracle_checked_sweep(monkeypatch):
    monkeypatch.setenv("WQED_THREADS", "2")
    assert worker_count() <= 2
    spec = preset("fig3c", m=21, oracle_check=True)
    table = run_sweep(spec)
    header = table.to_csv().splitlines()[0].split(",")
    assert header[-2:] == ["dr_abs", "dt_abs"]
    summary = table.summary()
    assert summary["max_dr"] < 1e-10 and summary["max_dt"] < 1e-10


def test_integer_n_marker():
    table = run_sweep(preset("fig3c", m=11, lo=0, hi=10))
    assert [r.integer_n for r in table.rows] == [True] * 11
    table = run_sweep(preset("fig3c", m=3, lo=0, hi=0.5))
    assert [r.integer_n for r in table.rows] == [True, False, False]


@pytest.mark.parametrize(
    "kwargs",
    [dict(lo=1.0, hi=1.0), dict(lo=2.0, hi=1.0), dict(m=1), dict(m=2.5)],
)
def test_bad_ranges(kwargs):
    with pytest.raises(ValueError):
        preset("fig3a", **kwargs)


def test_gb2n_axis_rejects_negative():
    with pytest.raises(ValueError):
        preset("fig3c", lo=-1.0)


def test_fixed_k_required():
    with pytest.raises(ValueError):
        SweepSpec(preset("fig3a").base, Axis.DELTA_B, -1, 1)


def test_k_axis_clipped():
    spec = SweepSpec(preset("fig2a").base, "k", -10, 10, m=3)
    assert spec.lo == -math.pi and spec.hi == math.pi


def test_invert_dispersion_round_trip():
    base = preset("fig2a").base
    k = invert_dispersion(base, 2.0)
    assert k == pytest.approx(K_RES)
    assert invert_dispersion(base, 9.0) is None


def test_summary_excludes_band_edges():
    s = run_sweep(preset("fig2a", m=201)).summary()
    assert s["band_edge"] == 3  # k = -pi, 0 and pi
    assert 0 < s["T_min"] < s["T_max"] < 1
    assert s["rows"] == 201 and s["errors"] == 0
