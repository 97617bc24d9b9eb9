import math

import pytest

import gnap


def test_version():
    assert gnap.__version__ == "0.1.0"


def test_tables_and_correlation():
    t = gnap.table("mobius", 1000)
    assert len(t) == 1000
    assert t.at(1) == 1
    assert t.at(4) == 0
    assert t.at(6) == 1
    one = gnap.table("unit", 10000)
    s = gnap.correlation_sum(one, gnap.Progression(7, 3, 0, 10000), gnap.PolyPhase())
    assert abs(s - 1429) < 1e-9


def test_bad_function_name():
    with pytest.raises(gnap.ConfigError):
        gnap.table("nonesuch", 100)


def test_gowers_constant_sequence():
    r = gnap.gowers_norm([1.0 + 0.0j] * 16, 2)
    assert abs(r.norm - 1.0) < 1e-9


def test_gowers_progression_u1_is_mean():
    t = gnap.table("mobius", 2000)
    r = gnap.gowers_norm_in_progression(t, 1, 0, 2000, 1)
    s = gnap.correlation_sum(t, gnap.Progression(1, 0, 0, 2000), gnap.PolyPhase())
    assert abs(r.norm - abs(s) / 2000) < 1e-12


def test_phases_and_denominators():
    p = gnap.PolyPhase.from_doubles([0.25])
    assert p.degree() == 1
    assert p.frac(2) == 0.5
    ap = gnap.best_denominator(p, 100, 10)
    assert ap.r == 4
    assert ap.residual == 0.0
    golden = gnap.PolyPhase.from_doubles([0.6180339887498949])
    assert gnap.best_denominator(golden, 10000, 100).r == 89


def test_equidistribution():
    golden = gnap.PolyPhase.from_doubles([0.6180339887498949])
    rep = gnap.equidist_defect(golden, 5000, 0.1)
    assert rep.equidistributed
    fifth = gnap.PolyPhase.from_doubles([0.2])
    rep2 = gnap.equidist_defect(fifth, 5000, 0.1)
    assert not rep2.equidistributed
    assert rep2.witness_step == 5


def test_congruence_merge():
    m = gnap.congruence_merge(1, 1, 3, 5, 1, 2)
    assert m is not None
    assert (m.modulus, m.residue) == (15, 7)
    assert gnap.congruence_merge(1, 1, 4, 6, 1, 2) is None


def test_composed_phase():
    p = gnap.PolyPhase.from_doubles([0.3])
    c = gnap.composed_phase(p, 4, 0)
    assert abs(c.eval(1) - p.eval(4)) < 1e-15


def test_type2_sum():
    spec = gnap.FSpec.random(4, 8000, 5, 1, 42)
    r = gnap.type2_sum(10, 200, 4, 0.1, spec)
    assert r.value >= 0.0
    assert r.normalized == pytest.approx(r.value / (10 * 10 * 200))


def test_lcm_stats():
    s = gnap.lcm_stats(2, 4)
    assert s.pair_count == 2
    assert s.mult_of(2, 6) == 1
    assert s.histogram == {1: 2}
    assert s.tail(1) == 2
    assert s.tail(2) == 0
    assert gnap.sigma_D(12, 1.0) == 5


def test_decay_rows():
    t = gnap.table("unit", 10000)
    rows = gnap.decay_table(t, 1, [10000], 0.4, 0.5)
    assert len(rows) == 1
    assert rows[0].Q == 31
    assert rows[0].exceptional_fraction == 1.0
    assert rows[0].mean == pytest.approx(1.0, abs=0.01)


def test_ramare_identity():
    spf = gnap.sieve_spf(1000)
    w = gnap.RamareWindow(3, 10)
    c = gnap.ramare_identity_check(15, w, spf)
    assert c.applicable and c.pass_
    assert gnap.ramare_weight(15, w, spf) == pytest.approx(1.0 / 3.0)
    cc = gnap.coprime_window_count(gnap.Progression(1, 0, 1, 100), gnap.RamareWindow(2, 10))
    assert cc.count == 22


def test_exceptional_scan():
    t = gnap.table("unit", 10000)
    rep = gnap.exceptional_scan(t, 30, 10000, 0, 2.0)
    assert len(rep.rows) == 30
    assert rep.exceptional_count == 0
    with pytest.raises(gnap.HypothesisError):
        gnap.exceptional_scan(t, 100, 10000, 0, 0.1)


def test_run_pipeline(tmp_path):
    ok, manifest = gnap.run(
        {
            "pipeline": "sieve",
            "function": "unit",
            "X": "500",
            "out_dir": str(tmp_path / "out"),
        }
    )
    assert ok
    assert "output.sieve.csv=rows:1," in manifest
    assert (tmp_path / "out" / "manifest.txt").exists()


def test_weyl_sum_zero_phase():
    assert gnap.weyl_sum(gnap.PolyPhase(), 100) == pytest.approx(1.0 + 0.0j)
    assert gnap.smoothness_norm(gnap.PolyPhase.from_doubles([0.3, 0.125]), 10) == pytest.approx(
        12.5
    )


def test_fspec_roundtrip(tmp_path):
    spec = gnap.FSpec.random(10, 2000, 3, 1, 7)
    path = str(tmp_path / "spec.json")
    gnap.save_fspec(spec, path)
    back = gnap.load_fspec(path)
    assert back.Q == spec.Q
    assert back.X == spec.X
    assert len(back.entries) == len(spec.entries)
    assert back.entries[0].prog.q == spec.entries[0].prog.q
    assert abs(gnap.eval_F(back, 100) - gnap.eval_F(spec, 100)) < 1e-9


def test_sigma_partition_unit():
    t = gnap.table("unit", 2000)
    spec = gnap.FSpec.random(5, 2000, 3, 1, 9)
    w = gnap.RamareWindow(3, 10)
    part = gnap.sigma_partition(t, spec, w)
    assert abs(part.residual) <= 1e-9 * (1.0 + part.abs_F_sum)
    gap = gnap.cauchy_schwarz_gap(t, spec, w, 4.0)
    assert gap.ok


def test_dyadic_phase_math():
    # 1/8 * n^2 composed with 2m+3: pinned quadratic example
    p = gnap.PolyPhase.from_doubles([0.0, 0.125])
    c = gnap.composed_phase(p, 2, 3)
    for mm in range(6):
        assert c.eval(mm) == pytest.approx(p.eval(2 * mm + 3), abs=1e-15)
    assert math.isclose(p.frac(2), 0.5)
