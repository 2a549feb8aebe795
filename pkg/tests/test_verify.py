"""Theorem runners: every claim of each report should pass."""

from __future__ import annotations

import pytest

from lieclassical.fields import GF, QQ
from lieclassical import verify


def failing(rep):
    return [(c.label, c.expected, c.computed) for c in rep.claims if not c.passed]


def test_thm_1_1_m4():
    rep = verify.run_thm_1_1(4)
    assert failing(rep) == []
    labels = [c.label for c in rep.claims]
    assert "factor count" in labels
    assert "s in L^(2) iff 4|m" in labels


def test_thm_1_1_m2_small_case():
    rep = verify.run_thm_1_1(2)
    assert failing(rep) == []
    assert any(c.label == "L = h(1)" for c in rep.claims)


def test_thm_1_1_rejects_odd_m():
    with pytest.raises(ValueError):
        verify.run_thm_1_1(5)


def test_thm_1_2_m4_dichotomy():
    rep = verify.run_thm_1_2(4)
    assert failing(rep) == []
    # identity form has square discriminant over GF(2), so the runner
    # walks the S + R structure of Prop 10.2
    labels = [c.label for c in rep.claims]
    assert "R is the only proper nonzero submodule" in labels
    assert "L^(1) irreducible as L-module" in labels


def test_thm_1_2_m3():
    rep = verify.run_thm_1_2(3)
    assert failing(rep) == []
    assert any(c.label == "L^(1) simple" for c in rep.claims)


def test_thm_1_3_gf5_m4():
    rep = verify.run_thm_1_3(4, GF(5))
    assert failing(rep) == []


def test_thm_1_3_m2():
    rep = verify.run_thm_1_3(2, GF(7))
    assert failing(rep) == []
    assert any(c.label == "M = s (m=2)" for c in rep.claims)


def test_thm_1_4_m4_square_disc_splits():
    # identity Gram has square discriminant: the top factor gl/M = so(4)
    # refines into two 3-dimensional pieces
    rep = verify.run_thm_1_4(4, GF(3))
    assert failing(rep) == []
    assert any(
        c.label == "gl/M splits (m=4, square discriminant)" for c in rep.claims
    )


def test_thm_1_4_m5_simple():
    rep = verify.run_thm_1_4(5, GF(7))
    assert failing(rep) == []
    assert any(c.label == "L simple" for c in rep.claims)


def test_thm_1_4_char0():
    rep = verify.run_thm_1_4(5, QQ)
    assert failing(rep) == []
    methods = {c.method for c in rep.claims}
    assert "mod-p" in methods


def test_note_9_2_full_lattice():
    rep = verify.run_note_9_2()
    assert failing(rep) == []
    assert any(
        c.label == "11 proper nonzero submodules (s plus 10 graphs)"
        for c in rep.claims
    )


def test_note_9_3():
    rep = verify.run_note_9_3()
    assert failing(rep) == []


def test_sl_series_char0():
    rep = verify.run_sl_series(3, QQ)
    assert failing(rep) == []


def test_sl_series_divisible_case():
    rep = verify.run_sl_series(3, GF(3))
    assert failing(rep) == []


def test_sl_series_excludes_2_2():
    with pytest.raises(ValueError):
        verify.run_sl_series(2, GF(2))


def test_sp_so_embedding_gf13():
    rep = verify.run_sp_so_embedding(2, GF(13))
    assert failing(rep) == []


def test_sl4_so6_gf7():
    rep = verify.run_sl4_so6(GF(7))
    assert failing(rep) == []
    assert any(c.label == "Hom_{sl(3)}(T, T*) = 0" for c in rep.claims)


def test_block_irreducibles():
    assert failing(verify.run_block_irreducibles(2, GF(5))) == []
    assert failing(verify.run_block_irreducibles(3, GF(3))) == []


def test_heisenberg_exceptional_case():
    rep = verify.run_heisenberg_cases(2, 2)
    assert failing(rep) == []
    labels = [c.label for c in rep.claims]
    assert "derived dims" in labels
    assert "R matches the polynomial module" in labels
    assert "U irreducible" in labels


def test_report_dict_schema():
    rep = verify.run_sl_series(2, GF(3))
    d = rep.to_dict()
    assert set(d) == {"case", "field", "m", "claims", "pass"}
    assert set(d["field"]) == {"char", "degree"}
    for claim in d["claims"]:
        assert set(claim) == {
            "label",
            "paper_ref",
            "expected",
            "computed",
            "pass",
            "method",
        }
    assert d["pass"] is True


def test_run_all_collects_errors():
    def boom():
        raise RuntimeError("nope")

    reports = verify.run_all([(boom, ())])
    assert len(reports) == 1
    assert not reports[0].passed
