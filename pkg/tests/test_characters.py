from fractions import Fraction

import pytest

from foldkit.characters import (
    QSeries,
    affine_data,
    ch_a,
    folded_affine_data,
    m_w,
    normalized_character,
    verify_cor322,
)
from foldkit.multiplicity import freudenthal
from foldkit.quiver import QuiverError, parse_quiver

from conftest import AFFINE_SL2, datum

SL2HAT = [[2, -2], [-2, 2]]
SL2HAT_SCALED = [[4, -4], [-4, 4]]


@pytest.fixture
def ad_sl2hat():
    return affine_data(datum(SL2HAT, labels=("0", "1")))


def test_affine_data_structure(ad_sl2hat):
    ad = ad_sl2hat
    assert ad.node0 == 0
    assert ad.delta == (1, 1)
    assert ad.duals == (1, 1)
    assert ad.dual_coxeter == 2
    assert ad.level((1, 0)) == 1
    assert ad.untwisted_convention


def test_affine_data_rejects_finite():
    with pytest.raises(QuiverError):
        affine_data(datum([[2, -1], [-1, 2]]))


def test_designated_node_must_leave_finite_type():
    tri = datum([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    ad = affine_data(tri, node0=2)
    assert ad.node0 == 2
    assert ad.delta == (1, 1, 1)


def test_m_w_values(ad_sl2hat):
    assert m_w(ad_sl2hat, (1, 0)) == Fraction(-1, 24)
    assert m_w(ad_sl2hat, (0, 1)) == Fraction(5, 24)
    assert m_w(ad_sl2hat, (0, 0)) == 0


def test_m_w_scaled_folded_datum():
    ad = affine_data(datum(SL2HAT_SCALED))
    assert m_w(ad, (1, 0)) == Fraction(-1, 24)


def test_normalized_character_leading_term(ad_sl2hat):
    s = normalized_character(ad_sl2hat, (1, 0), 6)
    exp, coeff = s.leading()
    assert exp == Fraction(-1, 24) and coeff == 1


def test_normalized_character_trivial_weight(ad_sl2hat):
    s = normalized_character(ad_sl2hat, (0, 0), 5)
    assert s.sorted_items() == [(Fraction(0), 1)]


def test_layer_sums_match_freudenthal_census(ad_sl2hat):
    depth = 6
    s = normalized_character(ad_sl2hat, (1, 0), depth)
    table = freudenthal(ad_sl2hat.datum, (1, 0), 2 * depth + 8)
    shift = Fraction(-1, 24)
    for n in range(depth + 1):
        layer = sum(m for nu, m in table.entries.items() if nu[0] == n)
        assert s.coeffs.get(shift + n, 0) == layer


def test_qseries_helpers():
    s = QSeries({Fraction(1, 2): 2, Fraction(-1, 3): 1})
    assert s.sorted_items()[0][0] == Fraction(-1, 3)
    assert s.tsv_lines() == ["-1/3\t1", "1/2\t2"]
    assert s.latex() == "q^{-1/3} + 2 q^{1/2}"
    t = QSeries({Fraction(1, 2): 2, Fraction(-1, 3): 1, Fraction(5): 0})
    assert s == t
    u = QSeries({Fraction(1, 2): 3, Fraction(-1, 3): 1})
    assert s.first_mismatch(u) == Fraction(1, 2)
    assert QSeries({}).latex() == "0"


def test_ch_a_zero_for_unstable_weight(cycle4_rotation):
    assert ch_a(cycle4_rotation, (1, 0, 0, 0), 4) == QSeries({})


def test_ch_a_trivial_weight(cycle4_rotation):
    s = ch_a(cycle4_rotation, (0, 0, 0, 0), 3)
    assert s.sorted_items() == [(Fraction(0), 1)]


def test_ch_a_needs_automorphism(a2_path):
    with pytest.raises(QuiverError):
        ch_a(a2_path, (1, 0), 2)


def test_ch_a_both_routes_agree(cycle4_rotation):
    w = (1, 0, 1, 0)
    fast = ch_a(cycle4_rotation, w, 4)
    checked = ch_a(cycle4_rotation, w, 4, with_crystal_check=True)
    assert fast == checked
    assert fast.leading() == (Fraction(-1, 24), 1)


def test_identity_fold_matches_plain_character():
    ident = parse_quiver("vertex 0 1\nedge e1 0 1\nedge e2 1 0\naut (0)\naffine_node 0\n"
                         "autedge e1->e1\nautedge e2->e2\n")
    w = (1, 0)
    s = ch_a(ident, w, 5)
    ad = folded_affine_data(parse_quiver(AFFINE_SL2))
    assert s == normalized_character(ad, w, 5)


def test_verify_cor322(cycle4_rotation):
    report = verify_cor322(cycle4_rotation, (1, 0, 1, 0), 5)
    assert report.verified
    assert report.mismatch_exponent is None
    report2 = verify_cor322(cycle4_rotation, (1, 0, 1, 0), 4, with_crystal_check=True)
    assert report2.verified


def test_verify_fault_injection_reports_layer(cycle4_rotation):
    report = verify_cor322(cycle4_rotation, (1, 0, 1, 0), 4, _inject_layer_error=(2, 1))
    assert not report.verified
    assert report.mismatch_exponent == Fraction(-1, 24) + 2


def test_verify_rejects_unstable_weight(cycle4_rotation):
    with pytest.raises(QuiverError):
        verify_cor322(cycle4_rotation, (1, 0, 0, 0), 3)


def test_twisted_fold_flagged_and_unshifted(cycle4_reflection):
    ad = folded_affine_data(cycle4_reflection)
    assert not ad.untwisted_convention
    assert ad.duals == (2, 1, 1)
    report = verify_cor322(cycle4_reflection, (1, 0, 1, 0), 3, with_crystal_check=True)
    assert report.verified
    assert any("unshifted" in n for n in report.notes)
    assert report.twisted_trace.leading()[0] == 0


def test_exponents_are_anomaly_plus_integers(cycle4_rotation):
    s = ch_a(cycle4_rotation, (1, 0, 1, 0), 5)
    base = Fraction(-1, 24)
    for e, c in s.sorted_items():
        assert (e - base).denominator == 1
        assert c > 0


def test_affine_node_default_when_unmarked():
    unmarked = parse_quiver("vertex 0 1\nedge e1 0 1\nedge e2 1 0\n")
    ad = folded_affine_data(unmarked)
    assert ad.node0 == 0
