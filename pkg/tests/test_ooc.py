from __future__ import annotations

from collections import Counter

import pytest

from designforge.catalog import get
from designforge.construct import aps_with_params, silver_aps
from designforge.core import BudgetExceededError, PairSet
from designforge.ooc import (
    SDF,
    SIGMA3,
    SIGMA5,
    SIGMA45,
    OOCode,
    is_maximal,
    max_codeword_bound,
    maximal_ooc_p2,
    maximal_ooc_pq,
    ooc_45v_from_ps,
    ooc_from_pairs,
    verify_ooc,
    verify_sdf,
)

PS13 = PairSet(13, ((1, 5), (2, 3), (4, 6)))


def test_sdf_fixtures():
    assert verify_sdf(SDF(3, 4, 4, SIGMA3)).valid
    assert verify_sdf(SDF(5, 5, 4, SIGMA5)).valid
    assert verify_sdf(SDF(45, 5, 4, SIGMA45)).valid
    assert not verify_sdf(SDF(3, 4, 4, ((0, 0, 1, 2),))).valid
    with pytest.raises(ValueError):
        SDF(3, 4, 4, ((1, 2),))


def test_ooc_code_validation():
    with pytest.raises(ValueError):
        OOCode(10, 3, ((1, 1, 2),))
    code = OOCode(10, 3, ((5, 1, 9),))
    assert code.codewords == ((1, 5, 9),)
    assert OOCode.from_json(code.to_json()) == code


def test_ooc_from_ps13_k4():
    code = ooc_from_pairs(PS13, 4)
    assert (code.n, code.k, len(code)) == (39, 4, 3)
    assert (1, 5, 8, 25) in code.codewords  # the image of the pair {1, 5}
    report = verify_ooc(code)
    assert report.differences_distinct
    assert report.leave == frozenset({0, 13, 26})
    assert report.is_maximum


def test_ooc_from_ps13_k5():
    code = ooc_from_pairs(PS13, 5)
    assert (code.n, code.k, len(code)) == (65, 5, 3)
    report = verify_ooc(code)
    assert report.differences_distinct and report.is_maximum
    assert len(report.leave) == 5
    assert report.leave == frozenset(z for z in range(65) if z % 13 == 0)


def test_ooc_from_aps():
    aps7, _ = aps_with_params(7, 2, 1)
    code = ooc_from_pairs(aps7, 4)
    assert (code.n, len(code)) == (21, 1)
    report = verify_ooc(code)
    assert report.differences_distinct and len(report.leave) == 9
    assert report.is_maximum  # 9 <= 12


def test_ooc_from_pairs_preconditions():
    with pytest.raises(ValueError):
        ooc_from_pairs(PS13, 6)
    with pytest.raises(ValueError):
        ooc_from_pairs(PairSet(13, ((1, 5),)), 4)  # not a valid PS/APS
    aps27 = get("aps-27-3-6").pair_set()
    with pytest.raises(ValueError):
        ooc_from_pairs(aps27, 4)  # gcd(27, 6) = 3
    ps25 = PairSet(25, ((1, 7), (2, 11), (3, 4), (8, 9), (6, 18), (16, 17),))
    # ps25 here is not verified; the gcd guard fires first for k = 5
    with pytest.raises(ValueError):
        ooc_from_pairs(ps25, 5)


def test_ooc_45v():
    code = ooc_45v_from_ps(PS13)
    assert (code.n, code.k, len(code)) == (585, 5, 29)
    report = verify_ooc(code)
    assert report.differences_distinct
    assert len(report.leave) == 5
    assert report.is_maximum
    assert len(code) == max_codeword_bound(585, 5)

    with pytest.raises(ValueError):
        ooc_45v_from_ps(PairSet(5, ((1, 2),)))  # gcd(5, 45) = 5
    with pytest.raises(ValueError):
        ooc_45v_from_ps(PairSet(13, ((1, 5),)))


def test_ooc_45v_17():
    ps17 = PairSet(17, ((1, 4), (2, 8), (3, 5), (6, 7)))
    code = ooc_45v_from_ps(ps17)
    assert (code.n, len(code)) == (765, 38)
    assert len(code) == max_codeword_bound(765, 5)
    report = verify_ooc(code)
    assert report.differences_distinct and report.is_maximum


def test_maximal_ooc_pq():
    sp, _ = aps_with_params(23, 1, 5)
    sq, _ = aps_with_params(7, 2, 1)
    code = maximal_ooc_pq(23, 7, sp, sq, 4)
    assert (code.n, len(code)) == (483, 39)
    report = verify_ooc(code)
    assert report.differences_distinct
    assert len(report.leave) == 15
    assert not report.is_maximum  # 15 > 12
    assert len(code) == max_codeword_bound(483, 4) - 1
    maximal, witness = is_maximal(code)
    assert maximal and witness is None

    code5 = maximal_ooc_pq(23, 7, sp, sq, 5)
    assert (code5.n, len(code5)) == (805, 39)
    assert len(verify_ooc(code5).leave) == 25
    assert is_maximal(code5)[0]

    with pytest.raises(ValueError):
        maximal_ooc_pq(11, 7, sp, sq, 4)  # moduli mismatch with supplied sets


def test_maximal_ooc_p2():
    code = maximal_ooc_p2(7, 4)
    assert (code.n, len(code)) == (147, 11)
    report = verify_ooc(code)
    assert report.differences_distinct and len(report.leave) == 15
    assert len(code) == max_codeword_bound(147, 4) - 1
    assert is_maximal(code)[0]

    code5 = maximal_ooc_p2(7, 5)
    assert (code5.n, len(code5)) == (245, 11)
    assert len(verify_ooc(code5).leave) == 25
    assert is_maximal(code5)[0]

    with pytest.raises(ValueError):
        maximal_ooc_p2(31, 4)  # generation fails over 31^2


def test_removing_any_codeword_breaks_maximality():
    code = ooc_from_pairs(PS13, 4)
    for i in range(len(code)):
        sub = OOCode(39, 4, code.codewords[:i] + code.codewords[i + 1:])
        maximal, witness = is_maximal(sub)
        assert not maximal
        # the witness really is an addable codeword
        extended = OOCode(39, 4, sub.codewords + (witness,))
        assert verify_ooc(extended).differences_distinct


def test_repeated_codeword_is_flagged():
    code = ooc_from_pairs(PS13, 4)
    dup = OOCode(39, 4, (code.codewords[0], code.codewords[0]))
    report = verify_ooc(dup)
    assert not report.differences_distinct and report.repeated


def test_is_maximal_translation_invariant():
    code = ooc_from_pairs(PS13, 4)
    sub = OOCode(39, 4, code.codewords[1:])
    base = is_maximal(sub)[0]
    for shift in (1, 7, 20):
        translated = OOCode(39, 4, tuple(
            tuple((x + shift) % 39 for x in cw) for cw in sub.codewords))
        assert is_maximal(translated)[0] == base


def test_is_maximal_budget():
    # a single tiny codeword in a large ring leaves nearly everything open
    code = OOCode(997, 4, ((0, 1, 5, 20),))
    with pytest.raises(BudgetExceededError):
        is_maximal(code)


def test_first_coordinate_projections_are_sdfs():
    ps13 = PS13
    code4 = ooc_from_pairs(ps13, 4)
    for cw in code4.codewords:
        assert sorted(x % 3 for x in cw) == sorted(x % 3 for x in SIGMA3[0])
    code5 = ooc_from_pairs(ps13, 5)
    for cw in code5.codewords:
        assert sorted(x % 5 for x in cw) == sorted(x % 5 for x in SIGMA5[0])
    # the 45v code reproduces the full block family once per pair
    code45 = ooc_45v_from_ps(ps13)
    projected = Counter(tuple(sorted(x % 45 for x in cw)) for cw in code45.codewords)
    expected = Counter()
    for block in SIGMA45:
        expected[tuple(sorted(b % 45 for b in block))] += len(ps13.pairs)
    expected[tuple(sorted((0, 1, 3, 29, 35)))] += 1
    expected[tuple(sorted((0, 5, 20, 27, 41)))] += 1
    assert projected == expected


def test_leave_structure_for_pq_code():
    sp, _ = silver_aps(23)
    sq, _ = aps_with_params(7, 2, 1)
    code = maximal_ooc_pq(23, 7, sp, sq, 4)
    leave = verify_ooc(code).leave
    n = 483
    # element of the leave are 0 mod 3 with second coordinate +-2q or +-2p
    # scaled parameters, or +-1 mod 3 with the beta pattern
    by_residue = Counter(z % 3 for z in leave)
    assert by_residue == Counter({0: 5, 1: 5, 2: 5})
