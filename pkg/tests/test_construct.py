from __future__ import annotations

import pytest
from sympy import primerange

from designforge.catalog import (
    CYCLOTOMIC_WITNESSES_P,
    CYCLOTOMIC_WITNESSES_Q,
    SILVER_PRIMES,
    SILVER_SQUARE_PRIMES,
    get,
)
from designforge.construct import (
    aps_with_params,
    compose_ps_aps,
    cyclotomic_pps,
    cyclotomic_witnesses,
    fill,
    inflate,
    ps_product,
    silver_aps,
    silver_pps_p2,
    silver_witness,
    union_pps_pq,
)
from designforge.core import PairSet, PPSSpec, verify_pps

PS5 = PairSet(5, ((1, 2),))
PS13 = PairSet(13, ((1, 5), (2, 3), (4, 6)))


def test_silver_witness_basics():
    w = silver_witness(7)
    assert (w.theta, w.generates) == (4, True)
    w2 = silver_witness(7, square=True)
    assert (w2.modulus, w2.theta, w2.generates) == (49, 11, True)
    with pytest.raises(ValueError):
        silver_witness(17)  # 17 = 1 mod 8
    with pytest.raises(ValueError):
        silver_witness(15)


def test_silver_aps_examples():
    s, spec = silver_aps(7)
    assert s.pairs == ((2, 4),)
    assert (spec.alpha, spec.beta) == (1, 3)
    assert verify_pps(s, spec).valid

    s23, spec23 = silver_aps(23)
    assert len(s23.pairs) == 5
    assert verify_pps(s23, spec23).valid

    with pytest.raises(ValueError):
        silver_aps(17)


def test_silver_chain_structure():
    for p in (7, 23, 31, 47):
        s, spec = silver_aps(p)
        theta = silver_witness(p).theta
        for a, b in s.pairs:
            assert b == a * theta % p or a == b * theta % p


@pytest.mark.parametrize("p", SILVER_PRIMES)
def test_silver_aps_whole_family(p):
    s, spec = silver_aps(p)
    assert len(s.pairs) == (p - 3) // 4
    assert verify_pps(s, spec).valid


def test_silver_square_prime_table_recomputed():
    """The full below-2000 list of prime-square generator primes, from scratch."""
    candidates = [p for p in primerange(3, 2000) if p % 8 == 7]
    assert len(candidates) == 78
    computed = tuple(p for p in candidates
                     if silver_witness(p, square=True).generates)
    assert computed == SILVER_SQUARE_PRIMES
    assert len(computed) == 59


def test_aps_with_params():
    s, spec = aps_with_params(7, 2, 1)
    assert s.pairs == ((1, 4),)
    assert verify_pps(s, spec).valid

    s, spec = aps_with_params(7, 1, 4)  # beta 4 = -3, same excluded set as beta 3
    assert verify_pps(s, PPSSpec.aps(7, 1, 4)).valid

    with pytest.raises(ValueError):
        aps_with_params(7, 1, 2)  # 2 - 4 is not 0 mod 7
    with pytest.raises(ValueError):
        aps_with_params(7, 0, 1)


def test_inflate():
    inflated, spec = inflate(PS5, 7)
    assert inflated.v == 35 and len(inflated.pairs) == 7
    h = frozenset(range(0, 35, 5))
    assert spec == PPSSpec(35, h, h)
    assert verify_pps(inflated, spec).valid

    same, spec1 = inflate(PS5, 1)
    assert same.pairs == PS5.pairs

    for bad in (3, 9, 2):
        with pytest.raises(ValueError):
            inflate(PS5, bad)


def test_fill():
    outer, _ = inflate(PS5, 7)
    aps7, aps7_spec = aps_with_params(7, 2, 1)
    filled, spec = fill(outer, aps7, 5)
    assert spec == PPSSpec.aps(35, 10, 5)
    assert verify_pps(filled, spec).valid

    # a PS inner gives a PS outer
    outer65, _ = inflate(PS13, 5)
    filled, spec = fill(outer65, PS5, 13)
    assert spec == PPSSpec.ps(65)
    assert verify_pps(filled, spec).valid

    with pytest.raises(ValueError):
        fill(outer, aps7, 7)  # mismatched index
    with pytest.raises(ValueError):
        fill(outer65, aps7, 13)  # inner modulus mismatch


def test_compose_ps_aps():
    aps7, _ = aps_with_params(7, 2, 1)
    out, spec = compose_ps_aps(PS5, aps7)
    assert spec == PPSSpec.aps(35, 10, 5)
    assert verify_pps(out, spec).valid

    out, spec = compose_ps_aps(PS13, aps7)
    assert spec == PPSSpec.aps(91, 26, 13)
    assert verify_pps(out, spec).valid

    with pytest.raises(ValueError):
        compose_ps_aps(PS5, get("aps-27-3-6").pair_set())  # 27 = 3 mod 12


def test_ps_product():
    for sa, sb, n in ((PS5, PS5, 25), (PS5, PS13, 65), (PS13, PS13, 169)):
        out, spec = ps_product(sa, sb)
        assert spec == PPSSpec.ps(n)
        assert verify_pps(out, spec).valid
    with pytest.raises(ValueError):
        ps_product(PS5, PairSet(7, ((1, 4),)))


def test_cyclotomic_witnesses_match_known_table():
    for p, expected in CYCLOTOMIC_WITNESSES_P.items():
        q = 7 if p != 7 else 11
        if p <= q:
            continue
        got_p, _ = cyclotomic_witnesses(p, q)
        assert got_p == expected, p
    for q, expected in CYCLOTOMIC_WITNESSES_Q.items():
        p = 43 if q != 43 else 47
        if p <= q:
            continue
        _, got_q = cyclotomic_witnesses(p, q)
        assert got_q == expected, q


def test_cyclotomic_pps():
    s, spec = cyclotomic_pps(11, 7)
    assert len(s.pairs) == 15
    assert verify_pps(s, spec).valid

    s, spec = cyclotomic_pps(23, 7)
    assert len(s.pairs) == 33
    assert verify_pps(s, spec).valid
    # works above the hand-picked range too
    s, spec = cyclotomic_pps(59, 47)
    assert len(s.pairs) == (59 - 1) * (47 - 1) // 4
    assert verify_pps(s, spec).valid

    with pytest.raises(ValueError):
        cyclotomic_pps(7, 11)  # p > q violated
    with pytest.raises(ValueError):
        cyclotomic_pps(7, 3)
    with pytest.raises(ValueError):
        cyclotomic_pps(13, 7)  # 13 = 1 mod 4


def test_union_pps_pq():
    sp, _ = aps_with_params(23, 1, 5)
    sq, _ = aps_with_params(7, 2, 1)
    out, spec = union_pps_pq(23, 7, sp, sq)
    assert len(out.pairs) == 39
    assert spec.a1 == frozenset({0, 7, 161 - 7, 46, 161 - 46})
    assert spec.a2 == frozenset({0, 35, 161 - 35, 23, 161 - 23})
    assert verify_pps(out, spec).valid

    sp31, _ = silver_aps(31)
    out, spec = union_pps_pq(31, 7, sp31, sq)
    assert verify_pps(out, spec).valid

    with pytest.raises(ValueError):
        union_pps_pq(23, 3, sp, PairSet(3, ()))


def test_union_component_covers_are_disjoint():
    sp, _ = aps_with_params(23, 1, 5)
    sq, _ = aps_with_params(7, 2, 1)
    base, _ = cyclotomic_pps(23, 7)
    units = {z for pair in base.pairs for x in pair for z in (x, (-x) % 161)}
    from_p = {z for x, y in sp.pairs for z in (7 * x % 161, 7 * y % 161,
                                               -7 * x % 161, -7 * y % 161)}
    from_q = {z for x, y in sq.pairs for z in (23 * x % 161, 23 * y % 161,
                                               -23 * x % 161, -23 * y % 161)}
    assert not units & from_p and not units & from_q and not from_p & from_q


def test_silver_pps_p2():
    s, spec = silver_pps_p2(7, 1, 10)
    assert len(s.pairs) == 11
    assert spec.a1 == frozenset({0, 1, 48, 7, 42})
    assert verify_pps(s, spec).valid

    s, spec = silver_pps_p2(23, 1, 156)
    assert len(s.pairs) == 131
    assert verify_pps(s, spec).valid

    with pytest.raises(ValueError):
        silver_pps_p2(7, 1, 1)  # 2 - 1 is not 0 mod 49
    with pytest.raises(ValueError):
        silver_pps_p2(31, 1, 116)  # theta fails to generate over 31^2
    with pytest.raises(ValueError):
        silver_pps_p2(7, 7, 21)  # alpha not a unit


def test_silver_pps_p2_scaled_parameters():
    # beta must be a square root of 2*alpha^2; both signs name the same spec
    s, spec = silver_pps_p2(7, 3, 30 % 49)
    assert verify_pps(s, spec).valid
    assert spec.a1 == frozenset({0, 3, 46, 21, 28})


def test_constructions_verify_on_a_grid():
    """Every constructor output passes verification across a parameter sweep."""
    aps7, _ = aps_with_params(7, 2, 1)
    ps25, _ = ps_product(PS5, PS5)
    for s, spec in (
        silver_aps(31),
        aps_with_params(23, 2, 10),
        aps_with_params(31, 5, 9),   # 2*25 - 81 = -31
        compose_ps_aps(ps25, aps7),
        cyclotomic_pps(19, 11),
        cyclotomic_pps(43, 23),
        union_pps_pq(31, 23, silver_aps(31)[0], silver_aps(23)[0]),
        silver_pps_p2(7, 2, 20),
    ):
        assert verify_pps(s, spec).valid, spec


def test_constructed_aps_always_satisfy_necessary_condition():
    from designforge.core import SetKind, aps_necessary, infer_params

    aps7, _ = aps_with_params(7, 2, 1)
    outputs = [
        silver_aps(7)[0], silver_aps(23)[0], silver_aps(31)[0],
        aps_with_params(23, 2, 10)[0],
        compose_ps_aps(PS5, aps7)[0],
        compose_ps_aps(PS13, aps7)[0],
    ]
    for s in outputs:
        spec = infer_params(s)
        assert spec is not None and spec.kind is SetKind.APS
        assert aps_necessary(spec.v, spec.alpha, spec.beta)


def test_inflate_projection_recovers_input_classes():
    inflated, _ = inflate(PS13, 7)
    assert len(inflated.pairs) == 7 * len(PS13.pairs)
    base_classes = {frozenset((x, 13 - x)) | frozenset((y, 13 - y))
                    for x, y in PS13.pairs}
    for x, y in inflated.pairs:
        cls = frozenset((x % 13, (13 - x) % 13)) | frozenset((y % 13, (13 - y) % 13))
        assert cls in base_classes
