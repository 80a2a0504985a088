import pytest

from meshalg import make_dynkin
from meshalg.groups import GroupSpec, InvalidGroup
from meshalg.invariants import (
    H_subgroup,
    UnsupportedType,
    cy_dimensions,
    invariant_report,
    n_cy_min,
    o2,
    period,
    symmetry_class,
    vertex_order_u,
)


def spec(fam, rank):
    return make_dynkin(fam, rank)


def test_o2():
    assert [o2(k) for k in (1, 2, 3, 4, 12, 40)] == [0, 1, 0, 2, 2, 3]


def test_H_subgroup_examples():
    assert H_subgroup(spec("D", 5), 2, 1, 0) == "Z"  # m+t = 3 odd
    assert H_subgroup(spec("E", 6), 2, 2, 0) == "2Z"  # m+t = 4 even
    assert H_subgroup(spec("A", 7), 5, 2, 0) == "Z"  # type A always Z
    assert H_subgroup(spec("E", 6), 2, 2, 2) == "Z"  # char 2 always Z


def test_symmetry_examples():
    # (E7, 4, 1): 4 | 8, m even -> symmetric
    assert symmetry_class(spec("E", 7), 4, 1, 0) == (True, True)
    # L2^(1) = (A4, 1, 2): 2m-1 = 1 divides 2n-1 = 3 -> symmetric
    assert symmetry_class(spec("A", 4), 1, 2, 0) == (True, True)
    # (D4, m, 3) never weakly symmetric
    for m in range(1, 6):
        assert symmetry_class(spec("D", 4), m, 3, 0) == (False, False)
    # (E7, 4, 1) but odd m: weakly symmetric not symmetric over char 0
    assert symmetry_class(spec("E", 7), 1, 1, 0) == (True, False)
    assert symmetry_class(spec("E", 7), 1, 1, 2) == (True, True)
    # A_{2n-1} t=2 requires odd quotient: (A5, 1, 2): c/2-1 = 2, quotient 2 even
    assert symmetry_class(spec("A", 5), 1, 2, 0) == (False, False)
    assert symmetry_class(spec("A", 5), 2, 2, 0) == (True, True)


def test_period_examples():
    # every preprojective algebra (m, t) = (1, 1) has period 6
    for fam, rank in [("A", 3), ("A", 6), ("D", 4), ("D", 7), ("E", 6), ("E", 7), ("E", 8)]:
        assert period(spec(fam, rank), 1, 1, 0) == 6
    assert period(spec("A", 2), 2, 1, 0) == 4  # |Q0| = 4
    assert period(spec("A", 2), 2, 1, 2) == 4
    assert period(spec("A", 2), 2, 2, 0) == 6  # L1^(2): 2|Q0| = 6
    assert period(spec("A", 2), 2, 2, 2) == 3
    assert period(spec("A", 4), 1, 2, 0) == 6  # L2^(1)
    assert period(spec("D", 4), 1, 3, 0) == 6
    assert period(spec("D", 4), 2, 3, 0) == 6
    assert period(spec("E", 7), 4, 1, 0) == 3 * 4 // 1  # m even: 3m/gcd(m, 9)


def test_period_rejects_A1():
    with pytest.raises(UnsupportedType):
        period(spec("A", 1), 2, 1, 0)
    with pytest.raises(UnsupportedType):
        cy_dimensions(spec("A", 1), 2, 1, 0)
    with pytest.raises(UnsupportedType):
        invariant_report(spec("A", 1), 1, 1, 0)


def test_cy_examples():
    # (A3, 2, 1): gcd(2, 4) = 2 -> not stably CY
    assert cy_dimensions(spec("A", 3), 2, 1, 0) == (False, None, None)
    # (A3, 3, 1): 4u = -1 mod 3 -> u = 2 -> 6u+2 = 14
    assert cy_dimensions(spec("A", 3), 3, 1, 0) == (True, 14, 14)
    # L1^(3): CY 0, CYF 2m-1 = 5
    assert cy_dimensions(spec("A", 2), 3, 2, 0) == (True, 0, 5)
    assert cy_dimensions(spec("A", 2), 3, 2, 2) == (True, 0, 0)
    assert cy_dimensions(spec("A", 2), 4, 1, 0) == (True, 0, 0)
    # (D4, m, 3) never stably CY
    for m in (1, 2, 3):
        assert cy_dimensions(spec("D", 4), m, 3, 0) == (False, None, None)


def test_n_cy_examples():
    assert n_cy_min(spec("D", 4), 3, 3) is None
    # (A3, 3, 1): s = 2s'+1 with 4s' = -1 mod 3 -> s' = 2 -> 5
    assert n_cy_min(spec("A", 3), 3, 1) == 5
    # (E7, 1, 1): everything holds mod 1 -> min 1
    assert n_cy_min(spec("E", 7), 1, 1) == 1
    with pytest.raises(UnsupportedType):
        n_cy_min(spec("A", 2), 1, 1)


def test_vertex_order_examples():
    assert vertex_order_u(spec("A", 3), 2, 1) == 2
    for m in (1, 2, 5):
        assert vertex_order_u(spec("D", 4), m, 3) == m
    assert vertex_order_u(spec("E", 7), 1, 1) == 1


def _t_doubles(fam, rank, m, t, char):
    """The doubling subgroup from the period theorem's proof: T = 2Z for
    (A_r, t=2) over char != 2, else H."""
    s = spec(fam, rank)
    if char != 2 and s.family == "A" and t == 2:
        return "2Z"
    return H_subgroup(s, m, t, char)


def _admissible(fam, rank, t):
    if t == 1:
        return True
    if t == 2:
        return (fam == "A" and rank >= 2) or (fam == "D" and rank >= 5) or (fam, rank) == ("E", 6)
    return (fam, rank) == ("D", 4)


GRID = [
    (fam, rank)
    for fam, rank in [("A", 3), ("A", 4), ("A", 5), ("A", 6), ("A", 7),
                      ("D", 4), ("D", 5), ("D", 6), ("E", 6), ("E", 7), ("E", 8)]
]


def test_period_equals_3u_or_6u_consistency():
    # restates the proof structure: period = 3u unless char != 2, u odd and
    # the doubling subgroup is 2Z (the subgroup is T for A_r t=2, else H)
    for fam, rank in GRID:
        s = spec(fam, rank)
        for m in range(1, 9):
            for t in (1, 2, 3):
                if not _admissible(fam, rank, t):
                    continue
                for char in (0, 2):
                    u = vertex_order_u(s, m, t)
                    p = period(s, m, t, char)
                    doubling = (
                        char != 2 and u % 2 == 1 and _t_doubles(fam, rank, m, t, char) == "2Z"
                    )
                    assert p == (6 * u if doubling else 3 * u), (fam, rank, m, t, char)


def test_cy_dim_is_2_mod_3_and_below_cyf():
    for fam, rank in GRID:
        s = spec(fam, rank)
        for m in range(1, 9):
            for t in (1, 2, 3):
                if not _admissible(fam, rank, t):
                    continue
                for char in (0, 2):
                    stably, cy, cyf = cy_dimensions(s, m, t, char)
                    if stably:
                        assert cy == cyf
                        assert cy % 3 == 2 or cy == 0, (fam, rank, m, t, char, cy)
                    else:
                        assert cy is None and cyf is None


def test_symmetric_implies_weakly_and_H():
    for fam, rank in GRID:
        s = spec(fam, rank)
        for m in range(1, 9):
            for t in (1, 2, 3):
                if not _admissible(fam, rank, t):
                    continue
                for char in (0, 2):
                    wk, sym = symmetry_class(s, m, t, char)
                    if sym:
                        assert wk
                        assert H_subgroup(s, m, t, char) == "Z", (fam, rank, m, t)


def test_report_fields(algebra):
    rep = invariant_report(spec("A", 3), 3, 1, 0)
    d = rep.to_dict()
    assert d["period"] == 18 and d["cy_dim"] == 14 and d["stably_calabi_yau"]
    assert d["loewy_length"] == 3
    assert d["n_cy_min"] == 5
