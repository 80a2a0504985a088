import pytest

from meshalg.dynkin import (
    LEVEL,
    SHIFT,
    Arrow,
    InvalidRank,
    NoRho,
    make_dynkin,
    sigma,
    tau_arrow,
    translate,
)


def test_coxeter_numbers():
    assert make_dynkin("A", 4).coxeter == 5
    assert make_dynkin("D", 5).coxeter == 8
    assert make_dynkin("E", 8).coxeter == 30
    assert make_dynkin("A", 1).coxeter == 2
    assert make_dynkin("D", 4).coxeter == 6
    assert make_dynkin("E", 6).coxeter == 12
    assert make_dynkin("E", 7).coxeter == 18


def test_labels_match_numbering():
    assert make_dynkin("A", 3).labels == (1, 2, 3)
    assert make_dynkin("D", 5).labels == (0, 1, 2, 3, 4)
    assert make_dynkin("E", 6).labels == (0, 1, 2, 3, 4, 5)


def test_invalid_ranks():
    for fam, rank in [("A", 0), ("D", 3), ("E", 5), ("E", 9), ("F", 4)]:
        with pytest.raises(InvalidRank):
            make_dynkin(fam, rank)


def test_translate_and_sigma():
    spec = make_dynkin("A", 3)
    assert translate((3, 2), 1) == (2, 2)
    a = Arrow(0, 0, LEVEL)  # (0,1) -> (0,2)
    assert spec.source(a) == (0, 1) and spec.target(a) == (0, 2)
    sa = sigma(a)
    assert sa == Arrow(-1, 0, SHIFT)
    assert spec.source(sa) == (-1, 2) and spec.target(sa) == (0, 1)
    # tau = sigma^2 keeps the kind and drops the column by one
    for arr in spec.window_arrows(-2, 2):
        ta = sigma(sigma(arr))
        assert ta == tau_arrow(arr)
        assert ta.kind == arr.kind and ta.k == arr.k - 1
    # sigma^4 = tau^2
    for arr in spec.window_arrows(-1, 1):
        x = arr
        for _ in range(4):
            x = sigma(x)
        assert x == tau_arrow(arr, 2)


def test_translation_quiver_axiom():
    # arrows x -> y biject with arrows tau(y) -> x on a window
    for fam, rank in [("A", 4), ("D", 5), ("E", 6)]:
        spec = make_dynkin(fam, rank)
        for v in spec.vertices(0, 3):
            for a in spec.arrows_out(v):
                y = spec.target(a)
                back = [b for b in spec.arrows_out(translate(y, 1)) if spec.target(b) == v]
                assert len(back) == 1


def test_rho_values():
    a4 = make_dynkin("A", 4)  # 2n = 4, n = 2
    assert a4.rho((0, 1)) == (-1, 4)
    d5 = make_dynkin("D", 5)
    assert d5.rho((2, 0)) == (2, 1)
    assert d5.rho((2, 3)) == (2, 3)
    e6 = make_dynkin("E", 6)
    assert e6.rho((0, 0)) == (0, 0)
    assert e6.rho((0, 1)) == (-2, 5)
    with pytest.raises(NoRho):
        make_dynkin("E", 7).rho((0, 1))


def test_rho_squared_is_tau_inverse_for_even_A():
    spec = make_dynkin("A", 4)
    for v in spec.vertices(-2, 2):
        assert spec.rho(spec.rho(v)) == translate(v, -1)
        assert spec.rho_inv(spec.rho(v)) == v


def test_rho_order_three_on_d4():
    spec = make_dynkin("D", 4)
    for v in spec.vertices(0, 1):
        w = spec.rho(spec.rho(spec.rho(v)))
        assert w == v
        assert spec.rho_inv(spec.rho(v)) == v


def test_nakayama_permutation_formulas():
    e7 = make_dynkin("E", 7)
    assert e7.nu((0, 2)) == (8, 2)
    a3 = make_dynkin("A", 3)
    assert a3.nu((0, 1)) == (0, 3)
    d4 = make_dynkin("D", 4)
    assert d4.nu((0, 2)) == (2, 2)
    e8 = make_dynkin("E", 8)
    assert e8.nu((0, 5)) == (14, 5)
    e6 = make_dynkin("E", 6)
    assert e6.nu((0, 0)) == (5, 0)
    assert e6.nu((0, 1)) == (3, 5)
    for fam, rank in [("A", 5), ("D", 6), ("E", 6), ("E", 7)]:
        spec = make_dynkin(fam, rank)
        for v in spec.vertices(-2, 2):
            assert spec.nu_inv(spec.nu(v)) == v


def test_nu_commutes_with_tau_and_rho():
    for fam, rank in [("A", 4), ("A", 5), ("D", 5), ("D", 6), ("E", 6)]:
        spec = make_dynkin(fam, rank)
        for v in spec.vertices(-2, 2):
            assert spec.nu(translate(v, 1)) == translate(spec.nu(v), 1)
            if spec.has_rho:
                assert spec.nu(spec.rho(v)) == spec.rho(spec.nu(v))


def test_arrow_image_lifts():
    spec = make_dynkin("D", 4)
    a = Arrow(0, 2, LEVEL)  # (0,2) -> (0,3)
    img = spec.arrow_image(spec.rho, a)
    assert spec.source(img) == (0, 2) and spec.target(img) == (0, 0)


def test_rho_commutes_with_tau_and_sigma():
    for fam, rank in [("A", 4), ("A", 5), ("D", 4), ("D", 5), ("E", 6)]:
        spec = make_dynkin(fam, rank)
        for v in spec.vertices(-2, 2):
            assert spec.rho(translate(v, 1)) == translate(spec.rho(v), 1)
        for a in spec.window_arrows(-2, 2):
            ra = spec.arrow_image(spec.rho, a)
            assert sigma(ra) == spec.arrow_image(spec.rho, sigma(a))
            assert spec.arrow_image(spec.rho, tau_arrow(a)) == tau_arrow(ra)
