"""subadditive-integral: ratio tables, axiom sampling, the transform."""

import pytest

from amenact.folner import box_net, kernel_box_net
from amenact.integral import (
    SetFunction,
    card,
    card_pi,
    constant,
    fubini_check,
    integral,
    sample_axioms,
    shifted,
    theta,
    theta_function,
)
from amenact.monoid import (
    FiniteAbelianMonoid,
    FreeAbelian,
    FreeCommutative,
    MSubset,
    ProductMonoid,
    find_good_section,
    mod_hom,
    projection_hom,
)

N1 = FreeCommutative(1)
Z1 = FreeAbelian(1)
Z2 = FreeAbelian(2)


def test_card_integral_is_exactly_one():
    est = integral(card(Z1), box_net(Z1), 12)
    assert all(r.ratio == 1.0 for r in est.rows)
    assert est.tail == 1.0 and est.oscillation == 0.0


def test_constant_function_on_infinite_monoid_vanishes():
    est = integral(constant(Z1, 5.0), box_net(Z1), 40)
    assert est.rows[0].ratio == pytest.approx(5 / 3)
    assert est.tail == pytest.approx(5 / 81)
    assert est.rows[-1].ratio < est.rows[0].ratio


def test_constant_function_on_finite_monoid():
    g = FiniteAbelianMonoid((6,))
    est = integral(constant(g, 7.0), box_net(g), 5)
    assert all(r.ratio == pytest.approx(7 / 6) for r in est.rows)


def test_negative_function_rejected_at_construction():
    with pytest.raises(ValueError):
        SetFunction(Z1, lambda f: -len(f), "neg")


def test_shifted_by_identity_is_same_function():
    f = card(Z1)
    g = shifted(f, MSubset.of(Z1, [(0,)]))
    fi = box_net(Z1).subset(4)
    assert g(fi) == f(fi)


def test_shifted_card_grows_boxes():
    f = card(Z1)
    g = shifted(f, MSubset.of(Z1, [(0,), (1,)]))
    # [-n, n] * {0, 1} = [-n, n+1]
    assert g(box_net(Z1).subset(5)) == 12


def test_shift_invariance_of_the_integral():
    f = card_pi(mod_hom(Z1, (5,)))
    plain = integral(f, box_net(Z1), 40)
    moved = integral(shifted(f, MSubset.of(Z1, [(0,), (1,), (2,)])), box_net(Z1), 40)
    assert abs(plain.tail - moved.tail) <= plain.oscillation + moved.oscillation + 1e-9


def test_sample_axioms_card_passes():
    report = sample_axioms(card(Z2), Z2, trials=300, window=4, seed=9)
    assert report.ok and report.trials == 300


def test_sample_axioms_detects_violations():
    # |F|^2 is not subadditive
    f = SetFunction(Z1, lambda s: float(len(s) ** 2), "sq")
    report = sample_axioms(f, Z1, trials=200, window=5, seed=1)
    assert not report.ok
    assert any(v.axiom == "subadditive" for v in report.violations)


def test_integral_tail_bounded_by_value_at_identity():
    for f in (card(Z1), card_pi(mod_hom(Z1, (3,)))):
        est = integral(f, box_net(Z1), 30)
        one = MSubset.of(Z1, [(0,)])
        assert est.tail <= f(one) + est.oscillation + 1e-9


def test_linearity_on_the_sampled_cone():
    f = card(Z1)
    g = card_pi(mod_hom(Z1, (4,)))
    h = SetFunction(Z1, lambda s: f(s) + g(s), "f+g")
    net = box_net(Z1)
    ef, eg, eh = (integral(x, net, 30) for x in (f, g, h))
    assert abs(eh.tail - ef.tail - eg.tail) <= ef.oscillation + eg.oscillation + 1e-9


def test_automorphism_invariance_termwise():
    # the table of f . phi along (F_i) is the table of f along (phi F_i)
    f = card_pi(mod_hom(Z1, (5,)))
    net = box_net(Z1)
    composed = SetFunction(
        Z1, lambda s: f(MSubset(Z1, frozenset((-a,) for (a,) in s.elements))), "f.neg"
    )
    left = integral(composed, net, 20)
    for row, i in zip(left.rows, range(1, 21)):
        fi = net.subset(i)
        moved = MSubset(Z1, frozenset((-a,) for (a,) in fi.elements))
        assert row.value == f(moved)


def test_bounded_function_has_zero_tail():
    f = SetFunction(Z1, lambda s: min(float(len(s)), 7.0), "capped")
    est = integral(f, box_net(Z1), 60)
    assert est.tail == pytest.approx(7 / 121)


# --- card_pi ------------------------------------------------------------------


def test_card_pi_finite_kernel_exact_half():
    s = ProductMonoid((FiniteAbelianMonoid((2,)), FreeAbelian(1)))
    pi = projection_hom(s, (1,))
    est = integral(card_pi(pi), box_net(s), 16)
    assert all(r.ratio == 0.5 for r in est.rows)


def test_card_pi_identity_projection_is_card():
    pi = projection_hom(Z1, (0,))
    est = integral(card_pi(pi), box_net(Z1), 8)
    assert all(r.ratio == 1.0 for r in est.rows)


def test_card_pi_infinite_kernel_vanishes():
    pi = mod_hom(Z1, (5,))
    est = integral(card_pi(pi), box_net(Z1), 128)
    assert est.tail == pytest.approx(5 / 257)
    assert est.tail < 0.02


# --- theta and the product formula ---------------------------------------------


def test_theta_of_constant_vanishes_on_infinite_kernel():
    s = Z2
    pi = projection_hom(s, (0,))
    sigma = find_good_section(pi)
    y = MSubset.of(pi.target, [(0,), (1,)])
    val = theta(constant(s, 3.0), pi, sigma, y, None, 40)
    assert val == pytest.approx(3 / 81)


def test_theta_of_card_pi_is_size_over_kernel_order():
    s = ProductMonoid((FiniteAbelianMonoid((2,)), FreeAbelian(1)))
    pi = projection_hom(s, (1,))
    sigma = find_good_section(pi)
    f = card_pi(pi)
    for size in (1, 2, 3):
        y = MSubset.of(pi.target, [(i,) for i in range(size)])
        assert theta(f, pi, sigma, y, None, 6) == pytest.approx(size / 2)


def test_theta_at_identity_recovers_kernel_integral():
    s = Z2
    pi = projection_hom(s, (0,))
    sigma = find_good_section(pi)
    f = card(s)
    one = MSubset.of(pi.target, [(0,)])
    n_net = kernel_box_net(pi)
    assert theta(f, pi, sigma, one, n_net, 12) == pytest.approx(
        integral(SetFunction(s, lambda x: f(x), "f|N", probe=False), n_net, 12).tail
    )


def test_fubini_card_on_Z2_exact_on_both_sides():
    pi = projection_hom(Z2, (0,))
    sigma = find_good_section(pi)
    s_net = box_net(Z2)
    c_net = box_net(pi.target)
    report = fubini_check(card(Z2), pi, sigma, s_net, c_net, None, 16)
    assert report.left.tail == 1.0
    assert report.right.tail == pytest.approx(1.0)
    assert report.difference < 1e-9


def test_fubini_constant_zero_both_sides():
    pi = projection_hom(Z2, (0,))
    sigma = find_good_section(pi)
    report = fubini_check(
        constant(Z2, 2.0), pi, sigma, box_net(Z2), box_net(pi.target), None, 36
    )
    assert report.left.tail < 0.05 and report.right.tail < 0.05


def test_restriction_scaling_along_the_projection():
    # pulling a quotient-side function back along pi divides its average by |N|
    s = ProductMonoid((FiniteAbelianMonoid((2,)), FreeAbelian(1)))
    pi = projection_hom(s, (1,))
    c = pi.target
    f = SetFunction(c, lambda y: 3.0 * len(y), "3card")
    pulled = SetFunction(s, lambda x: f(pi.apply_set(x)), "pullback")
    est_c = integral(f, box_net(c), 24)
    est_s = integral(pulled, box_net(s), 24)
    assert est_s.tail == pytest.approx(est_c.tail / 2)


def test_theta_function_memoizes_on_the_quotient():
    pi = projection_hom(Z2, (0,))
    sigma = find_good_section(pi)
    th = theta_function(card(Z2), pi, sigma, None, 8)
    y = MSubset.of(pi.target, [(0,), (1,)])
    assert th(y) == th(y) == pytest.approx(2.0)
