"""Serialized report shapes: the CSV column contracts stay fixed."""

import math
from fractions import Fraction

from amenact.abelian import DirectSum, FiniteProduct, Subgroup
from amenact.actions import Action, h_alg_estimate, shift_endo
from amenact.duality import bridge_check
from amenact.folner import box_net, canonical_net, verify_folner
from amenact.integral import card, integral
from amenact.monoid import FreeAbelian, FreeCommutative, MSubset

N1 = FreeCommutative(1)
Z1 = FreeAbelian(1)


def test_defect_report_csv_columns():
    report = verify_folner(box_net(Z1), MSubset.of(Z1, [(1,)]), 4)
    lines = report.to_csv().strip().splitlines()
    assert lines[0] == "index,size,element,ratio"
    assert len(lines) == 1 + 4 * 2  # one row per element plus the whole-set row


def test_integral_estimate_csv_columns():
    est = integral(card(Z1), box_net(Z1), 3)
    lines = est.to_csv().strip().splitlines()
    assert lines[0] == "index,size,value,ratio"
    assert lines[1].startswith("1,3,")


def test_entropy_estimate_csv_columns():
    group = DirectSum(FiniteProduct((2,)), N1)
    alpha = Action(N1, group, [shift_endo(group, (1,))])
    seed = Subgroup.generated(group, [group.basis_vector((0,))])
    est = h_alg_estimate(alpha, seed, box_net(N1), 3)
    lines = est.to_csv().strip().splitlines()
    assert lines[0] == "index,size,count,ratio"
    assert lines[2].split(",")[2] == "4"  # exact order at index 2


def test_bridge_report_csv_columns():
    group = DirectSum(FiniteProduct((2,)), N1)
    alpha = Action(N1, group, [shift_endo(group, (1,))])
    seed = Subgroup.generated(group, [group.basis_vector((0,))])
    report = bridge_check(alpha, seed, box_net(N1), 3)
    lines = report.to_csv().strip().splitlines()
    assert lines[0] == "index,size,ell_trajectory,log_index,difference"
    assert all(line.rsplit(",", 1)[1] == "0.0" for line in lines[1:])


def test_canonical_linearization_meets_one_over_n():
    net = canonical_net(Z1).folner_net()
    test = MSubset.of(Z1, [(0,), (1,)])
    report = verify_folner(net, test, 12)
    for n in report.indices():
        per_element = [
            r.ratio for r in report.rows if r.index == n and r.element != "E"
        ]
        assert max(per_element) <= Fraction(1, n)
