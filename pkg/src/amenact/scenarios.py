"""Built-in scenario catalog for the command-line runner.

Each scenario is a plain JSON-compatible dict; "demonstrates" says what
the run shows mathematically.  Everything here is desk-scale and exits 0.
"""

BUILTINS = {
    "example-doubling": {
        "kind": "entropy",
        "demonstrates": "x -> 4x on Z with seed {0,1}: trajectory counts 2^n, ratio log 2 at every box",
        "monoid": {"family": "N^d", "dim": 1},
        "group": {"family": "free", "rank": 1},
        "action": {"generators": [{"kind": "scalar", "a": 4}]},
        "seed": {"set": [[0], [1]]},
        "net": {"family": "box"},
        "prefix": 12,
        "checks": [
            {"type": "every_ratio", "value": 0.6931471805599453, "tol": 1e-9},
            {"type": "counts_power", "base": 2, "scale": 1},
        ],
    },
    "example-wide-seed": {
        "kind": "entropy",
        "demonstrates": "x -> 4x on Z with seed {0,1,4,5}: counts 4*3^(n-1), tail drifts to log 3",
        "monoid": {"family": "N^d", "dim": 1},
        "group": {"family": "free", "rank": 1},
        "action": {"generators": [{"kind": "scalar", "a": 4}]},
        "seed": {"set": [[0], [1], [4], [5]]},
        "net": {"family": "box"},
        "prefix": 12,
        "checks": [
            {"type": "counts_power", "base": 3, "scale": 4, "offset": -1},
            {"type": "tail", "value": 1.122585794705758, "tol": 1e-9},
        ],
    },
    "bernoulli-one-sided": {
        "kind": "entropy",
        "demonstrates": "one-sided coordinate shift on (Z/2)^(N): ratio exactly log 2 at every box",
        "monoid": {"family": "N^d", "dim": 1},
        "group": {"family": "direct-sum", "base": [2], "index": {"family": "N^d", "dim": 1}},
        "action": {"generators": [{"kind": "shift", "by": [1]}]},
        "seed": {"subgroup_basis": [[[[0], [1]]]]},
        "net": {"family": "box"},
        "prefix": 14,
        "checks": [{"type": "every_ratio", "value": 0.6931471805599453, "tol": 1e-9}],
    },
    "bernoulli-two-sided": {
        "kind": "entropy",
        "demonstrates": "two-sided coordinate shift on (Z/2)^(Z): ratio exactly log 2 at every box",
        "monoid": {"family": "Z^d", "dim": 1},
        "group": {"family": "direct-sum", "base": [2], "index": {"family": "Z^d", "dim": 1}},
        "action": {"generators": [{"kind": "shift", "by": [1]}]},
        "seed": {"subgroup_basis": [[[[0], [1]]]]},
        "net": {"family": "box"},
        "prefix": 8,
        "checks": [{"type": "every_ratio", "value": 0.6931471805599453, "tol": 1e-9}],
    },
    "truncating-shift": {
        "kind": "entropy",
        "demonstrates": "left truncating shift on (Z/3)^(N): every image of the seed dies, tail -> 0",
        "monoid": {"family": "N^d", "dim": 1},
        "group": {"family": "direct-sum", "base": [3], "index": {"family": "N^d", "dim": 1}},
        "action": {"generators": [{"kind": "shift", "by": [-1]}]},
        "seed": {"set": [[], [[[0], [1]]]]},
        "net": {"family": "box"},
        "prefix": 12,
        "checks": [{"type": "tail_below", "value": 0.1}],
    },
    "restricted-shift-doubles": {
        "kind": "entropy",
        "demonstrates": "shift by 2 on (Z/3)^(Z) with a two-coordinate seed: ratio exactly 2 log 3",
        "monoid": {"family": "Z^d", "dim": 1},
        "group": {"family": "direct-sum", "base": [3], "index": {"family": "Z^d", "dim": 1}},
        "action": {"generators": [{"kind": "shift", "by": [2]}]},
        "seed": {"subgroup_basis": [[[[0], [1]]], [[[1], [1]]]]},
        "net": {"family": "box"},
        "prefix": 6,
        "checks": [{"type": "every_ratio", "value": 2.1972245773362196, "tol": 1e-9}],
    },
    "quotient-vanishing": {
        "kind": "entropy",
        "demonstrates": "Z^2 acting through one shift coordinate on (Z/2)^(Z): ratio log2/(2n+1) -> 0",
        "monoid": {"family": "Z^d", "dim": 2},
        "group": {"family": "direct-sum", "base": [2], "index": {"family": "Z^d", "dim": 1}},
        "action": {"generators": [{"kind": "shift", "by": [0]}, {"kind": "shift", "by": [1]}]},
        "seed": {"subgroup_basis": [[[[0], [1]]]]},
        "net": {"family": "box"},
        "prefix": 16,
        "checks": [{"type": "tail_below", "value": 0.05}],
    },
    "card-pi-half": {
        "kind": "integral",
        "demonstrates": "image-count along Z/2 x Z -> Z: the ratio is exactly 1/2 at every index",
        "monoid": {"family": "product", "parts": [{"family": "finite", "factors": [2]}, {"family": "Z^d", "dim": 1}]},
        "function": {"kind": "card_pi", "hom": {"kind": "project", "coords": [1]}},
        "net": {"family": "box"},
        "prefix": 16,
        "checks": [{"type": "every_ratio", "value": 0.5, "tol": 1e-12}],
    },
    "card-pi-mod5": {
        "kind": "integral",
        "demonstrates": "image-count along Z -> Z/5: ratio 5/(2n+1) -> 0",
        "monoid": {"family": "Z^d", "dim": 1},
        "function": {"kind": "card_pi", "hom": {"kind": "mod", "factors": [5]}},
        "net": {"family": "box"},
        "prefix": 128,
        "checks": [{"type": "tail_below", "value": 0.02}],
    },
    "fubini-product": {
        "kind": "fubini",
        "demonstrates": "two-variable average of the doubling trajectory matches its iterated average",
        "monoid": {"family": "product", "parts": [{"family": "N^d", "dim": 1}, {"family": "N^d", "dim": 1}]},
        "action": {"generators": [{"kind": "scalar", "a": 2}, {"kind": "identity"}]},
        "target": {"family": "free", "rank": 1},
        "seed": {"set": [[0], [1]]},
        "hom": {"kind": "project", "coords": [1]},
        "prefix": 64,
        "n_prefix": 10,
        "checks": [{"type": "difference_below", "value": 0.05}],
    },
    "semidirect-defect-diagonal": {
        "kind": "semidirect-defect",
        "demonstrates": "square box families in the shear product keep defect >= 1/4 on the diagonal",
        "element": [0, 1],
        "pairs": [[n, n] for n in range(4, 25)],
        "checks": [{"type": "all_at_least", "value": 0.25}],
    },
    "semidirect-defect-flat": {
        "kind": "semidirect-defect",
        "demonstrates": "stretching the normal part flattens the shear defect below 5%",
        "element": [0, 1],
        "pairs": [[4, 400]],
        "checks": [{"type": "all_below", "value": 0.05}],
    },
    "addition-mod4": {
        "kind": "addition",
        "demonstrates": "shift on (Z/4)^(Z) over its doubled part: log 4 = log 2 + log 2 exactly",
        "monoid": {"family": "Z^d", "dim": 1},
        "group": {"family": "direct-sum", "base": [4], "index": {"family": "Z^d", "dim": 1}},
        "action": {"generators": [{"kind": "shift", "by": [1]}]},
        "subgroup": {"percoord_basis": [[2]]},
        "net": {"family": "box"},
        "prefix": 6,
        "checks": [{"type": "exact_product"}, {"type": "residual_below", "value": 1e-9}],
    },
    "bridge-bernoulli": {
        "kind": "bridge",
        "demonstrates": "trajectory growth of the one-sided (Z/2)-shift equals its dual cotrajectory index",
        "monoid": {"family": "N^d", "dim": 1},
        "group": {"family": "direct-sum", "base": [2], "index": {"family": "N^d", "dim": 1}},
        "action": {"generators": [{"kind": "shift", "by": [1]}]},
        "seed": {"subgroup_basis": [[[[0], [1]]]]},
        "net": {"family": "box"},
        "prefix": 10,
        "checks": [{"type": "exact_rows"}, {"type": "tails", "value": 0.6931471805599453, "tol": 1e-9}],
    },
    "tiling-square": {
        "kind": "tiling",
        "demonstrates": "greedy box tiling of a 100x100 square within a 10% defect, certificate-checked",
        "dim": 2,
        "region": 100,
        "tiles": [10, 3],
        "epsilon": "1/10",
        "checks": [{"type": "witness_valid"}],
    },
    "folner-boxes-Z": {
        "kind": "folner-verify",
        "demonstrates": "integer boxes have translation defect 2/(2n+1) under +-1",
        "monoid": {"family": "Z^d", "dim": 1},
        "test": [[1], [-1]],
        "net": {"family": "box"},
        "prefix": 64,
        "checks": [{"type": "tail_defect_below", "value": 0.02}],
    },
    "canonical-boxes-Z": {
        "kind": "canonical-net",
        "demonstrates": "minimal boxes meeting each requested translation precision",
        "monoid": {"family": "Z^d", "dim": 1},
        "requests": [{"test": [[0], [1]], "n": 2}, {"test": [[0], [1]], "n": 8}],
        "checks": [{"type": "precision_met"}],
    },
    "duality-props-small": {
        "kind": "duality-props",
        "demonstrates": "double annihilators, sum law, and the order product over small groups",
        "groups": [[8], [2, 4], [2, 2, 2], [9, 3], [5, 5], [12]],
        "checks": [{"type": "all_hold"}],
    },
}
