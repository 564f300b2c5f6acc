"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All arithmetic is exact, so every comparison is an equality with zero
tolerance.  Time limits are asserted per criterion.
"""

from math import factorial

import numpy as np
import pytest

from colored_tverberg.chessboard import chessboard_complex, collapse_matching, orientation_cycle
from colored_tverberg.geometry import (
    conjecture_trial,
    find_rainbow_partition,
    hulls_intersect,
    pad_reduction,
    random_configuration,
    tverberg_partitions,
)
from colored_tverberg.obstruction import (
    ConfigSpace,
    check_boundary_relations,
    check_sign_claims,
    cocycle_on_chain,
    evaluate_all_facets,
    explicit_h_check,
    obstruction_verdict,
    special_chains,
)
from colored_tverberg.simplicial import (
    Permutation,
    apply_permutation,
    boundary,
    euler_characteristic,
    f_vector,
    homology,
    is_pseudomanifold,
)

from oracles import admissible_sizes

MATRIX = [(1, 3), (2, 3), (3, 3), (1, 5)]


def test_criterion_1_chessboard_structure(criterion):
    with criterion(1, "chessboard structure of Δ_{3,2} and Δ_{4,3}", 5):
        circle = chessboard_complex((3, 2))
        assert f_vector(circle) == [6, 6]
        assert is_pseudomanifold(circle).ok
        assert homology(circle, 1) == (1, [])
        torus = chessboard_complex((4, 3))
        assert f_vector(torus) == [12, 36, 24]
        assert euler_characteristic(torus) == 0
        assert homology(torus, 2) == (1, [])
        assert homology(torus, 1) == (2, [])


def test_criterion_2_orientation_cycle(criterion):
    with criterion(2, "orientation cycle is an S_r-equivariant cycle, r = 3, 4", 5):
        for r in (3, 4):
            z = orientation_cycle(r)
            assert not boundary(z)
            labels = chessboard_complex((r, r - 1)).labels
            for p in Permutation.all(r):
                assert apply_permutation(p, z, labels) == z * p.sign


def test_criterion_3_collapse(criterion):
    with criterion(3, "equivariant collapse of Δ_{r,r} to dimension r-2, r = 3, 4", 5):
        for r in (3, 4):
            rep = collapse_matching(r)
            assert rep.valid and rep.equivariant
            assert rep.remaining_dimension == r - 2


@pytest.mark.parametrize("d,r", MATRIX)
def test_criterion_4_cocycle_values(criterion, d, r):
    with criterion(4, f"c_f(Phi) = (r-1)!^d, c_f(Omega_j) = 0, full sweep at (d,r) = ({d},{r})", 60):
        cs = ConfigSpace(d, r)
        ch = special_chains(cs)
        assert cocycle_on_chain(ch.phi, cs) == factorial(r - 1) ** d
        for j in range(1, r):
            assert cocycle_on_chain(ch.omega[j], cs) == 0
        # every facet evaluates without a general-position failure
        values = evaluate_all_facets(cs)
        assert sum(1 for c in values if c[-1] == r) == factorial(r - 1) ** (d + 1)


def test_criterion_5_proof_identities(criterion):
    with criterion(5, "boundary identities and transposition claims on the test matrix", 60):
        for d, r in MATRIX:
            cs = ConfigSpace(d, r)
            ch = special_chains(cs)
            assert check_boundary_relations(cs, ch).ok, (d, r)
            assert check_sign_claims(cs, ch).ok, (d, r)


def test_criterion_6_verdict_table(criterion):
    with criterion(6, "extension exists iff r | (r-1)!^d on the verdict table"):
        for r in (2, 3, 5, 7):
            for d in (1, 2, 3):
                rep = obstruction_verdict(d, r)
                assert not rep.divides and not rep.extension_exists, (d, r)
                assert rep.phi_value == factorial(r - 1) ** d
                if rep.phi_computed:
                    assert rep.omega_values == [0] * (r - 1)
        for d in (2, 3):
            rep = obstruction_verdict(d, 4)
            assert rep.phi_computed
            assert rep.divides and rep.extension_exists
            assert rep.phi_value == 6 ** d


@pytest.mark.parametrize("d,quotient,limit", [(2, 9, 120), (3, 54, None)])
def test_criterion_7_explicit_h(criterion, d, quotient, limit):
    with criterion(7, f"explicit h with h(Theta_j) = ±{quotient} at (d,r) = ({d},4)", limit):
        rep = explicit_h_check(ConfigSpace(d, 4))
        assert rep.ok
        assert rep.quotient == quotient
        assert {abs(v) for v in rep.h_theta.values()} == {quotient}
        assert rep.h_boundary_phi == rep.c_phi == 6 ** d
        assert all(v == 0 for v in rep.h_boundary_omega.values())


def test_criterion_8_oracle_equivalence(criterion):
    with criterion(8, "nonzero-cocycle facets decode to the LP-found Tverberg partitions", 30):
        for d, r in [(1, 3), (2, 3)]:
            cs = ConfigSpace(d, r)
            decoded = {cs.decode(c).canonical() for c in evaluate_all_facets(cs) if c[-1] == r}
            geometric = {p.canonical() for p, _ in tverberg_partitions(cs.reference, r)}
            assert decoded == geometric
            assert len(decoded) == factorial(r - 1) ** d


def test_criterion_9_solver_guarantee(criterion):
    with criterion(9, "100/100 random trials for (2,3,(2,2,2,1)), (1,3,(2,2,1)), (2,4,4)", 120):
        rep = conjecture_trial(2, 3, None, 100, 2024, class_sizes=[2, 2, 2, 1])
        assert rep.successes == 100, rep.failures
        rep = conjecture_trial(1, 3, None, 100, 2024, class_sizes=[2, 2, 1])
        assert rep.successes == 100, rep.failures
        # r + 1 = 5 is prime: solve via an extra singleton class and r + 1 parts
        rep = conjecture_trial(2, 4, 4, 100, 2024, extend=True)
        assert rep.successes == 100, rep.failures


def test_criterion_10_reduction_round_trip(criterion):
    with criterion(10, "pad_reduction restrict-and-verify on 50 random admissible configurations", 60):
        rng = np.random.default_rng(2024)
        for _ in range(50):
            r = int(rng.choice([3, 4]))
            d = 1 if r == 4 else int(rng.integers(1, 3))
            cfg = random_configuration(rng, d, admissible_sizes(rng, d, r))
            pad = pad_reduction(cfg, r)
            found = find_rainbow_partition(pad.padded, r)
            assert found is not None
            restricted = pad.restrict(found[0])
            assert all(restricted.parts)
            assert hulls_intersect([[cfg.point(x) for x in p] for p in restricted.parts]) is not None
