import random
from math import factorial

import pytest

from colored_tverberg.errors import BudgetExceeded
from colored_tverberg.geometry import hulls_intersect, tverberg_partitions
from colored_tverberg.obstruction import (
    ConfigSpace,
    check_A_avoids_diagonal,
    check_boundary_relations,
    check_sign_claims,
    closed_form_phi,
    cocycle_on_chain,
    configuration_space,
    evaluate_all_facets,
    evaluate_cocycle,
    explicit_h,
    explicit_h_check,
    is_nonfree,
    nonfree_facets,
    obstruction_verdict,
    relative_boundary,
    special_chains,
)
from colored_tverberg.simplicial import Permutation, apply_permutation, boundary

from oracles import sympy_cocycle_signs

MATRIX = [(1, 3), (2, 3), (3, 3), (1, 5)]


def act_on_code(p: Permutation, code):
    return tuple(p(x) for x in code)


# --- configuration space ----------------------------------------------------


@pytest.mark.parametrize("d,r,n,count", [(1, 3, 4, 108), (2, 3, 6, 648), (1, 5, 8, 72000)])
def test_facet_counts(d, r, n, count):
    cs = configuration_space(d, r)
    assert cs.N == n and cs.facet_count == count
    assert sum(1 for _ in cs.facet_codes()) == count


def test_complex_of_small_space():
    cs = ConfigSpace(1, 3)
    k = cs.complex
    assert k.dimension == cs.N == 4
    assert len(k.facets) == 108
    assert all(cs.code(s) in set(cs.facet_codes()) for s in k.facets[:10])
    codes = list(cs.facet_codes())
    assert codes == sorted(codes)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        ConfigSpace(3, 5)
    with pytest.raises(BudgetExceeded):
        ConfigSpace(1, 3, budget=100)


def test_code_validation():
    cs = ConfigSpace(1, 3)
    assert cs.is_valid_code((1, 2, 1, 2, 3))
    assert not cs.is_valid_code((1, 1, 1, 2, 3))
    assert not cs.is_valid_code((1, 2, 1, 2))
    with pytest.raises(ValueError):
        evaluate_cocycle((1, 1, 1, 2, 3), cs)


def test_is_nonfree_examples():
    cs = ConfigSpace(2, 3)
    facet = cs.simplex(cs.identity_code())
    assert not is_nonfree(facet, cs)
    only_row_1 = (cs.vertex(1, 1), cs.vertex(1, 3))
    assert is_nonfree(only_row_1, cs)
    missing_one = (cs.vertex(1, 1), cs.vertex(2, 2))
    assert not is_nonfree(missing_one, cs)


# --- cocycle values ------------------------------------------------------------


def test_identity_facet_is_plus_one():
    for d, r in MATRIX + [(2, 4)]:
        cs = ConfigSpace(d, r)
        assert evaluate_cocycle(cs.identity_code(), cs) == 1


def test_block_transposition_gives_minus_one():
    cs = ConfigSpace(1, 3)
    assert evaluate_cocycle((2, 1, 1, 2, 3), cs) == -1


def test_block_using_row_r_gives_zero():
    cs = ConfigSpace(1, 3)
    for code in cs.facet_codes():
        if code[-1] == 3 and 3 in code[:-1]:
            assert evaluate_cocycle(code, cs) == 0


@pytest.mark.parametrize("d,r", [(1, 3), (2, 3)])
def test_cocycle_matches_determinant_oracle(d, r):
    cs = ConfigSpace(d, r)
    codes = list(cs.facet_codes())
    oracle = sympy_cocycle_signs(cs, codes)
    assert None not in oracle.values()
    norm = oracle[cs.identity_code()]
    for code in codes:
        assert evaluate_cocycle(code, cs) == norm * oracle[code]


@pytest.mark.parametrize("d,r", [(1, 3), (2, 3)])
def test_equivariance_exhaustive(d, r):
    cs = ConfigSpace(d, r)
    values = {c: evaluate_cocycle(c, cs) for c in cs.facet_codes()}
    for p in Permutation.all(r):
        for code, v in values.items():
            assert values[act_on_code(p, code)] == p.sign ** (d + 1) * v


def test_equivariance_sampled_1_5():
    cs = ConfigSpace(1, 5)
    codes = list(cs.facet_codes())
    perms = list(Permutation.all(5))
    rng = random.Random(15)
    nonzero = [c for c in codes if c[-1] == 5 and 5 not in c[:-1]]
    pairs = [(rng.choice(codes), rng.choice(perms)) for _ in range(900)]
    pairs += [(rng.choice(nonzero), rng.choice(perms)) for _ in range(100)]
    for code, p in pairs:
        assert evaluate_cocycle(act_on_code(p, code), cs) == p.sign ** 2 * evaluate_cocycle(code, cs)


@pytest.mark.parametrize("d,r", [(1, 3), (2, 3)])
def test_support_is_exactly_the_tverberg_facets(d, r):
    cs = ConfigSpace(d, r)
    for code in cs.facet_codes():
        parts = cs.decode_points(code)
        meets = all(parts) and hulls_intersect(parts) is not None
        assert (evaluate_cocycle(code, cs) != 0) == meets, code


@pytest.mark.parametrize("d,r", [(1, 3), (2, 3), (3, 3), (1, 5)])
def test_nonzero_facet_counts(d, r):
    cs = ConfigSpace(d, r)
    values = evaluate_all_facets(cs)
    last_r = [c for c in values if c[-1] == r]
    # ordered by row: the r-1 simplex parts can be labeled in (r-1)! ways
    assert len(last_r) == factorial(r - 1) ** (d + 1)
    assert len(values) == factorial(r - 1) ** (d + 1) * r
    assert len({cs.decode(c).canonical() for c in last_r}) == factorial(r - 1) ** d
    last_identity = [c for c in last_r if c[-r:-1] == tuple(range(1, r))]
    assert len(last_identity) == factorial(r - 1) ** d


@pytest.mark.parametrize("d,r", [(1, 3), (2, 3)])
def test_nonzero_facets_decode_to_geometric_tverberg_partitions(d, r):
    cs = ConfigSpace(d, r)
    decoded = {cs.decode(c).canonical() for c, v in evaluate_all_facets(cs).items() if c[-1] == r}
    geometric = {p.canonical() for p, _ in tverberg_partitions(cs.reference, r)}
    assert decoded == geometric and len(decoded) == factorial(r - 1) ** d


# --- special chains ----------------------------------------------------------------


def test_special_chains_1_3():
    cs = ConfigSpace(1, 3)
    ch = special_chains(cs)
    assert len(ch.phi) == 6 and ch.phi.dim == cs.N
    assert set(ch.omega) == {1, 2} and set(ch.theta) == {1, 2, 3}
    assert len(ch.theta2) == 3 * 2
    omitted = cs.vertex(2, 4)
    for s, _ in ch.theta[2]:
        assert omitted not in s and cs.vertex(1, 3) in s and cs.vertex(3, 5) in s


def test_special_chains_2_3_theta_1_2():
    cs = ConfigSpace(2, 3)
    ch = special_chains(cs)
    for s, _ in ch.theta2[(1, 2)]:
        assert cs.vertex(1, 5) not in s
        assert cs.vertex(2, 6) in s
        assert s[-1] == cs.vertex(2, 7)


def test_phi_signs_follow_block_permutations():
    cs = ConfigSpace(2, 3)
    ch = special_chains(cs)
    for s, coeff in ch.phi:
        code = cs.code(s)
        sign = 1
        for b in range(cs.d):
            rows = [code[c - 1] for c in cs.block_columns(b)]
            missing = ({1, 2, 3} - set(rows)).pop()
            sign *= Permutation(tuple(rows) + (missing,)).sign
        assert coeff == sign


def test_special_chains_budget():
    cs = ConfigSpace(1, 3, budget=200)
    cs.budget = 5
    with pytest.raises(BudgetExceeded):
        special_chains(cs)


@pytest.mark.parametrize("d,r", MATRIX)
def test_phi_and_omega_values(d, r):
    cs = ConfigSpace(d, r)
    ch = special_chains(cs)
    assert cocycle_on_chain(ch.phi, cs) == factorial(r - 1) ** d
    for j in range(1, r):
        assert cocycle_on_chain(ch.omega[j], cs) == 0


# --- proof identities ------------------------------------------------------------


@pytest.mark.parametrize("d,r", MATRIX)
def test_boundary_relations(d, r):
    rep = check_boundary_relations(ConfigSpace(d, r))
    assert rep.ok, rep.to_json()
    assert len(rep.checks) == r


@pytest.mark.parametrize("d,r", MATRIX)
def test_sign_claims(d, r):
    rep = check_sign_claims(ConfigSpace(d, r))
    assert rep.ok, rep.to_json()


def test_claim_examples():
    cs = ConfigSpace(1, 3)
    ch = special_chains(cs)
    moved = apply_permutation(Permutation.transposition(3, 1, 3), ch.theta2[(1, 2)], cs.labels)
    assert moved == -ch.theta2[(1, 2)]
    cs = ConfigSpace(2, 3)
    ch = special_chains(cs)
    moved = apply_permutation(Permutation.transposition(3, 1, 3), ch.theta2[(1, 1)], cs.labels)
    assert moved == ch.theta[1]


def test_relative_boundary_drops_A():
    cs = ConfigSpace(1, 3)
    ch = special_chains(cs)
    full = boundary(ch.phi)
    rel = relative_boundary(ch.phi, cs)
    assert all(not is_nonfree(s, cs) for s, _ in rel)
    assert all(is_nonfree(s, cs) for s, _ in (full - rel))


def test_corrupted_chain_is_reported():
    cs = ConfigSpace(1, 3)
    ch = special_chains(cs)
    s = next(iter(ch.phi.terms))
    ch.phi.terms[s] = -ch.phi.terms[s]
    rep = check_boundary_relations(cs, ch)
    assert not rep.ok
    assert any(c.mismatches for c in rep.checks)


# --- verdict --------------------------------------------------------------------


@pytest.mark.parametrize(
    "d,r,phi,divides",
    [(1, 3, 2, False), (2, 3, 4, False), (2, 4, 36, True), (1, 2, 1, False), (3, 2, 1, False), (1, 4, 6, False)],
)
def test_verdict_examples(d, r, phi, divides):
    rep = obstruction_verdict(d, r)
    assert rep.phi_computed
    assert rep.phi_value == phi
    assert rep.divides == rep.extension_exists == divides
    assert rep.omega_values == [0] * (r - 1)


def test_verdict_closed_form_beyond_budget():
    rep = obstruction_verdict(3, 7)
    assert not rep.phi_computed
    assert rep.phi_value == closed_form_phi(3, 7) == 720 ** 3
    assert not rep.extension_exists
    data = rep.to_json()
    assert set(data) >= {"d", "r", "phi_value", "omega_values", "divides", "extension_exists",
                         "facets_evaluated", "nonzero_facets"}


@pytest.mark.parametrize("r", [2, 3, 5, 7])
def test_primes_never_divide(r):
    for d in (1, 2, 3):
        assert not obstruction_verdict(d, r, budget=0).extension_exists


# --- explicit h --------------------------------------------------------------------


def test_explicit_h_values():
    h_theta, h_diag, q = explicit_h(2, 4)
    assert q == 9
    assert {abs(v) for v in h_theta.values()} == {9}
    assert all(h_diag[j] == -h_theta[j] for j in h_diag)
    with pytest.raises(ValueError):
        explicit_h(1, 3)


def test_explicit_h_check_2_4():
    rep = explicit_h_check(ConfigSpace(2, 4))
    assert rep.ok
    assert rep.quotient == 9
    assert rep.h_boundary_phi == rep.c_phi == 36
    assert all(v == 0 for v in rep.h_boundary_omega.values())


@pytest.mark.slow
def test_explicit_h_check_3_4():
    rep = explicit_h_check(ConfigSpace(3, 4))
    assert rep.ok and rep.quotient == 54
    assert rep.h_boundary_phi == rep.c_phi == 216


# --- A avoids the diagonal ---------------------------------------------------------


def test_A_avoids_diagonal_1_3():
    cs = ConfigSpace(1, 3)
    assert check_A_avoids_diagonal(cs, samples=200)


def test_A_avoids_diagonal_2_3():
    assert check_A_avoids_diagonal(ConfigSpace(2, 3), samples=1000)


def test_nonfree_facets_miss_two_rows():
    cs = ConfigSpace(1, 4)
    facets = list(nonfree_facets(cs))
    assert facets
    for s in facets:
        assert is_nonfree(s, cs)
        rows = {cs.cell(v)[0] for v in s}
        assert len(rows) == cs.r - 2


def test_A_check_rejects_zero_samples():
    with pytest.raises(ValueError):
        check_A_avoids_diagonal(ConfigSpace(1, 3), samples=0)
