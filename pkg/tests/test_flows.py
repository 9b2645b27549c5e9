import math

import pytest

from oracles import nowhere_zero_enum
from sflows.boundary import boundary_matrix
from sflows.complex import cone_over
from sflows.errors import IndexMismatch, NotPrime, WorkLimitExceeded
from sflows.flows import (
    FlowVector,
    brute_force_count,
    degree_check,
    flow_polynomial,
    inclusion_exclusion_count,
    iter_flows,
    matrix_profile,
    verify_flow,
)
from sflows.homology import ridge_degrees
from sflows.linalg import ExactMatrix, is_prime

SMALL = ["tetrahedron", "bipyramid", "simplex2", "simplex3", "octahedron", "disk", "k4", "cycle4", "rp2"]


@pytest.mark.parametrize("q", range(2, 10))
def test_verify_tetra_flow(tetra, q):
    rep = verify_flow(tetra, q, (1, q - 1, 1, q - 1))
    assert rep.ok


def test_verify_bipyramid_and_failures(bipyramid, tetra):
    assert verify_flow(bipyramid, 5, (1, 4, 1, 1, 3, 2, 3)).ok
    rep = verify_flow(tetra, 5, (0, 0, 0, 0))
    assert not rep.ok and rep.zero_facets == tetra.facets and rep.bad_ridges == ()
    rep = verify_flow(tetra, 5, (1, 1, 1, 1))
    assert not rep.ok and rep.bad_ridges
    with pytest.raises(IndexMismatch):
        verify_flow(tetra, 5, (1, 2))
    fv = FlowVector((1, 4, 1, 4), 5, tetra.facets)
    assert verify_flow(tetra, 5, fv).ok


def test_brute_force_examples(bipyramid, tetra, simplex2):
    assert brute_force_count(bipyramid, 3).count == 2
    assert brute_force_count(tetra, 2).count == 1
    assert brute_force_count(tetra, 5).count == 4
    for q in range(2, 8):
        assert brute_force_count(simplex2, q).count == 0


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_search_matches_naive_scan(fixtures, name, q):
    c = fixtures[name]
    if (q - 1) ** len(c.facets) > 200_000:
        pytest.skip("naive scan too large")
    bm = boundary_matrix(c)
    assert brute_force_count(c, q).count == nowhere_zero_enum(bm.entries, len(bm.cols), q)


@pytest.mark.parametrize("name", SMALL + ["torus", "klein"])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_kernel_scan_matches_search(fixtures, name, p):
    c = fixtures[name]
    a = brute_force_count(c, p, enumerate_flows=True)
    b = brute_force_count(c, p, enumerate_flows=True, strategy="kernel")
    assert a.count == b.count and a.flows == b.flows


def test_kernel_scan_needs_prime(tetra):
    with pytest.raises(NotPrime):
        brute_force_count(tetra, 4, strategy="kernel")


def test_enumeration_is_lexicographic_and_valid(bipyramid):
    flows = list(iter_flows(bipyramid, 5))
    assert flows == sorted(flows) and len(flows) == 12
    assert all(verify_flow(bipyramid, 5, f).ok for f in flows)


def test_threads_do_not_change_result(fixtures):
    c = fixtures["torus"]
    one = brute_force_count(c, 5, enumerate_flows=True)
    four = brute_force_count(c, 5, enumerate_flows=True, threads=4)
    assert one == four


def test_work_limits(fixtures):
    with pytest.raises(WorkLimitExceeded):
        brute_force_count(fixtures["torus"], 5, work_limit=10)
    with pytest.raises(WorkLimitExceeded):
        inclusion_exclusion_count(fixtures["klein"], 3, work_limit=1000)


def test_inclusion_exclusion_examples(bipyramid, klein):
    assert inclusion_exclusion_count(bipyramid, 4).count == 6
    bm = boundary_matrix(bipyramid)
    assert nowhere_zero_enum(bm.entries, 7, 4) == 6
    assert inclusion_exclusion_count(klein, 3).count == 0
    assert inclusion_exclusion_count(klein, 4).count == 1
    for q in range(2, 7):
        assert matrix_profile(ExactMatrix.zeros(2, 1)).count(q) == q - 1


def test_flow_polynomial_examples(bipyramid, tetra, simplex2):
    p = flow_polynomial(bipyramid)
    assert p.coefficients == (2, -3, 1) and p.threshold <= 6
    assert flow_polynomial(tetra).coefficients == (-1, 1)
    assert flow_polynomial(simplex2).coefficients == ()
    assert flow_polynomial(simplex2)(5) == 0


def test_graph_flow_polynomial(fixtures):
    # K4's classical flow polynomial
    assert flow_polynomial(fixtures["k4"]).coefficients == (-6, 11, -6, 1)
    assert flow_polynomial(fixtures["cycle4"]).coefficients == (-1, 1)


def test_degree_check(bipyramid, tetra, simplex2):
    assert tuple(vars(degree_check(bipyramid)).values()) == (2, 2, True)
    assert tuple(vars(degree_check(tetra)).values()) == (1, 1, True)
    d = degree_check(simplex2)
    assert d.degree is None and d.betti == 0 and d.equal


def test_three_way_agreement(fixtures):
    for name, c in fixtures.items():
        p = flow_polynomial(c)
        for q in range(2, 8):
            bf = brute_force_count(c, q).count
            assert inclusion_exclusion_count(c, q).count == bf, (name, q)
            if is_prime(q) and q > p.threshold:
                assert p(q) == bf, (name, q)


@pytest.mark.parametrize("name", ["bipyramid", "tetrahedron", "k4", "klein", "torus"])
@pytest.mark.parametrize("q", [4, 5, 6])
def test_scaling_and_negation_closure(fixtures, name, q):
    flows = set(iter_flows(fixtures[name], q))
    for v in flows:
        assert tuple((q - x) % q for x in v) in flows
        for u in range(1, q):
            if math.gcd(u, q) == 1:
                assert tuple(u * x % q for x in v) in flows


def test_cones_kill_flows(fixtures):
    for name, c in fixtures.items():
        coned = cone_over(c)
        for q in range(2, 6):
            assert brute_force_count(coned, q).count == 0, name
            assert inclusion_exclusion_count(coned, q).count == 0, name


def test_boundary_ridge_kills_flows(fixtures):
    for name, c in fixtures.items():
        if any(d == 1 for d in ridge_degrees(c).values()):
            for q in range(2, 8):
                assert brute_force_count(c, q).count == 0, name
