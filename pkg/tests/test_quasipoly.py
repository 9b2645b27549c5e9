from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sflows.errors import InsufficientData, NoFit
from sflows.flows import flow_polynomial, kernel_profile
from sflows.homology import betti_top
from sflows.quasipoly import (
    Quasipolynomial,
    coprime_agreement,
    default_sample_range,
    evaluate,
    fit,
    interpolate,
    is_minimal,
    poly_eval,
)


def samples_for(c, qs):
    prof = kernel_profile(c)
    return [(q, prof.count(q)) for q in qs]


def test_fit_bipyramid(bipyramid):
    res = fit(samples_for(bipyramid, range(2, 10)), max_period=6, max_degree=3)
    qp = res.quasipolynomial
    assert qp.period == 1 and qp.constituents == ((2, -3, 1),)
    assert evaluate(qp, 10) == 72


def test_fit_klein(klein):
    data = samples_for(klein, range(2, 10))
    assert [v for _, v in data] == [1, 0, 1, 0, 1, 0, 1, 0]
    res = fit(samples_for(klein, range(2, 14)), max_period=6, max_degree=1)
    qp = res.quasipolynomial
    assert qp.period == 2
    assert qp.constituents == ((1,), ())  # even class 1, odd class 0
    assert evaluate(qp, 100) == 1 and evaluate(qp, 101) == 0


def test_fit_constant():
    res = fit([(q, 4) for q in range(2, 10)])
    assert res.quasipolynomial.period == 1 and res.quasipolynomial.constituents == ((4,),)


def test_fit_errors():
    with pytest.raises(InsufficientData):
        fit([(2, 1), (3, 2)], max_degree=3)
    # degree-3 data cannot be matched with degree <= 1 at any period up to 2
    with pytest.raises(NoFit):
        fit([(q, q**3) for q in range(2, 14)], max_period=2, max_degree=1)


def test_interpolate_exact():
    pts = [(0, Fraction(1, 2)), (1, 2), (3, Fraction(-7, 3))]
    p = interpolate(pts)
    for x, y in pts:
        assert poly_eval(p, x) == y


def test_coprime_agreement_reports(bipyramid, klein, tetra):
    for c in (bipyramid, klein, tetra):
        data = samples_for(c, range(2, 26))
        beta = betti_top(c)
        qp = fit(data, 6, beta + 1).quasipolynomial
        rep = coprime_agreement(qp, flow_polynomial(c), [q for q, _ in data])
        assert rep.ok and rep.checked
    wrong = Quasipolynomial(1, ((Fraction(5),),))
    rep = coprime_agreement(wrong, lambda q: q, [2, 3])
    assert not rep.ok and [m[0] for m in rep.mismatches] == [2, 3]


def test_default_range():
    r = default_sample_range(6, 3)
    assert r.start == 2 and r.stop - 1 == 2 * 5 * 6 + 1


@st.composite
def quasipolys(draw):
    k = draw(st.integers(1, 4))
    deg = draw(st.integers(0, 2))
    cons = tuple(
        tuple(Fraction(draw(st.integers(-5, 5))) for _ in range(deg + 1)) for _ in range(k)
    )
    return k, deg, cons


@settings(max_examples=60, deadline=None)
@given(quasipolys())
def test_fit_roundtrip_and_minimality(spec):
    k, deg, cons = spec
    truth = Quasipolynomial(k, cons)
    data = [(q, truth(q)) for q in range(1, 2 * (deg + 2) * 4 + 2)]
    res = fit(data, max_period=4, max_degree=deg)
    qp = res.quasipolynomial
    assert all(qp(q) == v for q, v in data)
    assert qp.period <= k and k % qp.period == 0
    assert is_minimal(qp, data, deg)


def test_constituent_degrees_bounded_by_betti(fixtures):
    import math

    for name, c in fixtures.items():
        if len(c.facets) > 16:
            continue
        beta = betti_top(c)
        data = samples_for(c, default_sample_range(6, beta + 1))
        qp = fit(data, 6, beta + 1).quasipolynomial
        for j in range(qp.period):
            deg = qp.degree(j)
            if deg is None:
                continue
            assert deg <= beta, name
            if math.gcd(j, qp.period) == 1:
                assert deg == beta, name
