from fractions import Fraction

import pytest

from fixtures import (WEYL2, appsin1_system, appsin2_system,
                      candidates2_system, detect2_system, indpol_system,
                      sincos_system, two_lines_system)
from orecalc import (MultiPoly, OreOperator, OreSignature, QQ,
                     apply_to_series, detect_apparent, euler_rewrite,
                     exponent_candidates, indicial_polynomial,
                     intersect_left_ideals, is_ordinary, is_ordinary_origin,
                     parse_operator, parse_poly, rank, remove_apparent,
                     series_solutions, singular_locus, weyl_gb)
from orecalc.dfinite import DFiniteError, _euler_point_ideal


def YP(text):
    return parse_poly(text, QQ, ("y1", "y2"))


def test_weyl_gb_fixed_points():
    G = weyl_gb(sincos_system())
    assert [str(op) for op in G] == ["Dx2 - Dx1", "Dx1^2 + 1"]
    G = weyl_gb(appsin1_system())
    assert [str(op) for op in G] == ["x2*Dx2 + Dx1 - x2 - 1", "Dx1^2 - Dx1"]
    G = weyl_gb([parse_operator("Dx1", WEYL2), parse_operator("x1*Dx1", WEYL2)])
    assert [str(op) for op in G] == ["Dx1"]


def test_rank():
    assert rank(weyl_gb(sincos_system())) == 2
    assert rank(weyl_gb(detect2_system())) == 3
    sig3 = OreSignature.diff(QQ, ("x1", "x2", "x3"))
    G = weyl_gb([OreOperator.partial(sig3, i) for i in range(3)])
    assert rank(G) == 1


def test_singular_locus():
    G = weyl_gb(two_lines_system())
    assert singular_locus(G) == parse_poly("x1*x2", QQ, ("x1", "x2"))
    assert not is_ordinary_origin(G)
    G = weyl_gb(sincos_system())
    assert str(singular_locus(G)) == "1"
    assert is_ordinary_origin(G)
    G = weyl_gb(appsin1_system())
    assert singular_locus(G) == parse_poly("x2", QQ, ("x1", "x2"))
    assert is_ordinary(G, {"x1": 0, "x2": Fraction(1, 3)})
    assert not is_ordinary(G, {"x1": 5, "x2": 0})


def test_euler_rewrite():
    sig1 = OreSignature.diff(QQ, ("x",))
    ef = euler_rewrite(parse_operator("x^2*Dx^2", sig1))
    assert ef.pieces == [((2,), parse_poly("y1*(y1-1)", QQ, ("y1",)))]
    ef = euler_rewrite(parse_operator("x*Dx", sig1))
    assert ef.pieces == [((1,), parse_poly("y1", QQ, ("y1",)))]
    # G2 of the indicial fixture: minimal term x1^2*x2^2 carries (d1-1)(d1-2)
    G2 = indpol_system()[1]
    ef = euler_rewrite(G2)
    v, poly = ef.minimal()
    assert v == (2, 2) and poly == YP("(y1-1)*(y1-2)")
    # exact re-expansion
    m = G2.order()
    xm = OreOperator.from_poly(
        WEYL2, MultiPoly.monomial(QQ, WEYL2.vars, (m, m), 1))
    assert ef.expand() == xm * G2


def test_indicial_polynomials():
    G1, G2 = indpol_system()
    assert indicial_polynomial(G1) == YP("y2 - 1")
    assert indicial_polynomial(G2) == YP("(y1-1)*(y1-2)")
    sig = WEYL2
    assert indicial_polynomial(OreOperator.partial(sig, 0)) == YP("y1")
    assert indicial_polynomial(OreOperator.partial(sig, 1)) == YP("y2")


def test_indicial_root_property():
    # initial exponents of known solutions zero every generator's indicial poly
    from orecalc.polyring import evaluate
    cases = [
        (indpol_system(), [(2, 1), (1, 1)]),
        (appsin1_system(), [(0, 0), (0, 1)]),
        (appsin2_system(), [(1, 0), (1, 1)]),
        (detect2_system(), [(0, 0), (1, 0), (1, 1)]),
    ]
    for gens, exps in cases:
        for op in weyl_gb(gens).generators:
            ind = indicial_polynomial(op)
            for w in exps:
                vals = {"y1": QQ(w[0]), "y2": QQ(w[1])}
                assert evaluate(ind, vals).is_zero


def test_exponent_candidates():
    assert sorted(exponent_candidates(weyl_gb(indpol_system())).candidates) \
        == [(1, 1), (2, 1)]
    assert sorted(exponent_candidates(weyl_gb(candidates2_system())).candidates) \
        == [(0, 0), (1, 1)]
    assert sorted(exponent_candidates(weyl_gb(detect2_system())).candidates) \
        == [(0, 0), (1, 0), (1, 1)]


def test_exponent_candidates_not_zero_dimensional():
    # a single operator whose indicial ideal misses one variable
    G = weyl_gb([indpol_system()[1]])
    with pytest.raises(DFiniteError):
        exponent_candidates(G)


def test_intersection_self():
    G = weyl_gb(sincos_system())
    assert intersect_left_ideals(G, G).generators == G.generators


def test_intersection_rank_formula_appsin1():
    G = weyl_gb(appsin1_system())
    H = weyl_gb([parse_operator("x1*Dx1 - 1", WEYL2),
                 parse_operator("Dx2", WEYL2)])
    M = intersect_left_ideals(G, H)
    assert M.rank() == 3
    union = weyl_gb(list(G.generators) + list(H.generators))
    rank_sum = None
    try:
        rank_sum = union.rank()
    except DFiniteError:
        rank_sum = 0 if any(op.order() == 0 for op in union.generators) else None
    assert rank_sum == 0
    assert M.rank() + rank_sum == G.rank() + H.rank()


def test_remove_apparent_appsin1():
    G = weyl_gb(appsin1_system())
    M = remove_apparent(G, [(0, 0), (0, 1)])
    target = parse_poly("1 - x1 - x1*x2", QQ, ("x1", "x2"))
    hcs = set()
    for h in M.head_coefficients():
        hcs.add(h)
    assert all(h == target or h == -target for h in hcs)
    assert is_ordinary_origin(M)
    assert M.rank() == 3
    # left-multiple property over K(x)
    assert all(G.contains(op) for op in M.generators)


def test_remove_apparent_appsin2():
    G = weyl_gb(appsin2_system())
    M = remove_apparent(G, [(1, 0), (1, 1)])
    assert sorted(str(op) for op in M.generators) \
        == ["Dx1*Dx2^2", "Dx1^2*Dx2", "Dx1^3", "Dx2^3"]
    assert M.rank() == 6
    assert all(G.contains(op) for op in M.generators)
    # rank formula: 2 + 4 * 1 = 6
    assert G.rank() + 4 == M.rank()


def test_remove_apparent_degenerate_box():
    sig = WEYL2
    G = weyl_gb([OreOperator.partial(sig, 0), OreOperator.partial(sig, 1)])
    M = remove_apparent(G, [(0, 0)])
    assert M.generators == G.generators


def test_remove_apparent_wrong_cardinality():
    G = weyl_gb(appsin1_system())
    with pytest.raises(DFiniteError):
        remove_apparent(G, [(0, 0)])


def test_detect_not_apparent():
    G = weyl_gb(candidates2_system())
    verdict, B, M = detect_apparent(G)
    assert verdict == "not-apparent" and B is None
    hcs = sorted(str(h) for h in set(M.head_coefficients()))
    assert hcs == ["x1*x2^3 - 3*x1^2*x2^2 + 3*x1^3*x2 - x1^4",
                   "x2^3 - 3*x1*x2^2 + 3*x1^2*x2 - x1^3"]


def test_detect_apparent():
    G = weyl_gb(detect2_system())
    verdict, B, M = detect_apparent(G)
    assert verdict == "apparent"
    assert sorted(B) == [(0, 0), (1, 0), (1, 1)]
    target = parse_poly("-2 - x1^2 - 2*x1*x2 - x2^2", QQ, ("x1", "x2"))
    assert all(h == target or h == -target for h in M.head_coefficients())


def test_detect_apparent_appsin1_with_exact_candidates():
    # the paper's remark: detection also works with S = B supplied directly
    G = weyl_gb(appsin1_system())
    verdict, B, M = detect_apparent(G, candidates=[(0, 0), (0, 1)])
    assert verdict == "apparent"
    assert sorted(B) == [(0, 0), (0, 1)]


def test_series_trivial():
    sig = WEYL2
    G = weyl_gb([OreOperator.partial(sig, 0), OreOperator.partial(sig, 1)])
    sols = series_solutions(G, 3)
    assert len(sols) == 1 and sols[0].coeffs == {(0, 0): QQ(1)}


def test_series_exponential():
    G = weyl_gb([parse_operator("Dx1 - 1", WEYL2),
                 parse_operator("Dx2", WEYL2)])
    sols = series_solutions(G, 5)
    assert len(sols) == 1
    s = sols[0]
    for k in range(6):
        assert s.coeff((k, 0)) == QQ(Fraction(1, _fact(k)))


def test_series_sincos():
    G = weyl_gb(sincos_system())
    sols = series_solutions(G, 6)
    assert [s.initial_exponent() for s in sols] == G.parametric_exponents()
    cos_c, sin_c = {}, {}
    for u1 in range(7):
        for u2 in range(7 - u1):
            tot = u1 + u2
            val = QQ(Fraction((-1) ** (tot // 2), _fact(u1) * _fact(u2)))
            if tot % 2 == 0:
                cos_c[(u1, u2)] = val
            else:
                sin_c[(u1, u2)] = QQ(
                    Fraction((-1) ** ((tot - 1) // 2), _fact(u1) * _fact(u2)))
    assert sols[0].coeffs == cos_c
    assert sols[1].coeffs == sin_c
    # residuals vanish up to cap - order for every generator
    for op in G.generators:
        for s in sols:
            out, newcap = apply_to_series(op, s.coeffs, 6)
            assert all(v.is_zero for v in out.values())


def test_series_requires_ordinary_origin():
    G = weyl_gb(appsin1_system())
    with pytest.raises(DFiniteError):
        series_solutions(G, 4)


def test_euler_point_ideal_rank_one():
    H = _euler_point_ideal(WEYL2, (1, 2))
    assert H.rank() == 1


def _fact(k):
    out = 1
    for s in range(1, k + 1):
        out *= s
    return out
