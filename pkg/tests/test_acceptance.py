"""Acceptance criteria, one test per criterion, exact comparisons throughout.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion; the optional long check (criterion 10) is enabled with --long.
"""

import random
import time
from fractions import Fraction

import pytest

from fixtures import (DIFF_X, SHIFT_N, SHIFT_QT, WEYL2, appsin1_system,
                      appsin2_system, binom_plus_power_op, candidates2_system,
                      detect2_system, diff_order2_op, hypergeom_desing,
                      hypergeom_shift_op, indpol_system, qt_order1_op, qt_t1,
                      qt_t2, sincos_system)
from orecalc import (MultiPoly, OreOperator, OreSignature, QQ, QQt,
                     RatOreOperator, ZZ, apply_to_series, buchberger,
                     completely_desingularized, content, contraction_basis,
                     detect_apparent, exponent_candidates, ideal_equal,
                     indicial_polynomial, is_R_primitive, is_groebner,
                     is_ordinary_origin, module_contains, order_bound_shift,
                     parse_operator, parse_poly, reduce_operator,
                     remove_apparent, rrem, saturate_const, series_solutions,
                     submodule_basis, weyl_gb)
from orecalc.contraction import coefficient_ideal
from orecalc.pid_groebner import commutative_groebner, reduce_basis


def _report(num, text, t0, budget=None):
    dt = time.monotonic() - t0
    print("criterion %02d PASS (%.2fs): %s" % (num, dt, text))
    if budget is not None:
        assert dt < budget, "criterion %d exceeded %ss budget" % (num, budget)


def _vec(op, k):
    return tuple(op.dcoeff((k - i,)) for i in range(k + 1))


def test_criterion_01_bm_contraction():
    t0 = time.monotonic()
    L = diff_order2_op()
    res = contraction_basis(L, 4)
    T = parse_operator("Dx^4 - Dx^3", DIFF_X)
    assert ideal_equal(list(res.basis), [L, T])
    _report(1, "differential contraction of x*Dx^2-(x+2)*Dx+2 equals <L, Dx^4-Dx^3>",
            t0, budget=5)


def test_criterion_02_ah_pipeline():
    t0 = time.monotonic()
    L = hypergeom_shift_op()
    Tt = hypergeom_desing()
    k = order_bound_shift(L)
    assert k == 3
    res = contraction_basis(L, k)
    assert ideal_equal(list(res.basis), [L, Tt])
    # T~ itself appears in the reduced basis, up to a unit
    assert any(e == Tt or e == Tt.scale(ZZ(-1)) for e in res.basis)
    T = completely_desingularized(L, k)
    assert T == Tt
    assert content(T.lc_d()) == ZZ(1)
    _report(2, "shift fixture: bound 3, cont(L) = <L, T~>, cdesing = T~",
            t0, budget=10)


def test_criterion_03_qt_example():
    t0 = time.monotonic()
    L = qt_order1_op()
    T1, T2 = qt_t1(), qt_t2()
    M = submodule_basis(L, 2)
    vecs = [_vec(g, 2) for g in M.generators]
    targets = [_vec(T1, 2), _vec(T2, 2)]
    assert all(module_contains(v, targets) for v in vecs)
    assert all(module_contains(v, vecs) for v in targets)
    res = contraction_basis(L, 2)
    assert res.sat_constant == QQt((2, 1))
    assert ideal_equal(list(res.basis), [L, T1])
    _report(3, "QQ[t] fixture: M_2 = span{T1, T2}, saturation at t+2, "
            "cont = <L, T1>", t0, budget=10)


def test_criterion_04_membership_property():
    t0 = time.monotonic()
    cases = [(hypergeom_shift_op(), 3), (diff_order2_op(), 4),
             (qt_order1_op(), 2)]
    rng = random.Random(160)
    count = 0
    while count < 100:
        L = OreOperator.zero(SHIFT_N)
        order = rng.randint(1, 2)
        for b in range(order + 1):
            for a in range(3):
                c = rng.randint(-3, 3)
                if c:
                    L = L + OreOperator.monomial(SHIFT_N, (a,), (b,), c)
        if L.is_zero or L.order() < 1:
            continue
        count += 1
        cases.append((L, L.order() + 2))
    for L, k in cases:
        res = contraction_basis(L, k)
        Lr = RatOreOperator.from_operator(L)
        assert res.basis.elements, "empty contraction basis"
        for e in res.basis:
            assert rrem(RatOreOperator.from_operator(e), Lr).is_zero
        assert res.basis.contains(L)
    _report(4, "membership: rrem(., L) = 0 on all basis elements, "
            "L reduces to 0 (3 fixtures + 100 random shift operators)", t0)


def _random_op(rng, sig):
    # central pairs model plain commutative variables: no D-powers there
    out = OreOperator.zero(sig)
    for _ in range(rng.randint(1, 3)):
        alpha = tuple(rng.randint(0, 2) for _ in range(sig.n))
        beta = tuple(0 if k == "central" else rng.randint(0, 2)
                     for k in sig.kinds)
        out = out + OreOperator.monomial(sig, alpha, beta, rng.randint(-4, 4))
    return out


def test_criterion_05_groebner_property_suite():
    t0 = time.monotonic()
    comm = OreSignature(ZZ, ("x", "y"), ("central", "central"))
    for sig, seed in ((comm, 1), (SHIFT_N, 2), (DIFF_X, 3)):
        rng = random.Random(seed)
        done = 0
        while done < 200:
            gens = [_random_op(rng, sig) for _ in range(rng.randint(1, 3))]
            gens = [g for g in gens if not g.is_zero]
            if not gens:
                continue
            done += 1
            gb = buchberger(gens, keep_certs=False)
            assert is_groebner(gb.elements, gb.order)
            for g in gens:
                assert gb.contains(g)
    # saturation soundness with the stated power cap, on fixed test inputs
    sigx = OreSignature(ZZ, ("x",), ("central",))
    sat_cases = [
        ([parse_operator("4*x^2 + 2*x", sigx)], ZZ(2), 4),
        ([parse_operator("6*x", sigx), parse_operator("9*x^2", sigx)], ZZ(3), 6),
        ([parse_operator("2*Dn + 2*n", SHIFT_N)], ZZ(2), 4),
    ]
    for gens, c, cap in sat_cases:
        sig = gens[0].sig
        sat = saturate_const(gens, c, sig)
        base = buchberger(gens, keep_certs=False)
        for P in sat.elements:
            assert any(base.contains(P.scale(c ** i)) for i in range(cap + 1))
    _report(5, "600 random Buchberger runs verified by the S/G criterion; "
            "saturation power caps hold", t0, budget=120)


def test_criterion_06_gauss_and_content():
    t0 = time.monotonic()
    rng = random.Random(500)
    for sig in (SHIFT_N, DIFF_X):
        done = 0
        while done < 250:
            P = _random_op(rng, sig)
            Q = _random_op(rng, sig)
            if P.is_zero or Q.is_zero:
                continue
            if not (is_R_primitive(P) and is_R_primitive(Q)):
                continue
            done += 1
            assert is_R_primitive(P * Q)
    L = binom_plus_power_op()
    assert is_R_primitive(L)
    res = contraction_basis(L, order_bound_shift(L))
    three = ZZ(3)
    for e in res.basis:
        assert three.divides(content(e.lc_d()))
    _report(6, "products of R-primitive operators are R-primitive (500 trials); "
            "3 divides every lc in the binomial fixture's contraction basis", t0)


def test_criterion_07_indicial_fixtures():
    t0 = time.monotonic()
    G1, G2 = indpol_system()
    assert indicial_polynomial(G1) == parse_poly("y2 - 1", QQ, ("y1", "y2"))
    assert indicial_polynomial(G2) == parse_poly("(y1-1)*(y1-2)", QQ,
                                                 ("y1", "y2"))
    assert sorted(exponent_candidates(weyl_gb(indpol_system())).candidates) \
        == [(1, 1), (2, 1)]
    assert sorted(exponent_candidates(weyl_gb(candidates2_system())).candidates) \
        == [(0, 0), (1, 1)]
    assert sorted(exponent_candidates(weyl_gb(detect2_system())).candidates) \
        == [(0, 0), (1, 0), (1, 1)]
    _report(7, "indicial polynomials and all three exponent-candidate sets "
            "reproduce exactly", t0, budget=5)


def test_criterion_08_apparent_singularities():
    t0 = time.monotonic()
    x1x2 = ("x1", "x2")
    # removal fixtures
    G = weyl_gb(appsin1_system())
    M = remove_apparent(G, [(0, 0), (0, 1)])
    target = parse_poly("1 - x1 - x1*x2", QQ, x1x2)
    assert all(h == target or h == -target for h in M.head_coefficients())
    assert M.rank() == 3
    G2 = weyl_gb(appsin2_system())
    M2 = remove_apparent(G2, [(1, 0), (1, 1)])
    assert sorted(str(op) for op in M2.generators) \
        == ["Dx1*Dx2^2", "Dx1^2*Dx2", "Dx1^3", "Dx2^3"]
    assert M2.rank() == 6
    # detection fixtures
    verdict, B, Mna = detect_apparent(weyl_gb(candidates2_system()))
    assert verdict == "not-apparent"
    hcs = {str(h) for h in Mna.head_coefficients()}
    assert hcs == {"x1*x2^3 - 3*x1^2*x2^2 + 3*x1^3*x2 - x1^4",
                   "x2^3 - 3*x1*x2^2 + 3*x1^2*x2 - x1^3"}
    verdict, B, Ma = detect_apparent(weyl_gb(detect2_system()))
    assert verdict == "apparent" and sorted(B) == [(0, 0), (1, 0), (1, 1)]
    target = parse_poly("-2 - x1^2 - 2*x1*x2 - x2^2", QQ, x1x2)
    assert all(h == target or h == -target for h in Ma.head_coefficients())
    _report(8, "apparent-singularity removal and detection reproduce all "
            "four fixtures up to units", t0, budget=60)


def test_criterion_09_series_suite():
    t0 = time.monotonic()
    G = weyl_gb(sincos_system())
    sols = series_solutions(G, 6)
    assert [s.initial_exponent() for s in sols] == G.parametric_exponents()

    def fact(k):
        out = 1
        for s in range(1, k + 1):
            out *= s
        return out

    cos_c, sin_c = {}, {}
    for u1 in range(7):
        for u2 in range(7 - u1):
            tot = u1 + u2
            if tot % 2 == 0:
                cos_c[(u1, u2)] = QQ(Fraction((-1) ** (tot // 2),
                                              fact(u1) * fact(u2)))
            else:
                sin_c[(u1, u2)] = QQ(Fraction((-1) ** ((tot - 1) // 2),
                                              fact(u1) * fact(u2)))
    assert sols[0].coeffs == cos_c and sols[1].coeffs == sin_c
    for op in G.generators:
        for s in sols:
            out, _ = apply_to_series(op, s.coeffs, 6)
            assert all(v.is_zero for v in out.values())
    _report(9, "series basis at the ordinary origin matches the cos/sin "
            "truncations with zero residuals up to degree 4", t0)


# ---------------------------------------------------------------------------
# criterion 10: the order-14 complete desingularization (long, via --long)
# ---------------------------------------------------------------------------

def _product_sequence_annihilator():
    """Order-10 annihilator of c_n = n! a_n b_n for n a_n = a_{n-1}+a_{n-2},
    n b_n = b_{n-1}+b_{n-5}, found by linear algebra over QQ(n)."""
    from orecalc.orealg import RatFun
    vars = ("n",)

    def rf(text):
        return RatFun.from_poly(parse_poly(text, QQ, vars))

    one = rf("1")
    zero = RatFun.zero(QQ, vars)
    A = [[one, zero], [zero, one]]
    for k in range(2, 11):
        den = rf("n+%d" % k)
        A.append([(A[k - 1][i] + A[k - 2][i]) / den for i in range(2)])
    B = [[one if j == k else zero for j in range(5)] for k in range(5)]
    for k in range(5, 11):
        den = rf("n+%d" % k)
        B.append([(B[k - 1][j] + B[k - 5][j]) / den for j in range(5)])
    rows = []
    for k in range(11):
        prod = one
        for m in range(1, k + 1):
            prod = prod * rf("n+%d" % m)
        rows.append([prod * A[k][i] * B[k][j]
                     for i in range(2) for j in range(5)])
    # left kernel of the 11 x 10 matrix by Gaussian elimination over QQ(n)
    m = [[rows[r][c] for r in range(11)] for c in range(10)]  # 10 x 11
    piv_cols = []
    r = 0
    for c in range(11):
        piv = next((i for i in range(r, 10) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [e * inv for e in m[r]]
        for i in range(10):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == 10:
            break
    free = [c for c in range(11) if c not in piv_cols]
    assert len(free) == 1
    z = [zero] * 11
    z[free[0]] = one
    for row, c in zip(m, piv_cols):
        z[c] = -row[free[0]]
    # clear denominators and integer contents
    den = MultiPoly.const(QQ, vars, 1)
    from orecalc.polyring import poly_lcm, exact_divide
    for e in z:
        den = poly_lcm(den, e.den)
    polys = [e.num * exact_divide(den, e.den) for e in z]
    lcmden = 1
    for p in polys:
        for c in p.terms.values():
            lcmden = lcmden * c.val.denominator // __import__("math").gcd(
                lcmden, c.val.denominator)
    zz = []
    for p in polys:
        q = MultiPoly.zero(ZZ, vars)
        for e, c in p.terms.items():
            q.terms[e] = ZZ(int(c.val * lcmden))
        zz.append(q)
    g = ZZ(0)
    from orecalc.scalars import gcd as sgcd
    for p in zz:
        for c in p.terms.values():
            g = sgcd(g, c)
    zz = [p.scalar_exact_div(g) for p in zz]
    L = OreOperator.zero(SHIFT_N)
    for k, p in enumerate(zz):
        if not p.is_zero:
            L = L + OreOperator.partial(SHIFT_N, 0, k).lmul_poly(p)
    if L.lc_d().leading()[1].val < 0:
        L = L.scale(ZZ(-1))
    return L


@pytest.mark.long
def test_criterion_10_krattenthaler_example():
    t0 = time.monotonic()
    L = _product_sequence_annihilator()
    assert L.order() == 10
    lc = L.lc_d()
    n10 = parse_poly("n+10", ZZ, ("n",))
    from orecalc.polyring import exact_divide
    q = exact_divide(lc, n10)
    assert q is not None and q.degree(0) == 6
    k = order_bound_shift(L)
    print("order bound:", k)
    # sigma^-13(I_13) = <2n, n(n-26)>
    I13 = coefficient_ideal(submodule_basis(L, 13))
    shifted = [SHIFT_N.sigma(g, 0, -13) for g in I13.generators]
    target = [parse_poly("2*n", ZZ, ("n",)),
              parse_poly("n*(n-26)", ZZ, ("n",))]
    gb1 = commutative_groebner(shifted, SHIFT_N, reduced=True)
    gb2 = commutative_groebner(target, SHIFT_N, reduced=True)
    assert ideal_equal(gb1.elements, gb2.elements)
    T = completely_desingularized(L, k)
    assert T.order() == 14
    assert T.lc_d() == parse_poly("n+14", ZZ, ("n",))
    assert rrem(RatOreOperator.from_operator(T),
                RatOreOperator.from_operator(L)).is_zero
    _report(10, "complete desingularization of the Krattenthaler product "
            "sequence: order 14, lc n+14, I_13 as stated", t0)
