"""Univariate contraction of Ore ideals.

For L in R[x][D] the contraction ideal cont(L) collects the denominator-free
left multiples: Q_R(x)[D] L intersected with R[x][D].  The pipeline is

  1. span the submodule M_k = {P in cont(L) : deg_D(P) <= k} by clearing the
     right-remainder linear system and solving it over R[x] (syzygy kernel),
  2. extract a desingularized operator from the k-th coefficient ideal by an
     extended gcd over the fraction field,
  3. saturate the ideal generated by M_k at the content of its leading
     coefficient.

Order bounds are computed for the shift case (dispersion of the leading
against the trailing coefficient); differential bounds are caller-supplied.
"""

from __future__ import annotations

import logging

from .orealg import (GRADED, OreError, OreOperator, OreSignature,
                     RatOreOperator, RatFun, rrem)
from .polyring import (MultiPoly, content, exact_divide, gcd_ext_list,
                       multiplicity, nonneg_integer_roots, poly_lcm, resultant,
                       substitute)
from .pid_groebner import (GroebnerBasis, buchberger, kernel, reduce_basis,
                           reduce_operator, saturate_const)
from .scalars import Scalar, gcd as scalar_gcd

log = logging.getLogger("orecalc.contraction")


class ContractionError(ArithmeticError):
    pass


class SubmoduleBasis:
    """Spanning set over R[x] of M_k(L), the order-<=k slice of cont(L)."""

    def __init__(self, L, bound, generators):
        self.L = L
        self.bound = bound
        self.generators = list(generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def verify(self):
        Lr = RatOreOperator.from_operator(self.L)
        for g in self.generators:
            if g.order() > self.bound:
                raise ContractionError("generator exceeds the order bound")
            if not rrem(RatOreOperator.from_operator(g), Lr).is_zero:
                raise ContractionError("generator is not a left multiple of L")
        return True


class CoefficientIdealBasis:
    """Generators of the k-th coefficient ideal I_k in R[x]."""

    def __init__(self, k, generators):
        self.k = k
        self.generators = list(generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


class ContractionResult:
    def __init__(self, basis: GroebnerBasis, desing: OreOperator,
                 sat_constant: Scalar, bound_used: int):
        self.basis = basis
        self.desing = desing
        self.sat_constant = sat_constant
        self.bound_used = bound_used

    def __iter__(self):
        return iter(self.basis)


def _require_univariate(L: OreOperator):
    if L.sig.n != 1:
        raise ContractionError("contraction is implemented for univariate operators")


# ---------------------------------------------------------------------------
# the k-th submodule via the right-remainder linear system
# ---------------------------------------------------------------------------

def submodule_basis(L: OreOperator, k: int) -> SubmoduleBasis:
    """Spanning set of M_k(L) over R[x]; the zero module when k < order(L)."""
    _require_univariate(L)
    r = L.order()
    if r <= 0:
        raise ContractionError("operator must have positive order")
    if k < 0:
        raise ContractionError("negative order bound")
    if k < r:
        return SubmoduleBasis(L, k, [])
    sig = L.sig
    Lr = RatOreOperator.from_operator(L)
    one = RatFun.one(sig.dom, sig.vars)

    # rows[i] = coefficients of rrem(D^(k-i), L) as a vector over Q_R(x)
    remainders = []
    cur = RatOreOperator(sig, {0: one})
    for _ in range(k + 1):
        remainders.append([cur.coeff(j) for j in range(r)])
        cur = rrem(cur.lmul_term(one, 1), Lr)
    remainders.reverse()

    # clear denominators column by column
    rows = [[None] * r for _ in range(k + 1)]
    for j in range(r):
        den = MultiPoly.const(sig.dom, sig.vars, 1)
        for i in range(k + 1):
            den = poly_lcm(den, remainders[i][j].den)
        for i in range(k + 1):
            e = remainders[i][j]
            rows[i][j] = e.num * exact_divide(den, e.den)

    gens = []
    for vec in kernel(rows):
        op = OreOperator.zero(sig)
        for idx, p in enumerate(vec):
            if not p.is_zero:
                op = op + OreOperator.partial(sig, 0, k - idx).lmul_poly(p)
        gens.append(op)
    return SubmoduleBasis(L, k, gens)


def coefficient_ideal(M: SubmoduleBasis) -> CoefficientIdealBasis:
    """I_k generators: the D^k coefficients of a spanning set of M_k."""
    k = M.bound
    gens = []
    for B in M.generators:
        p = B.dcoeff((k,))
        if not p.is_zero:
            gens.append(p)
    return CoefficientIdealBasis(k, gens)


# ---------------------------------------------------------------------------
# desingularized operators
# ---------------------------------------------------------------------------

def desingularized_operator(L: OreOperator, k: int,
                            module: SubmoduleBasis | None = None) -> OreOperator:
    """Operator in M_k whose leading coefficient has minimal degree in I_k.

    Implements the extended-Euclid construction: a minimal-degree element of
    the extension of I_k to Q_R[x] is traced back through cofactors and the
    denominators are cleared.
    """
    _require_univariate(L)
    if k < L.order():
        raise ContractionError("bound %d below the order %d of L" % (k, L.order()))
    M = module if module is not None else submodule_basis(L, k)
    if M.bound != k:
        raise ContractionError("module bound %d does not match k=%d" % (M.bound, k))
    pairs = [(B, B.dcoeff((k,))) for B in M.generators]
    pairs = [(B, p) for B, p in pairs if not p.is_zero]
    if not pairs:
        raise ContractionError("the %d-th coefficient ideal is zero" % k)
    s, cofs = gcd_ext_list([p for _, p in pairs], 0)
    T = OreOperator.zero(L.sig)
    for (B, _), c in zip(pairs, cofs):
        if not c.is_zero:
            T = T + B.lmul_poly(c)
    return _canonicalize_in_module(T, k, M.generators)


def _canonicalize_in_module(T: OreOperator, k: int, gens) -> OreOperator:
    """Reduce everything below D^k modulo the ideal of the module generators;
    the D^k coefficient (the desingularized leading coefficient) is kept."""
    sig = T.sig
    high = OreOperator.partial(sig, 0, k).lmul_poly(T.dcoeff((k,)))
    low = T - high
    gb = buchberger(gens, keep_certs=False)
    red, _ = reduce_operator(low, gb.elements, euclidean=True)
    return high + red


# ---------------------------------------------------------------------------
# shift order bound via dispersions
# ---------------------------------------------------------------------------

def order_bound_shift(L: OreOperator) -> int:
    """order(L) + dispersion of lc against the trailing coefficient.

    The dispersion is the largest j in N such that lc(x+j) and l_0(x) have a
    common factor, detected through the vanishing of a resultant; no
    factorization is performed.
    """
    _require_univariate(L)
    sig = L.sig
    if sig.kinds[0] != "shift":
        raise ContractionError(
            "automatic order bounds exist for the shift case only; "
            "supply a bound for differential operators")
    r = L.order()
    if r <= 0:
        raise ContractionError("operator must have positive order")
    l0 = L.dcoeff((0,))
    if l0.is_zero:
        raise ContractionError("trailing coefficient vanishes")
    lc = L.lc_d()
    xname = sig.vars[0]
    jname = "j_" if xname != "j_" else "jj_"
    vars2 = (xname, jname)
    lc2 = _embed(lc, vars2)
    l02 = _embed(l0, vars2)
    xj = (MultiPoly.var(sig.dom, vars2, xname)
          + MultiPoly.var(sig.dom, vars2, jname))
    shifted = substitute(lc2, 0, xj)
    res = resultant(shifted, l02, 0)
    if res.is_zero:
        raise ContractionError("degenerate dispersion resultant")
    disp = nonneg_integer_roots(res, 1)
    return r + (max(disp) if disp else 0)


def _embed(p: MultiPoly, vars2):
    out = MultiPoly(p.dom, vars2)
    out.terms = {(e[0], 0): c for e, c in p.terms.items()}
    return out


# ---------------------------------------------------------------------------
# contraction bases and complete desingularization
# ---------------------------------------------------------------------------

def contraction_basis(L: OreOperator, k: int) -> ContractionResult:
    """Basis of cont(L) given a valid desingularization order bound k."""
    M = submodule_basis(L, k)
    T = desingularized_operator(L, k, M)
    a = content(T.lc_d())
    if a.is_unit:
        gb = reduce_basis(buchberger(M.generators))
    else:
        gb = saturate_const(M.generators, a, L.sig)
    return ContractionResult(gb, T, a, k)


def completely_desingularized(L: OreOperator, k: int) -> OreOperator:
    """A desingularized operator whose leading-coefficient content divides
    that of every desingularized operator for L."""
    res = contraction_basis(L, k)
    ell = max(B.order() for B in res.basis)
    M = submodule_basis(L, ell)
    top = [B for B in M.generators if B.order() == ell]
    lcs = [B.dcoeff((ell,)) for B in top]
    gb = reduce_basis(buchberger([OreOperator.from_poly(L.sig, p) for p in lcs]))
    ranked = []
    for elem, cert in zip(gb.elements, gb.certificates):
        p = elem.dcoeff((0,) * L.sig.n)
        ranked.append(((p.degree(0), _content_key(content(p))), p, cert))
    ranked.sort(key=lambda t: t[0])
    key, f, cert = ranked[0]
    ties = [p for (kk, p, _) in ranked if kk[0] == key[0]]
    if len(ties) > 1:
        log.info("minimal-degree choice in I_%d is not unique: %s",
                 ell, [str(p) for p in ties])
    F = OreOperator.zero(L.sig)
    for idx, cof in cert.items():
        u = cof.dcoeff((0,) * L.sig.n)
        if not u.is_zero:
            F = F + top[idx].lmul_poly(u)
    F = _canonicalize_in_module(F, ell, M.generators)
    if F.dcoeff((ell,)) != f:
        raise ContractionError("cofactor trace lost the minimal leading coefficient")
    return F


def _content_key(c: Scalar):
    v = c.val
    if isinstance(v, tuple):
        return (len(v), v)
    return (0, abs(v))


# ---------------------------------------------------------------------------
# primitivity, removability, section 3.5 product formula
# ---------------------------------------------------------------------------

def is_R_primitive(P: OreOperator) -> bool:
    """Whether the contents of the D-coefficients have trivial gcd."""
    if P.is_zero:
        raise ContractionError("zero operator")
    g = P.sig.dom.zero
    for beta in sorted(P.dcoeffs()):
        g = scalar_gcd(g, content(P.dcoeff(beta)))
        if g.is_unit:
            return True
    return g.is_unit


def removable_multiplicity(L: OreOperator, p: MultiPoly, k: int) -> int:
    """How many factors of p can be removed from lc(L) at order k."""
    _require_univariate(L)
    if p.is_constant():
        raise ContractionError("p must be a nonconstant divisor of the leading coefficient")
    lc = L.lc_d()
    if exact_divide(lc, p) is None:
        raise ContractionError("p does not divide the leading coefficient")
    r = L.order()
    M = submodule_basis(L, k + r)
    gens = [B.dcoeff((k + r,)) for B in M.generators]
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ContractionError("empty coefficient ideal")
    shifted = [L.sig.sigma(g, 0, -k) for g in gens]
    return multiplicity(p, lc) - min(multiplicity(p, g) for g in shifted)


def factorial_product_order1(alpha: MultiPoly, betas) -> list:
    """Coefficients of the recurrence for n! a_n b_n when a has order one:
    gamma_i = beta_i * product of alpha(n - j) for j < i."""
    betas = list(betas)
    if not betas:
        raise ContractionError("at least one beta coefficient required")
    out = []
    prod = MultiPoly.const(alpha.dom, alpha.vars, 1)
    one = alpha.dom.one
    for i, beta in enumerate(betas, start=1):
        from .polyring import apply_sigma
        prod = prod * apply_sigma(alpha, 0, -(i - 1), one, one)
        out.append(beta * prod)
    return out
