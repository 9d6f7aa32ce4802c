"""Multivariate D-finite systems over rational-function coefficients.

Operators live in K(x_1..x_n)[D_1..D_n] with K = QQ.  Groebner bases here
are the classical field-coefficient kind (no G-polynomials); the term order
on D-exponents is graded with later variables breaking ties, matching the
order used for the indicial-polynomial calibration.

Arithmetic is fraction-free: elements are kept as primitive
polynomial-coefficient operators and reduction steps cross-multiply by head
coefficients instead of dividing (the accumulated multiplier is exactly the
power product that drives the power-series coefficient recursion).

Left-ideal intersections carry a central tag variable s: the tag-dominant
completion of {s*P} U {(1-s)*Q} meets the tag-free part in a basis of the
intersection.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .orealg import OreOperator, OreSignature
from .polyring import (MultiPoly, evaluate, exact_divide, ginvlex_key,
                       poly_gcd, poly_lcm)
from .scalars import QQ, Scalar


class DFiniteError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# layered heads: the term is (tag power, D-exponents); x's live in coefficients
# ---------------------------------------------------------------------------

def _layers(P: OreOperator, tag):
    """Map (j, beta) -> coefficient MultiPoly (tag variable cleared)."""
    out = {}
    for (alpha, beta), c in P.terms.items():
        if tag is None:
            j, a = 0, alpha
        else:
            j = alpha[tag]
            a = alpha[:tag] + (0,) + alpha[tag + 1:]
        key = (j, beta)
        p = out.get(key)
        if p is None:
            p = out[key] = MultiPoly.zero(P.sig.dom, P.sig.vars)
        s = p.terms.get(a)
        s = c if s is None else s + c
        if s:
            p.terms[a] = s
        else:
            p.terms.pop(a, None)
    return {k: p for k, p in out.items() if p.terms}


def _lkey(key):
    j, beta = key
    return (j, ginvlex_key(beta))


def _whead(P: OreOperator, tag):
    layers = _layers(P, tag)
    if not layers:
        raise DFiniteError("zero operator has no head")
    key = max(layers, key=_lkey)
    return key, layers[key]


def _term_op(sig, tag, j, beta, poly=None):
    """poly * s^j * D^beta as an operator."""
    alpha = [0] * sig.n
    if tag is not None:
        alpha[tag] = j
    out = OreOperator.monomial(sig, tuple(alpha), beta)
    if poly is not None:
        out = out.lmul_poly(poly)
    return out


def _content_strip(P: OreOperator, tag):
    """Divide out the polynomial gcd of the layer coefficients and normalize
    the sign of the head layer's leading scalar."""
    if P.is_zero:
        return P
    layers = _layers(P, tag)
    g = None
    for key in sorted(layers, key=_lkey):
        g = layers[key] if g is None else poly_gcd(g, layers[key])
        if g.is_constant():
            break
    out = P
    if not g.is_constant():
        out = OreOperator.zero(P.sig)
        for (j, beta), poly in layers.items():
            out = out + _term_op(P.sig, tag, j, beta, exact_divide(poly, g))
    elif g.constant_term() != P.sig.dom.one:
        out = P.scale(g.constant_term().inverse())
    _, hpoly = _whead(out, tag)
    _, lead = hpoly.leading()
    _, unit = lead.normalize()
    if unit != P.sig.dom.one:
        out = out.scale(unit.inverse())
    return out


def _wdiv(k1, k2):
    (j1, b1), (j2, b2) = k1, k2
    return j1 <= j2 and all(x <= y for x, y in zip(b1, b2))


def _wreduce(F: OreOperator, basis, tag=None, with_multiplier=False):
    """Fraction-free normal form of F modulo field-coefficient generators.

    Returns (ell, R) with ell a polynomial, nonzero at every ordinary point,
    such that ell * F == R modulo the left ideal and no layer of R is
    divisible by a head layer of the basis.
    """
    sig = F.sig
    heads = [_whead(B, tag) for B in basis]
    ell = MultiPoly.const(sig.dom, sig.vars, 1)
    work = F
    done_below = None
    while not work.is_zero:
        layers = _layers(work, tag)
        target = None
        for key in sorted(layers, key=_lkey, reverse=True):
            hit = next((idx for idx, (hk, _) in enumerate(heads)
                        if _wdiv(hk, key)), None)
            if hit is not None:
                target = (key, hit)
                break
        if target is None:
            break
        key, hit = target
        (hj, hb), hp = heads[hit]
        fp = layers[key]
        m = _term_op(sig, tag, key[0] - hj,
                     tuple(x - y for x, y in zip(key[1], hb)))
        work = work.lmul_poly(hp) - (m * basis[hit]).lmul_poly(fp)
        if with_multiplier:
            ell = ell * hp
    if with_multiplier:
        return ell, work
    return _content_strip(work, tag)


def weyl_buchberger(gens, tag=None):
    """Reduced Groebner basis over the rational-function field.

    Only S-polynomials are needed (Remark: G-polynomials are trivial over a
    field).  The working basis stays interreduced via retirement.
    """
    live = {}
    work = [g for g in gens if not g.is_zero]
    work.reverse()
    pending = []
    tick = [0]
    next_id = [0]

    def enqueue(i, j):
        (ki, _), (kj, _) = _whead(live[i], tag), _whead(live[j], tag)
        q = (max(ki[0], kj[0]),
             tuple(max(x, y) for x, y in zip(ki[1], kj[1])))
        pending.append(((_lkey(q), tick[0]), i, j))
        tick[0] += 1

    def insert(H):
        H0 = _wreduce(H, list(live.values()), tag) if live else _content_strip(H, tag)
        if H0.is_zero:
            return
        hk, _ = _whead(H0, tag)
        for i in list(live):
            bk, _ = _whead(live[i], tag)
            if _wdiv(hk, bk):
                work.append(live.pop(i))
        new = next_id[0]
        next_id[0] += 1
        live[new] = H0
        for i in live:
            if i != new:
                enqueue(i, new)

    while work or pending:
        if work:
            insert(work.pop())
            continue
        k = min(range(len(pending)), key=lambda idx: pending[idx][0])
        _, i, j = pending.pop(k)
        if i not in live or j not in live:
            continue
        (ki, pi), (kj, pj) = _whead(live[i], tag), _whead(live[j], tag)
        q = (max(ki[0], kj[0]),
             tuple(max(x, y) for x, y in zip(ki[1], kj[1])))
        g = poly_gcd(pi, pj)
        m1 = _term_op(live[i].sig, tag, q[0] - ki[0],
                      tuple(x - y for x, y in zip(q[1], ki[1])))
        m2 = _term_op(live[j].sig, tag, q[0] - kj[0],
                      tuple(x - y for x, y in zip(q[1], kj[1])))
        s = ((m1 * live[i]).lmul_poly(exact_divide(pj, g))
             - (m2 * live[j]).lmul_poly(exact_divide(pi, g)))
        if not s.is_zero:
            insert(s)

    basis = [live[i] for i in sorted(live)]
    # tail-reduce for the unique reduced basis
    for idx in range(len(basis)):
        others = basis[:idx] + basis[idx + 1:]
        if others:
            key, poly = _whead(basis[idx], tag)
            head = _term_op(basis[idx].sig, tag, key[0], key[1], poly)
            rest = _wreduce(basis[idx] - head, others, tag,
                            with_multiplier=True)
            ell, red = rest
            basis[idx] = _content_strip(head.lmul_poly(ell) + red, tag)
    return sorted(basis, key=lambda b: _lkey(_whead(b, tag)[0]))


# ---------------------------------------------------------------------------
# the WeylGB wrapper
# ---------------------------------------------------------------------------

class WeylGB:
    """Reduced Groebner basis over K(x), kept in primitive polynomial form."""

    def __init__(self, sig, generators):
        self.sig = sig
        self.generators = list(generators)

    @classmethod
    def of(cls, gens):
        gens = list(gens)
        if not gens:
            raise DFiniteError("empty generating set")
        sig = gens[0].sig
        return cls(sig, weyl_buchberger(gens))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return (isinstance(other, WeylGB) and other.sig == self.sig
                and other.generators == self.generators)

    def head_terms(self):
        return [_whead(g, None)[0][1] for g in self.generators]

    def head_coefficients(self):
        return [_whead(g, None)[1] for g in self.generators]

    def reduce(self, F: OreOperator) -> OreOperator:
        return _wreduce(F, self.generators, None)

    def reduce_with_multiplier(self, F: OreOperator):
        return _wreduce(F, self.generators, None, with_multiplier=True)

    def contains(self, F: OreOperator) -> bool:
        return self.reduce(F).is_zero

    def parametric_exponents(self):
        """PE(G): exponents of the D-terms outside the head staircase."""
        heads = self.head_terms()
        n = self.sig.n
        bounds = []
        for i in range(n):
            pure = [b[i] for b in heads
                    if all(b[k] == 0 for k in range(n) if k != i)]
            if not pure:
                raise DFiniteError(
                    "not D-finite: no head term is a pure power of %s"
                    % self.sig.dvars[i])
            bounds.append(min(pure))
        out = []
        for u in itertools.product(*(range(b) for b in bounds)):
            if not any(all(x >= y for x, y in zip(u, h)) for h in heads):
                out.append(tuple(u))
        return sorted(out, key=ginvlex_key)

    def rank(self):
        return len(self.parametric_exponents())

    def __str__(self):
        return "{ %s }" % ", ".join(str(op) for op in self.generators)


def weyl_gb(gens) -> WeylGB:
    return WeylGB.of(gens)


def rank(G: WeylGB) -> int:
    return G.rank()


# ---------------------------------------------------------------------------
# singular locus
# ---------------------------------------------------------------------------

def singular_locus(G: WeylGB) -> MultiPoly:
    """lcm of the head coefficients of the (primitive) generators."""
    out = None
    for hc in G.head_coefficients():
        out = hc if out is None else poly_lcm(out, hc)
    from .polyring import _canon_poly
    return _canon_poly(out)


def is_ordinary(G: WeylGB, point) -> bool:
    """point maps variable name -> Scalar (or int/Fraction)."""
    values = {}
    for name in G.sig.vars:
        v = point[name]
        if not isinstance(v, Scalar):
            v = QQ(v)
        values[name] = v
    return not evaluate(singular_locus(G), values).is_zero


def is_ordinary_origin(G: WeylGB) -> bool:
    return all(not hc.constant_term().is_zero for hc in G.head_coefficients())


# ---------------------------------------------------------------------------
# Euler rewriting and indicial polynomials
# ---------------------------------------------------------------------------

class EulerForm:
    """x^m P = sum over x-terms v of x^v * (polynomial in the Euler deltas)."""

    def __init__(self, P, m, pieces, yvars):
        self.P = P
        self.m = m
        self.pieces = pieces          # list of (v, MultiPoly in yvars), sorted
        self.yvars = yvars

    def __iter__(self):
        return iter(self.pieces)

    def minimal(self):
        return self.pieces[0]

    def expand(self) -> OreOperator:
        """Re-expansion as an operator; equals x^m * P exactly."""
        sig = self.P.sig
        out = OreOperator.zero(sig)
        for v, poly in self.pieces:
            xterm = OreOperator.from_poly(
                sig, MultiPoly.monomial(sig.dom, sig.vars, v, 1))
            dpoly = OreOperator.zero(sig)
            for e, c in poly.terms.items():
                piece = OreOperator.const(sig, c)
                for i, ei in enumerate(e):
                    delta = (OreOperator.from_poly(
                        sig, MultiPoly.var(sig.dom, sig.vars, sig.vars[i]))
                        * OreOperator.partial(sig, i))
                    piece = piece * delta ** ei
                dpoly = dpoly + piece
            out = out + xterm * dpoly
        return out


def _falling_factorial_poly(dom, yvars, i, m):
    y = MultiPoly.var(dom, yvars, yvars[i])
    out = MultiPoly.const(dom, yvars, 1)
    for s in range(m):
        out = out * (y - MultiPoly.const(dom, yvars, s))
    return out


def euler_rewrite(P: OreOperator) -> EulerForm:
    """Write x^(m,..,m) P as a sum of x-terms times Euler-delta polynomials."""
    if P.is_zero:
        raise DFiniteError("zero operator")
    sig = P.sig
    n = sig.n
    m = P.order()
    yvars = tuple("y%d" % (i + 1) for i in range(n))
    pieces = {}
    for (w, u), c in P.terms.items():
        v = tuple(wi + m - ui for wi, ui in zip(w, u))
        poly = MultiPoly.const(sig.dom, yvars, c)
        for i in range(n):
            if u[i]:
                poly = poly * _falling_factorial_poly(sig.dom, yvars, i, u[i])
        cur = pieces.get(v)
        pieces[v] = poly if cur is None else cur + poly
    out = [(v, p) for v, p in pieces.items() if not p.is_zero]
    out.sort(key=lambda vp: ginvlex_key(vp[0]))
    return EulerForm(P, m, out, yvars)


def indicial_polynomial(P: OreOperator) -> MultiPoly:
    """Delta-polynomial attached to the minimal x-term of the Euler form."""
    if P.is_zero:
        return MultiPoly.zero(QQ, ("y1",))
    return euler_rewrite(P).minimal()[1]


# ---------------------------------------------------------------------------
# exponent candidates
# ---------------------------------------------------------------------------

class ExponentCandidateSet:
    def __init__(self, candidates, subideal):
        self.candidates = set(candidates)
        self.subideal = list(subideal)

    def __iter__(self):
        return iter(sorted(self.candidates))

    def __len__(self):
        return len(self.candidates)


def exponent_candidates(G: WeylGB) -> ExponentCandidateSet:
    """Common nonnegative integer roots of the generators' indicial
    polynomials (a zero-dimensional subideal of the indicial ideal)."""
    from .pid_groebner import buchberger, eliminate, reduce_basis
    from .polyring import nonneg_integer_roots
    inds = [indicial_polynomial(op) for op in G.generators]
    inds = [p for p in inds if not p.is_zero]
    if not inds:
        raise DFiniteError("all indicial polynomials vanish")
    yvars = inds[0].vars
    n = len(yvars)
    ysig = OreSignature(QQ, yvars, ("central",) * n)
    ops = [OreOperator.from_poly(ysig, p) for p in inds]
    gb = reduce_basis(buchberger(ops, keep_certs=False))
    # zero-dimensionality: every y_i must appear as a pure head power
    heads = [op.head_monomial()[0][0] for op in gb.elements]
    for i in range(n):
        if not any(h[i] > 0 and all(h[k] == 0 for k in range(n) if k != i)
                   for h in heads):
            raise DFiniteError(
                "the indicial subideal is not zero-dimensional in %s; "
                "augment the generators with further reduced ideal elements"
                % yvars[i])
    # per-variable elimination to univariate polynomials, then a root grid
    coords = []
    for i in range(n):
        egb = eliminate(ops, [yvars[i]], ysig)
        unis = [op.dcoeff((0,) * n) for op in egb.elements]
        unis = [p for p in unis if not p.is_zero]
        if not unis:
            raise DFiniteError("elimination to %s failed" % yvars[i])
        roots = None
        for p in unis:
            r = nonneg_integer_roots(p, i)
            roots = r if roots is None else roots & r
        coords.append(sorted(roots))
    cands = []
    for w in itertools.product(*coords):
        values = {yvars[i]: QQ(w[i]) for i in range(n)}
        if all(evaluate(p, values).is_zero for p in inds):
            cands.append(tuple(w))
    return ExponentCandidateSet(cands, inds)


# ---------------------------------------------------------------------------
# left ideal intersection via a central tag
# ---------------------------------------------------------------------------

def intersect_left_ideals(I: WeylGB, J: WeylGB) -> WeylGB:
    """GB of the intersection: complete {s*P} U {(1-s)*Q} under a
    tag-dominant order and keep the tag-free part."""
    sig = I.sig
    ext = sig.extend("s_", "central")
    tag = ext.n - 1
    s = MultiPoly.var(ext.dom, ext.vars, "s_")
    gens = []
    for P in I.generators:
        gens.append(_lift_op(P, ext).lmul_poly(s))
    for Q in J.generators:
        lifted = _lift_op(Q, ext)
        gens.append(lifted - lifted.lmul_poly(s))
    gb = weyl_buchberger(gens, tag=tag)
    free = [g for g in gb if g.deg_x(tag) == 0 and g.deg_d(tag) == 0]
    out = [_drop_pair(g, sig, tag) for g in free]
    return WeylGB(sig, weyl_buchberger(out))


def _lift_op(op: OreOperator, ext: OreSignature) -> OreOperator:
    out = OreOperator(ext)
    out.terms = {(a + (0,), b + (0,)): c for (a, b), c in op.terms.items()}
    return out


def _drop_pair(op: OreOperator, sig: OreSignature, idx: int) -> OreOperator:
    out = OreOperator(sig)
    out.terms = {(a[:idx] + a[idx + 1:], b[:idx] + b[idx + 1:]): c
                 for (a, b), c in op.terms.items()}
    return out


# ---------------------------------------------------------------------------
# apparent singularities
# ---------------------------------------------------------------------------

def _unit_box(n, m):
    out = [u for u in itertools.product(range(m + 1), repeat=n) if sum(u) <= m]
    return sorted(out, key=ginvlex_key)


def _euler_point_ideal(sig, u) -> WeylGB:
    """The rank-1 ideal <x_i D_i - u_i : i> annihilating x^u."""
    gens = []
    for i in range(sig.n):
        x = MultiPoly.var(sig.dom, sig.vars, sig.vars[i])
        op = (OreOperator.from_poly(sig, x) * OreOperator.partial(sig, i)
              - OreOperator.const(sig, u[i]))
        gens.append(op)
    return WeylGB.of(gens)


def remove_apparent(G: WeylGB, B) -> WeylGB:
    """Left multiple of G that is ordinary at the origin, built from the
    initial exponents B of the solution space."""
    B = {tuple(u) for u in B}
    d = G.rank()
    if len(B) != d:
        raise DFiniteError("need exactly rank(G) = %d initial exponents, got %d"
                           % (d, len(B)))
    m = max(sum(u) for u in B) if B else 0
    rest = [u for u in _unit_box(G.sig.n, m) if u not in B]
    M = G
    for u in rest:
        M = intersect_left_ideals(M, _euler_point_ideal(G.sig, u))
    return M


def detect_apparent(G: WeylGB, candidates=None):
    """Decide whether the origin is an apparent singularity.

    Returns (verdict, witness_exponents, multiple): "apparent" with the
    witness subset B and the ordinary left multiple, or ("not-apparent",
    None, M_last) where M_last is the last multiple inspected.  A known
    candidate set (e.g. the initial exponents of the solution space) can be
    passed to bypass the indicial computation.
    """
    d = G.rank()
    if candidates is not None:
        S = sorted({tuple(u) for u in candidates})
    else:
        S = sorted(exponent_candidates(G).candidates)
    if len(S) < d:
        return "not-apparent", None, None
    m = max(sum(u) for u in S)
    box = _unit_box(G.sig.n, m)
    last = None
    for B in itertools.combinations(S, d):
        Bset = set(B)
        M = G
        for u in (u for u in box if u not in Bset):
            M = intersect_left_ideals(M, _euler_point_ideal(G.sig, u))
        last = M
        if is_ordinary_origin(M):
            return "apparent", set(B), M
    return "not-apparent", None, last


# ---------------------------------------------------------------------------
# truncated power-series solutions at an ordinary origin
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Coefficients of x^u for |u| <= cap (exact rationals)."""

    __slots__ = ("vars", "cap", "coeffs")

    def __init__(self, vars, cap, coeffs):
        self.vars = tuple(vars)
        self.cap = cap
        self.coeffs = {tuple(u): c for u, c in coeffs.items() if c}

    def coeff(self, u):
        return self.coeffs.get(tuple(u), QQ.zero)

    def derivative_at_origin(self, u):
        """c_u in f = sum c_u/u! x^u."""
        fact = 1
        for ui in u:
            for s in range(1, ui + 1):
                fact *= s
        return self.coeff(u) * QQ(fact)

    def initial_exponent(self):
        if not self.coeffs:
            raise DFiniteError("zero series has no initial exponent")
        return min(self.coeffs, key=ginvlex_key)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for u in sorted(self.coeffs, key=ginvlex_key):
            mono = "*".join("%s^%d" % (v, e) if e > 1 else v
                            for v, e in zip(self.vars, u) if e)
            c = self.coeffs[u]
            if not mono:
                parts.append(str(c))
            elif c == QQ(1):
                parts.append(mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts) + " + O(deg %d)" % (self.cap + 1)


def series_solutions(G: WeylGB, cap: int):
    """Basis of formal power series solutions at an ordinary origin.

    One series per parametric term: the solution whose derivative-at-origin
    vector is the corresponding unit vector.  For a non-parametric D^u the
    normal form ell * D^u = sum of a_lambda(x) * lambda modulo the ideal
    gives c_u = sum a_lambda(0) c_lambda / ell(0).
    """
    if not is_ordinary_origin(G):
        raise DFiniteError("the origin is a singularity; series bases at "
                           "singular points are not computed")
    sig = G.sig
    pe = G.parametric_exponents()
    pe_set = set(pe)
    exps = _unit_box(sig.n, cap)
    origin = {v: QQ(0) for v in sig.vars}
    rows = {}
    for u in exps:
        if u in pe_set:
            continue
        ell, nf = G.reduce_with_multiplier(
            OreOperator.partial(sig, 0, 0) if not any(u) else
            OreOperator.monomial(sig, (0,) * sig.n, u))
        ell0 = evaluate(ell, origin)
        if ell0.is_zero:
            raise DFiniteError("reduction multiplier vanishes at the origin")
        row = {}
        for beta, poly in _layers(nf, None).items():
            if beta[1] not in pe_set:
                raise DFiniteError("normal form of D^%s is not parametric" % (u,))
            row[beta[1]] = evaluate(poly, origin).exact_div(ell0)
        rows[u] = row
    out = []
    for lam in pe:
        coeffs = {}
        for u in exps:
            if u in pe_set:
                c = QQ(1) if u == lam else QQ(0)
            else:
                c = rows[u].get(lam, QQ(0))
            fact = 1
            for ui in u:
                for s in range(1, ui + 1):
                    fact *= s
            coeffs[u] = c * QQ(Fraction(1, fact))
        out.append(TruncatedSeries(sig.vars, cap, coeffs))
    return out
