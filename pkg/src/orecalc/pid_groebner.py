"""Groebner bases of left ideals in R[x][D] with PID coefficients.

The engine follows the classical Buchberger loop extended by G-polynomials:
over a PID both the S-polynomial (cancelling lcm'd head monomials) and the
G-polynomial (realizing the gcd of head coefficients) are needed.  Pair
selection uses the normal strategy (smallest quasi-lcm first, FIFO ties).

Every basis element can carry a certificate: a cofactor map expressing it as
a left combination of the input generators.  Certificates survive reduction
and interreduction, which is what the contraction pipeline needs to trace
completely desingularized operators back through the computation.

A small companion engine computes Groebner bases of submodules of R[x]^k
under a position-over-term order; its only client is :func:`kernel`, the
syzygy solver behind the M_k submodule construction.
"""

from __future__ import annotations

from .orealg import (GRADED, OreError, OreOperator, OreSignature, TermOrder,
                     quasi_divides, quasi_quotient)
from .polyring import MultiPoly, ginvlex_key
from .scalars import Scalar, gcd_ext, lcm as scalar_lcm


class GroebnerError(ArithmeticError):
    pass


class GroebnerBasis:
    """A Groebner basis plus optional certificates over the inputs."""

    def __init__(self, elements, order, certificates=None, inputs=None):
        self.elements = list(elements)
        self.order = order
        self.certificates = certificates
        self.inputs = inputs

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def reduce(self, F: OreOperator) -> OreOperator:
        return reduce_operator(F, self.elements, self.order)[0]

    def contains(self, F: OreOperator) -> bool:
        return self.reduce(F).is_zero

    def check_certificates(self):
        """Re-expand every certificate; raises on mismatch."""
        if self.certificates is None or self.inputs is None:
            raise GroebnerError("no certificates recorded")
        for elem, cert in zip(self.elements, self.certificates):
            acc = OreOperator.zero(elem.sig)
            for i, cof in cert.items():
                acc = acc + cof * self.inputs[i]
            if acc != elem:
                raise GroebnerError("certificate does not re-expand")
        return True


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def reduce_operator(F, basis, order=GRADED, euclidean=False):
    """Reduced form of F modulo the nonzero operators in ``basis``.

    Returns (G, cofactors) with F == G + sum(cofactors[j] * basis[j]) and no
    monomial of G quasi-divisible by any head monomial of the basis.  With
    ``euclidean`` set, coefficients of term-divisible monomials are further
    divided with remainder, giving canonical small residues.
    """
    sig = F.sig
    heads = []
    for j, B in enumerate(basis):
        if B.is_zero:
            heads.append(None)
        else:
            (ba, bb), bc = B.head_monomial(order)
            heads.append((bc, ba, bb))
    cofs = [OreOperator.zero(sig) for _ in basis]
    G = OreOperator.zero(sig)
    L = F
    while not L.is_zero:
        (la, lb), lc = L.head_monomial(order)
        hit = None
        for j, h in enumerate(heads):
            if h is not None and quasi_divides(h, (lc, la, lb)):
                hit = j
                break
        if hit is not None:
            c, da, db = quasi_quotient(heads[hit], (lc, la, lb), sig)
            M = OreOperator.monomial(sig, da, db, c)
            L = L - M * basis[hit]
            cofs[hit] = cofs[hit] + M
            continue
        if euclidean:
            estep = None
            for j, h in enumerate(heads):
                if h is None:
                    continue
                bc, ba, bb = h
                if (all(x <= y for x, y in zip(ba, la))
                        and all(x <= y for x, y in zip(bb, lb))):
                    q, r = lc.divmod_canonical(bc)
                    if q:
                        estep = (j, q, r)
                        break
            if estep is not None:
                j, q, r = estep
                bc, ba, bb = heads[j]
                c, da, db = quasi_quotient(
                    (bc, ba, bb), (lc - r, la, lb), sig)
                M = OreOperator.monomial(sig, da, db, c)
                L = L - M * basis[j]
                cofs[j] = cofs[j] + M
                continue
        mono = OreOperator.monomial(sig, la, lb, lc)
        G = G + mono
        L = L - mono
    return G, cofs


def tail_reduce(F, basis, order=GRADED):
    """Reduce every monomial below the head of F; the head is kept."""
    if F.is_zero:
        return F
    (fa, fb), fc = F.head_monomial(order)
    head = OreOperator.monomial(F.sig, fa, fb, fc)
    rest, _ = reduce_operator(F - head, basis, order, euclidean=True)
    return head + rest


# ---------------------------------------------------------------------------
# S- and G-polynomials
# ---------------------------------------------------------------------------

def _pair_data(G1, G2, order):
    (a1, b1), c1 = G1.head_monomial(order)
    (a2, b2), c2 = G2.head_monomial(order)
    qa = tuple(max(x, y) for x, y in zip(a1, a2))
    qb = tuple(max(x, y) for x, y in zip(b1, b2))
    return (a1, b1, c1), (a2, b2, c2), (qa, qb)


def _cofactor_monomial(sig, head, qterm, coeff_target, order):
    """Monomial m with HM(m * (head monomial)) == coeff_target * qterm."""
    alpha, beta, hc = head
    da = tuple(y - x for x, y in zip(alpha, qterm[0]))
    db = tuple(y - x for x, y in zip(beta, qterm[1]))
    if all(g == sig.dom.one for g in sig.gammas):
        return OreOperator.monomial(sig, da, db, coeff_target)
    probe = OreOperator.monomial(sig, da, db) * OreOperator.monomial(sig, alpha, beta, hc)
    _, got = probe.head_monomial(order)
    r = got.exact_div(hc)          # the unit from Prop. product
    return OreOperator.monomial(sig, da, db, coeff_target * r.inverse())


def spol(G1: OreOperator, G2: OreOperator, order=GRADED) -> OreOperator:
    """S-polynomial: head monomials cancel at the quasi-lcm."""
    h1, h2, q = _pair_data(G1, G2, order)
    l = scalar_lcm(h1[2], h2[2])
    m1 = _cofactor_monomial(G1.sig, h1, q, l.exact_div(h1[2]), order)
    m2 = _cofactor_monomial(G1.sig, h2, q, l.exact_div(h2[2]), order)
    return m1 * G1 - m2 * G2


def gpol(G1: OreOperator, G2: OreOperator, order=GRADED) -> OreOperator:
    """G-polynomial: gcd of head coefficients appears at the quasi-lcm."""
    h1, h2, q = _pair_data(G1, G2, order)
    g, c1, c2 = gcd_ext(h1[2], h2[2])
    out = OreOperator.zero(G1.sig)
    if c1:
        out = out + _cofactor_monomial(G1.sig, h1, q, c1, order) * G1
    if c2:
        out = out + _cofactor_monomial(G1.sig, h2, q, c2, order) * G2
    return out


def _spair_cofactors(G1, G2, order):
    """Cofactor monomials (m1, m2) with spol = m1*G1 - m2*G2."""
    h1, h2, q = _pair_data(G1, G2, order)
    l = scalar_lcm(h1[2], h2[2])
    return (_cofactor_monomial(G1.sig, h1, q, l.exact_div(h1[2]), order),
            _cofactor_monomial(G1.sig, h2, q, l.exact_div(h2[2]), order))


def _gpair_cofactors(G1, G2, order):
    h1, h2, q = _pair_data(G1, G2, order)
    g, c1, c2 = gcd_ext(h1[2], h2[2])
    m1 = _cofactor_monomial(G1.sig, h1, q, c1, order) if c1 else None
    m2 = _cofactor_monomial(G1.sig, h2, q, c2, order) if c2 else None
    return m1, m2


# ---------------------------------------------------------------------------
# Buchberger loop
# ---------------------------------------------------------------------------

def _cert_scale(cert, M):
    return {i: M * cof for i, cof in cert.items()}


def _cert_add(c1, c2):
    out = dict(c1)
    for i, cof in c2.items():
        s = out.get(i)
        s = cof if s is None else s + cof
        if s.is_zero:
            out.pop(i, None)
        else:
            out[i] = s
    return out


def _cert_sub_reduction(cert, cofs, basis_certs):
    out = dict(cert)
    for j, cof in enumerate(cofs):
        if not cof.is_zero:
            out = _cert_add(out, _cert_scale({k: -v for k, v in basis_certs[j].items()}, cof))
    # the scale above multiplied by cof on the left of the negated cofactors
    return {i: c for i, c in out.items() if not c.is_zero}


def buchberger(gens, order=GRADED, keep_certs=True) -> GroebnerBasis:
    """Groebner basis of the left ideal generated by ``gens``.

    The working basis is kept interreduced: when a new element's head
    monomial quasi-divides an existing head, the old element retires and
    its reduced form re-enters the worklist.  Over ZZ this makes head
    coefficients converge Euclid-fast instead of through long gpol chains.
    """
    inputs = list(gens)
    sig = None
    for g in inputs:
        sig = g.sig
        break
    live = {}          # id -> operator
    certs = {}         # id -> certificate
    pending = []       # ((key, tick), id_i, id_j)
    work = []          # (operator, certificate) waiting to be inserted
    tick = [0]
    next_id = [0]

    def enqueue(i, j):
        _, _, q = _pair_data(live[i], live[j], order)
        pending.append(((order.key(*q), tick[0]), i, j))
        tick[0] += 1

    def insert(H, cert):
        H0, cofs = reduce_operator(H, list(live.values()), order, euclidean=True)
        if keep_certs:
            cert = _cert_sub_reduction(cert, cofs, list(certs.values()))
        if H0.is_zero:
            return
        (ha, hb), hc = H0.head_monomial(order)
        hm = (hc, ha, hb)
        for i in list(live):
            (ba, bb), bc = live[i].head_monomial(order)
            if quasi_divides(hm, (bc, ba, bb)):
                work.append((live.pop(i), certs.pop(i)))
        new = next_id[0]
        next_id[0] += 1
        live[new] = H0
        certs[new] = cert
        for i in live:
            if i != new:
                enqueue(i, new)

    for i, g in enumerate(inputs):
        if not g.is_zero:
            work.append((g, {i: OreOperator.const(g.sig, 1)}))
    if not work:
        return GroebnerBasis([], order, [] if keep_certs else None, inputs)

    while work or pending:
        if work:
            H, cert = work.pop()
            insert(H, cert)
            continue
        k = min(range(len(pending)), key=lambda idx: pending[idx][0])
        _, i, j = pending.pop(k)
        if i not in live or j not in live:
            continue
        G1, G2 = live[i], live[j]
        h1, h2, q = _pair_data(G1, G2, order)
        # G-step: ensure the gcd of head coefficients is realized at the qlcm
        need_g = True
        for B in live.values():
            (ba, bb), bc = B.head_monomial(order)
            if (all(x <= y for x, y in zip(ba, q[0]))
                    and all(x <= y for x, y in zip(bb, q[1]))
                    and bc.divides(h1[2]) and bc.divides(h2[2])):
                need_g = False
                break
        if need_g:
            m1, m2 = _gpair_cofactors(G1, G2, order)
            H = OreOperator.zero(sig)
            cert = {}
            if m1 is not None:
                H = H + m1 * G1
                if keep_certs:
                    cert = _cert_add(cert, _cert_scale(certs[i], m1))
            if m2 is not None:
                H = H + m2 * G2
                if keep_certs:
                    cert = _cert_add(cert, _cert_scale(certs[j], m2))
            insert(H, cert)
        if i not in live or j not in live:
            continue
        # S-step
        m1, m2 = _spair_cofactors(G1, G2, order)
        H = m1 * G1 - m2 * G2
        if H.is_zero:
            continue
        cert = {}
        if keep_certs:
            cert = _cert_add(_cert_scale(certs[i], m1),
                             _cert_scale({k2: -v for k2, v in certs[j].items()}, m2))
        insert(H, cert)

    ids = sorted(live)
    basis = [live[i] for i in ids]
    out_certs = [certs[i] for i in ids]
    return GroebnerBasis(basis, order, out_certs if keep_certs else None, inputs)


def is_groebner(elements, order=GRADED) -> bool:
    """Buchberger criterion: S-polynomials reduce to zero, G-polynomials are
    top-reducible."""
    elems = [g for g in elements if not g.is_zero]
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            h1, h2, q = _pair_data(elems[i], elems[j], order)
            ok = False
            for B in elems:
                (ba, bb), bc = B.head_monomial(order)
                if (all(x <= y for x, y in zip(ba, q[0]))
                        and all(x <= y for x, y in zip(bb, q[1]))
                        and bc.divides(h1[2]) and bc.divides(h2[2])):
                    ok = True
                    break
            if not ok:
                return False
            s = spol(elems[i], elems[j], order)
            if not reduce_operator(s, elems, order)[0].is_zero:
                return False
    return True


def reduce_basis(gb: GroebnerBasis) -> GroebnerBasis:
    """Reduced Groebner basis: minimal heads, reduced tails, canonical units."""
    order = gb.order
    items = [(e, c) for e, c in zip(gb.elements,
                                    gb.certificates or [None] * len(gb.elements))
             if not e.is_zero]
    items.sort(key=lambda ec: order.key(*ec[0].head_monomial(order)[0]))
    # minimalize
    kept = []
    for e, c in items:
        (ea, eb), ecoef = e.head_monomial(order)
        hm_e = (ecoef, ea, eb)
        dominated = False
        for f, _ in kept:
            (fa, fb), fc = f.head_monomial(order)
            if quasi_divides((fc, fa, fb), hm_e):
                dominated = True
                break
        if not dominated:
            survivors = []
            for f, cf in kept:
                (fa, fb), fc = f.head_monomial(order)
                if not quasi_divides(hm_e, (fc, fa, fb)):
                    survivors.append((f, cf))
            kept = survivors
            kept.append((e, c))
    # tail-reduce and normalize
    out_elems = []
    out_certs = []
    elems = [e for e, _ in kept]
    certs = [c for _, c in kept]
    for idx in range(len(elems)):
        others = elems[:idx] + elems[idx + 1:]
        e = elems[idx]
        (ea, eb), ecoef = e.head_monomial(order)
        head = OreOperator.monomial(e.sig, ea, eb, ecoef)
        rest, cofs = reduce_operator(e - head, others, order, euclidean=True)
        e2 = head + rest
        cert = certs[idx]
        if cert is not None:
            other_certs = certs[:idx] + certs[idx + 1:]
            cert = _cert_sub_reduction(cert, cofs, other_certs)
        _, unit = ecoef.normalize()
        if unit != e.sig.dom.one:
            inv = unit.inverse()
            e2 = e2.scale(inv)
            if cert is not None:
                cert = {i: cof.scale(inv) for i, cof in cert.items()}
        elems[idx] = e2
        certs[idx] = cert
    for e, c in sorted(zip(elems, certs),
                       key=lambda ec: order.key(*ec[0].head_monomial(order)[0])):
        out_elems.append(e)
        out_certs.append(c)
    has_certs = gb.certificates is not None
    return GroebnerBasis(out_elems, order,
                         out_certs if has_certs else None, gb.inputs)


# ---------------------------------------------------------------------------
# elimination and saturation
# ---------------------------------------------------------------------------

def eliminate(gens, keep, sig: OreSignature, order=None) -> GroebnerBasis:
    """Groebner basis of the elimination ideal I intersect R[keep].

    ``keep`` lists the variable and D-variable names that survive.
    """
    keep = set(keep)
    unknown = keep - set(sig.vars) - set(sig.dvars)
    if unknown:
        raise GroebnerError("unknown variables %s" % sorted(unknown))
    elim_x = frozenset(i for i, v in enumerate(sig.vars) if v not in keep)
    elim_d = frozenset(i for i, v in enumerate(sig.dvars) if v not in keep)
    if order is None:
        order = TermOrder.elimination(elim_x, elim_d)
    elif (order.kind != "elim" or order.elim_x != elim_x
          or order.elim_d != elim_d):
        raise GroebnerError("supplied order does not eliminate the complement of %s"
                            % sorted(keep))
    gb = buchberger(gens, order)
    elems, certs = [], []
    for e, c in zip(gb.elements, gb.certificates):
        if all(all(a[i] == 0 for i in elim_x) and all(b[i] == 0 for i in elim_d)
               for (a, b) in e.terms):
            elems.append(e)
            certs.append(c)
    return GroebnerBasis(elems, order, certs, gb.inputs)


def saturate_const(gens, c: Scalar, sig: OreSignature, tag="y_") -> GroebnerBasis:
    """Basis of I : c^infinity via the tag construction (adjoin 1 - c*y and
    eliminate the central pair (y, Dy))."""
    if not isinstance(c, Scalar):
        c = sig.dom(c)
    if c.is_zero:
        raise GroebnerError("saturation constant must be nonzero")
    ext = sig.extend(tag, "central")
    lifted = [_lift(g, ext) for g in gens]
    y = MultiPoly.var(ext.dom, ext.vars, tag)
    lifted.append(OreOperator.const(ext, 1) - OreOperator.from_poly(ext, y * c))
    keep = list(sig.vars) + list(sig.dvars)
    gb = eliminate(lifted, keep, ext)
    elems = [_drop_last_pair(e, sig) for e in gb.elements]
    return reduce_basis(GroebnerBasis(elems, GRADED, None, list(gens)))


def _lift(op: OreOperator, ext: OreSignature) -> OreOperator:
    out = OreOperator(ext)
    out.terms = {(a + (0,), b + (0,)): c for (a, b), c in op.terms.items()}
    return out


def _drop_last_pair(op: OreOperator, sig: OreSignature) -> OreOperator:
    out = OreOperator(sig)
    out.terms = {(a[:-1], b[:-1]): c for (a, b), c in op.terms.items()}
    return out


# ---------------------------------------------------------------------------
# commutative convenience (beta = 0 everywhere)
# ---------------------------------------------------------------------------

def commutative_groebner(polys, sig: OreSignature, order=GRADED,
                         reduced=False) -> GroebnerBasis:
    ops = [OreOperator.from_poly(sig, p) for p in polys]
    gb = buchberger(ops, order)
    if reduced:
        gb = reduce_basis(gb)
    return gb


def ideal_equal(gens1, gens2, order=GRADED) -> bool:
    """Mutual reduction to zero both ways."""
    gb1 = buchberger(list(gens1), order, keep_certs=False)
    gb2 = buchberger(list(gens2), order, keep_certs=False)
    return (all(gb1.contains(g) for g in gens2)
            and all(gb2.contains(g) for g in gens1))


# ---------------------------------------------------------------------------
# module engine over R[x]: position-over-term Groebner bases and kernels
# ---------------------------------------------------------------------------

def _vec_is_zero(v):
    return all(p.is_zero for p in v)


def _vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _vec_head(v, rank):
    best = None
    best_key = None
    for pos, p in enumerate(v):
        for e, c in p.terms.items():
            k = (rank[pos], ginvlex_key(e))
            if best_key is None or k > best_key:
                best_key = k
                best = (pos, e, c)
    if best is None:
        raise GroebnerError("zero module vector has no head")
    return best


def _vec_mul_mono(v, e, c):
    return tuple(_poly_shift_scale(p, e, c) for p in v)


def _poly_shift_scale(p: MultiPoly, e, c):
    out = MultiPoly(p.dom, p.vars)
    out.terms = {tuple(a + b for a, b in zip(exp, e)): v * c
                 for exp, v in p.terms.items()}
    return out


def module_reduce(vec, basis, rank, euclidean=False):
    """Normal form of a vector modulo module-GB elements."""
    heads = [_vec_head(b, rank) for b in basis]
    out = [MultiPoly.zero(p.dom, p.vars) for p in vec]
    work = tuple(vec)
    while not _vec_is_zero(work):
        pos, e, c = _vec_head(work, rank)
        hit = None
        for j, (bp, be, bc) in enumerate(heads):
            if (bp == pos and all(x <= y for x, y in zip(be, e))
                    and bc.divides(c)):
                hit = j
                break
        if hit is not None:
            bp, be, bc = heads[hit]
            de = tuple(x - y for x, y in zip(e, be))
            work = _vec_sub(work, _vec_mul_mono(basis[hit], de, c.exact_div(bc)))
            continue
        if euclidean:
            estep = None
            for j, (bp, be, bc) in enumerate(heads):
                if bp == pos and all(x <= y for x, y in zip(be, e)):
                    q, r = c.divmod_canonical(bc)
                    if q:
                        estep = (j, q)
                        break
            if estep is not None:
                j, q = estep
                bp, be, bc = heads[j]
                de = tuple(x - y for x, y in zip(e, be))
                work = _vec_sub(work, _vec_mul_mono(basis[j], de, q))
                continue
        mono = MultiPoly.monomial(work[pos].dom, work[pos].vars, e, c)
        out[pos] = out[pos] + mono
        w = list(work)
        w[pos] = w[pos] - mono
        work = tuple(w)
    return tuple(out)


def module_groebner(vectors, rank):
    """Buchberger for submodules of R[x]^k, PID coefficients, POT order.

    Interreduced eagerly, like :func:`buchberger`: dominated vectors retire
    and re-enter the worklist in reduced form.
    """
    live = {}
    pending = []
    work = [tuple(v) for v in vectors if not _vec_is_zero(v)]
    work.reverse()
    tick = [0]
    next_id = [0]

    def qdata(i, j):
        pi, ei, ci = _vec_head(live[i], rank)
        pj, ej, cj = _vec_head(live[j], rank)
        if pi != pj:
            return None
        return pi, tuple(max(x, y) for x, y in zip(ei, ej)), (ci, cj)

    def enqueue(i, j):
        q = qdata(i, j)
        if q is not None:
            pending.append(((rank[q[0]], ginvlex_key(q[1]), tick[0]), i, j))
            tick[0] += 1

    def insert(vec):
        v0 = module_reduce(vec, list(live.values()), rank, euclidean=True) \
            if live else vec
        if _vec_is_zero(v0):
            return
        hp, he, hc = _vec_head(v0, rank)
        for i in list(live):
            bp, be, bc = _vec_head(live[i], rank)
            if (bp == hp and all(x <= y for x, y in zip(he, be))
                    and hc.divides(bc)):
                work.append(live.pop(i))
        new = next_id[0]
        next_id[0] += 1
        live[new] = v0
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
        q = qdata(i, j)
        if q is None:
            continue
        pos, qe, (ci, cj) = q
        _, ei, _ = _vec_head(live[i], rank)
        _, ej, _ = _vec_head(live[j], rank)
        # G-step
        need_g = True
        for b in live.values():
            bp, be, bc = _vec_head(b, rank)
            if (bp == pos and all(x <= y for x, y in zip(be, qe))
                    and bc.divides(ci) and bc.divides(cj)):
                need_g = False
                break
        if need_g:
            g, c1, c2 = gcd_ext(ci, cj)
            H = tuple(MultiPoly.zero(p.dom, p.vars) for p in live[i])
            if c1:
                H = tuple(a + b for a, b in zip(
                    H, _vec_mul_mono(live[i], _vec_expsub(qe, ei), c1)))
            if c2:
                H = tuple(a + b for a, b in zip(
                    H, _vec_mul_mono(live[j], _vec_expsub(qe, ej), c2)))
            insert(H)
        if i not in live or j not in live:
            continue
        # S-step
        l = scalar_lcm(ci, cj)
        s = _vec_sub(_vec_mul_mono(live[i], _vec_expsub(qe, ei), l.exact_div(ci)),
                     _vec_mul_mono(live[j], _vec_expsub(qe, ej), l.exact_div(cj)))
        if _vec_is_zero(s):
            continue
        insert(s)
    return [live[i] for i in sorted(live)]


def _vec_expsub(e, f):
    return tuple(x - y for x, y in zip(e, f))


def module_reduce_basis(basis, rank):
    """Interreduced module GB: minimal heads, reduced tails, canonical units."""
    items = [tuple(v) for v in basis if not _vec_is_zero(v)]
    items.sort(key=lambda v: (lambda h: (rank[h[0]], ginvlex_key(h[1])))(
        _vec_head(v, rank)))
    kept = []
    for v in items:
        p, e, c = _vec_head(v, rank)
        dominated = False
        for w in kept:
            wp, we, wc = _vec_head(w, rank)
            if (wp == p and all(x <= y for x, y in zip(we, e))
                    and wc.divides(c)):
                dominated = True
                break
        if not dominated:
            kept = [w for w in kept
                    if not (lambda h: h[0] == p
                            and all(x <= y for x, y in zip(e, h[1]))
                            and c.divides(h[2]))(_vec_head(w, rank))]
            kept.append(v)
    out = []
    for idx in range(len(kept)):
        others = kept[:idx] + kept[idx + 1:]
        v = kept[idx]
        p, e, c = _vec_head(v, rank)
        head = [MultiPoly.zero(q.dom, q.vars) for q in v]
        head[p] = MultiPoly.monomial(v[p].dom, v[p].vars, e, c)
        rest = (module_reduce(_vec_sub(v, tuple(head)), others, rank,
                              euclidean=True)
                if others else _vec_sub(v, tuple(head)))
        v2 = tuple(a + b for a, b in zip(head, rest))
        _, unit = c.normalize()
        if unit != c.dom.one:
            inv = unit.inverse()
            v2 = tuple(q.map_scalars(lambda s: s * inv) for q in v2)
        kept[idx] = v2
    out = sorted(kept, key=lambda v: (lambda h: (rank[h[0]], ginvlex_key(h[1])))(
        _vec_head(v, rank)))
    return out


def kernel(rows):
    """Generators of the left kernel {v in R[x]^m : v A = 0} of the matrix
    with the given rows (each a list of MultiPoly of equal length)."""
    m = len(rows)
    if m == 0:
        return []
    r = len(rows[0])
    dom, vars = rows[0][0].dom, rows[0][0].vars
    zero = MultiPoly.zero(dom, vars)
    one = MultiPoly.const(dom, vars, 1)
    if r == 0 or all(p.is_zero for row in rows for p in row):
        gens = []
        for i in range(m):
            unit = [zero] * m
            unit[i] = one
            gens.append(tuple(unit))
        return gens
    vectors = []
    for i, row in enumerate(rows):
        unit = [zero] * m
        unit[i] = one
        vectors.append(tuple(list(row) + unit))
    # A-block positions dominate, so vectors with zero A-part expose the kernel
    rank = tuple((1, -p) for p in range(r)) + tuple((0, -p) for p in range(m))
    gb = module_groebner(vectors, rank)
    gens = [tuple(v[r:]) for v in gb if all(p.is_zero for p in v[:r])]
    if not gens:
        return []
    return module_reduce_basis(gens, standard_rank(m))


def standard_rank(length):
    """POT rank for plain vectors (no elimination block)."""
    return tuple((0, -p) for p in range(length))


def module_contains(vec, gens) -> bool:
    """Whether vec lies in the R[x]-span of gens (module membership)."""
    gens = [tuple(g) for g in gens if not _vec_is_zero(g)]
    if _vec_is_zero(vec):
        return True
    if not gens:
        return False
    rank = standard_rank(len(vec))
    gb = module_reduce_basis(module_groebner(gens, rank), rank)
    return _vec_is_zero(module_reduce(tuple(vec), gb, rank))
