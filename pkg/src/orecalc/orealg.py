"""Ore algebra arithmetic R[x][d; sigma, delta] with several (x_i, d_i) pairs.

Operators are stored as sparse sums of monomials ``a * x^alpha * D^beta`` with
``a`` in the coefficient PID.  The commutation rule is

    D_i * p = sigma_i(p) * D_i + delta_i(p)

with ``sigma_i(x_i) = gamma_i x_i + tau_i`` (``gamma_i`` a unit) and
``delta_i`` either the zero map or d/dx_i.  Shift and differential algebras
are presets; a "central" kind (sigma = id, delta = 0) provides the inert tag
pairs used for saturation and ideal intersection.

The module also houses the rational-function layer ``Q_R(x)``: univariate
operators with :class:`RatFun` coefficients and their right division.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import (ExprParser, MultiPoly, PolyError, apply_sigma, derive,
                       evaluate, format_poly, ginvlex_key, poly_gcd)
from .scalars import Scalar


class OreError(ArithmeticError):
    pass


KINDS = ("shift", "diff", "central")


class OreSignature:
    """Per-variable sigma/delta data for one Ore algebra."""

    __slots__ = ("dom", "vars", "kinds", "gammas", "taus", "derivs", "dvars")

    def __init__(self, dom, vars, kinds, gammas=None, taus=None):
        self.dom = dom
        self.vars = tuple(vars)
        self.kinds = tuple(kinds)
        if len(self.kinds) != len(self.vars):
            raise OreError("one kind per variable required")
        for k in self.kinds:
            if k not in KINDS:
                raise OreError("unknown variable kind %r" % (k,))
        if gammas is None:
            gammas = tuple(dom.one for _ in self.vars)
        if taus is None:
            taus = tuple(dom.one if k == "shift" else dom.zero
                         for k in self.kinds)
        self.gammas = tuple(gammas)
        self.taus = tuple(taus)
        for g in self.gammas:
            if not g.is_unit:
                raise OreError("sigma must be invertible: gamma %s is not a unit" % g)
        self.derivs = tuple(k == "diff" for k in self.kinds)
        self.dvars = tuple("D" + v for v in self.vars)

    @classmethod
    def shift(cls, dom, vars):
        vars = tuple(vars)
        return cls(dom, vars, ("shift",) * len(vars))

    @classmethod
    def diff(cls, dom, vars):
        vars = tuple(vars)
        return cls(dom, vars, ("diff",) * len(vars))

    @property
    def n(self):
        return len(self.vars)

    def __eq__(self, other):
        return (isinstance(other, OreSignature) and other.dom is self.dom
                and other.vars == self.vars and other.kinds == self.kinds
                and other.gammas == self.gammas and other.taus == self.taus)

    def __hash__(self):
        return hash((self.dom.name, self.vars, self.kinds))

    def __repr__(self):
        return "OreSignature(%s; %s)" % (
            self.dom.name, ", ".join("%s:%s" % p for p in zip(self.vars, self.kinds)))

    def extend(self, var, kind):
        """Adjoin one more (x, D) pair at the end."""
        if var in self.vars:
            raise OreError("variable %r already present" % var)
        return OreSignature(self.dom, self.vars + (var,), self.kinds + (kind,),
                            self.gammas + (self.dom.one,),
                            self.taus + (self.dom.one if kind == "shift"
                                         else self.dom.zero,))

    # sigma/delta acting on coefficient polynomials ------------------------
    def sigma(self, f: MultiPoly, i: int, k: int = 1) -> MultiPoly:
        return apply_sigma(f, i, k, self.gammas[i], self.taus[i])

    def delta(self, f: MultiPoly, i: int) -> MultiPoly:
        if self.derivs[i]:
            return derive(f, i)
        return MultiPoly.zero(self.dom, self.vars)

    def poly(self, text_or_scalar) -> MultiPoly:
        if isinstance(text_or_scalar, MultiPoly):
            return text_or_scalar
        if isinstance(text_or_scalar, (int, Scalar)):
            return MultiPoly.const(self.dom, self.vars, text_or_scalar)
        from .polyring import parse_poly
        return parse_poly(text_or_scalar, self.dom, self.vars)


# ---------------------------------------------------------------------------
# term orders
# ---------------------------------------------------------------------------

class TermOrder:
    """Total multiplicative order on the terms x^alpha D^beta, 1 minimal.

    * ``graded`` (default): D-block first, x-block second, each compared by
      total degree with later variables breaking ties.
    * ``lex``: plain lexicographic, D-block first.
    * ``elim``: the designated positions form a dominant block, so that a
      Groebner basis exposes the elimination ideal of the remaining ones.
    """

    __slots__ = ("kind", "elim_x", "elim_d")

    def __init__(self, kind="graded", elim_x=(), elim_d=()):
        if kind not in ("graded", "lex", "elim"):
            raise OreError("unknown term order kind %r" % (kind,))
        self.kind = kind
        self.elim_x = frozenset(elim_x)
        self.elim_d = frozenset(elim_d)

    @classmethod
    def graded(cls):
        return cls("graded")

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def elimination(cls, elim_x, elim_d):
        return cls("elim", elim_x, elim_d)

    def key(self, alpha, beta):
        if self.kind == "graded":
            return (ginvlex_key(beta), ginvlex_key(alpha))
        if self.kind == "lex":
            return (beta, alpha)
        be = tuple(e for i, e in enumerate(beta) if i in self.elim_d)
        ae = tuple(e for i, e in enumerate(alpha) if i in self.elim_x)
        bk = tuple(e for i, e in enumerate(beta) if i not in self.elim_d)
        ak = tuple(e for i, e in enumerate(alpha) if i not in self.elim_x)
        return (ginvlex_key(be), ginvlex_key(ae), ginvlex_key(bk), ginvlex_key(ak))

    def dkey(self, beta):
        """Comparison key for pure D-terms."""
        n = len(beta)
        return self.key((0,) * n, beta)

    def __eq__(self, other):
        return (isinstance(other, TermOrder) and other.kind == self.kind
                and other.elim_x == self.elim_x and other.elim_d == self.elim_d)

    def __hash__(self):
        return hash((self.kind, self.elim_x, self.elim_d))


GRADED = TermOrder.graded()


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

class OreOperator:
    """Element of R[x][D], a normalized sum of monomials a x^alpha D^beta."""

    __slots__ = ("sig", "terms", "_hm")

    def __init__(self, sig, terms=None):
        self.sig = sig
        self._hm = {}
        clean = {}
        if terms:
            for (alpha, beta), c in terms.items():
                if not isinstance(c, Scalar):
                    c = sig.dom(c)
                if c:
                    clean[(tuple(alpha), tuple(beta))] = c
        self.terms = clean

    # constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, sig):
        return cls(sig)

    @classmethod
    def const(cls, sig, c):
        z = (0,) * sig.n
        return cls(sig, {(z, z): c})

    @classmethod
    def monomial(cls, sig, alpha, beta, c=1):
        return cls(sig, {(tuple(alpha), tuple(beta)): c})

    @classmethod
    def from_poly(cls, sig, p: MultiPoly):
        z = (0,) * sig.n
        return cls(sig, {(e, z): c for e, c in p.terms.items()})

    @classmethod
    def partial(cls, sig, i, power=1):
        z = (0,) * sig.n
        beta = list(z)
        beta[i] = power
        return cls(sig, {(z, tuple(beta)): sig.dom.one})

    # structure --------------------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = OreOperator.const(self.sig, other)
        return (isinstance(other, OreOperator) and other.sig == self.sig
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.sig.vars, frozenset(self.terms.items())))

    def _check(self, other):
        if other.sig != self.sig:
            raise OreError("operators from different algebras")

    def order(self):
        """Maximal total D-degree; -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(b) for (_, b) in self.terms)

    def deg_d(self, i):
        if not self.terms:
            return -1
        return max(b[i] for (_, b) in self.terms)

    def deg_x(self, i):
        if not self.terms:
            return -1
        return max(a[i] for (a, _) in self.terms)

    def dcoeffs(self):
        """Map beta -> coefficient polynomial."""
        out = {}
        for (alpha, beta), c in self.terms.items():
            p = out.get(beta)
            if p is None:
                p = out[beta] = MultiPoly.zero(self.sig.dom, self.sig.vars)
            p.terms[alpha] = c
        return out

    def dcoeff(self, beta) -> MultiPoly:
        beta = tuple(beta)
        p = MultiPoly.zero(self.sig.dom, self.sig.vars)
        for (alpha, b), c in self.terms.items():
            if b == beta:
                p.terms[alpha] = c
        return p

    def lc_d(self) -> MultiPoly:
        """Leading coefficient with respect to total D-degree (univariate use)."""
        if not self.terms:
            raise OreError("zero operator has no leading coefficient")
        r = self.order()
        betas = [b for (_, b) in self.terms if sum(b) == r]
        top = max(betas, key=ginvlex_key)
        return self.dcoeff(top)

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = OreOperator.const(self.sig, other)
        elif isinstance(other, MultiPoly):
            other = OreOperator.from_poly(self.sig, other)
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        out = OreOperator(self.sig)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = OreOperator(self.sig)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = OreOperator.const(self.sig, other)
        elif isinstance(other, MultiPoly):
            other = OreOperator.from_poly(self.sig, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = self.sig.dom(c)
        out = OreOperator(self.sig)
        if c:
            out.terms = {m: v * c for m, v in self.terms.items()}
        return out

    def lmul_poly(self, p: MultiPoly):
        """Left-multiply by a coefficient polynomial."""
        out = OreOperator(self.sig)
        for (alpha, beta), c in self.terms.items():
            for e, pc in p.terms.items():
                m = (tuple(a + b for a, b in zip(alpha, e)), beta)
                s = out.terms.get(m)
                s = pc * c if s is None else s + pc * c
                if s:
                    out.terms[m] = s
                else:
                    out.terms.pop(m, None)
        return out

    def _lmul_partial(self, i):
        """Left-multiply by D_i using the commutation rule."""
        sig = self.sig
        out = OreOperator(sig)
        for beta, poly in self.dcoeffs().items():
            up = list(beta)
            up[i] += 1
            sp = sig.sigma(poly, i)
            if sp:
                _accumulate(out, tuple(up), sp)
            if sig.derivs[i]:
                dp = derive(poly, i)
                if dp:
                    _accumulate(out, beta, dp)
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if isinstance(other, MultiPoly):
            other = OreOperator.from_poly(self.sig, other)
        self._check(other)
        out = OreOperator(self.sig)
        cache = {(0,) * self.sig.n: other}

        def dpow(beta):
            if beta in cache:
                return cache[beta]
            i = next(k for k in range(len(beta) - 1, -1, -1) if beta[k])
            prev = list(beta)
            prev[i] -= 1
            res = dpow(tuple(prev))._lmul_partial(i)
            cache[beta] = res
            return res

        for beta, poly in sorted(self.dcoeffs().items(),
                                 key=lambda kv: ginvlex_key(kv[0])):
            piece = dpow(beta).lmul_poly(poly)
            for m, c in piece.terms.items():
                s = out.terms.get(m)
                s = c if s is None else s + c
                if s:
                    out.terms[m] = s
                else:
                    out.terms.pop(m, None)
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if isinstance(other, MultiPoly):
            return OreOperator.from_poly(self.sig, other) * self
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise OreError("negative operator power")
        out = OreOperator.const(self.sig, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return "OreOperator(%s)" % format_operator(self)

    def __str__(self):
        return format_operator(self)

    # heads -------------------------------------------------------------------
    def head_monomial(self, order=GRADED):
        """((alpha, beta), coefficient) of the maximal term."""
        if not self.terms:
            raise OreError("zero operator has no head")
        m = self._hm.get(order)
        if m is None or m not in self.terms:
            m = max(self.terms, key=lambda ab: order.key(*ab))
            self._hm[order] = m
        return m, self.terms[m]

    def head(self, order=GRADED):
        """Layered head: (beta, coefficient polynomial) of the maximal D-term."""
        if not self.terms:
            raise OreError("zero operator has no head")
        betas = {b for (_, b) in self.terms}
        top = max(betas, key=order.dkey)
        return top, self.dcoeff(top)

    def sorted_monomials(self, order=GRADED, reverse=True):
        return sorted(self.terms.items(), key=lambda mc: order.key(*mc[0]),
                      reverse=reverse)

    def map_dcoeffs(self, fn):
        out = OreOperator(self.sig)
        for beta, poly in self.dcoeffs().items():
            q = fn(poly)
            for e, c in q.terms.items():
                out.terms[(e, beta)] = c
        out.terms = {m: c for m, c in out.terms.items() if c}
        return out

    def content(self) -> Scalar:
        """gcd of all monomial coefficients."""
        from .scalars import gcd as sgcd
        c = self.sig.dom.zero
        for m in sorted(self.terms):
            c = sgcd(c, self.terms[m])
            if c.is_unit:
                break
        return c.canonical


def _accumulate(op: OreOperator, beta, poly: MultiPoly):
    for e, c in poly.terms.items():
        m = (e, beta)
        s = op.terms.get(m)
        s = c if s is None else s + c
        if s:
            op.terms[m] = s
        else:
            op.terms.pop(m, None)


# ---------------------------------------------------------------------------
# quasi-divisibility of monomials
# ---------------------------------------------------------------------------

def quasi_divides(m1, m2) -> bool:
    """m1, m2 are monomials (coeff, alpha, beta); coefficient divides and
    exponents are componentwise <=."""
    c1, a1, b1 = m1
    c2, a2, b2 = m2
    return (all(x <= y for x, y in zip(a1, a2))
            and all(x <= y for x, y in zip(b1, b2))
            and c1.divides(c2))


def quasi_quotient(m1, m2, sig) -> tuple:
    """Monomial m3 with HM(m3 * m1) == m2 (unit-corrected)."""
    if not quasi_divides(m1, m2):
        raise OreError("monomial does not quasi-divide")
    c1, a1, b1 = m1
    c2, a2, b2 = m2
    da = tuple(y - x for x, y in zip(a1, a2))
    db = tuple(y - x for x, y in zip(b1, b2))
    if all(g == sig.dom.one for g in sig.gammas):
        return (c2.exact_div(c1), da, db)
    prod = OreOperator.monomial(sig, da, db) * OreOperator.monomial(sig, a1, b1, c1)
    (_, _), hc = prod.head_monomial()
    return (c2.exact_div(hc), da, db)


# ---------------------------------------------------------------------------
# rational function coefficients
# ---------------------------------------------------------------------------

class RatFun:
    """Reduced fraction of MultiPoly; denominator unit-normalized."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, reduce=True):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = MultiPoly.const(num.dom, num.vars, 1)
        elif reduce:
            g = poly_gcd(num, den)
            if not (g.is_constant() and g.constant_term().is_unit):
                from .polyring import exact_divide
                num = exact_divide(num, g)
                den = exact_divide(den, g)
            _, lc = den.leading()
            _, u = lc.normalize()
            if u != num.dom.one:
                num = num.map_scalars(lambda v: v.exact_div(u))
                den = den.map_scalars(lambda v: v.exact_div(u))
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: MultiPoly):
        return cls(p, MultiPoly.const(p.dom, p.vars, 1), reduce=False)

    @classmethod
    def zero(cls, dom, vars):
        return cls.from_poly(MultiPoly.zero(dom, vars))

    @classmethod
    def one(cls, dom, vars):
        return cls.from_poly(MultiPoly.const(dom, vars, 1))

    @property
    def is_zero(self):
        return self.num.is_zero

    def __bool__(self):
        return not self.num.is_zero

    def is_poly(self):
        return self.den.is_constant() and self.den.constant_term().is_unit

    def as_poly(self) -> MultiPoly:
        if not self.is_poly():
            raise OreError("%s is not polynomial" % self)
        return self.num * self.den.constant_term().inverse()

    def __eq__(self, other):
        return (isinstance(other, RatFun) and self.num * other.den == other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Scalar, MultiPoly)):
            other = _ratfun_coerce(self, other)
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        if isinstance(other, (int, Scalar, MultiPoly)):
            other = _ratfun_coerce(self, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Scalar, MultiPoly)):
            other = _ratfun_coerce(self, other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Scalar, MultiPoly)):
            other = _ratfun_coerce(self, other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def inverse(self):
        return RatFun(self.den, self.num)

    def sigma(self, sig: OreSignature, i: int, k: int = 1):
        return RatFun(sig.sigma(self.num, i, k), sig.sigma(self.den, i, k))

    def deriv(self, sig: OreSignature, i: int):
        """sigma-derivation delta extended to the fraction field."""
        dn, dd = sig.delta(self.num, i), sig.delta(self.den, i)
        sn, sd = sig.sigma(self.num, i), sig.sigma(self.den, i)
        return RatFun(dn * sd - sn * dd, sd * self.den)

    def evaluate(self, values) -> Scalar:
        d = evaluate(self.den, values)
        if d.is_zero:
            raise ZeroDivisionError("denominator vanishes at the point")
        return evaluate(self.num, values).exact_div(d)

    def __repr__(self):
        return "RatFun(%s)" % self

    def __str__(self):
        if self.is_poly():
            return format_poly(self.as_poly())
        return "(%s)/(%s)" % (format_poly(self.num), format_poly(self.den))


def _ratfun_coerce(model: RatFun, value) -> RatFun:
    dom, vars = model.num.dom, model.num.vars
    if isinstance(value, MultiPoly):
        return RatFun.from_poly(value)
    return RatFun.from_poly(MultiPoly.const(dom, vars, value))


# ---------------------------------------------------------------------------
# univariate operators over the quotient field, right division
# ---------------------------------------------------------------------------

class RatOreOperator:
    """Univariate operator with rational-function coefficients."""

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig, coeffs=None):
        if sig.n != 1:
            raise OreError("RatOreOperator is univariate")
        self.sig = sig
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def from_operator(cls, P: OreOperator):
        return cls(P.sig, {b[0]: RatFun.from_poly(p)
                           for b, p in P.dcoeffs().items()})

    @classmethod
    def zero(cls, sig):
        return cls(sig)

    @property
    def is_zero(self):
        return not self.coeffs

    def order(self):
        return max(self.coeffs) if self.coeffs else -1

    def coeff(self, k) -> RatFun:
        c = self.coeffs.get(k)
        if c is None:
            return RatFun.zero(self.sig.dom, self.sig.vars)
        return c

    def __eq__(self, other):
        return (isinstance(other, RatOreOperator) and other.sig == self.sig
                and other.coeffs == self.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return RatOreOperator(self.sig, out)

    def __neg__(self):
        return RatOreOperator(self.sig, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def lmul_term(self, c: RatFun, k: int):
        """(c * D^k) * self."""
        sig = self.sig
        cur = {j: v for j, v in self.coeffs.items()}
        for _ in range(k):
            nxt = {}
            for j, v in cur.items():
                sv = v.sigma(sig, 0)
                if sv:
                    s = nxt.get(j + 1)
                    nxt[j + 1] = sv if s is None else s + sv
                if sig.derivs[0]:
                    dv = v.deriv(sig, 0)
                    if dv:
                        s = nxt.get(j)
                        nxt[j] = dv if s is None else s + dv
            cur = {j: v for j, v in nxt.items() if v}
        return RatOreOperator(sig, {j: c * v for j, v in cur.items()})

    def divmod(self, G):
        """Right division: self = Q*G + R with deg R < deg G; returns (Q, R)."""
        if G.is_zero:
            raise OreError("right division by zero")
        sig = self.sig
        r = G.order()
        lc = G.coeff(r)
        R = RatOreOperator(sig, dict(self.coeffs))
        Q = RatOreOperator(sig)
        while not R.is_zero and R.order() >= r:
            d = R.order()
            c = R.coeff(d) / lc.sigma(sig, 0, d - r)
            Q = Q + RatOreOperator(sig, {d - r: c})
            R = R - G.lmul_term(c, d - r)
            if not R.is_zero and R.order() >= d:
                raise OreError("right division failed to decrease the order")
        return Q, R

    def __str__(self):
        if not self.coeffs:
            return "0"
        dv = self.sig.dvars[0]
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            dpart = "1" if k == 0 else (dv if k == 1 else "%s^%d" % (dv, k))
            parts.append("(%s)*%s" % (c, dpart))
        return " + ".join(parts)

    __repr__ = __str__


def rrem(F: RatOreOperator, G: RatOreOperator) -> RatOreOperator:
    """Right remainder of F by G."""
    return F.divmod(G)[1]


def rquo(F: RatOreOperator, G: RatOreOperator) -> RatOreOperator:
    return F.divmod(G)[0]


# ---------------------------------------------------------------------------
# natural actions on sequences and truncated series
# ---------------------------------------------------------------------------

def apply_to_sequence(P: OreOperator, prefix):
    """Apply a shift operator to a sequence prefix.

    ``prefix`` is a list (one variable) or a dict exponent-tuple -> value
    (several variables).  Values combine with +/* (Scalar or Fraction).
    The result prefix shrinks by the operator order in each direction.
    """
    sig = P.sig
    if any(k != "shift" for k in sig.kinds):
        raise OreError("sequence action requires a shift signature")
    shifts = tuple(P.deg_d(i) for i in range(sig.n))
    if sig.n == 1 and isinstance(prefix, list):
        need = shifts[0]
        m = len(prefix) - need
        if m <= 0:
            raise OreError("prefix of length >= %d required, got %d"
                           % (need + 1, len(prefix)))
        out = [0] * m
        for (alpha, beta), c in P.terms.items():
            for k in range(m):
                out[k] = out[k] + c * (k ** alpha[0]) * prefix[k + beta[0]]
        return out
    bounds = [0] * sig.n
    for u in prefix:
        bounds = [max(b, e) for b, e in zip(bounds, u)]
    newb = [b - s for b, s in zip(bounds, shifts)]
    if any(b < 0 for b in newb):
        raise OreError("prefix box of size >= %s required"
                       % (tuple(s + 1 for s in shifts),))
    out = {}
    for u in _box(newb):
        acc = 0
        for (alpha, beta), c in P.terms.items():
            v = prefix[tuple(x + b for x, b in zip(u, beta))]
            w = c
            for i in range(sig.n):
                w = w * (u[i] ** alpha[i])
            acc = acc + w * v
        out[u] = acc
    return out


def _box(bounds):
    if not bounds:
        yield ()
        return
    for head in range(bounds[0] + 1):
        for rest in _box(bounds[1:]):
            yield (head,) + rest


def apply_to_series(P: OreOperator, coeffs, cap):
    """Apply a differential operator to a series truncated at total degree cap.

    ``coeffs`` maps exponent tuples to coefficients of x^u (all |u| <= cap).
    Returns (new_coeffs, new_cap) with new_cap = cap - order(P).
    """
    sig = P.sig
    if any(k != "diff" for k in sig.kinds):
        raise OreError("series action requires a differential signature")
    b = max(P.order(), 0)
    newcap = cap - b
    if newcap < 0:
        raise OreError("series truncated at total degree >= %d required" % b)
    out = {}
    for (alpha, beta), c in P.terms.items():
        for u, v in coeffs.items():
            if any(ui < bi for ui, bi in zip(u, beta)):
                continue
            target = tuple(ui - bi + ai for ui, bi, ai in zip(u, beta, alpha))
            if sum(target) > newcap:
                continue
            w = c * v
            for i in range(sig.n):
                for s in range(beta[i]):
                    w = w * (u[i] - s)
            if w:
                s0 = out.get(target)
                s0 = w if s0 is None else s0 + w
                if s0:
                    out[target] = s0
                else:
                    out.pop(target, None)
    return out, newcap


# ---------------------------------------------------------------------------
# parsing and printing
# ---------------------------------------------------------------------------

def parse_operator(text, sig: OreSignature) -> OreOperator:
    def symbol(name):
        if name in sig.vars:
            return OreOperator.from_poly(
                sig, MultiPoly.var(sig.dom, sig.vars, name))
        if name in sig.dvars:
            return OreOperator.partial(sig, sig.dvars.index(name))
        if name == "t" and sig.dom.name == "QQ_t":
            return OreOperator.const(sig, sig.dom((0, 1)))
        return None

    def ratio(a, b):
        if sig.dom.name == "ZZ":
            raise PolyError("rational literal %d/%d over ZZ" % (a, b))
        return OreOperator.const(sig, sig.dom(Fraction(a, b)))

    return ExprParser(text, lambda k: OreOperator.const(sig, k),
                      symbol, ratio).parse()


def format_operator(P: OreOperator, order=GRADED) -> str:
    from .polyring import _scalar_factor_str
    if P.is_zero:
        return "0"
    sig = P.sig
    parts = []
    for (alpha, beta), c in P.sorted_monomials(order):
        neg, mag = c.sign_split()
        factors = []
        for i, name in enumerate(sig.vars):
            if alpha[i] == 1:
                factors.append(name)
            elif alpha[i] > 1:
                factors.append("%s^%d" % (name, alpha[i]))
        for i, name in enumerate(sig.dvars):
            if beta[i] == 1:
                factors.append(name)
            elif beta[i] > 1:
                factors.append("%s^%d" % (name, beta[i]))
        if not factors or mag != sig.dom.one:
            factors.insert(0, _scalar_factor_str(mag))
        mono = "*".join(factors)
        if not parts:
            parts.append("-" + mono if neg else mono)
        else:
            parts.append((" - " if neg else " + ") + mono)
    return "".join(parts)
