"""Sparse commutative polynomials over a coefficient PID.

A :class:`MultiPoly` keeps a map from exponent vectors to nonzero scalars.
On top of the ring arithmetic this module provides the pieces the operator
stack consumes: content/primitive splitting, pseudo-division, gcds by
primitive pseudo-remainder sequences, sigma/delta actions, Sylvester
resultants and exact nonnegative-integer root finding.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (QQ, Scalar, ScalarError, _pt_divmod, _pt_trim, gcd as
                      scalar_gcd)


class PolyError(ArithmeticError):
    pass


def ginvlex_key(exp):
    """Graded key, later positions dominating ties; bigger key = bigger term."""
    return (sum(exp), exp[::-1])


class MultiPoly:
    """Sparse polynomial in named commuting variables over one domain."""

    __slots__ = ("dom", "vars", "terms")

    def __init__(self, dom, vars, terms=None):
        self.dom = dom
        self.vars = tuple(vars)
        clean = {}
        if terms:
            for exp, c in terms.items():
                if not isinstance(c, Scalar):
                    c = dom(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, dom, vars):
        return cls(dom, vars)

    @classmethod
    def const(cls, dom, vars, c):
        if not isinstance(c, Scalar):
            c = dom(c)
        return cls(dom, vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, dom, vars, name, power=1):
        vars = tuple(vars)
        exp = [0] * len(vars)
        exp[vars.index(name)] = power
        return cls(dom, vars, {tuple(exp): dom.one})

    @classmethod
    def monomial(cls, dom, vars, exp, c=1):
        return cls(dom, vars, {tuple(exp): c})

    # -- basic structure ---------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(self.dom, self.vars, other)
        return (isinstance(other, MultiPoly) and other.dom is self.dom
                and other.vars == self.vars and other.terms == self.terms)

    def __hash__(self):
        return hash((self.dom.name, self.vars, frozenset(self.terms.items())))

    def _check(self, other):
        if other.dom is not self.dom or other.vars != self.vars:
            raise PolyError("polynomials live in different rings")

    def degree(self, i):
        """Degree in variable i; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.dom.zero)

    def constant_term(self):
        return self.coeff((0,) * len(self.vars))

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def leading(self):
        """(exponent, coefficient) maximal under the graded invlex key."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        exp = max(self.terms, key=ginvlex_key)
        return exp, self.terms[exp]

    def sorted_terms(self, reverse=True):
        return sorted(self.terms.items(), key=lambda t: ginvlex_key(t[0]),
                      reverse=reverse)

    # -- ring arithmetic ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = MultiPoly.const(self.dom, self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = MultiPoly(self.dom, self.vars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly(self.dom, self.vars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Scalar)):
            other = MultiPoly.const(self.dom, self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            c = other if isinstance(other, Scalar) else self.dom(other)
            if not c:
                return MultiPoly.zero(self.dom, self.vars)
            out = MultiPoly(self.dom, self.vars)
            out.terms = {e: v * c for e, v in self.terms.items()}
            return out
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = MultiPoly(self.dom, self.vars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise PolyError("negative polynomial power")
        out = MultiPoly.const(self.dom, self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def map_scalars(self, fn):
        out = MultiPoly(self.dom, self.vars)
        out.terms = {e: v for e, v in ((e, fn(c)) for e, c in self.terms.items()) if v}
        return out

    def scalar_exact_div(self, c):
        return self.map_scalars(lambda v: v.exact_div(c))

    def __repr__(self):
        return "MultiPoly(%s)" % format_poly(self)

    def __str__(self):
        return format_poly(self)

    # -- views in one variable ----------------------------------------------
    def coeff_map(self, i):
        """Map degree-in-var-i -> coefficient polynomial (var i zeroed)."""
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            poly = out.get(d)
            if poly is None:
                poly = out[d] = MultiPoly(self.dom, self.vars)
            s = poly.terms.get(rest)
            s = c if s is None else s + c
            if s:
                poly.terms[rest] = s
            else:
                poly.terms.pop(rest, None)
        return {d: p for d, p in out.items() if p.terms}

    def lc_in(self, i):
        d = self.degree(i)
        if d < 0:
            raise PolyError("zero polynomial has no leading coefficient")
        return self.coeff_map(i)[d]

    def mul_var(self, i, power):
        out = MultiPoly(self.dom, self.vars)
        out.terms = {e[:i] + (e[i] + power,) + e[i + 1:]: c
                     for e, c in self.terms.items()}
        return out


# ---------------------------------------------------------------------------
# content and primitive part
# ---------------------------------------------------------------------------

def content_primitive(f: MultiPoly):
    """Split f = c * g with c the scalar content and g primitive."""
    if f.is_zero:
        return f.dom.zero, f
    c = f.dom.zero
    for _, v in f.sorted_terms():
        c = scalar_gcd(c, v)
        if c.is_unit:
            break
    c = c.canonical
    if c == f.dom.one:
        return c, f
    return c, f.scalar_exact_div(c)


def content(f: MultiPoly) -> Scalar:
    return content_primitive(f)[0]


# ---------------------------------------------------------------------------
# division
# ---------------------------------------------------------------------------

def pseudo_divide(f: MultiPoly, g: MultiPoly, i: int):
    """Pseudo-division by variable i: returns (s, q, h) with s*f = q*g + h,
    deg_i(h) < deg_i(g) or h = 0, and s = lc_i(g)**(deg_i f - deg_i g + 1).
    """
    if g.is_zero:
        raise PolyError("pseudo-division by zero")
    dg = g.degree(i)
    df = f.degree(i)
    steps = max(df - dg + 1, 0)
    lc = g.lc_in(i) if dg >= 0 else None
    q = MultiPoly.zero(f.dom, f.vars)
    h = f
    s = MultiPoly.const(f.dom, f.vars, 1)
    for _ in range(steps):
        dh = h.degree(i)
        if dh < dg:
            q = q * lc
            h = h * lc
        else:
            t = h.lc_in(i).mul_var(i, dh - dg)
            q = q * lc + t
            h = h * lc - t * g
        s = s * lc
    return s, q, h


def exact_divide(f: MultiPoly, g: MultiPoly):
    """Quotient f/g when g divides f exactly, else None."""
    if g.is_zero:
        raise PolyError("division by zero polynomial")
    q = MultiPoly.zero(f.dom, f.vars)
    r = f
    ge, gc = g.leading()
    while r.terms:
        re, rc = r.leading()
        exp = tuple(a - b for a, b in zip(re, ge))
        if any(e < 0 for e in exp) or not gc.divides(rc):
            return None
        t = MultiPoly.monomial(f.dom, f.vars, exp, rc.exact_div(gc))
        q = q + t
        r = r - t * g
    return q


def divides_poly(g: MultiPoly, f: MultiPoly) -> bool:
    return exact_divide(f, g) is not None


def multiplicity(p: MultiPoly, f: MultiPoly) -> int:
    """Largest k with p**k dividing f; f must be nonzero, p a non-unit."""
    if f.is_zero:
        raise PolyError("multiplicity in the zero polynomial is infinite")
    k = 0
    while True:
        q = exact_divide(f, p)
        if q is None:
            return k
        f = q
        k += 1


# ---------------------------------------------------------------------------
# gcd / lcm by primitive pseudo-remainder sequences
# ---------------------------------------------------------------------------

def _var_content(f, i):
    """gcd of the coefficients of f viewed in variable i."""
    polys = list(f.coeff_map(i).values())
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p)
        if g.is_constant() and g.constant_term().is_unit:
            break
    return g


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """gcd in R[vars] (unit-normalized), via primitive PRS; no factoring."""
    if f.is_zero:
        return _canon_poly(g)
    if g.is_zero:
        return _canon_poly(f)
    cf, pf = content_primitive(f)
    cg, pg = content_primitive(g)
    c = scalar_gcd(cf, cg)
    main = next((i for i in range(len(f.vars))
                 if pf.degree(i) > 0 or pg.degree(i) > 0), None)
    if main is None:
        return MultiPoly.const(f.dom, f.vars, c)
    if f.dom is QQ and len(f.vars) == 1:
        h = _univ_gcd_qq(pf, pg)
        return _canon_poly(h * c)
    if pf.degree(main) == 0 or pg.degree(main) == 0:
        # one argument is free of the main variable: recurse into contents
        h = poly_gcd(_var_content(pf, main), _var_content(pg, main))
        return _canon_poly(h * c)
    ca, a = _pp_in(pf, main)
    cb, b = _pp_in(pg, main)
    cont = poly_gcd(ca, cb)
    if a.degree(main) < b.degree(main):
        a, b = b, a
    while True:
        _, _, r = pseudo_divide(a, b, main)
        if r.is_zero:
            break
        a, b = b, _pp_in(r, main)[1]
        if b.degree(main) == 0:
            b = MultiPoly.const(f.dom, f.vars, 1)
            break
    return _canon_poly(cont * b * c)


def _pp_in(f, i):
    c = _var_content(f, i)
    return c, exact_divide(f, c)


def _canon_poly(f):
    """Divide out the canonical unit of the leading coefficient."""
    if f.is_zero:
        return f
    _, lc = f.leading()
    _, u = lc.normalize()
    if u == f.dom.one:
        return f
    return f.map_scalars(lambda v: v.exact_div(u))


def _univ_gcd_qq(f, g):
    a, b = f, g
    while not b.is_zero:
        _, _, r = pseudo_divide(a, b, 0)
        a, b = b, _canon_poly(r)
    return _canon_poly(a)


def poly_lcm(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if f.is_zero or g.is_zero:
        return MultiPoly.zero(f.dom, f.vars)
    return _canon_poly(exact_divide(f * g, poly_gcd(f, g)))


def gcd_ext_poly(f: MultiPoly, g: MultiPoly, i: int):
    """Extended Euclid in variable i using pseudo-divisions.

    Returns (h, u, v) with u*f + v*g = h; the primitive part of h is the
    gcd of f and g over the fraction field of the coefficient ring.
    """
    dom, vars = f.dom, f.vars
    one = MultiPoly.const(dom, vars, 1)
    zero = MultiPoly.zero(dom, vars)
    r0, u0, v0 = f, one, zero
    r1, u1, v1 = g, zero, one
    if r0.degree(i) < r1.degree(i):
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, r0, u0, v0
    while not r1.is_zero:
        s, q, r2 = pseudo_divide(r0, r1, i)
        u2 = s * u0 - q * u1
        v2 = s * v0 - q * v1
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, r2, u2, v2
        r0, u0, v0 = _strip_common_content(r0, u0, v0)
    return r0, u0, v0


def _strip_common_content(r, u, v):
    c = scalar_gcd(scalar_gcd(content(r), content(u)), content(v))
    if c.is_unit or c.is_zero:
        return r, u, v
    return (r.scalar_exact_div(c), u.scalar_exact_div(c), v.scalar_exact_div(c))


def gcd_ext_list(polys, i):
    """Fold of gcd_ext_poly: returns (h, cofactors) with sum(c*b) = h."""
    if not polys:
        raise PolyError("empty generator list")
    h = polys[0]
    dom, vars = h.dom, h.vars
    cofs = [MultiPoly.const(dom, vars, 1)]
    for b in polys[1:]:
        if h.is_zero:
            h2, u, v = b, MultiPoly.zero(dom, vars), MultiPoly.const(dom, vars, 1)
        else:
            h2, u, v = gcd_ext_poly(h, b, i)
        cofs = [u * c for c in cofs]
        cofs.append(v)
        h = h2
    c = content(h)
    for p in cofs:
        c = scalar_gcd(c, content(p))
    if not (c.is_unit or c.is_zero):
        h = h.scalar_exact_div(c)
        cofs = [p.scalar_exact_div(c) for p in cofs]
    return h, cofs


# ---------------------------------------------------------------------------
# sigma and delta actions
# ---------------------------------------------------------------------------

def substitute(f: MultiPoly, i: int, g: MultiPoly) -> MultiPoly:
    """Substitute g for variable i (Horner)."""
    cmap = f.coeff_map(i)
    if not cmap:
        return f
    out = MultiPoly.zero(f.dom, f.vars)
    for d in range(max(cmap), -1, -1):
        out = out * g
        if d in cmap:
            out = out + cmap[d]
    return out


def sigma_linear_form(k: int, gamma: Scalar, tau: Scalar):
    """Coefficients (a, b) of sigma^k(x) = a*x + b; gamma must be a unit."""
    a, b = gamma.dom.one, gamma.dom.zero
    if k >= 0:
        for _ in range(k):
            a, b = gamma * a, gamma * b + tau
    else:
        ginv = gamma.inverse()
        for _ in range(-k):
            a, b = a * ginv, (b - tau) * ginv
    return a, b


def apply_sigma(f: MultiPoly, i: int, k: int, gamma: Scalar, tau: Scalar):
    """Apply sigma_i^k where sigma_i(x_i) = gamma*x_i + tau."""
    if k == 0 or (gamma == gamma.dom.one and tau.is_zero):
        return f
    a, b = sigma_linear_form(k, gamma, tau)
    g = MultiPoly.var(f.dom, f.vars, f.vars[i]) * a + MultiPoly.const(f.dom, f.vars, b)
    return substitute(f, i, g)


def derive(f: MultiPoly, i: int) -> MultiPoly:
    """Partial derivative with respect to variable i."""
    out = MultiPoly(f.dom, f.vars)
    for e, c in f.terms.items():
        if e[i]:
            out.terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * f.dom(e[i])
    out.terms = {e: c for e, c in out.terms.items() if c}
    return out


def evaluate(f: MultiPoly, values) -> Scalar:
    """Evaluate at a full point; values maps variable name -> Scalar."""
    out = f.dom.zero
    for e, c in f.terms.items():
        term = c
        for i, name in enumerate(f.vars):
            if e[i]:
                term = term * (values[name] ** e[i])
        out = out + term
    return out


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def resultant(f: MultiPoly, g: MultiPoly, i: int) -> MultiPoly:
    """Determinant of the Sylvester matrix of f and g in variable i."""
    if f.is_zero or g.is_zero:
        raise PolyError("resultant of a zero polynomial")
    m, n = f.degree(i), g.degree(i)
    if m == 0 and n == 0:
        return MultiPoly.const(f.dom, f.vars, 1)
    others = {k for e in list(f.terms) + list(g.terms)
              for k in range(len(f.vars)) if k != i and e[k]}
    if f.dom.name in ("ZZ", "QQ") and len(others) <= 1:
        v = others.pop() if others else None
        return _resultant_interpolated(f, g, i, v, m, n)
    fc = f.coeff_map(i)
    gc = g.coeff_map(i)
    zero = MultiPoly.zero(f.dom, f.vars)
    size = m + n
    rows = []
    for r in range(m):
        rows.append([gc.get(n - (c - r), zero) if 0 <= c - r <= n else zero
                     for c in range(size)])
    for r in range(n):
        rows.append([fc.get(m - (c - r), zero) if 0 <= c - r <= m else zero
                     for c in range(size)])
    return _det_bareiss(rows, f.dom, f.vars)


def _resultant_interpolated(f, g, i, v, m, n):
    """Bivariate-over-QQ resultant by evaluation at integer points and
    Newton interpolation; exact, and much faster than polynomial Bareiss."""
    dom, vars = f.dom, f.vars
    fdeg = max((e[v] for e in f.terms), default=0) if v is not None else 0
    gdeg = max((e[v] for e in g.terms), default=0) if v is not None else 0
    dbound = n * fdeg + m * gdeg
    fc = {d: p for d, p in f.coeff_map(i).items()}
    gc = {d: p for d, p in g.coeff_map(i).items()}

    def coeff_value(p, point):
        # p is free of variable i; at most variable v is present
        acc = Fraction(0)
        for e, c in p.terms.items():
            acc += Fraction(c.val) * point ** (e[v] if v is not None else 0)
        return acc

    def det_at(point):
        frow = [coeff_value(fc[d], point) if d in fc else Fraction(0)
                for d in range(m, -1, -1)]
        grow = [coeff_value(gc[d], point) if d in gc else Fraction(0)
                for d in range(n, -1, -1)]
        size = m + n
        rows = [[grow[c - r] if 0 <= c - r <= n else Fraction(0)
                 for c in range(size)] for r in range(m)]
        rows += [[frow[c - r] if 0 <= c - r <= m else Fraction(0)
                  for c in range(size)] for r in range(n)]
        return _det_bareiss_scalar(rows)

    points = list(range(dbound + 1))
    values = [det_at(pt) for pt in points]
    # Newton divided differences
    coef = list(values)
    for lev in range(1, len(points)):
        for k in range(len(points) - 1, lev - 1, -1):
            coef[k] = (coef[k] - coef[k - 1]) / (points[k] - points[k - lev])
    # expand the Newton form into monomial coefficients
    poly = [Fraction(0)] * (dbound + 1)
    acc = [Fraction(1)] + [Fraction(0)] * dbound
    for lev, c in enumerate(coef):
        for d in range(lev + 1):
            poly[d] += c * acc[d]
        if lev < dbound:
            # acc *= (x - points[lev])
            nxt = [Fraction(0)] * (dbound + 1)
            for d in range(lev + 1):
                nxt[d + 1] += acc[d]
                nxt[d] -= acc[d] * points[lev]
            acc = nxt
    out = MultiPoly.zero(dom, vars)
    zero_exp = [0] * len(vars)
    for d, c in enumerate(poly):
        if c:
            e = list(zero_exp)
            if v is not None:
                e[v] = d
            elif d:
                raise PolyError("constant resultant with nonzero degree")
            if dom.name == "ZZ":
                if c.denominator != 1:
                    raise PolyError("non-integral interpolated resultant")
                out.terms[tuple(e)] = dom(c.numerator)
            else:
                out.terms[tuple(e)] = dom(c)
    return out


def _det_bareiss_scalar(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [row[:] for row in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                return Fraction(0)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = (m[k][k] * m[r][c] - m[r][k] * m[k][c]) / prev
            m[r][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_bareiss(rows, dom, vars):
    n = len(rows)
    if n == 0:
        return MultiPoly.const(dom, vars, 1)
    m = [row[:] for row in rows]
    sign = 1
    prev = MultiPoly.const(dom, vars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            piv = next((r for r in range(k + 1, n) if not m[r][k].is_zero), None)
            if piv is None:
                return MultiPoly.zero(dom, vars)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                num = m[k][k] * m[r][c] - m[r][k] * m[k][c]
                m[r][c] = exact_divide(num, prev)
            m[r][k] = MultiPoly.zero(dom, vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


# ---------------------------------------------------------------------------
# nonnegative integer roots (Sturm bisection; exact, no factoring)
# ---------------------------------------------------------------------------

def nonneg_integer_roots(f: MultiPoly, i: int = 0):
    """All j in N with f(j) identically zero in remaining parameters."""
    if f.is_zero:
        raise PolyError("infinite root set of the zero polynomial")
    comps = _rational_components(f, i)
    g = comps[0]
    for p in comps[1:]:
        g = _frpoly_gcd(g, p)
        if len(g) == 1:
            return set()
    return _sturm_nonneg_integer_roots(g)


def _rational_components(f, i):
    """Univariate Fraction-coefficient polynomials in variable i whose common
    roots are exactly the identical roots of f."""
    groups = {}
    for e, c in f.terms.items():
        rest = e[:i] + (0,) + e[i + 1:]
        if isinstance(c.val, tuple):          # QQ_t payload: split by t power
            pieces = [(tpow, q) for tpow, q in enumerate(c.val) if q]
        else:
            pieces = [(0, Fraction(c.val))]
        for tpow, q in pieces:
            groups.setdefault((rest, tpow), {})[e[i]] = q
    out = []
    for key in sorted(groups):
        cmap = groups[key]
        deg = max(cmap)
        out.append(_pt_trim([cmap.get(d, Fraction(0)) for d in range(deg + 1)]))
    return [p for p in out if p]


def _frpoly_gcd(a, b):
    while b:
        _, r = _pt_divmod(a, b)
        a, b = b, r
    return _pt_trim([c / a[-1] for c in a]) if a else a


def _frpoly_eval(p, x):
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def _frpoly_deriv(p):
    return _pt_trim([p[k] * k for k in range(1, len(p))])


def _iroot_ceil(x: int, k: int) -> int:
    """Smallest r >= 0 with r**k >= x."""
    if x <= 1:
        return max(x, 0)
    r = max(int(round(x ** (1.0 / k))), 1) if x.bit_length() < 900 \
        else 1 << (x.bit_length() // k + 1)
    while r ** k < x:
        r += 1
    while r > 0 and (r - 1) ** k >= x:
        r -= 1
    return r


def _integer_root_bound(p):
    """Fujiwara-style bound: every real root has |root| <= 2*max_k
    |a_{d-k}/a_d|^(1/k)."""
    d = len(p) - 1
    lead = abs(p[-1])
    best = 0
    for k in range(1, d + 1):
        a = abs(p[d - k]) / lead
        if a:
            num = a.numerator // a.denominator + 1
            best = max(best, _iroot_ceil(num, k))
    return 2 * best + 1


def _sturm_nonneg_integer_roots(p):
    if len(p) <= 1:
        return set()
    bound = _integer_root_bound(p)
    if bound <= 20000:
        return {j for j in range(bound + 1) if _frpoly_eval(p, j) == 0}
    g = _frpoly_gcd(p, _frpoly_deriv(p))
    if len(g) > 1:
        p, _ = _pt_divmod(p, g)
    chain = [p, _frpoly_deriv(p)]
    while chain[-1]:
        _, r = _pt_divmod(chain[-2], chain[-1])
        chain.append(tuple(-c for c in r))
    chain.pop()

    def variations(x):
        signs = []
        for q in chain:
            v = _frpoly_eval(q, x)
            if v:
                signs.append(1 if v > 0 else -1)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def nonroot(x, step):
        # Sturm counts need sample points where p does not vanish
        while _frpoly_eval(p, x) == 0:
            x += step
        return x

    nsteps = 8 * len(p)
    hi = 1 + max(abs(c) for c in p) / abs(p[-1])   # strict Cauchy root bound
    lo = nonroot(Fraction(-1, 2), Fraction(1, nsteps))
    roots = set()
    stack = [(lo, hi)]
    while stack:
        lo, hi = stack.pop()
        if variations(lo) - variations(hi) == 0:
            continue
        if hi - lo < 1:
            # at most one integer in (lo, hi]
            m = _floor_fr(hi)
            if m > lo and m >= 0 and _frpoly_eval(p, m) == 0:
                roots.add(m)
            continue
        mid = nonroot((lo + hi) / 2, (hi - lo) / nsteps)
        stack.append((lo, mid))
        stack.append((mid, hi))
    return roots


def _floor_fr(x):
    return x.numerator // x.denominator


# ---------------------------------------------------------------------------
# expression parsing and printing
# ---------------------------------------------------------------------------

def tokenize(text):
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(("int", int(text[i:j]), i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j], i))
            i = j
        elif c in "+-*/^()":
            out.append(("op", c, i))
            i += 1
        else:
            raise PolyError("unexpected character %r at position %d" % (c, i))
    return out


class ExprParser:
    """Recursive-descent parser over any ring with +, *, ** and unary -.

    ``const(int)`` builds a ring element from an integer, ``symbol(name)``
    resolves a variable token, ``ratio(a, b)`` builds the literal a/b (or
    raises).  Products are built left to right, so noncommutative rings work.
    """

    def __init__(self, text, const, symbol, ratio=None):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.const = const
        self.symbol = symbol
        self.ratio = ratio

    def fail(self, msg, tok=None):
        at = tok[2] if tok else (self.tokens[self.pos][2]
                                 if self.pos < len(self.tokens) else len(self.text))
        raise PolyError("%s at position %d in %r" % (msg, at, self.text))

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        self.pos += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            self.fail("trailing input", self.peek())
        return v

    def expr(self):
        v = self.signed_term()
        while True:
            tok = self.peek()
            if tok and tok[:2] in (("op", "+"), ("op", "-")):
                self.take()
                w = self.term()
                v = v + w if tok[1] == "+" else v - w
            else:
                return v

    def signed_term(self):
        neg = False
        while self.peek() and self.peek()[:2] in (("op", "+"), ("op", "-")):
            if self.take()[1] == "-":
                neg = not neg
        v = self.term()
        return -v if neg else v

    def term(self):
        v = self.power()
        while True:
            tok = self.peek()
            if tok and tok[:2] == ("op", "*"):
                self.take()
                v = v * self.power()
            else:
                return v

    def power(self):
        v = self.atom()
        tok = self.peek()
        if tok and tok[:2] == ("op", "^"):
            self.take()
            etok = self.take()
            if etok[0] != "int":
                self.fail("exponent must be a nonnegative integer", etok)
            v = v ** etok[1]
        return v

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            nxt = self.peek()
            if nxt and nxt[:2] == ("op", "/"):
                self.take()
                dtok = self.take()
                if dtok[0] != "int" or dtok[1] == 0:
                    self.fail("expected nonzero integer denominator", dtok)
                if self.ratio is None:
                    self.fail("rational literals not allowed in this ring", tok)
                return self.ratio(tok[1], dtok[1])
            return self.const(tok[1])
        if tok[0] == "name":
            v = self.symbol(tok[1])
            if v is None:
                self.fail("unknown symbol %r" % tok[1], tok)
            return v
        if tok[:2] == ("op", "("):
            v = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.fail("expected ')'", close)
            return v
        if tok[:2] == ("op", "-"):
            return -self.atom()
        self.fail("unexpected token", tok)


def parse_poly(text, dom, vars) -> MultiPoly:
    vars = tuple(vars)

    def symbol(name):
        if name in vars:
            return MultiPoly.var(dom, vars, name)
        if name == "t" and dom.name == "QQ_t":
            return MultiPoly.const(dom, vars, dom((0, 1)))
        return None

    def ratio(a, b):
        if dom.name == "ZZ":
            raise PolyError("rational literal %d/%d in a ZZ ring" % (a, b))
        return MultiPoly.const(dom, vars, dom(Fraction(a, b)))

    return ExprParser(text, lambda k: MultiPoly.const(dom, vars, k),
                      symbol, ratio).parse()


def _scalar_factor_str(c: Scalar):
    s = str(c)
    if ("+" in s or "-" in s or "/" in s) and len(s) > 1:
        return "(%s)" % s
    return s


def format_poly(f: MultiPoly) -> str:
    if f.is_zero:
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        neg, mag = c.sign_split()
        factors = []
        for i, name in enumerate(f.vars):
            if e[i] == 1:
                factors.append(name)
            elif e[i] > 1:
                factors.append("%s^%d" % (name, e[i]))
        if not factors or mag != f.dom.one:
            factors.insert(0, _scalar_factor_str(mag))
        mono = "*".join(factors)
        if not parts:
            parts.append("-" + mono if neg else mono)
        else:
            parts.append((" - " if neg else " + ") + mono)
    return "".join(parts)
