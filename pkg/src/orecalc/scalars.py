"""Coefficient domains for the whole stack: ZZ, QQ and QQ[t].

Every value is a :class:`Scalar`, an immutable pair (domain, payload):

* ZZ   -- arbitrary precision ``int``
* QQ   -- ``fractions.Fraction`` (always reduced, positive denominator)
* QQ_t -- univariate polynomial in ``t`` over QQ, stored as a dense tuple
          of Fractions without trailing zeros (the zero polynomial is ``()``)

All three rings are principal ideal domains with computable extended gcd,
which is what the Groebner engine requires.
"""

from __future__ import annotations

from fractions import Fraction


class DomainMismatch(TypeError):
    """Raised when two scalars from different domains are combined."""


class ScalarError(ArithmeticError):
    """Raised on invalid scalar operations (inexact division, zero inverse)."""


# ---------------------------------------------------------------------------
# dense QQ[t] helpers (tuples of Fraction, no trailing zeros)
# ---------------------------------------------------------------------------

def _pt_trim(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


def _pt_add(a, b):
    n = max(len(a), len(b))
    return _pt_trim([
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        for i in range(n)
    ])


def _pt_neg(a):
    return tuple(-c for c in a)


def _pt_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _pt_trim(out)


def _pt_divmod(a, b):
    """Euclidean division in QQ[t]; b must be nonzero."""
    if not b:
        raise ScalarError("division by zero in QQ[t]")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) >= len(b) and _pt_trim(r):
        r = list(_pt_trim(r))
        if len(r) < len(b):
            break
        k = len(r) - 1 - db
        c = r[-1] / lb
        q[k] = c
        for i, cb in enumerate(b):
            r[k + i] -= c * cb
    return _pt_trim(q), _pt_trim(r)


def _pt_gcd_ext(a, b):
    """Extended Euclid in QQ[t]; gcd returned monic."""
    r0, r1 = a, b
    u0, u1 = (Fraction(1),), ()
    v0, v1 = (), (Fraction(1),)
    while r1:
        q, r = _pt_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _pt_add(u0, _pt_neg(_pt_mul(q, u1)))
        v0, v1 = v1, _pt_add(v0, _pt_neg(_pt_mul(q, v1)))
    if not r0:
        return (), (), ()
    lc = r0[-1]
    inv = (1 / lc,)
    return _pt_mul(r0, inv), _pt_mul(u0, inv), _pt_mul(v0, inv)


def _pt_str(cs):
    if not cs:
        return "0"
    parts = []
    for k in range(len(cs) - 1, -1, -1):
        c = cs[k]
        if not c:
            continue
        if k == 0:
            mon = _fr_str(abs(c))
        else:
            tp = "t" if k == 1 else "t^%d" % k
            mon = tp if abs(c) == 1 else "%s*%s" % (_fr_str(abs(c)), tp)
        if not parts:
            parts.append(mon if c > 0 else "-" + mon)
        else:
            parts.append((" + " if c > 0 else " - ") + mon)
    return "".join(parts)


def _fr_str(q):
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------

class Domain:
    """A coefficient PID.  Use the singletons ``ZZ``, ``QQ``, ``QQt``."""

    name = "?"

    def __call__(self, value):
        return Scalar(self, self._coerce(value))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __repr__(self):
        return self.name

    # payload protocol, implemented per domain ----------------------------
    def _coerce(self, value):
        raise NotImplementedError

    def _is_unit(self, v):
        raise NotImplementedError

    def _normalize(self, v):
        """Return (canonical, unit) with v == unit * canonical."""
        raise NotImplementedError


class _IntegerDomain(Domain):
    name = "ZZ"

    def _coerce(self, value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise DomainMismatch("ZZ payload must be int, got %r" % (value,))
        return value

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _is_unit(self, v):
        return v in (1, -1)

    def _inv(self, v):
        if not self._is_unit(v):
            raise ScalarError("%r is not a unit in ZZ" % (v,))
        return v

    def _normalize(self, v):
        if v < 0:
            return -v, -1
        return v, 1

    def _divides(self, a, b):
        if a == 0:
            return b == 0
        return b % a == 0

    def _exact_div(self, b, a):
        if a == 0 or b % a:
            raise ScalarError("inexact division %r / %r in ZZ" % (b, a))
        return b // a

    def _gcd_ext(self, a, b):
        if a == 0 and b == 0:
            return 0, 0, 0
        if a == 0:
            return abs(b), 0, 1 if b > 0 else -1
        if b == 0:
            return abs(a), 1 if a > 0 else -1, 0
        g, x = _int_xgcd(a, b)
        # choose the representative of x modulo b/g with least |x|;
        # on a tie take the positive one (fixed module-wide choice)
        m = abs(b // g)
        x %= m
        if 2 * x > m:
            x -= m
        return g, x, (g - x * a) // b

    def _parse(self, text):
        return int(text, 10)

    def _str(self, v):
        return str(v)


def _int_xgcd(a, b):
    prevx, x = 1, 0
    while b:
        q, r = divmod(a, b)
        prevx, x = x, prevx - q * x
        a, b = b, r
    if a < 0:
        return -a, -prevx
    return a, prevx


class _RationalDomain(Domain):
    name = "QQ"

    def _coerce(self, value):
        if isinstance(value, bool):
            raise DomainMismatch("QQ payload must be rational, got bool")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, Fraction):
            return value
        raise DomainMismatch("QQ payload must be rational, got %r" % (value,))

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _is_unit(self, v):
        return v != 0

    def _inv(self, v):
        if not v:
            raise ScalarError("0 is not a unit in QQ")
        return 1 / v

    def _normalize(self, v):
        if not v:
            return Fraction(0), Fraction(1)
        return Fraction(1), v

    def _divides(self, a, b):
        return a != 0 or b == 0

    def _exact_div(self, b, a):
        if not a:
            raise ScalarError("division by zero in QQ")
        return b / a

    def _gcd_ext(self, a, b):
        # gcd in a field is 1 unless both arguments vanish
        if a:
            return Fraction(1), 1 / a, Fraction(0)
        if b:
            return Fraction(1), Fraction(0), 1 / b
        return Fraction(0), Fraction(0), Fraction(0)

    def _parse(self, text):
        return Fraction(text)

    def _str(self, v):
        return _fr_str(v)


class _RationalPolyDomain(Domain):
    name = "QQ_t"

    def _coerce(self, value):
        if isinstance(value, bool):
            raise DomainMismatch("QQ_t payload must be polynomial data")
        if isinstance(value, int):
            return _pt_trim([Fraction(value)])
        if isinstance(value, Fraction):
            return _pt_trim([value])
        if isinstance(value, (list, tuple)):
            return _pt_trim([Fraction(c) for c in value])
        raise DomainMismatch("QQ_t payload must be int/Fraction/coeff list, got %r" % (value,))

    @property
    def t(self):
        return self((0, 1))

    def _add(self, a, b):
        return _pt_add(a, b)

    def _mul(self, a, b):
        return _pt_mul(a, b)

    def _neg(self, a):
        return _pt_neg(a)

    def _is_unit(self, v):
        return len(v) == 1

    def _inv(self, v):
        if not self._is_unit(v):
            raise ScalarError("%s is not a unit in QQ[t]" % _pt_str(v))
        return (1 / v[0],)

    def _normalize(self, v):
        if not v:
            return (), (Fraction(1),)
        lc = v[-1]
        return _pt_mul(v, (1 / lc,)), (lc,)

    def _divides(self, a, b):
        if not a:
            return not b
        _, r = _pt_divmod(b, a)
        return not r

    def _exact_div(self, b, a):
        q, r = _pt_divmod(b, a)
        if r:
            raise ScalarError("inexact division in QQ[t]")
        return q

    def _gcd_ext(self, a, b):
        return _pt_gcd_ext(a, b)

    def _parse(self, text):
        return _parse_qqt(text)

    def _str(self, v):
        return _pt_str(v)


ZZ = _IntegerDomain()
QQ = _RationalDomain()
QQt = _RationalPolyDomain()

DOMAINS = {"ZZ": ZZ, "QQ": QQ, "QQ_t": QQt}


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

class Scalar:
    """Immutable element of one of the coefficient domains."""

    __slots__ = ("dom", "val")

    def __init__(self, dom, val):
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "val", val)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def _peer(self, other):
        if isinstance(other, Scalar):
            if other.dom is not self.dom:
                raise DomainMismatch(
                    "mixed domains %s and %s" % (self.dom.name, other.dom.name))
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.dom(other)
        return NotImplemented

    # ring structure -------------------------------------------------------
    def __add__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.dom, self.dom._add(self.val, o.val))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.dom, self.dom._neg(self.val))

    def __sub__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.dom, self.dom._mul(self.val, o.val))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.dom.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.val)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = self.dom(other)
        return (isinstance(other, Scalar) and other.dom is self.dom
                and other.val == self.val)

    def __hash__(self):
        return hash((self.dom.name, self.val))

    def __repr__(self):
        return "%s(%s)" % (self.dom.name, self.dom._str(self.val))

    def __str__(self):
        return self.dom._str(self.val)

    # divisibility ----------------------------------------------------------
    @property
    def is_zero(self):
        return not bool(self)

    @property
    def is_unit(self):
        return self.dom._is_unit(self.val)

    def inverse(self):
        return Scalar(self.dom, self.dom._inv(self.val))

    def divides(self, other):
        o = self._peer(other)
        return self.dom._divides(self.val, o.val)

    def exact_div(self, other):
        """Quotient self / other, requiring exactness."""
        o = self._peer(other)
        return Scalar(self.dom, self.dom._exact_div(self.val, o.val))

    def normalize(self):
        """Split into (canonical, unit) with self == unit * canonical."""
        c, u = self.dom._normalize(self.val)
        return Scalar(self.dom, c), Scalar(self.dom, u)

    @property
    def canonical(self):
        return self.normalize()[0]

    def divmod_canonical(self, other):
        """(q, r) with self = q*other + r and r the canonical small residue:
        minimal absolute value over ZZ (ties positive), zero over QQ,
        degree-reduced over QQ[t]."""
        o = self._peer(other)
        if not o:
            raise ScalarError("division by zero")
        dom = self.dom
        if dom is ZZ:
            b = abs(o.val)
            r = self.val % b
            if 2 * r > b:
                r -= b
            return Scalar(dom, (self.val - r) // o.val), Scalar(dom, r)
        if dom is QQ:
            return Scalar(dom, self.val / o.val), Scalar(dom, Fraction(0))
        q, r = _pt_divmod(self.val, o.val)
        return Scalar(dom, q), Scalar(dom, r)

    def sign_split(self):
        """(is_negative, |self|) for printing; uses the canonical unit."""
        c, u = self.normalize()
        if self.dom is ZZ:
            return u.val < 0, Scalar(self.dom, abs(self.val))
        if self.dom is QQ:
            return self.val < 0, Scalar(self.dom, abs(self.val))
        if self.val and self.val[-1] < 0:
            return True, -self
        return False, self


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def gcd_ext(a: Scalar, b: Scalar):
    """Extended gcd: returns (g, c1, c2) with c1*a + c2*b == g canonical."""
    b = a._peer(b)
    g, c1, c2 = a.dom._gcd_ext(a.val, b.val)
    return Scalar(a.dom, g), Scalar(a.dom, c1), Scalar(a.dom, c2)


def gcd(a: Scalar, b: Scalar) -> Scalar:
    return gcd_ext(a, b)[0]


def lcm(a: Scalar, b: Scalar) -> Scalar:
    b = a._peer(b)
    if a.is_zero or b.is_zero:
        return a.dom.zero
    g = gcd(a, b)
    return (a * b).exact_div(g).canonical


def divides(a: Scalar, b: Scalar):
    """Whether a | b; returns (flag, exact_quotient-or-None)."""
    b = a._peer(b)
    if not a.divides(b):
        return False, None
    if a.is_zero:
        return True, a.dom.zero
    return True, b.exact_div(a)


# ---------------------------------------------------------------------------
# tiny parser for QQ[t] scalar expressions
# ---------------------------------------------------------------------------

def _parse_qqt(text):
    tokens = _qqt_tokens(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take(kind=None):
        tok = peek()
        if tok is None or (kind and tok[0] != kind):
            raise ScalarError("bad QQ[t] expression %r" % text)
        pos[0] += 1
        return tok

    def atom():
        tok = peek()
        if tok is None:
            raise ScalarError("bad QQ[t] expression %r" % text)
        if tok[0] == "int":
            take()
            v = _pt_trim([Fraction(tok[1])])
            if peek() == ("op", "/"):
                take()
                dtok = take("int")
                v = _pt_mul(v, (Fraction(1, dtok[1]),))
            return v
        if tok[0] == "t":
            take()
            return (Fraction(0), Fraction(1))
        if tok == ("op", "("):
            take()
            v = expr()
            if take("op")[1] != ")":
                raise ScalarError("unbalanced parens in %r" % text)
            return v
        raise ScalarError("bad token in QQ[t] expression %r" % text)

    def power():
        v = atom()
        if peek() == ("op", "^"):
            take()
            e = take("int")[1]
            out = (Fraction(1),)
            for _ in range(e):
                out = _pt_mul(out, v)
            return out
        return v

    def term():
        v = power()
        while peek() == ("op", "*"):
            take()
            v = _pt_mul(v, power())
        return v

    def signed():
        neg = False
        while peek() in (("op", "+"), ("op", "-")):
            if take()[1] == "-":
                neg = not neg
        v = term()
        return _pt_neg(v) if neg else v

    def expr():
        v = signed()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            w = term()
            v = _pt_add(v, _pt_neg(w) if op == "-" else w)
        return v

    out = expr()
    if pos[0] != len(tokens):
        raise ScalarError("trailing input in QQ[t] expression %r" % text)
    return out


def _qqt_tokens(text):
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
            out.append(("int", int(text[i:j])))
            i = j
        elif c == "t":
            out.append(("t", "t"))
            i += 1
        elif c in "+-*/^()":
            out.append(("op", c))
            i += 1
        else:
            raise ScalarError("bad character %r in QQ[t] expression" % c)
    return out
