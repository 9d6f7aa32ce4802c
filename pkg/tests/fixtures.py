"""Shared operator fixtures used across the suite."""

from orecalc import (OreSignature, QQ, QQt, ZZ, parse_operator, parse_poly,
                     weyl_gb)

SHIFT_N = OreSignature.shift(ZZ, ("n",))
DIFF_X = OreSignature.diff(ZZ, ("x",))
SHIFT_QT = OreSignature.shift(QQt, ("n",))
WEYL2 = OreSignature.diff(QQ, ("x1", "x2"))


def hypergeom_shift_op():
    """Order-2 recurrence with the removable square (1+16n)^2 in front."""
    return parse_operator(
        "(1+16*n)^2*Dn^2 - 32*(7+16*n)*Dn - (1+n)*(17+16*n)^2", SHIFT_N)


def hypergeom_desing():
    """Its content-free desingularization of order 3."""
    return parse_operator(
        "Dn^3 + (128*n^3-104*n^2-11*n-3)*Dn^2 + (-256*n^2+127*n+94)*Dn"
        " - (128*n^2+24*n-131)*(1+n)^2", SHIFT_N)


def hypergeom_left_multiple():
    """The classical order-3 left multiple with leading constant 64."""
    return parse_operator(
        "64*Dn^3 + (16*n+23)*(16*n-7)*Dn^2 - (576*n+928)*Dn"
        " - (16*n+23)*(16*n+25)*(n+1)", SHIFT_N)


def diff_order2_op():
    """x*Dx^2 - (x+2)*Dx + 2, desingularizable to Dx^4 - Dx^3."""
    return parse_operator("x*Dx^2 - (x+2)*Dx + 2", DIFF_X)


def qt_order1_op():
    return parse_operator("(n-1)*(n+t)*Dn + n + t + 1", SHIFT_QT)


def qt_t1():
    return parse_operator("(2+t)*n*Dn^2 + (4-n+t)*Dn - 1", SHIFT_QT)


def qt_t2():
    return parse_operator("(n-1)*n*Dn^2 + 2*(n-1)*Dn + 1", SHIFT_QT)


def binom_plus_power_op():
    """ZZ-primitive order-2 annihilator of binomial(4n,n) + 3^n."""
    return parse_operator(
        "3*(n+2)*(3*n+4)*(3*n+5)*(7*n+3)*(25*n^2+21*n+2)*Dn^2"
        " + (-58975*n^6-347289*n^5-798121*n^4-902739*n^3-519976*n^2"
        "-141300*n-13680)*Dn"
        " + 24*(2*n+1)*(4*n+1)*(4*n+3)*(7*n+10)*(25*n^2+71*n+48)",
        SHIFT_N)


# Chapter 4 systems ---------------------------------------------------------

def sincos_system():
    """Annihilates cos(x1+x2) and sin(x1+x2); no singularities."""
    return [parse_operator("Dx2 - Dx1", WEYL2),
            parse_operator("Dx1^2 + 1", WEYL2)]


def two_lines_system():
    return [parse_operator("x1*Dx1^2 - (x1*x2-1)*Dx1 - x2", WEYL2),
            parse_operator("x2*Dx2 - x1*Dx1", WEYL2)]


def indpol_system():
    return [parse_operator("x1*x2*Dx2 - x1*x2*Dx1 - x1 + x2", WEYL2),
            parse_operator("x1^2*Dx1^2 - 2*x1*Dx1 + 2 + x1^2", WEYL2)]


def candidates2_system():
    return [parse_operator("x1*x2*Dx2 + (-x1^2 + 2*x1*x2)*Dx1 - 2*x2", WEYL2),
            parse_operator("(x1^3 - x1^2*x2)*Dx1^2 + 2*x1*x2*Dx1 - 2*x2", WEYL2)]


def appsin1_system():
    """Solutions exp(x1+x2), x2*exp(x2); apparent at the origin."""
    return [parse_operator("x2*Dx2 + Dx1 - x2 - 1", WEYL2),
            parse_operator("Dx1^2 - Dx1", WEYL2)]


def appsin2_system():
    """Solutions x1+x2, x1*x2; apparent at the origin."""
    return [parse_operator("x2^2*Dx2 - x1^2*Dx1 + x1 - x2", WEYL2),
            parse_operator("Dx1^2", WEYL2)]


def detect2_system():
    """Solutions sin(x1+x2), cos(x1+x2), x1*x2; apparent at the origin."""
    return [
        parse_operator(
            "(x1-x2)*Dx1^2 - x1*x2*Dx2 + x1*x2*Dx1 + x1 - x2", WEYL2),
        parse_operator(
            "(x1-x2)*Dx1*Dx2 + (-1-x1*x2)*Dx2 + (1+x1*x2)*Dx1 + x1 - x2",
            WEYL2),
        parse_operator(
            "(x1-x2)*Dx2^2 - x1*x2*Dx2 + x1*x2*Dx1 + x1 - x2", WEYL2),
    ]
