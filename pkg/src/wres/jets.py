"""Boundary symbol jets: values and first normal derivatives at the base point.

The boundary computation only ever evaluates symbols, and single normal
derivatives of symbols, at a fixed boundary point in adapted
coordinates.  A SymbolJet carries exactly that: the value and, when
tracked, the first normal derivative, both as cosphere-reduced rational
matrices.  Tangential derivatives vanish identically at the base point
in these coordinates, which is what collapses the composition formula
to a single normal term.

Second normal derivatives are never produced; any request for one fails
loudly rather than silently returning zero.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .clifford import (
    CliffordOp,
    build_connection_ops,
    drift_exterior,
    drift_interior,
    normal_clifford,
    tangential_clifford,
)
from .exact import GaussianRational, Poly, gen_h
from .rational import MatrixSymbol, RationalXi

_I = GaussianRational(0, 1)
_MINUS_I = GaussianRational(0, -1)

VARIANTS = ("Dv", "DvStar")
RIGHT_VARIANTS = ("Dv", "DvStar", "D3")


class SymbolJet:
    """Value and optional first normal derivative of one symbol order."""

    __slots__ = ("value", "dxn")

    def __init__(self, value: MatrixSymbol, dxn: MatrixSymbol | None = None):
        self.value = value
        self.dxn = dxn

    @property
    def tracked(self) -> bool:
        return self.dxn is not None

    def dxn_or_raise(self) -> MatrixSymbol:
        if self.dxn is None:
            raise ValueError(
                "normal derivative requested for a symbol order that only "
                "carries a value; first-order jets cannot supply it"
            )
        return self.dxn

    def __repr__(self):
        return f"SymbolJet(value={self.value!r}, dxn={'tracked' if self.tracked else 'none'})"


def jet_mul(f: SymbolJet, g: SymbolJet) -> SymbolJet:
    """Pointwise product with Leibniz normal derivative.

    If either factor's derivative is untracked the product's derivative
    is untracked too; consumers fail loudly through dxn_or_raise.
    """
    value = f.value @ g.value
    if f.tracked and g.tracked:
        dxn = f.dxn @ g.value + f.value @ g.dxn
    else:
        dxn = None
    return SymbolJet(value, dxn)


def jet_d_xi_n(f: SymbolJet) -> SymbolJet:
    """Derivative in the normal covariable; commutes with the normal jet."""
    return SymbolJet(
        f.value.d_xi_n(), f.dxn.d_xi_n() if f.tracked else None
    )


def jet_d_xn(f: SymbolJet) -> MatrixSymbol:
    """The normal derivative as a plain value.

    Deliberately not a SymbolJet: a second normal derivative would need
    jet data this representation does not carry.
    """
    return f.dxn_or_raise()


# ---------------------------------------------------------------------------
# geometry at the base point


class GeometryTable:
    """Adapted-coordinate geometry data at the boundary base point.

    The metric is a warped product near the boundary: tangential part
    scaled by 1/h(x_n), normal part flat, h(0) = 1.  Everything the
    symbol calculus needs is expressed through H = h'(0).
    """

    def __init__(self, n: int):
        self.n = n
        self.h = Poly.gen(gen_h())

    def omega(self, s: int, t: int, i: int) -> Poly:
        """Connection matrix entry omega_{s,t}(e_i) at the base point."""
        if i < self.n:
            if s == self.n and t == i:
                return self.h * Fraction(1, 2)
            if s == i and t == self.n:
                return self.h * Fraction(-1, 2)
        return Poly.zero()

    def christoffel(self, up: int, lo1: int, lo2: int) -> Poly:
        """Christoffel symbol at the base point, orthonormal-frame indices."""
        n = self.n
        if up == n and lo1 == lo2 and lo1 < n:
            return self.h * Fraction(1, 2)
        if up < n and ((lo1 == n and lo2 == up) or (lo1 == up and lo2 == n)):
            return self.h * Fraction(-1, 2)
        return Poly.zero()

    def dxn_norm_sq_on_sphere(self) -> Poly:
        """Normal derivative of the covector length squared, |xi'| = 1."""
        return self.h

    def dxn_tangential_clifford(self) -> CliffordOp:
        """Normal derivative of the tangential Clifford action at the base point.

        The tangential frame covectors scale like sqrt(h), so the
        derivative is H/2 times the action itself.
        """
        return tangential_clifford(self.n).scale(self.h * Fraction(1, 2))


# ---------------------------------------------------------------------------
# symbols of the two first-order operators


def leading_symbol(n: int) -> SymbolJet:
    """Order-one symbol: i times the Clifford action of the full covector."""
    geom = GeometryTable(n)
    c_tan = MatrixSymbol.from_clifford(tangential_clifford(n))
    c_nor = MatrixSymbol.from_clifford(
        normal_clifford(n), RationalXi.monomial(1, 1)
    )
    value = (c_tan + c_nor).scale(RationalXi.const(_I))
    dxn = MatrixSymbol.from_clifford(geom.dxn_tangential_clifford()).scale(
        RationalXi.const(_I)
    )
    return SymbolJet(value, dxn)


def zero_order_symbol(n: int, variant: str, dual: bool = True) -> SymbolJet:
    """Order-zero symbol: connection operators plus the drift action.

    The drift enters as interior multiplication for the operator itself
    and as exterior multiplication by the dual covector for its formal
    adjoint.  The normal derivative is never needed downstream, so it is
    left untracked.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown operator variant {variant!r}")
    a_op, b_op = build_connection_ops(n)
    drift = drift_interior(n) if variant == "Dv" else drift_exterior(n, dual)
    return SymbolJet(MatrixSymbol.from_clifford(a_op + b_op + drift), None)


def operator_symbols(n: int, variant: str, dual: bool = True) -> dict[int, SymbolJet]:
    """Graded symbol of one first-order operator: orders 1 and 0."""
    return {1: leading_symbol(n), 0: zero_order_symbol(n, variant, dual)}


# ---------------------------------------------------------------------------
# composition and inversion


def compose_symbols(
    left: dict[int, SymbolJet], right: dict[int, SymbolJet]
) -> dict[int, SymbolJet]:
    """Leading two orders of the composed symbol at the base point.

    The full composition sums derivative pairings over all covector
    directions, but at the base point every tangential position
    derivative of the right factor vanishes, so only the normal pairing
    survives at the first subleading order.  Orders below the two
    leading ones are dropped; they are never consumed.
    """
    m_l = max(left)
    m_r = max(right)
    top = jet_mul(left[m_l], right[m_r])
    minus_i = RationalXi.const(_MINUS_I)
    next_value = (
        left[m_l].value @ right[m_r - 1].value
        + left[m_l - 1].value @ right[m_r].value
        + left[m_l].value.d_xi_n() @ right[m_r].dxn_or_raise().scale(minus_i)
    )
    return {m_l + m_r: top, m_l + m_r - 1: SymbolJet(next_value, None)}


@lru_cache(maxsize=None)
def _triple_symbols_cached(n: int, dual: bool) -> dict[int, SymbolJet]:
    first = compose_symbols(
        operator_symbols(n, "DvStar", dual), operator_symbols(n, "Dv", dual)
    )
    return compose_symbols(first, operator_symbols(n, "DvStar", dual))


def triple_symbols(n: int, dual: bool = True) -> dict[int, SymbolJet]:
    """Graded symbol of adjoint-times-operator-times-adjoint, orders 3 and 2."""
    return dict(_triple_symbols_cached(n, dual))


def _norm_power(m: int) -> RationalXi:
    """(1 + xin**2)**m as a polynomial rational."""
    out = RationalXi.const(1)
    norm = RationalXi([Poly.const(1), Poly.zero(), Poly.const(1)])
    for _ in range(m):
        out = out * norm
    return out


def invert_symbol(
    p_top: SymbolJet, p_next: SymbolJet, m: int
) -> dict[int, SymbolJet]:
    """Leading two orders of the inverse symbol.

    The leading symbol must square to the covector norm to the m-th
    power times the identity (true for Clifford-linear leading symbols);
    that gives the inverse exactly, without general matrix inversion.
    The subleading order comes from the standard recursion, again
    collapsed to the single normal pairing at the base point.
    """
    n = p_top.value.n
    w = p_top.value
    square = w @ w
    expected = MatrixSymbol.identity(n, _norm_power(m))
    if square != expected:
        raise ValueError(
            "leading symbol square is not the expected norm power; "
            "cannot invert by the Clifford norm trick"
        )
    inv_factor = RationalXi.inverse_norm_power(m)
    q_value = w.scale(inv_factor)
    q_dxn = -(q_value @ p_top.dxn_or_raise() @ q_value)
    minus_i = RationalXi.const(_MINUS_I)
    q_next = -(
        q_value
        @ (p_next.value @ q_value + w.d_xi_n() @ q_dxn.scale(minus_i))
    )
    return {-m: SymbolJet(q_value, q_dxn), -m - 1: SymbolJet(q_next, None)}


@lru_cache(maxsize=None)
def _inverse_symbols_cached(n: int, variant: str, dual: bool) -> dict[int, SymbolJet]:
    if variant == "D3":
        graded = triple_symbols(n, dual)
        return invert_symbol(graded[3], graded[2], 3)
    graded = operator_symbols(n, variant, dual)
    return invert_symbol(graded[1], graded[0], 1)


def inverse_symbols(n: int, variant: str, dual: bool = True) -> dict[int, SymbolJet]:
    """Orders -1 and -2 of the inverse of one first-order operator,
    or orders -3 and -4 of the inverse of the triple composition.

    Symbols are pure functions of their arguments, so results are
    memoized for the life of the process; callers receive a fresh dict
    but share the underlying jets.
    """
    return dict(_inverse_symbols_cached(n, variant, dual))
