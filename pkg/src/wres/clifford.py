"""Clifford and wedge operators on the exterior algebra fiber.

The fiber over a point of an n-manifold is the full exterior algebra of
an n-dimensional inner-product space, dimension 2**n.  Basis elements
are indexed by subsets of {1..n} encoded as bitmasks: bit (j-1) set
means the j-th frame covector is present in the wedge word.

Two anticommuting Clifford actions live here, the difference and the sum
of exterior and interior multiplication.  All matrices are sparse maps
(row, col) -> Poly, which keeps generator words at one entry per row.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import (
    Poly,
    Scalar,
    gen_h,
    gen_v,
    gen_vs,
    gen_xi,
    sphere_normal_form,
)


class CliffordOp:
    """Sparse 2**n x 2**n matrix over Poly."""

    __slots__ = ("n", "ent")

    def __init__(self, n: int, ent: dict | None = None):
        self.n = n
        self.ent = ent or {}

    @property
    def dim(self) -> int:
        return 1 << self.n

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(n: int) -> "CliffordOp":
        return CliffordOp(n)

    @staticmethod
    def identity(n: int, coeff: Scalar = 1) -> "CliffordOp":
        c = Poly.const(coeff)
        if c.is_zero:
            return CliffordOp(n)
        return CliffordOp(n, {(s, s): c for s in range(1 << n)})

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "CliffordOp") -> "CliffordOp":
        self._check(other)
        out = dict(self.ent)
        for pos, p in other.ent.items():
            acc = out.get(pos)
            s = p if acc is None else acc + p
            if s.is_zero:
                out.pop(pos, None)
            else:
                out[pos] = s
        return CliffordOp(self.n, out)

    def __sub__(self, other: "CliffordOp") -> "CliffordOp":
        return self + (-other)

    def __neg__(self) -> "CliffordOp":
        return CliffordOp(self.n, {pos: -p for pos, p in self.ent.items()})

    def scale(self, factor) -> "CliffordOp":
        f = Poly.of(factor)
        if f.is_zero:
            return CliffordOp(self.n)
        out = {}
        for pos, p in self.ent.items():
            q = p * f
            if not q.is_zero:
                out[pos] = q
        return CliffordOp(self.n, out)

    def __matmul__(self, other: "CliffordOp") -> "CliffordOp":
        self._check(other)
        rows: dict = {}
        for (r, c), p in other.ent.items():
            rows.setdefault(r, []).append((c, p))
        out: dict = {}
        for (r, k), p in self.ent.items():
            for c, q in rows.get(k, ()):
                pos = (r, c)
                prod = p * q
                acc = out.get(pos)
                s = prod if acc is None else acc + prod
                if s.is_zero:
                    out.pop(pos, None)
                else:
                    out[pos] = s
        return CliffordOp(self.n, out)

    def _check(self, other: "CliffordOp") -> None:
        if self.n != other.n:
            raise ValueError(f"fiber dimension mismatch: {self.n} vs {other.n}")

    # -- queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.ent

    def __eq__(self, other):
        if not isinstance(other, CliffordOp):
            return NotImplemented
        return self.n == other.n and self.ent == other.ent

    def trace(self) -> Poly:
        total = Poly.zero()
        for (r, c), p in self.ent.items():
            if r == c:
                total = total + p
        return total

    def trace_on_sphere(self) -> Poly:
        """Trace with the cosphere relation applied to the coefficients."""
        return sphere_normal_form(self.trace(), self.n)

    def entry(self, r: int, c: int) -> Poly:
        return self.ent.get((r, c), Poly.zero())

    def __repr__(self):
        return f"CliffordOp(n={self.n}, nnz={len(self.ent)})"


# ---------------------------------------------------------------------------
# generator matrices


def build_generator(n: int, j: int, kind: str) -> CliffordOp:
    """One frame generator acting on the fiber.

    kind is one of "exterior", "interior", "clifford", "clifford_bar".
    Exterior multiplication inserts covector j with the sign
    (-1)**(number of indices below j already present); interior is its
    adjoint.  The two Clifford actions are exterior -/+ interior.
    """
    if not 1 <= j <= n:
        raise ValueError(f"frame index {j} out of range 1..{n}")
    if kind == "clifford":
        return build_generator(n, j, "exterior") - build_generator(n, j, "interior")
    if kind == "clifford_bar":
        return build_generator(n, j, "exterior") + build_generator(n, j, "interior")
    if kind not in ("exterior", "interior"):
        raise ValueError(f"unknown generator kind {kind!r}")

    bit = 1 << (j - 1)
    below = bit - 1
    one = Poly.const(1)
    minus_one = Poly.const(-1)
    ent = {}
    for s in range(1 << n):
        if s & bit:
            continue
        sign = one if bin(s & below).count("1") % 2 == 0 else minus_one
        if kind == "exterior":
            ent[(s | bit, s)] = sign
        else:
            ent[(s, s | bit)] = sign
    return CliffordOp(n, ent)


_KIND_BY_ACTION = {
    "clifford_covector": "clifford",
    "clifford_bar": "clifford_bar",
    "interior_vector": "interior",
    "exterior_covector": "exterior",
}


def action_of(n: int, components: Sequence, kind: str) -> CliffordOp:
    """Contract frame components with a generator family.

    components has length n, or n-1 for purely tangential data (the
    normal slot is then zero).  Entries are Poly or plain scalars.
    """
    base = _KIND_BY_ACTION.get(kind)
    if base is None:
        raise ValueError(f"unknown action kind {kind!r}")
    comps = list(components)
    if len(comps) == n - 1:
        comps.append(0)
    if len(comps) != n:
        raise ValueError(f"expected {n} or {n - 1} components, got {len(comps)}")
    out = CliffordOp.zero(n)
    for j, comp in enumerate(comps, start=1):
        p = Poly.of(comp)
        if p.is_zero:
            continue
        out = out + build_generator(n, j, base).scale(p)
    return out


# ---------------------------------------------------------------------------
# the operators the symbol calculus needs


def tangential_clifford(n: int) -> CliffordOp:
    """Clifford action of the unit tangential covector."""
    return action_of(n, [Poly.gen(gen_xi(i)) for i in range(1, n)], "clifford_covector")


def tangential_clifford_bar(n: int) -> CliffordOp:
    return action_of(n, [Poly.gen(gen_xi(i)) for i in range(1, n)], "clifford_bar")


def normal_clifford(n: int) -> CliffordOp:
    """Clifford action of the unit inward conormal."""
    return build_generator(n, n, "clifford")


def normal_clifford_bar(n: int) -> CliffordOp:
    return build_generator(n, n, "clifford_bar")


def drift_interior(n: int) -> CliffordOp:
    """Interior product with the drift vector field, frame components V(k)."""
    return action_of(n, [Poly.gen(gen_v(k)) for k in range(1, n + 1)], "interior_vector")


def drift_exterior(n: int, dual: bool = True) -> CliffordOp:
    """Exterior product with the dual drift covector.

    Under the dual pairing (the default) its frame components equal those
    of the drift vector, so the V generators are reused; otherwise the
    independent VS generators appear.
    """
    mk = gen_v if dual else gen_vs
    return action_of(n, [Poly.gen(mk(k)) for k in range(1, n + 1)], "exterior_covector")


def build_connection_ops(n: int) -> tuple[CliffordOp, CliffordOp]:
    """The two zero-order connection operators at the base point.

    Both come from contracting the connection matrix against the frame:
    the only nonvanishing entries pair a tangential index with the
    normal one and are +/- half the warp derivative H.  The first
    operator carries the bar action quadratically, the second the plain
    action; both carry one plain Clifford factor.
    """
    h = Poly.gen(gen_h())
    eighth = Poly.const(Fraction(1, 8)) * h
    a_op = CliffordOp.zero(n)
    b_op = CliffordOp.zero(n)
    for i in range(1, n):
        c_i = build_generator(n, i, "clifford")
        # connection matrix at the base point: the (n,i) slot holds +H/2
        # and the (i,n) slot -H/2, everything else vanishes
        cb = (
            build_generator(n, n, "clifford_bar") @ build_generator(n, i, "clifford_bar")
            - build_generator(n, i, "clifford_bar") @ build_generator(n, n, "clifford_bar")
        )
        cc = (
            build_generator(n, n, "clifford") @ build_generator(n, i, "clifford")
            - build_generator(n, i, "clifford") @ build_generator(n, n, "clifford")
        )
        a_op = a_op + (c_i @ cb).scale(eighth)
        b_op = b_op - (c_i @ cc).scale(eighth)
    return a_op, b_op
