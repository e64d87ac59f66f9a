"""Exact coefficient arithmetic: Gaussian rationals and sparse polynomials.

Everything downstream (Clifford matrices, the one-variable rational
calculus, residue integrals) runs over the two types defined here, so no
floating point ever enters the exact pipeline.

A scalar is a complex number with Fraction real and imaginary parts.  A
polynomial is a sparse map from monomials to nonzero scalars; a monomial
is a sorted tuple of (generator, exponent) pairs.  Generators are plain
tuples tagged by a short string:

    ("H",)             first normal derivative of the boundary warp factor
    ("XI", i)          i-th tangential unit covector component, 1 <= i <= n-1
    ("V", k)           k-th frame component of the drift vector field
    ("VS", k)          k-th frame component of the dual drift covector
    ("W", j, k)        frame components of the covariant derivative of v
    ("WS", j, k)       same for the dual covector
    ("R", i, j, k, l)  curvature coefficient, canonical index order
    ("S",)             scalar curvature at the base point
    ("PI",)            the circle constant, kept symbolic
    ("OMEGA",)         boundary sphere volume, kept symbolic

Generators compare lexicographically as tuples (the tag is always a
string, so the ordering is total), which gives a canonical term order
for free.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

Generator = Tuple
Monomial = Tuple[Tuple[Generator, int], ...]

_F0 = Fraction(0)
_F1 = Fraction(1)


class GaussianRational:
    """A complex number re + im*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    # -- constructors ------------------------------------------------

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        raise TypeError(f"cannot coerce {value!r} to a Gaussian rational")

    # -- predicates --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / self ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparison / hashing ----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.re == other and not self.im
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    # -- conversion --------------------------------------------------

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        if not self.im:
            return f"{self.re}"
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)
GR_MINUS_I = GaussianRational(0, -1)

Scalar = Union[int, Fraction, GaussianRational]


# ---------------------------------------------------------------------------
# generator constructors


def gen_h() -> Generator:
    return ("H",)


def gen_xi(i: int) -> Generator:
    if i < 1:
        raise ValueError(f"tangential index must be >= 1, got {i}")
    return ("XI", i)


def gen_v(k: int) -> Generator:
    return ("V", k)


def gen_vs(k: int) -> Generator:
    return ("VS", k)


def gen_w(j: int, k: int) -> Generator:
    return ("W", j, k)


def gen_ws(j: int, k: int) -> Generator:
    return ("WS", j, k)


def gen_s() -> Generator:
    return ("S",)


def gen_pi() -> Generator:
    return ("PI",)


def gen_omega() -> Generator:
    return ("OMEGA",)


def gen_riemann(i: int, j: int, k: int, l: int) -> Tuple[int, Generator]:
    """Canonicalize a curvature index tuple.

    Returns (sign, generator); sign is 0 when the entry vanishes
    identically (repeated index inside an antisymmetric pair).  The
    canonical representative has i < j and k < l.
    """
    if i == j or k == l:
        return 0, ("R", 0, 0, 0, 0)
    sign = 1
    if i > j:
        i, j, sign = j, i, -sign
    if k > l:
        k, l, sign = l, k, -sign
    return sign, ("R", i, j, k, l)


def format_generator(gen: Generator) -> str:
    tag = gen[0]
    if len(gen) == 1:
        return tag
    return f"{tag}({','.join(str(x) for x in gen[1:])})"


# ---------------------------------------------------------------------------
# polynomials


def _merge_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    # merge two sorted (generator, exponent) association tuples
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        g1, e1 = m1[i]
        g2, e2 = m2[j]
        if g1 == g2:
            out.append((g1, e1 + e2))
            i += 1
            j += 1
        elif g1 < g2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class Poly:
    """Sparse multivariate polynomial over Gaussian rationals.

    Immutable by convention: no method mutates self, and the terms dict
    must not be touched from outside.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, GaussianRational] | None = None):
        self.terms = dict(terms) if terms else {}

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(value: Scalar) -> "Poly":
        c = GaussianRational.of(value)
        if c.is_zero:
            return Poly()
        return Poly({(): c})

    @staticmethod
    def gen(generator: Generator, exp: int = 1, coeff: Scalar = 1) -> "Poly":
        c = GaussianRational.of(coeff)
        if c.is_zero:
            return Poly()
        if exp == 0:
            return Poly({(): c})
        return Poly({((generator, exp),): c})

    @staticmethod
    def of(value) -> "Poly":
        if isinstance(value, Poly):
            return value
        return Poly.const(value)

    # -- predicates --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_part(self) -> GaussianRational:
        return self.terms.get((), GR_ZERO)

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        other = Poly.of(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = out.get(m)
            if acc is None:
                out[m] = c
            else:
                s = acc + c
                if s.is_zero:
                    del out[m]
                else:
                    out[m] = s
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Poly.of(other))

    def __rsub__(self, other):
        return Poly.of(other) - self

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.of(other)
            if c.is_zero:
                return Poly()
            return Poly({m: v * c for m, v in self.terms.items()})
        other = Poly.of(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _merge_monomials(m1, m2)
                c = c1 * c2
                acc = out.get(m)
                if acc is None:
                    out[m] = c
                else:
                    s = acc + c
                    if s.is_zero:
                        del out[m]
                    else:
                        out[m] = s
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus ----------------------------------------------------

    def diff(self, generator: Generator) -> "Poly":
        """Formal partial derivative with respect to one generator."""
        out: dict = {}
        for m, c in self.terms.items():
            for idx, (g, e) in enumerate(m):
                if g == generator:
                    if e == 1:
                        nm = m[:idx] + m[idx + 1 :]
                    else:
                        nm = m[:idx] + ((g, e - 1),) + m[idx + 1 :]
                    nc = c * e
                    acc = out.get(nm)
                    out[nm] = nc if acc is None else acc + nc
                    break
        return Poly({m: c for m, c in out.items() if not c.is_zero})

    def map_coeffs(self, fn) -> "Poly":
        out: dict = {}
        for m, c in self.terms.items():
            nc = fn(c)
            if not nc.is_zero:
                out[m] = nc
        return Poly(out)

    def degree_in(self, generator: Generator) -> int:
        deg = 0
        for m in self.terms:
            for g, e in m:
                if g == generator and e > deg:
                    deg = e
        return deg

    def generators(self) -> set:
        out = set()
        for m in self.terms:
            for g, _ in m:
                out.add(g)
        return out

    # -- evaluation --------------------------------------------------

    def eval_numeric(self, assignment: Mapping[Generator, complex]) -> complex:
        """Evaluate at a numeric point; unassigned generators are an error."""
        total = 0j
        for m, c in self.terms.items():
            val = c.to_complex()
            for g, e in m:
                if g not in assignment:
                    raise KeyError(
                        f"no numeric value assigned to generator {format_generator(g)}"
                    )
                val *= assignment[g] ** e
            total += val
        return total

    # -- display -----------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"{format_generator(g)}" + (f"^{e}" if e > 1 else "") for g, e in m]
            if factors:
                parts.append(f"{c!r}*{'*'.join(factors)}")
            else:
                parts.append(f"{c!r}")
        return " + ".join(parts)


P_ZERO = Poly.zero()
P_ONE = Poly.const(1)


# ---------------------------------------------------------------------------
# the cosphere relation


_SPHERE_CACHE: dict = {}


def sphere_normal_form(poly: Poly, n: int) -> Poly:
    """Reduce modulo sum(XI(i)^2 for 1 <= i <= n-1) == 1.

    The last tangential component XI(n-1) is eliminated in even powers:
    every XI(n-1)^2 is replaced by 1 - XI(1)^2 - ... - XI(n-2)^2 until
    no exponent of XI(n-1) exceeds 1.  The result is the canonical
    representative, and the reduction is idempotent.  Results are
    memoized; the same coefficient polynomials recur across matrix
    entries thousands of times.
    """
    key = (poly, n)
    cached = _SPHERE_CACHE.get(key)
    if cached is not None:
        return cached
    reduced = _sphere_normal_form_uncached(poly, n)
    _SPHERE_CACHE[key] = reduced
    return reduced


def _sphere_normal_form_uncached(poly: Poly, n: int) -> Poly:
    last = gen_xi(n - 1)
    rest = Poly.const(1)
    for i in range(1, n - 1):
        rest = rest - Poly.gen(gen_xi(i), 2)

    current = poly
    while True:
        fixed: dict = {}
        pending = Poly.zero()
        changed = False
        for m, c in current.terms.items():
            exp = 0
            for g, e in m:
                if g == last:
                    exp = e
                    break
            if exp < 2:
                acc = fixed.get(m)
                fixed[m] = c if acc is None else acc + c
                continue
            changed = True
            stripped = tuple((g, e) for g, e in m if g != last)
            carry = exp % 2
            base = Poly({stripped: c})
            if carry:
                base = base * Poly.gen(last)
            pending = pending + base * rest ** (exp // 2)
        current = Poly({m: c for m, c in fixed.items() if not c.is_zero}) + pending
        if not changed:
            return current
