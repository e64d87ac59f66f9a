"""Floating-point oracle for the exact boundary calculus.

Everything here is rebuilt numerically, on purpose: fiber matrices are
dense complex arrays, inverses come from LAPACK instead of the Clifford
norm trick, the half-space projection is a contour integral around the
upper pole instead of symbolic partial fractions, and the normal
covariable integral is adaptive quadrature with a substitution-based
tail instead of the residue theorem.  Agreement with the exact engine
is then meaningful evidence; a shared bug would have to live in the
problem statement itself.

The oracle works per tangential direction: a scenario draws one unit
direction on the boundary cosphere together with numeric values for the
warp derivative and the drift components, and the case integrals are
compared against the exact trace integrals evaluated at that direction.
Sphere integration is validated separately by Monte-Carlo moments, so
quadrature-level agreement is not diluted by sampling noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial

import numpy as np
from scipy.integrate import quad

from .boundary import CaseReport, CaseTuple
from .exact import gen_h, gen_omega, gen_pi, gen_v, gen_vs, gen_xi

_POLE_ORDER = 10
_CONTOUR_NODES = 64
_CONTOUR_RADIUS = 0.5


def omega_area(d: int) -> float:
    """Surface volume of the unit sphere in d ambient coordinates."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


@dataclass
class NumericScenario:
    """One reproducible random evaluation point for the oracle.

    The omega field selects which sphere the symbolic volume refers to
    when a numeric value is required: the cosphere the directions are
    actually drawn from, or the ambient unit sphere one dimension up.
    Exact results carry the volume symbolically, so concordance must
    hold under either reading; exposing both keeps the oracle honest
    about that convention without endorsing one.
    """

    n: int
    seed: int
    dual: bool
    direction: tuple
    h: float
    v: tuple
    vs: tuple
    t_bound: float = 40.0
    omega: str = "cosphere"

    @staticmethod
    def draw(
        n: int, seed: int, dual: bool = True, omega: str = "cosphere"
    ) -> "NumericScenario":
        rng = np.random.default_rng(seed)
        raw = rng.normal(size=n - 1)
        direction = tuple(raw / np.linalg.norm(raw))
        h = float(rng.uniform(-2.0, 2.0))
        v = tuple(float(x) for x in rng.uniform(-1.0, 1.0, size=n))
        if dual:
            vs = v
        else:
            vs = tuple(float(x) for x in rng.uniform(-1.0, 1.0, size=n))
        return NumericScenario(n, seed, dual, direction, h, v, vs, omega=omega)

    def omega_value(self) -> float:
        """Numeric sphere volume under the chosen interpretation."""
        if self.omega == "cosphere":
            return omega_area(self.n - 1)
        if self.omega == "ambient":
            return omega_area(self.n)
        raise ValueError(f"unknown omega interpretation {self.omega!r}")

    def assignment(self) -> dict:
        """Numeric values for every boundary-relevant generator."""
        out = {
            gen_h(): self.h,
            gen_pi(): math.pi,
            gen_omega(): self.omega_value(),
        }
        for i, x in enumerate(self.direction, start=1):
            out[gen_xi(i)] = x
        for k, x in enumerate(self.v, start=1):
            out[gen_v(k)] = x
        for k, x in enumerate(self.vs, start=1):
            out[gen_vs(k)] = x
        return out


# ---------------------------------------------------------------------------
# numeric fiber operators


def _exterior(n: int, j: int) -> np.ndarray:
    dim = 1 << n
    bit = 1 << (j - 1)
    below = bit - 1
    out = np.zeros((dim, dim), dtype=complex)
    for s in range(dim):
        if s & bit:
            continue
        sign = -1.0 if bin(s & below).count("1") % 2 else 1.0
        out[s | bit, s] = sign
    return out


class NumericFiber:
    """Dense numeric symbols of the operator family at one scenario."""

    def __init__(self, scenario: NumericScenario):
        self.scenario = scenario
        n = scenario.n
        self.n = n
        self.dim = 1 << n
        ext = [_exterior(n, j) for j in range(1, n + 1)]
        self.cliff = [e - e.T for e in ext]
        self.cliff_bar = [e + e.T for e in ext]
        self.c_tan = sum(
            x * c for x, c in zip(scenario.direction, self.cliff[: n - 1])
        )
        self.c_nor = self.cliff[n - 1]
        h = scenario.h
        # connection operators from the nonzero connection-matrix slots
        a_op = np.zeros((self.dim, self.dim), dtype=complex)
        b_op = np.zeros((self.dim, self.dim), dtype=complex)
        for i in range(n - 1):
            ci = self.cliff[i]
            cb_i, cb_n = self.cliff_bar[i], self.cliff_bar[n - 1]
            c_i, c_n = self.cliff[i], self.cliff[n - 1]
            a_op += (h / 8.0) * ci @ (cb_n @ cb_i - cb_i @ cb_n)
            b_op -= (h / 8.0) * ci @ (c_n @ c_i - c_i @ c_n)
        self.a_op = a_op
        self.b_op = b_op
        self.drift_int = sum(
            x * e.T for x, e in zip(scenario.v, ext)
        )
        dual_comps = scenario.v if scenario.dual else scenario.vs
        self.drift_ext = sum(x * e for x, e in zip(dual_comps, ext))

    # -- first-order operators ----------------------------------------

    def p1(self, z: complex) -> np.ndarray:
        return 1j * (self.c_tan + z * self.c_nor)

    def p1_dxn(self, z: complex) -> np.ndarray:
        return 1j * (self.scenario.h / 2.0) * self.c_tan

    def p1_dxi(self, z: complex) -> np.ndarray:
        return 1j * self.c_nor

    def p0(self, variant: str) -> np.ndarray:
        drift = self.drift_int if variant == "Dv" else self.drift_ext
        return self.a_op + self.b_op + drift

    # -- inverse symbols ----------------------------------------------

    def first_inverse(self, variant: str) -> dict:
        """Order -1 value, its normal derivative, and the order -2 value."""
        p0 = self.p0(variant)

        def q1(z):
            return np.linalg.inv(self.p1(z))

        def q1_dxn(z):
            q = q1(z)
            return -q @ self.p1_dxn(z) @ q

        def q2(z):
            q = q1(z)
            return -q @ (p0 @ q - 1j * self.p1_dxi(z) @ q1_dxn(z))

        return {"value": {-1: q1, -2: q2}, "dxn": {-1: q1_dxn}}

    def triple_inverse(self) -> dict:
        """Orders -3 and -4 of the inverse of adjoint, operator, adjoint."""
        p0_l = self.p0("Dv")
        p0_s = self.p0("DvStar")

        def p1(z):
            return self.p1(z)

        def e2(z):
            return p1(z) @ p1(z)

        def e2_dxn(z):
            d = self.p1_dxn(z)
            return d @ p1(z) + p1(z) @ d

        def e2_dxi(z):
            d = self.p1_dxi(z)
            return d @ p1(z) + p1(z) @ d

        def e1(z):
            return (
                p1(z) @ p0_l
                + p0_s @ p1(z)
                - 1j * self.p1_dxi(z) @ self.p1_dxn(z)
            )

        def p3(z):
            return e2(z) @ p1(z)

        def p3_dxn(z):
            return e2_dxn(z) @ p1(z) + e2(z) @ self.p1_dxn(z)

        def p3_dxi(z):
            return e2_dxi(z) @ p1(z) + e2(z) @ self.p1_dxi(z)

        def p2(z):
            return (
                e2(z) @ p0_s
                + e1(z) @ p1(z)
                - 1j * e2_dxi(z) @ self.p1_dxn(z)
            )

        def q3(z):
            return np.linalg.inv(p3(z))

        def q3_dxn(z):
            q = q3(z)
            return -q @ p3_dxn(z) @ q

        def q4(z):
            q = q3(z)
            return -q @ (p2(z) @ q - 1j * p3_dxi(z) @ q3_dxn(z))

        return {"value": {-3: q3, -4: q4}, "dxn": {-3: q3_dxn}}

    def inverse_family(self, op: str) -> dict:
        if op in ("Dv", "DvStar"):
            return self.first_inverse(op)
        if op == "D3":
            return self.triple_inverse()
        raise ValueError(f"unknown operator selector {op!r}")


# ---------------------------------------------------------------------------
# contour-based pole expansions


def _pole_coefficients(f, center: complex, order: int) -> list:
    """Principal-part coefficients of f at center by contour trapezoid.

    Returns [A_1 .. A_order] with f ~ sum A_k / (z - center)**k near the
    center; spectral accuracy in the node count for rational f.
    """
    m = _CONTOUR_NODES
    r = _CONTOUR_RADIUS
    theta = 2.0 * math.pi * np.arange(m) / m
    ring = r * np.exp(1j * theta)
    samples = [f(center + w) for w in ring]
    coeffs = []
    for k in range(1, order + 1):
        acc = sum(s * (w**k) for s, w in zip(samples, ring))
        coeffs.append(acc / m)
    return coeffs


class PoleExpansion:
    """f as principal parts at +i and -i; proper rational in between."""

    def __init__(self, f, order: int = _POLE_ORDER):
        self.plus = _pole_coefficients(f, 1j, order)
        self.minus = _pole_coefficients(f, -1j, order)

    def _eval_side(self, coeffs, center, z, deriv):
        total = None
        for k, a_k in enumerate(coeffs, start=1):
            factor = 1.0
            for u in range(deriv):
                factor *= -(k + u)
            term = a_k * (factor / (z - center) ** (k + deriv))
            total = term if total is None else total + term
        return total

    def eval(self, z: complex, deriv: int = 0):
        return self._eval_side(self.plus, 1j, z, deriv) + self._eval_side(
            self.minus, -1j, z, deriv
        )

    def eval_plus(self, z: complex, deriv: int = 0):
        """Only the upper principal part: the half-space projection."""
        return self._eval_side(self.plus, 1j, z, deriv)


# ---------------------------------------------------------------------------
# the line integral


def line_quad(g, t_bound: float) -> complex:
    """Integral of g over the real line for integrands with quadratic decay.

    The central interval is adaptive quadrature; each tail is mapped to
    (0, 1/T] by inversion and integrated the same way, so the result is
    a genuine estimate of the full improper integral.
    """

    def part(fn, a, b):
        return quad(fn, a, b, limit=200, epsabs=1e-11, epsrel=1e-11)[0]

    total = part(lambda x: g(x).real, -t_bound, t_bound) + 1j * part(
        lambda x: g(x).imag, -t_bound, t_bound
    )
    upper = 1.0 / t_bound
    for sign in (1.0, -1.0):

        def tail(t, s=sign):
            return g(s / t) / (t * t)

        total += part(lambda t: tail(t).real, 0.0, upper) + 1j * part(
            lambda t: tail(t).imag, 0.0, upper
        )
    return total


# ---------------------------------------------------------------------------
# case evaluation


def _case_coefficient(case: CaseTuple) -> complex:
    return (-1j) ** (case.alpha + case.j + case.k + 1) / (
        factorial(case.alpha) * factorial(case.j + case.k + 1)
    )


def numeric_line_integral(
    case: CaseTuple, scenario: NumericScenario, left_op: str, right_op: str
) -> complex:
    """Quadrature value of one case integrand at the scenario direction.

    This is the oracle's counterpart of the exact trace integral before
    sphere integration: coefficient times the normal-covariable integral
    of the fiber trace.
    """
    if case.alpha > 0:
        return 0.0 + 0.0j
    if case.j > 1 or case.k > 1:
        raise ValueError(
            "needs higher normal jets than tracked"
        )
    fiber = NumericFiber(scenario)
    left = fiber.inverse_family(left_op)
    right = fiber.inverse_family(right_op)
    left_fn = left["value"][case.r] if case.j == 0 else left["dxn"][case.r]
    right_fn = right["value"][case.l] if case.k == 0 else right["dxn"][case.l]
    left_poles = PoleExpansion(left_fn)
    right_poles = PoleExpansion(right_fn)
    coeff = _case_coefficient(case)

    def integrand(x: float) -> complex:
        lmat = left_poles.eval_plus(x, deriv=case.k)
        rmat = right_poles.eval(x, deriv=case.j + 1)
        return coeff * np.trace(lmat @ rmat)

    return line_quad(integrand, scenario.t_bound)


def numeric_evaluate_case(
    case: CaseTuple,
    scenario: NumericScenario,
    left_op: str,
    right_op: str,
    directions: int = 32,
) -> tuple[complex, float]:
    """Full numeric case value: line quadrature averaged over sampled
    directions, scaled by the numeric sphere volume.

    Returns the estimate and a one-sigma sampling error bound.  The
    quadrature error per direction is negligible against the sampling
    term.
    """
    if case.alpha > 0:
        return 0.0 + 0.0j, 0.0
    d = scenario.n - 1
    rng = np.random.default_rng(scenario.seed)
    values = []
    for _ in range(directions):
        raw = rng.normal(size=d)
        sampled = NumericScenario(
            n=scenario.n,
            seed=scenario.seed,
            dual=scenario.dual,
            direction=tuple(raw / np.linalg.norm(raw)),
            h=scenario.h,
            v=scenario.v,
            vs=scenario.vs,
            t_bound=scenario.t_bound,
            omega=scenario.omega,
        )
        values.append(
            numeric_line_integral(case, sampled, left_op, right_op)
        )
    area = scenario.omega_value()
    arr = np.array(values)
    estimate = area * arr.mean()
    spread = area * arr.std() / math.sqrt(len(arr))
    return complex(estimate), float(abs(spread))


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class CheckRow:
    """One exact-vs-oracle comparison."""

    case: CaseTuple
    exact: complex
    numeric: complex
    rel_err: float
    passed: bool
    spurious_imag: bool


def _relative_error(exact: complex, numeric: complex) -> float:
    scale = max(abs(exact), abs(numeric))
    if scale < 1e-8:
        return abs(exact - numeric)
    return abs(exact - numeric) / scale


def crosscheck(
    reports: list[CaseReport],
    scenario: NumericScenario,
    left_op: str,
    right_op: str,
    tolerance: float = 1e-6,
) -> list[CheckRow]:
    """Per-case oracle verdicts at one scenario direction.

    The exact side is the trace integral evaluated at the scenario's
    numeric assignment; the numeric side recomputes the same quantity by
    quadrature.  A case passes when the relative error is within
    tolerance; an exactly-real exact value with visible numeric
    imaginary part is flagged separately.
    """
    assignment = scenario.assignment()
    rows = []
    for report in reports:
        exact = report.trace_integral.eval_numeric(assignment)
        numeric = numeric_line_integral(
            report.tuple, scenario, left_op, right_op
        )
        rel = _relative_error(exact, numeric)
        exact_is_real = all(
            c.im == 0 for c in report.trace_integral.terms.values()
        )
        spurious = exact_is_real and abs(numeric.imag) > 1e-8
        rows.append(
            CheckRow(
                case=report.tuple,
                exact=exact,
                numeric=numeric,
                rel_err=rel,
                passed=rel <= tolerance and not spurious,
                spurious_imag=spurious,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# sphere sampling


def sphere_moment_mc(
    d: int, exponents: tuple, samples: int, seed: int
) -> float:
    """Monte-Carlo estimate of a monomial moment over the unit sphere.

    exponents[i] is the power of the (i+1)-th coordinate; the estimate
    is normalized by the numeric sphere area, matching the exact
    moment-formula convention.
    """
    rng = np.random.default_rng(seed)
    total = 0.0
    count = 0
    chunk = 1 << 17
    while count < samples:
        take = min(chunk, samples - count)
        pts = rng.normal(size=(take, d))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        vals = np.ones(take)
        for i, e in enumerate(exponents):
            if e:
                vals = vals * pts[:, i] ** e
        total += float(vals.sum())
        count += take
    return omega_area(d) * total / samples
