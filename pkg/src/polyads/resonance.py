"""Resonance specification, invariant generators and the reduced phase space.

The p:q resonance between oscillators 1 and 2 singles out n+2 monomials that
generate the invariants of the harmonic flow: two mixed monomials exchanging
quanta between the resonant pair and the n action monomials z_k z_k*. This
module builds them, checks the bracket algebra and the defining relation that
ties them together, and samples the reduced-phase-space curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .zpoly import (
    CR_MINUS_I,
    ComplexRational,
    ZPolynomial,
    poisson_bracket,
)

RATIO_RTOL = 1e-9


@dataclass(frozen=True)
class ResonanceSpec:
    """Problem sizes and frequencies for one p:q resonant system.

    ``omega`` is optional: symbolic work only needs the ratio, which is fixed
    by (p, q). When numeric frequencies are supplied they must satisfy the
    resonance ratio and be pairwise distinct (the resonant pair itself may
    coincide only in the 1:1 case, where the ratio forces equality).
    """

    n: int
    p: int
    q: int
    omega: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2 oscillators")
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be positive")
        if self.q > self.p:
            raise ValueError("expected p >= q")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError("p and q must be coprime")
        if self.omega is not None:
            om = tuple(float(w) for w in self.omega)
            object.__setattr__(self, "omega", om)
            if len(om) != self.n:
                raise ValueError("omega length must equal n")
            if any(w <= 0 for w in om):
                raise ValueError("frequencies must be positive")
            ratio = om[1] / om[0]
            target = self.p / self.q
            if abs(ratio - target) > RATIO_RTOL * target:
                raise ValueError(
                    f"omega2/omega1 = {ratio} does not match {self.p}:{self.q}")
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    if (i, j) == (0, 1) and self.p == self.q == 1:
                        continue  # 1:1 forces equality of the resonant pair
                    if om[i] == om[j]:
                        raise ValueError(
                            f"frequencies {i + 1} and {j + 1} coincide")

    def exact_omegas(self) -> tuple[Fraction, ...]:
        """Pairwise-distinct exact frequencies with the right ratio.

        w1 = q and w2 = p satisfy w2/w1 = p/q; the remaining modes get
        p+q+k-2, which cannot collide with w1, w2 or each other.
        """
        rest = (Fraction(self.p + self.q + k - 2) for k in range(3, self.n + 1))
        return (Fraction(self.q), Fraction(self.p), *rest)

    def float_omegas(self) -> tuple[float, ...]:
        if self.omega is not None:
            return self.omega
        return tuple(float(w) for w in self.exact_omegas())


@dataclass(frozen=True)
class GeneratorSet:
    """The n+2 invariant generators, keyed by id in {-1, 0, 1..n}."""

    n: int
    p: int
    q: int
    sigma: dict[int, ZPolynomial]

    def ids(self) -> list[int]:
        return [-1, 0] + list(range(1, self.n + 1))

    def __getitem__(self, k: int) -> ZPolynomial:
        return self.sigma[k]


def generators(spec: ResonanceSpec) -> GeneratorSet:
    """Build the generator monomials for ``spec``.

    id -1 is z1*^p z2^q, id 0 is z1^p z2*^q, and id k >= 1 is z_k z_k*.
    Every one of them lies in the kernel of the harmonic adjoint.
    """
    n, p, q = spec.n, spec.p, spec.q
    zeros = [0] * n
    sig: dict[int, ZPolynomial] = {}

    a = list(zeros); b = list(zeros)
    b[0] = p; a[1] = q
    sig[-1] = ZPolynomial.monomial(n, a, b)

    a = list(zeros); b = list(zeros)
    a[0] = p; b[1] = q
    sig[0] = ZPolynomial.monomial(n, a, b)

    for k in range(1, n + 1):
        e = list(zeros)
        e[k - 1] = 1
        sig[k] = ZPolynomial.monomial(n, e, e)
    return GeneratorSet(n=n, p=p, q=q, sigma=sig)


def h0_polynomial(spec: ResonanceSpec) -> ZPolynomial:
    """The quadratic part -i sum_k w_k z_k z_k* with exact frequencies."""
    gens = generators(spec)
    acc = ZPolynomial.zero(spec.n)
    for k, w in enumerate(spec.exact_omegas(), start=1):
        acc = acc + gens[k] * ComplexRational.of(w)
    return acc * CR_MINUS_I


def ad_h0(f: ZPolynomial, spec: ResonanceSpec) -> ZPolynomial:
    """Bracket of the quadratic part with ``f``; zero iff f is invariant."""
    if f.n != spec.n:
        raise ValueError("polynomial dimension does not match spec")
    return poisson_bracket(h0_polynomial(spec), f)


def flow_h0(z0: Sequence[complex], t: float, spec: ResonanceSpec) -> tuple[complex, ...]:
    """Harmonic flow: each component picks up the phase e^{-i w_k t}."""
    if len(z0) != spec.n:
        raise ValueError("initial point does not match spec")
    omegas = spec.float_omegas()
    return tuple(complex(z) * complex(math.cos(w * t), -math.sin(w * t))
                 for z, w in zip(z0, omegas))


# -- bracket table ---------------------------------------------------------


@dataclass(frozen=True)
class BracketCheck:
    """One entry of the generator bracket table."""

    pair: tuple[int, int]
    expected: ZPolynomial
    computed: ZPolynomial

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def expected_bracket(gens: GeneratorSet, j: int, k: int) -> ZPolynomial:
    """Closed form for {sigma_j, sigma_k}, zero for all unlisted pairs."""
    p, q, n = gens.p, gens.q, gens.n
    i_ = ComplexRational.of(0, 1)
    table: dict[tuple[int, int], ZPolynomial] = {
        (-1, 1): gens[-1] * ComplexRational.of(0, p),
        (-1, 2): gens[-1] * ComplexRational.of(0, -q),
        (0, 1): gens[0] * ComplexRational.of(0, -p),
        (0, 2): gens[0] * ComplexRational.of(0, q),
        (-1, 0): (gens[1] ** (p - 1)) * (gens[2] ** (q - 1))
                 * (gens[2] * (p * p) - gens[1] * (q * q)) * i_,
    }
    if (j, k) in table:
        return table[(j, k)]
    if (k, j) in table:
        return -table[(k, j)]
    return ZPolynomial.zero(n)


def verify_bracket_table(spec: ResonanceSpec) -> list[BracketCheck]:
    """Compute every generator pair bracket and compare to the closed forms."""
    gens = generators(spec)
    ids = gens.ids()
    out = []
    for idx, j in enumerate(ids):
        for k in ids[idx + 1:]:
            out.append(BracketCheck(
                pair=(j, k),
                expected=expected_bracket(gens, j, k),
                computed=poisson_bracket(gens[j], gens[k]),
            ))
    return out


def syzygy_residual(spec: ResonanceSpec) -> ZPolynomial:
    """Residual of the relation tying the four resonant generators.

    ((s0 + s-1)/2)^2 + ((s0 - s-1)/(2i))^2 - s1^p s2^q, which expands to
    s0 s-1 - s1^p s2^q and must vanish identically.
    """
    gens = generators(spec)
    half = ComplexRational.of(Fraction(1, 2))
    minus_half_i = ComplexRational.of(0, Fraction(-1, 2))  # 1/(2i)
    s_plus = (gens[0] + gens[-1]) * half
    s_minus = (gens[0] - gens[-1]) * minus_half_i
    return s_plus * s_plus + s_minus * s_minus - (gens[1] ** spec.p) * (gens[2] ** spec.q)


# -- reduced phase space ---------------------------------------------------


@dataclass(frozen=True)
class PhaseCurvePoint:
    """A point of the reduced phase space cross-section sigma_-1' = 0."""

    sigma1: float
    sigma0p: float
    sigmam1p: float


def _curve_rhs(spec: ResonanceSpec, h0: float, fixed_sigma: Sequence[float],
               sigma1: float) -> float:
    omegas = spec.float_omegas()
    w2 = omegas[1]
    rest = h0 / w2 - (spec.q / spec.p) * sigma1
    for w, s in zip(omegas[2:], fixed_sigma):
        rest -= (w / w2) * s
    return sigma1 ** spec.p * rest ** spec.q


def phase_curve_residual(spec: ResonanceSpec, h0: float,
                         fixed_sigma: Sequence[float],
                         point: PhaseCurvePoint) -> float:
    """Defect of the reduced-phase-space relation at ``point``."""
    rhs = _curve_rhs(spec, h0, fixed_sigma, point.sigma1)
    return point.sigma0p ** 2 + point.sigmam1p ** 2 - rhs


def phase_curve(spec: ResonanceSpec, h0: float,
                fixed_sigma: Sequence[float] = (),
                samples: int = 101) -> list[PhaseCurvePoint]:
    """Sample the sigma_-1' = 0 cross-section of the reduced phase space.

    sigma1 runs over its admissible interval [0, (p/q)(h0/w2 - rest)] and
    both branches sigma0' = +/- sqrt(rhs) are emitted per sample. A length
    zero interval collapses to the single point at the origin.

    Raises
    ------
    ValueError
        If h0 is too small for a nonempty admissible interval, or fewer
        than 2 samples are requested.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if len(fixed_sigma) != max(spec.n - 2, 0):
        raise ValueError("fixed_sigma must cover modes 3..n")
    if any(s < 0 for s in fixed_sigma):
        raise ValueError("action values are non-negative")
    omegas = spec.float_omegas()
    w2 = omegas[1]
    budget = h0 / w2 - sum((w / w2) * s for w, s in zip(omegas[2:], fixed_sigma))
    if budget < 0:
        raise ValueError("h0 below the minimum for the requested actions")
    top = (spec.p / spec.q) * budget
    points: list[PhaseCurvePoint] = []
    if top == 0.0:
        return [PhaseCurvePoint(0.0, 0.0, 0.0)]
    for idx in range(samples):
        s1 = top * idx / (samples - 1)
        rhs = _curve_rhs(spec, h0, fixed_sigma, s1)
        root = math.sqrt(max(rhs, 0.0))
        points.append(PhaseCurvePoint(s1, root, 0.0))
        points.append(PhaseCurvePoint(s1, -root, 0.0))
    return points


def write_phase_curve_csv(out: TextIO, spec: ResonanceSpec, h0: float,
                          fixed_sigma: Sequence[float] = (),
                          samples: int = 101) -> int:
    """Write the sampled curve as CSV; returns the number of rows."""
    points = phase_curve(spec, h0, fixed_sigma, samples)
    out.write("sigma1,sigma0p_plus,sigma0p_minus,residual\n")
    rows = 0
    for i in range(0, len(points), 2):
        plus = points[i]
        minus = points[i + 1] if i + 1 < len(points) else plus
        residual = phase_curve_residual(spec, h0, fixed_sigma, plus)
        out.write(f"{plus.sigma1:.17g},{plus.sigma0p:.17g},"
                  f"{minus.sigma0p:.17g},{residual:.17g}\n")
        rows += 1
    return rows
