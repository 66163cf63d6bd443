"""Enumeration of the independent monomials of the normalized Hamiltonian.

Monomials are products of powers of the invariant generators. The census
splits naturally: number-only monomials (the Dunham family, diagonal in the
quantum picture) and coupling monomials carrying a power of one of the two
mixed generators. The closed-form counts are proved elsewhere (see
:mod:`polyads.counting`); here live the production enumerator, the direct
brute-force oracles, and the couple/class/multiplicity audit layer that
explains why the raw sums over-count and by exactly how much.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Literal, Optional


@dataclass(frozen=True)
class GenMonomial:
    """A product of generator powers.

    ``m_part`` is -1 or 0 for the mixed generator carried by a coupling
    monomial (None for the number-only family), ``m_exp`` its power and
    ``num_exps`` the powers of the n action generators.
    """

    m_part: Optional[int]
    m_exp: int
    num_exps: tuple[int, ...]

    def __post_init__(self):
        if self.m_part not in (None, -1, 0):
            raise ValueError("m_part must be None, -1 or 0")
        if (self.m_exp > 0) != (self.m_part is not None):
            raise ValueError("m_exp positive iff a mixed part is present")
        if self.m_exp < 0 or any(e < 0 for e in self.num_exps):
            raise ValueError("exponents are non-negative")

    def z_degree(self, p: int, q: int) -> int:
        """Total degree in the underlying z variables."""
        return (p + q) * self.m_exp + 2 * sum(self.num_exps)

    def is_coupling(self) -> bool:
        return self.m_part is not None

    def sort_key(self) -> tuple:
        # number-only first, then by mixed power; within a family graded by
        # total action degree with mode 1 leading
        rank = 0 if self.m_part is None else (1 if self.m_part == -1 else 2)
        return (rank, self.m_exp, sum(self.num_exps),
                tuple(-e for e in self.num_exps))

    def label(self) -> str:
        parts = []
        if self.m_part is not None:
            parts.append(f"s{self.m_part}" + (f"^{self.m_exp}" if self.m_exp > 1 else ""))
        for k, e in enumerate(self.num_exps, start=1):
            if e:
                parts.append(f"s{k}" + (f"^{e}" if e > 1 else ""))
        return " ".join(parts) if parts else "1"


def sort_monomials(monos: Iterable[GenMonomial]) -> list[GenMonomial]:
    return sorted(monos, key=GenMonomial.sort_key)


def monomials_to_json(monos: Iterable[GenMonomial], out: IO[str] | None = None) -> str:
    """Serialize monomials in canonical order as a JSON array."""
    payload = [
        {
            "m": None if m.m_part is None else str(m.m_part),
            "mExp": m.m_exp,
            "numExps": list(m.num_exps),
        }
        for m in sort_monomials(monos)
    ]
    text = json.dumps(payload, indent=2)
    if out is not None:
        out.write(text + "\n")
    return text


# -- enumeration -----------------------------------------------------------


def enumerate_dunham(n: int, N: int) -> set[GenMonomial]:
    """Number-only monomials up to expansion order N.

    Every exponent vector with 1 <= total <= E(N/2) appears, the degree-1
    vectors included (their coefficients are the harmonic frequencies), so
    the census size matches the Dunham coefficient count.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if N < 4:
        raise ValueError("need N >= 4")
    q0_max = N // 2
    out: set[GenMonomial] = set()

    def rec(prefix: tuple[int, ...], remaining: int):
        if len(prefix) == n:
            if sum(prefix) >= 1:
                out.add(GenMonomial(None, 0, prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e)

    rec((), q0_max)
    return out


def enumerate_coupling(n: int, N: int, p: int, q: int) -> set[GenMonomial]:
    """Deduplicated coupling monomials up to expansion order N.

    Three shapes, each for both mixed generators m in {-1, 0}:
    pure powers m^q1 with (p+q) q1 <= N; 2-monomials m^p2 s_k^q2 with
    (p+q) p2 + 2 q2 <= N; and 3-monomials m^p3 s_i^g s_j^r with i < j and
    (p+q) p3 + 2(g+r) <= N. Working with a set is what removes the
    redundancy of the order-by-order sums.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    import math
    if math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    pq = p + q
    out: set[GenMonomial] = set()
    zeros = (0,) * n
    for m in (-1, 0):
        for q1 in range(1, N // pq + 1):
            out.add(GenMonomial(m, q1, zeros))
        for p2 in range(1, (N - 2) // pq + 1):
            for q2 in range(1, (N - pq * p2) // 2 + 1):
                for k in range(n):
                    exps = zeros[:k] + (q2,) + zeros[k + 1:]
                    out.add(GenMonomial(m, p2, exps))
        for p3 in range(1, (N - 4) // pq + 1):
            for q3 in range(2, (N - pq * p3) // 2 + 1):
                for gamma in range(1, q3):
                    r3 = q3 - gamma
                    for i in range(n):
                        for j in range(i + 1, n):
                            exps = list(zeros)
                            exps[i] = gamma
                            exps[j] = r3
                            out.add(GenMonomial(m, p3, tuple(exps)))
    return out


def brute_force_delta1(N: int, p: int, q: int) -> int:
    """Count distinct (p2, q2), both >= 1, with (p+q) p2 + 2 q2 <= N."""
    pq = p + q
    total = 0
    for p2 in range(1, max(0, (N - 2) // pq) + 1):
        total += max(0, (N - pq * p2) // 2)
    return total


def brute_force_delta2(N: int, p: int, q: int) -> int:
    """Count distinct (p3, gamma, r3), all >= 1, with (p+q) p3 + 2(gamma+r3) <= N."""
    pq = p + q
    total = 0
    for p3 in range(1, max(0, (N - 4) // pq) + 1):
        q3_max = (N - pq * p3) // 2
        for q3 in range(2, q3_max + 1):
            total += q3 - 1
    return total


# -- audit layer -----------------------------------------------------------


@dataclass(frozen=True)
class CoupleC:
    """Exponent bookkeeping unit of the order-by-order sums.

    2-couples are (class index k', q2); 3-couples carry in addition the
    split gamma of q3 into the two action exponents, each split being its
    own couple in the population sums.
    """

    kind: Literal[2, 3]
    kprime: int
    qj: int
    gamma: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (2, 3):
            raise ValueError("kind is 2 or 3")
        if self.kprime < 1 or self.qj < 1:
            raise ValueError("class index and exponent are positive")
        if self.kind == 3:
            if self.gamma is None or not (1 <= self.gamma < self.qj):
                raise ValueError("3-couples need 1 <= gamma < qj")
        elif self.gamma is not None:
            raise ValueError("2-couples carry no gamma")

    def appearance_order(self, p: int, q: int) -> int:
        return self.kprime * (p + q) + 2 * self.qj


def cumulative_multiplicity(c: CoupleC, N: int, p: int, q: int) -> int:
    """How many expansion orders <= N contain couple ``c``.

    Zero before the couple first appears, then one more per order across
    its presence window, saturating at p+q once the window is passed
    (a switch-off couple).
    """
    n_app = c.appearance_order(p, q)
    if N < n_app:
        return 0
    return min(N - n_app + 1, p + q)


def iter_couples(N: int, p: int, q: int, kind: Literal[2, 3]) -> Iterator[CoupleC]:
    """All couples of the given kind appearing at some order <= N."""
    pq = p + q
    offset = 2 if kind == 2 else 4
    for kprime in range(1, max(0, (N - offset) // pq) + 1):
        qj_min = 1 if kind == 2 else 2
        qj_max = (N - pq * kprime) // 2
        for qj in range(qj_min, qj_max + 1):
            if kind == 2:
                yield CoupleC(2, kprime, qj)
            else:
                for gamma in range(1, qj):
                    yield CoupleC(3, kprime, qj, gamma)


def lambda_raw(N: int, p: int, q: int, kind: Literal[2, 3]) -> int:
    """Raw (multiplicity-weighted) monomial count of the order-by-order sums.

    Parity-dispatched closed forms; equal to the direct sums
    sum_delta E((delta-(p+q))/2) for kind 2 and
    sum_beta Q3(Q3-1)/2 for kind 3, and also to the total cumulative
    multiplicity over all couples.
    """
    pq = p + q
    if kind == 2:
        if N < pq + 2:
            return 0
        K = N - pq - 2
        if K % 2 == 0:
            val = (N - pq) ** 2
        else:
            val = (N - pq - 1) * (N - pq + 1)
        assert val % 4 == 0
        return val // 4
    if N < pq + 4:
        return 0
    K = N - pq - 4
    if K % 2 == 0:
        val = (N - pq - 2) * (N - pq - 1) * (N - pq)
    else:
        val = (N - pq - 3) * (N - pq - 1) * (N - pq + 1)
    assert val % 24 == 0
    return val // 24


def lambda_raw_direct(N: int, p: int, q: int, kind: Literal[2, 3]) -> int:
    """Same quantity as :func:`lambda_raw` by literal summation."""
    pq = p + q
    total = 0
    if kind == 2:
        for delta in range(pq + 2, N + 1):
            total += (delta - pq) // 2
    else:
        for beta in range(pq + 4, N + 1):
            q3_top = (beta - pq) // 2
            total += q3_top * (q3_top - 1) // 2
    return total


@dataclass(frozen=True)
class MultiplicityAudit:
    """Populations of the couple classes at order N.

    ``pop_class_kprime`` and ``pop_other_classes`` sum cumulative
    multiplicities over the couples still present, split by whether the
    couple sits in the top class k' = E((N-offset)/(p+q)); ``switched_off_alpha``
    sums the (maximal) multiplicities of the couples already switched off;
    ``present_without_multiplicity`` counts present couples once each.
    ``delta`` is the deduplicated monomial count recovered from them.
    """

    N: int
    p: int
    q: int
    kind: Literal[2, 3]
    lambda1_raw: int
    lambda2_raw: int
    pop_class_kprime: int
    pop_other_classes: int
    switched_off_alpha: int
    present_without_multiplicity: int
    delta: int


def audit_counting(N: int, p: int, q: int, kind: Literal[2, 3]) -> MultiplicityAudit:
    """Tally every couple's cumulative multiplicity by direct summation.

    Not a closed form: this is the independent audit the closed-form
    theorems are checked against. Orders below the first appearance
    threshold produce an all-zero audit.
    """
    pq = p + q
    offset = 2 if kind == 2 else 4
    l1 = lambda_raw(N, p, q, 2)
    l2 = lambda_raw(N, p, q, 3)
    if N < pq + offset:
        return MultiplicityAudit(N, p, q, kind, l1, l2, 0, 0, 0, 0, 0)
    kprime_top = (N - offset) // pq
    pop_top = 0
    pop_rest = 0
    alpha = 0
    present = 0
    for c in iter_couples(N, p, q, kind):
        mu = cumulative_multiplicity(c, N, p, q)
        if mu == 0:
            continue
        if N > c.appearance_order(p, q) + pq - 1:
            alpha += mu  # switch-off couple, mu saturated at p+q
        else:
            present += 1
            if c.kprime == kprime_top:
                pop_top += mu
            else:
                pop_rest += mu
    assert alpha % pq == 0
    return MultiplicityAudit(
        N=N, p=p, q=q, kind=kind,
        lambda1_raw=l1, lambda2_raw=l2,
        pop_class_kprime=pop_top,
        pop_other_classes=pop_rest,
        switched_off_alpha=alpha,
        present_without_multiplicity=present,
        delta=alpha // pq + present,
    )
