"""Fock-space assembly and diagonalization of the normalized Hamiltonian.

Number-operator strings act diagonally (occupation to the power, by the
normal-form convention adopted for the quantum transcription), coupling
terms shift quanta between the resonant pair, and everything is blocked by
the conserved polyad labels. Matrices are assembled symmetrically: per term
only the raising branch is evaluated, with its number factors taken on the
source ket, and the amplitude is written at [target, source] and
[source, target]. Coefficients are real so this is exactly the Hermitian
operator pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Literal, Optional, Sequence, TextIO

import numpy as np

from .monomials import GenMonomial, enumerate_coupling, enumerate_dunham, sort_monomials
from .resonance import ResonanceSpec

FockState = tuple[int, ...]

TermKind = Literal["dunham", "coupling", "extra"]


@dataclass(frozen=True)
class TermSpec:
    """One coefficient slot of the Hamiltonian.

    kind "dunham": diagonal product of number operators N_k^{r_k}.
    kind "coupling": the self-adjoint pair built on the m-th power of the
    resonance ladder, times an optional number string (num_exps).
    kind "extra": an explicit ladder pair given by raise/lower exponent
    vectors (no number string).
    """

    kind: TermKind
    num_exps: tuple[int, ...] = ()
    m_exp: int = 0
    raise_exps: Optional[tuple[int, ...]] = None
    lower_exps: Optional[tuple[int, ...]] = None
    coeff: float = 0.0
    coeff_text: Optional[str] = None

    def __post_init__(self):
        if self.kind == "dunham":
            if self.m_exp or self.raise_exps or self.lower_exps:
                raise ValueError("dunham terms are pure number strings")
            if sum(self.num_exps) < 1:
                raise ValueError("dunham term needs at least one factor")
        elif self.kind == "coupling":
            if self.m_exp < 1:
                raise ValueError("coupling term needs a positive ladder power")
            if self.raise_exps or self.lower_exps:
                raise ValueError("coupling ladder is implied by the resonance")
        elif self.kind == "extra":
            if self.raise_exps is None or self.lower_exps is None:
                raise ValueError("extra term needs raise and lower vectors")
            if self.m_exp or self.num_exps:
                raise ValueError("extra terms carry only ladder vectors")
            if any(e < 0 for e in self.raise_exps + self.lower_exps):
                raise ValueError("ladder exponents are non-negative")
            if self.raise_exps == self.lower_exps:
                raise ValueError("extra term must shift occupation")
        else:
            raise ValueError(f"unknown term kind {self.kind!r}")

    @property
    def key(self) -> tuple:
        if self.kind == "dunham":
            return ("dunham", self.num_exps)
        if self.kind == "coupling":
            return ("coupling", self.m_exp, self.num_exps)
        return ("extra", self.raise_exps, self.lower_exps)

    def coeff_str(self) -> str:
        return self.coeff_text if self.coeff_text is not None else repr(self.coeff)


@dataclass(frozen=True)
class HamiltonianModel:
    """A resonance spec plus the full list of coefficient slots."""

    spec: ResonanceSpec
    order: int
    terms: tuple[TermSpec, ...]

    def __post_init__(self):
        n = self.spec.n
        seen = set()
        for t in self.terms:
            if t.key in seen:
                raise ValueError(f"duplicate term {t.key}")
            seen.add(t.key)
            vecs = [t.num_exps] if t.kind != "extra" else [t.raise_exps, t.lower_exps]
            for v in vecs:
                if v and len(v) != n:
                    raise ValueError(f"term {t.key} does not match n={n}")

    def dunham_terms(self) -> list[TermSpec]:
        return [t for t in self.terms if t.kind == "dunham"]

    def off_diagonal_terms(self) -> list[TermSpec]:
        return [t for t in self.terms if t.kind != "dunham"]

    def slot_count(self) -> int:
        return len(self.terms)

    def nonzero_count(self) -> int:
        return sum(1 for t in self.terms if t.coeff != 0.0)

    def operator_count(self) -> int:
        """Monomial count with each self-adjoint ladder pair counted twice."""
        return sum(1 if t.kind == "dunham" else 2 for t in self.terms)

    def without_couplings(self) -> "HamiltonianModel":
        """Copy with every off-diagonal coefficient set to zero."""
        terms = tuple(t if t.kind == "dunham" else replace(t, coeff=0.0, coeff_text="0")
                      for t in self.terms)
        return HamiltonianModel(self.spec, self.order, terms)


# -- ladder arithmetic -----------------------------------------------------


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def _rising(n: int, k: int) -> int:
    out = 1
    for j in range(1, k + 1):
        out *= n + j
    return out


def _ladder(f: FockState, raise_v: Sequence[int], lower_v: Sequence[int]
            ) -> Optional[tuple[FockState, float]]:
    # normal order: annihilators first, then creators
    sq = 1
    target = list(f)
    for k, low in enumerate(lower_v):
        if low:
            if target[k] < low:
                return None
            sq *= _falling(target[k], low)
            target[k] -= low
    for k, high in enumerate(raise_v):
        if high:
            sq *= _rising(target[k], high)
            target[k] += high
    return tuple(target), math.sqrt(sq)


def _number_factor(f: FockState, exps: Sequence[int]) -> float:
    out = 1.0
    for n_k, r in zip(f, exps):
        if r:
            out *= float(n_k) ** r
    return out


def term_shift(t: TermSpec, spec: ResonanceSpec) -> Optional[tuple[int, ...]]:
    """Occupation change of the raising branch; None for diagonal terms."""
    n = spec.n
    if t.kind == "dunham":
        return None
    if t.kind == "coupling":
        s = [0] * n
        s[0] = spec.p * t.m_exp
        s[1] = -spec.q * t.m_exp
        return tuple(s)
    return tuple(r - l for r, l in zip(t.raise_exps, t.lower_exps))


def raising_branch(t: TermSpec, f: FockState, spec: ResonanceSpec
                   ) -> Optional[tuple[FockState, float]]:
    """The written (raising) member of the pair applied to ``f``.

    Number factors are evaluated on the incoming state, matching the
    operator order with the number string rightmost.
    """
    if t.kind == "dunham":
        return None
    if t.kind == "coupling":
        digits = _number_factor(f, t.num_exps) if t.num_exps else 1.0
        if digits == 0.0:
            return None
        n = spec.n
        raise_v = [0] * n
        lower_v = [0] * n
        raise_v[0] = spec.p * t.m_exp
        lower_v[1] = spec.q * t.m_exp
        hop = _ladder(f, raise_v, lower_v)
        if hop is None:
            return None
        target, amp = hop
        return target, digits * amp
    return _ladder(f, t.raise_exps, t.lower_exps)


def apply_term(t: TermSpec, f: FockState, spec: ResonanceSpec
               ) -> list[tuple[FockState, float]]:
    """Action of one self-adjoint term (both ladder branches) on a state.

    Diagonal terms return [(f, product of n_k^{r_k})]. Coupling terms are
    the pair R D + (R D)^T with the number string D rightmost in the
    written (raising) member, so the raising branch evaluates D on the
    incoming state and the transposed branch on the outgoing one. Extra
    terms are the plain ladder pair. Annihilation below the vacuum, or a
    vanishing number factor, silently drops a branch.
    """
    if t.kind == "dunham":
        amp = _number_factor(f, t.num_exps)
        return [(f, amp)] if amp != 0.0 else []
    out: list[tuple[FockState, float]] = []
    up = raising_branch(t, f, spec)
    if up is not None:
        out.append(up)
    if t.kind == "coupling":
        n = spec.n
        raise_v = [0] * n
        lower_v = [0] * n
        lower_v[0] = spec.p * t.m_exp
        raise_v[1] = spec.q * t.m_exp
        hop = _ladder(f, raise_v, lower_v)
        if hop is not None:
            target, amp = hop
            digits = _number_factor(target, t.num_exps) if t.num_exps else 1.0
            if digits != 0.0:
                out.append((target, digits * amp))
    else:
        hop = _ladder(f, t.lower_exps, t.raise_exps)
        if hop is not None:
            out.append(hop)
    return out


# -- conserved labels ------------------------------------------------------


def polyad_lattice(spec: ResonanceSpec) -> list[tuple[int, ...]]:
    """The conventional labeling lattice: P = q n1 + p n2, then n3..nn."""
    n = spec.n
    rows = [tuple([spec.q, spec.p] + [0] * (n - 2))]
    for k in range(3, n + 1):
        rows.append(tuple(1 if j == k - 1 else 0 for j in range(n)))
    return rows


def conserved_lattice(model: HamiltonianModel) -> list[tuple[int, ...]]:
    """Integer basis (Hermite normal form) of the true conserved labels.

    The lattice of integer vectors v with v . s = 0 for every off-diagonal
    shift vector s of the model. With no off-diagonal terms every
    occupation number is conserved.
    """
    n = model.spec.n
    shifts = []
    for t in model.off_diagonal_terms():
        if t.coeff == 0.0:
            continue  # census placeholder, not an operator of the model
        s = term_shift(t, model.spec)
        if s is not None:
            shifts.append(s)
    if not shifts:
        return [tuple(1 if j == k else 0 for j in range(n)) for k in range(n)]
    from sympy import Matrix
    from sympy.matrices.normalforms import hermite_normal_form

    null = Matrix(shifts).nullspace()
    if not null:
        return []
    basis = []
    for vec in null:
        denom = math.lcm(*[int(entry.q) for entry in vec])
        ints = [int(entry * denom) for entry in vec]
        g = math.gcd(*ints)
        basis.append([v // g for v in ints])
    hnf = hermite_normal_form(Matrix(basis).T).T
    rows = [tuple(int(x) for x in hnf.row(r)) for r in range(hnf.rows)]
    # leading entry positive, rows in echelon order of pivot column
    canon = []
    for row in rows:
        lead = next((x for x in row if x != 0), 0)
        canon.append(tuple(-x for x in row) if lead < 0 else row)
    return sorted(canon, key=lambda row: next(j for j, x in enumerate(row) if x != 0))


def state_label(f: FockState, lattice: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(sum(v * o for v, o in zip(row, f)) for row in lattice)


# -- blocks ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PolyadBlock:
    """One conserved-label block: basis, matrix and its spectrum."""

    label: tuple[int, ...]
    basis: tuple[FockState, ...]
    matrix: np.ndarray
    eigenvalues: tuple[float, ...]


def build_block(model: HamiltonianModel, label: Sequence[int],
                caps: Sequence[int],
                lattice: Sequence[Sequence[int]] | None = None) -> PolyadBlock:
    """Assemble the symmetric matrix for one label under occupation caps.

    Basis states are every occupation vector below the caps whose lattice
    label matches, in lexicographic order. Matrix elements of terms whose
    raising branch leaves the block (a shift breaking the labeling, or an
    image beyond the caps) are dropped by the projection.
    """
    spec = model.spec
    n = spec.n
    if len(caps) != n:
        raise ValueError("caps must cover every mode")
    if lattice is None:
        lattice = polyad_lattice(spec)
    label = tuple(label)
    if len(label) != len(lattice):
        raise ValueError("label length must match the lattice")

    states: list[FockState] = []

    def rec(prefix: tuple[int, ...]):
        if len(prefix) == n:
            if state_label(prefix, lattice) == label:
                states.append(prefix)
            return
        for occ in range(caps[len(prefix)] + 1):
            rec(prefix + (occ,))

    rec(())
    if not states:
        raise ValueError(f"no basis states for label {label}")
    index = {f: i for i, f in enumerate(states)}
    dim = len(states)
    mat = np.zeros((dim, dim))
    for i, f in enumerate(states):
        for t in model.terms:
            if t.coeff == 0.0:
                continue
            if t.kind == "dunham":
                mat[i, i] += t.coeff * _number_factor(f, t.num_exps)
                continue
            up = raising_branch(t, f, spec)
            if up is None:
                continue
            target, amp = up
            j = index.get(target)
            if j is None:
                continue  # leaves the block: projected out
            mat[j, i] += t.coeff * amp
            mat[i, j] += t.coeff * amp
    eig = tuple(float(x) for x in np.linalg.eigvalsh(mat))
    return PolyadBlock(label=label, basis=tuple(states), matrix=mat, eigenvalues=eig)


def eigenvalues(block: PolyadBlock) -> list[float]:
    """Ascending eigenvalues of the block."""
    return list(block.eigenvalues)


def dunham_energy(f: FockState, model: HamiltonianModel) -> float:
    """Diagonal energy of a basis state from the number-string terms only."""
    return sum(t.coeff * _number_factor(f, t.num_exps)
               for t in model.dunham_terms())


def spectrum(model: HamiltonianModel, pmax: int, n3max: int
             ) -> tuple[list[PolyadBlock], list[tuple[int, int, int, float]]]:
    """All blocks with P <= pmax (and n3 <= n3max for three modes).

    Returns the blocks and flat rows (P, n3, index, energy), ordered by
    label then by ascending energy within the block.
    """
    spec = model.spec
    if spec.n not in (2, 3):
        raise ValueError("spectrum labeling is defined for 2 or 3 modes")
    if pmax < 0 or n3max < 0:
        raise ValueError("caps are non-negative")
    blocks: list[PolyadBlock] = []
    rows: list[tuple[int, int, int, float]] = []
    n3_values = [0] if spec.n == 2 else list(range(n3max + 1))
    for P in range(pmax + 1):
        caps2 = (P // spec.q, P // spec.p)
        for n3 in n3_values:
            if spec.n == 2:
                block = build_block(model, (P,), caps2)
            else:
                block = build_block(model, (P, n3), caps2 + (n3,))
            blocks.append(block)
            for idx, energy in enumerate(block.eigenvalues):
                rows.append((P, n3, idx, energy))
    return blocks, rows


def write_spectrum_csv(out: TextIO, rows: Iterable[tuple[int, int, int, float]]) -> int:
    out.write("P,n3,index,energy_cm1\n")
    count = 0
    for P, n3, idx, energy in rows:
        out.write(f"{P},{n3},{idx},{energy:.10g}\n")
        count += 1
    return count


# -- the worked model ------------------------------------------------------

# Fitted coefficient values for the worked three-mode 2:1 model, keyed by
# number-string exponents (diagonal slots) and by (ladder power, exponents)
# (coupling slots). Absent slots are zero. Texts are kept verbatim so the
# shipped model file round-trips.

_CLOH_DUNHAM_TEXT: dict[tuple[int, int, int], str] = {
    (1, 0, 0): "753.834", (0, 1, 0): "1258.914", (0, 0, 1): "3777.067",
    (2, 0, 0): "-7.123", (0, 2, 0): "3.204", (0, 0, 2): "-80.277",
    (1, 1, 0): "-10.637", (0, 1, 1): "-19.985",
    (3, 0, 0): "0.0825", (0, 0, 3): "-0.3619",
    (1, 2, 0): "-0.2503", (1, 0, 2): "-0.0532", (0, 1, 2): "-1.9534",
    (2, 1, 0): "-0.0802",
    (4, 0, 0): "-0.00171", (0, 4, 0): "-0.04117",
    (0, 2, 2): "-0.15070",
    (1, 3, 0): "-0.01229", (0, 1, 3): "0.13189",
    (1, 1, 2): "0.02381",
    (0, 5, 0): "0.00151",
    (0, 2, 3): "-0.00066",
}

_CLOH_COUPLING_TEXT: dict[tuple[int, tuple[int, int, int]], str] = {
    (1, (1, 0, 0)): "-0.24939", (1, (0, 0, 1)): "-0.76017",
    (1, (2, 0, 0)): "0.00583", (1, (0, 0, 2)): "-0.01158",
    (1, (1, 1, 0)): "0.04075",
}

_CLOH_EXTRA = (((0, 0, 1), (0, 3, 0)), "0.19520")


def census_terms(spec: ResonanceSpec, order: int) -> tuple[TermSpec, ...]:
    """Every coefficient slot of the order-N census, all zero.

    One TermSpec per number-only monomial plus one per deduplicated
    coupling pair, in canonical order; the slot count matches the
    closed-form coefficient total.
    """
    terms: list[TermSpec] = []
    for mono in sort_monomials(enumerate_dunham(spec.n, order)):
        terms.append(TermSpec(kind="dunham", num_exps=mono.num_exps,
                              coeff=0.0, coeff_text="0"))
    seen: set[tuple[int, tuple[int, ...]]] = set()
    for mono in sort_monomials(enumerate_coupling(spec.n, order, spec.p, spec.q)):
        slot = (mono.m_exp, mono.num_exps)
        if slot in seen:
            continue  # one coefficient serves the pair
        seen.add(slot)
        terms.append(TermSpec(kind="coupling", m_exp=mono.m_exp,
                              num_exps=mono.num_exps, coeff=0.0, coeff_text="0"))
    return tuple(terms)


def cloh_model() -> HamiltonianModel:
    """The worked three-mode 2:1 model at order 10.

    86 coefficient slots: every number-only and coupling slot of the order
    10 census (zeros included) plus one explicit 3:1 ladder pair between
    modes 2 and 3, written in self-adjoint form. 28 of them are nonzero.
    """
    spec = ResonanceSpec(n=3, p=2, q=1)
    terms: list[TermSpec] = []
    for slot in census_terms(spec, 10):
        if slot.kind == "dunham":
            text = _CLOH_DUNHAM_TEXT.get(slot.num_exps, "0")
        else:
            text = _CLOH_COUPLING_TEXT.get((slot.m_exp, slot.num_exps), "0")
        terms.append(replace(slot, coeff=float(text), coeff_text=text))
    (raise_v, lower_v), text = _CLOH_EXTRA
    terms.append(TermSpec(kind="extra", raise_exps=raise_v, lower_exps=lower_v,
                          coeff=float(text), coeff_text=text))
    return HamiltonianModel(spec=spec, order=10, terms=tuple(terms))
