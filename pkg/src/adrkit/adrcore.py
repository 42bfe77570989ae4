"""Numerology of the ADR algebra R_A, computed through A-level linear algebra.

R_A is never materialised: its Cartan matrix is read off the socle series of
the radical quotients of the projective A-modules, the Cartan matrix of the
Ringel dual comes from row arithmetic on C(R_A), and the Cartan matrix of
S_A (the endomorphism algebra of the socle filtrations of the injectives)
from radical series of socle submodules.  Each matrix also has an independent
Hom-space route through the intertwiner solver; the two must agree exactly.

All matrices carry explicit row/column label lists; raw integer matrices are
never passed between modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .presentation import AlgebraData
from .repmod import (
    Representation,
    hom_dim,
    injective,
    is_rigid,
    loewy_length,
    projective,
    radical_series,
    socle_series,
    socle_sub,
    truncate,
)


class NegativeMultiplicityError(RuntimeError):
    """A derived multiplicity came out negative: an upstream bug, never valid."""


class HypothesesNotSatisfiedError(ValueError):
    """A tilting-side operation was asked for outside its theorem hypotheses."""


class LambdaLabel(NamedTuple):
    i: int
    j: int


@dataclass(frozen=True)
class LambdaPoset:
    """Labels (i, j) with 1 <= j <= l_i = LL(P_i); (i,j) < (k,l) iff j > l."""

    labels: tuple[LambdaLabel, ...]
    lengths: tuple[int, ...]

    def precedes(self, a: LambdaLabel, b: LambdaLabel) -> bool:
        return a.j > b.j

    def l(self, i: int) -> int:
        return self.lengths[i - 1]


@dataclass(frozen=True)
class LambdaCompositionVector:
    """Integer multiplicities over an explicit label list."""

    labels: tuple[LambdaLabel, ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values misaligned")

    def value(self, label: LambdaLabel) -> int:
        return self.values[self.labels.index(label)]

    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class LabeledMatrix:
    """Non-negative integer matrix with explicit Lambda-label headers."""

    row_labels: tuple[LambdaLabel, ...]
    col_labels: tuple[LambdaLabel, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.row_labels):
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != len(self.col_labels):
                raise ValueError("column count mismatch")
            if any(x < 0 for x in row):
                raise NegativeMultiplicityError(f"negative entry in {row}")

    def entry(self, row: LambdaLabel, col: LambdaLabel) -> int:
        return self.entries[self.row_labels.index(row)][self.col_labels.index(col)]

    def row_vector(self, row: LambdaLabel) -> LambdaCompositionVector:
        return LambdaCompositionVector(
            self.col_labels, self.entries[self.row_labels.index(row)]
        )

    def column_vector(self, col: LambdaLabel) -> LambdaCompositionVector:
        c = self.col_labels.index(col)
        return LambdaCompositionVector(
            self.row_labels, tuple(row[c] for row in self.entries)
        )

    def to_dict(self) -> dict:
        return {
            "row_labels": [list(lbl) for lbl in self.row_labels],
            "col_labels": [list(lbl) for lbl in self.col_labels],
            "entries": [list(row) for row in self.entries],
        }


@dataclass(frozen=True)
class DeltaFiltration:
    """Layers of a Delta-semisimple filtration: multisets of standard labels."""

    layers: tuple[tuple[LambdaLabel, ...], ...]

    def rank(self) -> int:
        """Total number of standard modules across all layers."""
        return sum(len(layer) for layer in self.layers)


@dataclass(frozen=True)
class TheoremAHypotheses:
    """Per-vertex Loewy lengths and rigidity of the P_i and Q_i."""

    loewy_length: int
    ll_p: tuple[int, ...]
    ll_q: tuple[int, ...]
    rigid_p: tuple[bool, ...]
    rigid_q: tuple[bool, ...]

    @property
    def projective_side_ok(self) -> bool:
        return all(x == self.loewy_length for x in self.ll_p) and all(self.rigid_p)

    @property
    def all_ok(self) -> bool:
        return (
            self.projective_side_ok
            and all(x == self.loewy_length for x in self.ll_q)
            and all(self.rigid_q)
        )

    def first_failure(self, projective_side_only: bool = False) -> str | None:
        """First failing condition, scanning vertices in order."""
        for idx in range(len(self.ll_p)):
            i = idx + 1
            if self.ll_p[idx] != self.loewy_length:
                return f"LL(P_{i})={self.ll_p[idx]} != L={self.loewy_length}"
            if not projective_side_only and self.ll_q[idx] != self.loewy_length:
                return f"LL(Q_{i})={self.ll_q[idx]} != L={self.loewy_length}"
            if not self.rigid_p[idx]:
                return f"P_{i} is not rigid"
            if not projective_side_only and not self.rigid_q[idx]:
                return f"Q_{i} is not rigid"
        return None


def lambda_poset(alg: AlgebraData) -> LambdaPoset:
    if "lambda_poset" not in alg._cache:
        lengths = tuple(loewy_length(projective(alg, i)) for i in range(1, alg.n + 1))
        labels = tuple(
            LambdaLabel(i, j)
            for i in range(1, alg.n + 1)
            for j in range(1, lengths[i - 1] + 1)
        )
        alg._cache["lambda_poset"] = LambdaPoset(labels, lengths)
    return alg._cache["lambda_poset"]


def theorem_a_hypotheses(alg: AlgebraData) -> TheoremAHypotheses:
    if "thm_a_hyp" not in alg._cache:
        ll_p = tuple(loewy_length(projective(alg, i)) for i in range(1, alg.n + 1))
        ll_q = tuple(loewy_length(injective(alg, i)) for i in range(1, alg.n + 1))
        rigid_p = tuple(is_rigid(projective(alg, i)) for i in range(1, alg.n + 1))
        rigid_q = tuple(is_rigid(injective(alg, i)) for i in range(1, alg.n + 1))
        alg._cache["thm_a_hyp"] = TheoremAHypotheses(
            loewy_length=max(ll_p),
            ll_p=ll_p,
            ll_q=ll_q,
            rigid_p=rigid_p,
            rigid_q=rigid_q,
        )
    return alg._cache["thm_a_hyp"]


def standard_vector(alg: AlgebraData, label: LambdaLabel) -> LambdaCompositionVector:
    """[Delta(i,j)]: one copy of each L_{i,y} for y = j..l_i (uniserial)."""
    poset = lambda_poset(alg)
    i, j = label
    if not (1 <= i <= alg.n and 1 <= j <= poset.l(i)):
        raise ValueError(f"label {label} outside the Lambda poset")
    values = tuple(
        1 if (lbl.i == i and lbl.j >= j) else 0 for lbl in poset.labels
    )
    return LambdaCompositionVector(poset.labels, values)


def _truncated_projective(alg: AlgebraData, k: int, l: int) -> Representation:
    key = ("trunc_proj", k, l)
    if key not in alg._cache:
        alg._cache[key] = truncate(projective(alg, k), l)
    return alg._cache[key]


def _injective_socle_sub(alg: AlgebraData, i: int, j: int) -> Representation:
    key = ("inj_socle_sub", i, j)
    if key not in alg._cache:
        alg._cache[key] = socle_sub(injective(alg, i), j)
    return alg._cache[key]


def _injective_socle_profile(alg: AlgebraData, k: int):
    key = ("inj_socle_profile", k)
    if key not in alg._cache:
        alg._cache[key] = socle_series(injective(alg, k))
    return alg._cache[key]


def cartan_RA_formula(alg: AlgebraData) -> LabeledMatrix:
    """C(R_A) from socle series: entry[(i,j),(k,l)] = [soc_j(P_k/rad^l P_k) : L_i]."""
    if "cartan_RA_formula" in alg._cache:
        return alg._cache["cartan_RA_formula"]
    poset = lambda_poset(alg)
    columns = {}
    for k, l in poset.labels:
        prof = socle_series(_truncated_projective(alg, k, l))
        cums = []
        acc = [0] * alg.n
        for layer in prof.layers:
            acc = [a + b for a, b in zip(acc, layer.mult)]
            cums.append(tuple(acc))
        columns[(k, l)] = cums
    entries = []
    for i, j in poset.labels:
        row = []
        for k, l in poset.labels:
            cums = columns[(k, l)]
            row.append(cums[min(j, len(cums)) - 1][i - 1] if cums else 0)
        entries.append(tuple(row))
    result = LabeledMatrix(poset.labels, poset.labels, tuple(entries))
    alg._cache["cartan_RA_formula"] = result
    return result


def cartan_RA_hom(alg: AlgebraData) -> LabeledMatrix:
    """C(R_A) by the oracle route: dim Hom_A(P_i/rad^j P_i, P_k/rad^l P_k)."""
    if "cartan_RA_hom" in alg._cache:
        return alg._cache["cartan_RA_hom"]
    poset = lambda_poset(alg)
    entries = tuple(
        tuple(
            hom_dim(_truncated_projective(alg, i, j), _truncated_projective(alg, k, l))
            for k, l in poset.labels
        )
        for i, j in poset.labels
    )
    result = LabeledMatrix(poset.labels, poset.labels, entries)
    alg._cache["cartan_RA_hom"] = result
    return result


def injective_vector(alg: AlgebraData, label: LambdaLabel) -> LambdaCompositionVector:
    """[Q_{i,j}] over R_A, read off the transposed Cartan matrix."""
    return cartan_RA_formula(alg).row_vector(LambdaLabel(*label))


def _row_or_zero(alg: AlgebraData, i: int, j: int) -> tuple[int, ...]:
    c = cartan_RA_formula(alg)
    if j == 0:
        return tuple(0 for _ in c.col_labels)
    return c.entries[c.row_labels.index(LambdaLabel(i, j))]


def costandard_vector(alg: AlgebraData, label: LambdaLabel) -> LambdaCompositionVector:
    """[nabla(i,j)] = [Q_{i,j}] - [Q_{i,j-1}]."""
    i, j = label
    poset = lambda_poset(alg)
    hi = _row_or_zero(alg, i, j)
    lo = _row_or_zero(alg, i, j - 1)
    values = tuple(a - b for a, b in zip(hi, lo))
    if any(v < 0 for v in values):
        raise NegativeMultiplicityError(f"costandard vector at {label}: {values}")
    return LambdaCompositionVector(poset.labels, values)


def tilting_vector(alg: AlgebraData, label: LambdaLabel) -> LambdaCompositionVector:
    """[T(i,j)] = [Q_{i,l_i}] - [Q_{i,j-1}]."""
    i, j = label
    poset = lambda_poset(alg)
    hi = _row_or_zero(alg, i, poset.l(i))
    lo = _row_or_zero(alg, i, j - 1)
    values = tuple(a - b for a, b in zip(hi, lo))
    if any(v < 0 for v in values):
        raise NegativeMultiplicityError(f"tilting vector at {label}: {values}")
    return LambdaCompositionVector(poset.labels, values)


def delta_layers(alg: AlgebraData, m: Representation) -> DeltaFiltration:
    """Delta-semisimple filtration of Hom(G, m), read off the socle series of m.

    Socle layer y of m contributes one Delta(x, y) per copy of L_x in it.
    """
    poset = lambda_poset(alg)
    layers = []
    for y, layer in enumerate(socle_series(m).layers, start=1):
        labels = []
        for x in range(1, alg.n + 1):
            count = layer.mult[x - 1]
            if count and y > poset.l(x):
                raise RuntimeError(
                    f"socle layer {y} of a module contains L_{x} with y > l_{x}"
                )
            labels.extend([LambdaLabel(x, y)] * count)
        layers.append(tuple(sorted(labels)))
    return DeltaFiltration(tuple(layers))


def tilting_delta_filtration(alg: AlgebraData, label: LambdaLabel) -> DeltaFiltration:
    """Delta-filtration layers of the tilting module T(k,l).

    Valid when every projective is rigid with full Loewy length; layer y holds
    Delta(x, l+y-1) once per copy of L_x in socle layer y of Q_k, and there are
    min(L-l+1, LL(Q_k)) layers.
    """
    hyp = theorem_a_hypotheses(alg)
    if not hyp.projective_side_ok:
        raise HypothesesNotSatisfiedError(hyp.first_failure(projective_side_only=True))
    k, l = label
    poset = lambda_poset(alg)
    if not (1 <= k <= alg.n and 1 <= l <= poset.l(k)):
        raise ValueError(f"label {label} outside the Lambda poset")
    big_l = hyp.loewy_length
    prof = _injective_socle_profile(alg, k)
    count = min(big_l - l + 1, len(prof.layers))
    layers = []
    for y in range(1, count + 1):
        shifted = l + y - 1
        labels = []
        for x in range(1, alg.n + 1):
            cnt = prof.layers[y - 1].mult[x - 1]
            if cnt and shifted > poset.l(x):
                raise RuntimeError(
                    f"tilting layer would need Delta({x},{shifted}) beyond l_{x}"
                )
            labels.extend([LambdaLabel(x, shifted)] * cnt)
        layers.append(tuple(sorted(labels)))
    return DeltaFiltration(tuple(layers))


def tilting_hom_dim(alg: AlgebraData, source: LambdaLabel, target: LambdaLabel) -> int:
    """dim Hom_{R_A}(T(i,j), T(k,l)) by the closed form over socle layers of Q_i.

    Requires rigid projectives and injectives, all of Loewy length L; the value
    is the multiplicity of L_k in socle layers max(l-j,0)+1 .. L-j+1 of Q_i.
    """
    hyp = theorem_a_hypotheses(alg)
    if not hyp.all_ok:
        raise HypothesesNotSatisfiedError(hyp.first_failure())
    i, j = source
    k, l = target
    big_l = hyp.loewy_length
    prof = _injective_socle_profile(alg, i)
    lo = max(l - j, 0) + 1
    hi = min(big_l - j + 1, len(prof.layers))
    return sum(prof.layers[y - 1].mult[k - 1] for y in range(lo, hi + 1))


def ringel_dual_cartan_from_hom(alg: AlgebraData) -> LabeledMatrix:
    """C(R(R_A)) with entry[(i,j),(k,l)] = dim Hom(T(i,j), T(k,l)) (closed form)."""
    poset = lambda_poset(alg)
    entries = tuple(
        tuple(tilting_hom_dim(alg, src, tgt) for tgt in poset.labels)
        for src in poset.labels
    )
    return LabeledMatrix(poset.labels, poset.labels, entries)


def cartan_ringel_dual(alg: AlgebraData) -> LabeledMatrix:
    """C(R(R_A)) from C(R_A) row arithmetic; valid for every ADR algebra.

    entry[(i,j),(k,l)] = [Q_{i,l_i}:L_{k,l_k}] - [Q_{i,j-1}:L_{k,l_k}]
                       - [Q_{i,l_i}:L_{k,l-1}] + [Q_{i,j-1}:L_{k,l-1}],
    with Q_{i,0} = 0 and multiplicities at a zero label read as 0.
    """
    if "cartan_ringel_dual" in alg._cache:
        return alg._cache["cartan_ringel_dual"]
    poset = lambda_poset(alg)
    cra = cartan_RA_formula(alg)
    col_index = {lbl: c for c, lbl in enumerate(cra.col_labels)}

    def q_mult(a: int, b: int, c: int, d: int) -> int:
        # [Q_{a,b} : L_{c,d}] = [P_{c,d} : L_{a,b}], zero when b == 0 or d == 0
        if b == 0 or d == 0:
            return 0
        return cra.entries[cra.row_labels.index(LambdaLabel(a, b))][
            col_index[LambdaLabel(c, d)]
        ]

    entries = []
    for i, j in poset.labels:
        li = poset.l(i)
        row = []
        for k, l in poset.labels:
            lk = poset.l(k)
            val = (
                q_mult(i, li, k, lk)
                - q_mult(i, j - 1, k, lk)
                - q_mult(i, li, k, l - 1)
                + q_mult(i, j - 1, k, l - 1)
            )
            if val < 0:
                raise NegativeMultiplicityError(
                    f"Ringel-dual Cartan entry at ({(i, j)},{(k, l)}) = {val}"
                )
            row.append(val)
        entries.append(tuple(row))
    result = LabeledMatrix(poset.labels, poset.labels, tuple(entries))
    alg._cache["cartan_ringel_dual"] = result
    return result


def sa_labels(alg: AlgebraData) -> tuple[LambdaLabel, ...]:
    """Labels [i,j] of S_A, with 1 <= j <= LL(Q_i)."""
    if "sa_labels" not in alg._cache:
        alg._cache["sa_labels"] = tuple(
            LambdaLabel(i, j)
            for i in range(1, alg.n + 1)
            for j in range(1, loewy_length(injective(alg, i)) + 1)
        )
    return alg._cache["sa_labels"]


def cartan_SA_formula(alg: AlgebraData) -> LabeledMatrix:
    """C(S_A): entry[[i,j],[k,l]] = [soc_j Q_i / rad^l (soc_j Q_i) : L_k]."""
    if "cartan_SA_formula" in alg._cache:
        return alg._cache["cartan_SA_formula"]
    labels = sa_labels(alg)
    entries = []
    for i, j in labels:
        key = ("soc_sub_rad_profile", i, j)
        if key not in alg._cache:
            alg._cache[key] = radical_series(_injective_socle_sub(alg, i, j))
        prof = alg._cache[key]
        cums = []
        acc = [0] * alg.n
        for layer in prof.layers:
            acc = [a + b for a, b in zip(acc, layer.mult)]
            cums.append(tuple(acc))
        row = []
        for k, l in labels:
            row.append(cums[min(l, len(cums)) - 1][k - 1] if cums else 0)
        entries.append(tuple(row))
    result = LabeledMatrix(labels, labels, tuple(entries))
    alg._cache["cartan_SA_formula"] = result
    return result


def cartan_SA_hom(alg: AlgebraData) -> LabeledMatrix:
    """C(S_A) by the oracle route: dim Hom_A(soc_j Q_i, soc_l Q_k)."""
    if "cartan_SA_hom" in alg._cache:
        return alg._cache["cartan_SA_hom"]
    labels = sa_labels(alg)
    entries = tuple(
        tuple(
            hom_dim(_injective_socle_sub(alg, i, j), _injective_socle_sub(alg, k, l))
            for k, l in labels
        )
        for i, j in labels
    )
    result = LabeledMatrix(labels, labels, entries)
    alg._cache["cartan_SA_hom"] = result
    return result
