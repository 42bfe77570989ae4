"""Verdict engines: Ringel-dual identification, Cartan-flip minimality, selfduality.

Each checker returns a structured :class:`Verdict` with hypothesis and
evidence entries.  Whenever the hypotheses of a statement hold, its asserted
identities must pass; a failure there would falsify the statement and is
raised as :class:`InternalInconsistencyError` rather than reported as a
negative verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .adrcore import (
    LambdaLabel,
    cartan_ringel_dual,
    cartan_SA_formula,
    lambda_poset,
    ringel_dual_cartan_from_hom,
    standard_vector,
    theorem_a_hypotheses,
    tilting_delta_filtration,
    tilting_vector,
)
from .presentation import (
    AlgebraData,
    build_algebra,
    connected_components,
    restrict_presentation,
)
from .repmod import is_nakayama, selfinjective_matching


class InternalInconsistencyError(RuntimeError):
    """A theorem-backed identity failed while its hypotheses hold."""


@dataclass(frozen=True)
class Check:
    description: str
    passed: bool
    witness: str | None = None

    def to_dict(self) -> dict:
        return {"description": self.description, "passed": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    hypotheses: tuple[Check, ...]
    evidence: tuple[Check, ...]
    applicable: bool = True
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.holds and not all(c.passed for c in self.hypotheses + self.evidence):
            raise InternalInconsistencyError(
                f"verdict {self.name} claims to hold with a failing check"
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "applicable": self.applicable,
            "hypotheses": [c.to_dict() for c in self.hypotheses],
            "evidence": [c.to_dict() for c in self.evidence],
            "details": self.details,
        }


@dataclass(frozen=True)
class FlipMap:
    """The relabelling (i, j) -> [i, L-j+1] between the two weight posets."""

    loewy_length: int

    def apply(self, label: LambdaLabel) -> LambdaLabel:
        return LambdaLabel(label.i, self.loewy_length - label.j + 1)

    def validate(self, labels: tuple[LambdaLabel, ...]) -> bool:
        """Involutive in j, and order-reversing as required, on all label pairs."""
        for a in labels:
            if self.apply(self.apply(a)) != a:
                return False
        for a in labels:
            for b in labels:
                # a < b in the opposite order  <=>  flip(a) < flip(b) originally
                if (a.j < b.j) != (self.apply(a).j > self.apply(b).j):
                    return False
        return True


def _delta_route_values(alg: AlgebraData, label: LambdaLabel) -> tuple[int, ...]:
    poset = lambda_poset(alg)
    acc = [0] * len(poset.labels)
    for layer in tilting_delta_filtration(alg, label).layers:
        for lbl in layer:
            for pos, v in enumerate(standard_vector(alg, lbl).values):
                acc[pos] += v
    return tuple(acc)


def check_theorem_a(alg: AlgebraData) -> Verdict:
    """Cartan-level check of the Ringel-dual identification R(R_A) ~ (R_{A^op})^op.

    Hypotheses: every P_i and Q_i rigid with Loewy length L.  Evidence when
    they hold: the flip equality between C(R(R_A)) and C(S_A), agreement of
    the Delta- and nabla-routes to every tilting class, and agreement of the
    row-arithmetic and closed-form Hom routes to C(R(R_A)).
    """
    hyp = theorem_a_hypotheses(alg)
    L = hyp.loewy_length
    n = alg.n

    def agg(desc: str, values, fmt) -> Check:
        bad = [i for i in range(1, n + 1) if not values[i - 1]]
        return Check(desc, not bad, fmt(bad[0]) if bad else None)

    hypotheses = (
        agg(
            "LL(P_i) = L for all i",
            [hyp.ll_p[i - 1] == L for i in range(1, n + 1)],
            lambda i: f"LL(P_{i})={hyp.ll_p[i - 1]} != L={L}",
        ),
        agg(
            "LL(Q_i) = L for all i",
            [hyp.ll_q[i - 1] == L for i in range(1, n + 1)],
            lambda i: f"LL(Q_{i})={hyp.ll_q[i - 1]} != L={L}",
        ),
        agg("P_i rigid for all i", hyp.rigid_p, lambda i: f"P_{i} is not rigid"),
        agg("Q_i rigid for all i", hyp.rigid_q, lambda i: f"Q_{i} is not rigid"),
    )
    if not all(c.passed for c in hypotheses):
        return Verdict(
            name="theorem_a",
            holds=False,
            hypotheses=hypotheses,
            evidence=(),
            details={"first_failure": hyp.first_failure()},
        )

    poset = lambda_poset(alg)
    flip = FlipMap(L)
    if not flip.validate(poset.labels):
        raise InternalInconsistencyError("flip map failed its order/involution check")

    crd = cartan_ringel_dual(alg)
    csa = cartan_SA_formula(alg)
    for row in poset.labels:
        for col in poset.labels:
            lhs = crd.entry(row, col)
            rhs = csa.entry(flip.apply(row), flip.apply(col))
            if lhs != rhs:
                raise InternalInconsistencyError(
                    f"flip equality fails at {tuple(row)},{tuple(col)}: {lhs} != {rhs}"
                )
    flip_check = Check(
        "C(R(R_A))[(i,j),(k,l)] = C(S_A)[(i,L-j+1),(k,L-l+1)] for all labels", True
    )

    for label in poset.labels:
        if _delta_route_values(alg, label) != tilting_vector(alg, label).values:
            raise InternalInconsistencyError(
                f"tilting Delta-route vector differs from nabla-route at {tuple(label)}"
            )
    route_check = Check("tilting Delta-route equals nabla-route for all labels", True)

    if ringel_dual_cartan_from_hom(alg) != crd:
        raise InternalInconsistencyError(
            "closed-form Hom route to C(R(R_A)) differs from the row-arithmetic route"
        )
    hom_check = Check("C(R(R_A)) equals the tilting Hom-dimension matrix", True)

    return Verdict(
        name="theorem_a",
        holds=True,
        hypotheses=hypotheses,
        evidence=(flip_check, route_check, hom_check),
    )


def _b1_b2(alg: AlgebraData) -> tuple[bool, tuple[Check, Check]]:
    """B1: LL(P_i) = LL(Q_i) for all i.  B2: per-index Cartan flip equality."""
    hyp = theorem_a_hypotheses(alg)
    n = alg.n
    bad = [i for i in range(1, n + 1) if hyp.ll_p[i - 1] != hyp.ll_q[i - 1]]
    b1 = Check(
        "B1: LL(P_i) = LL(Q_i) for all i",
        not bad,
        None
        if not bad
        else f"LL(P_{bad[0]})={hyp.ll_p[bad[0] - 1]} != LL(Q_{bad[0]})={hyp.ll_q[bad[0] - 1]}",
    )
    if not b1.passed:
        b2 = Check(
            "B2: C(R(R_A)) matches C(S_A) under (i,j) -> [i, l_i-j+1]",
            False,
            "not evaluated: B1 fails",
        )
        return False, (b1, b2)
    poset = lambda_poset(alg)
    crd = cartan_ringel_dual(alg)
    csa = cartan_SA_formula(alg)
    counterexample = None
    for row in poset.labels:
        for col in poset.labels:
            flipped_row = LambdaLabel(row.i, poset.l(row.i) - row.j + 1)
            flipped_col = LambdaLabel(col.i, poset.l(col.i) - col.j + 1)
            if crd.entry(row, col) != csa.entry(flipped_row, flipped_col):
                counterexample = (
                    f"at {tuple(row)},{tuple(col)}: {crd.entry(row, col)} != "
                    f"{csa.entry(flipped_row, flipped_col)}"
                )
                break
        if counterexample:
            break
    b2 = Check(
        "B2: C(R(R_A)) matches C(S_A) under (i,j) -> [i, l_i-j+1]",
        counterexample is None,
        counterexample,
    )
    return b1.passed and b2.passed, (b1, b2)


def check_theorem_b(alg: AlgebraData) -> Verdict:
    """Minimality of the rigidity/uniform-length conditions, via B1 and B2.

    On a connected algebra where B1 and B2 hold, all l_i must coincide and all
    P_i, Q_i must be rigid; any failure is theorem-falsifying.  Disconnected
    input gets a not-applicable global verdict plus per-component results.
    """
    if not alg.connected:
        comps = connected_components(alg.quiver)
        sub = [
            check_theorem_b(build_algebra(restrict_presentation(alg.presentation, comp)))
            for comp in comps
        ]
        return Verdict(
            name="theorem_b",
            holds=False,
            applicable=False,
            hypotheses=(
                Check("algebra is connected", False, f"{len(comps)} components"),
            ),
            evidence=(),
            details={"components": [v.to_dict() for v in sub]},
        )

    ok, (b1, b2) = _b1_b2(alg)
    hypotheses = (Check("algebra is connected", True), b1, b2)
    if not ok:
        return Verdict(name="theorem_b", holds=False, hypotheses=hypotheses, evidence=())

    hyp = theorem_a_hypotheses(alg)
    evidence = []
    if len(set(hyp.ll_p)) != 1:
        raise InternalInconsistencyError(
            f"B1+B2 hold but Loewy lengths differ: {hyp.ll_p}"
        )
    evidence.append(Check("all l_i are equal", True, f"l={hyp.ll_p[0]}"))
    for idx in range(alg.n):
        if not hyp.rigid_p[idx]:
            raise InternalInconsistencyError(f"B1+B2 hold but P_{idx + 1} is not rigid")
        if not hyp.rigid_q[idx]:
            raise InternalInconsistencyError(f"B1+B2 hold but Q_{idx + 1} is not rigid")
    evidence.append(Check("every P_i and Q_i is rigid", True))
    for a in alg.quiver.arrows:
        i, k = alg.quiver.arrow_endpoints(a.name)
        if i != k and hyp.ll_p[i - 1] != hyp.ll_p[k - 1]:
            raise InternalInconsistencyError(
                f"B1+B2 hold but arrow {a.name}: {i}->{k} links l_{i}={hyp.ll_p[i - 1]} "
                f"to l_{k}={hyp.ll_p[k - 1]}"
            )
    evidence.append(
        Check("Ext^1(L_i, L_k) != 0 (arrow i->k) forces l_k = l_i", True)
    )
    return Verdict(
        name="theorem_b", holds=True, hypotheses=hypotheses, evidence=tuple(evidence)
    )


def ringel_selfdual_verdict(alg: AlgebraData) -> Verdict:
    """R_A is Ringel selfdual exactly when A is selfinjective Nakayama.

    When the verdict holds, the matching permutation P_i ~ Q_sigma(i) is
    attached, and the flip equality of the Ringel-dual identification is
    re-checked per connected component as corroboration.
    """
    sigma = selfinjective_matching(alg)
    nak = is_nakayama(alg)
    selfinj = sigma is not None
    hypotheses = (
        Check("A is selfinjective", selfinj, None if selfinj else "no P_i ~ Q_sigma(i) matching"),
        Check("A is Nakayama", nak, None if nak else "some P_i or Q_i is not uniserial"),
    )
    holds = selfinj and nak
    evidence = []
    details: dict = {}
    if holds:
        details["sigma"] = {str(i): s for i, s in sorted(sigma.items())}
        evidence.append(
            Check("P_i isomorphic to Q_sigma(i)", True, str(sorted(sigma.items())))
        )
        comps = connected_components(alg.quiver)
        for comp in comps:
            sub = (
                alg
                if len(comps) == 1
                else build_algebra(restrict_presentation(alg.presentation, comp))
            )
            verdict_a = check_theorem_a(sub)
            if not verdict_a.holds:
                raise InternalInconsistencyError(
                    "selfinjective Nakayama algebra fails the Ringel-dual "
                    f"identification hypotheses on component {comp}"
                )
        evidence.append(
            Check("flip-equality corroboration on every connected component", True)
        )
    return Verdict(
        name="theorem_c",
        holds=holds,
        hypotheses=hypotheses,
        evidence=tuple(evidence),
        details=details,
    )


def check_opposite_symmetry(alg: AlgebraData) -> Verdict:
    """B1 and B2 hold for A iff they hold for A^op."""
    lhs, lhs_checks = _b1_b2(alg)
    rhs, rhs_checks = _b1_b2(alg.opposite())
    if lhs != rhs:
        raise InternalInconsistencyError(
            f"B1+B2 = {lhs} on A but {rhs} on the opposite algebra"
        )
    evidence = (
        Check(f"B1 and B2 on A evaluate to {lhs}", True, lhs_checks[1].witness),
        Check(f"B1 and B2 on A^op evaluate to {rhs}", True, rhs_checks[1].witness),
    )
    return Verdict(
        name="opposite_symmetry",
        holds=True,
        hypotheses=(),
        evidence=evidence,
        details={"b1_b2": lhs},
    )
