"""Group -> table -> fusion ring -> chain group (both ways) -> center -> verification."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .centerdual import (RestrictionMap, abelian_invariants, abelianization_dual, center_report,
                         restriction_tmap)
from .chaingroup import (ChainClassPartition, ChainGroupPresentation, chain_classes_bl,
                         chain_group_snf, class_group_structure)
from .charmod import ModularCharacterTable, character_table_mod_p
from .fusion import FusionRing, fusion_from_character_table
from .groups import FiniteGroup
from .verify import (NA, StatementResult, VerificationFailure, VerificationReport, compute_C0,
                     enumerate_tmaps, verify_definition_equivalence, verify_factorization,
                     verify_lemma_kernel, verify_prop_C0, verify_restriction, verify_theorem_main,
                     verify_tmap_basics, verify_universal_property)

DEFAULT_MODULI = tuple(range(2, 13))
FINITE_TARGETS_NOTE = "t-map targets restricted to finite cyclic groups Z/m"


@dataclass(eq=False)
class RingAnalysis:
    subject: str
    ring: FusionRing
    presentation: ChainGroupPresentation
    classes: ChainClassPartition
    class_factors: tuple[int, ...]
    C0: frozenset[int]

    def chain_report(self) -> dict[str, Any]:
        L = self.ring.labels
        return self.presentation.report(None, {L[i]: c for i, c in enumerate(self.classes.class_of)})


@dataclass(eq=False)
class GroupAnalysis(RingAnalysis):
    group: FiniteGroup = None
    table: ModularCharacterTable = None
    restriction: RestrictionMap = None
    abelianization: tuple[int, ...] = ()


def analyze_ring(F: FusionRing, subject: str | None = None) -> RingAnalysis:
    pres = chain_group_snf(F)
    classes = chain_classes_bl(F)
    return RingAnalysis(subject or F.name, F, pres, classes, class_group_structure(classes),
                        compute_C0(F))


def analyze_group(G: FiniteGroup, subject: str | None = None, *,
                  table: ModularCharacterTable | None = None,
                  ring: FusionRing | None = None) -> GroupAnalysis:
    T = table if table is not None else character_table_mod_p(G)
    F = ring if ring is not None else fusion_from_character_table(T, G.classes, G.order, name=G.name)
    base = analyze_ring(F, subject or G.name)
    Z = abelian_invariants(G, G.center)
    R = restriction_tmap(G, T, F, Z)
    return GroupAnalysis(base.subject, F, base.presentation, base.classes, base.class_factors,
                         base.C0, group=G, table=T, restriction=R,
                         abelianization=abelianization_dual(F))


def run_verification(A: RingAnalysis, moduli: Sequence[int] = DEFAULT_MODULI, *,
                     abort_on_failure: bool = True) -> VerificationReport:
    F, pres = A.ring, A.presentation
    group = isinstance(A, GroupAnalysis)
    report = VerificationReport(A.subject, group, notes=[FINITE_TARGETS_NOTE])

    def record(res: StatementResult) -> None:
        report.results.append(res)
        if res.failed and group and abort_on_failure:
            raise VerificationFailure(report)

    record(verify_definition_equivalence(pres, A.classes, A.class_factors))
    record(verify_tmap_basics(pres.projection, pres.moduli, F, "tmap_basics_p_G"))
    if group:
        R = A.restriction
        record(verify_restriction(R))
        record(verify_tmap_basics([c.exponents for c in R.characters], R.center.invariant_factors,
                                  F, "tmap_basics_r_G"))
        record(verify_theorem_main(F, pres, A.classes, R))
        record(verify_prop_C0(F, R, A.C0))
        record(verify_lemma_kernel(F, pres, A.C0))
    else:
        for name in ("restriction_surjective_tmap", "tmap_basics_r_G", "theorem_main", "prop_C0"):
            report.results.append(StatementResult(name, NA, {"reason": "no group: center unavailable"}))
        record(verify_lemma_kernel(F, pres, A.C0))
    for m in moduli:
        record(verify_universal_property(F, pres, m))
        if group:
            record(verify_factorization(F, A.restriction, m, enumerate_tmaps(F, m, pres)))
        else:
            report.results.append(StatementResult(f"factorization_m{m}", NA,
                                                  {"reason": "no group: center unavailable"}))
    return report


def analysis_report(A: RingAnalysis, verification: VerificationReport | None = None,
                    timings: bool = False) -> dict[str, Any]:
    F = A.ring
    out: dict[str, Any] = {
        "subject": A.subject,
        "rank": F.rank,
        "chain_group": A.chain_report(),
        "class_group_invariants": list(A.class_factors),
        "C0": [F.labels[i] for i in sorted(A.C0)],
    }
    if isinstance(A, GroupAnalysis):
        out["order"] = A.group.order
        out["degrees"] = {F.labels[i]: d for i, d in enumerate(F.degrees)}
        out["prime"] = A.table.p
        out["center"] = center_report(F, A.restriction, A.abelianization)
    else:
        out["center"] = None
    if verification is not None:
        out["verification"] = verification.to_json(timings)
    return out
