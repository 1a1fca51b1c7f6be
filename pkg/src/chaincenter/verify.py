"""Exhaustive checks that the chain group and the dual of the center agree on concrete inputs.

Every check returns a :class:`StatementResult`; a failure carries a witness
(labels, classes or maps) small enough to read. Targets for t-maps are
finite cyclic groups Z/m only, so the factorization statement is checked for
those targets.
"""
from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod
from typing import Any, Callable, Sequence

from .centerdual import CentralCharacter, RestrictionMap
from .chaingroup import ChainClassPartition, ChainGroupPresentation, compare_chain_groups
from .fusion import FusionRing

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass
class StatementResult:
    statement: str
    status: str
    witness: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self, timings: bool = False) -> dict[str, Any]:
        out = {"statement": self.statement, "status": self.status, "witness": self.witness}
        if timings:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class VerificationReport:
    subject: str
    group_derived: bool
    results: list[StatementResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.results)

    def failures(self) -> list[StatementResult]:
        return [r for r in self.results if r.failed]

    def to_json(self, timings: bool = False) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "group_derived": self.group_derived,
            "ok": self.ok,
            "results": [r.to_json(timings) for r in sorted(self.results, key=_statement_key)],
            "notes": list(self.notes),
        }


def _statement_key(r: StatementResult) -> tuple:
    # natural order so factorization_m10 sorts after factorization_m9
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", r.statement))


class VerificationFailure(RuntimeError):
    """A statement failed on group-derived input: always a bug, never a counterexample."""

    def __init__(self, report: VerificationReport):
        failed = report.failures()[0]
        super().__init__(f"{report.subject}: {failed.statement} failed: {failed.witness}")
        self.report = report


def _timed(fn: Callable[..., StatementResult]) -> Callable[..., StatementResult]:
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _same_partition(u: Sequence, v: Sequence) -> tuple[int, int] | None:
    """First index pair that u separates and v does not (or vice versa)."""
    n = len(u)
    first_u: dict = {}
    first_v: dict = {}
    for i in range(n):
        a = first_u.setdefault(u[i], i)
        b = first_v.setdefault(v[i], i)
        if a != b:
            return (min(a, b), i)
    return None


# -- the main statements ---------------------------------------------------

@_timed
def verify_theorem_main(F: FusionRing, pres: ChainGroupPresentation, classes: ChainClassPartition,
                        R: RestrictionMap) -> StatementResult:
    """C(G) -> dual of Z(G) is an isomorphism, checked through ker p_G = ker r_G."""
    name = "theorem_main"
    L = F.labels
    chars = R.characters
    ker_p = {i for i in range(F.rank) if pres.is_zero(i)}
    ker_r = {i for i in range(F.rank) if chars[i].is_trivial}
    if ker_p != ker_r:
        return StatementResult(name, FAIL, {
            "reason": "kernels differ",
            "only_in_ker_p": [L[i] for i in sorted(ker_p - ker_r)],
            "only_in_ker_r": [L[i] for i in sorted(ker_r - ker_p)]})
    sep = _same_partition(pres.projection, chars)
    if sep is not None:
        return StatementResult(name, FAIL, {"reason": "fibers of p_G and r_G differ",
                                            "labels": [L[sep[0]], L[sep[1]]]})
    induced: dict[int, CentralCharacter] = {}
    for i, c in enumerate(classes.class_of):
        if induced.setdefault(c, chars[i]) != chars[i]:
            return StatementResult(name, FAIL, {"reason": "r_G not constant on a chain class",
                                                "class": c, "label": L[i]})
    images = set(induced.values())
    if len(images) != len(induced) or len(images) != R.center.order:
        return StatementResult(name, FAIL, {"reason": "induced map is not a bijection",
                                            "classes": classes.class_count,
                                            "center_order": R.center.order})
    T = classes.product_table
    for a in range(classes.class_count):
        for b in range(classes.class_count):
            if induced[T[a][b]] != induced[a] + induced[b]:
                return StatementResult(name, FAIL, {"reason": "induced map is not a homomorphism",
                                                    "classes": [a, b]})
    if tuple(pres.invariant_factors) != tuple(R.center.invariant_factors) or pres.free_rank:
        return StatementResult(name, FAIL, {"reason": "invariant factors differ",
                                            "chain_group": list(pres.invariant_factors),
                                            "center": list(R.center.invariant_factors)})
    return StatementResult(name, PASS, {"invariant_factors": list(pres.invariant_factors),
                                        "order": R.center.order})


def compute_C0(F: FusionRing) -> frozenset[int]:
    """Labels generated by the constituents of X (x) dual(X), closed under products and duals."""
    found = {k for i in range(F.rank) for k in F.fuse(i, F.dual[i])}
    frontier = list(found)
    while frontier:
        a = frontier.pop()
        new = {F.dual[a]}
        for b in list(found):
            new.update(F.fuse(a, b))
            new.update(F.fuse(b, a))
        for k in new - found:
            found.add(k)
            frontier.append(k)
    return frozenset(found)


@_timed
def verify_prop_C0(F: FusionRing, R: RestrictionMap, C0: frozenset[int] | None = None
                   ) -> StatementResult:
    """C_0 equals the labels whose central character is trivial."""
    C0 = compute_C0(F) if C0 is None else C0
    trivial = {i for i, c in enumerate(R.characters) if c.is_trivial}
    if set(C0) != trivial:
        return StatementResult("prop_C0", FAIL, {
            "only_in_C0": [F.labels[i] for i in sorted(set(C0) - trivial)],
            "only_central_trivial": [F.labels[i] for i in sorted(trivial - set(C0))]})
    return StatementResult("prop_C0", PASS, {"C0": [F.labels[i] for i in sorted(C0)]})


@_timed
def verify_lemma_kernel(F: FusionRing, pres: ChainGroupPresentation,
                        C0: frozenset[int] | None = None) -> StatementResult:
    """p_G(X) = 1 exactly for X in C_0."""
    C0 = compute_C0(F) if C0 is None else C0
    kernel = {i for i in range(F.rank) if pres.is_zero(i)}
    if kernel != set(C0):
        return StatementResult("lemma_kernel", FAIL, {
            "only_in_kernel": [F.labels[i] for i in sorted(kernel - set(C0))],
            "only_in_C0": [F.labels[i] for i in sorted(set(C0) - kernel)]})
    return StatementResult("lemma_kernel", PASS, {"kernel_size": len(kernel)})


@_timed
def verify_tmap_basics(values: Sequence[tuple[int, ...]], moduli: Sequence[int], F: FusionRing,
                       name: str = "tmap_basics") -> StatementResult:
    """phi(unit) = 0 and phi(dual X) = -phi(X), for a map into a product of cyclic groups."""
    def neg(v):
        return tuple((-a) % m if m else -a for a, m in zip(v, moduli))
    if any(values[F.unit]):
        return StatementResult(name, FAIL, {"reason": "unit not sent to identity",
                                            "value": list(values[F.unit])})
    for i in range(F.rank):
        if tuple(values[F.dual[i]]) != neg(values[i]):
            return StatementResult(name, FAIL, {"reason": "dual not sent to inverse",
                                                "label": F.labels[i]})
    return StatementResult(name, PASS)


# -- t-maps into Z/m -------------------------------------------------------

def is_tmap(F: FusionRing, phi: Sequence[int], m: int) -> bool:
    return all((phi[i] + phi[j] - phi[k]) % m == 0 for i, j, k in F.triples())


def enumerate_tmaps(F: FusionRing, m: int, pres: ChainGroupPresentation) -> list[tuple[int, ...]]:
    """All t-maps into Z/m, as homomorphisms from the presented chain group.

    Each map is re-checked against the raw condition on N before it is returned.
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    choices = []
    for f in pres.moduli:
        g = gcd(f, m)  # gcd(0, m) = m for free factors
        choices.append([k * (m // g) for k in range(g)])
    out = []
    for h in product(*choices):
        phi = tuple(sum(c * x for c, x in zip(pres.projection[i], h)) % m for i in range(F.rank))
        if not is_tmap(F, phi, m):
            raise ArithmeticError(f"homomorphism {h} from the chain group gives a non-t-map")
        out.append(phi)
    return sorted(out)


def search_tmaps(F: FusionRing, m: int) -> list[tuple[int, ...]]:
    """All t-maps into Z/m by backtracking with constraint propagation.

    Works on the raw conditions phi(i) + phi(j) = phi(k) only; shares no
    code with the presentation route.
    """
    r = F.rank
    rows = set()
    for i, j, k in F.triples():
        row: dict[int, int] = {}
        for g, s in ((i, 1), (j, 1), (k, -1)):
            row[g] = row.get(g, 0) + s
        rows.add(tuple(sorted((g, c % m) for g, c in row.items() if c % m)))
    rows_list = [r_ for r_ in rows]
    if () in rows:
        rows_list.remove(())
    touching: list[list[int]] = [[] for _ in range(r)]
    for n, row in enumerate(rows_list):
        for g, _ in row:
            touching[g].append(n)
    solutions: list[tuple[int, ...]] = []

    def propagate(assign: list, start: list[int]) -> bool:
        queue = list(start)
        while queue:
            g = queue.pop()
            for n in touching[g]:
                row = rows_list[n]
                unknown = [(h, c) for h, c in row if assign[h] is None]
                known = sum(c * assign[h] for h, c in row if assign[h] is not None) % m
                if not unknown:
                    if known:
                        return False
                elif len(unknown) == 1:
                    h, c = unknown[0]
                    if gcd(c, m) == 1:
                        assign[h] = (-known) * pow(c, -1, m) % m
                        queue.append(h)
                    elif known % gcd(c, m):
                        return False
        return True

    def dfs(assign: list) -> None:
        try:
            g = assign.index(None)
        except ValueError:
            solutions.append(tuple(assign))
            return
        for v in range(m):
            trial = list(assign)
            trial[g] = v
            if propagate(trial, [g]):
                dfs(trial)

    start = [None] * r
    # single-variable rows (e.g. X (x) Y contains X, forcing phi(Y) = 0) fire first
    seeds = sorted({row[0][0] for row in rows_list if len(row) == 1})
    for g in seeds:
        for n in touching[g]:
            row = rows_list[n]
            if len(row) == 1 and gcd(row[0][1], m) == 1 and start[g] is None:
                start[g] = 0
    if propagate(start, [g for g in range(r) if start[g] is not None]):
        dfs(start)
    out = sorted(set(solutions))
    if any(not is_tmap(F, phi, m) for phi in out):
        raise ArithmeticError("search produced a non-t-map")
    return out


@_timed
def verify_universal_property(F: FusionRing, pres: ChainGroupPresentation, m: int) -> StatementResult:
    """Hom(C, Z/m) and the raw t-maps into Z/m are the same set, of size prod gcd(f_t, m)."""
    name = f"universal_property_m{m}"
    via_hom = enumerate_tmaps(F, m, pres)
    via_search = search_tmaps(F, m)
    expected = prod(gcd(f, m) for f in pres.moduli)
    if len(set(via_hom)) != len(via_hom):
        return StatementResult(name, FAIL, {"reason": "distinct homomorphisms give the same t-map"})
    if set(via_hom) != set(via_search) or len(via_hom) != expected:
        return StatementResult(name, FAIL, {"reason": "t-map sets differ",
                                            "from_presentation": len(via_hom),
                                            "from_search": len(via_search),
                                            "expected": expected})
    return StatementResult(name, PASS, {"count": expected})


@_timed
def verify_factorization(F: FusionRing, R: RestrictionMap, m: int,
                         tmaps: list[tuple[int, ...]]) -> StatementResult:
    """Every t-map into Z/m factors as beta o r_G with beta a homomorphism on the dual of Z(G)."""
    name = f"factorization_m{m}"
    if not R.is_surjective:
        return StatementResult(name, NA, {"reason": "r_G not surjective"})
    chars = R.characters
    expected = prod(gcd(mt, m) for mt in R.center.invariant_factors)
    if len(tmaps) != expected:
        return StatementResult(name, FAIL, {"reason": "t-map count differs from #Hom(dual Z, Z/m)",
                                            "tmaps": len(tmaps), "expected": expected})
    for phi in tmaps:
        beta: dict[CentralCharacter, int] = {}
        for i, c in enumerate(chars):
            if beta.setdefault(c, phi[i]) != phi[i]:
                return StatementResult(name, FAIL, {"reason": "beta not constant on an r_G fiber",
                                                    "tmap": list(phi), "label": F.labels[i]})
        for x in beta:
            for y in beta:
                if beta[x + y] != (beta[x] + beta[y]) % m:
                    return StatementResult(name, FAIL, {"reason": "beta is not a homomorphism",
                                                        "tmap": list(phi)})
        if any(beta[chars[i]] != phi[i] for i in range(F.rank)):
            return StatementResult(name, FAIL, {"reason": "beta o r_G != phi", "tmap": list(phi)})
    return StatementResult(name, PASS, {"count": expected})


@_timed
def verify_definition_equivalence(pres: ChainGroupPresentation, classes: ChainClassPartition,
                                  class_factors: Sequence[int]) -> StatementResult:
    ok = compare_chain_groups(pres, classes, class_factors)
    witness = {"presentation": list(pres.invariant_factors), "classes": list(class_factors)}
    return StatementResult("definition_equivalence", PASS if ok else FAIL, witness)


@_timed
def verify_restriction(R: RestrictionMap) -> StatementResult:
    ok = R.is_tmap and R.is_surjective
    return StatementResult("restriction_surjective_tmap", PASS if ok else FAIL,
                           {"is_tmap": R.is_tmap, "is_surjective": R.is_surjective})
