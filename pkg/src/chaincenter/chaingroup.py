"""The chain group of a fusion ring, computed two independent ways.

* Presentation route: the free abelian group on the labels modulo
  x_k = x_i + x_j whenever N[i][j][k] > 0, reduced with Smith normal form.
* Equivalence-class route: labels merged by union-find whenever they occur in
  a common tensor product, closed under the product congruence.

The two routes share nothing beyond the fusion ring, so agreement between
them is a real check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .fusion import FusionOracle, FusionRing
from .snf import Cokernel, RowLattice, SmithDecomposition, cokernel, present_abelian_group


class WellDefinednessViolation(ValueError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True, eq=False)
class ChainGroupPresentation:
    generator_labels: tuple
    relations: tuple[tuple[tuple[int, int], ...], ...]  # sparse rows, sorted (col, coef)
    invariant_factors: tuple[int, ...]
    free_rank: int
    projection: tuple[tuple[int, ...], ...]
    smith: SmithDecomposition

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.invariant_factors + (0,) * self.free_rank

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def relation_matrix(self) -> list[list[int]]:
        n = len(self.generator_labels)
        out = []
        for row in self.relations:
            dense = [0] * n
            for c, x in row:
                dense[c] = x
            out.append(dense)
        return out

    def is_zero(self, i: int) -> bool:
        return not any(self.projection[i])

    def fibers(self) -> list[list[int]]:
        groups: dict[tuple[int, ...], list[int]] = {}
        for i, v in enumerate(self.projection):
            groups.setdefault(v, []).append(i)
        return sorted(groups.values())

    def add(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % m if m else a + b for a, b, m in zip(u, v, self.moduli))

    def neg(self, u: Sequence[int]) -> tuple[int, ...]:
        return tuple((-a) % m if m else -a for a, m in zip(u, self.moduli))

    def report(self, stabilized: bool | None = None,
               classes: dict[str, int] | None = None) -> dict[str, Any]:
        if classes is None:
            ids = {v: n for n, v in enumerate(dict.fromkeys(self.projection))}
            classes = {str(l): ids[v] for l, v in zip(self.generator_labels, self.projection)}
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "classes": classes,
            "stabilized": stabilized,
        }


def _relation_row(i: int, j: int, k: int) -> tuple[tuple[int, int], ...]:
    row: dict[int, int] = {}
    for g, s in ((i, 1), (j, 1), (k, -1)):
        row[g] = row.get(g, 0) + s
    return tuple(sorted((c, x) for c, x in row.items() if x))


def _presentation(labels: Sequence, relations: Sequence[tuple[tuple[int, int], ...]],
                  lattice: RowLattice | None = None) -> ChainGroupPresentation:
    n = len(labels)
    if lattice is None:
        lattice = RowLattice(n)
        for row in relations:
            lattice.insert(dict(row))
    ck: Cokernel = cokernel(lattice, n)
    return ChainGroupPresentation(tuple(labels), tuple(relations), ck.invariant_factors,
                                  ck.free_rank, ck.coordinates, ck.smith)


def chain_group_snf(F: FusionRing) -> ChainGroupPresentation:
    relations = sorted({_relation_row(i, j, k) for i, j, k in F.triples()})
    return _presentation(F.labels, relations)


# -- equivalence classes ---------------------------------------------------

class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return True


@dataclass(frozen=True)
class ChainClassPartition:
    class_of: tuple[int, ...]
    class_count: int
    product_table: tuple[tuple[int, ...], ...]
    inverse_of: tuple[int, ...]
    unit_class: int

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.class_count)]
        for i, c in enumerate(self.class_of):
            out[c].append(i)
        return out


def chain_classes_bl(F: FusionRing) -> ChainClassPartition:
    r = F.rank
    uf = UnionFind(r)
    for prod in F.N.values():
        ks = list(prod)
        for k in ks[1:]:
            uf.union(ks[0], k)
    # congruence closure: a ~ a' forces outputs of a*b and a'*b together
    some_output = {pair: next(iter(prod)) for pair, prod in F.N.items() if prod}
    changed = True
    while changed:
        changed = False
        for b in range(r):
            seen: dict[int, int] = {}
            for a in range(r):
                out = some_output.get((a, b))
                if out is None:
                    continue
                root = uf.find(a)
                if root in seen:
                    changed |= uf.union(seen[root], out)
                else:
                    seen[root] = out
    roots = {}
    class_of = []
    for i in range(r):
        class_of.append(roots.setdefault(uf.find(i), len(roots)))
    h = len(roots)
    table: list[list[int | None]] = [[None] * h for _ in range(h)]
    for (a, b), prod in F.N.items():
        ca, cb = class_of[a], class_of[b]
        for k in prod:
            ck = class_of[k]
            if table[ca][cb] is None:
                table[ca][cb] = ck
            elif table[ca][cb] != ck:
                raise WellDefinednessViolation(
                    f"class product depends on representatives: {F.labels[a]} * {F.labels[b]}",
                    {"a": F.labels[a], "b": F.labels[b], "classes": [ca, cb],
                     "products": [table[ca][cb], ck]})
    if any(x is None for row in table for x in row):
        raise WellDefinednessViolation("class product table has empty entries")
    unit = class_of[F.unit]
    inverse_of = [None] * h
    for i in range(r):
        c, cd = class_of[i], class_of[F.dual[i]]
        if inverse_of[c] is None:
            inverse_of[c] = cd
        elif inverse_of[c] != cd:
            raise WellDefinednessViolation("inverse via duals depends on representative",
                                           {"label": F.labels[i]})
    for c in range(h):
        if table[c][inverse_of[c]] != unit or table[unit][c] != c:
            raise WellDefinednessViolation("dual classes do not invert in the product table",
                                           {"class": c})
    return ChainClassPartition(tuple(class_of), h, tuple(tuple(row) for row in table),
                               tuple(inverse_of), unit)


def class_group_structure(P: ChainClassPartition) -> tuple[int, ...]:
    h = P.class_count
    T = P.product_table
    for a in range(h):
        for b in range(h):
            if T[a][b] != T[b][a]:
                raise WellDefinednessViolation("class product is not commutative", {"a": a, "b": b})
            for c in range(h):
                if T[T[a][b]][c] != T[a][T[b][c]]:
                    raise WellDefinednessViolation("class product is not associative",
                                                   {"a": a, "b": b, "c": c})
    return present_abelian_group(T).invariant_factors


def compare_chain_groups(A: ChainGroupPresentation, P: ChainClassPartition,
                         factors: Sequence[int] | None = None) -> bool:
    """Do the presentation and the class partition describe the same group and map?"""
    if A.free_rank:
        raise ValueError("presentation has a free part; finite rings always give a finite group")
    factors = tuple(factors) if factors is not None else class_group_structure(P)
    if tuple(A.invariant_factors) != tuple(factors):
        return False
    n = len(A.projection)
    if len(P.class_of) != n:
        return False
    return all((A.projection[i] == A.projection[j]) == (P.class_of[i] == P.class_of[j])
               for i in range(n) for j in range(i + 1, n))


# -- truncation for lazily presented rings ---------------------------------

@dataclass
class TruncationReport:
    oracle: str
    levels: list[int] = field(default_factory=list)
    presentations: list[ChainGroupPresentation] = field(default_factory=list)
    stabilized: bool | None = None

    def to_json(self) -> dict[str, Any]:
        per_level = []
        for level, pres in zip(self.levels, self.presentations):
            entry = pres.report(None)
            entry["level"] = level
            entry["generators"] = [str(l) for l in pres.generator_labels]
            del entry["stabilized"]
            per_level.append(entry)
        last = self.presentations[-1].report(self.stabilized) if self.presentations else {}
        return {"oracle": self.oracle, **last, "levels": per_level}


def _compatible(prev: ChainGroupPresentation, cur: ChainGroupPresentation) -> bool:
    if prev.invariant_factors != cur.invariant_factors or prev.free_rank != cur.free_rank:
        return False
    pos = {l: i for i, l in enumerate(cur.generator_labels)}
    shared = [(i, pos[l]) for i, l in enumerate(prev.generator_labels) if l in pos]
    return all((prev.projection[a] == prev.projection[b]) == (cur.projection[x] == cur.projection[y])
               for n, (a, x) in enumerate(shared) for (b, y) in shared[n + 1:])


def truncated_chain_group(oracle: FusionOracle, L: int) -> TruncationReport:
    """Presentations of the truncation windows 1..L.

    A relation enters a window only if all three labels lie inside it, so
    each truncated group maps canonically onto the true chain group.
    Stability of the last two windows is reported, not proven.
    """
    if L < 1:
        raise ValueError("truncation level must be >= 1")
    report = TruncationReport(oracle.name)
    labels: list = []
    pos: dict = {}
    lattice = RowLattice(0)
    relations: set = set()
    for level in range(1, L + 1):
        window = oracle.window(level)
        new = [l for l in window if l not in pos]
        for l in new:
            pos[l] = len(labels)
            labels.append(l)
        lattice.ncols = len(labels)
        # only products with a new participant can contribute new relations
        for a in labels:
            for b in labels:
                if oracle.commutative and pos[b] < pos[a]:
                    continue
                fresh = a in new or b in new
                for c in oracle.fuse(a, b):
                    if c in pos and (fresh or c in new):
                        row = _relation_row(pos[a], pos[b], pos[c])
                        if row not in relations:
                            relations.add(row)
                            lattice.insert(dict(row))
        pres = _presentation(labels, sorted(relations), lattice)
        report.levels.append(level)
        report.presentations.append(pres)
    if len(report.presentations) >= 2:
        report.stabilized = _compatible(report.presentations[-2], report.presentations[-1])
    return report
