"""Fusion rings: labels, unit, duality and sparse multiplicities N[i][j][k].

Group-derived rings come from a modular character table; others are read
from JSON. The SU(2) Clebsch-Gordan rule is available as a lazy oracle on
an infinite label set.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterator

import numpy as np
import scipy.sparse as sp

from .charmod import ModularCharacterTable
from .groups import ConjugacyClassPartition
from .modp import inv

FULL_SCAN_RANK = 256
SAMPLED_QUADRUPLES = 20000


class FusionAxiomError(ValueError):
    def __init__(self, message: str, violations: list[dict] | None = None):
        super().__init__(message)
        self.violations = violations or []


@dataclass(frozen=True, eq=False)
class FusionRing:
    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    # N[(i, j)] = {k: multiplicity}, only positive entries; missing pairs are empty
    N: dict[tuple[int, int], dict[int, int]]
    degrees: tuple[int, ...] | None = None
    name: str = ""

    @property
    def rank(self) -> int:
        return len(self.labels)

    def fuse(self, i: int, j: int) -> dict[int, int]:
        return self.N.get((i, j), {})

    def mult(self, i: int, j: int, k: int) -> int:
        return self.N.get((i, j), {}).get(k, 0)

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    def triples(self) -> Iterator[tuple[int, int, int]]:
        """All (i, j, k) with N[i][j][k] > 0, in index order."""
        for (i, j) in sorted(self.N):
            for k in sorted(self.N[(i, j)]):
                yield i, j, k

    @property
    def commutative(self) -> bool:
        return all(self.N.get((j, i), {}) == prod for (i, j), prod in self.N.items())

    def dense(self) -> np.ndarray:
        r = self.rank
        out = np.zeros((r, r, r), dtype=np.int64)
        for (i, j), prod in self.N.items():
            for k, n in prod.items():
                out[i, j, k] = n
        return out

    def to_json(self) -> dict[str, Any]:
        L = self.labels
        tensor = {}
        for (i, j) in sorted(self.N):
            tensor[f"{L[i]},{L[j]}"] = {L[k]: n for k, n in sorted(self.N[(i, j)].items())}
        out: dict[str, Any] = {
            "labels": list(L),
            "unit": L[self.unit],
            "dual": {L[i]: L[d] for i, d in enumerate(self.dual)},
            "tensor": tensor,
        }
        if self.degrees is not None:
            out["degrees"] = list(self.degrees)
        return out


@dataclass
class ValidationReport:
    violations: list[dict] = field(default_factory=list)
    sampled: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, **where: Any) -> None:
        self.violations.append({"axiom": axiom, **where})


def _associativity_violations(F: FusionRing, limit: int) -> list[dict]:
    """Compare (ij)k and i(jk) for all quadruples via two sparse products."""
    r = F.rank
    rows, cols, vals = [], [], []
    for (i, j), prod in F.N.items():
        for k, n in prod.items():
            rows.append(i * r + j)
            cols.append(k)
            vals.append(n)
    A = sp.csr_matrix((vals, (rows, cols)), shape=(r * r, r), dtype=np.int64)
    # B[m, k*r + l] = N[m][k][l]
    B = sp.csr_matrix((vals, ([x // r for x in rows], [(x % r) * r + c for x, c in zip(rows, cols)])),
                      shape=(r, r * r), dtype=np.int64)
    # C[m, i*r + l] = N[i][m][l]
    C = sp.csr_matrix((vals, ([x % r for x in rows], [(x // r) * r + c for x, c in zip(rows, cols)])),
                      shape=(r, r * r), dtype=np.int64)
    left = (A @ B).tocoo()    # rows (i, j), cols (k, l): sum_m N[i,j,m] N[m,k,l]
    right = (A @ C).tocoo()   # rows (j, k), cols (i, l): sum_m N[j,k,m] N[i,m,l]

    def keyed(M, swap):
        a, b = M.row // r, M.row % r
        c, d = M.col // r, M.col % r
        if swap:  # (j, k, i, l) -> (i, j, k, l)
            i, j, k, l = c, a, b, d
        else:
            i, j, k, l = a, b, c, d
        key = ((i * r + j) * r + k) * r + l
        keep = M.data != 0
        order = np.argsort(key[keep], kind="stable")
        return key[keep][order], M.data[keep][order]

    lk, lv = keyed(left, False)
    rk, rv = keyed(right, True)
    if np.array_equal(lk, rk) and np.array_equal(lv, rv):
        return []
    lmap = dict(zip(lk.tolist(), lv.tolist()))
    rmap = dict(zip(rk.tolist(), rv.tolist()))
    out = []
    for key in sorted(set(lmap) | set(rmap)):
        if lmap.get(key, 0) != rmap.get(key, 0):
            l = key % r
            k = key // r % r
            j = key // (r * r) % r
            i = key // (r * r * r)
            out.append({"axiom": "associativity", "i": i, "j": j, "k": k, "l": l,
                        "(ij)k": lmap.get(key, 0), "i(jk)": rmap.get(key, 0)})
            if len(out) >= limit:
                break
    return out


def _sampled_associativity(F: FusionRing, samples: int, limit: int, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    out = []
    for i, j, k in rng.integers(0, F.rank, size=(samples, 3)).tolist():
        left: dict[int, int] = {}
        for m, a in F.fuse(i, j).items():
            for l, b in F.fuse(m, k).items():
                left[l] = left.get(l, 0) + a * b
        right: dict[int, int] = {}
        for m, a in F.fuse(j, k).items():
            for l, b in F.fuse(i, m).items():
                right[l] = right.get(l, 0) + a * b
        if left != right:
            out.append({"axiom": "associativity", "i": i, "j": j, "k": k,
                        "(ij)k": left, "i(jk)": right})
            if len(out) >= limit:
                break
    return out


def validate_fusion_ring(F: FusionRing, *, dual_compatibility: bool = True,
                         full_scan_rank: int = FULL_SCAN_RANK,
                         samples: int = SAMPLED_QUADRUPLES, limit: int = 50) -> ValidationReport:
    report = ValidationReport()
    r, u = F.rank, F.unit
    if not 0 <= u < r:
        report.add("unit", detail=f"unit index {u} out of range")
        return report
    if sorted(F.dual) != list(range(r)) or any(F.dual[F.dual[i]] != i for i in range(r)):
        report.add("dual", detail="dual is not an involution on labels")
        return report
    for (i, j), prod in F.N.items():
        for k, n in prod.items():
            if not (0 <= i < r and 0 <= j < r and 0 <= k < r):
                report.add("range", i=i, j=j, k=k)
            elif not isinstance(n, (int, np.integer)) or n <= 0:
                report.add("multiplicity", i=i, j=j, k=k, value=n)
    if not report.ok:
        return report
    for j in range(r):
        if F.fuse(u, j) != {j: 1}:
            report.add("unit", side="left", j=j, got=F.fuse(u, j))
        if F.fuse(j, u) != {j: 1}:
            report.add("unit", side="right", j=j, got=F.fuse(j, u))
    for i in range(r):
        for j in range(r):
            n = F.mult(i, j, u)
            want = 1 if j == F.dual[i] else 0
            if n != want:
                report.add("duality", i=i, j=j, expected=want, got=n)
    if dual_compatibility:
        d = F.dual
        for (i, j), prod in F.N.items():
            for k, n in prod.items():
                if F.mult(d[k], i, d[j]) != n:
                    report.add("dual_compatibility", i=i, j=j, k=k)
    if r <= full_scan_rank:
        report.violations.extend(_associativity_violations(F, limit))
    else:
        report.sampled = True
        report.violations.extend(_sampled_associativity(F, samples, limit))
    return report


def checked(F: FusionRing, **kwargs: Any) -> FusionRing:
    report = validate_fusion_ring(F, **kwargs)
    if not report.ok:
        first = report.violations[0]
        raise FusionAxiomError(f"{F.name or 'fusion ring'}: {first['axiom']} violated at {first}",
                               report.violations)
    return F


def dimension_violations(F: FusionRing) -> list[tuple[int, int]]:
    """Pairs (i, j) where sum_k N[i][j][k] d_k != d_i d_j."""
    d = F.degrees
    if d is None:
        raise ValueError("ring carries no degree data")
    return [(i, j) for i in range(F.rank) for j in range(F.rank)
            if sum(n * d[k] for k, n in F.fuse(i, j).items()) != d[i] * d[j]]


def fusion_from_character_table(T: ModularCharacterTable, P: ConjugacyClassPartition | None = None,
                                order: int | None = None, *, name: str = "") -> FusionRing:
    p = T.p
    order = order if order is not None else T.order
    if p <= 2 * order:
        raise ValueError(f"prime {p} too small for lifting multiplicities of a group of order {order}")
    sizes = np.array(P.sizes if P is not None else T.class_sizes, dtype=np.int64)
    inv_cls = list(P.inverse_class if P is not None else T.inverse_class)
    V = T.values
    r = V.shape[0]
    conj = V[:, inv_cls]
    w = sizes * inv(order, p) % p
    labels = tuple(f"chi{i}" for i in range(r))
    N: dict[tuple[int, int], dict[int, int]] = {}
    for i in range(r):
        # X[j, c] = |C_c| chi_i(c) chi_j(c) / |G|
        X = V[i] * w % p * V % p
        M = X @ conj.T % p  # M[j, k]
        if M.max(initial=0) > order:
            bad = np.argwhere(M > order)[0]
            raise ValueError(f"lifted multiplicity N[{i}][{bad[0]}][{bad[1]}] = "
                             f"{M[tuple(bad)]} exceeds |G| = {order}: inconsistent table")
        for j, k in np.argwhere(M > 0).tolist():
            N.setdefault((i, j), {})[k] = int(M[j, k])
    dual = []
    for i in range(r):
        ks = [k for k in range(r) if N.get((i, k), {}).get(0, 0) == 1]
        if len(ks) != 1:
            raise FusionAxiomError(f"irrep {i} has {len(ks)} candidate duals")
        dual.append(ks[0])
    F = FusionRing(labels, 0, tuple(dual), N, degrees=tuple(T.degrees), name=name)
    return checked(F)


def fusion_from_json(data: dict[str, Any], *, name: str = "") -> FusionRing:
    """Parse the fusion-ring JSON schema and validate the axioms."""
    try:
        labels = tuple(str(x) for x in data["labels"])
        pos = {l: i for i, l in enumerate(labels)}
        if len(pos) != len(labels):
            raise FusionAxiomError("duplicate labels")
        unit = pos[data["unit"]]
        dual_map = data.get("dual", {l: l for l in labels})
        dual = tuple(pos[dual_map[l]] for l in labels)
        commutative = bool(data.get("commutative", False))
        N: dict[tuple[int, int], dict[int, int]] = {}
        for key, prod in data.get("tensor", {}).items():
            a, b = (pos[s.strip()] for s in key.split(","))
            entry = {pos[k]: int(n) for k, n in prod.items() if int(n) != 0}
            for pair in ({(a, b), (b, a)} if commutative else {(a, b)}):
                if pair in N and N[pair] != entry:
                    raise FusionAxiomError(f"conflicting entries for {key}")
                N[pair] = entry
        degrees = data.get("degrees")
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, FusionAxiomError):
            raise
        raise FusionAxiomError(f"malformed fusion ring: {exc!r}") from None
    for j in range(len(labels)):
        N.setdefault((unit, j), {j: 1})
        N.setdefault((j, unit), {j: 1})
    N = {k: v for k, v in N.items() if v}
    F = FusionRing(labels, unit, dual, N,
                   degrees=tuple(int(x) for x in degrees) if degrees is not None else None,
                   name=name or str(data.get("name", "")))
    return checked(F)


def fusion_from_file(path: str | Path) -> FusionRing:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FusionAxiomError(f"{path}: not valid JSON ({exc})") from None
    return fusion_from_json(data, name=data.get("name") or path.stem)


def group_ring_of_cyclic(n: int) -> FusionRing:
    """Fusion ring of Rep(Z/n): labels 0..n-1 under addition."""
    labels = tuple(str(i) for i in range(n))
    N = {(i, j): {(i + j) % n: 1} for i in range(n) for j in range(n)}
    return FusionRing(labels, 0, tuple((-i) % n for i in range(n)), N,
                      degrees=(1,) * n, name=f"Z/{n}")


# -- lazy oracles ----------------------------------------------------------

@dataclass(frozen=True)
class FusionOracle:
    """A fusion rule on a possibly infinite, lazily enumerated label set.

    ``labels()`` enumerates the universe in level order; ``level`` assigns
    each label the first truncation level containing it.
    """
    name: str
    unit: Any
    fuse: Callable[[Any, Any], dict[Any, int]]
    dual: Callable[[Any], Any]
    labels: Callable[[], Iterator[Any]]
    level: Callable[[Any], int]
    commutative: bool = True

    def window(self, level: int) -> list:
        out = []
        for label in self.labels():
            if self.level(label) > level:
                break
            out.append(label)
        return out


def _count_up() -> Iterator[int]:
    n = 0
    while True:
        yield n
        n += 1


def su2_fusion_oracle() -> FusionOracle:
    """Clebsch-Gordan rule on doubled spins: a x b = |a-b| + (|a-b|+2) + ... + (a+b)."""
    return FusionOracle(
        name="SU(2)",
        unit=0,
        fuse=lambda a, b: {c: 1 for c in range(abs(a - b), a + b + 1, 2)},
        dual=lambda a: a,
        labels=_count_up,
        level=lambda a: a,
    )


def oracle_from_ring(F: FusionRing) -> FusionOracle:
    """Present a finite ring lazily; its whole label set sits at level 0."""
    return FusionOracle(
        name=F.name,
        unit=F.unit,
        fuse=F.fuse,
        dual=lambda i: F.dual[i],
        labels=lambda: iter(range(F.rank)),
        level=lambda i: 0,
        commutative=F.commutative,
    )


def ring_from_oracle(oracle: FusionOracle, level: int) -> tuple[list, dict]:
    """Labels of a truncation window and the fusion data with all participants inside it."""
    labels = oracle.window(level)
    inside = set(labels)
    data = {}
    for a in labels:
        for b in labels:
            prod = {c: n for c, n in oracle.fuse(a, b).items() if c in inside}
            if prod:
                data[(a, b)] = prod
    return labels, data

