"""The center Z(G), its dual, and the restriction map sending an irrep to its central character."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Iterable, Sequence

from .charmod import ModularCharacterTable
from .fusion import FusionRing
from .groups import FiniteGroup
from .modp import inv
from .snf import present_abelian_group


class CenterError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroupStructure:
    invariant_factors: tuple[int, ...]
    generator_elements: tuple[int, ...]  # element indices in the ambient group

    @property
    def order(self) -> int:
        out = 1
        for m in self.invariant_factors:
            out *= m
        return out


@dataclass(frozen=True)
class CentralCharacter:
    """z_t -> (canonical root of order m_t) ** exponents[t]."""
    exponents: tuple[int, ...]
    moduli: tuple[int, ...]

    def __add__(self, other: CentralCharacter) -> CentralCharacter:
        return CentralCharacter(tuple((a + b) % m for a, b, m in
                                      zip(self.exponents, other.exponents, self.moduli)),
                                self.moduli)

    def __neg__(self) -> CentralCharacter:
        return CentralCharacter(tuple((-a) % m for a, m in zip(self.exponents, self.moduli)),
                                self.moduli)

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)


def abelian_invariants(G: FiniteGroup, S: Iterable[int]) -> AbelianGroupStructure:
    """Invariant factors of an abelian subgroup, with elements generating each cyclic factor."""
    elems = sorted(set(S))
    pos = {g: n for n, g in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            ab = G.mul(a, b)
            if ab not in pos:
                raise CenterError("subset is not closed under multiplication")
            if ab != G.mul(b, a):
                raise CenterError("subgroup is not abelian")
            row.append(pos[ab])
        table.append(row)
    if 0 not in pos:
        raise CenterError("subset does not contain the identity")
    ck = present_abelian_group(table)
    factors = ck.invariant_factors
    gens = []
    for t in range(len(factors)):
        unit = tuple(int(s == t) for s in range(len(factors)))
        hit = [elems[n] for n, c in enumerate(ck.coordinates) if c == unit]
        if len(hit) != 1:
            raise CenterError("coordinate map of the subgroup is not a bijection")
        gens.append(hit[0])
    Z = AbelianGroupStructure(factors, tuple(gens))
    for g, m in zip(Z.generator_elements, factors):
        if G.element_orders[g] != m:
            raise CenterError(f"generator {g} has order {G.element_orders[g]}, expected {m}")
    return Z


def central_character(i: int, T: ModularCharacterTable, Z: AbelianGroupStructure,
                      G: FiniteGroup) -> CentralCharacter:
    """Exponents of the Schur scalar chi_i(z_t) / d_i against the canonical root of order m_t."""
    p = T.p
    d_inv = inv(T.degrees[i], p)
    exps = []
    for z, m in zip(Z.generator_elements, Z.invariant_factors):
        c = G.classes.class_of[z]
        if len(G.classes.classes[c]) != 1:
            raise CenterError(f"element {z} is not central")
        omega = int(T.values[i, c]) * d_inv % p
        root = pow(T.zeta, T.exponent // m, p)
        x, e = 1, None
        for k in range(m):
            if x == omega:
                e = k
                break
            x = x * root % p
        if e is None:
            raise CenterError(f"Schur scalar {omega} of irrep {i} is not a power of the order-{m} root")
        exps.append(e)
    return CentralCharacter(tuple(exps), Z.invariant_factors)


@dataclass(frozen=True)
class RestrictionMap:
    characters: tuple[CentralCharacter, ...]
    is_tmap: bool
    is_surjective: bool
    center: AbelianGroupStructure


def restriction_tmap(G: FiniteGroup, T: ModularCharacterTable, F: FusionRing,
                     Z: AbelianGroupStructure | None = None) -> RestrictionMap:
    Z = Z or abelian_invariants(G, G.center)
    chars = tuple(central_character(i, T, Z, G) for i in range(T.num_irreps))
    is_tmap = all(chars[k] == chars[i] + chars[j] for i, j, k in F.triples())
    is_surjective = len(set(chars)) == Z.order
    return RestrictionMap(chars, is_tmap, is_surjective, Z)


def dual_group(Z: AbelianGroupStructure) -> list[CentralCharacter]:
    return [CentralCharacter(e, Z.invariant_factors)
            for e in product(*(range(m) for m in Z.invariant_factors))]


def abelianization_dual(F: FusionRing) -> tuple[int, ...]:
    """Invariant factors of the group of one-dimensional irreps under tensor product."""
    if F.degrees is None:
        raise ValueError("abelianization dual needs degree data")
    linear = [i for i, d in enumerate(F.degrees) if d == 1]
    pos = {i: n for n, i in enumerate(linear)}
    table = []
    for a in linear:
        row = []
        for b in linear:
            prod_ = F.fuse(a, b)
            if len(prod_) != 1 or next(iter(prod_.values())) != 1 or next(iter(prod_)) not in pos:
                raise ValueError(f"product of linear characters {a}, {b} is not linear: {prod_}")
            row.append(pos[next(iter(prod_))])
        table.append(row)
    return present_abelian_group(table).invariant_factors


def center_report(F: FusionRing, R: RestrictionMap, abelianization: Sequence[int]) -> dict[str, Any]:
    return {
        "center_invariants": list(R.center.invariant_factors),
        "generators": list(R.center.generator_elements),
        "r_G": {F.labels[i]: list(c.exponents) for i, c in enumerate(R.characters)},
        "abelianization_dual": list(abelianization),
    }
