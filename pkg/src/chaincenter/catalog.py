"""Built-in catalog of groups run by ``verify-all``."""
from __future__ import annotations

from .groups import spec_label, spec_order


def named(name: str, *params: int) -> dict:
    return {"type": "named", "name": name, "params": list(params)}


def product(*factors: dict) -> dict:
    return {"type": "product", "factors": list(factors)}


def _build() -> list[dict]:
    entries = [named("cyclic", n) for n in (2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 24, 30, 32)]
    entries += [named("dihedral", m) for m in (3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32, 64, 128, 256)]
    entries += [named("dicyclic", m) for m in (2, 3, 4, 5, 6, 8, 10, 12, 16, 32, 64, 128)]
    entries += [named("symmetric", n) for n in (3, 4, 5, 6)]
    entries += [named("alternating", n) for n in (4, 5, 6)]
    entries += [named("klein4"), named("sl23")]
    entries += [
        product(named("symmetric", 3), named("cyclic", 2)),
        product(named("dicyclic", 2), named("cyclic", 3)),
        product(named("klein4"), named("cyclic", 4)),
        product(named("dicyclic", 2), named("cyclic", 2), named("cyclic", 2)),
        product(named("symmetric", 3), named("symmetric", 3)),
        product(named("alternating", 4), named("cyclic", 3)),
        product(named("symmetric", 4), named("cyclic", 2)),
        product(named("sl23"), named("cyclic", 2)),
        product(named("sl23"), named("cyclic", 4)),
        product(named("dihedral", 4), named("dicyclic", 2)),
        product(named("dicyclic", 2), named("dicyclic", 2)),
        product(named("dicyclic", 4), named("cyclic", 3)),
        product(named("symmetric", 4), named("symmetric", 3)),
        product(named("alternating", 5), named("cyclic", 2)),
        product(named("symmetric", 5), named("cyclic", 2)),
        product(named("alternating", 5), named("symmetric", 3)),
        product(named("sl23"), named("dicyclic", 2)),
        product(named("dihedral", 3), named("dicyclic", 3), named("cyclic", 2)),
    ]
    return entries


CATALOG: tuple[dict, ...] = tuple(_build())


def dq_pairs(max_l: int = 6) -> list[tuple[int, dict, dict]]:
    """Dihedral and dicyclic groups of order 8l: same representation ring, different groups."""
    return [(l, named("dihedral", 4 * l), named("dicyclic", 2 * l)) for l in range(1, max_l + 1)]


def catalog_listing() -> list[dict]:
    return [{"label": spec_label(s), "order": spec_order(s), "spec": s} for s in CATALOG]
