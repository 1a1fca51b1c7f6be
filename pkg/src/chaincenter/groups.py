"""Finite permutation groups: enumeration, conjugacy classes, center, catalog.

Elements are stored as tuples of images (``p[i]`` is the image of ``i``).
The product ``g * h`` is function composition ``g(h(x))``, so ``h`` acts first.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from math import lcm, prod
from typing import Any, Iterable, Sequence

Permutation = tuple[int, ...]

DEFAULT_ORDER_BOUND = 10000
DEFAULT_DEGREE_BOUND = 10000


class GroupError(ValueError):
    """Invalid group input (unknown catalog name, bad parameters, bad generators)."""


class OrderBoundExceeded(GroupError):
    pass


def is_permutation(images: Sequence[int]) -> bool:
    n = len(images)
    return sorted(images) == list(range(n))


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def compose(g: Permutation, h: Permutation) -> Permutation:
    """``g * h``: apply ``h`` first, then ``g``."""
    return tuple(g[x] for x in h)


def inverse(g: Permutation) -> Permutation:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def perm_order(g: Permutation) -> int:
    seen = [False] * len(g)
    order = 1
    for start in range(len(g)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = g[x]
            length += 1
        order = lcm(order, length)
    return order


def from_cycles(degree: int, *cycles: Sequence[int]) -> Permutation:
    images = list(range(degree))
    for cycle in cycles:
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            images[a] = b
    return tuple(images)


@dataclass(frozen=True)
class ConjugacyClassPartition:
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    inverse_class: tuple[int, ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


class FiniteGroup:
    """A permutation group given by generators, with lazily enumerated elements.

    The element list is a breadth-first closure under right multiplication
    by the generators, identity first. Everything derived from it (classes,
    center, exponent) is cached on first use; instances are never mutated.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], *,
                 name: str | None = None, order_bound: int = DEFAULT_ORDER_BOUND):
        if degree < 1:
            raise GroupError(f"degree must be positive, got {degree}")
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != degree or not is_permutation(g):
                raise GroupError(f"generator {list(g)} is not a permutation of degree {degree}")
            gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name or f"perm{degree}"
        self.order_bound = order_bound

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, degree={self.degree})"

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return enumerate_elements(self)

    @cached_property
    def index(self) -> dict[Permutation, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.index[compose(self.elements[i], self.elements[j])]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(self.index[inverse(g)] for g in self.elements)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(perm_order(g) for g in self.elements)

    @cached_property
    def classes(self) -> ConjugacyClassPartition:
        return conjugacy_classes(self)

    @cached_property
    def center(self) -> frozenset[int]:
        return center(self)

    @cached_property
    def exponent(self) -> int:
        return exponent(self)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)

    def power_classes(self, k: int) -> tuple[int, ...]:
        """Class index of ``rep**t`` for t = 0..o-1, o the order of the k-th class rep."""
        P = self.classes
        g = self.elements[P.representatives[k]]
        out = []
        x = identity(self.degree)
        for _ in range(self.element_orders[P.representatives[k]]):
            out.append(P.class_of[self.index[x]])
            x = compose(x, g)
        return tuple(out)


def enumerate_elements(G: FiniteGroup) -> tuple[Permutation, ...]:
    e = identity(G.degree)
    seen = {e}
    elements = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in G.generators:
            h = compose(g, s)
            if h not in seen:
                seen.add(h)
                elements.append(h)
                if len(elements) > G.order_bound:
                    raise OrderBoundExceeded(
                        f"{G.name}: more than {G.order_bound} elements")
                queue.append(h)
    return tuple(elements)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClassPartition:
    elements, index = G.elements, G.index
    gens = [(s, inverse(s)) for s in G.generators]
    class_of = [-1] * len(elements)
    classes = []
    for start in range(len(elements)):
        if class_of[start] >= 0:
            continue
        cid = len(classes)
        class_of[start] = cid
        orbit = [start]
        queue = deque([elements[start]])
        while queue:
            x = queue.popleft()
            for s, s_inv in gens:
                y = compose(compose(s, x), s_inv)
                j = index[y]
                if class_of[j] < 0:
                    class_of[j] = cid
                    orbit.append(j)
                    queue.append(y)
        classes.append(tuple(sorted(orbit)))
    reps = tuple(c[0] for c in classes)
    inv = G.inverses
    inverse_class = tuple(class_of[inv[r]] for r in reps)
    return ConjugacyClassPartition(tuple(classes), reps, inverse_class, tuple(class_of))


def center(G: FiniteGroup) -> frozenset[int]:
    gens = G.generators
    return frozenset(i for i, g in enumerate(G.elements)
                     if all(compose(g, s) == compose(s, g) for s in gens))


def exponent(G: FiniteGroup) -> int:
    return reduce(lcm, G.element_orders, 1)


def direct_product(G: FiniteGroup, H: FiniteGroup, *,
                   degree_bound: int = DEFAULT_DEGREE_BOUND,
                   order_bound: int | None = None) -> FiniteGroup:
    n, m = G.degree, H.degree
    if n + m > degree_bound:
        raise OrderBoundExceeded(f"product degree {n + m} exceeds {degree_bound}")
    bound = order_bound if order_bound is not None else max(G.order_bound, H.order_bound)
    gens = [tuple(g) + tuple(range(n, n + m)) for g in G.generators]
    gens += [tuple(range(n)) + tuple(x + n for x in h) for h in H.generators]
    return FiniteGroup(n + m, gens, name=f"{G.name} x {H.name}", order_bound=bound)


# -- catalog ---------------------------------------------------------------

def _regular(order: int, mul, gens: Sequence[int], name: str, bound: int) -> FiniteGroup:
    """Left regular representation of an abstract group on ``range(order)``."""
    perms = [tuple(mul(g, h) for h in range(order)) for g in gens]
    return FiniteGroup(order, perms, name=name, order_bound=bound)


def cyclic(m: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    return FiniteGroup(m, [tuple((i + 1) % m for i in range(m))], name=f"C{m}", order_bound=bound)


def dihedral(m: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Dihedral group of order 2m."""
    name = f"D{2 * m}"
    if m < 3:
        # (k, e) ~ r^k s^e, index k + m*e
        def mul(a, b):
            k, e = a % m, a // m
            l, f = b % m, b // m
            return ((k + (-l if e else l)) % m) + m * ((e + f) % 2)
        return _regular(2 * m, mul, [1 % m if m > 1 else 0, m], name, bound)
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return FiniteGroup(m, [rot, ref], name=name, order_bound=bound)


def dicyclic(m: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Dicyclic group <a, x | a^2m, x^2 = a^m, x a x^-1 = a^-1> of order 4m."""
    n = 2 * m

    def mul(u, v):
        k, e = u % n, u // n
        l, f = v % n, v // n
        k = k + (-l if e else l)
        if e + f == 2:
            k += m
        return (k % n) + n * ((e + f) % 2)
    return _regular(4 * m, mul, [1 % n, n], f"Dic{4 * m}", bound)


def symmetric(n: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    gens = []
    if n >= 2:
        gens = [from_cycles(n, (0, 1)), from_cycles(n, tuple(range(n)))]
    return FiniteGroup(n, gens, name=f"S{n}", order_bound=bound)


def alternating(n: int, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    gens = [from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return FiniteGroup(n, gens, name=f"A{n}", order_bound=bound)


def klein4(bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    return FiniteGroup(4, [from_cycles(4, (0, 1), (2, 3)), from_cycles(4, (0, 2), (1, 3))],
                       name="V4", order_bound=bound)


def sl23(bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """SL(2,3) acting on the eight nonzero vectors of F_3^2."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def act(M):
        return tuple(pos[((M[0][0] * x + M[0][1] * y) % 3, (M[1][0] * x + M[1][1] * y) % 3)]
                     for x, y in vecs)
    return FiniteGroup(8, [act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))],
                       name="SL(2,3)", order_bound=bound)


_FAMILIES: dict[str, tuple[int, Any, Any]] = {
    # name: (number of params, order formula, constructor)
    "cyclic": (1, lambda m: m, cyclic),
    "dihedral": (1, lambda m: 2 * m, dihedral),
    "dicyclic": (1, lambda m: 4 * m, dicyclic),
    "symmetric": (1, lambda n: prod(range(1, n + 1)), symmetric),
    "alternating": (1, lambda n: max(1, prod(range(1, n + 1)) // 2), alternating),
    "klein4": (0, lambda: 4, klein4),
    "sl23": (0, lambda: 24, sl23),
}

CATALOG_NAMES = tuple(_FAMILIES)


def family_order(name: str, params: Sequence[int]) -> int:
    nparams, order, _ = _family(name, params)
    return order(*params)


def _family(name: str, params: Sequence[int]):
    if name not in _FAMILIES:
        raise GroupError(f"unknown group family {name!r}; known: {', '.join(CATALOG_NAMES)}")
    entry = _FAMILIES[name]
    if len(params) != entry[0]:
        raise GroupError(f"{name} takes {entry[0]} parameter(s), got {len(params)}")
    if any(not isinstance(p, int) or isinstance(p, bool) or p < 1 for p in params):
        raise GroupError(f"{name}: parameters must be positive integers, got {list(params)}")
    return entry


def make_named_group(name: str, params: Sequence[int] = (), *,
                     order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    _, order, build = _family(name, params)
    if order(*params) > order_bound:
        raise OrderBoundExceeded(
            f"{name}{tuple(params)} has order {order(*params)} > bound {order_bound}")
    return build(*params, bound=order_bound)


def group_from_spec(spec: dict, *, order_bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Build a group from its JSON spec (``permutation``, ``named`` or ``product``)."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise GroupError(f"group spec must be an object with a 'type' field: {spec!r}")
    kind = spec["type"]
    if kind == "permutation":
        try:
            return FiniteGroup(int(spec["degree"]), spec["generators"],
                               name=spec.get("name"), order_bound=order_bound)
        except (KeyError, TypeError) as exc:
            raise GroupError(f"bad permutation spec: {exc}") from None
    if kind == "named":
        return make_named_group(spec.get("name", ""), list(spec.get("params", [])),
                                order_bound=order_bound)
    if kind == "product":
        factors = spec.get("factors") or []
        if not factors:
            raise GroupError("product spec needs at least one factor")
        groups = [group_from_spec(f, order_bound=order_bound) for f in factors]
        if prod(spec_order(f) for f in factors) > order_bound:
            raise OrderBoundExceeded(f"product order exceeds bound {order_bound}")
        return reduce(lambda a, b: direct_product(a, b, order_bound=order_bound), groups)
    raise GroupError(f"unknown group spec type {kind!r}")


def spec_order(spec: dict) -> int:
    """Order of the group a spec describes, without enumerating when avoidable."""
    kind = spec.get("type")
    if kind == "named":
        return family_order(spec.get("name", ""), list(spec.get("params", [])))
    if kind == "product":
        return prod(spec_order(f) for f in spec.get("factors", []))
    return group_from_spec(spec).order


def spec_label(spec: dict) -> str:
    kind = spec.get("type")
    if kind == "named":
        params = spec.get("params", [])
        return spec["name"] + ("(" + ",".join(map(str, params)) + ")" if params else "")
    if kind == "product":
        return " x ".join(spec_label(f) for f in spec["factors"])
    return spec.get("name") or f"perm{spec.get('degree')}"
