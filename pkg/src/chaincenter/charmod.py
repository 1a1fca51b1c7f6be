"""Character tables over F_p by simultaneous diagonalization of class matrices.

The prime is chosen with p = 1 (mod exponent) and p > 2|G|, so every
character value is the image of a sum of roots of unity in F_p and every
integer we later lift (degrees, fusion multiplicities) is pinned down by its
residue.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt
from typing import Any

import numpy as np

from .groups import ConjugacyClassPartition, FiniteGroup
from .modp import (charpoly, inv, is_prime, mult_order, nullspace, root_of_unity,
                   roots_cantor_zassenhaus, roots_exhaustive, rref)

EXHAUSTIVE_ROOT_LIMIT = 64
DEFAULT_SEED = 20240601


class CharacterTableError(RuntimeError):
    pass


class SplittingError(CharacterTableError):
    """Common eigenspaces of the class matrices could not be separated."""


@dataclass(frozen=True)
class ClassAlgebraConstants:
    # a[i, j, k] = #{(x, y) : x in C_i, y in C_j, x*y = rep(C_k)}
    a: np.ndarray


@dataclass(frozen=True, eq=False)
class ModularCharacterTable:
    p: int
    zeta: int
    exponent: int
    class_sizes: tuple[int, ...]
    inverse_class: tuple[int, ...]
    degrees: tuple[int, ...]
    values: np.ndarray  # (irrep, class), entries in [0, p)

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    @property
    def num_irreps(self) -> int:
        return len(self.degrees)

    def to_json(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "zeta": self.zeta,
            "class_sizes": list(self.class_sizes),
            "inverse_class": list(self.inverse_class),
            "degrees": list(self.degrees),
            "values": self.values.tolist(),
        }


def table_from_json(data: dict[str, Any] | str) -> ModularCharacterTable:
    """Ingest an externally computed table; rejects it unless orthogonality holds."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        p, zeta = int(data["p"]), int(data["zeta"])
        sizes = tuple(int(x) for x in data["class_sizes"])
        inv_cls = tuple(int(x) for x in data["inverse_class"])
        degrees = tuple(int(x) for x in data["degrees"])
        values = np.array(data["values"], dtype=np.int64).reshape(len(degrees), len(sizes)) % p
    except (KeyError, TypeError, ValueError) as exc:
        raise CharacterTableError(f"malformed character table: {exc}") from None
    if not is_prime(p):
        raise CharacterTableError(f"p = {p} is not prime")
    if len(degrees) != len(sizes) or len(inv_cls) != len(sizes):
        raise CharacterTableError("table must be square with one inverse_class entry per class")
    T = ModularCharacterTable(p, zeta % p, mult_order(zeta, p), sizes, inv_cls, degrees, values)
    if not verify_orthogonality(T):
        raise CharacterTableError("ingested table fails row orthogonality")
    return T


def choose_prime(order: int, exponent: int, *, after: int = 0) -> int:
    """Smallest prime p = 1 (mod exponent) with p > max(2*order, after)."""
    p = max(2 * order, after) + 1
    p += (1 - p) % exponent
    while not is_prime(p):
        p += exponent
    return p


def class_algebra_constants(G: FiniteGroup, P: ConjugacyClassPartition | None = None
                            ) -> ClassAlgebraConstants:
    P = P or G.classes
    r = len(P)
    a = np.zeros((r, r, r), dtype=np.int64)
    class_of, inverses = P.class_of, G.inverses
    cx = np.fromiter(class_of, dtype=np.int64, count=G.order)
    for k, rep in enumerate(P.representatives):
        # x * y = rep  <=>  y = x^-1 * rep
        cy = np.fromiter((class_of[G.mul(inverses[x], rep)] for x in range(G.order)),
                         dtype=np.int64, count=G.order)
        np.add.at(a[:, :, k], (cx, cy), 1)
    return ClassAlgebraConstants(a)


def _split(spaces: list[np.ndarray], A: np.ndarray, p: int, rng: np.random.Generator
           ) -> list[np.ndarray]:
    """Refine each common eigenspace (rows, RREF) by the action of A on column vectors."""
    out = []
    for V in spaces:
        d = V.shape[0]
        if d == 1:
            out.append(V)
            continue
        _, piv = rref(V, p)
        W = A @ V.T % p  # columns are images of basis vectors
        R = W[piv, :]  # coordinates in the basis V
        if not np.array_equal(V.T @ R % p, W):
            raise CharacterTableError("class matrix does not preserve a common eigenspace")
        f = charpoly(R, p)
        if d <= EXHAUSTIVE_ROOT_LIMIT:
            lams = roots_exhaustive(f, p)
        else:
            lams = roots_cantor_zassenhaus(f, p, rng)
        pieces = []
        for lam in lams:
            Y = nullspace((R - lam * np.eye(d, dtype=np.int64)) % p, p)
            basis, _ = rref(Y @ V % p, p)
            pieces.append(basis)
        if sum(b.shape[0] for b in pieces) != d:
            raise SplittingError(f"class matrix is not diagonalizable on a {d}-dim eigenspace")
        out.extend(pieces)
    return out


def character_table_mod_p(G: FiniteGroup, p: int | None = None, *,
                          seed: int = DEFAULT_SEED, max_random: int = 32
                          ) -> ModularCharacterTable:
    P = G.classes
    order, e = G.order, G.exponent
    if p is None:
        p = choose_prime(order, e)
    elif not (is_prime(p) and (p - 1) % e == 0 and p > 2 * order):
        raise CharacterTableError(f"p = {p} does not qualify for |G| = {order}, exponent {e}")
    r = len(P)
    consts = class_algebra_constants(G, P).a % p
    rng = np.random.default_rng(seed)

    spaces = [np.eye(r, dtype=np.int64)]
    for j in range(1, r):
        if all(V.shape[0] == 1 for V in spaces):
            break
        spaces = _split(spaces, consts[j], p, rng)
    tries = 0
    while any(V.shape[0] > 1 for V in spaces):
        if tries == max_random:
            dims = sorted(V.shape[0] for V in spaces if V.shape[0] > 1)
            raise SplittingError(
                f"{G.name}: eigenspaces of dims {dims} unsplit after {max_random} random combinations")
        coeffs = rng.integers(0, p, size=r)
        spaces = _split(spaces, np.tensordot(coeffs, consts, axes=1) % p, p, rng)
        tries += 1
    if len(spaces) != r:
        raise SplittingError(f"{G.name}: found {len(spaces)} eigenvectors for {r} classes")

    inv_cls = np.array(P.inverse_class)
    inv_sizes = np.array([inv(s, p) for s in P.sizes], dtype=np.int64)
    rows = []
    for V in spaces:
        w = V[0]
        if w[0] == 0:
            raise CharacterTableError("central character vanishes on the identity class")
        omega = w * inv(w[0], p) % p
        s = int((omega * omega[inv_cls] % p * inv_sizes % p).sum() % p)
        if s == 0:
            raise CharacterTableError("degenerate central character norm")
        d2 = order * inv(s, p) % p
        d = isqrt(d2)
        if d * d != d2 or d == 0 or order % d:
            raise CharacterTableError(f"degree squared {d2} is not a square divisor of |G|")
        rows.append((d, omega * d % p * inv_sizes % p))
    trivial = [i for i, (d, v) in enumerate(rows) if d == 1 and np.all(v == 1)]
    if len(trivial) != 1:
        raise CharacterTableError("trivial character not found exactly once")
    first = rows.pop(trivial[0])
    rows.sort(key=lambda dv: (dv[0], tuple(dv[1].tolist())))
    rows.insert(0, first)
    degrees = tuple(d for d, _ in rows)
    values = np.array([v for _, v in rows], dtype=np.int64).reshape(r, r)
    T = ModularCharacterTable(p, root_of_unity(p, e), e, P.sizes, P.inverse_class, degrees, values)
    if sum(d * d for d in degrees) != order:
        raise CharacterTableError(f"sum of squared degrees {sum(d * d for d in degrees)} != {order}")
    if not verify_orthogonality(T, P):
        raise CharacterTableError(f"{G.name}: orthogonality check failed")
    return T


def verify_orthogonality(T: ModularCharacterTable, P: ConjugacyClassPartition | None = None
                         ) -> bool:
    """Row orthogonality: sum_j |C_j| chi_i(g_j) chi_k(g_j^-1) = |G| delta_ik in F_p."""
    p = T.p
    sizes = np.array(P.sizes if P is not None else T.class_sizes, dtype=np.int64)
    inv_cls = list(P.inverse_class if P is not None else T.inverse_class)
    X = T.values * sizes % p
    gram = X @ T.values[:, inv_cls].T % p
    return bool(np.array_equal(gram, (T.order % p) * np.eye(T.num_irreps, dtype=np.int64)))


def verify_column_orthogonality(T: ModularCharacterTable) -> bool:
    """sum_i chi_i(g_j) chi_i(g_k^-1) = delta_jk |G| / |C_j| in F_p."""
    p = T.p
    gram = T.values.T @ T.values[:, list(T.inverse_class)] % p
    diag = [T.order // s % p for s in T.class_sizes]
    return bool(np.array_equal(gram, np.diag(diag).astype(np.int64)))


def eigenvalue_signatures(G: FiniteGroup, T: ModularCharacterTable) -> list[tuple]:
    """Per irrep, the multiplicity of each eigenvalue zeta_o^s of rho(g_j), for every class j.

    These multiplicities are nonnegative integers below p, so they are
    characteristic-free data; only the choice of zeta enters.
    """
    p, e = T.p, T.exponent
    sig_cols = []
    dft: dict[int, np.ndarray] = {}
    for j in range(len(T.class_sizes)):
        powers = list(G.power_classes(j))
        o = len(powers)
        if o not in dft:
            zinv = inv(pow(T.zeta, e // o, p), p)
            table = np.array([pow(zinv, k, p) for k in range(o)], dtype=np.int64)
            ts = np.arange(o)
            # F[t, s] = zeta_o^(-s t) / o
            dft[o] = table[np.outer(ts, ts) % o] * inv(o, p) % p
        sig_cols.append(T.values[:, powers] @ dft[o] % p)
    return [tuple(tuple(int(x) for x in col[i]) for col in sig_cols)
            for i in range(T.num_irreps)]


def match_irreps(G: FiniteGroup, T1: ModularCharacterTable, T2: ModularCharacterTable
                 ) -> list[int] | None:
    """Row bijection T1 -> T2 identifying the same complex irreps, or None.

    The two tables come from different primes, each with its own choice of
    root of unity; some unit k mod the exponent relates the two choices.
    We try each k and match rows by eigenvalue multiplicities.
    """
    e = T1.exponent
    sig1 = eigenvalue_signatures(G, T1)
    sig2 = eigenvalue_signatures(G, T2)
    where = {s: i for i, s in enumerate(sig1)}
    if len(where) != len(sig1):
        return None
    orders = [len(cols) for cols in sig2[0]]
    for k in range(1, e + 1):
        if np.gcd(k, e) != 1:
            continue
        # with root zeta^k, eigenvalue (zeta^k)^s = zeta^(k s)
        perm = []
        for sig in sig2:
            twisted = tuple(tuple(col[k * s % o] for s in range(o))
                            for col, o in zip(sig, orders))
            perm.append(where.get(twisted))
        if None not in perm and sorted(perm) == list(range(len(sig1))):
            mapping = [0] * len(perm)
            for i2, i1 in enumerate(perm):
                mapping[i1] = i2
            return mapping
    return None
