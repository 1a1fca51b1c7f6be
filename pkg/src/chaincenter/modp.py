"""Arithmetic over a prime field F_p: primes, roots of unity, matrices, polynomials.

Matrices are int64 numpy arrays with entries in [0, p). p stays far below
2**31 so pairwise products and row sums never overflow.
"""
from __future__ import annotations

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group of F_p."""
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"{p} is not prime")


def mult_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    k, y = 1, x
    while y != 1:
        y = y * x % p
        k += 1
    return k


def root_of_unity(p: int, e: int) -> int:
    """Canonical element of order e in F_p: smallest primitive root to the (p-1)/e."""
    if (p - 1) % e:
        raise ValueError(f"F_{p} has no element of order {e}")
    return pow(primitive_root(p), (p - 1) // e, p)


def inv(x: int, p: int) -> int:
    return pow(int(x) % p, -1, p)


# -- matrices --------------------------------------------------------------

def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of A over F_p and its pivot columns."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = M[r] * inv(M[r, c], p) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : A x = 0} over F_p, one vector per row."""
    n = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, c in enumerate(pivots):
            basis[t, c] = (-R[i, f]) % p
    return basis


def charpoly(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial det(xI - A) over F_p, coefficients low to high.

    Reduces to upper Hessenberg form by similarity, then runs the standard
    determinant recurrence on the leading principal blocks.
    """
    H = np.array(A, dtype=np.int64) % p
    n = H.shape[0]
    for c in range(n - 2):
        nz = np.nonzero(H[c + 1:, c])[0]
        if nz.size == 0:
            continue
        i = c + 1 + nz[0]
        if i != c + 1:
            H[[i, c + 1]] = H[[c + 1, i]]
            H[:, [i, c + 1]] = H[:, [c + 1, i]]
        pinv = inv(H[c + 1, c], p)
        for k in range(c + 2, n):
            u = H[k, c] * pinv % p
            if u:
                H[k] = (H[k] - u * H[c + 1]) % p
                H[:, c + 1] = (H[:, c + 1] + u * H[:, k]) % p
    # polys[m] = charpoly of the leading m x m block
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        h = H[m - 1, m - 1]
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:m] = (cur[:m] - h * prev) % p
        sub = 1
        for i in range(1, m):
            sub = sub * H[m - i, m - i - 1] % p
            coeff = sub * H[m - i - 1, m - 1] % p
            if coeff:
                q = polys[m - i - 1]
                cur[:len(q)] = (cur[:len(q)] - coeff * q) % p
        polys.append(cur)
    return [int(x) for x in polys[n]]


# -- polynomials (coefficient lists, low degree first) ---------------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    f = _trim([x % p for x in f])
    g = _trim([x % p for x in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead = inv(g[-1], p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and f:
        c = f[-1] * lead % p
        s = len(f) - len(g)
        q[s] = c
        for i, gi in enumerate(g):
            f[s + i] = (f[s + i] - c * gi) % p
        _trim(f)
    return _trim(q), f


def poly_mulmod(f: list[int], g: list[int], m: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    prod_ = np.convolve(np.array(f, dtype=object), np.array(g, dtype=object))
    return poly_divmod([int(x) % p for x in prod_], m, p)[1]


def poly_powmod(f: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_divmod(f, m, p)[1]
    while e:
        if e & 1:
            result = poly_mulmod(result, base, m, p)
        base = poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def poly_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    f = _trim([x % p for x in f])
    g = _trim([x % p for x in g])
    while g:
        f, g = g, poly_divmod(f, g, p)[1]
    if not f:
        return f
    c = inv(f[-1], p)
    return [x * c % p for x in f]


def poly_eval_all(f: list[int], p: int) -> np.ndarray:
    """Values of f at every point of F_p (Horner, vectorized over the field)."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(f):
        acc = (acc * xs + c) % p
    return acc


def roots_exhaustive(f: list[int], p: int) -> list[int]:
    return [int(x) for x in np.nonzero(poly_eval_all(f, p) == 0)[0]]


def roots_cantor_zassenhaus(f: list[int], p: int, rng: np.random.Generator) -> list[int]:
    """Distinct roots of f in F_p via gcd with x^p - x and random equal-degree splitting.

    p must be odd.
    """
    f = _trim([x % p for x in f])
    xp = poly_powmod([0, 1], p, f, p)
    xp = xp + [0] * max(0, 2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = poly_gcd(f, xp, p)
    roots: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append((-h[0] * inv(h[1], p)) % p)
            continue
        while True:
            a = int(rng.integers(0, p))
            w = poly_powmod([a, 1], (p - 1) // 2, h, p)
            w = w or [0]
            w[0] = (w[0] - 1) % p
            d = poly_gcd(h, w, p)
            if 1 < len(d) < len(h):
                break
        stack.append(d)
        stack.append(poly_divmod(h, d, p)[0])
    return sorted(roots)
