"""Exact linear algebra for the interpolation solves."""

from __future__ import annotations

import gmpy2
from gmpy2 import mpq, mpz

from ..groebner import multimodular, primes

# below this many unknowns plain elimination over Q is fast enough
MODULAR_MIN_UNKNOWNS = 12


class RankDeficient(ArithmeticError):
    """Too few independent rows to determine every unknown."""


class Inconsistent(ArithmeticError):
    """An overdetermined system has no solution."""


class Echelon:
    """Incrementally maintained row echelon form used to pick independent rows."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}

    @property
    def rank(self):
        return len(self.rows)

    def add(self, vec):
        """Insert a row; True if it raised the rank."""
        v = [mpq(x) for x in vec]
        for piv in sorted(self.rows):
            if v[piv]:
                c = v[piv]
                r = self.rows[piv]
                v = [a - c * b for a, b in zip(v, r)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        self.rows[piv] = [x * inv for x in v]
        return True


def solve_consistent(rows, rhs, token=None):
    """Unique solution of an overdetermined but consistent system over Q.

    Larger systems are solved modulo primes on a square subsystem and lifted;
    the lifted solution is then checked exactly against every row, so the
    result (or the Inconsistent verdict) is exact either way.
    """
    n = len(rows[0]) if rows else 0
    if n < MODULAR_MIN_UNKNOWNS or len(rows) < n:
        return _solve_exact(rows, rhs)
    ints = [_integer_row(r, y) for r, y in zip(rows, rhs)]
    square = None
    for p in _first_primes(2):
        square = _independent_rows(ints, n, p)
        if square is not None:
            break
    if square is None:
        return _solve_exact(rows, rhs)
    sub = [ints[i] for i in square]
    try:
        _, sol = multimodular(lambda p: _solve_mod(sub, n, p), token, max_primes=400,
                              label="interpolation solve")
    except ArithmeticError:
        return _solve_exact(rows, rhs)
    if not all(_satisfies(ints[i], sol) for i in square):
        return _solve_exact(rows, rhs)
    # the square part has exactly one solution, so any failing row is a true inconsistency
    if not all(_satisfies(r, sol) for r in ints):
        raise Inconsistent("overdetermined system is inconsistent")
    return sol


def _integer_row(row, y):
    vals = [mpq(x) for x in row] + [mpq(y)]
    den = mpz(1)
    for v in vals:
        den = gmpy2.lcm(den, v.denominator)
    return [int(v * den) for v in vals]


def _first_primes(k):
    gen = primes()
    return [next(gen) for _ in range(k)]


def _independent_rows(ints, n, p):
    """Indices of n rows independent mod p, or None."""
    ech = {}
    chosen = []
    for i, r in enumerate(ints):
        v = [x % p for x in r[:n]]
        for piv in sorted(ech):
            if v[piv]:
                c = v[piv]
                v = [(a - c * b) % p for a, b in zip(v, ech[piv])]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = pow(v[piv], -1, p)
        ech[piv] = [x * inv % p for x in v]
        chosen.append(i)
        if len(chosen) == n:
            return chosen
    return None


def _solve_mod(sub, n, p):
    m = [[x % p for x in r] for r in sub]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], -1, p)
        prow = [x * inv % p for x in m[col]]
        m[col] = prow
        for r in range(n):
            f = m[r][col]
            if r != col and f:
                m[r] = [(a - f * b) % p for a, b in zip(m[r], prow)]
    return "square", [m[i][n] for i in range(n)]


def _satisfies(row, sol):
    return sum((mpq(a) * x for a, x in zip(row, sol)), mpq(0)) == row[-1]


def _solve_exact(rows, rhs):
    n = len(rows[0]) if rows else 0
    m = [[mpq(x) for x in r] + [mpq(y)] for r, y in zip(rows, rhs)]
    if n == 0:
        if any(r[-1] for r in m):
            raise Inconsistent("nonzero right-hand side with no unknowns")
        return []
    top = 0
    for col in range(n):
        piv = next((r for r in range(top, len(m)) if m[r][col]), None)
        if piv is None:
            raise RankDeficient(f"no pivot in column {col}")
        m[top], m[piv] = m[piv], m[top]
        inv = 1 / m[top][col]
        prow = [x * inv for x in m[top]]
        m[top] = prow
        for r in range(len(m)):
            if r != top and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], prow)]
        top += 1
    for r in range(top, len(m)):
        if m[r][-1]:
            raise Inconsistent("overdetermined system is inconsistent")
    return [m[i][-1] for i in range(n)]


def interpolate(xs, ys):
    """Coefficients (lowest first) of the polynomial through the points."""
    xs = [mpq(x) for x in xs]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    dd = [mpq(y) for y in ys]
    n = len(xs)
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k])
    out = [mpq(0)] * n
    for k in range(n - 1, -1, -1):
        # out = out * (x - xs[k]) + dd[k]
        nxt = [mpq(0)] * n
        for i in range(n - 1):
            nxt[i + 1] += out[i]
        for i in range(n):
            nxt[i] -= xs[k] * out[i]
        nxt[0] += dd[k]
        out = nxt
    while out and not out[-1]:
        out.pop()
    return out
