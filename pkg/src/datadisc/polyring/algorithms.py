"""Determinants, resultants, gcds and squarefree machinery on Poly."""

from __future__ import annotations

from gmpy2 import mpq

from . import univariate as U
from .poly import Poly, ZeroPolynomialError


class SingularMatrixError(ArithmeticError):
    pass


# determinants --------------------------------------------------------------

def det(matrix):
    """Exact determinant of a square matrix of Poly entries.

    Cofactor expansion up to 4x4, Bareiss fraction-free elimination beyond.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    if n <= 4:
        return _cofactor(matrix)
    return _bareiss([list(r) for r in matrix])


def _cofactor(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0] * 0
    return total


def _bareiss(m):
    n = len(m)
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[0][0] * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = m[i][j] * pivot - m[i][k] * m[k][j]
                if prev is not None and v:
                    v = v.divexact(prev)
                m[i][j] = v
        prev = pivot
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def solve_rational(a, b):
    """Solve the square system ``a x = b`` over Q by Gaussian elimination."""
    n = len(a)
    m = [[mpq(x) for x in row] + [mpq(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise SingularMatrixError(f"singular system at column {col}")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        rowc = [x * inv for x in m[col]]
        m[col] = rowc
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], rowc)]
    return [m[r][n] for r in range(n)]


# univariate-in-x views ------------------------------------------------------

def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _from_list(coeffs, x, reg):
    xv = Poly.var(reg, x)
    acc = Poly.zero(reg)
    for c in reversed(coeffs):
        acc = acc * xv + c
    return acc


def prem(a, b, x):
    """Pseudo-remainder of ``a`` by ``b`` as polynomials in ``x``."""
    A = _strip(a.coeff_list(x))
    B = _strip(b.coeff_list(x))
    return _from_list(_prem(A, B), x, a.reg)


def _prem(A, B):
    dB = len(B) - 1
    lb = B[-1]
    R = list(A)
    e = len(A) - 1 - dB + 1
    while R and len(R) - 1 >= dB:
        lr = R[-1]
        s = len(R) - 1 - dB
        R = [r * lb for r in R]
        for j in range(dB + 1):
            R[j + s] = R[j + s] - lr * B[j]
        R = _strip(R)
        e -= 1
    if e > 0 and R:
        f = lb ** e
        R = [r * f for r in R]
    return R


def resultant(f, g, x):
    """Resultant in ``x`` by the subresultant polynomial remainder sequence."""
    if f.reg != g.reg:
        g = g.to_registry(f.reg)
    A = _strip(f.coeff_list(x))
    B = _strip(g.coeff_list(x))
    if len(A) < 2 or len(B) < 2:
        raise ValueError(f"resultant needs positive degree in {x} on both sides")
    reg = f.reg
    one = Poly.const(reg, 1)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -1
    gg = one
    h = one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return Poly.zero(reg)
        div = gg * h ** delta
        B = [c.divexact(div) for c in R]
        gg = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = (gg ** delta).divexact(h ** (delta - 1))
        if len(B) - 1 == 0:
            da = len(A) - 1
            res = B[0] ** da
            if da > 1:
                res = res.divexact(h ** (da - 1))
            return res if s > 0 else -res


def sylvester(f, g, x):
    """Sylvester matrix of ``f`` and ``g`` with respect to ``x``."""
    A = list(reversed(_strip(f.coeff_list(x))))
    B = list(reversed(_strip(g.coeff_list(x))))
    m, n = len(A) - 1, len(B) - 1
    z = Poly.zero(f.reg)
    rows = []
    for i in range(n):
        rows.append([z] * i + A + [z] * (n - 1 - i))
    for i in range(m):
        rows.append([z] * i + B + [z] * (m - 1 - i))
    return rows


# gcd and squarefree ----------------------------------------------------------

def gcd(f, g):
    """Multivariate gcd over Q in canonical form.

    Univariate inputs use Euclid; otherwise the lcm is read off the
    elimination ideal <t*f, (1 - t)*g> ∩ Q[vars] and gcd = f*g / lcm.
    """
    if f.reg != g.reg:
        g = g.to_registry(f.reg)
    if not f:
        return g.canonical() if g else g
    if not g:
        return f.canonical()
    if f.is_constant() or g.is_constant():
        return Poly.const(f.reg, 1)
    if f.divides(g):
        return f.canonical()
    if g.divides(f):
        return g.canonical()
    vs = set(f.variables()) | set(g.variables())
    if len(vs) == 1:
        x = vs.pop()
        h = U.gcd(f.to_univariate(x), g.to_univariate(x))
        return Poly.from_univariate(f.reg, x, U.canonical(h))
    from ..groebner import eliminate
    from .registry import VarRegistry
    t = "_t"
    while t in f.reg:
        t += "_"
    reg2 = VarRegistry(f.reg.names + (t,))
    F, G = f.to_registry(reg2), g.to_registry(reg2)
    tv = reg2.var(t)
    E = eliminate([tv * F, (1 - tv) * G], f.reg.names, use_presolve=False)
    lcm = min(E, key=lambda e: (e.total_degree(), len(e)))
    return (F * G).divexact(lcm).to_registry(f.reg).canonical()


def _specialization_squarefree(f, seed=0):
    """True when a random specialization proves ``f`` squarefree.

    For each variable x, the other variables are set to random integers
    keeping the leading coefficient in x nonzero; a squarefree univariate
    image bounds the x-degree of gcd(f, df/dx) by zero.
    """
    import random
    rng = random.Random(seed)
    vs = f.variables()
    for x in vs:
        parts = f.coeffs_in(x)
        lc = parts[max(parts)]
        others = [v for v in vs if v != x]
        for _ in range(5):
            pt = {v: rng.randint(-997, 997) for v in others}
            if lc.evaluate(pt) != 0:
                break
        else:
            return False
        u = f.partial_evaluate(pt).to_univariate(x)
        if U.degree(U.gcd(u, U.deriv(u))) > 0:
            return False
    return True


def content(f, x):
    """gcd of the coefficients of ``f`` viewed as a polynomial in ``x``."""
    acc = None
    for c in f.coeffs_in(x).values():
        acc = c.canonical() if acc is None else gcd(acc, c)
        if acc.is_constant():
            return Poly.const(f.reg, 1)
    return acc if acc is not None else Poly.zero(f.reg)


def squarefree_part(f):
    """Product of the distinct irreducible factors of ``f`` (canonical)."""
    if not f:
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    if f.is_constant():
        return Poly.const(f.reg, 1)
    vs = f.variables()
    if len(vs) == 1:
        x = vs[0]
        return Poly.from_univariate(f.reg, x, U.canonical(U.squarefree_part(f.to_univariate(x))))
    if _specialization_squarefree(f):
        return f.canonical()
    g = f
    for v in vs:
        g = gcd(g, f.diff(v))
        if g.is_constant():
            return f.canonical()
    return f.divexact(g).canonical()


def squarefree_factorization(f):
    """Yun decomposition of a univariate Poly: [(factor, multiplicity)].

    Factors are canonical; their product with multiplicities equals ``f`` up
    to a rational unit.
    """
    if not f:
        raise ZeroPolynomialError("squarefree factorization of the zero polynomial")
    vs = f.variables()
    if len(vs) > 1:
        raise ValueError("squarefree_factorization expects a univariate polynomial")
    if not vs:
        return []
    x = vs[0]
    return [(Poly.from_univariate(f.reg, x, U.canonical(h)), m)
            for h, m in U.yun(f.to_univariate(x))]
