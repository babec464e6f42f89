"""Dense univariate polynomials over Q as lists of mpq, lowest degree first.

These are the workhorses for eliminants: gcds, squarefree decomposition,
Sturm sequences and real-root isolation.  All functions return new lists and
never leave trailing zeros.
"""

from __future__ import annotations

from gmpy2 import mpq, mpz, gcd as _igcd, lcm as _ilcm


def strip(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a):
    return len(a) - 1 if a else -1


def add(a, b):
    n = max(len(a), len(b))
    return strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b):
    n = max(len(a), len(b))
    return strip([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a, c):
    return strip([x * c for x in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip(out)


def divmod_(a, b):
    b = strip(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(strip(a))
    db = len(b) - 1
    inv = 1 / b[-1]
    if len(r) - 1 < db:
        return [], r
    q = [mpq(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    return strip(q), strip(r[:db])


def rem(a, b):
    return divmod_(a, b)[1]


def monic(a):
    a = strip(a)
    if not a:
        return a
    inv = 1 / a[-1]
    return [x * inv for x in a]


def gcd(a, b):
    a, b = strip(a), strip(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def deriv(a):
    return strip([a[i] * i for i in range(1, len(a))])


def evaluate(a, x):
    acc = mpq(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sign(x):
    return (x > 0) - (x < 0)


def canonical(a):
    """Integer coefficients with unit content and positive leading coefficient."""
    a = strip(a)
    if not a:
        return a
    den = mpz(1)
    for c in a:
        den = _ilcm(den, mpq(c).denominator)
    nums = [c * den for c in a]
    g = mpz(0)
    for c in nums:
        g = _igcd(g, mpq(c).numerator)
    s = mpq(den, g) if a[-1] > 0 else -mpq(den, g)
    return [c * s for c in a]


def squarefree_part(a):
    a = strip(a)
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    if len(a) == 1:
        return [mpq(1)]
    g = gcd(a, deriv(a))
    return monic(divmod_(a, g)[0])


def yun(a):
    """Squarefree decomposition: [(factor, multiplicity)] with monic factors."""
    a = strip(a)
    if not a:
        raise ValueError("squarefree factorization of the zero polynomial")
    if len(a) == 1:
        return []
    out = []
    da = deriv(a)
    g = gcd(a, da)
    b = divmod_(a, g)[0]
    c = divmod_(da, g)[0]
    d = sub(c, deriv(b))
    i = 1
    while degree(b) > 0:
        h = gcd(b, d)
        if degree(h) > 0:
            out.append((monic(h), i))
        b = divmod_(b, h)[0]
        c = divmod_(d, h)[0]
        d = sub(c, deriv(b))
        i += 1
    return out


def compose_linear(a, s, t):
    """a(s*x + t)."""
    out = []
    lin = [mpq(t), mpq(s)]
    for c in reversed(a):
        out = add(mul(out, lin), [c])
    return out


# real roots ----------------------------------------------------------------

def sturm_sequence(a):
    a = strip(a)
    seq = [a, deriv(a)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        seq.append([-x for x in r])
    return [p for p in seq if p]


def _variations(values):
    signs = [s for s in (sign(v) for v in values) if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _variations_at(seq, x):
    if x == "inf":
        return _variations([p[-1] for p in seq])
    if x == "-inf":
        return _variations([p[-1] * (-1) ** (len(p) - 1) for p in seq])
    return _variations([evaluate(p, x) for p in seq])


def sturm_count(a, lo=None, hi=None, seq=None):
    """Number of distinct real roots in ``(lo, hi]``; None means infinite.

    ``a`` must be squarefree; callers that cannot promise this pass the
    squarefree part.
    """
    a = strip(a)
    if not a:
        raise ValueError("Sturm count of the zero polynomial")
    if len(a) == 1:
        return 0
    seq = seq or sturm_sequence(a)
    va = _variations_at(seq, "-inf" if lo is None else mpq(lo))
    vb = _variations_at(seq, "inf" if hi is None else mpq(hi))
    return va - vb


def root_bound(a):
    """Cauchy bound: every root satisfies |x| < bound."""
    a = strip(a)
    lead = abs(a[-1])
    return 1 + max((abs(c) / lead for c in a[:-1]), default=mpq(0))


def isolate_real_roots(a):
    """Disjoint rational intervals, one distinct real root each, sorted.

    Intervals are ``(lo, hi)`` with ``lo < hi`` and the root strictly inside,
    or ``(r, r)`` when the root is the rational ``r`` itself.
    """
    a = strip(a)
    if len(a) <= 1:
        return []
    seq = sturm_sequence(a)
    b = root_bound(a)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = sturm_count(a, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            if not evaluate(a, hi):
                out.append((hi, hi))
            else:
                out.append(_open(a, seq, lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def _open(a, seq, lo, hi):
    # ensure neither endpoint is a root so the interval is open with a sign change
    while not evaluate(a, lo):
        mid = (lo + hi) / 2
        if sturm_count(a, mid, hi, seq) == 1:
            lo = mid
        else:
            hi = mid
            if not evaluate(a, hi):
                return (hi, hi)
    return (lo, hi)


def refine(a, interval, width):
    """Bisect an isolating interval until it is narrower than ``width``."""
    lo, hi = interval
    if lo == hi:
        return interval
    slo = sign(evaluate(a, lo))
    while hi - lo >= width:
        mid = (lo + hi) / 2
        s = sign(evaluate(a, mid))
        if s == 0:
            return (mid, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def interval_eval(a, lo, hi):
    """Enclosure of ``a`` over ``[lo, hi]`` by Horner interval arithmetic."""
    rlo = rhi = mpq(0)
    for c in reversed(a):
        prods = (rlo * lo, rlo * hi, rhi * lo, rhi * hi)
        rlo, rhi = min(prods) + c, max(prods) + c
    return rlo, rhi


def sign_at_root(q, g, interval):
    """Sign of ``q`` at the unique root of squarefree ``g`` in ``interval``."""
    lo, hi = interval
    if lo == hi:
        return sign(evaluate(q, lo))
    h = gcd(g, q)
    if degree(h) > 0 and sturm_count(h, lo, hi) - (0 if evaluate(h, hi) else 1) > 0:
        return 0
    while True:
        rlo, rhi = interval_eval(q, lo, hi)
        if rlo > 0:
            return 1
        if rhi < 0:
            return -1
        lo, hi = refine(g, (lo, hi), (hi - lo) / 2)
        if lo == hi:
            return sign(evaluate(q, lo))
