"""Packed-key polynomial reduction shared by division and Groebner bases.

A polynomial is a dict ``{K: mpq}`` where ``K`` is the packed order key of a
monomial (see ``orders``).  Keys are additive, so multiplying by a monomial
is adding its key, and the largest key is the leading monomial.  Divisibility
needs exponents, kept in ``PackedRing.emap`` (key -> guarded exponent pack).
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush

from gmpy2 import mpq

from .orders import FIELD_BITS, GREVLEX
from .poly import EXP_BITS, EXP_MASK, NotDivisibleError, Poly, guard_mask, pack, unpack


class PackedRing:
    """Local packed representation over a subset of registry variables."""

    def __init__(self, reg, order=GREVLEX, active=None):
        self.reg = reg
        self.order = order
        self.active = list(range(len(reg))) if active is None else list(active)
        self.n = len(self.active)
        self.rows = order.rows(reg, self.active)
        self.guard = guard_mask(self.n)
        self.emap = {0: 0}
        self._pos = {ri: j for j, ri in enumerate(self.active)}

    def key(self, exps):
        k = 0
        for row in self.rows:
            k = (k << FIELD_BITS) | sum(w * e for w, e in zip(row, exps))
        return k

    def exps(self, k):
        return unpack(self.emap[k], self.n)

    def monomial(self, exps):
        k = self.key(exps)
        if k not in self.emap:
            self.emap[k] = pack(exps)
        return k

    def encode(self, poly):
        n = len(poly.reg)
        out = {}
        emap = self.emap
        pos = self._pos
        for e, c in poly._t.items():
            full = unpack(e, n)
            loc = [0] * self.n
            for i, x in enumerate(full):
                if x:
                    j = pos.get(i)
                    if j is None:
                        raise ValueError(f"variable {poly.reg.name(i)} is not active")
                    loc[j] = x
            k = self.key(loc)
            if k not in emap:
                emap[k] = pack(loc)
            out[k] = c
        return out

    def decode(self, f):
        t = {}
        for k, c in f.items():
            loc = unpack(self.emap[k], self.n)
            e = 0
            for j, x in enumerate(loc):
                if x:
                    e |= x << (EXP_BITS * self.active[j])
            t[e] = c
        return Poly(self.reg, t)

    # reduction ---------------------------------------------------------
    def reducer(self, f):
        """Monic reducer record ``(lmK, lmE, tail)`` for a nonzero dict."""
        lk = max(f)
        inv = 1 / f[lk]
        emap = self.emap
        tail = [(k, emap[k], c * inv) for k, c in f.items() if k != lk]
        tail.sort(reverse=True)
        return (lk, emap[lk], tail)

    def normal_form(self, f, basis, full=True, token=None, quotient=None):
        """Reduce dict ``f`` modulo reducer records.

        With ``full`` every term is reduced, otherwise reduction stops at the
        first irreducible leading term.  When ``quotient`` is a list of dicts
        (one per reducer) the multipliers are accumulated there.
        """
        f = dict(f)
        heap = [-k for k in f]
        heapify(heap)
        out = {}
        emap = self.emap
        guard = self.guard
        steps = 0
        while heap:
            k = -heappop(heap)
            c = f.pop(k, None)
            if c is None:
                continue
            e = emap[k]
            gi = -1
            for i, g in enumerate(basis):
                if ((e + guard - g[1]) & guard) == guard:
                    gi = i
                    break
            if gi < 0:
                out[k] = c
                if not full:
                    out.update(f)
                    return out
                continue
            lk, le, tail = basis[gi]
            qk = k - lk
            qe = e - le
            if quotient is not None:
                if qk not in emap:
                    emap[qk] = qe
                quotient[gi][qk] = quotient[gi].get(qk, 0) + c
            for tk, te, tc in tail:
                nk = qk + tk
                v = f.get(nk)
                if v is None:
                    f[nk] = -c * tc
                    heappush(heap, -nk)
                    if nk not in emap:
                        emap[nk] = qe + te
                else:
                    v -= c * tc
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
            steps += 1
            if token is not None and not steps & 511:
                token.check()
        return out

    def mul(self, a, b):
        out = {}
        emap = self.emap
        for ka, ca in a.items():
            ea = emap[ka]
            for kb, cb in b.items():
                k = ka + kb
                v = out.get(k)
                if v is None:
                    out[k] = ca * cb
                    if k not in emap:
                        emap[k] = ea + emap[kb]
                else:
                    out[k] = v + ca * cb
        return {k: v for k, v in out.items() if v}

    def shift(self, f, k, c=1):
        """Multiply dict ``f`` by the term ``c * monomial(k)``."""
        emap = self.emap
        e = emap[k]
        out = {}
        for fk, fc in f.items():
            nk = fk + k
            if nk not in emap:
                emap[nk] = emap[fk] + e
            out[nk] = fc * c
        return out


def _active_union(*polys):
    idx = set()
    for p in polys:
        idx.update(p.var_indices())
    return sorted(idx)


def divmod_poly(a: Poly, b: Poly):
    """Multivariate division by a single divisor under grevlex."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if b.reg != a.reg:
        b = b.to_registry(a.reg)
    ring = PackedRing(a.reg, GREVLEX, _active_union(a, b))
    fa = ring.encode(a)
    fb = ring.encode(b)
    red = ring.reducer(fb)
    quot = [{}]
    r = ring.normal_form(fa, [red], quotient=quot)
    inv = 1 / fb[red[0]]
    q = {k: c * inv for k, c in quot[0].items() if c}
    return ring.decode(q), ring.decode(r)


def divexact(a: Poly, b: Poly) -> Poly:
    if b.is_constant():
        return a / b.constant_term()
    q, r = divmod_poly(a, b)
    if r:
        raise NotDivisibleError("division is not exact")
    return q


def reducer_mod(ring, f, p):
    """Monic reducer record for a dict with coefficients in GF(p)."""
    lk = max(f)
    inv = pow(f[lk], -1, p)
    emap = ring.emap
    tail = [(k, emap[k], c * inv % p) for k, c in f.items() if k != lk]
    tail.sort(reverse=True)
    return (lk, emap[lk], tail)


def normal_form_mod(ring, f, basis, p, token=None):
    """Full reduction of a GF(p) dict modulo monic reducer records.

    Coefficients are reduced lazily: pending terms hold unreduced integers
    and are brought into [0, p) only when they reach the top of the heap.
    """
    f = dict(f)
    heap = [-k for k in f]
    heapify(heap)
    out = {}
    emap = ring.emap
    guard = ring.guard
    steps = 0
    pop = f.pop
    get = f.get
    while heap:
        k = -heappop(heap)
        c = pop(k, None)
        if c is None:
            continue
        c %= p
        if not c:
            continue
        e = emap[k]
        for g in basis:
            if ((e + guard - g[1]) & guard) == guard:
                break
        else:
            out[k] = c
            continue
        lk, le, tail = g
        qk = k - lk
        qe = e - le
        mc = p - c
        for tk, te, tc in tail:
            nk = qk + tk
            v = get(nk)
            if v is None:
                f[nk] = mc * tc
                heappush(heap, -nk)
                if nk not in emap:
                    emap[nk] = qe + te
            else:
                f[nk] = v + mc * tc
        steps += 1
        if token is not None and not steps & 511:
            token.check()
    return out
