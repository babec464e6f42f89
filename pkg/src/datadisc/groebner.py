"""Buchberger Groebner bases, elimination ideals and zero-dimensional tools.

Two coefficient routes share one engine: exact rational arithmetic, and a
multi-modular route that runs Buchberger over GF(p) for word-size primes and
lifts the result to Q by Chinese remaindering and rational reconstruction.
A lifted result is accepted only once an additional prime agrees with it.
The modular route is the default because rational Buchberger suffers severe
intermediate coefficient growth on likelihood systems with random data.

Elimination first substitutes away variables that some generator determines
linearly.  When a single variable is kept and the ideal is zero-dimensional
the eliminant is read off the minimal polynomial of that variable in the
quotient ring; otherwise a block order is used.
"""

from __future__ import annotations

import heapq
from collections import OrderedDict
import logging
import time
from dataclasses import dataclass, field
from math import gcd as igcd

import gmpy2
from gmpy2 import mpq, mpz

from .polyring import GREVLEX, MonomialOrder, Poly, univariate as U
from .polyring._packed import PackedRing, normal_form_mod, reducer_mod
from .polyring.algorithms import squarefree_part
from .polyring.poly import pack

log = logging.getLogger(__name__)

METHODS = ("modular", "rational")


class ComputationTimeout(RuntimeError):
    """The wall-clock budget of a cancellable computation ran out."""


class NotZeroDimensional(ValueError):
    """The ideal has positive dimension where a finite variety was needed."""


class Deadline:
    """Cooperative cancellation token polled between reduction steps."""

    def __init__(self, seconds=None):
        self.seconds = seconds
        self.expires = None if seconds is None else time.monotonic() + seconds
        self.cancelled = False

    def cancel(self):
        self.cancelled = True

    def check(self):
        if self.cancelled:
            raise ComputationTimeout("computation cancelled")
        if self.expires is not None and time.monotonic() > self.expires:
            raise ComputationTimeout(f"time budget of {self.seconds} s exhausted")

    def remaining(self):
        if self.expires is None:
            return None
        return max(0.0, self.expires - time.monotonic())


def _check(token):
    if token is not None:
        token.check()


@dataclass
class IdealBasis:
    generators: list
    order: MonomialOrder = GREVLEX
    reduced: bool = True
    stats: dict = field(default_factory=dict)

    def is_unit(self):
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


# coefficient fields --------------------------------------------------------------

class _Rationals:
    modulus = None

    def reducer(self, ring, f):
        return ring.reducer(f)

    def nf(self, ring, f, red, token):
        return ring.normal_form(f, red, token=token)

    def inv(self, c):
        return 1 / c

    def norm(self, c):
        return c

    def one(self):
        return mpq(1)


class _PrimeField:
    def __init__(self, p):
        self.modulus = p

    def reducer(self, ring, f):
        return reducer_mod(ring, f, self.modulus)

    def nf(self, ring, f, red, token):
        return normal_form_mod(ring, f, red, self.modulus, token)

    def inv(self, c):
        return pow(c, -1, self.modulus)

    def norm(self, c):
        return c % self.modulus

    def one(self):
        return 1


# core Buchberger ---------------------------------------------------------------

def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


def _divides_t(a, b):
    return all(x <= y for x, y in zip(a, b))


class TraceMismatch(ArithmeticError):
    """A replayed modular run diverged from the recorded one."""


class _Tracer:
    """Runs Buchberger for successive primes, replaying the first run.

    The first prime runs the full algorithm and records which steps were
    useful; later primes repeat only those steps.  Two consecutive
    mismatches mean the recorded prime was unlucky, and a fresh trace is
    taken.  Traces are also shared between inputs with the same monomial
    structure (e.g. specializations of one system at different generic
    points); a shared trace that does not fit is dropped at once.
    """

    def __init__(self, ring, token, strategy, key=None):
        self.ring = ring
        self.token = token
        self.strategy = strategy
        self.key = key
        self.trace = _TRACES.get(key) if key is not None else None
        self.shared = self.trace is not None
        self.fails = 0

    def engine(self, K, imgs):
        if self.trace is not None:
            eng = _Engine(self.ring, K, self.token, self.strategy)
            try:
                eng.replay(imgs, self.trace)
                self.fails = 0
                return eng
            except TraceMismatch:
                self.fails += 1
                if self.shared:
                    self.shared = False
                elif self.fails < 2:
                    return None
                self.trace = None
                self.fails = 0
        eng = _Engine(self.ring, K, self.token, self.strategy)
        eng.run(imgs)
        self.trace = eng.trace
        if self.key is not None:
            _TRACES[self.key] = self.trace
            while len(_TRACES) > _TRACE_CACHE_SIZE:
                _TRACES.popitem(last=False)
        return eng


_TRACES = OrderedDict()
_TRACE_CACHE_SIZE = 64


def _structure_key(ring, order, ints, tag):
    return (tag, tuple(ring.active), order, tuple(sorted(tuple(sorted(f)) for f in ints)))


class _Engine:
    """Buchberger with Gebauer-Moeller criteria over a packed ring."""

    def __init__(self, ring, field_, token=None, strategy="normal"):
        self.ring = ring
        self.K = field_
        self.token = token
        self.strategy = strategy
        self.polys = []      # monic dicts
        self.lm = []         # leading exponent tuples
        self.red = []        # reducer records
        self.sugar = []
        self.alive = []      # indices of the current basis
        self.pairs = []      # heap of (priority, serial, i, j, lcm)
        self.npairs = 0
        self.zero_reductions = 0

    def _add(self, f, sugar):
        ring, K = self.ring, self.K
        rec = K.reducer(ring, f)
        inv = K.inv(f[rec[0]])
        f = {k: K.norm(c * inv) for k, c in f.items()}
        idx = len(self.polys)
        self.polys.append(f)
        self.lm.append(ring.exps(rec[0]))
        self.red.append(rec)
        self.sugar.append(sugar)
        self._update(idx)
        log.debug("basis element %d: %d terms, %d pairs pending",
                  idx, len(f), len(self.pairs))

    def _update(self, h):
        lm = self.lm
        lh = lm[h]
        cands = [(g, _lcm(lh, lm[g])) for g in self.alive]
        keep = []
        for i, (g, l) in enumerate(cands):
            if _coprime(lh, lm[g]):
                continue
            dominated = False
            for j, (g2, l2) in enumerate(cands):
                if j != i and _divides_t(l2, l) and (l2 != l or j < i):
                    dominated = True
                    break
            if not dominated:
                keep.append((g, l))
        survivors = []
        for item in self.pairs:
            _, _, i, j, l = item
            if (_divides_t(lh, l) and _lcm(lm[i], lh) != l and _lcm(lm[j], lh) != l):
                continue
            survivors.append(item)
        self.pairs = survivors
        for g, l in keep:
            self._push(g, h, l)
        heapq.heapify(self.pairs)
        self.alive = [g for g in self.alive if not _divides_t(lh, lm[g])] + [h]

    def _pair_sugar(self, i, j, l):
        d = sum(l)
        return max(self.sugar[i] + d - sum(self.lm[i]), self.sugar[j] + d - sum(self.lm[j]))

    def _push(self, i, j, l):
        k = self.ring.key(l)
        if self.strategy == "sugar":
            pri = (self._pair_sugar(i, j, l), k)
        else:
            pri = (k,)
        self.npairs += 1
        self.pairs.append((pri, self.npairs, i, j, l))

    def spoly(self, i, j, l):
        ring, K = self.ring, self.K
        ka = ring.monomial(tuple(a - b for a, b in zip(l, self.lm[i])))
        kb = ring.monomial(tuple(a - b for a, b in zip(l, self.lm[j])))
        f = ring.shift(self.polys[i], ka)
        for k, c in ring.shift(self.polys[j], kb).items():
            v = K.norm(f.get(k, 0) - c)
            if v:
                f[k] = v
            else:
                f.pop(k, None)
        return f

    def run(self, inputs):
        """Full Buchberger run; records the useful steps in ``self.trace``."""
        ring, K = self.ring, self.K
        inputs = sorted((f for f in inputs if f), key=max)
        self.trace = []
        for n, f in enumerate(inputs):
            deg = max(sum(ring.exps(k)) for k in f)
            r = K.nf(ring, f, [self.red[g] for g in self.alive], self.token)
            if r:
                self.trace.append((n, None, None, max(r), deg))
                self._add(r, deg)
                if self._is_unit():
                    return
        while self.pairs:
            _check(self.token)
            _, _, i, j, l = heapq.heappop(self.pairs)
            s = self.spoly(i, j, l)
            r = K.nf(ring, s, [self.red[g] for g in self.alive], self.token)
            if not r:
                self.zero_reductions += 1
                continue
            sugar = self._pair_sugar(i, j, l)
            self.trace.append((None, i, j, max(r), l))
            self._add(r, sugar)
            if self._is_unit():
                return

    def replay(self, inputs, trace):
        """Repeat only the useful steps of an earlier run (another prime).

        Raises TraceMismatch when a step does not produce the recorded
        leading monomial.
        """
        ring, K = self.ring, self.K
        inputs = sorted((f for f in inputs if f), key=max)
        for n, i, j, lk, extra in trace:
            _check(self.token)
            if n is not None:
                if n >= len(inputs):
                    raise TraceMismatch("input list changed")
                f = inputs[n]
            else:
                f = self.spoly(i, j, extra)
            r = K.nf(ring, f, [self.red[g] for g in self.alive], self.token)
            if not r or max(r) != lk:
                raise TraceMismatch("leading monomial differs from the trace")
            self._add_plain(r)

    def _add_plain(self, f):
        ring, K = self.ring, self.K
        rec = K.reducer(ring, f)
        inv = K.inv(f[rec[0]])
        f = {k: K.norm(c * inv) for k, c in f.items()}
        h = len(self.polys)
        self.polys.append(f)
        lh = ring.exps(rec[0])
        self.lm.append(lh)
        self.red.append(rec)
        self.sugar.append(0)
        self.alive = [g for g in self.alive if not _divides_t(lh, self.lm[g])] + [h]

    def _is_unit(self):
        return not any(self.lm[self.alive[-1]])

    def reduced_basis(self):
        """Monic reduced basis as dicts, ascending by leading monomial."""
        ring, K = self.ring, self.K
        if any(not any(self.lm[g]) for g in self.alive):
            return [{0: K.one()}]
        G = [g for g in self.alive
             if not any(h != g and _divides_t(self.lm[h], self.lm[g]) for h in self.alive)]
        G.sort(key=lambda g: ring.key(self.lm[g]))
        out = []
        for g in G:
            others = [self.red[h] for h in G if h != g]
            lk = self.red[g][0]
            tail = {k: c for k, c in self.polys[g].items() if k != lk}
            if others and tail:
                tail = K.nf(ring, tail, others, self.token)
            tail[lk] = K.one()
            out.append(tail)
        return out


def _active(polys):
    idx = set()
    for p in polys:
        idx.update(p.var_indices())
    return sorted(idx) or [0]


def _default_strategy(order):
    return "normal" if order.kind == "grevlex" else "sugar"


def _integer_dicts(ring, gens):
    """Encode generators with coprime integer coefficients."""
    out = []
    for g in gens:
        f = ring.encode(g)
        den = 1
        for c in f.values():
            den = den * int(c.denominator) // igcd(den, int(c.denominator))
        ints = {k: int(c * den) for k, c in f.items()}
        cont = 0
        for c in ints.values():
            cont = igcd(cont, c)
        out.append({k: c // cont for k, c in ints.items()})
    return out


def _reduce_mod(fs, p):
    """Images mod p, or None if p kills a leading coefficient."""
    out = []
    for f in fs:
        lk = max(f)
        if f[lk] % p == 0:
            return None
        out.append({k: c % p for k, c in f.items() if c % p})
    return out


# multi-modular lifting -----------------------------------------------------------

_PRIME_START = 2 ** 62


def primes(start=_PRIME_START):
    p = mpz(start)
    while True:
        p = gmpy2.next_prime(p)
        yield int(p)


def ratrecon(a, m):
    """Rational n/d with n, d below sqrt(m/2) and n = a*d mod m, or None."""
    a, m = mpz(a) % m, mpz(m)
    bound = gmpy2.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = mpz(0), mpz(1)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gmpy2.gcd(r1, s1) != 1:
        return None
    return mpq(r1, s1)


class _Lift:
    """Chinese remaindering of residue vectors grouped by a shape signature."""

    def __init__(self):
        self.m = mpz(1)
        self.x = None
        self.count = 0
        self.candidate = None

    def add(self, residues, p):
        if self.x is None:
            self.x = [mpz(r) for r in residues]
            self.m = mpz(p)
        else:
            minv = int(gmpy2.invert(self.m % p, p))
            m = self.m
            self.x = [x + m * (((r - int(x % p)) * minv) % p) for x, r in zip(self.x, residues)]
            self.m = m * p
        self.count += 1

    def agrees(self, residues, p):
        for c, r in zip(self.candidate, residues):
            num, den = int(c.numerator) % p, int(c.denominator) % p
            if den == 0 or (num - r * den) % p:
                return False
        return True

    def reconstruct(self):
        out = []
        for x in self.x:
            q = ratrecon(x, self.m)
            if q is None:
                return None
            out.append(q)
        return out


def multimodular(run_mod, token=None, max_primes=2000, label="lift"):
    """Lift a modular computation to Q.

    ``run_mod(p)`` returns ``(signature, residues)`` or ``None`` for a prime
    to skip.  Residue vectors sharing a signature are combined; a rational
    reconstruction is accepted when a further prime with the same signature
    reproduces it.  Returns ``(signature, rationals)``.
    """
    buckets = {}
    used = 0
    for p in primes():
        _check(token)
        if used >= max_primes:
            break
        used += 1
        got = run_mod(p)
        if got is None:
            continue
        sig, residues = got
        b = buckets.setdefault(sig, _Lift())
        if b.candidate is not None:
            if b.agrees(residues, p):
                log.debug("%s: accepted after %d primes", label, b.count + 1)
                return sig, b.candidate
            b.candidate = None
        b.add(residues, p)
        if b.count == max(x.count for x in buckets.values()):
            b.candidate = b.reconstruct()
    raise ArithmeticError(f"{label}: no stable rational reconstruction after {used} primes")


# Groebner bases ------------------------------------------------------------------

def _signature(ring, basis):
    return tuple(tuple(sorted(f, reverse=True)) for f in basis)


def _flatten(basis):
    out = []
    for f in basis:
        for k in sorted(f, reverse=True):
            out.append(f[k])
    return out


def _unflatten(sig, values):
    out, i = [], 0
    for keys in sig:
        f = {}
        for k in keys:
            f[k] = values[i]
            i += 1
        out.append(f)
    return out


def _gb_mod(ring, ints, p, order, token, strategy=None, select=None, tracer=None):
    imgs = _reduce_mod(ints, p)
    if imgs is None:
        return None
    if tracer is None:
        tracer = _Tracer(ring, token, strategy or _default_strategy(order))
    eng = tracer.engine(_PrimeField(p), imgs)
    if eng is None:
        return None
    basis = eng.reduced_basis()
    if select is not None:
        basis = [f for f in basis if select(f)]
    return basis


def groebner_basis(gens, order=GREVLEX, token=None, strategy=None, method="modular"):
    """Reduced Groebner basis of ``gens`` (list of Poly) for ``order``."""
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("groebner_basis needs at least one nonzero generator")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    reg = gens[0].reg
    ring = PackedRing(reg, order, _active(gens))
    t0 = time.perf_counter()
    if any(g.is_constant() for g in gens):
        dicts = [{0: mpq(1)}]
    elif method == "rational":
        eng = _Engine(ring, _Rationals(), token, strategy or _default_strategy(order))
        eng.run([ring.encode(g) for g in gens])
        dicts = eng.reduced_basis()
    else:
        ints = _integer_dicts(ring, gens)
        tracer = _Tracer(ring, token, strategy or _default_strategy(order))

        def run(p):
            basis = _gb_mod(ring, ints, p, order, token, strategy, tracer=tracer)
            if basis is None:
                return None
            return _signature(ring, basis), _flatten(basis)

        sig, vals = multimodular(run, token, label="groebner")
        dicts = _unflatten(sig, vals)
    polys = [ring.decode(f) for f in dicts]
    stats = {"size": len(polys), "seconds": time.perf_counter() - t0, "method": method}
    return IdealBasis(polys, order, True, stats)


def is_groebner(basis, order=GREVLEX):
    """Buchberger criterion over Q: every S-polynomial reduces to zero."""
    gens = list(basis)
    ring = PackedRing(gens[0].reg, order, _active(gens))
    K = _Rationals()
    eng = _Engine(ring, K)
    for g in gens:
        f = ring.encode(g)
        rec = ring.reducer(f)
        inv = 1 / f[rec[0]]
        eng.polys.append({k: c * inv for k, c in f.items()})
        eng.lm.append(ring.exps(rec[0]))
        eng.red.append(rec)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = eng.spoly(i, j, _lcm(eng.lm[i], eng.lm[j]))
            if ring.normal_form(s, eng.red):
                return False
    return True


def reduce(f, basis, order=GREVLEX):
    """Normal form of Poly ``f`` with respect to a Groebner basis."""
    gens = [g for g in basis if g]
    ring = PackedRing(f.reg, order, _active(gens + [f]))
    red = [ring.reducer(ring.encode(g)) for g in gens]
    return ring.decode(ring.normal_form(ring.encode(f), red))


# presolve ------------------------------------------------------------------------

def presolve_linear(gens, eliminable):
    """Substitute away variables some generator determines linearly.

    A generator ``c*x + r`` with ``c`` a nonzero constant and ``r`` free of
    ``x`` lets ``x`` be replaced by ``-r/c`` everywhere without changing the
    elimination ideal onto the remaining variables.  Returns the reduced
    generator list and the substitutions made, in order, as ``(x, expr)``.
    """
    gens = [g for g in gens if g]
    eliminable = set(eliminable)
    subs = []
    while True:
        best = None
        for gi, g in enumerate(gens):
            if g.is_constant():
                continue
            for x in g.variables():
                if x not in eliminable:
                    continue
                parts = g.coeffs_in(x)
                if max(parts) != 1 or not parts[1].is_constant():
                    continue
                rest = parts.get(0, Poly.zero(g.reg))
                if best is None or len(rest) < best[0]:
                    best = (len(rest), gi, x, rest / (-parts[1].constant_term()))
        if best is None:
            return gens, subs
        _, gi, x, expr = best
        subs.append((x, expr))
        eliminable.discard(x)
        rest = gens[:gi] + gens[gi + 1:]
        gens = [g.substitute({x: expr}) if x in g.variables() else g for g in rest]
        gens = [g for g in gens if g]


def back_substitute(subs, values):
    """Expressions for every presolved variable in terms of the kept ones."""
    out = dict(values)
    for x, expr in reversed(subs):
        binding = {k: v for k, v in out.items() if k in expr.variables()}
        out[x] = expr.substitute(binding)
    return out


# zero-dimensional quotient -------------------------------------------------------

class _Quotient:
    """Multiplication by a variable in Q[vars]/I (or GF(p)[vars]/I)."""

    def __init__(self, ring, K, basis_dicts, token=None):
        self.ring = ring
        self.K = K
        self.red = [K.reducer(ring, f) for f in basis_dicts]
        self.token = token
        self.unit = len(basis_dicts) == 1 and not any(ring.exps(max(basis_dicts[0])))

    def zero_dimensional(self):
        if self.unit:
            return True
        pure = set()
        for r in self.red:
            nz = [i for i, v in enumerate(self.ring.exps(r[0])) if v]
            if len(nz) == 1:
                pure.add(nz[0])
        return len(pure) == self.ring.n

    def dimension(self):
        """Number of standard monomials (vector-space dimension)."""
        if self.unit:
            return 0
        ring = self.ring
        guard = ring.guard
        lms = [r[1] for r in self.red]
        zero = (0,) * ring.n
        seen = {pack(zero)}
        frontier = [zero]
        count = 1
        while frontier:
            _check(self.token)
            nxt = []
            for m in frontier:
                for i in range(ring.n):
                    e = m[:i] + (m[i] + 1,) + m[i + 1:]
                    pe = pack(e)
                    if pe in seen:
                        continue
                    seen.add(pe)
                    if any(((pe + guard - l) & guard) == guard for l in lms):
                        continue
                    count += 1
                    nxt.append(e)
            frontier = nxt
        return count

    def var_key(self, j):
        e = [0] * self.ring.n
        e[j] = 1
        return self.ring.monomial(tuple(e))

    def nf(self, f):
        return self.K.nf(self.ring, f, self.red, self.token)

    def power_basis(self, j):
        """Minimal polynomial of variable position ``j`` plus echelon rows.

        Rows map a pivot key to (normalized vector, combination over powers).
        """
        K = self.K
        xk = self.var_key(j)
        rows = {}
        cur = {0: K.one()}
        power = 0
        while True:
            _check(self.token)
            vec, comb = _reduce_rows(dict(cur), {power: K.one()}, rows, K)
            if not vec:
                coeffs = [0] * (power + 1)
                for i, c in comb.items():
                    coeffs[i] = c
                return coeffs, rows
            piv = max(vec)
            inv = K.inv(vec[piv])
            rows[piv] = ({k: K.norm(c * inv) for k, c in vec.items()},
                         {k: K.norm(c * inv) for k, c in comb.items()})
            cur = self.nf(self.ring.shift(cur, xk))
            power += 1


def _reduce_rows(vec, comb, rows, K):
    while vec:
        piv = None
        for k in sorted(vec, reverse=True):
            if k in rows:
                piv = k
                break
        if piv is None:
            break
        c = vec[piv]
        rv, rc = rows[piv]
        for k, v in rv.items():
            nv = K.norm(vec.get(k, 0) - c * v)
            if nv:
                vec[k] = nv
            else:
                vec.pop(k, None)
        for k, v in rc.items():
            nv = K.norm(comb.get(k, 0) - c * v)
            if nv:
                comb[k] = nv
            else:
                comb.pop(k, None)
    return vec, comb


def _zero_dim_run(ring, gens_ints, K, token, need_shape, y_pos, others, tracer=None):
    """Minimal polynomial of position ``y_pos`` (and shape data) in one field.

    Returns ``(signature, values)``; values list the minimal polynomial
    coefficients followed by each shape polynomial's coefficients.  The
    signature records degree, quotient dimension and shape success.
    """
    if K.modulus is None:
        eng = _Engine(ring, K, token, "normal")
        eng.run(gens_ints)
    else:
        imgs = _reduce_mod(gens_ints, K.modulus)
        if imgs is None:
            return None
        eng = (tracer or _Tracer(ring, token, "normal")).engine(K, imgs)
        if eng is None:
            return None
    q = _Quotient(ring, K, eng.reduced_basis(), token)
    if q.unit:
        return ("unit",), []
    if not q.zero_dimensional():
        return ("positive-dimensional",), []
    coeffs, rows = q.power_basis(y_pos)
    deg = len(coeffs) - 1
    if not need_shape:
        return ("minpoly", deg), coeffs
    dim = q.dimension()
    if dim != deg:
        return ("minpoly", deg, "no-shape", dim), coeffs
    vals = list(coeffs)
    for j in others:
        v = q.nf({q.var_key(j): K.one()})
        rem, comb = _reduce_rows(v, {}, rows, K)
        if rem:
            return ("minpoly", deg, "no-shape", dim), coeffs
        # comb expresses NF(y_j) = -sum comb[i] * y^i
        vals.extend(K.norm(-comb.get(i, 0)) for i in range(deg))
    return ("minpoly", deg, "shape", dim), vals


def zero_dim_solve(gens, y, token=None, method="modular", shape=False):
    """Eliminant of ``y`` for a zero-dimensional ideal, optionally with the
    shape parametrization of every other variable.

    Returns a dict with ``status`` in {"unit", "positive-dimensional",
    "minpoly", "shape"}; ``minpoly`` holds monic coefficients (lowest degree
    first) and ``shape`` maps variable names to coefficient lists.
    """
    gens = [g for g in gens if g]
    reg = gens[0].reg
    yi = reg.index(y)
    # the eliminated variable goes last, i.e. smallest in grevlex
    act = [i for i in _active(gens + [reg.var(y)]) if i != yi] + [yi]
    ring = PackedRing(reg, GREVLEX, act)
    y_pos = ring.active.index(reg.index(y))
    others = [j for j in range(ring.n) if j != y_pos]
    if any(g.is_constant() for g in gens):
        return {"status": "unit"}
    if method == "rational":
        got = _zero_dim_run(ring, [ring.encode(g) for g in gens], _Rationals(), token,
                            shape, y_pos, others)
        sig, vals = got
    else:
        ints = _integer_dicts(ring, gens)
        tracer = _Tracer(ring, token, "normal", _structure_key(ring, GREVLEX, ints, "zd"))
        sig, vals = multimodular(
            lambda p: _zero_dim_run(ring, ints, _PrimeField(p), token, shape, y_pos, others,
                                    tracer),
            token, label="zero-dim")
    out = {"status": sig[0]}
    if sig[0] in ("unit", "positive-dimensional"):
        return out
    deg = sig[1]
    out["minpoly"] = [mpq(c) for c in vals[: deg + 1]]
    if shape:
        out["dimension"] = sig[3] if len(sig) > 3 else None
        if len(sig) > 2 and sig[2] == "shape":
            out["status"] = "shape"
            out["dimension"] = sig[3]
            par = {}
            for n_, j in enumerate(others):
                start = deg + 1 + n_ * deg
                par[reg.name(ring.active[j])] = [mpq(c) for c in vals[start: start + deg]]
            out["shape"] = par
    return out


def univariate_eliminant(gens, x, token=None, method="modular"):
    """Monic generator of ``<gens> ∩ Q[x]`` for a zero-dimensional ideal.

    Returns ``None`` when the ideal is not zero-dimensional and the constant
    1 for the unit ideal.
    """
    res = zero_dim_solve(gens, x, token, method)
    reg = gens[0].reg
    if res["status"] == "unit":
        return Poly.const(reg, 1)
    if res["status"] == "positive-dimensional":
        return None
    return Poly.from_univariate(reg, x, U.canonical(res["minpoly"]))


# elimination ----------------------------------------------------------------------

def eliminate(gens, keep, token=None, use_presolve=True, method="modular"):
    """Generators of ``<gens> ∩ Q[keep]`` (list of canonical Poly)."""
    keep = list(keep)
    gens = [g for g in gens if g]
    if not gens:
        return []
    reg = gens[0].reg

    def used_vars(gs):
        u = set()
        for g in gs:
            u.update(g.variables())
        return u

    used = used_vars(gens)
    drop = [v for v in reg.names if v in used and v not in keep]
    if use_presolve and drop:
        gens, _ = presolve_linear(gens, drop)
        if not gens:
            return []
        used = used_vars(gens)
        drop = [v for v in reg.names if v in used and v not in keep]
    if any(g.is_constant() for g in gens):
        return [Poly.const(reg, 1)]
    if not drop:
        return [g.canonical() for g in groebner_basis(gens, GREVLEX, token, method=method)]
    kept_used = [v for v in keep if v in used]
    if len(kept_used) == 1:
        z = univariate_eliminant(gens, kept_used[0], token, method)
        if z is not None:
            return [z]
    keepset = set(keep)
    order = MonomialOrder.block(drop)
    if method == "rational":
        basis = groebner_basis(gens, order, token, method="rational")
        return [g.canonical() for g in basis if set(g.variables()) <= keepset]
    ring = PackedRing(reg, order, _active(gens))
    keep_pos = {j for j, i in enumerate(ring.active) if reg.name(i) in keepset}
    ints = _integer_dicts(ring, gens)
    tracer = _Tracer(ring, token, _default_strategy(order),
                     _structure_key(ring, order, ints, "elim"))

    def only_kept(f):
        return all(not e or j in keep_pos
                   for k in f for j, e in enumerate(ring.exps(k)))

    def run(p):
        basis = _gb_mod(ring, ints, p, order, token, select=only_kept, tracer=tracer)
        if basis is None:
            return None
        return _signature(ring, basis), _flatten(basis)

    sig, vals = multimodular(run, token, label="eliminate")
    return [ring.decode(f).canonical() for f in _unflatten(sig, vals)]


# eliminant post-processing ---------------------------------------------------------

def radical_generator_uni(elim_gens, x):
    """Squarefree generator of an ideal of Q[x] given by generators.

    Returns the constant 1 for the unit ideal and 0 for the zero ideal.
    """
    gens = [g for g in elim_gens if g]
    if not gens:
        if not elim_gens:
            raise ValueError("cannot infer the registry of an empty generator list")
        return Poly.zero(elim_gens[0].reg)
    reg = gens[0].reg
    acc = None
    for g in gens:
        extra = set(g.variables()) - {x}
        if extra:
            raise ValueError(f"generator involves {sorted(extra)} besides {x}")
        u = g.to_univariate(x)
        acc = u if acc is None else U.gcd(acc, u)
    if len(acc) <= 1:
        return Poly.const(reg, 1)
    return Poly.from_univariate(reg, x, U.canonical(U.squarefree_part(acc)))


def codim1_part(elim_gens):
    """Squarefree part of the gcd of the generators (1 if it is constant)."""
    from .polyring.algorithms import gcd
    gens = [g for g in elim_gens if g]
    if not gens:
        raise ValueError("codimension-1 part of the zero ideal is undefined")
    acc = gens[0]
    for g in gens[1:]:
        acc = gcd(acc, g)
        if acc.is_constant():
            break
    if acc.is_constant():
        return Poly.const(acc.reg, 1)
    return squarefree_part(acc)


def is_unit_ideal(gens, token=None, method="modular"):
    gens = [g for g in gens if g]
    if not gens:
        return False
    if any(g.is_constant() for g in gens):
        return True
    return groebner_basis(gens, GREVLEX, token, method=method).is_unit()
