"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are stored as packed integers: the exponent of variable ``i`` lives
in bits ``[16*i, 16*i+16)``.  Multiplying monomials is integer addition and
divisibility is a single masked subtraction (see ``divides``).  The public
surface speaks exponent tuples; the packing never escapes this module and
``_packed``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq, mpz, gcd as _igcd, lcm as _ilcm

from .orders import GREVLEX, LEX, MonomialOrder
from .registry import RegistryError, VarRegistry

EXP_BITS = 16
EXP_MASK = (1 << EXP_BITS) - 1
MAX_EXP = (1 << (EXP_BITS - 1)) - 1


class ZeroPolynomialError(ValueError):
    """Raised where an operation is undefined on the zero polynomial."""


class NotDivisibleError(ArithmeticError):
    pass


def pack(exps) -> int:
    e = 0
    for i, x in enumerate(exps):
        if x:
            if x > MAX_EXP or x < 0:
                raise OverflowError(f"exponent {x} out of range")
            e |= x << (EXP_BITS * i)
    return e


def unpack(e: int, n: int) -> tuple:
    return tuple((e >> (EXP_BITS * i)) & EXP_MASK for i in range(n))


def guard_mask(n: int) -> int:
    g = 0
    for i in range(n):
        g |= 1 << (EXP_BITS * i + EXP_BITS - 1)
    return g


def divides(a: int, b: int, guard: int) -> bool:
    """True when packed monomial ``a`` divides packed monomial ``b``."""
    return ((b + guard - a) & guard) == guard


def to_q(c) -> mpq:
    if isinstance(c, mpq):
        return c
    if isinstance(c, (int, mpz)):
        return mpq(c)
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    if isinstance(c, Rational):
        return mpq(int(c.numerator), int(c.denominator))
    if isinstance(c, str):
        return mpq(c)
    raise TypeError(f"not an exact rational: {c!r}")


_SCALARS = (int, mpz, mpq, Fraction)


class Poly:
    """Immutable polynomial over a :class:`VarRegistry`."""

    __slots__ = ("reg", "_t", "_hash")

    def __init__(self, reg: VarRegistry, terms=None):
        self.reg = reg
        self._t = terms if terms is not None else {}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def from_dict(cls, reg, terms):
        """Build from ``{exponent tuple: coefficient}``."""
        n = len(reg)
        t = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError("exponent tuple length does not match registry")
            c = to_q(c)
            if c:
                k = pack(exps)
                v = t.get(k, 0) + c
                if v:
                    t[k] = v
                else:
                    t.pop(k, None)
        return cls(reg, t)

    @classmethod
    def var(cls, reg, name, power=1):
        i = reg.index(name)
        return cls(reg, {power << (EXP_BITS * i): mpq(1)})

    @classmethod
    def const(cls, reg, c):
        c = to_q(c)
        return cls(reg, {0: c} if c else {})

    @classmethod
    def zero(cls, reg):
        return cls(reg, {})

    @classmethod
    def from_univariate(cls, reg, name, coeffs):
        """``coeffs[k]`` is the coefficient of ``name**k``."""
        i = reg.index(name)
        t = {}
        for k, c in enumerate(coeffs):
            c = to_q(c)
            if c:
                t[k << (EXP_BITS * i)] = c
        return cls(reg, t)

    # basic protocol ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.reg is not self.reg and other.reg != self.reg:
                raise RegistryError("polynomials live over different registries")
            return other
        if isinstance(other, _SCALARS) or isinstance(other, Rational):
            return Poly.const(self.reg, other)
        return NotImplemented

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.reg == other.reg and self._t == other._t
        if isinstance(other, _SCALARS) or isinstance(other, Rational):
            c = to_q(other)
            return self._t == ({0: c} if c else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __reduce__(self):
        return (_rebuild, (self.reg, {k: (int(c.numerator), int(c.denominator))
                                      for k, c in self._t.items()}))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self._t)
        for k, c in o._t.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return Poly(self.reg, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.reg, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS) or (isinstance(other, Rational) and not isinstance(other, Poly)):
            c = to_q(other)
            if not c:
                return Poly(self.reg, {})
            return Poly(self.reg, {k: v * c for k, v in self._t.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._t, o._t
        if len(a) < len(b):
            a, b = b, a
        t = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return Poly(self.reg, {k: v for k, v in t.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.is_constant() and other:
                other = other.constant_term()
            else:
                raise TypeError("use divexact for polynomial division")
        c = to_q(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        inv = 1 / c
        return Poly(self.reg, {k: v * inv for k, v in self._t.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(self.reg, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        from .parse import format_poly
        return format_poly(self)

    # inspection -------------------------------------------------------
    @property
    def nvars(self):
        return len(self.reg)

    def terms(self):
        """``{exponent tuple: mpq}``."""
        n = len(self.reg)
        return {unpack(k, n): c for k, c in self._t.items()}

    def items(self):
        n = len(self.reg)
        for k, c in self._t.items():
            yield unpack(k, n), c

    def coefficients(self):
        return list(self._t.values())

    def coeff(self, exps):
        return self._t.get(pack(exps), mpq(0))

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self):
        return self._t.get(0, mpq(0))

    def var_indices(self):
        n = len(self.reg)
        acc = 0
        for k in self._t:
            acc |= k
        return [i for i in range(n) if (acc >> (EXP_BITS * i)) & EXP_MASK]

    def variables(self):
        return [self.reg.name(i) for i in self.var_indices()]

    def total_degree(self):
        if not self._t:
            raise ZeroPolynomialError("degree of the zero polynomial")
        n = len(self.reg)
        return max(sum(unpack(k, n)) for k in self._t)

    def degree(self, var=None):
        """Degree in ``var``, or total degree when ``var`` is None."""
        if var is None:
            return self.total_degree()
        if not self._t:
            raise ZeroPolynomialError("degree of the zero polynomial")
        sh = EXP_BITS * self.reg.index(var)
        return max((k >> sh) & EXP_MASK for k in self._t)

    def degrees(self):
        """(total degree, {variable: degree}) over the whole registry."""
        if not self._t:
            raise ZeroPolynomialError("degree of the zero polynomial")
        n = len(self.reg)
        per = [0] * n
        total = 0
        for k in self._t:
            e = unpack(k, n)
            s = sum(e)
            if s > total:
                total = s
            for i, x in enumerate(e):
                if x > per[i]:
                    per[i] = x
        return total, {self.reg.name(i): per[i] for i in range(n)}

    def is_homogeneous(self, variables=None):
        if not self._t:
            return True
        n = len(self.reg)
        idx = range(n) if variables is None else self.reg.indices(variables)
        degs = {sum(unpack(k, n)[i] for i in idx) for k in self._t}
        return len(degs) == 1

    def leading(self, order: MonomialOrder = GREVLEX):
        """(exponent tuple, coefficient) of the leading term."""
        if not self._t:
            raise ZeroPolynomialError("leading term of the zero polynomial")
        n = len(self.reg)
        key = order.key_function(self.reg)
        best = max(self._t, key=lambda k: key(unpack(k, n)))
        return unpack(best, n), self._t[best]

    def lc(self, order=GREVLEX):
        return self.leading(order)[1]

    def sorted_items(self, order=GREVLEX):
        n = len(self.reg)
        key = order.key_function(self.reg)
        items = [(unpack(k, n), c) for k, c in self._t.items()]
        items.sort(key=lambda it: key(it[0]), reverse=True)
        return items

    # transformations --------------------------------------------------
    def monic(self, order=GREVLEX):
        return self / self.lc(order)

    def canonical(self, order=LEX):
        """Integer coefficients, unit content, positive lex-leading coefficient."""
        if not self._t:
            return self
        den = mpz(1)
        for c in self._t.values():
            den = _ilcm(den, c.denominator)
        nums = [c * den for c in self._t.values()]
        g = mpz(0)
        for c in nums:
            g = _igcd(g, c.numerator)
        scale = mpq(den) / g
        if self.lc(order) < 0:
            scale = -scale
        return Poly(self.reg, {k: c * scale for k, c in self._t.items()})

    def primitive(self):
        """Same as ``canonical`` (content stripped, sign normalised)."""
        return self.canonical()

    def diff(self, var):
        i = self.reg.index(var)
        sh = EXP_BITS * i
        one = 1 << sh
        t = {}
        for k, c in self._t.items():
            e = (k >> sh) & EXP_MASK
            if e:
                t[k - one] = c * e
        return Poly(self.reg, t)

    def coeffs_in(self, var):
        """View as a univariate polynomial in ``var``: ``{power: Poly}``."""
        sh = EXP_BITS * self.reg.index(var)
        out = {}
        for k, c in self._t.items():
            e = (k >> sh) & EXP_MASK
            out.setdefault(e, {})[k - (e << sh)] = c
        return {e: Poly(self.reg, t) for e, t in out.items()}

    def coeff_list(self, var):
        """Dense list of Poly coefficients in ``var``, low degree first."""
        if not self._t:
            return []
        parts = self.coeffs_in(var)
        d = max(parts)
        z = Poly(self.reg, {})
        return [parts.get(e, z) for e in range(d + 1)]

    def to_univariate(self, var):
        """Dense list of mpq coefficients; ``self`` may only involve ``var``."""
        extra = set(self.variables()) - {var}
        if extra:
            raise ValueError(f"not univariate in {var}: also involves {sorted(extra)}")
        if not self._t:
            return []
        sh = EXP_BITS * self.reg.index(var)
        d = max(k >> sh for k in self._t)
        out = [mpq(0)] * (d + 1)
        for k, c in self._t.items():
            out[k >> sh] = c
        return out

    def substitute(self, bindings):
        """Simultaneous substitution ``{variable name: Poly or scalar}``."""
        if not bindings:
            return self
        n = len(self.reg)
        repl = {}
        for name, val in bindings.items():
            i = self.reg.index(name)
            if not isinstance(val, Poly):
                val = Poly.const(self.reg, val)
            elif val.reg != self.reg:
                raise RegistryError("binding lives over a different registry")
            repl[i] = val
        keep_mask = 0
        for i in range(n):
            if i not in repl:
                keep_mask |= EXP_MASK << (EXP_BITS * i)
        powers = {i: [Poly.const(self.reg, 1)] for i in repl}

        def power(i, e):
            lst = powers[i]
            while len(lst) <= e:
                lst.append(lst[-1] * repl[i])
            return lst[e]

        groups = {}
        for k, c in self._t.items():
            sub = tuple((k >> (EXP_BITS * i)) & EXP_MASK for i in sorted(repl))
            groups.setdefault(sub, {})[k & keep_mask] = c
        acc = {}
        order = sorted(repl)
        for sub, rest in groups.items():
            factor = None
            for i, e in zip(order, sub):
                if e:
                    p = power(i, e)
                    factor = p if factor is None else factor * p
            if factor is None:
                for k, c in rest.items():
                    v = acc.get(k, 0) + c
                    acc[k] = v
                continue
            for kf, cf in factor._t.items():
                for k, c in rest.items():
                    kk = k + kf
                    acc[kk] = acc.get(kk, 0) + c * cf
        return Poly(self.reg, {k: v for k, v in acc.items() if v})

    def evaluate(self, point):
        """Exact value at ``{variable name: rational}``; all variables bound."""
        n = len(self.reg)
        vals = [None] * n
        for name, v in point.items():
            vals[self.reg.index(name)] = to_q(v)
        for i in self.var_indices():
            if vals[i] is None:
                raise RegistryError(f"variable {self.reg.name(i)!r} is not bound")
        total = mpq(0)
        cache = {}
        for k, c in self._t.items():
            term = c
            for i in range(n):
                e = (k >> (EXP_BITS * i)) & EXP_MASK
                if e:
                    key = (i, e)
                    p = cache.get(key)
                    if p is None:
                        p = vals[i] ** e
                        cache[key] = p
                    term *= p
            total += term
        return total

    def partial_evaluate(self, point):
        """Substitute rationals for some variables, keep the rest symbolic."""
        return self.substitute({k: to_q(v) for k, v in point.items()})

    def to_registry(self, reg: VarRegistry):
        """Move to another registry containing all variables used here."""
        if reg == self.reg:
            return self
        n = len(self.reg)
        idx = {i: reg.index(self.reg.name(i)) for i in self.var_indices()}
        t = {}
        for k, c in self._t.items():
            e = unpack(k, n)
            new = [0] * len(reg)
            for i, j in idx.items():
                new[j] = e[i]
            t[pack(new)] = c
        return Poly(reg, t)

    def divexact(self, other):
        from ._packed import divexact
        return divexact(self, other)

    def divides(self, other):
        from ._packed import divmod_poly
        return not divmod_poly(other, self)[1]


def _rebuild(reg, data):
    return Poly(reg, {k: mpq(a, b) for k, (a, b) in data.items()})
