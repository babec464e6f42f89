"""Exact counting of complex, real and positive critical points at data.

The likelihood system is specialized at rational data, brought into shape
position (a squarefree eliminant g(y) in one unknown plus every other
unknown as a polynomial in y modulo g), and the real roots of g are isolated
with Sturm sequences.  A real root is positive when every probability
coordinate evaluated there is positive; those signs are decided exactly by
interval refinement.
"""

from __future__ import annotations

import logging
import warnings
from collections import Counter
from dataclasses import dataclass, field

from gmpy2 import mpq

from . import groebner, seeding
from .likelihood import DataVector
from .polyring import Poly, VarRegistry, univariate as U
from .discriminant.types import ShapeFailure

log = logging.getLogger(__name__)


class ZeroCoordinateWarning(UserWarning):
    """A data coordinate is zero, so the point lies on D_{X,p}."""


@dataclass
class ShapeBasis:
    """``var`` is a root of ``eliminant``; other unknowns are given by
    ``parametrizations[name]`` evaluated at that root (all coefficient lists,
    lowest degree first)."""

    var: str
    eliminant: list
    parametrizations: dict
    separating: dict = None

    @property
    def degree(self):
        return U.degree(self.eliminant)


@dataclass
class Isolation:
    intervals: list

    def __len__(self):
        return len(self.intervals)


@dataclass
class ProbeReport:
    u: DataVector
    complex: int
    real: int
    positive: object
    sign: object = None
    shape: bool = True
    notes: list = field(default_factory=list)

    def row(self):
        sign = "" if self.sign is None else str(self.sign)
        pos = "" if self.positive is None else str(self.positive)
        return [*self.u.text().split(","), sign, str(self.complex), str(self.real), pos,
                "shape" if self.shape else "no-shape"]


def _as_data(u):
    return u if isinstance(u, DataVector) else DataVector(tuple(mpq(x) for x in u))


def specialize(system, u):
    """Equations with the data substituted; warns on zero coordinates."""
    u = _as_data(u)
    if len(u) != len(system.params):
        raise ValueError(f"expected {len(system.params)} data coordinates, got {len(u)}")
    if any(x == 0 for x in u):
        warnings.warn("a zero data coordinate lies on D_{X,p}; proceeding",
                      ZeroCoordinateWarning, stacklevel=2)
    return system.specialize(dict(zip(system.params, u)))


def _compose_mod(expr, y, shape, g):
    """``expr`` (a Poly in unknowns) at the parametrization, reduced mod g."""
    acc = []
    for exps, c in expr.terms().items():
        term = [mpq(c)]
        for name, e in zip(expr.reg.names, exps):
            if e:
                q = shape[name]
                for _ in range(e):
                    term = U.rem(U.mul(term, q), g)
        acc = U.add(acc, term)
    return U.rem(acc, g) if acc else []


def shape_basis(gens, y, token=None):
    """Shape-position description of a zero-dimensional system in ``y``.

    Raises ShapeFailure when ``y`` does not separate the solutions or the
    ideal is not radical, and NotZeroDimensional for positive dimension.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise groebner.NotZeroDimensional("no equations")
    reg = gens[0].reg
    unknowns = sorted({v for g in gens for v in g.variables()}, key=reg.index)
    if y not in unknowns:
        unknowns.append(y)
    reduced, subs = groebner.presolve_linear(gens, [v for v in unknowns if v != y])
    if not reduced:
        raise groebner.NotZeroDimensional("presolve consumed every equation")
    if any(g.is_constant() for g in reduced):
        return ShapeBasis(y, [mpq(1)], {})
    res = groebner.zero_dim_solve(reduced, y, token, shape=True)
    if res["status"] == "unit":
        return ShapeBasis(y, [mpq(1)], {})
    if res["status"] == "positive-dimensional":
        raise groebner.NotZeroDimensional("specialized system has positive dimension")
    if res["status"] != "shape":
        raise ShapeFailure(f"{y} does not separate the solutions "
                           f"(eliminant degree {len(res['minpoly']) - 1}, "
                           f"quotient dimension {res.get('dimension')})")
    g = res["minpoly"]
    shape = {name: list(q) for name, q in res["shape"].items()}
    shape[y] = U.rem([mpq(0), mpq(1)], g) if U.degree(g) > 1 else [-g[0]]
    for x, expr in reversed(subs):
        shape[x] = _compose_mod(expr, y, shape, g)
    present = set(unknowns) | {x for x, _ in subs}
    for name in present:
        shape.setdefault(name, [])
    return ShapeBasis(y, g, {k: U.strip(v) for k, v in shape.items()})


def _separating_shape(gens, unknowns, seed, token):
    """Shape basis in a fresh variable z = sum c_i y_i (random c)."""
    reg = gens[0].reg
    z = "_z"
    while z in reg:
        z = "_" + z
    reg2 = VarRegistry(reg.names + (z,), dict(reg.blocks, aux=(z,)))
    rng = seeding.stream(seed, "separating")
    form = reg2.var(z) * 0
    coeffs = {}
    for name in unknowns:
        c = seeding.nonzero_int(rng, -9, 9)
        coeffs[name] = c
        form = form + reg2.var(name) * c
    moved = [g.to_registry(reg2) for g in gens] + [reg2.var(z) - form]
    sb = shape_basis(moved, z, token)
    sb.separating = coeffs
    return sb


def sturm_count(f, lo=None, hi=None):
    """Distinct real roots of ``f`` (coefficient list or univariate Poly) in
    ``(lo, hi]``; ``None`` bounds mean infinity."""
    a = _coeffs(f)
    if not a:
        raise ValueError("Sturm count of the zero polynomial")
    return U.sturm_count(U.squarefree_part(a), lo, hi)


def isolate_real_roots(f):
    a = _coeffs(f)
    if U.degree(a) < 1:
        return Isolation([])
    return Isolation(U.isolate_real_roots(U.squarefree_part(a)))


def _coeffs(f):
    if isinstance(f, Poly):
        vs = f.variables()
        if len(vs) > 1:
            raise ValueError("expected a univariate polynomial")
        if not vs:
            return U.strip([f.constant_term()])
        return f.to_univariate(vs[0])
    return U.strip([mpq(c) for c in f])


def _value_at(dxj, system, u):
    return dxj.evaluate({n: x for n, x in zip(system.params, u) if n in dxj.reg})


def _positive_vars(system):
    reg = system.reg
    if "p" in reg.blocks and reg.block("p"):
        return list(reg.block("p"))
    return list(system.unknowns)


def count_solutions(system, u, dxj=None, seed=0, token=None):
    """ProbeReport with exact counts of distinct solutions at ``u``."""
    u = _as_data(u)
    notes = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ZeroCoordinateWarning)
        gens = specialize(system, u)
    notes.extend(str(w.message) for w in caught)
    sign = None if dxj is None else U.sign(_value_at(dxj, system, u))
    pos_vars = _positive_vars(system)
    try:
        try:
            sb = shape_basis(gens, system.primary, token)
        except ShapeFailure as e:
            notes.append(f"{e}; retrying with a separating linear form")
            sb = _separating_shape(gens, list(system.unknowns), seed, token)
    except ShapeFailure as e:
        notes.append(f"shape failure after a change of unknowns: {e}")
        g = groebner.univariate_eliminant(gens, system.primary, token)
        a = U.squarefree_part(g.to_univariate(system.primary)) if not g.is_constant() else [1]
        real = sturm_count(a)
        return ProbeReport(u, U.degree(a), real, None, sign, False, notes)
    g = sb.eliminant
    iso = U.isolate_real_roots(g) if U.degree(g) > 0 else []
    positive = 0
    for interval in iso:
        if all(U.sign_at_root(sb.parametrizations[v], g, interval) > 0 for v in pos_vars):
            positive += 1
    return ProbeReport(u, U.degree(g), len(iso), positive, sign, True, notes)


def region_classify(system, dxj, points, seed=0, token=None):
    """Reports for data points off the discriminant (sign 0 is skipped)."""
    out = []
    for u in points:
        u = _as_data(u)
        if _value_at(dxj, system, u) == 0:
            log.warning("point %s lies on the discriminant; skipped", u.text())
            continue
        if any(x == 0 for x in u):
            log.warning("point %s lies on D_{X,p}; skipped", u.text())
            continue
        out.append(count_solutions(system, u, dxj, seed, token))
    return out


def summarize(reports):
    """Multiset of (sign, real, positive) patterns."""
    return Counter((r.sign, r.real, r.positive) for r in reports)
