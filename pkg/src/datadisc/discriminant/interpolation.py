"""Reconstruction of D_{X,J} from univariate sections.

After a linear change of coordinates the main parameter v_m has degree d in
D*, so every section in v_m normalizes to a monic polynomial whose lower
coefficients are values of the coefficient polynomials C_j of D*.

Strategy 1 solves for every C_j at once over its full degree-bound support.
Strategy 2 frees one parameter at a time: a bivariate slice first, then each
further parameter by univariate interpolation of every term, with a known
support read off the previous slice; the last parameter comes back through
homogeneity.  Strategy 3 is Strategy 2 with sections computed through the
bivariate resultant route.
"""

from __future__ import annotations

import itertools
import logging
import time

from gmpy2 import mpq

from .. import seeding
from ..groebner import Deadline
from ..likelihood import ml_degree
from ..polyring import Poly, solve_rational
from .linalg import Echelon, Inconsistent, RankDeficient, interpolate, solve_consistent
from .sampling import SamplePool, degree_profile, degree_profile_s3, section
from .types import (CoordinateChange, DegenerateSampleError, DegreeProfile,
                    DiscriminantResult, InterpolationState, SupportMismatch)

log = logging.getLogger(__name__)

LINOP_DRAWS = 5
SHEAR_LO, SHEAR_HI = -9, 9
RESAMPLE_ROUNDS = 3


# coordinate change ---------------------------------------------------------------------

def transformed(system, change):
    """The system in the new coordinates (same parameter names)."""
    if change.is_identity():
        return system
    return system.substitute_params(change.bindings(system.params, system.reg, "forward"))


def linear_operator(system, seed=0, profile=None, token=None):
    """Coordinate change making a pure power of one parameter appear in D.

    Returns the identity (main = first parameter of full degree) when one
    exists; otherwise a shear on the parameter of largest degree, redrawn
    until a test section reaches the total degree.
    """
    if profile is None:
        profile = degree_profile(system, seed, token)
    n = len(system.params)
    full = [i for i, di in enumerate(profile.per_param) if di == profile.d]
    if full:
        return CoordinateChange.identity(n, full[0])
    main = max(range(n), key=lambda i: (profile.per_param[i], -i))
    for attempt in range(LINOP_DRAWS):
        rng = seeding.stream(seed, "linop", attempt)
        a = tuple(0 if i == main else seeding.nonzero_int(rng, SHEAR_LO, SHEAR_HI)
                  for i in range(n))
        change = CoordinateChange(a, main)
        pt = seeding.nonzero_ints(rng, n - 1)
        try:
            section(transformed(system, change), pt, main, profile.d, token)
            return change
        except DegenerateSampleError as e:
            log.info("coordinate change %s rejected: %s", a, e)
    raise DegenerateSampleError(f"no admissible coordinate change in {LINOP_DRAWS} draws")


def transformed_profile(profile, change):
    per = list(profile.per_param)
    per[change.main] = profile.d
    return DegreeProfile(profile.d, tuple(per))


# helpers ---------------------------------------------------------------------------------

def homogeneous_recovery(partial, d, last_var, last_value):
    """Rebuild a homogeneous degree-``d`` polynomial from its value at
    ``last_var = last_value``."""
    v = mpq(last_value)
    if v == 0:
        raise ValueError("homogeneous recovery needs a nonzero fixed value")
    reg = partial.reg
    j = reg.index(last_var)
    out = {}
    for exps, c in partial.terms().items():
        if exps[j]:
            raise ValueError(f"partial polynomial still involves {last_var}")
        e = sum(exps)
        if e > d:
            raise ValueError(f"term of degree {e} exceeds {d}")
        k = d - e
        ex = list(exps)
        ex[j] = k
        out[tuple(ex)] = c / v ** k
    return Poly.from_dict(reg, out)


def bounded_monomials(nvars, total, bounds, exact=True):
    """Exponent vectors with the given total (or at most it) under bounds."""
    out = []
    for ex in itertools.product(*(range(min(b, total) + 1) for b in bounds)):
        s = sum(ex)
        if s == total or (not exact and s <= total):
            out.append(ex)
    return out


def _monomial_value(ex, vals):
    r = mpq(1)
    for e, x in zip(ex, vals):
        if e:
            r *= mpq(x) ** e
    return r


def _full_exps(reg, names, sub, extra=None):
    ex = [0] * len(reg)
    for name, e in zip(names, sub):
        ex[reg.index(name)] = e
    if extra:
        for name, e in extra.items():
            ex[reg.index(name)] += e
    return tuple(ex)


class _Sampler:
    """Sections of the transformed system, with bookkeeping."""

    def __init__(self, tsys, main, d, pool, route, ml_deg, state):
        self.tsys = tsys
        self.main = main
        self.d = d
        self.pool = pool
        self.route = route
        self.ml_deg = ml_deg
        self.state = state
        self.seen = set()
        self.others = [u for i, u in enumerate(tsys.params) if i != main]

    def sections(self, points):
        """Monic coefficient lists (or None if degenerate) for each point dict."""
        jobs = []
        for pt in points:
            values = [mpq(pt[u]) for u in self.others]
            jobs.append((values, self.main, self.d, self.route, self.ml_deg))
        out = []
        for pt, (tag, res) in zip(points, self.pool.map(jobs)):
            if tag == "ok":
                self.state.samples.append((dict(pt), res))
                out.append(res)
            else:
                log.debug("degenerate sample %s: %s", pt, res)
                out.append(None)
        return out

    def fresh(self, rng, fixed, free):
        """Random point for ``free`` names, distinct from earlier ones."""
        while True:
            pt = dict(fixed)
            for u in free:
                pt[u] = seeding.nonzero_int(rng)
            key = tuple(sorted((k, mpq(v)) for k, v in pt.items()))
            if key not in self.seen:
                self.seen.add(key)
                return pt


def _finish(system, dstar, change, strategy, profile, seed, sampler, state, t0, timings):
    params = system.params
    d = change.inverse(dstar, params) if not change.is_identity() else dstar
    d = d.canonical()
    timings["total"] = time.monotonic() - t0
    return DiscriminantResult(d, strategy, profile, seed, len(state.samples), None, change,
                              timings, state)


def _setup(system, seed, profile, change, token, route, ml_deg):
    timings = {}
    t = time.monotonic()
    if route == "s3" and ml_deg is None:
        ml_deg = system.ml_degree_cache or ml_degree(system, seed, token=token)
    if profile is None:
        profile = (degree_profile_s3(system, seed, ml_deg, token) if route == "s3"
                   else degree_profile(system, seed, token))
    timings["degree"] = time.monotonic() - t
    t = time.monotonic()
    if change is None:
        change = linear_operator(system, seed, profile, token)
    timings["coordinates"] = time.monotonic() - t
    return profile, change, ml_deg, timings


# strategy 1 ------------------------------------------------------------------------------

def interpolate_strategy1(system, seed=0, profile=None, change=None, points=None,
                          threads=1, token=None, route="elim", ml_deg=None):
    """Interpolate D over the full degree-bound support of every C_j.

    ``points`` optionally lists sample points (values of the non-main
    parameters in order) to use before random ones.
    """
    t0 = time.monotonic()
    profile, change, ml_deg, timings = _setup(system, seed, profile, change, token, route, ml_deg)
    tsys = transformed(system, change)
    m, d = change.main, profile.d
    reg = tsys.reg
    others = [u for i, u in enumerate(tsys.params) if i != m]
    bounds = [profile.per_param[i] for i in range(len(tsys.params)) if i != m]
    supports = {j: bounded_monomials(len(others), j, bounds) for j in range(1, d + 1)}
    state = InterpolationState(transformed_profile(profile, change),
                               {j: [_full_exps(reg, others, ex) for ex in s]
                                for j, s in supports.items()})
    ech = {j: Echelon(len(s)) for j, s in supports.items()}
    chosen = {j: [] for j in supports}
    t = time.monotonic()
    with SamplePool(tsys, threads, token) as pool:
        sampler = _Sampler(tsys, m, d, pool, route, ml_deg, state)
        queue = [dict(zip(others, p)) for p in (points or [])]
        for pt in queue:
            sampler.seen.add(tuple(sorted((k, mpq(v)) for k, v in pt.items())))
        batch = 0
        stalls = 0
        while True:
            need = max(len(supports[j]) - ech[j].rank for j in supports)
            if need == 0:
                break
            if not queue:
                rng = seeding.stream(seed, "s1", batch)
                queue = [sampler.fresh(rng, {}, others) for _ in range(need)]
            pts, queue = queue[:need], queue[need:]
            before = sum(e.rank for e in ech.values())
            start = len(state.samples)
            sampler.sections(pts)
            for k in range(start, len(state.samples)):
                pt, coeffs = state.samples[k]
                vals = [pt[u] for u in others]
                for j, sup in supports.items():
                    if ech[j].rank < len(sup):
                        if ech[j].add([_monomial_value(ex, vals) for ex in sup]):
                            chosen[j].append(k)
            stalls = stalls + 1 if sum(e.rank for e in ech.values()) == before else 0
            if stalls > RESAMPLE_ROUNDS:
                raise DegenerateSampleError("interpolation matrices stay singular")
            batch += 1
    timings["sampling"] = time.monotonic() - t
    t = time.monotonic()
    mv = reg.var(tsys.params[m])
    dstar = mv ** d
    for j, sup in supports.items():
        rows, rhs = [], []
        for k in chosen[j]:
            pt, coeffs = state.samples[k]
            vals = [pt[u] for u in others]
            rows.append([_monomial_value(ex, vals) for ex in sup])
            rhs.append(coeffs[d - j])
        sol = solve_rational(rows, rhs)
        cj = Poly.from_dict(reg, {_full_exps(reg, others, ex): c for ex, c in zip(sup, sol)})
        state.solved[j] = cj
        dstar = dstar + cj * mv ** (d - j)
    timings["solve"] = time.monotonic() - t
    state.slices["dstar"] = dstar
    return _finish(system, dstar, change, "s1", profile, seed, sampler, state, t0, timings)


# strategy 2 ------------------------------------------------------------------------------

def _assemble(reg, mvar, d, by_power):
    """Sum of ``by_power[j] * mvar^(d-j)`` plus the monic leading term."""
    out = reg.var(mvar) ** d
    for j, cj in by_power.items():
        out = out + cj * reg.var(mvar) ** (d - j)
    return out


def _slice_dense_1d(sampler, mvar, d, var, values, fixed, label, rng, replay):
    """Bivariate slice D*(v_m, var) from sections at ``values`` of ``var``."""
    reg = sampler.tsys.reg
    xs, cs = [], []
    pending = list(values)
    rounds = 0
    while pending:
        got = sampler.sections([dict(fixed, **{var: y}) for y in pending])
        bad = []
        for y, co in zip(pending, got):
            if co is None:
                if replay:
                    raise DegenerateSampleError(f"replay value {var}={y} is degenerate")
                bad.append(y)
            else:
                xs.append(mpq(y))
                cs.append(co)
        rounds += 1
        if bad and rounds > RESAMPLE_ROUNDS:
            raise DegenerateSampleError(f"{label}: repeated degenerate values")
        pending = []
        for _ in bad:
            pt = sampler.fresh(rng, fixed, [var])
            pending.append(pt[var])
    out = reg.var(mvar) ** d
    solved = {}
    for j in range(1, d + 1):
        poly = interpolate(xs, [c[d - j] for c in cs])
        cj = Poly.from_univariate(reg, var, poly) if poly else Poly.zero(reg)
        solved[j] = cj
        out = out + cj * reg.var(mvar) ** (d - j)
    return out, solved


def _split_by_power(poly, mvar, free):
    """``{j: [(sub-exponents over free, coefficient)]}`` with j = d - mvar power."""
    reg = poly.reg
    mi = reg.index(mvar)
    idx = [reg.index(u) for u in free]
    out = {}
    for exps, c in poly.terms().items():
        out.setdefault(exps[mi], []).append((tuple(exps[i] for i in idx), c))
    return out


def _sparse_slice(sampler, mvar, d, free, support, fixed, rng, label):
    """D* restricted to ``fixed`` with given support per v_m-power.

    ``support[p]`` lists exponent vectors over ``free`` for the coefficient
    of ``mvar^p``.  One more point than the largest support is sampled so
    that every solve is checked; an inconsistency raises SupportMismatch.
    """
    reg = sampler.tsys.reg
    need = max((len(s) for p, s in support.items() if p != d), default=0) + 1
    pts, cos = [], []
    for attempt in range(RESAMPLE_ROUNDS + 1):
        short = need - len(pts)
        if short > 0:
            batch = [sampler.fresh(rng, fixed, free) for _ in range(short)]
            for pt, co in zip(batch, sampler.sections(batch)):
                if co is not None:
                    pts.append([pt[u] for u in free])
                    cos.append(co)
        if len(pts) < need:
            continue
        try:
            solved = {}
            for p, sup in support.items():
                if p == d:
                    continue
                rows = [[_monomial_value(ex, v) for ex in sup] for v in pts]
                rhs = [co[p] for co in cos]
                solved[p] = solve_consistent(rows, rhs)
            # powers absent from the support must vanish at every sample
            for p in range(d):
                if p not in support and any(co[p] for co in cos):
                    raise Inconsistent(f"unexpected power {p} of {mvar}")
        except RankDeficient:
            need += max(1, need // 4)
            continue
        except Inconsistent as e:
            raise SupportMismatch(f"{label}: {e}") from None
        terms = {_full_exps(reg, [mvar], [d]): mpq(1)}
        for p, sol in solved.items():
            for ex, c in zip(support[p], sol):
                if c:
                    terms[_full_exps(reg, free, ex, {mvar: p})] = c
        return Poly.from_dict(reg, terms)
    raise DegenerateSampleError(f"{label}: interpolation matrices stay singular")


def _dense_support(d, free, bounds):
    """Degree-bound support per power of v_m (power p leaves degree d - p)."""
    return {p: bounded_monomials(len(free), d - p, bounds, exact=False) for p in range(d)}


def interpolate_strategy2(system, seed=0, profile=None, change=None, homog_var=None,
                          order=None, base=None, stage_values=None, threads=1, token=None,
                          route="elim", ml_deg=None, strategy="s2"):
    """Interpolate D one parameter at a time.

    ``homog_var`` is recovered by homogeneity at its base value; ``order``
    lists the remaining non-main parameters in the order they are freed.
    ``base`` fixes parameters not yet freed; ``stage_values`` gives, per
    freed parameter, the values at which slices are taken (for every
    parameter after the first the list starts with its base value).
    """
    t0 = time.monotonic()
    profile, change, ml_deg, timings = _setup(system, seed, profile, change, token, route, ml_deg)
    tsys = transformed(system, change)
    m, d = change.main, profile.d
    reg = tsys.reg
    params = tsys.params
    mvar = params[m]
    deg = {u: profile.per_param[i] for i, u in enumerate(params) if i != m}
    others = [u for u in params if u != mvar]
    if homog_var is None and others:
        homog_var = max(reversed(others), key=lambda u: deg[u])
    if order is None:
        order = sorted((u for u in others if u != homog_var), key=lambda u: deg[u])
    order = list(order)
    if sorted(order + ([homog_var] if homog_var else [])) != sorted(others):
        raise ValueError("order and homogeneity variable must cover the non-main parameters")
    replay = stage_values is not None
    base = dict(base or {})
    stage_values = {k: list(v) for k, v in (stage_values or {}).items()}
    rng0 = seeding.stream(seed, "s2", "base")
    for u in order[1:] + ([homog_var] if homog_var else []):
        if u not in base:
            base[u] = seeding.nonzero_int(rng0)
    state = InterpolationState(transformed_profile(profile, change))
    t = time.monotonic()
    with SamplePool(tsys, threads, token) as pool:
        sampler = _Sampler(tsys, m, d, pool, route, ml_deg, state)
        if not order:
            pt = {u: base[u] for u in others}
            co = sampler.sections([pt])[0]
            if co is None:
                raise DegenerateSampleError(f"base point {pt} is degenerate")
            current = _assemble(reg, mvar, d, {
                j: Poly.const(reg, co[d - j]) for j in range(1, d + 1)})
        else:
            o1 = order[0]
            fixed = {u: base[u] for u in order[1:] + [homog_var] if u}
            vals = stage_values.get(o1)
            if vals is None:
                rng = seeding.stream(seed, "s2", o1, "values")
                n1 = min(deg[o1], d) + 1
                vals = [sampler.fresh(rng, fixed, [o1])[o1] for _ in range(n1)]
            rng = seeding.stream(seed, "s2", o1, "repair")
            current, solved = _slice_dense_1d(sampler, mvar, d, o1, vals, fixed, o1, rng,
                                              replay)
            state.solved = solved
            state.slices[(o1,)] = current
            for s in range(1, len(order)):
                if token is not None:
                    token.check()
                current = _free_next(sampler, mvar, d, order, s, base, homog_var, deg,
                                     current, stage_values.get(order[s]), seed, state)
                state.slices[tuple(order[: s + 1])] = current
    timings["sampling"] = time.monotonic() - t
    dstar = homogeneous_recovery(current, d, homog_var, base[homog_var]) if homog_var else current
    state.slices["dstar"] = dstar
    return _finish(system, dstar, change, strategy, profile, seed, sampler, state, t0, timings)


def _free_next(sampler, mvar, d, order, s, base, homog_var, deg, previous, values, seed, state):
    """Free parameter ``order[s]`` given the slice with it fixed at base."""
    reg = sampler.tsys.reg
    var = order[s]
    free = order[:s]
    fixed_rest = {u: base[u] for u in order[s + 1:] + ([homog_var] if homog_var else [])}
    lowest = min(sum(e) for e in previous.terms())
    e_s = min(deg[var], d - lowest)
    if values is None:
        rng = seeding.stream(seed, "s2", var, "values")
        values = [base[var]]
        while len(values) < e_s + 1:
            y = seeding.nonzero_int(rng)
            if y not in values:
                values.append(y)
    elif mpq(values[0]) != mpq(base[var]):
        raise ValueError(f"stage values for {var} must start with its base value")
    known = _split_by_power(previous, mvar, free)
    support = {p: [ex for ex, _ in lst] for p, lst in known.items()}
    wide = None
    slices = {mpq(values[0]): previous}
    for k, y in enumerate(values[1:], start=1):
        fixed = dict(fixed_rest, **{var: y})
        rng = seeding.stream(seed, "s2", var, "slice", k)
        try:
            sl = _sparse_slice(sampler, mvar, d, free, support, fixed, rng, f"{var}={y}")
        except SupportMismatch as e:
            log.info("support mismatch (%s); widening to the degree bound", e)
            if wide is None:
                wide = _dense_support(d, free, [deg[u] for u in free])
            rng = seeding.stream(seed, "s2", var, "wide", k)
            sl = _sparse_slice(sampler, mvar, d, free, wide, fixed, rng, f"{var}={y}")
        slices[mpq(y)] = sl
        state.slices[(tuple(free), var, mpq(y))] = sl
        log.info("%s = %s: slice %d/%d has %d terms", var, y, k, len(values) - 1, len(sl))
    xs = list(slices)
    monos = set()
    for sl in slices.values():
        monos.update(sl.terms())
    vi = reg.index(var)
    out = {}
    for ex in monos:
        ys = [slices[x].terms().get(ex, mpq(0)) for x in xs]
        for power, c in enumerate(interpolate(xs, ys)):
            if c:
                e2 = list(ex)
                e2[vi] += power
                out[tuple(e2)] = c
    return Poly.from_dict(reg, out)


# strategy 3 ------------------------------------------------------------------------------

def interpolate_strategy3(system, seed=0, profile=None, change=None, threads=1, token=None,
                          ml_deg=None, **kw):
    """Strategy 2 lifting over sections from the resultant route."""
    return interpolate_strategy2(system, seed, profile, change, threads=threads, token=token,
                                 route="s3", ml_deg=ml_deg, strategy="s3", **kw)


def sampling_cost_estimate(profile, t_s):
    """Approximate Strategy 2 sampling time: t_s times d_2 ... d_n."""
    degs = sorted(profile.per_param, reverse=True)
    out = float(t_s)
    for x in degs[2:]:
        out *= x
    return out
