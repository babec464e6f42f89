"""Univariate sections of D_{X,J}: eliminants, degree probes, worker pool.

Every probe is a zero-dimensional elimination: all parameters but one (or
all parameters restricted to a line) are specialized, so the ideal of the
equations together with J has finitely many points and its eliminant in the
remaining parameter is read off a minimal polynomial.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor

from gmpy2 import mpq

from .. import groebner, seeding
from ..groebner import Deadline
from ..polyring import Poly, resultant, squarefree_factorization, univariate as U
from .types import DegenerateSampleError, DegreeProfile, ShapeFailure

log = logging.getLogger(__name__)

MAX_EXTRA_DRAWS = 3


# eliminants ------------------------------------------------------------------------

def radical_eliminant(gens, x, token=None):
    """Squarefree generator of <gens> ∩ Q[x]; None if that ideal is zero."""
    elim = groebner.eliminate(gens, [x], token=token)
    elim = [e for e in elim if e]
    if not elim:
        return None
    return groebner.radical_generator_uni(elim, x)


def membership(gens_with_j, G, x, token=None):
    """Radical generator of <gens, J, G> ∩ Q[x]; 1 when G is spurious."""
    z = radical_eliminant(list(gens_with_j) + [G], x, token)
    return Poly.const(G.reg, 1) if z is None else z


def s3_eliminant(gens, jac, x, y0, ml_deg, token=None, trace=None):
    """Radical eliminant in ``x`` through the bivariate resultant route.

    ``gens`` omit J.  The codimension-1 generator g of <gens> ∩ Q[x, y0]
    must have degree ``ml_deg`` in y0; the resultant of g and dg/dy0 is then
    split into squarefree factors G and each contributes the generator of
    <gens, J, G> ∩ Q[x].
    """
    elim = [e for e in groebner.eliminate(gens, [x, y0], token=token) if e]
    if not elim:
        raise ShapeFailure("bivariate elimination ideal is zero")
    g = groebner.codim1_part(elim)
    if g.degree(y0) != ml_deg:
        raise ShapeFailure(f"eliminant has degree {g.degree(y0)} in {y0}, expected {ml_deg}")
    A = resultant(g, g.diff(y0), y0)
    if trace is not None:
        trace["g"] = g
        trace["resultant"] = A
    if not A:
        raise ShapeFailure("eliminant is not squarefree in the unknown")
    out = Poly.const(g.reg, 1)
    kept = []
    if A.is_constant():
        return out
    for G, _ in squarefree_factorization(A):
        H = membership(list(gens) + [jac], G, x, token)
        kept.append((G, H))
        out = out * H
    if trace is not None:
        trace["factors"] = kept
    if out.is_constant():
        return Poly.const(g.reg, 1)
    return groebner.radical_generator_uni([out], x)


def monic_coeffs(z, x):
    return U.monic(z.to_univariate(x))


# sections ----------------------------------------------------------------------------

def _point(system, values, main):
    names = [u for i, u in enumerate(system.params) if i != main]
    if len(values) != len(names):
        raise ValueError(f"expected {len(names)} values, got {len(values)}")
    return dict(zip(names, values))


def section(system, values, main=0, d=None, token=None, route="elim", ml_deg=None):
    """Monic coefficients (lowest first) of D(.., u_main, ..) at the values.

    ``values`` fill the non-main parameters in order.  Raises
    DegenerateSampleError on a unit ideal or a degree different from ``d``.
    """
    x = system.params[main]
    pt = _point(system, values, main)
    if route == "s3":
        try:
            gens = system.specialize(pt)
            jac = system.jac_det.partial_evaluate(pt)
            z = s3_eliminant(gens, jac, x, system.primary, ml_deg, token)
        except ShapeFailure as e:
            log.info("shape failure at %s (%s); using the direct route", values, e)
            return section(system, values, main, d, token, "elim")
    else:
        z = radical_eliminant(system.specialize_with_jacobian(pt), x, token)
    if z is None:
        raise DegenerateSampleError(f"positive-dimensional fibre at {values}")
    deg = z.degree(x) if not z.is_constant() else 0
    if d is not None and deg != d:
        raise DegenerateSampleError(f"section at {values} has degree {deg}, expected {d}")
    if deg == 0:
        raise DegenerateSampleError(f"unit ideal at {values}")
    return monic_coeffs(z, x)


def intersect(system, b, main=0, d=None, token=None):
    """D_{X,J}(u_0, b_1, .., b_n) up to scaling, as a monic Poly in u_0."""
    coeffs = section(system, list(b), main, d, token)
    return Poly.from_univariate(system.reg, system.params[main], coeffs)


def intersect_s3(system, b, ml_deg, main=0, d=None, token=None, trace=None):
    """Same section as ``intersect`` via the resultant route (no fallback)."""
    x = system.params[main]
    pt = _point(system, list(b), main)
    z = s3_eliminant(system.specialize(pt), system.jac_det.partial_evaluate(pt), x,
                     system.primary, ml_deg, token, trace)
    if z.is_constant():
        return z
    if d is not None and z.degree(x) != d:
        raise DegenerateSampleError(f"section has degree {z.degree(x)}, expected {d}")
    return Poly.from_univariate(system.reg, x, monic_coeffs(z, x))


# lines -------------------------------------------------------------------------------

def line_system(system, a, b):
    """System restricted to u_i = a_i*t + b_i, over a registry with ``t``."""
    t = system.fresh_name("t")
    lifted = system.with_aux(t)
    tv = lifted.reg.var(t)
    bind = {u: tv * mpq(ai) + mpq(bi) for u, ai, bi in zip(system.params, a, b)}
    return lifted.substitute_params(bind), t


def line_eliminant(system, a, b, token=None, route="elim", ml_deg=None):
    lsys, t = line_system(system, a, b)
    if route == "s3":
        try:
            return s3_eliminant(lsys.generators(), lsys.jac_det, t, lsys.primary, ml_deg, token), t
        except ShapeFailure as e:
            log.info("shape failure on line (%s); using the direct route", e)
    gens = lsys.generators() + [lsys.jac_det]
    return radical_eliminant(gens, t, token), t


# degree profile ------------------------------------------------------------------------

def stable_value(draw, seed, label, retries=MAX_EXTRA_DRAWS):
    """Run ``draw(rng)`` until some value has been seen twice.

    ``draw`` returns an integer or None for a degenerate draw.
    """
    seen = []
    for attempt in range(2 + retries):
        v = draw(seeding.stream(seed, label, attempt))
        if v is not None:
            if v in seen:
                return v
            seen.append(v)
    raise DegenerateSampleError(f"{label}: draws {seen} never agreed")


def _degree_of(z, x):
    if z is None:
        return None
    return 0 if z.is_constant() else z.degree(x)


def param_degree(system, i, seed, token=None, route="elim", ml_deg=None):
    x = system.params[i]

    def draw(rng):
        vals = seeding.nonzero_ints(rng, len(system.params) - 1)
        pt = _point(system, vals, i)
        if route == "s3":
            try:
                z = s3_eliminant(system.specialize(pt), system.jac_det.partial_evaluate(pt),
                                 x, system.primary, ml_deg, token)
                return _degree_of(z, x)
            except ShapeFailure as e:
                log.info("shape failure for %s (%s); using the direct route", x, e)
        return _degree_of(radical_eliminant(system.specialize_with_jacobian(pt), x, token), x)

    return stable_value(draw, seed, f"degree:{route}:{x}")


def total_degree(system, seed, token=None, route="elim", ml_deg=None):
    def draw(rng):
        n = len(system.params)
        a = seeding.nonzero_ints(rng, n)
        b = seeding.nonzero_ints(rng, n)
        z, t = line_eliminant(system, a, b, token, route, ml_deg)
        return _degree_of(z, t)

    return stable_value(draw, seed, f"degree:{route}:line")


def degree_profile(system, seed=0, token=None):
    """Total and per-parameter degrees of D_{X,J} by random restriction."""
    per = tuple(param_degree(system, i, seed, token) for i in range(len(system.params)))
    return DegreeProfile(total_degree(system, seed, token), per)


def degree_profile_s3(system, seed=0, ml_deg=None, token=None):
    """Degree profile through the resultant route; shape failures fall back."""
    if ml_deg is None:
        from ..likelihood import ml_degree
        ml_deg = system.ml_degree_cache or ml_degree(system, seed, token=token)
    per = tuple(param_degree(system, i, seed, token, "s3", ml_deg)
                for i in range(len(system.params)))
    return DegreeProfile(total_degree(system, seed, token, "s3", ml_deg), per)


# worker pool ---------------------------------------------------------------------------

_WORKER = {}


def _init_worker(system, seconds):
    _WORKER["system"] = system
    _WORKER["token"] = Deadline(seconds)


def _run_section(args):
    values, main, d, route, ml_deg = args
    try:
        return ("ok", section(_WORKER["system"], values, main, d, _WORKER["token"], route, ml_deg))
    except DegenerateSampleError as e:
        return ("degenerate", str(e))


class SamplePool:
    """Evaluates sections in order, optionally across worker processes."""

    def __init__(self, system, threads=1, token=None):
        self.system = system
        self.threads = max(1, int(threads or 1))
        self.token = token
        self._ex = None
        self.count = 0

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def close(self):
        if self._ex is not None:
            self._ex.shutdown(cancel_futures=True)
            self._ex = None

    def map(self, jobs):
        """``jobs``: list of (values, main, d, route, ml_deg); results in order.

        Each result is ("ok", coeffs) or ("degenerate", message).
        """
        self.count += len(jobs)
        if self.threads == 1 or len(jobs) <= 1:
            _WORKER["system"], _WORKER["token"] = self.system, self.token
            return [_run_section(j) for j in jobs]
        if self._ex is None:
            secs = self.token.remaining() if self.token is not None else None
            workers = min(self.threads, os.cpu_count() or 1, len(jobs)) or 1
            self._ex = ProcessPoolExecutor(max(workers, 1), initializer=_init_worker,
                                           initargs=(self.system, secs))
        if self.token is not None:
            self.token.check()
        return list(self._ex.map(_run_section, jobs))
