"""Independent checks of a computed discriminant."""

from __future__ import annotations

import logging

from gmpy2 import mpq

from .. import seeding
from ..polyring import Poly, VarRegistry, univariate as U
from .sampling import line_eliminant

log = logging.getLogger(__name__)

LINE_DRAWS = 5


def restrict_to_line(dxj, system, a, b):
    """Coefficients (lowest first) of D(a*t + b) as a univariate list."""
    pt_a = dict(zip(system.params, a))
    pt_b = dict(zip(system.params, b))
    reg = VarRegistry(("t",))
    t = Poly.var(reg, "t")
    out = Poly.zero(reg)
    for exps, c in dxj.terms().items():
        term = Poly.const(reg, c)
        for name, e in zip(dxj.reg.names, exps):
            if e:
                term = term * (t * mpq(pt_a[name]) + mpq(pt_b[name])) ** e
        out = out + term
    return out.to_univariate("t") if out else []


def verify_on_random_line(result, system, seed=0, token=None, draws=LINE_DRAWS):
    """True iff D restricted to a fresh random line matches the eliminant
    of <F, J> on that line up to scaling; None when D is constant."""
    dxj = result.dxj if hasattr(result, "dxj") else result
    if dxj.is_constant():
        return None
    d = dxj.total_degree()
    n = len(system.params)
    for attempt in range(draws):
        rng = seeding.stream(seed, "verify", attempt)
        a = seeding.nonzero_ints(rng, n)
        b = seeding.nonzero_ints(rng, n)
        restricted = restrict_to_line(dxj, system, a, b)
        if U.degree(restricted) != d:
            log.info("line %s, %s lowers the degree; redrawing", a, b)
            continue
        z, tname = line_eliminant(system, a, b, token)
        if z is None:
            continue
        ref = [mpq(1)] if z.is_constant() else z.to_univariate(tname)
        mine = U.squarefree_part(restricted)
        return U.canonical(mine) == U.canonical(ref)
    raise RuntimeError("every random line was degenerate")
