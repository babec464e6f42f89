"""D_{X,J} by one elimination of the parameters-plus-Jacobian ideal."""

from __future__ import annotations

import time

from .. import groebner
from ..polyring import Poly
from .types import DiscriminantResult


def dxj_elimination(system, token=None, seed=None):
    """Codimension-1 part of <F, J> ∩ Q[u], canonical; 1 if there is none."""
    t0 = time.monotonic()
    gens = system.generators() + [system.jac_det]
    elim = [e for e in groebner.eliminate(gens, system.params, token=token) if e]
    if not elim:
        raise ValueError("elimination ideal is zero: the Jacobian locus dominates the data space")
    if any(e.is_constant() for e in elim):
        dxj = Poly.const(system.reg, 1)
    else:
        dxj = groebner.codim1_part(elim)
    timings = {"elimination": time.monotonic() - t0, "total": time.monotonic() - t0}
    notes = ["no codimension-1 component"] if dxj.is_constant() else []
    return DiscriminantResult(dxj, "elim", seed=seed, timings=timings, notes=notes)
