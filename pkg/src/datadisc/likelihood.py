"""Lagrange likelihood equations, their Jacobian determinant and ML degree."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from . import groebner, seeding
from .polyring import Poly, VarRegistry, det, parse_poly, to_q
from .polyring import univariate as U


class ModelError(ValueError):
    """Malformed statistical model or raw system."""


class DegenerateSampleError(RuntimeError):
    """Random specializations kept disagreeing (shape/genericity failure)."""


def param_name(prob_name):
    return "u" + prob_name[1:] if prob_name.startswith("p") else "u_" + prob_name


@dataclass(frozen=True)
class StatModel:
    prob_vars: tuple
    invariants: tuple
    general_invariants: tuple
    codim: int
    primary: str
    name: str = ""

    @property
    def registry(self):
        return self.invariants[0].reg

    @property
    def n(self):
        return len(self.prob_vars) - 1


def build_model(prob_var_names, invariant_texts, codim=None, general=None,
                primary=None, name="", env=None):
    """Parse invariants over the probability coordinates into a StatModel.

    ``invariant_texts`` may hold strings or ready Polys over the p-registry.
    ``general`` selects the general invariants by index into the invariants
    (default: the first ``codim``).
    """
    names = tuple(prob_var_names)
    if not names:
        raise ModelError("a model needs at least one probability coordinate")
    reg = VarRegistry(names, {"p": names})
    invs = []
    for i, t in enumerate(invariant_texts):
        f = t.to_registry(reg) if isinstance(t, Poly) else parse_poly(t, reg, env=env)
        if not f:
            raise ModelError(f"invariant {i + 1} is the zero polynomial")
        if not f.is_homogeneous():
            raise ModelError(f"invariant {i + 1} is not homogeneous in the probability coordinates")
        invs.append(f)
    if not invs:
        raise ModelError("a model needs at least one invariant")
    codim = len(invs) if codim is None else int(codim)
    if not 1 <= codim <= len(invs):
        raise ModelError(f"codim {codim} out of range 1..{len(invs)}")
    if general is None:
        general = range(codim)
    general = tuple(invs[i] for i in general)
    if len(general) != codim:
        raise ModelError("the number of general invariants must equal codim")
    primary = names[0] if primary is None else primary
    if primary not in names:
        raise ModelError(f"primary unknown {primary!r} is not a probability coordinate")
    return StatModel(names, tuple(invs), general, codim, primary, name)


@dataclass(frozen=True)
class DataVector:
    u: tuple

    @classmethod
    def parse(cls, text):
        return cls(tuple(to_q(Fraction(x.strip())) for x in text.split(",") if x.strip()))

    def __len__(self):
        return len(self.u)

    def __iter__(self):
        return iter(self.u)

    def text(self):
        return ",".join(str(Fraction(int(x.numerator), int(x.denominator))) for x in self.u)


class LikelihoodSystem:
    """Equations over a registry with blocks ``u`` (data), ``p`` and ``l``.

    ``relations`` are extra polynomials known to lie in the ideal of the
    equations; elimination routines may add them to speed things up.
    """

    def __init__(self, reg, equations, unknowns, params, jacobian_rows=None,
                 relations=(), model=None, primary=None, name=""):
        self.reg = reg
        self.equations = tuple(equations)
        self.unknowns = tuple(unknowns)
        self.params = tuple(params)
        self.relations = tuple(relations)
        self.model = model
        self.primary = primary or self.unknowns[0]
        self.name = name or (model.name if model else "")
        self._jac_rows = jacobian_rows
        self._jac = None
        self.ml_degree_cache = None

    def jacobian_matrix(self):
        rows = self._jac_rows if self._jac_rows is not None else self.equations
        return [[f.diff(y) for y in self.unknowns] for f in rows]

    @property
    def jac_det(self):
        if self._jac is None:
            self._jac = jacobian_det(self)
        return self._jac

    def generators(self, with_relations=True):
        gens = list(self.equations)
        if with_relations:
            gens += list(self.relations)
        return gens

    def specialize(self, point):
        """Equations with some parameters replaced by rationals."""
        pt = {k: to_q(v) for k, v in point.items()}
        return [f.partial_evaluate(pt) for f in self.generators()]

    def specialize_with_jacobian(self, point):
        pt = {k: to_q(v) for k, v in point.items()}
        return [f.partial_evaluate(pt) for f in self.generators()] + [
            self.jac_det.partial_evaluate(pt)]

    def _clone(self, reg, move):
        rows = None if self._jac_rows is None else [move(f) for f in self._jac_rows]
        out = LikelihoodSystem(reg, [move(f) for f in self.equations], self.unknowns,
                               self.params, rows, [move(f) for f in self.relations],
                               self.model, self.primary, self.name)
        if self._jac is not None:
            out._jac = move(self._jac)
        out.ml_degree_cache = self.ml_degree_cache
        return out

    def substitute_params(self, bindings):
        """Same system after substituting polynomials for parameters."""
        return self._clone(self.reg, lambda f: f.substitute(bindings))

    def with_aux(self, *names):
        """Same system over a registry extended by auxiliary variables."""
        blocks = dict(self.reg.blocks)
        blocks["aux"] = tuple(blocks.get("aux", ())) + tuple(names)
        reg = VarRegistry(self.reg.names + tuple(names), blocks)
        return self._clone(reg, lambda f: f.to_registry(reg))

    def fresh_name(self, base):
        name = base
        while name in self.reg:
            name = "_" + name
        return name


def build_lagrange_system(model: StatModel) -> LikelihoodSystem:
    pn = model.prob_vars
    un = tuple(param_name(p) for p in pn)
    ln = tuple(f"l{j + 1}" for j in range(model.codim + 1))
    clash = set(un) & set(pn) or set(ln) & set(pn)
    if clash:
        raise ModelError(f"variable names collide with generated names: {sorted(clash)}")
    reg = VarRegistry(un + pn + ln, {"u": un, "p": pn, "l": ln})
    g = [f.to_registry(reg) for f in model.invariants]
    h = [f.to_registry(reg) for f in model.general_invariants]
    lam = [reg.var(x) for x in ln]
    eqs = []
    for pi, ui in zip(pn, un):
        form = lam[0]
        for j, hj in enumerate(h):
            form = form + hj.diff(pi) * lam[j + 1]
        eqs.append(reg.var(pi) * form - reg.var(ui))
    eqs.extend(g)
    simplex = sum((reg.var(p) for p in pn), Poly.zero(reg)) - 1
    eqs.append(simplex)
    n1 = len(pn)
    jac_rows = eqs[:n1] + [simplex] + h
    relations = []
    if all(any(hj == gj for gj in g) for hj in h):
        # summing the first n+1 equations and using Euler's identity on the
        # homogeneous h's leaves l1 - sum(u) in the ideal
        relations.append(lam[0] - sum((reg.var(u) for u in un), Poly.zero(reg)))
    return LikelihoodSystem(reg, eqs, pn + ln, un, jac_rows, relations, model,
                            model.primary, model.name)


def build_raw_system(params, unknowns, equation_texts, primary=None, name="", env=None):
    """A parametric system given directly; J is the Jacobian determinant of
    the equations with respect to the unknowns."""
    params, unknowns = tuple(params), tuple(unknowns)
    reg = VarRegistry(params + unknowns, {"u": params, "p": unknowns, "l": ()})
    eqs = [parse_poly(t, reg, env=env) if isinstance(t, str) else t for t in equation_texts]
    if len(eqs) != len(unknowns):
        raise ModelError("a raw system needs as many equations as unknowns")
    return LikelihoodSystem(reg, eqs, unknowns, params, None, (), None, primary, name)


def jacobian_det(system: LikelihoodSystem) -> Poly:
    return det(system.jacobian_matrix())


def dx_p(model_or_system) -> Poly:
    if isinstance(model_or_system, LikelihoodSystem):
        reg, names = model_or_system.reg, model_or_system.params
    else:
        names = tuple(param_name(p) for p in model_or_system.prob_vars)
        reg = VarRegistry(names, {"u": names})
    out = Poly.const(reg, 1)
    for u in names:
        out = out * reg.var(u)
    return out


def ml_degree_at(system, u, unknown=None, token=None):
    """Number of distinct values of ``unknown`` over the specialized system,
    or ``None`` if the specialization is not zero-dimensional."""
    unknown = unknown or system.primary
    point = dict(zip(system.params, u))
    gens = system.specialize(point)
    elim = groebner.eliminate(gens, [unknown], token=token)
    if not elim:
        return None
    z = groebner.radical_generator_uni(elim, unknown)
    if not z:
        return None
    return z.degree(unknown)


def ml_degree(system: LikelihoodSystem, seed=0, unknown=None, token=None, retries=3):
    """Generic number of complex critical points, by random specialization.

    Two draws must agree on the largest value seen; a non-generic draw can
    only lose solutions, so a repeated maximum is accepted.
    """
    seen = []
    for attempt in range(2 + retries):
        rng = seeding.stream(seed, "mldeg", attempt)
        u = seeding.nonzero_ints(rng, len(system.params))
        d = ml_degree_at(system, u, unknown, token)
        if d is not None:
            seen.append(d)
        if len(seen) >= 2 and seen.count(max(seen)) >= 2:
            system.ml_degree_cache = max(seen)
            return system.ml_degree_cache
    raise DegenerateSampleError(
        f"shape/genericity failure: ML degree draws {seen} never agreed")
