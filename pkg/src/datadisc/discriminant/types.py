from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..likelihood import DegenerateSampleError  # noqa: F401  (re-exported)
from ..polyring import Poly


class ShapeFailure(RuntimeError):
    """The bivariate eliminant does not have the ML degree in the unknown."""


class SupportMismatch(RuntimeError):
    """A slice contradicts the monomial support assumed for it."""


@dataclass(frozen=True)
class DegreeProfile:
    d: int
    per_param: tuple

    def __post_init__(self):
        if self.d < 0 or any(x < 0 for x in self.per_param):
            raise ValueError("degrees are nonnegative")
        if self.per_param and self.d < max(self.per_param):
            raise ValueError("total degree below a per-parameter degree")

    def __str__(self):
        return f"({self.d}; {','.join(map(str, self.per_param))})"


@dataclass(frozen=True)
class CoordinateChange:
    """Linear change ``u_i = a_i*v_m + s_i*v_i`` (i != m), ``u_m = v_m``.

    With unit scales this is the shear ``u_i <- a_i*u_0 + u_i`` used to make
    the pure power of the main parameter appear.  Polynomials keep the
    parameter names; ``forward`` maps a polynomial in the original
    coordinates to the new ones and ``inverse`` undoes it.
    """

    a: tuple
    main: int = 0
    scale: tuple = None

    def __post_init__(self):
        if self.scale is not None and any(s == 0 for s in self.scale):
            raise ValueError("coordinate scales must be nonzero")

    @classmethod
    def identity(cls, nparams, main=0):
        return cls(tuple(0 for _ in range(nparams)), main)

    def is_identity(self):
        return all(x == 0 for x in self.a) and (self.scale is None or all(s == 1 for s in self.scale))

    def _s(self, i):
        return 1 if self.scale is None else self.scale[i]

    def bindings(self, params, reg, direction="forward"):
        m = reg.var(params[self.main])
        out = {}
        for i, name in enumerate(params):
            if i == self.main:
                continue
            v = reg.var(name)
            a, s = mpq(self.a[i]), mpq(self._s(i))
            if direction == "forward":
                out[name] = m * a + v * s
            elif direction == "inverse":
                out[name] = (v - m * a) / s
            else:
                raise ValueError(f"unknown direction {direction!r}")
        return out

    def forward(self, f: Poly, params):
        return f.substitute(self.bindings(params, f.reg, "forward"))

    def inverse(self, f: Poly, params):
        return f.substitute(self.bindings(params, f.reg, "inverse"))


@dataclass
class InterpolationState:
    profile: DegreeProfile = None
    support: dict = field(default_factory=dict)
    samples: list = field(default_factory=list)
    solved: dict = field(default_factory=dict)
    slices: dict = field(default_factory=dict)


@dataclass
class DiscriminantResult:
    dxj: Poly
    strategy: str
    profile: DegreeProfile = None
    seed: object = None
    samples: int = 0
    verified: object = None
    change: CoordinateChange = None
    timings: dict = field(default_factory=dict)
    state: InterpolationState = None
    notes: list = field(default_factory=list)
