"""Variable registries shared by every polynomial in a computation."""

from __future__ import annotations


class RegistryError(ValueError):
    pass


class VarRegistry:
    """An ordered list of variable names partitioned into named blocks.

    Two registries compare equal when their names and blocks agree, so
    polynomials built from independently constructed but identical registries
    (e.g. after pickling to a worker process) still interoperate.
    """

    def __init__(self, names, blocks=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise RegistryError(f"duplicate variable names: {dup}")
        for n in names:
            if not n or not (n[0].isalpha() or n[0] == "_"):
                raise RegistryError(f"bad variable name {n!r}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        if blocks is None:
            blocks = {"all": names}
        seen = []
        clean = {}
        for label, members in blocks.items():
            members = tuple(members)
            for m in members:
                if m not in self._index:
                    raise RegistryError(f"block {label!r} names unknown variable {m!r}")
            clean[label] = members
            seen.extend(members)
        if sorted(seen) != sorted(names):
            raise RegistryError("blocks must partition the variable list")
        self.blocks = clean

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, VarRegistry):
            return NotImplemented
        return self.names == other.names and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarRegistry({list(self.names)!r})"

    def __reduce__(self):
        return (VarRegistry, (self.names, self.blocks))

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RegistryError(f"unknown variable {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def block(self, label):
        return self.blocks[label]

    def indices(self, names):
        return [self.index(n) for n in names]

    def block_of(self, name):
        for label, members in self.blocks.items():
            if name in members:
                return label
        raise RegistryError(f"unknown variable {name!r}")

    # convenience constructors -------------------------------------------
    def var(self, name):
        from .poly import Poly
        return Poly.var(self, name)

    def const(self, c):
        from .poly import Poly
        return Poly.const(self, c)

    def gens(self, names=None):
        names = self.names if names is None else names
        return [self.var(n) for n in names]

    def parse(self, text):
        from .parse import parse_poly
        return parse_poly(text, self)
