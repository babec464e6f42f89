"""Monomial orders as integer weight matrices.

Every order used here is given by a nonsingular matrix of nonnegative integer
weight rows; a monomial is compared by the tuple of its row values, left to
right.  Packing that tuple into a single integer (one fixed-width field per
row) gives keys that are additive under monomial multiplication and compare
like the order itself, which the reduction engine relies on.
"""

from __future__ import annotations

FIELD_BITS = 20


class MonomialOrder:
    """graded reverse lex, lex, or a two-block elimination order.

    For ``block`` the variables in ``front`` are larger than every monomial
    in the remaining variables; each block is ordered by grevlex internally.
    """

    KINDS = ("grevlex", "lex", "block")

    def __init__(self, kind="grevlex", front=()):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and not front:
            raise ValueError("block order needs a nonempty front block")
        self.kind = kind
        self.front = tuple(front)

    @classmethod
    def block(cls, front):
        return cls("block", front)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.front == other.front)

    def __hash__(self):
        return hash((self.kind, self.front))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder.block({list(self.front)!r})"
        return f"MonomialOrder({self.kind!r})"

    def rows(self, registry, active=None):
        """Weight rows over the positions of ``active`` (registry indices)."""
        if active is None:
            active = list(range(len(registry)))
        n = len(active)
        if self.kind == "lex":
            return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        if self.kind == "grevlex":
            return _grevlex_rows(list(range(n)), n)
        front_idx = {registry.index(v) for v in self.front}
        a = [j for j, i in enumerate(active) if i in front_idx]
        b = [j for j, i in enumerate(active) if i not in front_idx]
        return _grevlex_rows(a, n) + _grevlex_rows(b, n)

    def key_function(self, registry, active=None):
        rows = self.rows(registry, active)
        return lambda exps: tuple(sum(w * e for w, e in zip(r, exps)) for r in rows)


def _grevlex_rows(positions, n):
    # row j sums the first len-j variables of the block: ties on degree are
    # broken in favour of the smaller exponent of the last variable
    rows = []
    for j in range(len(positions)):
        keep = set(positions[: len(positions) - j])
        rows.append(tuple(1 if p in keep else 0 for p in range(n)))
    return rows


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")
