"""Line-oriented model files.

Statistical models::

    vars p0 p1 p2 p3
    let q = p0 - p1          # optional named sub-expressions
    inv p0 + 2*p1 + 3*p2 - 4*p3
    codim 1                  # default: number of invariants
    general 1                # optional: 1-based invariants used as h's
    primary p0               # optional: unknown used for eliminants

Raw parametric systems (J is the Jacobian determinant of the equations)::

    params u0 u1 u2 u3
    unknowns p
    eq u0*p^3 + u1*p^2 + u2*p + u3
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .likelihood import ModelError, StatModel, build_lagrange_system, build_model, build_raw_system
from .polyring import ParseError, VarRegistry, parse_poly

KEYWORDS = {"vars", "let", "inv", "codim", "general", "primary", "params", "unknowns", "eq"}


class ModelFileError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = "" if line is None else f" (line {line}" + ("" if col is None else f", col {col}") + ")"
        super().__init__(msg + where)


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head, _, rest = body.partition(" ")
        if head not in KEYWORDS:
            raise ModelFileError(f"unknown keyword {head!r}", no, 1)
        yield no, head, rest.strip(), raw.index(head) + len(head) + 1


def _names(rest, no):
    names = rest.split()
    if len(set(names)) != len(names):
        raise ModelFileError("duplicate variable", no)
    return names


def parse_model_file(text, name=""):
    """Parse either file kind; returns a StatModel or a raw LikelihoodSystem."""
    entries = list(_lines(text))
    heads = {h for _, h, _, _ in entries}
    if heads & {"params", "unknowns", "eq"}:
        return _parse_raw(entries, name)
    return _parse_stat(entries, name)


def parse_model(text, name=""):
    """Parse a statistical model file into a StatModel."""
    got = parse_model_file(text, name)
    if not isinstance(got, StatModel):
        raise ModelFileError("file describes a raw system, not a statistical model")
    return got


def _poly(rest, reg, env, no, col):
    try:
        return parse_poly(rest, reg, env=env, line=no)
    except ParseError as e:
        raise ModelFileError(str(e).rsplit(" (", 1)[0], no, col + e.pos) from None


def _parse_stat(entries, name):
    reg = None
    env = {}
    invs = []
    codim = general = primary = None
    for no, head, rest, col in entries:
        if head == "vars":
            if reg is not None:
                raise ModelFileError("vars declared twice", no)
            names = _names(rest, no)
            try:
                reg = VarRegistry(names, {"p": names})
            except ValueError as e:
                raise ModelFileError(str(e), no) from None
            continue
        if reg is None:
            raise ModelFileError(f"{head!r} before vars", no)
        if head == "let":
            lhs, eq, rhs = rest.partition("=")
            lhs = lhs.strip()
            if not eq or not lhs.isidentifier():
                raise ModelFileError("expected 'let name = polynomial'", no)
            if lhs in reg:
                raise ModelFileError(f"let name {lhs!r} shadows a variable", no)
            env[lhs] = _poly(rhs, reg, env, no, col + rest.index("=") + 1)
        elif head == "inv":
            invs.append((no, _poly(rest, reg, env, no, col)))
        elif head == "codim":
            try:
                codim = int(rest)
            except ValueError:
                raise ModelFileError("codim must be an integer", no) from None
        elif head == "general":
            try:
                general = [int(x) - 1 for x in rest.split()]
            except ValueError:
                raise ModelFileError("general takes 1-based invariant indices", no) from None
        elif head == "primary":
            primary = rest.strip()
        else:
            raise ModelFileError(f"{head!r} is only valid in raw-system files", no)
    if reg is None:
        raise ModelFileError("missing vars declaration")
    for no, f in invs:
        if not f.is_homogeneous():
            raise ModelFileError("invariant is not homogeneous", no)
    try:
        return build_model(reg.names, [f for _, f in invs], codim, general, primary, name)
    except ModelError as e:
        raise ModelFileError(str(e)) from None


def _parse_raw(entries, name):
    params = unknowns = None
    eqs = []
    primary = None
    for no, head, rest, col in entries:
        if head == "params":
            params = _names(rest, no)
        elif head == "unknowns":
            unknowns = _names(rest, no)
        elif head == "eq":
            eqs.append((no, col, rest))
        elif head == "primary":
            primary = rest.strip()
        else:
            raise ModelFileError(f"{head!r} is not valid in a raw-system file", no)
    if not params or not unknowns:
        raise ModelFileError("raw systems need params and unknowns")
    try:
        reg = VarRegistry(params + unknowns)
    except ValueError as e:
        raise ModelFileError(str(e)) from None
    polys = [_poly(t, reg, {}, no, col) for no, col, t in eqs]
    try:
        return build_raw_system(params, unknowns, polys and [p.to_registry(
            VarRegistry(params + unknowns, {"u": params, "p": unknowns, "l": ()})) for p in polys],
            primary, name)
    except ModelError as e:
        raise ModelFileError(str(e)) from None


def fixture_names():
    return sorted(p.name[:-6] for p in resources.files("datadisc.models").iterdir()
                  if p.name.endswith(".model"))


def read_model_text(ref):
    """Text of a model given a path or the name of a bundled fixture."""
    path = Path(ref)
    if path.is_file():
        return path.read_text(), path.stem
    stem = ref[:-6] if ref.endswith(".model") else ref
    res = resources.files("datadisc.models") / f"{stem}.model"
    if res.is_file():
        return res.read_text(), stem
    raise FileNotFoundError(f"no model file or bundled fixture named {ref!r}")


def load_system(ref):
    """LikelihoodSystem for a model path or bundled fixture name."""
    text, stem = read_model_text(ref)
    got = parse_model_file(text, stem)
    if isinstance(got, StatModel):
        return build_lagrange_system(got)
    return got
