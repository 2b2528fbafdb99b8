"""Line-oriented text formats for semirings, vectors, kernels, modules and maps.

Blank lines and ``#`` comments are ignored everywhere.  A semiring token is a
builtin name (``boolean``, ``chain:<n>``, ``rmax``, ``rmax_top``, ``rmin``,
``rmin_top``) or a path to a semiring table file, resolved against the
directory of the file that mentions it.  Tuple labels are written joined by
``|``.
"""

from __future__ import annotations

import os
from pathlib import Path

from .exttensor import FinSemimodule, PolyMapTable, full_cube
from .freemod import FreeVector, IndexSet
from .freetensor import TensorKernel
from .kernelop import Kernel
from .semiring import DomainError, Semiring, builtin, from_tables


class ParseError(ValueError):
    pass


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((n, line))
    return out


def format_label(label) -> str:
    if isinstance(label, tuple):
        return "|".join(format_label(x) for x in label)
    return str(label)


def parse_label(token: str):
    return tuple(token.split("|")) if "|" in token else token


# -- semirings ---------------------------------------------------------------


def parse_semiring(text: str) -> Semiring:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty semiring file")
    head = lines[0][1].split()
    if head[0] != "semiring" or len(head) != 2:
        raise ParseError(f"line {lines[0][0]}: expected 'semiring <name>'")
    if head[1] != "table":
        try:
            return builtin(head[1])
        except ValueError as e:
            raise ParseError(str(e)) from None
    elements = zero = one = None
    tables: dict[str, list[list[str]]] = {}
    i = 1
    while i < len(lines):
        n, line = lines[i]
        words = line.split()
        key = words[0]
        if key == "elements":
            elements = words[1:]
        elif key in ("zero", "one") and len(words) == 2:
            if key == "zero":
                zero = words[1]
            else:
                one = words[1]
        elif key in ("add", "mul") and len(words) == 1:
            if elements is None:
                raise ParseError(f"line {n}: '{key}' before 'elements'")
            rows = [ln.split() for _, ln in lines[i + 1:i + 1 + len(elements)]]
            if len(rows) != len(elements):
                raise ParseError(f"line {n}: {key} table needs {len(elements)} rows")
            tables[key] = rows
            i += len(elements)
        else:
            raise ParseError(f"line {n}: unexpected {line!r}")
        i += 1
    if elements is None or zero is None or one is None or set(tables) != {"add", "mul"}:
        raise ParseError("table semiring needs elements, zero, one, add and mul")
    try:
        return from_tables(elements, tables["add"], tables["mul"], zero, one)
    except ValueError as e:
        raise ParseError(str(e)) from None


def resolve_semiring(token: str, base_dir: str | os.PathLike = ".") -> Semiring:
    try:
        return builtin(token)
    except ValueError:
        pass
    path = Path(base_dir) / token
    if not path.is_file():
        raise ParseError(f"unknown semiring {token!r}")
    return parse_semiring(path.read_text())


def format_semiring(k: Semiring) -> str:
    if k.kind != "table":
        return f"semiring {k.name}\n"
    E = k.elements()
    out = ["semiring table", "elements " + " ".join(k.labels),
           f"zero {k.labels[k.zero]}", f"one {k.labels[k.one]}", "add"]
    out += [" ".join(k.labels[k.add(a, b)] for b in E) for a in E]
    out.append("mul")
    out += [" ".join(k.labels[k.mul(a, b)] for b in E) for a in E]
    return "\n".join(out) + "\n"


def _values(k: Semiring, tokens: list[str], where: str) -> tuple:
    try:
        return tuple(k.parse(t) for t in tokens)
    except DomainError as e:
        raise ParseError(f"{where}: {e}") from None


# -- vectors ------------------------------------------------------------------


def parse_vector(text: str, base_dir=".") -> FreeVector:
    lines = _lines(text)
    if len(lines) != 1:
        raise ParseError("vector file must hold exactly one 'vec' line")
    n, line = lines[0]
    words = line.split()
    if len(words) < 2 or words[0] != "vec" or ":" not in words:
        raise ParseError(f"line {n}: expected 'vec <semiring> <labels...> : <values...>'")
    k = resolve_semiring(words[1], base_dir)
    cut = words.index(":")
    labels, vals = words[2:cut], words[cut + 1:]
    if len(labels) != len(vals):
        raise ParseError(f"line {n}: {len(labels)} labels but {len(vals)} values")
    try:
        index = IndexSet(parse_label(t) for t in labels)
    except ValueError as e:
        raise ParseError(f"line {n}: {e}") from None
    return FreeVector(index, k, _values(k, vals, f"line {n}"))


def format_vector(v: FreeVector, semiring_token: str | None = None) -> str:
    k = v.semiring
    tok = semiring_token or k.name
    labels = " ".join(format_label(x) for x in v.index)
    vals = " ".join(k.format(c) for c in v.values)
    return f"vec {tok} {labels} : {vals}\n"


# -- kernels ------------------------------------------------------------------


def parse_kernel(text: str, base_dir=".") -> Kernel:
    lines = _lines(text)
    if len(lines) < 3:
        raise ParseError("kernel file needs 'kernel', 'rows' and 'cols' lines")
    (n0, l0), (n1, l1), (n2, l2) = lines[:3]
    w0, w1, w2 = l0.split(), l1.split(), l2.split()
    if w0[0] != "kernel" or len(w0) != 2:
        raise ParseError(f"line {n0}: expected 'kernel <semiring>'")
    if w1[0] != "rows" or w2[0] != "cols":
        raise ParseError(f"line {n1}: expected 'rows ...' then 'cols ...'")
    k = resolve_semiring(w0[1], base_dir)
    try:
        X = IndexSet(parse_label(t) for t in w1[1:])
        Y = IndexSet(parse_label(t) for t in w2[1:])
    except ValueError as e:
        raise ParseError(str(e)) from None
    body = lines[3:]
    if len(body) != len(X):
        raise ParseError(f"kernel needs {len(X)} value rows, found {len(body)}")
    rows = []
    for n, line in body:
        toks = line.split()
        if len(toks) != len(Y):
            raise ParseError(f"line {n}: expected {len(Y)} values")
        rows.append(_values(k, toks, f"line {n}"))
    return Kernel(X, Y, k, tuple(rows))


def format_kernel(M: Kernel, semiring_token: str | None = None) -> str:
    k = M.semiring
    out = [f"kernel {semiring_token or k.name}",
           "rows " + " ".join(format_label(x) for x in M.domain),
           "cols " + " ".join(format_label(y) for y in M.codomain)]
    out += [" ".join(k.format(v) for v in row) for row in M.entries]
    return "\n".join(out) + "\n"


def tensor_as_kernel(t: TensorKernel) -> Kernel:
    """Rows: product of all factors but the last; columns: the last factor."""
    if len(t.factors) == 1:
        ones = IndexSet(["1"])
        return Kernel(t.factors[0], ones, t.semiring, tuple((v,) for v in t.coeffs.values))
    R = IndexSet.product(*t.factors[:-1])
    C = t.factors[-1]
    n = len(t.factors)

    def label(r, c):
        return (r, c) if n == 2 else tuple(r) + (c,)

    return Kernel.from_function(R, C, t.semiring, lambda r, c: t.coeffs[label(r, c)])


def format_tensor(t: TensorKernel, semiring_token: str | None = None) -> str:
    return format_kernel(tensor_as_kernel(t), semiring_token)


# -- finite modules and product points ------------------------------------------


def parse_module(text: str, base_dir=".") -> FinSemimodule:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty module file")
    n0, l0 = lines[0]
    w = l0.split()
    if len(w) != 4 or w[0] != "module" or w[2] != "dim":
        raise ParseError(f"line {n0}: expected 'module <semiring> dim <n>'")
    k = resolve_semiring(w[1], base_dir)
    try:
        dim = int(w[3])
    except ValueError:
        raise ParseError(f"line {n0}: bad dimension {w[3]!r}") from None
    if not k.is_finite:
        # parsed fine; the engine refuses it
        raise DomainError("extensional engine requires finite semiring")
    if len(lines) == 2 and lines[1][1] == "all":
        return full_cube(k, dim)
    els = []
    for n, line in lines[1:]:
        toks = line.split()
        if len(toks) != dim:
            raise ParseError(f"line {n}: expected {dim} values")
        els.append(_values(k, toks, f"line {n}"))
    return FinSemimodule(k, dim, frozenset(els))


def format_module(m: FinSemimodule, semiring_token: str | None = None) -> str:
    out = [f"module {semiring_token or m.semiring.name} dim {m.dim}"]
    out += [m.format(e) for e in m.sorted_elements()]
    return "\n".join(out) + "\n"


def parse_point(line: str, factors, where: str = "point") -> tuple:
    parts = [p.split() for p in line.split(";")]
    if len(parts) != len(factors):
        raise ParseError(f"{where}: expected {len(factors)} components separated by ';'")
    pt = []
    for toks, m in zip(parts, factors):
        if len(toks) != m.dim:
            raise ParseError(f"{where}: component needs {m.dim} values")
        pt.append(_values(m.semiring, toks, where))
    return tuple(pt)


def format_point(p, factors) -> str:
    return " ; ".join(m.format(e) for m, e in zip(factors, p))


def parse_points(text: str, factors) -> list[tuple]:
    lines = _lines(text)
    if lines and lines[0][1] == "points":
        lines = lines[1:]
    return [parse_point(line, factors, f"line {n}") for n, line in lines]


# -- polylinear maps ------------------------------------------------------------


def _module_ref(words: list[str], k: Semiring, base_dir, n: int) -> FinSemimodule:
    if len(words) == 2 and words[0] == "cube":
        try:
            return full_cube(k, int(words[1]))
        except ValueError:
            raise ParseError(f"line {n}: bad cube dimension") from None
    if len(words) == 2 and words[0] == "file":
        path = Path(base_dir) / words[1]
        if not path.is_file():
            raise ParseError(f"line {n}: no module file {words[1]!r}")
        m = parse_module(path.read_text(), path.parent)
        if m.semiring != k:
            raise ParseError(f"line {n}: module semiring differs from the map's")
        return m
    raise ParseError(f"line {n}: expected 'cube <n>' or 'file <path>'")


def parse_polymap(text: str, base_dir=".") -> PolyMapTable:
    """``polymap <semiring>``, ``factor``/``codomain`` lines, then the table.

    Table lines are ``x1 ; ... ; xm -> w``; alternatively ``gen i1 ... im -> w``
    lines give values on unit-vector tuples of full cubes.
    """
    lines = _lines(text)
    if not lines or lines[0][1].split()[0] != "polymap" or len(lines[0][1].split()) != 2:
        raise ParseError("expected 'polymap <semiring>'")
    k = resolve_semiring(lines[0][1].split()[1], base_dir)
    if not k.is_finite:
        raise DomainError("extensional engine requires finite semiring")
    factors, codomain, table, gens = [], None, {}, {}
    for n, line in lines[1:]:
        words = line.split()
        if words[0] == "factor":
            factors.append(_module_ref(words[1:], k, base_dir, n))
        elif words[0] == "codomain":
            codomain = _module_ref(words[1:], k, base_dir, n)
        elif "->" in line:
            if codomain is None or not factors:
                raise ParseError(f"line {n}: table entry before factors/codomain")
            lhs, rhs = line.split("->", 1)
            w = _values(k, rhs.split(), f"line {n}")
            if len(w) != codomain.dim:
                raise ParseError(f"line {n}: value needs {codomain.dim} entries")
            if words[0] == "gen":
                try:
                    key = tuple(int(t) for t in lhs.split()[1:])
                except ValueError:
                    raise ParseError(f"line {n}: bad generator indices") from None
                gens[key] = w
            else:
                table[parse_point(lhs, factors, f"line {n}")] = w
        else:
            raise ParseError(f"line {n}: unexpected {line!r}")
    if codomain is None or not factors:
        raise ParseError("polymap needs at least one factor and a codomain")
    if gens and table:
        raise ParseError("use either generator lines or table lines, not both")
    if gens:
        return PolyMapTable.from_generators(factors, codomain, gens)
    return PolyMapTable(tuple(factors), codomain, table)
