"""Human-editable model files.

A model file is line-oriented text with a header and named sections::

    name: heisenberg
    dimension: 3

    [brackets]
    1 2 3 1          # [X_1, X_2] = X_3; entries are i j k c with i < j

    [metric]
    identity

    [xi]
    X1               # or explicit components: 1 0 0

    [eta]
    e1

    [J]
    0 0 0
    0 0 -1
    0 1 0

Optional sections: ``[omega]`` with rows ``i j c`` overriding the fundamental
2-form, and ``[automorphism]`` with a first row ``order m`` followed by a
matrix, for mapping-torus runs.  ``#`` starts a comment; rationals are
written like ``-1/2``.  Every parse error carries a line diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import ModelParseError
from .geometry import LieModel

_SECTIONS = ("brackets", "metric", "xi", "eta", "J", "omega", "automorphism")
CORPUS_MODELS = ("torus3", "torus5", "heisenberg",
                 "t2-rot4-mapping-torus", "t2-negid-mapping-torus")


@dataclass
class ModelFile:
    name: str
    dimension: int
    brackets: list[tuple[int, int, int, Fraction]] = field(default_factory=list)
    metric: list[list[Fraction]] | None = None
    xi: list[Fraction] | None = None
    eta: list[Fraction] | None = None
    J: list[list[Fraction]] | None = None
    omega: list[tuple[int, int, Fraction]] = field(default_factory=list)
    automorphism: tuple[list[list[Fraction]], int] | None = None

    def to_lie_model(self) -> LieModel:
        grouped: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i, j, k, c in self.brackets:
            slot = grouped.setdefault((i - 1, j - 1), {})
            slot[k - 1] = slot.get(k - 1, Fraction(0)) + c
        return LieModel(
            self.dimension, grouped, name=self.name, metric=self.metric,
            xi=self.xi, eta=self.eta, J=self.J,
            omega_terms=[(i - 1, j - 1, c) for i, j, c in self.omega],
            automorphism=self.automorphism)

    def has_contact_structure(self) -> bool:
        return self.xi is not None and self.eta is not None and self.J is not None


def _rational(token: str, line: int, fieldname: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ModelParseError(f"bad rational {token!r}", line, fieldname) from None


def _int(token: str, line: int, fieldname: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ModelParseError(f"bad integer {token!r}", line, fieldname) from None


def loads(text: str, name_hint: str = "model") -> ModelFile:
    name = name_hint
    dimension = None
    section = None
    rows: dict[str, list[tuple[int, list[str]]]] = {s: [] for s in _SECTIONS}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise ModelParseError(f"unknown section [{section}]", lineno)
            continue
        if section is None:
            if ":" not in line:
                raise ModelParseError("expected 'key: value' in the header",
                                      lineno)
            key, _, value = line.partition(":")
            key, value = key.strip(), value.strip()
            if key == "name":
                name = value
            elif key == "dimension":
                dimension = _int(value, lineno, "dimension")
            else:
                raise ModelParseError(f"unknown header key {key!r}", lineno)
            continue
        rows[section].append((lineno, line.split()))
    if dimension is None:
        raise ModelParseError("missing 'dimension:' header")
    if dimension < 1:
        raise ModelParseError("dimension must be positive", field="dimension")
    mf = ModelFile(name=name, dimension=dimension)
    _parse_brackets(mf, rows["brackets"])
    _parse_metric(mf, rows["metric"])
    mf.xi = _parse_vector(rows["xi"], dimension, "xi", prefix="X")
    mf.eta = _parse_vector(rows["eta"], dimension, "eta", prefix="e")
    mf.J = _parse_matrix(rows["J"], dimension, "J")
    _parse_omega(mf, rows["omega"])
    _parse_automorphism(mf, rows["automorphism"])
    return mf


def _parse_brackets(mf: ModelFile, entries):
    for lineno, toks in entries:
        if len(toks) != 4:
            raise ModelParseError("bracket rows are 'i j k c'", lineno,
                                  "brackets")
        i = _int(toks[0], lineno, "brackets")
        j = _int(toks[1], lineno, "brackets")
        k = _int(toks[2], lineno, "brackets")
        c = _rational(toks[3], lineno, "brackets")
        for idx in (i, j, k):
            if not 1 <= idx <= mf.dimension:
                raise ModelParseError(f"index {idx} out of range 1.."
                                      f"{mf.dimension}", lineno, "brackets")
        if i >= j:
            raise ModelParseError("bracket rows need i < j (antisymmetry is "
                                  "completed automatically)", lineno, "brackets")
        mf.brackets.append((i, j, k, c))
    mf.brackets.sort()


def _parse_metric(mf: ModelFile, entries):
    if not entries:
        return
    if len(entries) == 1 and entries[0][1] == ["identity"]:
        mf.metric = None
        return
    mf.metric = _parse_matrix(entries, mf.dimension, "metric")


def _parse_vector(entries, dim: int, fieldname: str, prefix: str):
    if not entries:
        return None
    if len(entries) != 1:
        raise ModelParseError(f"{fieldname} must be a single line",
                              entries[1][0], fieldname)
    lineno, toks = entries[0]
    if len(toks) == 1 and toks[0].startswith(prefix) and \
            toks[0][len(prefix):].isdigit():
        idx = int(toks[0][len(prefix):])
        if not 1 <= idx <= dim:
            raise ModelParseError(f"{toks[0]} out of range", lineno, fieldname)
        return [Fraction(int(t == idx)) for t in range(1, dim + 1)]
    if len(toks) != dim:
        raise ModelParseError(f"{fieldname} needs {dim} components",
                              lineno, fieldname)
    return [_rational(t, lineno, fieldname) for t in toks]


def _parse_matrix(entries, dim: int, fieldname: str):
    if not entries:
        return None
    if len(entries) != dim:
        raise ModelParseError(f"{fieldname} needs {dim} rows",
                              entries[0][0], fieldname)
    out = []
    for lineno, toks in entries:
        if len(toks) != dim:
            raise ModelParseError(f"{fieldname} rows need {dim} entries",
                                  lineno, fieldname)
        out.append([_rational(t, lineno, fieldname) for t in toks])
    return out


def _parse_omega(mf: ModelFile, entries):
    for lineno, toks in entries:
        if len(toks) != 3:
            raise ModelParseError("omega rows are 'i j c'", lineno, "omega")
        i = _int(toks[0], lineno, "omega")
        j = _int(toks[1], lineno, "omega")
        c = _rational(toks[2], lineno, "omega")
        if not (1 <= i < j <= mf.dimension):
            raise ModelParseError("omega rows need 1 <= i < j <= dim",
                                  lineno, "omega")
        mf.omega.append((i, j, c))
    mf.omega.sort()


def _parse_automorphism(mf: ModelFile, entries):
    if not entries:
        return
    lineno, toks = entries[0]
    if len(toks) != 2 or toks[0] != "order":
        raise ModelParseError("automorphism section starts with 'order m'",
                              lineno, "automorphism")
    order = _int(toks[1], lineno, "automorphism")
    if order < 1:
        raise ModelParseError("order must be >= 1", lineno, "automorphism")
    matrix = _parse_matrix(entries[1:], mf.dimension, "automorphism")
    if matrix is None:
        raise ModelParseError("automorphism needs a matrix", lineno,
                              "automorphism")
    mf.automorphism = (matrix, order)


def serialize(mf: ModelFile) -> str:
    """Canonical rendering: load(serialize(load(x))) == load(serialize(...))."""
    out = [f"name: {mf.name}", f"dimension: {mf.dimension}", ""]
    out.append("[brackets]")
    for i, j, k, c in sorted(mf.brackets):
        out.append(f"{i} {j} {k} {c}")
    out.append("")
    out.append("[metric]")
    if mf.metric is None:
        out.append("identity")
    else:
        out.extend(" ".join(str(v) for v in row) for row in mf.metric)
    out.append("")
    for label, vec in (("xi", mf.xi), ("eta", mf.eta)):
        if vec is not None:
            out.append(f"[{label}]")
            out.append(" ".join(str(v) for v in vec))
            out.append("")
    if mf.J is not None:
        out.append("[J]")
        out.extend(" ".join(str(v) for v in row) for row in mf.J)
        out.append("")
    if mf.omega:
        out.append("[omega]")
        out.extend(f"{i} {j} {c}" for i, j, c in sorted(mf.omega))
        out.append("")
    if mf.automorphism is not None:
        matrix, order = mf.automorphism
        out.append("[automorphism]")
        out.append(f"order {order}")
        out.extend(" ".join(str(v) for v in row) for row in matrix)
        out.append("")
    return "\n".join(out).rstrip() + "\n"


def load(path: str | Path) -> ModelFile:
    path = Path(path)
    return loads(path.read_text(), name_hint=path.stem)


def corpus_path(name: str):
    """Path-like handle to a bundled corpus model."""
    stem = name.removesuffix(".model")
    if stem not in CORPUS_MODELS:
        raise ModelParseError(f"unknown corpus model {name!r}; available: "
                              + ", ".join(CORPUS_MODELS))
    return resources.files("cokahler.corpus").joinpath(f"{stem}.model")


def load_corpus(name: str) -> ModelFile:
    stem = name.removesuffix(".model")
    return loads(corpus_path(stem).read_text(), name_hint=stem)


def resolve(name_or_path: str) -> ModelFile:
    """Load a model from a filesystem path, else the bundled corpus."""
    path = Path(name_or_path)
    if path.exists():
        return load(path)
    return load_corpus(name_or_path)
