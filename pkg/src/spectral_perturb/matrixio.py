"""Reading and writing dense complex matrices.

Two formats are supported:

* JSON ``{"rows": R, "cols": C, "data": [[re, im], ...]}`` in row-major order;
* Matrix Market ``matrix coordinate complex general`` and
  ``matrix array complex general`` (the array body is column-major, as the
  format prescribes).

Floats are written with ``repr`` so that save followed by load is bit-exact.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from ._linalg import as_matrix

MM_BANNER = "%%MatrixMarket"


class MatrixParseError(ValueError):
    def __init__(self, message: str, path=None, line: int | None = None, offset: int | None = None):
        self.path, self.line, self.offset = path, line, offset
        where = str(path) if path is not None else "<input>"
        if line is not None:
            where += f":{line}"
        if offset is not None:
            where += f" (byte {offset})"
        super().__init__(f"{where}: {message}")


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# JSON


def dumps_json(T) -> str:
    T = as_matrix(T)
    data = [[float(z.real), float(z.imag)] for z in T.ravel()]
    return json.dumps({"rows": T.shape[0], "cols": T.shape[1], "data": data})


def loads_json(text: str, path=None) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise MatrixParseError(exc.msg, path, exc.lineno, offset) from None
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= obj.keys():
        raise MatrixParseError('expected an object with keys "rows", "cols", "data"', path)
    R, C, data = obj["rows"], obj["cols"], obj["data"]
    if not (isinstance(R, int) and isinstance(C, int)) or R < 1 or C < 1:
        raise MatrixParseError(f"rows and cols must be positive integers, got {R!r}, {C!r}", path)
    if not isinstance(data, list):
        raise MatrixParseError('"data" must be a list of [re, im] pairs', path)
    if len(data) != R * C:
        raise MatrixParseError(f"data length mismatch: expected {R * C} entries (rows*cols), got {len(data)}", path)
    out = np.empty(R * C, dtype=complex)
    for k, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise MatrixParseError(f"entry {k} is not a [re, im] pair of numbers: {pair!r}", path)
        if not (math.isfinite(pair[0]) and math.isfinite(pair[1])):
            raise MatrixParseError(f"entry {k} is not finite", path)
        out[k] = complex(float(pair[0]), float(pair[1]))
    return out.reshape(R, C)


# ---------------------------------------------------------------------------
# Matrix Market


def dumps_mm(T, layout: str = "coordinate") -> str:
    T = as_matrix(T)
    R, C = T.shape
    lines = [f"{MM_BANNER} matrix {layout} complex general"]
    if layout == "coordinate":
        # a negative zero is kept explicitly so that the round trip stays bit-exact
        keep = (T != 0) | np.signbit(T.real) | np.signbit(T.imag)
        nz = list(zip(*np.nonzero(keep)))
        lines.append(f"{R} {C} {len(nz)}")
        lines += [f"{i + 1} {j + 1} {_fmt(T[i, j].real)} {_fmt(T[i, j].imag)}" for i, j in nz]
    elif layout == "array":
        lines.append(f"{R} {C}")
        lines += [f"{_fmt(T[i, j].real)} {_fmt(T[i, j].imag)}" for j in range(C) for i in range(R)]
    else:
        raise ValueError(f"unknown Matrix Market layout {layout!r}")
    return "\n".join(lines) + "\n"


def _lines_with_offsets(raw: bytes):
    offset = 0
    for lineno, line in enumerate(raw.split(b"\n"), start=1):
        yield lineno, offset, line.decode("utf-8", errors="replace").rstrip("\r")
        offset += len(line) + 1


def _float(tok: str, path, lineno, offset) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise MatrixParseError(f"not a number: {tok!r}", path, lineno, offset) from None
    if not math.isfinite(v):
        raise MatrixParseError(f"non-finite value {tok!r}", path, lineno, offset)
    return v


def loads_mm(raw: bytes | str, path=None) -> np.ndarray:
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    lines = _lines_with_offsets(raw)
    try:
        lineno, offset, header = next(lines)
    except StopIteration:
        raise MatrixParseError("empty file", path, 1, 0) from None
    parts = header.split()
    if len(parts) != 5 or parts[0] != MM_BANNER or parts[1].lower() != "matrix":
        raise MatrixParseError("missing '%%MatrixMarket matrix <layout> complex general' banner", path, lineno, offset)
    layout, field, symmetry = (x.lower() for x in parts[2:])
    if layout not in ("coordinate", "array"):
        raise MatrixParseError(f"unsupported layout {layout!r}", path, lineno, offset)
    if field != "complex" or symmetry != "general":
        raise MatrixParseError(f"only 'complex general' is supported, got '{field} {symmetry}'", path, lineno, offset)

    body = [(n, o, t) for n, o, t in lines if t.strip() and not t.lstrip().startswith("%")]
    if not body:
        raise MatrixParseError("missing size line", path, lineno + 1, len(raw))
    n0, o0, size_line = body[0]
    size = size_line.split()
    want = 3 if layout == "coordinate" else 2
    if len(size) != want or not all(t.isdigit() for t in size):
        raise MatrixParseError(f"size line must hold {want} nonnegative integers", path, n0, o0)
    R, C = int(size[0]), int(size[1])
    if R < 1 or C < 1:
        raise MatrixParseError("matrix dimensions must be positive", path, n0, o0)
    entries = body[1:]
    out = np.zeros((R, C), dtype=complex)
    if layout == "coordinate":
        nnz = int(size[2])
        if len(entries) != nnz:
            raise MatrixParseError(f"expected {nnz} entries, found {len(entries)}", path, n0, o0)
        for n, o, t in entries:
            tok = t.split()
            if len(tok) != 4:
                raise MatrixParseError("coordinate entry must be 'i j re im'", path, n, o)
            if not (tok[0].isdigit() and tok[1].isdigit()):
                raise MatrixParseError("row and column indices must be positive integers", path, n, o)
            i, j = int(tok[0]), int(tok[1])
            if not (1 <= i <= R and 1 <= j <= C):
                raise MatrixParseError(f"index ({i}, {j}) outside {R}x{C}", path, n, o)
            out[i - 1, j - 1] = complex(_float(tok[2], path, n, o), _float(tok[3], path, n, o))
    else:
        if len(entries) != R * C:
            raise MatrixParseError(f"expected {R * C} entries (rows*cols), found {len(entries)}", path, n0, o0)
        for k, (n, o, t) in enumerate(entries):
            tok = t.split()
            if len(tok) != 2:
                raise MatrixParseError("array entry must be 're im'", path, n, o)
            out[k % R, k // R] = complex(_float(tok[0], path, n, o), _float(tok[1], path, n, o))
    return out


# ---------------------------------------------------------------------------


def load_matrix(path) -> np.ndarray:
    """Load a matrix; ``.json`` files are JSON, anything else Matrix Market."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix.lower() == ".json":
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MatrixParseError("file is not valid UTF-8", path, None, exc.start) from None
        return loads_json(text, path)
    return loads_mm(raw, path)


def save_matrix(path, T, layout: str = "coordinate") -> None:
    path = Path(path)
    text = dumps_json(T) if path.suffix.lower() == ".json" else dumps_mm(T, layout)
    path.write_text(text, encoding="utf-8")
