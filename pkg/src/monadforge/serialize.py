"""Versioned JSON files for the four object kinds.

One schema family, dispatched on the "schema" tag: net/v1, gamma/v1,
octuple/v1, sigma/v1.  Scalars travel as canonical strings ("-3", "5/7"),
matrices as row-major string grids, vectors as flat string lists.  Files
are rational-only: prime-field work happens in memory, never on disk.
Dumps are key-sorted with a trailing newline so identical objects produce
byte-identical files.
"""

from __future__ import annotations

import json
from typing import Union

from .fields import QQ, ScalarFormatError
from .frames import FrameError, GammaPoint
from .matrices import Matrix
from .nets import NetError, QuadricNet
from .plane import PlaneError, SigmaPoint
from .slices import BarthOctuple, OctupleError

SCHEMAS = ("net/v1", "gamma/v1", "octuple/v1", "sigma/v1")

LoadedObject = Union[QuadricNet, GammaPoint, BarthOctuple, SigmaPoint]


class SchemaError(ValueError):
    """Malformed object file; carries the JSON-path of the problem."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


# ------------------------------------------------------------------- writing


def _scalar(x) -> str:
    return QQ.to_str(x)


def _grid(m: Matrix) -> list:
    return [[_scalar(x) for x in row] for row in m.rows]


def _column(m: Matrix) -> list:
    return [_scalar(m[i, 0]) for i in range(m.nrows)]


def net_to_jsonable(net: QuadricNet) -> dict:
    _require_rational(net.field)
    keys = sorted(net.blocks)
    return {"schema": "net/v1", "n": net.n, "ambient": net.ambient,
            "blocks": {k: _grid(net.blocks[k]) for k in keys}}


def gamma_to_jsonable(point: GammaPoint) -> dict:
    _require_rational(point.field)
    return {"schema": "gamma/v1", "n": point.n, "ambient": point.ambient,
            "matrix": _grid(point.gamma)}


def octuple_to_jsonable(oct_: BarthOctuple) -> dict:
    _require_rational(oct_.field)
    return {"schema": "octuple/v1", "n": oct_.n,
            "A1": _grid(oct_.a_mat1), "A2": _grid(oct_.a_mat2),
            "B1": _grid(oct_.b_mat1), "B2": _grid(oct_.b_mat2),
            "a1": _column(oct_.a_vec1), "a2": _column(oct_.a_vec2),
            "b1": _column(oct_.b_vec1), "b2": _column(oct_.b_vec2)}


def sigma_to_jsonable(sigma: SigmaPoint) -> dict:
    _require_rational(sigma.field)
    return {"schema": "sigma/v1", "n": sigma.n,
            "B1": _grid(sigma.b_mat1), "B2": _grid(sigma.b_mat2),
            "C": _grid(sigma.c_mat),
            "a1": _column(sigma.a_vec1), "a2": _column(sigma.a_vec2),
            "b1": _column(sigma.b_vec1), "b2": _column(sigma.b_vec2)}


def object_to_jsonable(obj: LoadedObject) -> dict:
    if isinstance(obj, QuadricNet):
        return net_to_jsonable(obj)
    if isinstance(obj, GammaPoint):
        return gamma_to_jsonable(obj)
    if isinstance(obj, BarthOctuple):
        return octuple_to_jsonable(obj)
    if isinstance(obj, SigmaPoint):
        return sigma_to_jsonable(obj)
    raise TypeError(f"no schema for {type(obj).__name__}")


def dumps(data) -> str:
    """Canonical rendering: sorted keys, two-space indent, final newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def save_file(path: str, obj: LoadedObject) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(object_to_jsonable(obj)))


def _require_rational(field) -> None:
    if field != QQ:
        raise SchemaError("$", "only rational objects are serialized")


# ------------------------------------------------------------------- reading


def _expect_dict(data, where: str) -> dict:
    if not isinstance(data, dict):
        raise SchemaError(where, f"expected an object, got "
                          f"{type(data).__name__}")
    return data


def _expect_int(data, where: str, minimum: int) -> int:
    if not isinstance(data, int) or isinstance(data, bool):
        raise SchemaError(where, "expected an integer")
    if data < minimum:
        raise SchemaError(where, f"must be at least {minimum}")
    return data


def _field_value(data: dict, key: str, where: str):
    if key not in data:
        raise SchemaError(f"{where}.{key}", "missing")
    return data[key]


def _parse_scalar(raw, where: str):
    if not isinstance(raw, str):
        raise SchemaError(where, "scalars must be strings")
    try:
        return QQ.from_str(raw)
    except ScalarFormatError as exc:
        raise SchemaError(where, str(exc)) from None


def _parse_matrix(raw, where: str, nrows: int, ncols: int) -> Matrix:
    if not isinstance(raw, list) or len(raw) != nrows:
        raise SchemaError(where, f"expected {nrows} rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != ncols:
            raise SchemaError(f"{where}[{i}]", f"expected {ncols} entries")
        rows.append([_parse_scalar(x, f"{where}[{i}][{j}]")
                     for j, x in enumerate(row)])
    return Matrix(QQ, rows)


def _parse_column(raw, where: str, size: int) -> Matrix:
    if not isinstance(raw, list) or len(raw) != size:
        raise SchemaError(where, f"expected {size} entries")
    return Matrix(QQ, [[_parse_scalar(x, f"{where}[{i}]")]
                       for i, x in enumerate(raw)])


def _load_net(data: dict) -> QuadricNet:
    n = _expect_int(_field_value(data, "n", "$"), "$.n", 1)
    ambient = _expect_int(_field_value(data, "ambient", "$"), "$.ambient", 3)
    if ambient not in (3, 4):
        raise SchemaError("$.ambient", "must be 3 or 4")
    raw_blocks = _expect_dict(_field_value(data, "blocks", "$"), "$.blocks")
    blocks = {}
    for key, raw in raw_blocks.items():
        blocks[key] = _parse_matrix(raw, f"$.blocks.{key}", n, n)
    try:
        return QuadricNet(QQ, n, ambient, blocks)
    except NetError as exc:
        raise SchemaError("$.blocks", str(exc)) from None


def _load_gamma(data: dict) -> GammaPoint:
    n = _expect_int(_field_value(data, "n", "$"), "$.n", 1)
    ambient = _expect_int(_field_value(data, "ambient", "$"), "$.ambient", 3)
    if ambient not in (3, 4):
        raise SchemaError("$.ambient", "must be 3 or 4")
    matrix = _parse_matrix(_field_value(data, "matrix", "$"), "$.matrix",
                           2 * n + 2, ambient * n)
    try:
        return GammaPoint(n, ambient, matrix)
    except FrameError as exc:
        raise SchemaError("$.matrix", str(exc)) from None


def _load_octuple(data: dict) -> BarthOctuple:
    n = _expect_int(_field_value(data, "n", "$"), "$.n", 1)
    mats = {key: _parse_matrix(_field_value(data, key, "$"), f"$.{key}", n, n)
            for key in ("A1", "A2", "B1", "B2")}
    vecs = {key: _parse_column(_field_value(data, key, "$"), f"$.{key}", n)
            for key in ("a1", "a2", "b1", "b2")}
    try:
        return BarthOctuple(mats["A1"], mats["A2"], mats["B1"], mats["B2"],
                            vecs["a1"], vecs["a2"], vecs["b1"], vecs["b2"])
    except OctupleError as exc:
        raise SchemaError("$", str(exc)) from None


def _load_sigma(data: dict) -> SigmaPoint:
    n = _expect_int(_field_value(data, "n", "$"), "$.n", 1)
    mats = {key: _parse_matrix(_field_value(data, key, "$"), f"$.{key}", n, n)
            for key in ("B1", "B2", "C")}
    vecs = {key: _parse_column(_field_value(data, key, "$"), f"$.{key}", n)
            for key in ("a1", "a2", "b1", "b2")}
    try:
        return SigmaPoint(mats["B1"], mats["B2"], mats["C"],
                          vecs["a1"], vecs["a2"], vecs["b1"], vecs["b2"])
    except PlaneError as exc:
        raise SchemaError("$", str(exc)) from None


_LOADERS = {"net/v1": _load_net, "gamma/v1": _load_gamma,
            "octuple/v1": _load_octuple, "sigma/v1": _load_sigma}


def load_obj(data) -> LoadedObject:
    """Dispatch a parsed JSON document on its schema tag."""
    _expect_dict(data, "$")
    schema = data.get("schema")
    if schema not in _LOADERS:
        raise SchemaError("$.schema",
                          f"expected one of {', '.join(SCHEMAS)}")
    return _LOADERS[schema](data)


def load_file(path: str) -> LoadedObject:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"not valid JSON: {exc}") from None
    return load_obj(data)
