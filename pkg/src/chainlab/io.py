"""JSON readers and writers for every file the CLI consumes.

All rationals travel as strings "p/q" (plain integers allowed); no
floats are read or written.  Chain-map files reference their source
and target complex files by path relative to the map file, so a
corpus directory is relocatable as a unit.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction

from .complexes import (NormedComplex, NormSpec, ChainMap, HOMOLOGICAL,
                        COHOMOLOGICAL, L1, LINF, chain_map)
from .groups import FiniteGroup, MonomialModule, finite_group, monomial_module
from .linalg import Matrix
from .rationals import rat, rat_str
from .simplicial import SimplicialComplex


class ParseError(Exception):
    """A named defect in an input file."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def _read(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise ParseError(path, f"cannot read: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ParseError(path, f"invalid JSON at line {e.lineno}") from e
    if not isinstance(data, dict):
        raise ParseError(path, "top level must be an object")
    return data


def _need(path: str, data: dict, key: str):
    if key not in data:
        raise ParseError(path, f"missing field {key!r}")
    return data[key]


def _rat(path: str, value, where: str) -> Fraction:
    try:
        return rat(value)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise ParseError(path, f"bad rational {value!r} in {where}") from e


def _matrix(path: str, rows, where: str) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError(path, f"{where} must be a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise ParseError(path, f"{where} has ragged rows")
    parsed = [[_rat(path, v, where) for v in r] for r in rows]
    return Matrix.from_rows(parsed, ncols=len(rows[0]) if rows else 0)


def _matrix_json(m: Matrix) -> list[list[str]]:
    return [[rat_str(v) for v in row] for row in m.to_rows()]


_KINDS = {L1: L1, LINF: LINF}


def load_complex(path: str) -> NormedComplex:
    data = _read(path)
    orientation = _need(path, data, "orientation")
    if orientation not in (HOMOLOGICAL, COHOMOLOGICAL):
        raise ParseError(path, f"unknown orientation {orientation!r}")
    dims = _need(path, data, "dims")
    if not isinstance(dims, list) or not dims or \
            any(not isinstance(d, int) or d < 0 for d in dims):
        raise ParseError(path, "dims must be a nonempty list of sizes")
    if data.get("top_degree", len(dims) - 1) != len(dims) - 1:
        raise ParseError(path, "top_degree disagrees with dims")
    raw_maps = _need(path, data, "boundaries")
    if not isinstance(raw_maps, list) or len(raw_maps) != len(dims) - 1:
        raise ParseError(path, f"expected {len(dims) - 1} boundary matrices")
    maps = []
    for k, rows in enumerate(raw_maps):
        shape = (dims[k], dims[k + 1]) if orientation == HOMOLOGICAL \
            else (dims[k + 1], dims[k])
        if rows == []:
            # an empty row list cannot carry a column count
            maps.append(Matrix.zeros(*shape))
            continue
        m = _matrix(path, rows, f"boundaries[{k}]")
        if m.shape != shape:
            raise ParseError(path, f"boundaries[{k}] has shape {m.shape}, "
                                   f"expected {shape}")
        maps.append(m)
    maps = tuple(maps)
    raw_norms = _need(path, data, "norms")
    if not isinstance(raw_norms, list) or len(raw_norms) != len(dims):
        raise ParseError(path, "one norm per degree required")
    norms = []
    for n, spec in enumerate(raw_norms):
        kind = spec.get("kind") if isinstance(spec, dict) else None
        if kind not in _KINDS:
            raise ParseError(path, f"norms[{n}] needs kind l1 or linf")
        weights = spec.get("weights")
        if not isinstance(weights, list) or len(weights) != dims[n]:
            raise ParseError(path, f"norms[{n}] needs {dims[n]} weights")
        parsed = tuple(_rat(path, w, f"norms[{n}]") for w in weights)
        if any(w <= 0 for w in parsed):
            raise ParseError(path, f"norms[{n}] has a non-positive weight")
        norms.append(NormSpec(kind, parsed))
    labels = data.get("labels")
    if labels is not None:
        if len(labels) != len(dims) or \
                any(len(per) != d for per, d in zip(labels, dims)):
            raise ParseError(path, "labels must match dims")
        labels = tuple(tuple(str(x) for x in per) for per in labels)
    try:
        return NormedComplex(orientation, tuple(dims), maps, tuple(norms),
                             labels)
    except ValueError as e:
        raise ParseError(path, str(e)) from e


def save_complex(path: str, c: NormedComplex) -> None:
    data = {
        "orientation": c.orientation,
        "top_degree": c.top_degree,
        "dims": list(c.dims),
        "boundaries": [_matrix_json(m) for m in c.maps],
        "norms": [{"kind": s.kind, "weights": [rat_str(w) for w in s.weights]}
                  for s in c.norms],
    }
    if c.labels is not None:
        data["labels"] = [list(per) for per in c.labels]
    _write(path, data)


def load_chain_map(path: str) -> ChainMap:
    data = _read(path)
    base = os.path.dirname(os.path.abspath(path))
    src = load_complex(os.path.join(base, _need(path, data, "source")))
    tgt = load_complex(os.path.join(base, _need(path, data, "target")))
    raw = _need(path, data, "mats")
    expected = max(src.top_degree, tgt.top_degree) + 1
    if not isinstance(raw, list) or len(raw) != expected:
        raise ParseError(path, f"expected {expected} matrices")
    mats = []
    for n, rows in enumerate(raw):
        shape = (tgt.dim(n), src.dim(n))
        if rows == []:
            # an empty row list cannot carry a column count
            mats.append(Matrix.zeros(*shape))
            continue
        m = _matrix(path, rows, f"mats[{n}]")
        if m.shape != shape:
            raise ParseError(path, f"mats[{n}] has shape {m.shape}, "
                                   f"expected {shape}")
        mats.append(m)
    try:
        return chain_map(src, tgt, mats)
    except ValueError as e:
        raise ParseError(path, str(e)) from e


def save_chain_map(path: str, f: ChainMap, source_rel: str, target_rel: str
                   ) -> None:
    _write(path, {
        "source": source_rel,
        "target": target_rel,
        "mats": [_matrix_json(m) for m in f.mats],
    })


def load_group(path: str) -> FiniteGroup:
    data = _read(path)
    order = _need(path, data, "order")
    table = _need(path, data, "table")
    if not isinstance(table, list) or len(table) != order:
        raise ParseError(path, f"table must have {order} rows")
    try:
        return finite_group(table)
    except ValueError as e:
        raise ParseError(path, str(e)) from e


def save_group(path: str, g: FiniteGroup) -> None:
    _write(path, {"order": g.order, "table": [list(r) for r in g.table]})


def load_module(path: str, group: FiniteGroup) -> MonomialModule:
    data = _read(path)
    dim = _need(path, data, "dim")
    weights = _need(path, data, "weights")
    if not isinstance(weights, list) or len(weights) != dim:
        raise ParseError(path, f"weights must have length {dim}")
    raw = _need(path, data, "action")
    if not isinstance(raw, list) or len(raw) != group.order:
        raise ParseError(path, f"action needs {group.order} entries")
    actions = []
    for g, triples in enumerate(raw):
        entries = []
        for t in triples:
            if not isinstance(t, list) or len(t) != 3:
                raise ParseError(path, f"action[{g}] entries must be "
                                       "[src, tgt, coeff] triples")
            src, tgt, coeff = t
            entries.append((tgt, src, _rat(path, coeff, f"action[{g}]")))
        actions.append(Matrix.from_entries(dim, dim, entries))
    try:
        return monomial_module(group,
                               [_rat(path, w, "weights") for w in weights],
                               actions)
    except ValueError as e:
        raise ParseError(path, str(e)) from e


def save_module(path: str, v: MonomialModule) -> None:
    action = []
    for m in v.actions:
        triples = []
        for src in range(m.ncols):
            for tgt, c in sorted(m.cols[src].items()):
                triples.append([src, tgt, rat_str(c)])
        action.append(triples)
    _write(path, {
        "dim": v.dim,
        "weights": [rat_str(w) for w in v.weights],
        "action": action,
    })


def load_simplicial(path: str) -> SimplicialComplex:
    data = _read(path)
    n = _need(path, data, "vertices")
    simplices = _need(path, data, "simplices")
    if not isinstance(simplices, list):
        raise ParseError(path, "simplices must be a list")
    try:
        return SimplicialComplex.from_top(n, [tuple(s) for s in simplices])
    except (ValueError, TypeError) as e:
        raise ParseError(path, str(e)) from e


def load_vertex_action(path: str, group: FiniteGroup
                       ) -> tuple[tuple[int, ...], ...]:
    data = _read(path)
    raw = _need(path, data, "action")
    if not isinstance(raw, list) or len(raw) != group.order:
        raise ParseError(path, f"action needs {group.order} vertex "
                               "permutations")
    return tuple(tuple(p) for p in raw)


def save_simplicial(path: str, k: SimplicialComplex,
                    action=None) -> None:
    data = {
        "vertices": k.vertex_count,
        "simplices": [list(s) for s in k.maximal()],
    }
    if action is not None:
        data["action"] = [list(p) for p in action]
    _write(path, data)


def load_cycle(path: str) -> tuple[int, tuple[Fraction, ...]]:
    data = _read(path)
    degree = _need(path, data, "degree")
    if not isinstance(degree, int) or degree < 0:
        raise ParseError(path, "degree must be a non-negative integer")
    coeffs = _need(path, data, "coefficients")
    if not isinstance(coeffs, list):
        raise ParseError(path, "coefficients must be a list")
    return degree, tuple(_rat(path, c, "coefficients") for c in coeffs)


def save_cycle(path: str, degree: int, coefficients) -> None:
    _write(path, {"degree": degree,
                  "coefficients": [rat_str(rat(c)) for c in coefficients]})


def _write(path: str, data: dict) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")
