"""Instance files: text edge lists with JSON sidecars, or single-file JSON.

Graph instances: header line ``n m seed``, then m lines ``u v`` with
1-based endpoints, u < v, sorted lexicographically.  Triple systems use the
same header and ``u v w`` lines (sorted within each line and overall), with
the per-line color flags carried by the sidecar as a string of R/B/D
characters aligned with the line order.

The sidecar sits next to the edge file with ``.json`` appended to its name
and holds the parameter record, placement/base-graph provenance (0-based,
numpy-native ids), and builder statistics.  ``format="json"`` embeds
everything, edges included (still 1-based, mirroring the text layout), in
one deterministic file: keys sorted, newline-terminated.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .graphview import SimpleGraphView
from .params import Params

__all__ = ["InstanceRecord", "TripleRecord", "graph_record", "triple_record",
           "write_instance", "read_instance", "instances_equal"]


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _dumps(payload: dict) -> str:
    return json.dumps(_jsonify(payload), sort_keys=True, indent=1) + "\n"


@dataclass
class InstanceRecord:
    """Serializable projection of a built graph instance."""

    n: int
    seed: int
    edges: np.ndarray  # (m, 2) int64, 0-based, u < v, lex-sorted
    params: Params | None = None
    placement_rows: np.ndarray | None = None
    placement_cols: np.ndarray | None = None
    base_red_edges: np.ndarray | None = None
    base_blue_edges: np.ndarray | None = None
    stats: dict = field(default_factory=dict)
    kind: str = "graph"

    def graph(self) -> SimpleGraphView:
        return SimpleGraphView.from_edge_arrays(
            self.n, self.edges[:, 0], self.edges[:, 1])


@dataclass
class TripleRecord:
    """Serializable projection of a triple system."""

    n: int
    seed: int
    triples: list  # sorted (u, v, w) 0-based
    colors: str    # aligned R/B/D characters
    params: Params | None = None
    system_kind: str = "reduced"
    cells: np.ndarray | None = None
    stats: dict = field(default_factory=dict)
    kind: str = "triples"

    def system(self):
        from .hypergraph import BLUE, RED, TripleSystem

        bits = {"R": RED, "B": BLUE, "D": RED | BLUE}
        h = TripleSystem(order=self.n, kind=self.system_kind, cells=self.cells)
        for t, c in zip(self.triples, self.colors):
            h.add(t, bits[c])
        return h


def graph_record(placed) -> InstanceRecord:
    """Project a builder result (construction.build output) to a record."""
    return InstanceRecord(
        n=placed.params.n,
        seed=placed.seed,
        edges=placed.graph.edge_array(),
        params=placed.params,
        placement_rows=placed.placement.rows.copy(),
        placement_cols=placed.placement.cols.copy(),
        base_red_edges=placed.base_red.edge_list(),
        base_blue_edges=placed.base_blue.edge_list(),
        stats=dict(placed.stats),
    )


def triple_record(h, params: Params | None = None, seed: int = 0,
                  stats: dict | None = None) -> TripleRecord:
    from .hypergraph import BLUE, RED

    chars = {RED: "R", BLUE: "B", RED | BLUE: "D"}
    triples = h.edges()
    colors = "".join(chars[h.flags[t]] for t in triples)
    return TripleRecord(
        n=h.order, seed=seed, triples=triples, colors=colors, params=params,
        system_kind=h.kind, cells=None if h.cells is None else h.cells.copy(),
        stats=dict(stats or {}),
    )


def _sidecar_path(path: str) -> str:
    return path + ".json"


def _record_payload(rec) -> dict:
    if rec.kind == "graph":
        payload = {
            "kind": "graph",
            "n": rec.n,
            "m": len(rec.edges),
            "seed": rec.seed,
            "params": None if rec.params is None else rec.params.to_dict(),
            "placement": None,
            "base_red_edges": None if rec.base_red_edges is None
            else rec.base_red_edges,
            "base_blue_edges": None if rec.base_blue_edges is None
            else rec.base_blue_edges,
            "stats": rec.stats,
        }
        if rec.placement_rows is not None:
            payload["placement"] = {"rows": rec.placement_rows,
                                    "cols": rec.placement_cols}
        return payload
    if rec.kind == "triples":
        return {
            "kind": "triples",
            "n": rec.n,
            "m": len(rec.triples),
            "seed": rec.seed,
            "params": None if rec.params is None else rec.params.to_dict(),
            "system_kind": rec.system_kind,
            "colors": rec.colors,
            "cells": rec.cells,
            "stats": rec.stats,
        }
    raise ValueError(f"unknown record kind {rec.kind!r}")


def write_instance(rec, path: str, fmt: str = "edgelist") -> list[str]:
    """Write a record; returns the list of files written."""
    out_dir = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(out_dir):
        raise FileNotFoundError(f"output directory does not exist: {out_dir}")
    payload = _record_payload(rec)
    if fmt == "json":
        body = dict(payload)
        body["format"] = "json"
        if rec.kind == "graph":
            body["edges"] = [[int(u) + 1, int(v) + 1] for u, v in rec.edges]
        else:
            body["triples"] = [[a + 1, b + 1, c + 1] for a, b, c in rec.triples]
        with open(path, "w") as fh:
            fh.write(_dumps(body))
        return [path]
    if fmt != "edgelist":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"{rec.n} {payload['m']} {rec.seed}\n"]
    if rec.kind == "graph":
        for u, v in rec.edges:
            lines.append(f"{int(u) + 1} {int(v) + 1}\n")
    else:
        for a, b, c in rec.triples:
            lines.append(f"{a + 1} {b + 1} {c + 1}\n")
    with open(path, "w") as fh:
        fh.writelines(lines)
    side = _sidecar_path(path)
    with open(side, "w") as fh:
        fh.write(_dumps(payload))
    return [path, side]


def _params_from(obj) -> Params | None:
    return None if obj is None else Params.from_dict(obj)


def _edges_array(pairs, n: int) -> np.ndarray:
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if len(arr) and (arr.min() < 0 or arr.max() >= n):
        raise ValueError("edge endpoint out of range")
    if len(arr) and not (arr[:, 0] < arr[:, 1]).all():
        raise ValueError("edges must satisfy u < v")
    return arr


def _from_payload(payload: dict, edges_1based=None, triples_1based=None):
    kind = payload.get("kind", "graph")
    n = int(payload["n"])
    seed = int(payload.get("seed", 0))
    params = _params_from(payload.get("params"))
    stats = payload.get("stats") or {}
    if kind == "graph":
        raw = edges_1based if edges_1based is not None else payload.get("edges", [])
        edges = _edges_array([(u - 1, v - 1) for u, v in raw], n)
        placement = payload.get("placement")
        rows = cols = None
        if placement is not None:
            rows = np.asarray(placement["rows"], dtype=np.int64)
            cols = np.asarray(placement["cols"], dtype=np.int64)
        red = payload.get("base_red_edges")
        blue = payload.get("base_blue_edges")
        return InstanceRecord(
            n=n, seed=seed, edges=edges, params=params,
            placement_rows=rows, placement_cols=cols,
            base_red_edges=None if red is None else np.asarray(red, dtype=np.int64).reshape(-1, 2),
            base_blue_edges=None if blue is None else np.asarray(blue, dtype=np.int64).reshape(-1, 2),
            stats=stats)
    if kind == "triples":
        raw = triples_1based if triples_1based is not None else payload.get("triples", [])
        triples = [tuple(sorted(int(x) - 1 for x in t)) for t in raw]
        for t in triples:
            if t[0] < 0 or t[2] >= n or len(set(t)) != 3:
                raise ValueError(f"bad triple {t}")
        cells = payload.get("cells")
        colors = payload.get("colors", "")
        if len(colors) != len(triples):
            raise ValueError("color string does not match triple count")
        return TripleRecord(
            n=n, seed=seed, triples=triples, colors=colors, params=params,
            system_kind=payload.get("system_kind", "reduced"),
            cells=None if cells is None else np.asarray(cells, dtype=np.int64),
            stats=stats)
    raise ValueError(f"unknown record kind {kind!r}")


def read_instance(path: str):
    """Load a record from an edge-list (with sidecar) or embedded-JSON file."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        payload = json.loads(text)
        if payload.get("format") != "json":
            raise ValueError("JSON instance file missing format marker")
        return _from_payload(payload)

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"empty instance file: {path}")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(f"bad header {lines[0]!r}: want 'n m seed'")
    n, m, seed = (int(x) for x in head)
    body = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    if len(body) != m:
        raise ValueError(f"header claims {m} lines, found {len(body)}")
    widths = {len(t) for t in body}
    if widths - {2, 3} or len(widths) > 1:
        raise ValueError("mixed or malformed entry lines")
    is_triples = bool(body) and len(body[0]) == 3

    side = _sidecar_path(path)
    payload = None
    if os.path.exists(side):
        with open(side) as fh:
            payload = json.loads(fh.read())
        if int(payload.get("n", n)) != n or int(payload.get("m", m)) != m:
            raise ValueError("sidecar disagrees with edge-file header")
    if payload is None:
        kind = "triples" if is_triples else "graph"
        payload = {"kind": kind, "n": n, "m": m, "seed": seed,
                   "colors": "D" * m if is_triples else None}
    if payload.get("kind") == "triples" or is_triples:
        return _from_payload(payload, triples_1based=body)
    return _from_payload(payload, edges_1based=body)


def _num_eq(a, b) -> bool:
    if isinstance(a, float) and isinstance(b, float):
        return (a == b) or (math.isnan(a) and math.isnan(b))
    return a == b


def _dict_eq(a: dict, b: dict) -> bool:
    if set(a) != set(b):
        return False
    for k in a:
        va, vb = a[k], b[k]
        if isinstance(va, dict) and isinstance(vb, dict):
            if not _dict_eq(va, vb):
                return False
        elif not _num_eq(va, vb):
            return False
    return True


def _arr_eq(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    a, b = np.asarray(a), np.asarray(b)
    if a.size == 0 and b.size == 0:
        return True
    return a.shape == b.shape and bool((a == b).all())


def instances_equal(a, b) -> bool:
    if a.kind != b.kind or a.n != b.n or a.seed != b.seed:
        return False
    pa = None if a.params is None else a.params.to_dict()
    pb = None if b.params is None else b.params.to_dict()
    if (pa is None) != (pb is None):
        return False
    if pa is not None and not _dict_eq(pa, pb):
        return False
    if not _dict_eq(_jsonify(a.stats), _jsonify(b.stats)):
        return False
    if a.kind == "graph":
        return (_arr_eq(a.edges, b.edges)
                and _arr_eq(a.placement_rows, b.placement_rows)
                and _arr_eq(a.placement_cols, b.placement_cols)
                and _arr_eq(a.base_red_edges, b.base_red_edges)
                and _arr_eq(a.base_blue_edges, b.base_blue_edges))
    return (a.triples == b.triples and a.colors == b.colors
            and a.system_kind == b.system_kind and _arr_eq(a.cells, b.cells))
