"""Strict JSON schemas for tensors, decompositions, graphs and instances.

Rational values travel as integers or "p/q" strings; decimal literals and
NaN-like tokens are rejected outright, and schema violations name the
offending path.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .exact import CostTensor, Scalar, format_rational, parse_rational
from .feasible import FeasibleSolution
from .graphs import WeightedGraph, weighted_graph
from .savs import Decomposition, axis_subsets
from .transform import TransportInstance


def _reject_float(text):
    raise InputError(f"decimal literal {text!r} rejected: write 'p/q' instead")


def _reject_constant(text):
    raise InputError(f"non-finite token {text!r} rejected")


def loads_strict(text: str):
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return loads_strict(handle.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _scalar_at(raw, where: str) -> Scalar:
    try:
        return parse_rational(raw)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def tensor_from_obj(obj) -> CostTensor:
    if not isinstance(obj, dict) or set(obj) - {"dims", "data"}:
        raise InputError('tensor object must have exactly the keys "dims" and "data"')
    dims = obj.get("dims")
    data = obj.get("data")
    if not isinstance(dims, list) or not all(isinstance(x, int) and x >= 1 for x in dims):
        raise InputError('"dims" must be a list of positive integers')
    if not isinstance(data, list):
        raise InputError('"data" must be a list')
    values = tuple(_scalar_at(x, f"data[{i}]") for i, x in enumerate(data))
    return CostTensor(tuple(dims), values)


def tensor_to_obj(tensor: CostTensor) -> dict:
    return {
        "dims": list(tensor.dims),
        "data": [_scalar_out(x) for x in tensor.data],
    }


def _scalar_out(x: Scalar):
    if isinstance(x, Fraction) and x.denominator != 1:
        return format_rational(x)
    return int(x)


def decomposition_from_obj(obj) -> Decomposition:
    for key in ("d", "s", "n", "components"):
        if key not in obj:
            raise InputError(f'decomposition object is missing "{key}"')
    d, s, n = obj["d"], obj["s"], obj["n"]
    comps = obj["components"]
    expected = axis_subsets(d, s)
    by_subset = {}
    for i, comp in enumerate(comps):
        Q = tuple(comp.get("Q", ()))
        if Q not in set(expected):
            raise InputError(f"components[{i}]: unknown subset {list(Q)}")
        data = comp.get("data")
        shape = (n,) * s
        values = tuple(
            _scalar_at(x, f"components[{i}].data[{j}]") for j, x in enumerate(data)
        )
        by_subset[Q] = CostTensor(shape, values)
    missing = [Q for Q in expected if Q not in by_subset]
    if missing:
        raise InputError(f"decomposition is missing components for {missing}")
    return Decomposition(
        (n,) * d, s, tuple((Q, by_subset[Q]) for Q in expected)
    )


def decomposition_to_obj(decomposition: Decomposition) -> dict:
    obj = {"d": decomposition.d, "s": decomposition.s}
    if len(set(decomposition.dims)) == 1:
        obj["n"] = decomposition.dims[0]
    else:
        obj["dims"] = list(decomposition.dims)
    obj["components"] = [
        {"Q": list(Q), "data": [_scalar_out(x) for x in comp.data]}
        for Q, comp in decomposition.components
    ]
    return obj


def graph_from_obj(obj) -> WeightedGraph:
    for key in ("n", "edges"):
        if key not in obj:
            raise InputError(f'graph object is missing "{key}"')
    n = obj["n"]
    directed = obj.get("directed", False)
    if not isinstance(n, int) or n < 1:
        raise InputError('"n" must be a positive integer')
    if not isinstance(directed, bool):
        raise InputError('"directed" must be a boolean')
    edges = []
    for i, edge in enumerate(obj["edges"]):
        if not isinstance(edge, list) or len(edge) != 3:
            raise InputError(f"edges[{i}] must be [u, v, weight]")
        u, v, w = edge
        if not isinstance(u, int) or not isinstance(v, int):
            raise InputError(f"edges[{i}]: endpoints must be integers")
        edges.append((u, v, _scalar_at(w, f"edges[{i}].weight")))
    return weighted_graph(n, edges, directed=directed)


def graph_to_obj(G: WeightedGraph) -> dict:
    return {
        "n": G.n,
        "directed": G.directed,
        "edges": [[u, v, _scalar_out(w)] for u, v, w in G.edges],
    }


def transport_from_obj(obj) -> TransportInstance:
    for key in ("dims", "costs", "supplies"):
        if key not in obj:
            raise InputError(f'transport object is missing "{key}"')
    tensor = tensor_from_obj({"dims": obj["dims"], "data": obj["costs"]})
    supplies = obj["supplies"]
    if not isinstance(supplies, list) or not all(isinstance(vec, list) for vec in supplies):
        raise InputError('"supplies" must be a list of integer lists')
    return TransportInstance(tensor, tuple(tuple(vec) for vec in supplies))


def transport_to_obj(instance: TransportInstance) -> dict:
    return {
        "dims": list(instance.costs.dims),
        "costs": [_scalar_out(x) for x in instance.costs.data],
        "supplies": [list(vec) for vec in instance.supplies],
    }


def solutions_to_obj(solutions) -> list:
    return [[list(t) for t in sol.tuples] for sol in solutions]


def solution_from_obj(obj, d: int, s: int, n: int) -> FeasibleSolution:
    if not isinstance(obj, list):
        raise InputError("a solution is a JSON list of index tuples")
    tuples = []
    for i, t in enumerate(obj):
        if not isinstance(t, list) or not all(isinstance(x, int) for x in t):
            raise InputError(f"solution[{i}] must be a list of integers")
        tuples.append(tuple(t))
    return FeasibleSolution.build(d, s, n, tuples)
