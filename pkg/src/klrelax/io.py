"""Reading matroids from JSON files and constructor strings."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputFormatError, KLRelaxError
from .matroid import (
    Matroid,
    SparsePavingSpec,
    construct_boolean,
    construct_graphic,
    construct_minimal_relaxed,
    construct_uniform,
    construct_wheel,
    construct_whirl,
    make_matroid,
    make_sparse_paving_spec,
    members,
    sparse_paving_from_spec,
)


def _ints(text: str, count: int | None, what: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",")] if text else []
    except ValueError:
        raise InputFormatError(f"{what}: expected integers, got {text!r}") from None
    if count is not None and len(values) != count:
        raise InputFormatError(f"{what}: expected {count} integer(s), got {text!r}")
    return values


def _graph(body: str) -> Matroid:
    head, _, tail = body.partition(";")
    (v,) = _ints(head, 1, "graph vertex count")
    edges = []
    for part in filter(None, tail.split(",")):
        a, sep, b = part.partition("-")
        if not sep:
            raise InputFormatError(f"graph edge {part!r} is not of the form a-b")
        try:
            edges.append((int(a), int(b)))
        except ValueError:
            raise InputFormatError(f"graph edge {part!r} is not of the form a-b") from None
    return construct_graphic(v, edges)


CONSTRUCTORS = {
    "uniform": lambda body: construct_uniform(*_ints(body, 2, "uniform:k,n")),
    "boolean": lambda body: construct_boolean(*_ints(body, 1, "boolean:n")),
    "wheel": lambda body: construct_wheel(*_ints(body, 1, "wheel:k")),
    "whirl": lambda body: construct_whirl(*_ints(body, 1, "whirl:k")),
    "minimal": lambda body: construct_minimal_relaxed(*_ints(body, 2, "minimal:k,n")),
    "graph": _graph,
}


def parse_constructor(text: str) -> Matroid:
    """Build a matroid from ``uniform:k,n``, ``boolean:n``, ``wheel:k``,
    ``whirl:k``, ``minimal:k,n`` or ``graph:v;a-b,c-d,...``."""
    name, sep, body = text.strip().partition(":")
    if not sep or name not in CONSTRUCTORS:
        raise InputFormatError(f"unknown constructor {text!r}; expected one of {', '.join(CONSTRUCTORS)}")
    M = CONSTRUCTORS[name](body)
    return Matroid(M.n, M.bases, text.strip())


def matroid_from_dict(data: dict) -> Matroid | SparsePavingSpec:
    """Decode either ``{"n", "bases", "label"?}`` or ``{"n", "k", "circuit_hyperplanes"}``."""
    if not isinstance(data, dict) or "n" not in data:
        raise InputFormatError("matroid JSON must be an object with an 'n' field")
    n = data["n"]
    if not isinstance(n, int):
        raise InputFormatError("'n' must be an integer")
    if "bases" in data:
        bases = data["bases"]
        if not isinstance(bases, list) or not all(isinstance(b, list) for b in bases):
            raise InputFormatError("'bases' must be a list of integer lists")
        return make_matroid(n, bases, data.get("label"))
    if "circuit_hyperplanes" in data:
        if "k" not in data:
            raise InputFormatError("a circuit_hyperplanes description also needs 'k'")
        return make_sparse_paving_spec(n, data["k"], data["circuit_hyperplanes"])
    raise InputFormatError("matroid JSON needs 'bases' or 'circuit_hyperplanes'")


def load_matroid(path, *, expand: bool = True) -> Matroid | SparsePavingSpec:
    """Read a matroid file.  A sparse paving description is expanded to its
    bases unless ``expand`` is False."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: malformed JSON ({exc})") from None
    except OSError as exc:
        raise InputFormatError(f"{path}: {exc.strerror}") from None
    M = matroid_from_dict(data)
    if expand and isinstance(M, SparsePavingSpec):
        return sparse_paving_from_spec(M)
    return M


def matroid_to_dict(M: Matroid) -> dict:
    out = {"n": M.n, "bases": [members(B) for B in M.bases]}
    if M.label:
        out["label"] = M.label
    return out


def spec_to_dict(spec: SparsePavingSpec) -> dict:
    return {"n": spec.n, "k": spec.k, "circuit_hyperplanes": [members(H) for H in spec.circuit_hyperplanes]}


__all__ = [
    "CONSTRUCTORS",
    "InputFormatError",
    "KLRelaxError",
    "load_matroid",
    "matroid_from_dict",
    "matroid_to_dict",
    "parse_constructor",
    "spec_to_dict",
]
