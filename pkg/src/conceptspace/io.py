"""Canonical ``.csd`` documents, DOT export and the bundled corpus.

A document is a restricted JSON text: objects, arrays, strings, integers
and booleans only.  Writing is canonical (fixed key order, sorted
vertices/edges/content, two-space indent, trailing newline), so
``write_document(parse_document(t)) == t`` for every canonical ``t``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from .artifact import DEFAULT_HEADERS, Artifact, make_artifact
from .errors import ConceptSpaceError, DocumentSyntaxError, SchemaError, UnknownCorpusEntry
from .space import ConceptualSpace, ConstraintVertex, axioms, build_space, empty_space
from .transform import (
    LENIENT,
    STRICT,
    AddEdge,
    AddVertex,
    ModifyVertex,
    RemoveEdge,
    RemoveVertex,
    Transformation,
    TransformationScript,
)

FORMAT_VERSION = 1
CORPUS_NAMES = (
    "geocentric",
    "heliocentric",
    "newtonian",
    "relativistic",
    "euclidean",
    "noneuclidean",
)


@dataclass(frozen=True)
class SpaceDocument:
    space: ConceptualSpace
    artifacts: tuple[Artifact, ...] = ()
    scripts: dict[str, TransformationScript] = field(default_factory=dict)
    headers: frozenset[str] = DEFAULT_HEADERS
    meta: tuple[tuple[str, str], ...] = ()
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        ordered = tuple(sorted(self.artifacts, key=_artifact_key))
        object.__setattr__(self, "artifacts", ordered)


def _artifact_key(a: Artifact):
    return a.header, sorted(a.support), a.witness


# --- parsing -----------------------------------------------------------------

def _reject_float(text):
    raise ValueError(f"floating-point number {text} is not allowed")


def _reject_constant(text):
    raise ValueError(f"{text} is not allowed")


def _unique_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _loads(text: str) -> Any:
    try:
        return json.loads(
            text,
            object_pairs_hook=_unique_keys,
            parse_float=_reject_float,
            parse_constant=_reject_constant,
        )
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.lineno, exc.colno, exc.msg) from None
    except ValueError as exc:
        raise DocumentSyntaxError(0, 0, str(exc)) from None


class _Reader:
    """Schema checks with JSON-path style locations for error messages."""

    def obj(self, value, path, required=(), optional=()):
        if not isinstance(value, dict):
            raise SchemaError(path, "expected an object")
        for key in required:
            if key not in value:
                raise SchemaError(path, f"missing key {key!r}")
        extra = set(value) - set(required) - set(optional)
        if extra:
            raise SchemaError(path, f"unexpected keys {sorted(extra)}")
        return value

    def arr(self, value, path):
        if not isinstance(value, list):
            raise SchemaError(path, "expected an array")
        return value

    def str(self, value, path):
        if not isinstance(value, str):
            raise SchemaError(path, "expected a string")
        return value

    def strset(self, value, path):
        items = [self.str(x, f"{path}[{i}]") for i, x in enumerate(self.arr(value, path))]
        if len(set(items)) != len(items):
            raise SchemaError(path, "duplicate strings in a set")
        return frozenset(items)

    def strmap(self, value, path):
        if not isinstance(value, dict):
            raise SchemaError(path, "expected an object")
        return {k: self.str(v, f"{path}.{k}") for k, v in value.items()}

    def pair(self, value, path):
        pair = self.arr(value, path)
        if len(pair) != 2:
            raise SchemaError(path, "expected [from, to]")
        return self.str(pair[0], f"{path}[0]"), self.str(pair[1], f"{path}[1]")


_R = _Reader()


def _located(path, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except ConceptSpaceError as exc:
        if exc.location is None:
            exc.location = path
        raise


def _parse_vertex(value, path) -> ConstraintVertex:
    _R.obj(value, path, required=("id", "label"), optional=("content", "meta"))
    content = None
    if "content" in value:
        content = _R.strset(value["content"], f"{path}.content")
    return _located(
        path,
        ConstraintVertex,
        id=_R.str(value["id"], f"{path}.id"),
        label=_R.str(value["label"], f"{path}.label"),
        content=content,
        meta=_R.strmap(value.get("meta", {}), f"{path}.meta"),
    )


def _parse_step(value, path) -> Transformation:
    if not isinstance(value, dict) or "op" not in value:
        raise SchemaError(path, "expected an object with key 'op'")
    op = value["op"]
    if op == "add_vertex":
        _R.obj(value, path, required=("op", "vertex"))
        return AddVertex(_parse_vertex(value["vertex"], f"{path}.vertex"))
    if op == "remove_vertex":
        _R.obj(value, path, required=("op", "id"))
        return RemoveVertex(_R.str(value["id"], f"{path}.id"))
    if op == "modify_vertex":
        _R.obj(value, path, required=("op", "id", "label"), optional=("content",))
        content = None
        if "content" in value:
            content = _R.strset(value["content"], f"{path}.content")
        return ModifyVertex(
            _R.str(value["id"], f"{path}.id"), _R.str(value["label"], f"{path}.label"), content
        )
    if op in ("add_edge", "remove_edge"):
        _R.obj(value, path, required=("op", "edge"))
        u, v = _R.pair(value["edge"], f"{path}.edge")
        return AddEdge(u, v) if op == "add_edge" else RemoveEdge(u, v)
    raise SchemaError(f"{path}.op", f"unknown operation {op!r}")


def _parse_script(value, path) -> TransformationScript:
    _R.obj(value, path, required=("mode", "steps"))
    mode = value["mode"]
    if mode not in (STRICT, LENIENT):
        raise SchemaError(f"{path}.mode", f"expected 'strict' or 'lenient', got {mode!r}")
    steps = _R.arr(value["steps"], f"{path}.steps")
    return TransformationScript(
        tuple(_parse_step(s, f"{path}.steps[{i}]") for i, s in enumerate(steps)), mode
    )


def parse_script(text: str) -> TransformationScript:
    """Parse a standalone script file (``{"version": 1, "mode": ..., "steps": [...]}``)."""
    data = _loads(text)
    _R.obj(data, "", required=("version", "mode", "steps"))
    _check_version(data["version"])
    return _parse_script({"mode": data["mode"], "steps": data["steps"]}, "")


def _check_version(version):
    if version != FORMAT_VERSION or isinstance(version, bool):
        raise SchemaError("version", f"unsupported format version {version!r}")


def parse_document(text: str) -> SpaceDocument:
    """Parse and fully validate a document."""
    data = _loads(text)
    _R.obj(
        data,
        "",
        required=("version", "vertices", "edges"),
        optional=("name", "meta", "headers", "artifacts", "scripts"),
    )
    _check_version(data["version"])
    name = _R.str(data.get("name", ""), "name")
    meta = _R.strmap(data.get("meta", {}), "meta")
    headers = (
        _R.strset(data["headers"], "headers") if "headers" in data else DEFAULT_HEADERS
    )

    vertices = [
        _parse_vertex(v, f"vertices[{i}]")
        for i, v in enumerate(_R.arr(data["vertices"], "vertices"))
    ]
    known = {v.id for v in vertices}
    edges = []
    for i, e in enumerate(_R.arr(data["edges"], "edges")):
        u, v = _R.pair(e, f"edges[{i}]")
        for end in (u, v):
            if end not in known:
                raise SchemaError(f"edges[{i}]", f"unknown vertex id {end!r}")
        edges.append((u, v))
    space = build_space(name, vertices, edges)

    artifacts = []
    for i, a in enumerate(_R.arr(data.get("artifacts", []), "artifacts")):
        path = f"artifacts[{i}]"
        _R.obj(a, path, required=("header", "support", "witness"))
        artifacts.append(
            _located(
                path,
                make_artifact,
                space,
                _R.str(a["header"], f"{path}.header"),
                _R.strset(a["support"], f"{path}.support"),
                _R.str(a["witness"], f"{path}.witness"),
                headers,
            )
        )

    scripts = {}
    raw_scripts = data.get("scripts", {})
    if not isinstance(raw_scripts, dict):
        raise SchemaError("scripts", "expected an object")
    for key in sorted(raw_scripts):
        scripts[key] = _parse_script(raw_scripts[key], f"scripts.{key}")

    return SpaceDocument(
        space=space,
        artifacts=tuple(artifacts),
        scripts=scripts,
        headers=headers,
        meta=tuple(sorted(meta.items())),
    )


# --- writing -----------------------------------------------------------------

def _vertex_json(v: ConstraintVertex) -> dict:
    out: dict[str, Any] = {"id": v.id, "label": v.label}
    if v.content is not None:
        out["content"] = sorted(v.content)
    if v.meta:
        out["meta"] = dict(v.meta)
    return out


def step_json(step: Transformation) -> dict:
    if isinstance(step, AddVertex):
        return {"op": "add_vertex", "vertex": _vertex_json(step.vertex)}
    if isinstance(step, RemoveVertex):
        return {"op": "remove_vertex", "id": step.id}
    if isinstance(step, ModifyVertex):
        out: dict[str, Any] = {"op": "modify_vertex", "id": step.id, "label": step.label}
        if step.content is not None:
            out["content"] = sorted(step.content)
        return out
    if isinstance(step, AddEdge):
        return {"op": "add_edge", "edge": [step.source, step.target]}
    if isinstance(step, RemoveEdge):
        return {"op": "remove_edge", "edge": [step.source, step.target]}
    raise TypeError(f"not a transformation: {step!r}")


def script_json(script: TransformationScript) -> dict:
    return {"mode": script.mode, "steps": [step_json(s) for s in script.steps]}


def artifact_json(a: Artifact) -> dict:
    return {"header": a.header, "support": sorted(a.support), "witness": a.witness}


def _emit(value: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_emit(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, list):
        if all(not isinstance(x, (dict, list)) for x in value):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in value) + "]"
        items = [pad + _emit(x, indent + 1) for x in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(value, ensure_ascii=False)


def dumps(data: Any) -> str:
    """Canonical text for already-ordered JSON data.

    Two-space indentation; arrays holding only scalars stay on one line.
    """
    return _emit(data, 0) + "\n"


def document_json(doc: SpaceDocument) -> dict:
    out: dict[str, Any] = {"version": doc.format_version, "name": doc.space.name}
    if doc.meta:
        out["meta"] = dict(doc.meta)
    if doc.headers != DEFAULT_HEADERS:
        out["headers"] = sorted(doc.headers)
    out["vertices"] = [_vertex_json(v) for v in doc.space.vertices]
    out["edges"] = [list(e) for e in doc.space.edges]
    if doc.artifacts:
        out["artifacts"] = [artifact_json(a) for a in doc.artifacts]
    if doc.scripts:
        out["scripts"] = {k: script_json(doc.scripts[k]) for k in sorted(doc.scripts)}
    return out


def write_document(doc: SpaceDocument) -> str:
    return dumps(document_json(doc))


def write_script(script: TransformationScript) -> str:
    return dumps({"version": FORMAT_VERSION, **script_json(script)})


def write_space(space: ConceptualSpace) -> str:
    return write_document(SpaceDocument(space))


def empty_document(name: str = "") -> SpaceDocument:
    return SpaceDocument(empty_space(name))


# --- DOT ---------------------------------------------------------------------

def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def export_dot(space: ConceptualSpace) -> str:
    """Graphviz text; axioms are drawn as bold double-bordered boxes."""
    sinks = axioms(space)
    lines = [f"digraph {_dot_quote(space.name or 'space')} {{", "  rankdir=TB;"]
    for v in space.vertices:
        if v.id in sinks:
            attrs = f'label={_dot_quote(v.label)}, shape="box", style="bold,rounded"'
        else:
            attrs = f'label={_dot_quote(v.label)}, shape="box", style="rounded"'
        lines.append(f"  {_dot_quote(v.id)} [{attrs}];")
    for u, v in space.edges:
        lines.append(f"  {_dot_quote(u)} -> {_dot_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- corpus ------------------------------------------------------------------

def corpus_text(name: str) -> str:
    if name not in CORPUS_NAMES:
        raise UnknownCorpusEntry(f"unknown corpus entry {name!r}; known: {', '.join(CORPUS_NAMES)}")
    return resources.files("conceptspace.corpus").joinpath(f"{name}.csd").read_text("utf-8")


def load_corpus(name: str) -> SpaceDocument:
    return parse_document(corpus_text(name))
