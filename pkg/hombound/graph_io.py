"""Graph files (DIMACS .col and JSON), JSON documents and named instances."""
import logging
import re
from pathlib import Path
from typing import Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from hombound.algebra import cyclic_group
from hombound.errors import HomboundError, InputError
from hombound.graph_core import Graph, complete_graph, cycle_graph, kneser_graph, petersen_graph
from hombound.schemas import GraphSchema
from hombound.topology import build_EnG

logger = logging.getLogger(__name__)

Schema = TypeVar("Schema", bound=BaseModel)

FORMATS = ("dimacs-col", "json")


def infer_format(path: Path) -> str:
    return "json" if path.suffix.lower() == ".json" else "dimacs-col"


def _warn(warnings: Optional[list], message: str):
    logger.warning(message)
    if warnings is not None:
        warnings.append(message)


def parse_dimacs(text: str, warnings: Optional[list] = None) -> Graph:
    n = None
    declared_edges = None
    edges = []
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise InputError("second problem line", line_no)
            if len(fields) != 4 or fields[1] not in ("edge", "col"):
                raise InputError(f"malformed problem line {line!r}", line_no)
            try:
                n, declared_edges = int(fields[2]), int(fields[3])
            except ValueError:
                raise InputError(f"malformed problem line {line!r}", line_no)
            if n < 0:
                raise InputError("negative vertex count", line_no)
        elif fields[0] == "e":
            if n is None:
                raise InputError("edge line before the problem line", line_no)
            if len(fields) != 3:
                raise InputError(f"malformed edge line {line!r}", line_no)
            try:
                u, v = int(fields[1]) - 1, int(fields[2]) - 1  # 1-based on disk
            except ValueError:
                raise InputError(f"malformed edge line {line!r}", line_no)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge endpoint outside 1..{n}", line_no)
            key = (min(u, v), max(u, v))
            if key in seen:
                _warn(warnings, f"line {line_no}: duplicate edge {u + 1} {v + 1} ignored")
                continue
            if u == v:
                _warn(warnings, f"line {line_no}: self-loop at vertex {u + 1}")
            seen.add(key)
            edges.append(key)
        else:
            raise InputError(f"unknown line type {fields[0]!r}", line_no)
    if n is None:
        raise InputError("missing problem line")
    if declared_edges is not None and declared_edges != len(edges):
        _warn(warnings, f"problem line declares {declared_edges} edges, found {len(edges)} distinct")
    return Graph.from_edges(n, edges)


def parse_json_graph(text: str, warnings: Optional[list] = None) -> Graph:
    try:
        doc = GraphSchema.model_validate_json(text)
    except ValidationError as exc:
        raise InputError(f"invalid graph JSON: {exc.errors()[0]['msg']}")
    seen = set()
    for u, v in doc.edges:
        if not (0 <= u < doc.n and 0 <= v < doc.n):
            raise InputError(f"edge [{u}, {v}] has an endpoint outside 0..{doc.n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            _warn(warnings, f"duplicate edge [{u}, {v}] ignored")
        if u == v:
            _warn(warnings, f"self-loop at vertex {u}")
        seen.add(key)
    try:
        return doc.to_domain()
    except HomboundError as exc:
        raise InputError(exc.detail)


def parse_graph(path, fmt: Optional[str] = None, warnings: Optional[list] = None) -> Graph:
    path = Path(path)
    fmt = fmt or infer_format(path)
    if fmt not in FORMATS:
        raise InputError(f"unknown graph format {fmt!r}")
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    if fmt == "json":
        return parse_json_graph(text, warnings)
    return parse_dimacs(text, warnings)


def dumps_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.vertex_count} {g.edge_count}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def dumps_json(g: Graph) -> str:
    return GraphSchema.from_domain(g).model_dump_json(exclude_none=True)


def load_document(path, schema: Type[Schema]) -> Schema:
    path = Path(path)
    try:
        return schema.model_validate_json(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except ValidationError as exc:
        raise InputError(f"{path}: {exc.errors()[0]['msg']} at {exc.errors()[0]['loc']}")


_NAMED = [
    (re.compile(r"^K(\d+)$"), lambda m: complete_graph(int(m[1]))),
    (re.compile(r"^C(\d+)$"), lambda m: cycle_graph(int(m[1]))),
    (re.compile(r"^petersen$", re.IGNORECASE), lambda m: petersen_graph()),
    (re.compile(r"^kneser:(\d+):(\d+)$"), lambda m: kneser_graph(int(m[1]), int(m[2]))),
]

ENG_PATTERN = re.compile(r"^eng:(\d+):(\d+)$")


def named_graph(name: str) -> Optional[Graph]:
    for pattern, build in _NAMED:
        match = pattern.match(name)
        if match:
            return build(match)
    return None


def resolve_graph(spec: str, fmt: Optional[str] = None, warnings: Optional[list] = None) -> Graph:
    graph = named_graph(spec)
    if graph is not None:
        return graph
    return parse_graph(spec, fmt, warnings)


def named_eng(spec: str):
    match = ENG_PATTERN.match(spec)
    if not match:
        return None
    return build_EnG(cyclic_group(int(match[1])), int(match[2]))
