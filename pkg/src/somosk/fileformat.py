"""Reading and writing sequence files (TSV or JSON)."""

from __future__ import annotations

import json

from .exact_field import format_scalar
from .sequence import INF, SomosRelation, TwoSidedSequence, to_scalar


def format_value(v) -> str:
    return "inf" if v is INF else format_scalar(v)


def dump_tsv(seq: TwoSidedSequence, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines.extend(f"{h}\t{format_value(v)}" for h, v in seq.items())
    return "\n".join(lines) + "\n"


def dump_json(seq: TwoSidedSequence, relation: SomosRelation | None = None) -> str:
    obj = {
        "terms": [{"h": h, "v": format_value(v)} for h, v in seq.items()],
        "relation": relation.to_json() if relation is not None else None,
    }
    return json.dumps(obj, indent=2) + "\n"


def dumps(seq: TwoSidedSequence, fmt: str = "tsv", relation=None) -> str:
    if fmt == "json":
        return dump_json(seq, relation)
    header = f"relation {relation}" if relation is not None else None
    return dump_tsv(seq, header)


def loads(text: str) -> tuple[TwoSidedSequence, SomosRelation | None]:
    """Parse either format; returns the frozen sequence and any stored relation."""
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        terms = {int(t["h"]): to_scalar(str(t["v"])) for t in obj["terms"]}
        rel = obj.get("relation")
        return TwoSidedSequence(terms), SomosRelation.from_json(rel) if rel else None
    terms = {}
    relation = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("relation "):
                relation = SomosRelation.parse(body.split(None, 1)[1])
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'h<TAB>value', got {raw!r}")
        h = int(parts[0])
        if h in terms:
            raise ValueError(f"line {lineno}: duplicate index {h}")
        terms[h] = to_scalar(parts[1])
    return TwoSidedSequence(terms), relation


def load(path) -> tuple[TwoSidedSequence, SomosRelation | None]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
