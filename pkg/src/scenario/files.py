"""Reading and writing schema documents with located diagnostics."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Sequence, TypeVar, Union

from pydantic import BaseModel, ValidationError

from src.errors import ScenarioError
from src.logging import get_logger

logger = get_logger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)
PathLike = Union[str, Path]


def field_path(loc: Sequence[Union[str, int]]) -> str:
    """('links', 2, 'cost') -> 'links[2].cost'."""
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out


def locate(text: str, loc: Sequence[Union[str, int]]) -> Optional[int]:
    """
    Best-effort line number of the JSON key named by ``loc``.

    Keys are searched in order; a list index n means the next key is the
    (n+1)-th occurrence after the list's own key.
    """
    pos, repeat, found = 0, 1, None
    for part in loc:
        if isinstance(part, int):
            repeat = part + 1
            continue
        hit = pos
        for _ in range(repeat):
            hit = text.find(f'"{part}"', hit)
            if hit < 0:
                break
            hit += 1
        repeat = 1
        if hit < 0:
            continue
        pos = hit
        found = text.count("\n", 0, hit) + 1
    return found


def parse_model(text: str, model: type[ModelT], path: PathLike = "<string>") -> ModelT:
    """
    Parse JSON text into ``model``.

    Raises:
        ScenarioError: On malformed JSON or a schema violation, naming the
            first offending field and its approximate line.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(e.msg, path=str(path), line=e.lineno) from e
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = first.get("loc", ())
        raise ScenarioError(
            first.get("msg", "invalid value"),
            path=str(path),
            field=field_path(loc) or None,
            line=locate(text, loc),
        ) from e


def read_model(path: PathLike, model: type[ModelT]) -> ModelT:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"Cannot read file: {e.strerror}", path=str(path)) from e
    logger.debug("Read %s bytes from %s", len(text), path)
    return parse_model(text, model, path)


def dump_model(document: BaseModel) -> str:
    """Canonical text: aliases, no nulls, two-space indent, trailing newline."""
    data = document.model_dump(mode="json", by_alias=True, exclude_none=True)
    return json.dumps(data, indent=2) + "\n"


def write_model(document: BaseModel, path: PathLike) -> None:
    Path(path).write_text(dump_model(document), encoding="utf-8")
    logger.info("Wrote %s", path)
