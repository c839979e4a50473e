"""Pydantic models for everything that crosses the process boundary.

`GraphFile` is the on-disk principal graph format:

    {"vertices": [{"id": "*", "parity": "even"}, ...],
     "edges": [{"id": "e1", "ends": ["*", "v1"]}, ...],
     "star": "*"}

Unknown fields are accepted and surfaced through `unknown_fields()` so the
loader can warn about them instead of rejecting the file.
"""
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class VertexModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    id: str
    parity: Literal["even", "odd"]


class EdgeModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    id: str
    ends: Tuple[str, str]


class GraphFile(BaseModel):
    model_config = ConfigDict(extra="allow")

    vertices: List[VertexModel]
    edges: List[EdgeModel] = Field(default_factory=list)
    star: str

    def unknown_fields(self) -> List[str]:
        """Dotted paths of every field the schema does not know."""
        found = [name for name in (self.model_extra or {})]
        for i, v in enumerate(self.vertices):
            found += [f"vertices[{i}].{name}" for name in (v.model_extra or {})]
        for i, e in enumerate(self.edges):
            found += [f"edges[{i}].{name}" for name in (e.model_extra or {})]
        return found


class RunRecord(BaseModel):
    command: str
    config: Dict[str, Any]
    tool_version: str
    outputs: Dict[str, Any] = Field(default_factory=dict)
    wall_time_s: Optional[float] = None


class OutputDocument(BaseModel):
    """Shape of every `--format json` document."""

    run: RunRecord
    rows: List[Dict[str, Any]]
    graph: Optional[GraphFile] = None
