"""
JSON documents exchanged by the command line: saturation processes, set-pair
families and search certificates.

Documents are validated with pydantic on the way in and written with sorted keys
and two-space indentation, so identical runs produce identical bytes.
"""

import json
from typing import List, Literal, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import FormatError

DocumentT = TypeVar("DocumentT", bound=BaseModel)


class PatternModel(BaseModel):
    """Clique shape; p is kept in the given order for directed patterns."""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    p: List[int] = Field(min_length=1)
    mode: Literal["undirected", "directed"] = "undirected"
    d: Optional[int] = None

    @field_validator("p")
    @classmethod
    def _positive_sizes(cls, v: List[int]) -> List[int]:
        if any(x < 1 for x in v):
            raise ValueError("class sizes must be positive")
        return v


class StepModel(BaseModel):
    """One process step; labels and orientation entries are 1-based."""
    model_config = ConfigDict(extra="forbid")

    edge: List[int]
    classes: List[List[int]]
    orientation: List[int]


class ProcessDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pattern: Optional[PatternModel] = None
    graph: Optional[str] = None
    steps: List[StepModel] = Field(default_factory=list)


class PairModel(BaseModel):
    """A set pair; elements are [part, label] with both entries 1-based."""
    model_config = ConfigDict(extra="forbid")

    A: List[Tuple[int, int]]
    B: List[Tuple[int, int]]


class FamiliesDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    parts: List[int]
    caps_a: List[int]
    caps_b: List[int]
    pairs: List[PairModel] = Field(default_factory=list)


class CertificateDocument(BaseModel):
    """
    Outcome of an exhaustive minimum search.

    For a conclusive search minimum == lower_bound == upper_bound and witness is the
    first passing graph in enumeration order (graph text format). An inconclusive
    search leaves minimum and witness empty when nothing passed.
    """
    model_config = ConfigDict(extra="forbid")

    kind: Literal["weak", "strong"]
    directed: bool
    h_free: bool
    pattern: PatternModel
    minimum: Optional[int] = None
    witness: Optional[str] = None
    checked: int = Field(ge=0)
    conclusive: bool
    lower_bound: int = Field(ge=0)
    upper_bound: Optional[int] = Field(default=None, ge=0)


def dump_document(doc: BaseModel) -> str:
    """Deterministic JSON text of a document."""
    return json.dumps(doc.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def load_document(text: str, model: Type[DocumentT]) -> DocumentT:
    """
    Parse and validate a JSON document.

    Raises:
        FormatError: on malformed JSON or schema violations
    """
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise FormatError(f"invalid {model.__name__}: {e.error_count()} problem(s): "
                          f"{e.errors()[0]['msg']}") from e
