"""
Plain-text graph files and JSON process documents.

Graph text: first line `d n`, then one edge per line as d space-separated labels.
Anything after `#` on a line is a comment; blank lines are ignored.
"""

import logging
from typing import Optional, Tuple

from ..errors import FormatError, SatlabError
from ..schemas import PatternModel, ProcessDocument, StepModel, dump_document, load_document
from .models import CopyWitness, DPartiteGraph, Mode, Pattern, ProcessStep, SaturationProcess

logger = logging.getLogger(__name__)


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def read_graph(text: str) -> DPartiteGraph:
    """
    Parse graph text.

    Raises:
        FormatError: on a missing header, non-integer tokens, wrong arity or
            out-of-range labels
    """
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise FormatError("graph text is empty; expected a 'd n' header")
    number, line = header
    try:
        d, n = (int(tok) for tok in line.split())
    except ValueError:
        raise FormatError(f"line {number}: expected header 'd n', got {line!r}")

    edges = []
    for number, line in lines:
        try:
            edge = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise FormatError(f"line {number}: non-integer label in {line!r}")
        if len(edge) != d or any(not 1 <= x <= n for x in edge):
            raise FormatError(f"line {number}: {line!r} is not a tuple of [{n}]^{d}")
        edges.append(edge)
    try:
        return DPartiteGraph.from_edges(d, n, edges)
    except SatlabError as e:
        raise FormatError(str(e)) from e


def write_graph(g: DPartiteGraph, comment: Optional[str] = None) -> str:
    """Graph text with edges in lexicographic order."""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.d} {g.n}")
    lines.extend(" ".join(str(x) for x in e) for e in g.edges())
    return "\n".join(lines) + "\n"


def pattern_to_model(pattern: Pattern) -> PatternModel:
    return PatternModel(n=pattern.n, p=list(pattern.p), mode=pattern.mode.value, d=pattern.d)


def pattern_from_model(model: PatternModel) -> Pattern:
    if model.d is not None and model.d != len(model.p):
        raise FormatError(f"pattern declares d={model.d} but has {len(model.p)} class sizes")
    return Pattern(n=model.n, p=tuple(model.p), mode=Mode(model.mode))


def process_to_document(
    proc: SaturationProcess,
    pattern: Optional[Pattern] = None,
    graph: Optional[DPartiteGraph] = None
) -> str:
    """JSON process document, optionally carrying the pattern and the start graph."""
    doc = ProcessDocument(
        pattern=pattern_to_model(pattern) if pattern is not None else None,
        graph=write_graph(graph) if graph is not None else None,
        steps=[StepModel(**step.to_dict()) for step in proc],
    )
    return dump_document(doc)


def process_from_document(
    text: str
) -> Tuple[SaturationProcess, Optional[Pattern], Optional[DPartiteGraph]]:
    """
    Parse a process document.

    Returns:
        (process, embedded pattern or None, embedded graph or None)
    """
    doc = load_document(text, ProcessDocument)
    steps = []
    for number, s in enumerate(doc.steps, start=1):
        if len(s.classes) != len(s.orientation):
            raise FormatError(f"step {number}: {len(s.classes)} classes but "
                              f"{len(s.orientation)} orientation entries")
        witness = CopyWitness(
            classes=tuple(tuple(sorted(c)) for c in s.classes),
            orientation=tuple(i - 1 for i in s.orientation),
        )
        steps.append(ProcessStep(tuple(s.edge), witness))
    pattern = pattern_from_model(doc.pattern) if doc.pattern is not None else None
    graph = read_graph(doc.graph) if doc.graph is not None else None
    logger.debug(f"Loaded process with {len(steps)} steps")
    return SaturationProcess(tuple(steps)), pattern, graph
