"""
Output formatting for the command line.
Plain text for people, JSON (sorted keys, two-space indent) for machines.
"""

import json
from typing import Optional, Tuple

from ..families import ConditionVerdict
from ..formulas import CountResult
from ..hypergraph import ProcessVerdict
from ..search import SearchCertificate, certificate_to_document

TEXT = "text"
JSON = "json"


def _json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


class OutputTemplates:
    """
    Formatters for every result kind the command line prints.

    Each takes the output format and returns the full text to write, trailing
    newline included.
    """

    @staticmethod
    def format_count(name: str, result: CountResult, fmt: str = TEXT) -> str:
        """
        Format a single count.

        Args:
            name: Formula name echoed in JSON output
            result: The count
            fmt: "text" prints the bare value, "json" adds name and method

        Returns:
            Formatted output
        """
        if fmt == JSON:
            return _json({"name": name, **result.to_dict()})
        return f"{result.value}\n"

    @staticmethod
    def format_bounds(bounds: Tuple[int, int], fmt: str = TEXT) -> str:
        lower, upper = bounds
        if fmt == JSON:
            return _json({"name": "bounds", "lower": lower, "upper": upper})
        return f"{lower} {upper}\n"

    @staticmethod
    def format_flag(name: str, value: bool, fmt: str = TEXT) -> str:
        if fmt == JSON:
            return _json({"name": name, "value": value})
        return "true\n" if value else "false\n"

    @staticmethod
    def format_process_verdict(verdict: ProcessVerdict, fmt: str = TEXT) -> str:
        if fmt == JSON:
            return _json(verdict.to_dict())
        if verdict.accepted:
            return f"accepted: {verdict.message}\n"
        where = f"step {verdict.step}" if verdict.step is not None else "end of process"
        return f"rejected at {where}: {verdict.reason.value}: {verdict.message}\n"

    @staticmethod
    def format_condition_verdict(verdict: ConditionVerdict, fmt: str = TEXT) -> str:
        if fmt == JSON:
            return _json(verdict.to_dict())
        if verdict.passed:
            return f"passed: {verdict.message}\n"
        where = f"pair {verdict.i}"
        if verdict.j is not None:
            where += f", index {verdict.j}"
        return f"condition {verdict.condition} fails at {where}: {verdict.message}\n"

    @staticmethod
    def format_closure(
        added: int, missing: int, complete: bool, fmt: str = TEXT
    ) -> str:
        if fmt == JSON:
            return _json({"added": added, "missing": missing, "complete": complete})
        if complete:
            return f"complete: {added} edges added\n"
        return f"incomplete: {added} edges added, {missing} still missing\n"

    @staticmethod
    def format_certificate(cert: SearchCertificate, fmt: str = TEXT) -> str:
        """Certificate as a JSON document, or a one-line summary plus the witness graph."""
        if fmt == JSON:
            return certificate_to_document(cert)
        label = f"{cert.kind.value}{' directed' if cert.directed else ''}"
        if cert.h_free:
            label += " h-free"
        if cert.conclusive and cert.minimum is not None:
            lines = [f"minimum {label} saturation: {cert.minimum} "
                     f"(checked {cert.checked} candidates)"]
            if cert.witness is not None:
                lines.extend(" ".join(str(x) for x in e) for e in cert.witness.edges())
            return "\n".join(lines) + "\n"
        upper: Optional[int] = cert.upper_bound
        return (f"inconclusive {label} search after {cert.checked} candidates: "
                f"{cert.lower_bound} <= minimum <= {upper if upper is not None else '?'}\n")
