from __future__ import annotations

import json
from dataclasses import dataclass

from .permcore import Permutation, format_cycles, parse_cycles

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Certificate:
    """A semiregular element together with the proof branches that found it."""

    element: Permutation
    order: int
    cycle_length: int
    branch_trace: tuple[str, ...]
    verified: bool = False

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_VERSION,
            "degree": self.element.degree,
            "element": format_cycles(self.element),
            "order": self.order,
            "cycle_length": self.cycle_length,
            "branch_trace": list(self.branch_trace),
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        if data.get("format", FORMAT_VERSION) != FORMAT_VERSION:
            raise ValueError(f"unsupported certificate format {data.get('format')}")
        elem = parse_cycles(data["element"], int(data["degree"]))
        return cls(elem, int(data["order"]), int(data["cycle_length"]),
                   tuple(data.get("branch_trace", ())), bool(data.get("verified", False)))

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))
