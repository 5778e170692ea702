"""Three-valued answers with a trail of the rules that produced them."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable


class Answer(Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"

    @property
    def known(self) -> bool:
        return self is not Answer.UNKNOWN

    @staticmethod
    def of(b: bool) -> Answer:
        return Answer.YES if b else Answer.NO

    @staticmethod
    def all(args: Iterable[Answer]) -> Answer:
        args = list(args)
        if Answer.NO in args:
            return Answer.NO
        if Answer.UNKNOWN in args:
            return Answer.UNKNOWN
        return Answer.YES

    @staticmethod
    def any(args: Iterable[Answer]) -> Answer:
        args = list(args)
        if Answer.YES in args:
            return Answer.YES
        if Answer.UNKNOWN in args:
            return Answer.UNKNOWN
        return Answer.NO

    def __str__(self) -> str:
        return self.value


YES, NO, UNKNOWN = Answer.YES, Answer.NO, Answer.UNKNOWN


@dataclass(frozen=True)
class TrailEntry:
    rule: str
    citation: str
    anchor: str

    def as_dict(self) -> dict:
        return {"rule": self.rule, "citation": self.citation, "anchor": self.anchor}

    def __str__(self) -> str:
        return f"[{self.rule}] {self.citation}: {self.anchor}"


@dataclass
class Verdict:
    """An answer, the rules that fired, and named intermediate results.

    For ``Unknown`` answers ``attempted`` lists the rules that were tried.
    """

    answer: Answer
    trail: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    attempted: list = field(default_factory=list)

    def __post_init__(self):
        if self.answer.known and not self.trail:
            raise ValueError("a Yes/No verdict needs a nonempty trail")

    def __bool__(self):
        raise TypeError("use verdict.answer; a Verdict has three values")

    @property
    def yes(self) -> bool:
        return self.answer is YES

    @property
    def no(self) -> bool:
        return self.answer is NO

    def as_dict(self) -> dict:
        return {
            "answer": self.answer.value,
            "trail": [e.as_dict() for e in self.trail],
            "witnesses": {k: _plain(v) for k, v in self.witnesses.items()},
            "attempted": list(self.attempted),
        }


def _plain(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, Answer):
        return v.value
    if isinstance(v, Verdict):
        return v.as_dict()
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "as_dict"):
        return v.as_dict()
    return str(v)
