"""Partial-credit grading for proof puzzles.

A proof puzzle is a pool of text items (correct proof lines plus distractors)
that students drag into an ordered attempt.  Two grading algorithms are
provided:

* ``legacy``: points minus the weighted insert/remove edit distance between
  the attempt and the best matching solution.
* ``sequence``: walk solution and attempt in lockstep, award the weight of
  every item that continues a correct run, and re-synchronise only at
  solution positions flagged as entry points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .errors import ConfigError, ValidationError
from .rational import format_rational, to_rational


class Algorithm(str, Enum):
    LEGACY = "legacy"
    SEQUENCE = "sequence"


@dataclass(frozen=True)
class PuzzleItem:
    text: str
    weight: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.text, str) or not self.text:
            raise ValidationError("puzzle item text must be a non-empty string")
        object.__setattr__(self, "weight", to_rational(self.weight))
        if self.weight < 0:
            raise ValidationError(f"negative weight {self.weight} for item {self.text!r}")


@dataclass(frozen=True)
class PuzzleSolution:
    items: tuple[PuzzleItem, ...]
    points: Fraction
    entry_flags: tuple[bool, ...] = ()

    def __post_init__(self):
        items = tuple(self.items)
        if not items:
            raise ValidationError("a solution needs at least one item")
        flags = tuple(self.entry_flags) or (True,) + (False,) * (len(items) - 1)
        if len(flags) != len(items):
            raise ValidationError("entry_flags must have one flag per solution item")
        # the first position is always a place to start
        flags = (True,) + flags[1:]
        points = to_rational(self.points)
        total = sum((it.weight for it in items), Fraction(0))
        if total > points:
            raise ConfigError(
                f"solution item weights sum to {format_rational(total)} "
                f"but the solution is worth only {format_rational(points)}"
            )
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "entry_flags", flags)
        object.__setattr__(self, "points", points)

    @property
    def texts(self) -> tuple[str, ...]:
        return tuple(it.text for it in self.items)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(i for i, flag in enumerate(self.entry_flags) if flag)

    def total_weight(self) -> Fraction:
        return sum((it.weight for it in self.items), Fraction(0))


@dataclass(frozen=True)
class PuzzleTask:
    pool: tuple[PuzzleItem, ...]
    solutions: tuple[PuzzleSolution, ...]
    _by_text: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pool = tuple(self.pool)
        solutions = tuple(self.solutions)
        by_text: dict[str, PuzzleItem] = {}
        for item in pool:
            if item.text in by_text:
                raise ConfigError(f"duplicate pool item text: {item.text!r}")
            by_text[item.text] = item
        if not solutions:
            raise ConfigError("a puzzle task needs at least one solution")
        for k, sol in enumerate(solutions):
            for item in sol.items:
                known = by_text.get(item.text)
                if known is None:
                    raise ConfigError(f"solution {k} uses item not in pool: {item.text!r}")
                if known.weight != item.weight:
                    raise ConfigError(f"solution {k} changes the weight of {item.text!r}")
            if len(set(sol.texts)) != len(sol.texts):
                raise ConfigError(f"solution {k} uses an item twice")
        object.__setattr__(self, "pool", pool)
        object.__setattr__(self, "solutions", solutions)
        object.__setattr__(self, "_by_text", by_text)

    def item(self, text: str) -> PuzzleItem:
        try:
            return self._by_text[text]
        except KeyError:
            raise ValidationError(f"unknown puzzle item: {text!r}") from None

    def max_points(self) -> Fraction:
        return max(sol.points for sol in self.solutions)

    @classmethod
    def build(
        cls,
        pool: Iterable[tuple[str, Any]],
        solutions: Iterable[Mapping[str, Any]],
    ) -> "PuzzleTask":
        """Convenience constructor from ``(text, weight)`` pairs and solution
        dicts of the same shape as the JSON form."""
        items = tuple(PuzzleItem(t, w) for t, w in pool)
        lookup = {it.text: it for it in items}
        sols = []
        for raw in solutions:
            texts = list(raw["items"])
            missing = [t for t in texts if t not in lookup]
            if missing:
                raise ConfigError(f"solution uses item not in pool: {missing[0]!r}")
            entries = set(raw.get("entries", [0]))
            for e in entries:
                if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < len(texts):
                    raise ConfigError(f"entry index {e!r} out of range")
            sols.append(
                PuzzleSolution(
                    items=tuple(lookup[t] for t in texts),
                    points=raw["points"],
                    entry_flags=tuple(i in entries for i in range(len(texts))),
                )
            )
        return cls(pool=items, solutions=tuple(sols))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PuzzleTask":
        try:
            pool = [(raw["text"], raw.get("weight", 0)) for raw in data["pool"]]
            solutions = list(data["solutions"])
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed puzzle task: {exc}") from None
        return cls.build(pool, solutions)

    def to_dict(self) -> dict:
        return {
            "pool": [{"text": it.text, "weight": format_rational(it.weight)} for it in self.pool],
            "solutions": [
                {
                    "items": list(sol.texts),
                    "points": format_rational(sol.points),
                    "entries": list(sol.entries),
                }
                for sol in self.solutions
            ],
        }


@dataclass(frozen=True)
class PuzzleAttempt:
    sequence: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))

    def validate(self, task: PuzzleTask) -> tuple[PuzzleItem, ...]:
        seen = set()
        items = []
        for text in self.sequence:
            if text in seen:
                raise ValidationError(f"puzzle item used twice: {text!r}")
            seen.add(text)
            items.append(task.item(text))
        return tuple(items)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PuzzleAttempt":
        seq = data.get("sequence") if isinstance(data, Mapping) else None
        if not isinstance(seq, list) or not all(isinstance(t, str) for t in seq):
            raise ValidationError("attempt must be an object with a 'sequence' list of strings")
        return cls(tuple(seq))


@dataclass(frozen=True)
class GradeResult:
    points: Fraction
    algorithm: Algorithm
    per_solution: tuple[tuple[int, Fraction], ...]

    def to_dict(self) -> dict:
        return {
            "points": format_rational(self.points),
            "algorithm": self.algorithm.value,
            "per_solution": [
                {"solution": idx, "points": format_rational(pts)} for idx, pts in self.per_solution
            ],
        }


def weighted_edit_distance(s: Sequence[PuzzleItem], a: Sequence[PuzzleItem]) -> Fraction:
    """Cheapest sequence of item insertions and removals turning ``a`` into ``s``.

    Inserting or removing an item costs its weight; there is no substitution
    or swap.  Items are compared by text.
    """
    n, m = len(s), len(a)
    # dist[i][j]: cost of turning a[:j] into s[:i]
    dist = [[Fraction(0)] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = dist[i - 1][0] + s[i - 1].weight
    for j in range(1, m + 1):
        dist[0][j] = dist[0][j - 1] + a[j - 1].weight
    for i in range(1, n + 1):
        si = s[i - 1]
        row, prev = dist[i], dist[i - 1]
        for j in range(1, m + 1):
            aj = a[j - 1]
            best = min(prev[j] + si.weight, row[j - 1] + aj.weight)
            if si.text == aj.text:
                best = min(best, prev[j - 1])
            row[j] = best
    return dist[n][m]


def grade_legacy(task: PuzzleTask, attempt: PuzzleAttempt) -> GradeResult:
    items = attempt.validate(task)
    per_solution = []
    for idx, sol in enumerate(task.solutions):
        d = weighted_edit_distance(sol.items, items)
        per_solution.append((idx, max(Fraction(0), sol.points - d)))
    best = max((pts for _, pts in per_solution), default=Fraction(0))
    return GradeResult(max(best, Fraction(0)), Algorithm.LEGACY, tuple(per_solution))


def find_next_sequence_start(
    solution: PuzzleSolution,
    attempt: Sequence[str],
    sol_idx: int,
    ans_idx: int,
) -> tuple[int, int] | None:
    """Next solution entry point at or after ``sol_idx`` whose item also occurs
    in ``attempt`` at or after ``ans_idx``.

    Returns ``(solution index, attempt index)``, or ``None`` when no such
    position exists.
    """
    where = {text: j for j, text in enumerate(attempt) if j >= ans_idx}
    for i in range(sol_idx, len(solution.items)):
        if not solution.entry_flags[i]:
            continue
        j = where.get(solution.items[i].text)
        if j is not None:
            return i, j
    return None


def _sequence_score(solution: PuzzleSolution, attempt: Sequence[str]) -> Fraction:
    score = Fraction(0)
    pos = find_next_sequence_start(solution, attempt, 0, 0)
    while pos is not None:
        i, j = pos
        if i >= len(solution.items) or j >= len(attempt):
            break
        if solution.items[i].text == attempt[j]:
            score += solution.items[i].weight
            pos = (i + 1, j + 1)
        else:
            pos = find_next_sequence_start(solution, attempt, i, j)
    return score


def grade_sequence(task: PuzzleTask, attempt: PuzzleAttempt) -> GradeResult:
    attempt.validate(task)
    per_solution = tuple(
        (idx, min(sol.points, _sequence_score(sol, attempt.sequence)))
        for idx, sol in enumerate(task.solutions)
    )
    best = max(pts for _, pts in per_solution)
    return GradeResult(best, Algorithm.SEQUENCE, per_solution)


def grade(task: PuzzleTask, attempt: PuzzleAttempt, algorithm: Algorithm | str = Algorithm.SEQUENCE) -> GradeResult:
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.LEGACY:
        return grade_legacy(task, attempt)
    return grade_sequence(task, attempt)
