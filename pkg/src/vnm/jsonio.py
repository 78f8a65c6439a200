"""JSON encoding and decoding for the wire formats used by the CLI.

Conventions:

* rational values serialize as ``"num/den"`` strings (``"1/2"``, ``"3"``),
  floats as plain JSON numbers;
* a lottery is ``{"space": ["x1", ...], "probs": [...]}``;
* a utility function is ``{"space": [...], "utility": {"x1": ...}}``;
* a preference dataset is ``{"space": [...], "pairs": [{"winner": lottery,
  "loser": lottery}, ...]}`` where each pair entry may omit its own
  ``"space"`` and inherit the dataset's.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .lottery import (
    Lottery,
    OutcomeSpace,
    UtilityFunction,
    new_lottery,
    utility_from_mapping,
)


def number_to_json(value) -> Any:
    """Fractions become ``"num/den"`` strings, everything else stays a number."""
    if isinstance(value, Fraction):
        return str(value)
    return value


def space_to_json(space: OutcomeSpace) -> list[str]:
    return list(space.labels)


def space_from_json(obj, mode: str) -> OutcomeSpace:
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise ValueError("space must be a JSON array of outcome labels")
    return OutcomeSpace(tuple(obj), mode)


def lottery_to_json(p: Lottery) -> dict:
    return {
        "space": space_to_json(p.space),
        "probs": [number_to_json(v) for v in p.probs],
    }


def lottery_from_json(obj, space: OutcomeSpace | None = None, mode: str | None = None) -> Lottery:
    """Decode a lottery object, checking it against ``space`` when given."""
    if not isinstance(obj, Mapping):
        raise ValueError("lottery must be a JSON object")
    if "probs" not in obj:
        raise ValueError('lottery object needs a "probs" array')
    if "space" in obj:
        declared = space_from_json(obj["space"], mode or (space.mode if space else "rational"))
        if space is not None and declared.labels != space.labels:
            raise ValueError(
                f"lottery space {list(declared.labels)} does not match expected {list(space.labels)}"
            )
        target = space if space is not None else declared
    elif space is not None:
        target = space
    else:
        raise ValueError('lottery object needs a "space" array')
    return new_lottery(target, obj["probs"])


def utility_to_json(u: UtilityFunction) -> dict:
    return {
        "space": space_to_json(u.space),
        "utility": {x: number_to_json(v) for x, v in zip(u.space.labels, u.values)},
    }


def utility_from_json(obj, space: OutcomeSpace | None = None, mode: str = "rational") -> UtilityFunction:
    """Decode ``{"space": [...], "utility": {...}}``; ``space`` may be implied.

    Without an explicit or expected space the labels come from the utility
    mapping in insertion order.
    """
    if not isinstance(obj, Mapping) or "utility" not in obj or not isinstance(obj["utility"], Mapping):
        raise ValueError('utility file must contain a "utility" object mapping labels to values')
    values = obj["utility"]
    if space is None:
        if "space" in obj:
            space = space_from_json(obj["space"], mode)
        else:
            space = OutcomeSpace(tuple(values.keys()), mode)
    elif "space" in obj and tuple(obj["space"]) != space.labels:
        raise ValueError("utility space does not match expected space")
    return utility_from_mapping(space, values)
