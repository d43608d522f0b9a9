"""Group actions named in the catalog: coset actions built from generators, plus builtins."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path

from .perm import GroupError, PermGroup, Permutation, action_on_sets, coset_action


@dataclass(frozen=True)
class ActionSpec:
    id: str
    description: str
    p: int
    tables: tuple[str, ...]
    raw: dict

    def build(self) -> PermGroup:
        return build_action(self.raw)


def s12_on_pairs() -> PermGroup:
    """S12 acting on the 66 unordered pairs of {0..11}; point 0 is the pair {0, 1}."""
    gens = [Permutation.from_cycles(12, [list(range(12))]), Permutation.from_cycles(12, [[0, 1]])]
    pairs = [frozenset(c) for c in combinations(range(12), 2)]
    return action_on_sets(gens, pairs)


BUILTINS = {"s12_on_pairs": s12_on_pairs}


def build_action(raw: dict) -> PermGroup:
    if "builtin" in raw:
        try:
            return BUILTINS[raw["builtin"]]()
        except KeyError:
            raise GroupError(f"unknown builtin action {raw['builtin']!r}") from None
    deg = raw["group"]["degree"]
    G = PermGroup.from_cycles(deg, raw["group"]["generators"])
    H = [Permutation.from_cycles(deg, c) for c in raw["subgroup"]]
    action, _ = coset_action(G, H)
    return action


def _default_path() -> Path:
    return Path(str(resources.files("vt6p") / "data" / "actions.json"))


def load_actions(path: str | Path | None = None) -> dict[str, ActionSpec]:
    data = json.loads(Path(path or _default_path()).read_text())
    if not isinstance(data, dict) or not data:
        raise GroupError("action file must be a non-empty object")
    out = {}
    for key, raw in data.items():
        if "builtin" not in raw and not {"group", "subgroup"} <= set(raw):
            raise GroupError(f"{key}: needs either 'builtin' or both 'group' and 'subgroup'")
        out[key] = ActionSpec(key, raw.get("description", ""), raw.get("p", 0),
                              tuple(raw.get("tables", ())), raw)
    return out
