"""Reader for the inequality interchange format (JSON lines).

Each record carries "scenario" {"parties", "settings"} and "coeffs", the
integer coefficient tensor flattened row-major with party 1 slowest and the
all-zero (bound) index first.  Produced by the classification toolkit; this
package only consumes it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Inequality:
    parties: int
    settings: int
    coeffs: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        expected = (self.settings + 1) ** self.parties
        if len(self.coeffs) != expected:
            raise ValueError(f"expected {expected} coefficients, got {len(self.coeffs)}")

    def multi_indices(self):
        return itertools.product(range(self.settings + 1), repeat=self.parties)

    def coefficient(self, multi: tuple[int, ...]) -> int:
        flat = 0
        for i in multi:
            flat = flat * (self.settings + 1) + i
        return self.coeffs[flat]


def load_inequalities(path: str) -> list[Inequality]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            name = str(rec.get("provenance", {}).get("name", rec.get("provenance", {}).get("id", "")))
            out.append(
                Inequality(
                    parties=int(rec["scenario"]["parties"]),
                    settings=int(rec["scenario"]["settings"]),
                    coeffs=tuple(int(x) for x in rec["coeffs"]),
                    name=name,
                )
            )
    return out
