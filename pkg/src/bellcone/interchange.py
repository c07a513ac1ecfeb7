"""File formats: inequality records (JSON lines), cone and constraint files,
and run reports.  All integers are exact; writes are atomic
(write-to-temp-then-rename) and byte-deterministic for identical inputs.

Inequality record fields: "scenario" {"parties", "settings"}, "coeffs"
(length (I+1)^N, multi-index flattened row-major with party 1 slowest and
the all-zero index first), optional "symmetric" (short notation) and
"provenance".
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Iterable

from .cones import Cone
from .constrained import ConstraintSystem
from .scenarios import BellInequality, Scenario, format_symmetric, is_party_symmetric


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def inequality_record(b: BellInequality, provenance: dict | None = None) -> dict:
    rec = {
        "scenario": {"parties": b.scenario.parties, "settings": b.scenario.settings},
        "coeffs": list(b.coeffs),
    }
    if is_party_symmetric(b):
        rec["symmetric"] = format_symmetric(b)
    if provenance is not None:
        rec["provenance"] = provenance
    return rec


def record_to_inequality(rec: dict) -> BellInequality:
    s = Scenario(rec["scenario"]["parties"], rec["scenario"]["settings"])
    return BellInequality(s, tuple(int(x) for x in rec["coeffs"]))


def dump_inequality_lines(records: Iterable[dict], path: str) -> None:
    _atomic_write(path, "".join(_dumps(r) + "\n" for r in records))


def load_inequality_lines(path: str) -> list[dict]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


def format_inequality_lines(records: Iterable[dict]) -> str:
    return "".join(_dumps(r) + "\n" for r in records)


def dump_cone(c: Cone, path: str) -> None:
    _atomic_write(path, _dumps({"ambient_dim": c.ambient_dim, "rays": [list(r) for r in c.rays]}) + "\n")


def load_cone(path: str) -> Cone:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return Cone(int(data["ambient_dim"]), [tuple(int(x) for x in r) for r in data["rays"]])


def dump_constraints(cs: ConstraintSystem, path: str) -> None:
    _atomic_write(path, _dumps({"cols": cs.cols, "rows": [list(r) for r in cs.rows]}) + "\n")


def load_constraints(path: str) -> ConstraintSystem:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return ConstraintSystem([tuple(int(x) for x in r) for r in data["rows"]], cols=int(data["cols"]))


def dump_run_reports(reports: Iterable[dict], path: str) -> None:
    _atomic_write(path, "".join(_dumps(r) + "\n" for r in reports))


def load_run_reports(path: str) -> list[dict]:
    return load_inequality_lines(path)
