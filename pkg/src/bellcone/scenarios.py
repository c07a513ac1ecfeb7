"""Bell scenario combinatorics for dichotomic (+1/-1) measurements.

A scenario has N parties that each choose among I non-trivial settings.
Setting index 0 is the trivial measurement that always yields +1, which
lets marginals and the constant term live in the same coefficient tensor:
a correlation vector has one entry per multi-index (i_1, ..., i_N) with
i in 0..I, flattened row-major (party 1 slowest), entry (0, ..., 0) first.
Because deterministic behaviours then carry the constant 1 as their first
component, they double directly as rays of the corresponding cone.

Bell inequalities are stored in "sum b * <...> >= 0" orientation with the
classical bound folded into the coefficient at the all-zero index.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .intlinalg import Vec, dot, primitive


class ZeroReduction(ValueError):
    """Contracting an inequality with an assignment gave the zero functional."""


class NotSymmetric(ValueError):
    """Symmetric-notation output needs a party-symmetric coefficient tensor."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Scenario:
    """N parties, I dichotomic settings each (outcomes fixed at +-1)."""

    parties: int
    settings: int

    def __post_init__(self):
        if self.parties < 1 or self.settings < 1:
            raise ValueError("need at least one party and one setting")

    @property
    def vector_length(self) -> int:
        return (self.settings + 1) ** self.parties

    def multi_indices(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.settings + 1), repeat=self.parties))

    def index_of(self, multi: tuple[int, ...]) -> int:
        flat = 0
        for i in multi:
            flat = flat * (self.settings + 1) + i
        return flat


@dataclass(frozen=True)
class BellInequality:
    """Coefficient tensor b of sum_m b[m] <O_m> >= 0, bound at index (0,...,0)."""

    scenario: Scenario
    coeffs: Vec

    def __post_init__(self):
        if len(self.coeffs) != self.scenario.vector_length:
            raise ValueError(
                f"expected {self.scenario.vector_length} coefficients, got {len(self.coeffs)}"
            )

    @property
    def bound(self) -> int:
        return self.coeffs[0]

    def primitive(self) -> "BellInequality":
        return BellInequality(self.scenario, primitive(self.coeffs))


@lru_cache(maxsize=None)
def _vertex_cache(parties: int, settings: int) -> tuple[Vec, ...]:
    multis = list(itertools.product(range(settings + 1), repeat=parties))
    out = []
    for signs in itertools.product((1, -1), repeat=parties * settings):
        per_party = [(1,) + signs[p * settings:(p + 1) * settings] for p in range(parties)]
        v = []
        for m in multis:
            x = 1
            for p, i in enumerate(m):
                x *= per_party[p][i]
            v.append(x)
        out.append(tuple(v))
    return tuple(out)


def enumerate_vertices(s: Scenario) -> list[Vec]:
    """All 2^(N*I) deterministic correlation vectors, in the lexicographic
    order of their sign assignments (all +1 first)."""
    return list(_vertex_cache(s.parties, s.settings))


def evaluate(b: BellInequality, v: Vec) -> int:
    return dot(b.coeffs, v)


def classical_bound(b: BellInequality) -> tuple[int, list[Vec]]:
    """Exact minimum of the expression over deterministic behaviours,
    together with the minimizing vertices."""
    best = None
    argmin: list[Vec] = []
    for v in enumerate_vertices(b.scenario):
        val = evaluate(b, v)
        if best is None or val < best:
            best = val
            argmin = [v]
        elif val == best:
            argmin.append(v)
    assert best is not None
    return best, argmin


def saturating_vertices(b: BellInequality) -> list[Vec]:
    return [v for v in enumerate_vertices(b.scenario) if evaluate(b, v) == 0]


def _difference_row(s: Scenario, lhs: tuple[int, ...], rhs: tuple[int, ...]) -> Vec:
    row = [0] * s.vector_length
    row[s.index_of(lhs)] += 1
    row[s.index_of(rhs)] -= 1
    return tuple(row)


def symmetry_rows(s: Scenario) -> list[Vec]:
    """Rows g with g . b = 0 forcing b to be invariant under party exchange.

    For three parties this is the explicit list of coefficient equations:
    five per index triple i<j<k and four per pair i<j (two orbits each),
    giving 4*5 + 6*4 = 44 rows when I = 3.  For other party counts the
    construction generalizes to one row per non-representative arrangement
    of every index multiset.
    """
    if s.parties == 3:
        rows: list[Vec] = []
        vals = range(s.settings + 1)
        for (i, j, k) in itertools.combinations(vals, 3):
            for other in ((j, k, i), (k, i, j), (i, k, j), (k, j, i), (j, i, k)):
                rows.append(_difference_row(s, (i, j, k), other))
        for (i, j) in itertools.combinations(vals, 2):
            rows.append(_difference_row(s, (i, i, j), (i, j, i)))
            rows.append(_difference_row(s, (i, i, j), (j, i, i)))
            rows.append(_difference_row(s, (j, j, i), (j, i, j)))
            rows.append(_difference_row(s, (j, j, i), (i, j, j)))
        return rows
    rows = []
    for mset in itertools.combinations_with_replacement(range(s.settings + 1), s.parties):
        arrangements = sorted(set(itertools.permutations(mset)))
        rep = arrangements[0]
        for other in arrangements[1:]:
            rows.append(_difference_row(s, rep, other))
    return rows


def full_correlation_rows(s: Scenario) -> list[Vec]:
    """Rows forcing every coefficient at an index with a trivial setting to
    vanish (the bound entry is exempt)."""
    rows = []
    for m in s.multi_indices():
        if any(i == 0 for i in m) and any(i != 0 for i in m):
            row = [0] * s.vector_length
            row[s.index_of(m)] = 1
            rows.append(tuple(row))
    return rows


def is_party_symmetric(b: BellInequality) -> bool:
    s = b.scenario
    for m in s.multi_indices():
        v = b.coeffs[s.index_of(m)]
        for p in itertools.permutations(m):
            if b.coeffs[s.index_of(p)] != v:
                return False
    return True


def lift_vertex(v2: Vec, xi: tuple[int, ...], settings: int) -> Vec:
    """Extend a bipartite behaviour by a third party answering xi_k
    deterministically: r[i,j,k] = v2[i,j] * xi[k], with xi_0 = +1."""
    width = settings + 1
    if len(v2) != width * width:
        raise ValueError("bipartite vector length does not match the setting count")
    if len(xi) != settings or any(x not in (1, -1) for x in xi):
        raise ValueError("assignment must give +-1 for each non-trivial setting")
    xi_full = (1,) + tuple(xi)
    out = []
    for ij in range(width * width):
        for k in range(width):
            out.append(v2[ij] * xi_full[k])
    return tuple(out)


def reduce_inequality(b: BellInequality, xi: tuple[int, ...]) -> BellInequality:
    """Contract the last party with a deterministic assignment:
    b2[i,j] = sum_k b[i,j,k] * xi_k.  Raises ZeroReduction when the
    contraction vanishes identically."""
    s = b.scenario
    if s.parties != 3:
        raise ValueError("reduction is defined for three-party inequalities")
    if len(xi) != s.settings or any(x not in (1, -1) for x in xi):
        raise ValueError("assignment must give +-1 for each non-trivial setting")
    width = s.settings + 1
    xi_full = (1,) + tuple(xi)
    out = []
    for ij in range(width * width):
        out.append(sum(b.coeffs[ij * width + k] * xi_full[k] for k in range(width)))
    if not any(out):
        raise ZeroReduction("assignment annihilates the inequality")
    return BellInequality(Scenario(2, s.settings), tuple(out))


def identify_settings(b: BellInequality, merge: dict[int, int]) -> BellInequality:
    """Identify measurement settings across all parties.

    merge maps each old setting index 1..I to a new index; coefficients of
    indices that collide are added.  The new setting count is the largest
    target index.  Index 0 always maps to itself.
    """
    s = b.scenario
    mapping = {0: 0}
    for old in range(1, s.settings + 1):
        new = merge.get(old, old)
        if not 0 < new <= s.settings:
            raise ValueError(f"setting {old} mapped outside 1..{s.settings}")
        mapping[old] = new
    new_settings = max(mapping.values())
    if set(mapping.values()) != set(range(new_settings + 1)):
        raise ValueError("merged settings must cover 1..I' without gaps")
    target = Scenario(s.parties, new_settings)
    out = [0] * target.vector_length
    for m in s.multi_indices():
        out[target.index_of(tuple(mapping[i] for i in m))] += b.coeffs[s.index_of(m)]
    return BellInequality(target, tuple(out))


def _class_representative(m: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(m, reverse=True))


def format_symmetric(b: BellInequality) -> str:
    """Short form for party-symmetric inequalities: the bound followed by one
    signed coefficient per distinct-permutation class, classes written with
    non-increasing indices and listed in ascending order."""
    if not is_party_symmetric(b):
        raise NotSymmetric("coefficient tensor is not party-symmetric")
    s = b.scenario
    classes: dict[tuple[int, ...], int] = {}
    for m in s.multi_indices():
        rep = _class_representative(m)
        if rep not in classes:
            classes[rep] = b.coeffs[s.index_of(m)]
    parts = [str(b.bound)]
    for rep in sorted(classes):
        if all(i == 0 for i in rep):
            continue
        c = classes[rep]
        if c == 0:
            continue
        sign = "+" if c > 0 else "-"
        mag = abs(c)
        coeff = "" if mag == 1 else str(mag)
        parts.append(f"{sign}{coeff}({''.join(map(str, rep))})")
    return " ".join(parts)


_TERM_RE = re.compile(r"\s*(?:(?P<sign>[+\-−])\s*)?(?P<num>\d+)?\s*(?:\((?P<idx>\d+)\))?")


def parse_symmetric(text: str, scenario: Scenario) -> BellInequality:
    """Parse the symmetric short form back into a coefficient tensor.

    Accepts any arrangement of indices inside the parentheses and both ASCII
    and U+2212 minus signs.  The bare leading integer is the bound.
    """
    coeffs = [0] * scenario.vector_length
    pos = 0
    n = len(text)
    saw_bound = False
    seen: set[tuple[int, ...]] = set()
    while pos < n:
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("unrecognized token", pos)
        if m.group("num") is None and m.group("idx") is None:
            if text[pos:].strip():
                raise ParseError("unrecognized token", pos)
            break
        sign = -1 if m.group("sign") in ("-", "−") else 1
        value = sign * int(m.group("num") or 1)
        idx = m.group("idx")
        if idx is None:
            if saw_bound:
                raise ParseError("second bare constant", pos)
            coeffs[0] = value
            saw_bound = True
        else:
            if len(idx) != scenario.parties:
                raise ParseError(
                    f"index '{idx}' needs {scenario.parties} digits", pos
                )
            multi = tuple(int(ch) for ch in idx)
            if any(i > scenario.settings for i in multi):
                raise ParseError(f"setting out of range in '{idx}'", pos)
            rep = _class_representative(multi)
            if rep in seen:
                raise ParseError(f"class '{idx}' given twice", pos)
            seen.add(rep)
            if all(i == 0 for i in multi):
                if saw_bound:
                    raise ParseError("second bare constant", pos)
                coeffs[0] = value
                saw_bound = True
            else:
                for p in set(itertools.permutations(multi)):
                    coeffs[scenario.index_of(p)] = value
        pos = m.end()
    return BellInequality(scenario, tuple(coeffs))


# Published inequalities, in the >= 0 orientation used throughout.
CHSH = parse_symmetric("2 -(11) -(21) +(22)", Scenario(2, 2))
I3322 = parse_symmetric("4 -(10) +(11) +(20) -(21) +(22) -(31) -(32)", Scenario(2, 3))
MERMIN = parse_symmetric("2 -(211) +(222)", Scenario(3, 2))
F1 = parse_symmetric("8 +(110) -(210) +(211) +(220) +(222) -2(331) -2(332)", Scenario(3, 3))
F2 = parse_symmetric("9 +(110) +2(220) -2(221) -(300) -(310) +(311) -2(322)", Scenario(3, 3))
F3 = parse_symmetric("9 -(210) +(211) +(220) +3(222) -(300) -(310) +(311) -2(322)", Scenario(3, 3))
