"""Relabeling symmetries of Bell inequalities and orbit canonicalization.

A relabeling permutes the parties, permutes each party's non-trivial
settings, and flips measurement outcomes per setting (observable O -> -O);
the trivial setting 0 is fixed throughout.  Inequalities and behaviours
transform the same way, which makes evaluation relabeling-covariant.

canonical_form computes the lexicographic minimum over the whole group
without scanning all of it: party permutations are enumerated outright,
and per-party setting/sign choices are chosen stage by stage (last party
first, matching the flat index order), keeping all tied survivors for
backtracking.  The coefficient-magnitude multiset, the bound entry, and
per-correlation-order magnitude multisets are orbit invariants used to
bucket inequalities before full canonicalization in dedup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .intlinalg import Vec, primitive
from .scenarios import BellInequality, Scenario


@dataclass(frozen=True)
class Relabeling:
    """party_perm maps old party p to its new position; setting_perms[p] maps
    each old setting of old party p to a new setting (index 0 fixed);
    flips[p][s] is the outcome sign attached to old party p's old setting s."""

    party_perm: tuple[int, ...]
    setting_perms: tuple[tuple[int, ...], ...]
    flips: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.party_perm)
        if sorted(self.party_perm) != list(range(n)):
            raise ValueError("party_perm is not a permutation")
        for sp, fl in zip(self.setting_perms, self.flips):
            if sp[0] != 0 or sorted(sp) != list(range(len(sp))):
                raise ValueError("setting permutation must fix 0 and permute 1..I")
            if fl[0] != 1 or any(x not in (1, -1) for x in fl):
                raise ValueError("flips must be +-1 with the trivial setting unflipped")


def identity(s: Scenario) -> Relabeling:
    w = s.settings + 1
    return Relabeling(
        tuple(range(s.parties)),
        tuple(tuple(range(w)) for _ in range(s.parties)),
        tuple((1,) * w for _ in range(s.parties)),
    )


def compose(g2: Relabeling, g1: Relabeling) -> Relabeling:
    """The relabeling acting as g1 followed by g2."""
    n = len(g1.party_perm)
    party = tuple(g2.party_perm[g1.party_perm[p]] for p in range(n))
    setting = tuple(
        tuple(g2.setting_perms[g1.party_perm[p]][g1.setting_perms[p][s]]
              for s in range(len(g1.setting_perms[p])))
        for p in range(n)
    )
    flips = tuple(
        tuple(g1.flips[p][s] * g2.flips[g1.party_perm[p]][g1.setting_perms[p][s]]
              for s in range(len(g1.flips[p])))
        for p in range(n)
    )
    return Relabeling(party, setting, flips)


def inverse(g: Relabeling) -> Relabeling:
    n = len(g.party_perm)
    inv_party = [0] * n
    for p, q in enumerate(g.party_perm):
        inv_party[q] = p
    setting = []
    flips = []
    for q in range(n):
        p = inv_party[q]
        w = len(g.setting_perms[p])
        inv_sigma = [0] * w
        for s, t in enumerate(g.setting_perms[p]):
            inv_sigma[t] = s
        setting.append(tuple(inv_sigma))
        flips.append(tuple(g.flips[p][inv_sigma[t]] for t in range(w)))
    return Relabeling(tuple(inv_party), tuple(setting), tuple(flips))


@lru_cache(maxsize=32)
def _index_strides(parties: int, width: int) -> tuple[int, ...]:
    return tuple(width ** (parties - 1 - p) for p in range(parties))


def _action_table(s: Scenario, g: Relabeling) -> tuple[list[int], list[int]]:
    """For each old flat index: the new flat index and the sign factor."""
    w = s.settings + 1
    strides = _index_strides(s.parties, w)
    n = s.vector_length
    target = [0] * n
    sign = [1] * n
    for m in itertools.product(range(w), repeat=s.parties):
        old_flat = sum(i * st for i, st in zip(m, strides))
        new_flat = 0
        sg = 1
        for p, i in enumerate(m):
            new_flat += g.setting_perms[p][i] * strides[g.party_perm[p]]
            sg *= g.flips[p][i]
        target[old_flat] = new_flat
        sign[old_flat] = sg
    return target, sign


def apply(g: Relabeling, b: BellInequality) -> BellInequality:
    """Transform the coefficient tensor; the result is re-primitivized."""
    target, sign = _action_table(b.scenario, g)
    out = [0] * b.scenario.vector_length
    for old, (t, sg) in enumerate(zip(target, sign)):
        out[t] = sg * b.coeffs[old]
    return BellInequality(b.scenario, primitive(tuple(out)))


def apply_to_vertex(g: Relabeling, v: Vec, s: Scenario) -> Vec:
    target, sign = _action_table(s, g)
    out = [0] * s.vector_length
    for old, (t, sg) in enumerate(zip(target, sign)):
        out[t] = sg * v[old]
    return tuple(out)


def enumerate_group(s: Scenario) -> Iterable[Relabeling]:
    """Every relabeling of the scenario (use only for small groups)."""
    w = s.settings + 1
    locals_ = list(_local_transforms(s.settings))
    for party in itertools.permutations(range(s.parties)):
        for chosen in itertools.product(locals_, repeat=s.parties):
            setting = tuple(_inverse_perm(src) for src, _ in chosen)
            flips = tuple(
                tuple(sgn[setting[p][s_]] for s_ in range(w))
                for p, (_, sgn) in enumerate(chosen)
            )
            yield Relabeling(party, setting, flips)


def group_order(s: Scenario) -> int:
    import math

    per_party = math.factorial(s.settings) * 2 ** s.settings
    return math.factorial(s.parties) * per_party ** s.parties


def random_element(s: Scenario, rng) -> Relabeling:
    w = s.settings + 1
    party = list(range(s.parties))
    rng.shuffle(party)
    setting = []
    flips = []
    for _ in range(s.parties):
        perm = list(range(1, w))
        rng.shuffle(perm)
        setting.append((0,) + tuple(perm))
        flips.append((1,) + tuple(rng.choice((1, -1)) for _ in range(s.settings)))
    return Relabeling(tuple(party), tuple(setting), tuple(flips))


# ---------------------------------------------------------------------------
# canonical form


def _inverse_perm(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@lru_cache(maxsize=8)
def _local_transforms(settings: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """All per-party transforms as (src, sgn): the entry at new setting t is
    sgn[t] times the entry at old setting src[t]."""
    out = []
    for perm in itertools.permutations(range(1, settings + 1)):
        src = (0,) + perm
        for signs in itertools.product((1, -1), repeat=settings):
            out.append((src, (1,) + signs))
    return tuple(out)


def _axis_permuted(b: Vec, s: Scenario, axes: tuple[int, ...]) -> Vec:
    w = s.settings + 1
    strides = _index_strides(s.parties, w)
    out = [0] * len(b)
    for m in itertools.product(range(w), repeat=s.parties):
        src = sum(m[axes[q]] * st for q, st in enumerate(strides))
        dst = sum(i * st for i, st in zip(m, strides))
        out[dst] = b[src]
    return tuple(out)


def _min_local_image(b: Vec, s: Scenario) -> Vec:
    """Lexicographic minimum over per-party transforms with the party order
    fixed: stage over parties from last to first, keeping tied survivors."""
    w = s.settings + 1
    n_parties = s.parties
    locals_ = _local_transforms(s.settings)
    # survivors: (suffix_src, suffix_sign) arrays over the already-chosen
    # parties p+1..N; suffix_src maps new suffix flat index to old, suffix_sign
    # gives the accumulated sign
    survivors: list[tuple[list[int], list[int]]] = [([0], [1])]
    for p in range(n_parties - 1, -1, -1):
        suffix_len = w ** (n_parties - 1 - p)
        best_key: tuple[int, ...] | None = None
        best: list[tuple] = []
        for suffix_src, suffix_sign in survivors:
            for src, sgn in locals_:
                # stage key: the block of entries at new indices
                # (0, ..., 0, t, suffix) for t = 1..I, in flat order
                key = []
                for t in range(1, w):
                    row_base = src[t] * suffix_len
                    st = sgn[t]
                    for sfx in range(suffix_len):
                        key.append(st * suffix_sign[sfx] * b[row_base + suffix_src[sfx]])
                key_t = tuple(key)
                if best_key is None or key_t < best_key:
                    best_key = key_t
                    best = [(src, sgn, suffix_src, suffix_sign)]
                elif key_t == best_key:
                    best.append((src, sgn, suffix_src, suffix_sign))
        if p == 0:
            # last stage: every tied survivor produces the same full vector
            best = best[:1]
        new_survivors = []
        seen: set[tuple[int, ...]] = set()
        n_total = len(b)
        new_len = suffix_len * w
        for src, sgn, suffix_src, suffix_sign in best:
            new_src = []
            new_sign = []
            for t in range(w):
                row_base = src[t] * suffix_len
                for sfx in range(suffix_len):
                    new_src.append(row_base + suffix_src[sfx])
                    new_sign.append(sgn[t] * suffix_sign[sfx])
            if p == 0:
                new_survivors.append((new_src, new_sign))
                break
            # survivors whose signed reads of b agree everywhere are
            # interchangeable in every later stage; keep one of each
            fingerprint = tuple(
                new_sign[j] * b[base + new_src[j]]
                for base in range(0, n_total, new_len)
                for j in range(new_len)
            )
            if fingerprint not in seen:
                seen.add(fingerprint)
                new_survivors.append((new_src, new_sign))
        survivors = new_survivors
    full_src, full_sign = survivors[0]
    return tuple(sg * b[src] for src, sg in zip(full_src, full_sign))


def canonical_form(b: BellInequality) -> BellInequality:
    """Lexicographic minimum of the full relabeling orbit of b (primitive)."""
    from .scenarios import is_party_symmetric

    base = primitive(b.coeffs)
    s = b.scenario
    if is_party_symmetric(b):
        # all axis permutations fix the tensor, so one local pass suffices
        return BellInequality(s, _min_local_image(base, s))
    best: Vec | None = None
    for axes in itertools.permutations(range(s.parties)):
        cand = _min_local_image(_axis_permuted(base, s, axes), s)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return BellInequality(s, best)


def invariant_key(b: BellInequality) -> tuple:
    """Orbit invariants for bucketing: bound entry, global coefficient
    magnitude multiset, and per-correlation-order magnitude multisets."""
    s = b.scenario
    per_order: dict[int, list[int]] = {}
    for m in s.multi_indices():
        order = sum(1 for i in m if i != 0)
        per_order.setdefault(order, []).append(abs(b.coeffs[s.index_of(m)]))
    return (
        b.coeffs[0],
        tuple(sorted(abs(x) for x in b.coeffs)),
        tuple((o, tuple(sorted(v))) for o, v in sorted(per_order.items())),
    )


def dedup(items: Iterable[BellInequality]) -> list[BellInequality]:
    """One canonical representative per relabeling orbit, sorted."""
    buckets: dict[tuple, list[BellInequality]] = {}
    for b in items:
        buckets.setdefault(invariant_key(b.primitive()), []).append(b)
    out: set[tuple[Scenario, Vec]] = set()
    for bucket in buckets.values():
        for b in bucket:
            canon = canonical_form(b)
            out.add((canon.scenario, canon.coeffs))
    return [BellInequality(s, c) for s, c in sorted(out, key=lambda t: (t[0].parties, t[0].settings, t[1]))]


def symmetric_representative(b: BellInequality) -> BellInequality:
    """Minimum over the diagonal subgroup (the same setting permutation and
    flips on every party), which preserves party symmetry."""
    base = primitive(b.coeffs)
    s = b.scenario
    w = s.settings + 1
    strides = _index_strides(s.parties, w)
    best: Vec | None = None
    for src, sgn in _local_transforms(s.settings):
        out = [0] * len(base)
        for m in itertools.product(range(w), repeat=s.parties):
            dst = sum(i * st for i, st in zip(m, strides))
            srcidx = sum(src[i] * st for i, st in zip(m, strides))
            factor = 1
            for i in m:
                factor *= sgn[i]
            out[dst] = factor * base[srcidx]
        cand = tuple(out)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return BellInequality(s, best)
