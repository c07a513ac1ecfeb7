"""Cones, the polytope-cone correspondence, and exact facet enumeration.

The facet normals of cone(W) are exactly the extreme rays of the dual cone
{b : w . b >= 0 for all w in W}; enumerate_facets builds that dual cone with
the double description method, inserting one halfspace per generator of W
into an initially simplicial description.  All arithmetic on ray vectors is
exact integer arithmetic.  numpy (int64 / mod-p) is used only where a result
can be certified exactly or is re-derived exactly on fallback: classifying
rays against a halfspace within proven magnitude bounds, the combinatorial
adjacency scan over bitmask zero-sets, and a modular lower-bound certificate
for saturation ranks that falls back to fraction-free elimination whenever
the certificate is inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .intlinalg import Mat, Vec, dot, mat, primitive, rank

_MODP = 2_147_483_629  # largest prime below 2^31 minus a margin; fits int64 products


class EmptyCone(ValueError):
    """The cone has no rays."""


class NotFullDimensional(ValueError):
    def __init__(self, found_rank: int, ambient_dim: int):
        super().__init__(
            f"cone spans only {found_rank} of {ambient_dim} dimensions; "
            "project to the spanned subspace before enumerating facets"
        )
        self.found_rank = found_rank
        self.ambient_dim = ambient_dim


@dataclass(frozen=True)
class Cone:
    """A finitely generated cone: ambient dimension and primitive integer rays.

    Rays are normalized to primitive vectors and de-duplicated on
    construction (first occurrence wins), so no two stored rays are equal
    and none is zero.
    """

    ambient_dim: int
    rays: tuple[Vec, ...]

    def __init__(self, ambient_dim: int, rays: Iterable[Sequence[int]]):
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        seen: dict[Vec, None] = {}
        for r in rays:
            if len(r) != ambient_dim:
                raise ValueError(f"ray length {len(r)} != ambient dimension {ambient_dim}")
            seen.setdefault(primitive(r), None)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "rays", tuple(seen))

    def ray_matrix(self) -> Mat:
        return self.rays


@dataclass(frozen=True)
class LinearInequality:
    """Homogeneous halfspace x . normal >= 0 with a primitive integer normal."""

    normal: Vec

    def __init__(self, normal: Sequence[int]):
        object.__setattr__(self, "normal", primitive(normal))


@dataclass(frozen=True)
class FacetReport:
    is_facet: bool
    valid: bool
    n_saturating: int
    saturation_rank: int
    ambient_dim: int

    @property
    def failure(self) -> str | None:
        if self.is_facet:
            return None
        if not self.valid:
            return "validity"
        return "saturation-rank"


def embed_polytope(vertices: Iterable[Sequence[int]], rays: Iterable[Sequence[int]] = ()) -> Cone:
    """Corresponding cone of a polytope (or polyhedron): vertices enter with a
    leading coordinate 1, recession rays with a leading 0.  Intersecting the
    result with x0 = 1 recovers the input."""
    gens = [(1,) + tuple(v) for v in vertices]
    gens += [(0,) + tuple(r) for r in rays]
    if not gens:
        raise EmptyCone("no vertices or rays given")
    return Cone(len(gens[0]), gens)


def polytope_inequality_to_cone(b_p: Sequence[int], beta: int) -> LinearInequality:
    """Rewrite x . b_p >= -beta as a homogeneous inequality on the cone."""
    return LinearInequality((beta,) + tuple(b_p))


def cone_inequality_to_polytope(ineq: LinearInequality) -> tuple[Vec, int]:
    """Split the homogenizing coordinate back out: returns (b_p, beta)."""
    return ineq.normal[1:], ineq.normal[0]


def _rank_mod_p(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix over GF(p).  Always a lower bound for the
    rational rank: a nonzero minor mod p is a nonzero integer minor."""
    if not len(rows):
        return 0
    m = np.array([[x % _MODP for x in row] for row in rows], dtype=np.int64)
    n_rows, n_cols = m.shape
    r = 0
    for c in range(n_cols):
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), _MODP - 2, _MODP)
        m[r] = (m[r] * inv) % _MODP
        rest = m[r + 1:, c]
        nzr = np.nonzero(rest)[0]
        if len(nzr):
            m[r + 1 + nzr] = (m[r + 1 + nzr] - np.outer(rest[nzr], m[r])) % _MODP
        r += 1
        if r == n_rows:
            break
    return r


def rank_at_least(rows: Sequence[Sequence[int]], k: int) -> bool:
    """Exact test rank(rows) >= k.

    The modular rank is a certified lower bound, so a modular rank >= k
    settles the question; otherwise the exact fraction-free rank decides.
    """
    if k <= 0:
        return True
    if not len(rows) or len(rows) < k or len(rows[0]) < k:
        return False
    if _rank_mod_p(rows) >= k:
        return True
    return rank(mat(rows)) >= k


def is_facet(c: Cone, ineq: LinearInequality) -> FacetReport:
    """Check validity (w . b >= 0 on every ray) and saturation rank
    (rank of the saturating rays = ambient dimension - 1)."""
    b = ineq.normal
    if len(b) != c.ambient_dim:
        raise ValueError(f"normal length {len(b)} != ambient dimension {c.ambient_dim}")
    valid = True
    saturating: list[Vec] = []
    for w in c.rays:
        v = dot(w, b)
        if v < 0:
            valid = False
        elif v == 0:
            saturating.append(w)
    d = c.ambient_dim
    if len(saturating) >= d - 1 and rank_at_least(saturating, d - 1):
        sat_rank = d - 1  # cannot exceed d-1: every saturating ray is orthogonal to b
    else:
        sat_rank = rank(mat(saturating))
    return FacetReport(
        is_facet=valid and sat_rank == d - 1,
        valid=valid,
        n_saturating=len(saturating),
        saturation_rank=sat_rank,
        ambient_dim=d,
    )


# ---------------------------------------------------------------------------
# double description


def _greedy_independent(vectors: Sequence[Vec], d: int) -> list[int]:
    """Indices of the first d vectors that are linearly independent, scanning
    in the given order (Fraction echelon, deterministic)."""
    from fractions import Fraction

    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen: list[int] = []
    for idx, v in enumerate(vectors):
        row = [Fraction(x) for x in v]
        for erow, p in zip(echelon, pivots):
            if row[p] != 0:
                f = row[p] / erow[p]
                row = [a - f * b for a, b in zip(row, erow)]
        piv = next((j for j, x in enumerate(row) if x != 0), None)
        if piv is None:
            continue
        echelon.append(row)
        pivots.append(piv)
        chosen.append(idx)
        if len(chosen) == d:
            return chosen
    raise NotFullDimensional(len(chosen), d)


def _scaled_inverse_columns(rows: Sequence[Vec]) -> list[Vec]:
    """Primitive integer columns c_j with rows . c_j proportional to e_j."""
    from fractions import Fraction
    from math import lcm

    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    cols = []
    for j in range(n):
        col = [aug[i][n + j] for i in range(n)]
        denom = 1
        for x in col:
            denom = lcm(denom, x.denominator)
        cols.append(primitive(tuple(int(x * denom) for x in col)))
    return cols


def _zeroset_words(zerosets: list[int], n_words: int) -> np.ndarray:
    words = np.zeros((len(zerosets), n_words), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, z in enumerate(zerosets):
        for w in range(n_words):
            chunk = (z >> (64 * w)) & mask
            if chunk:
                words[i, w] = chunk
            if z >> (64 * (w + 1)) == 0:
                break
    return words


def _classify(rays: list[Vec], a: Vec) -> list[int]:
    """Exact dot products of every ray with the halfspace normal a, using
    int64 matrix products when magnitudes provably fit."""
    d = len(a)
    max_a = max(abs(x) for x in a)
    max_r = max((max(abs(x) for x in r) for r in rays), default=0)
    if max_a and max_r and d * max_a * max_r < 2**62:
        vals = np.array(rays, dtype=np.int64) @ np.array(a, dtype=np.int64)
        return [int(v) for v in vals]
    return [dot(r, a) for r in rays]


def _dual_description(c: Cone) -> list[tuple[Vec, int]]:
    """Extreme rays of the dual cone with their zero-set bitmasks.

    Bit i of a zero-set refers to c.rays[i].  Requires the cone to be
    full-dimensional, which makes the dual pointed and keeps the
    combinatorial adjacency test of the double description method exact.
    """
    if not c.rays:
        raise EmptyCone("cannot enumerate facets of a cone without rays")
    d = c.ambient_dim
    order = sorted(range(len(c.rays)), key=lambda i: c.rays[i])
    hs = [c.rays[i] for i in order]
    m_total = len(hs)
    n_words = (m_total + 63) // 64

    init = _greedy_independent(hs, d)  # raises NotFullDimensional if rank < d
    init_set = set(init)
    cols = _scaled_inverse_columns([hs[i] for i in init])
    rays_dual: list[Vec] = []
    zerosets: list[int] = []
    for j, col in enumerate(cols):
        v = dot(hs[init[j]], col)
        if v < 0:
            col = tuple(-x for x in col)
        rays_dual.append(col)
        z = 0
        for k_pos, k in enumerate(init):
            if k_pos != j:
                z |= 1 << k
        zerosets.append(z)

    need = d - 2
    for h_idx in range(m_total):
        if h_idx in init_set:
            continue
        a = hs[h_idx]
        bit = 1 << h_idx
        vals = _classify(rays_dual, a)
        plus = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        for i in zero:
            zerosets[i] |= bit
        if not minus:
            continue
        if not plus:
            rays_dual = [rays_dual[i] for i in zero]
            zerosets = [zerosets[i] for i in zero]
            continue

        new_rays = [rays_dual[i] for i in plus + zero]
        new_zs = [zerosets[i] for i in plus + zero]

        words = _zeroset_words(zerosets, n_words)
        p_words = words[plus]
        m_words = words[minus]
        # transposed incidence: for each halfspace, the bitmask of current
        # rays saturating it (bit i of saturators[h] <-> rays_dual[i])
        bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
        col_bytes = np.packbits(bits.T, axis=1, bitorder="little")
        saturators = [int.from_bytes(col_bytes[h].tobytes(), "little") for h in range(m_total)]

        # pair prefilter: popcount of the common zero-set must reach d - 2
        cand_blocks: list[tuple[np.ndarray, np.ndarray]] = []
        chunk = max(1, (4 << 20) // max(1, len(minus) * n_words * 8))
        for start in range(0, len(plus), chunk):
            stop = min(start + chunk, len(plus))
            common = p_words[start:stop, None, :] & m_words[None, :, :]
            counts = np.bitwise_count(common).sum(axis=2, dtype=np.int64)
            cand_p, cand_m = np.nonzero(counts >= need)
            if len(cand_p):
                cand_blocks.append((cand_p + start, cand_m))
        if not cand_blocks:
            rays_dual = new_rays
            zerosets = new_zs
            continue

        full_mask = (1 << len(rays_dual)) - 1
        for cand_p, cand_m in cand_blocks:
            for cp, cm in zip(cand_p.tolist(), cand_m.tolist()):
                ip, im = plus[cp], minus[cm]
                z = zerosets[ip] & zerosets[im]
                # adjacent iff the only rays whose zero-set contains z are
                # the two parents; intersect the saturator masks of the
                # halfspaces in z (the parents survive every intersection,
                # so reaching two survivors settles adjacency early)
                acc = full_mask
                adjacent = True
                zz = z
                while zz:
                    lsb = zz & -zz
                    acc &= saturators[lsb.bit_length() - 1]
                    if acc.bit_count() == 2:
                        break
                    zz ^= lsb
                else:
                    adjacent = acc.bit_count() == 2
                if not adjacent:
                    continue
                vp, vm = vals[ip], vals[im]
                comb = tuple(vp * x - vm * y for x, y in zip(rays_dual[im], rays_dual[ip]))
                new_rays.append(primitive(comb))
                new_zs.append(z | bit)

        rays_dual = new_rays
        zerosets = new_zs

    # remap zero-set bits from sorted order back to c.rays order
    remap = [0] * m_total
    for pos, orig in enumerate(order):
        remap[pos] = orig
    out = []
    for r, z in zip(rays_dual, zerosets):
        z_orig = 0
        pos = 0
        while z:
            if z & 1:
                z_orig |= 1 << remap[pos]
            z >>= 1
            pos += 1
        out.append((r, z_orig))
    out.sort(key=lambda t: t[0])
    return out


def enumerate_facets(c: Cone) -> list[LinearInequality]:
    """Complete irredundant facet list of a full-dimensional cone, each facet
    a primitive inequality valid on all rays, sorted lexicographically."""
    return [LinearInequality(r) for r, _ in _dual_description(c)]
