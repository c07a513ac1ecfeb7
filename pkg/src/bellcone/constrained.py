"""Facets of a cone whose normals satisfy a linear constraint system G b = 0.

Instead of enumerating all facets and filtering, the rays are projected onto
the kernel of G (in coordinates of an integer kernel basis T): every facet
normal of the original cone that lies in ker G reappears as a facet normal of
the projected cone, so it suffices to enumerate the projected cone's facets,
lift each candidate back as b = T b', and keep the lifts whose saturating
rays still span a hyperplane.  Lifted candidates are automatically valid on
every original ray because w . (T b') = (w^T T) . b'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cones import Cone, LinearInequality, _dual_description, rank_at_least
from .intlinalg import Mat, Vec, dot, integer_kernel_basis, mat, primitive, rank


class NoFreedom(ValueError):
    """The constraint system has a trivial kernel: no candidate normals."""


class ZeroLift(ValueError):
    """Lifting produced the zero vector (impossible for nonzero candidates)."""


@dataclass(frozen=True)
class ConstraintSystem:
    """Integer constraint rows g with g . b = 0; rows may be redundant."""

    rows: Mat
    cols: int

    def __init__(self, rows: Iterable[Sequence[int]], cols: int | None = None):
        rows = mat(rows)
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty system")
            cols = len(rows[0])
        if rows and len(rows[0]) != cols:
            raise ValueError("row length does not match the column count")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    def rank(self) -> int:
        return rank(self.rows)


@dataclass(frozen=True)
class ProjectionContext:
    """Kernel basis and the bookkeeping linking original to projected rays.

    kernel_basis holds the columns t_j of T (each of length D).  ray_map has
    one entry per original ray: the index of its (primitive) projection among
    the projected cone's rays, or None when the ray projects to zero and is
    dropped.  distinct_projections counts the distinct raw projected vectors,
    the zero vector included when it occurs, which is the convention used by
    the published checkpoint for this pipeline.
    """

    kernel_basis: tuple[Vec, ...]
    ray_map: tuple[int | None, ...]
    n_zero_projections: int
    distinct_projections: int

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)


def project_ray(ctx_or_basis, w: Sequence[int]) -> Vec:
    basis = ctx_or_basis.kernel_basis if isinstance(ctx_or_basis, ProjectionContext) else ctx_or_basis
    return tuple(dot(w, t) for t in basis)


def build_projection(c: Cone, cs: ConstraintSystem) -> tuple[ProjectionContext, Cone]:
    """Project the rays of c onto ker(G) coordinates.

    Zero projections are dropped (they saturate every candidate); duplicate
    directions are merged, with the original-to-projected correspondence kept
    in the returned context.
    """
    if cs.cols != c.ambient_dim:
        raise ValueError(
            f"constraint system has {cs.cols} columns, cone lives in dimension {c.ambient_dim}"
        )
    basis = tuple(integer_kernel_basis(cs.rows)) if cs.rows else tuple(
        tuple(int(i == j) for j in range(c.ambient_dim)) for i in range(c.ambient_dim)
    )
    if not basis:
        raise NoFreedom("constraint system has full rank; only b = 0 satisfies it")
    k = len(basis)
    raw = [project_ray(basis, w) for w in c.rays]
    distinct_raw = len(set(raw))
    nonzero = [p for p in raw if any(p)]
    n_zero = len(raw) - len(nonzero)
    projected_cone = Cone(k, nonzero)
    index_of = {ray: i for i, ray in enumerate(projected_cone.rays)}
    ray_map: list[int | None] = []
    for p in raw:
        ray_map.append(index_of[primitive(p)] if any(p) else None)
    ctx = ProjectionContext(
        kernel_basis=basis,
        ray_map=tuple(ray_map),
        n_zero_projections=n_zero,
        distinct_projections=distinct_raw,
    )
    return ctx, projected_cone


def lift_candidate(ctx: ProjectionContext, candidate: LinearInequality) -> LinearInequality:
    """Lift a projected normal back to the original space: b = T b'."""
    basis = ctx.kernel_basis
    if len(candidate.normal) != len(basis):
        raise ValueError("candidate length does not match the kernel dimension")
    d = len(basis[0])
    b = [0] * d
    for coeff, t in zip(candidate.normal, basis):
        if coeff:
            for i in range(d):
                b[i] += coeff * t[i]
    if not any(b):
        raise ZeroLift("kernel basis columns are dependent")  # unreachable: T has full column rank
    return LinearInequality(b)


@dataclass(frozen=True)
class ConstrainedFacetsResult:
    facets: tuple[LinearInequality, ...]
    rejected: tuple[LinearInequality, ...]  # faces of c obeying the constraints, not facets
    context: ProjectionContext
    projected_cone: Cone
    candidate_count: int


def constrained_facets_detailed(c: Cone, cs: ConstraintSystem) -> ConstrainedFacetsResult:
    ctx, projected = build_projection(c, cs)
    if not projected.rays:
        return ConstrainedFacetsResult((), (), ctx, projected, 0)
    duals = _dual_description(projected)
    d = c.ambient_dim
    facets: list[LinearInequality] = []
    rejected: list[LinearInequality] = []
    for candidate_normal, zeroset in duals:
        lifted = lift_candidate(ctx, LinearInequality(candidate_normal))
        # saturating original rays: zero projections saturate everything,
        # otherwise saturation transfers through w . (T b') = (w^T T) . b'
        sat = [
            w
            for w, target in zip(c.rays, ctx.ray_map)
            if target is None or (zeroset >> target) & 1
        ]
        if len(sat) >= d - 1 and rank_at_least(sat, d - 1):
            facets.append(lifted)
        else:
            rejected.append(lifted)
    facets.sort(key=lambda f: f.normal)
    rejected.sort(key=lambda f: f.normal)
    return ConstrainedFacetsResult(tuple(facets), tuple(rejected), ctx, projected, len(duals))


def constrained_facets(c: Cone, cs: ConstraintSystem) -> list[LinearInequality]:
    """All facet normals b of c with G b = 0, primitive, in deterministic order."""
    return list(constrained_facets_detailed(c, cs).facets)
