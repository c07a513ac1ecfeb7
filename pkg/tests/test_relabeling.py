import itertools
import random

from bellcone.relabeling import (
    Relabeling,
    apply,
    apply_to_vertex,
    canonical_form,
    compose,
    dedup,
    enumerate_group,
    group_order,
    identity,
    invariant_key,
    inverse,
    random_element,
    symmetric_representative,
)
from bellcone.cones import Cone, enumerate_facets
from bellcone.intlinalg import primitive
from bellcone.scenarios import (
    CHSH,
    F1,
    F2,
    F3,
    I3322,
    BellInequality,
    Scenario,
    enumerate_vertices,
    evaluate,
    is_party_symmetric,
)

S22 = Scenario(2, 2)
S23 = Scenario(2, 3)
S33 = Scenario(3, 3)


def random_ineq(rng, s):
    while True:
        coeffs = tuple(rng.randint(-3, 3) for _ in range(s.vector_length))
        if any(coeffs):
            return BellInequality(s, coeffs)


def test_identity_and_group_order():
    assert apply(identity(S33), F1).coeffs == F1.coeffs
    assert group_order(S22) == 128
    assert group_order(S33) == 663552
    assert len(list(enumerate_group(S22))) == 128


def test_apply_composition_law():
    rng = random.Random(31)
    for s in (S22, S23):
        for _ in range(20):
            g1 = random_element(s, rng)
            g2 = random_element(s, rng)
            b = random_ineq(rng, s)
            lhs = apply(compose(g2, g1), b)
            rhs = apply(g2, apply(g1, b))
            assert lhs.coeffs == rhs.coeffs


def test_apply_inverse():
    rng = random.Random(32)
    for _ in range(20):
        g = random_element(S33, rng)
        b = random_ineq(rng, S33)
        assert apply(inverse(g), apply(g, b)).coeffs == primitive(b.coeffs)
        assert compose(inverse(g), g) == identity(S33)


def test_covariance_identity():
    rng = random.Random(33)
    verts = enumerate_vertices(S23)
    for _ in range(25):
        g = random_element(S23, rng)
        b = random_ineq(rng, S23)
        v = rng.choice(verts)
        scale = _primitive_scale(b)
        assert evaluate(apply(g, b), apply_to_vertex(g, v, S23)) * scale == evaluate(b, v)


def _primitive_scale(b):
    from math import gcd

    g = 0
    for x in b.coeffs:
        g = gcd(g, x)
    return g


def test_relabelings_permute_vertex_set():
    rng = random.Random(34)
    verts = set(enumerate_vertices(S33))
    for _ in range(5):
        g = random_element(S33, rng)
        mapped = {apply_to_vertex(g, v, S33) for v in verts}
        assert mapped == verts


def test_party_swap_fixes_symmetric_tensor():
    swap = Relabeling(
        (1, 0, 2),
        tuple(tuple(range(4)) for _ in range(3)),
        tuple((1, 1, 1, 1) for _ in range(3)),
    )
    for b in (F1, F2, F3):
        assert apply(swap, b).coeffs == b.coeffs


def test_i3322_symmetric_versions_related_by_flips():
    # outcome relabelings applied on both parties produce the other
    # symmetric variants of the inequality
    others = []
    for signs in itertools.product((1, -1), repeat=3):
        if signs == (1, 1, 1):
            continue
        g = Relabeling(
            (0, 1),
            ((0, 1, 2, 3), (0, 1, 2, 3)),
            ((1,) + signs, (1,) + signs),
        )
        image = apply(g, I3322)
        if is_party_symmetric(image) and image.coeffs != I3322.coeffs:
            others.append(image)
    assert others
    for image in others:
        assert canonical_form(image).coeffs == canonical_form(I3322).coeffs


def test_canonical_form_matches_orbit_scan_222():
    rng = random.Random(35)
    group = list(enumerate_group(S22))
    for _ in range(12):
        b = random_ineq(rng, S22)
        expected = min(apply(g, b).coeffs for g in group)
        assert canonical_form(b).coeffs == expected


def test_canonical_form_matches_orbit_scan_symmetric():
    # party-symmetric tensors take the single-pass shortcut
    rng = random.Random(40)
    group = list(enumerate_group(S22))
    for _ in range(8):
        classes = {}
        for rep in itertools.combinations_with_replacement(range(3), 2):
            classes[rep] = rng.randint(-3, 3)
        coeffs = [0] * 9
        for m in S22.multi_indices():
            coeffs[S22.index_of(m)] = classes[tuple(sorted(m))]
        if not any(coeffs):
            continue
        b = BellInequality(S22, tuple(coeffs))
        expected = min(apply(g, b).coeffs for g in group)
        assert canonical_form(b).coeffs == expected


def test_canonical_form_orbit_constant_and_idempotent():
    rng = random.Random(36)
    for s in (S23, S33):
        for _ in range(8):
            b = random_ineq(rng, s)
            canon = canonical_form(b)
            g = random_element(s, rng)
            assert canonical_form(apply(g, b)).coeffs == canon.coeffs
            assert canonical_form(canon).coeffs == canon.coeffs


def test_canonical_form_handles_tie_heavy_tensors():
    trivial = BellInequality(S33, (1,) + (0,) * 63)
    canon = canonical_form(trivial)
    assert canon.coeffs == trivial.coeffs


def test_chsh_variants_share_canonical_form():
    facets = enumerate_facets(Cone(9, enumerate_vertices(S22)))
    classes = {}
    for f in facets:
        canon = canonical_form(BellInequality(S22, f.normal))
        classes.setdefault(canon.coeffs, []).append(f)
    assert len(classes) == 2
    sizes = sorted(len(v) for v in classes.values())
    assert sizes == [8, 16]
    assert canonical_form(CHSH).coeffs in classes
    assert len(classes[canonical_form(CHSH).coeffs]) == 8


def test_orbit_size_divides_group_order():
    group = list(enumerate_group(S22))
    orbit = {apply(g, CHSH).coeffs for g in group}
    assert group_order(S22) % len(orbit) == 0


def test_f1_f2_f3_distinct_classes():
    canons = {canonical_form(b).coeffs for b in (F1, F2, F3)}
    assert len(canons) == 3


def test_invariant_key_is_orbit_invariant():
    rng = random.Random(37)
    for _ in range(15):
        b = random_ineq(rng, S33)
        g = random_element(S33, rng)
        assert invariant_key(b.primitive()) == invariant_key(apply(g, b))


def test_dedup():
    rng = random.Random(38)
    assert dedup([]) == []
    g = random_element(S33, rng)
    reps = dedup([F1, apply(g, F1)])
    assert len(reps) == 1
    reps = dedup([F1, F2, apply(g, F2), F3])
    assert len(reps) == 3


def test_symmetric_representative():
    rng = random.Random(39)
    for b in (F1, F2, F3, I3322):
        rep = symmetric_representative(b)
        assert is_party_symmetric(rep)
        # invariant under re-application through any diagonal image
        for signs in [(1, -1, 1), (-1, -1, -1)]:
            n = b.scenario.parties
            g = Relabeling(
                tuple(range(n)),
                tuple(tuple(range(b.scenario.settings + 1)) for _ in range(n)),
                tuple((1,) + signs[: b.scenario.settings] for _ in range(n)),
            )
            image = apply(g, b)
            assert symmetric_representative(image).coeffs == rep.coeffs
    del rng
