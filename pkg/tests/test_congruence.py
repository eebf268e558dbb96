import itertools

import pytest

from quotientopes.congruence import (
    ClassPartition,
    Congruence,
    NotAnIdealError,
    anti_sylvester_ideal,
    arc_diagram_of_class,
    arcs_conflict,
    classes_from_ideal,
    cube_ideal,
    full_ideal,
    ideal_from_partition,
    is_interval,
    is_lattice_congruence_oracle,
    is_noncrossing,
    quotient_covers,
    refines,
    sylvester_classes_rewriting,
    sylvester_ideal,
)
from quotientopes.permutations import Permutation, ScaleGuardError, all_permutations, identity
from quotientopes.shards import Shard, ShardIdeal, enumerate_upper_ideals

P = Permutation.parse


def blocks(*groups):
    return {frozenset(P(w) for w in g) for g in groups}


def test_classes_examples_n3():
    assert classes_from_ideal(full_ideal(3)).as_sets() == blocks(*[[w] for w in ("123", "132", "213", "231", "312", "321")])
    assert classes_from_ideal(sylvester_ideal(3)).as_sets() == blocks(["123"], ["213"], ["231"], ["321"], ["132", "312"])
    assert classes_from_ideal(cube_ideal(3)).as_sets() == blocks(["123"], ["321"], ["132", "312"], ["213", "231"])


def test_quotient_covers_examples():
    for c, size in ((full_ideal(3), 6), (sylvester_ideal(3), 5), (cube_ideal(3), 4)):
        q = quotient_covers(classes_from_ideal(c))
        assert len(q.elements) == size
        assert len(q.cover_edges) == size
        assert q.bottom == 0


def test_tamari_pentagon_shape():
    p = classes_from_ideal(sylvester_ideal(3))
    q = quotient_covers(p)
    up = {x: {y for a, y in q.cover_edges if a == x} for x in q.elements}
    # bottom has two covers, top is covered twice, the two chains have lengths 2 and 3
    assert len(up[q.bottom]) == 2
    assert sum(1 for a, b in q.cover_edges if b == q.top) == 2
    chains = []
    for start in up[q.bottom]:
        length, x = 1, start
        while x != q.top:
            (x,) = up[x]
            length += 1
        chains.append(length)
    assert sorted(chains) == [2, 3]


def test_sylvester_ideal_examples():
    assert sylvester_ideal(3).ideal.members == {Shard(1, 2), Shard(2, 3), Shard(1, 3, {2})}
    assert len(sylvester_ideal(4).ideal) == 6
    assert sylvester_ideal(2).ideal.members == {Shard(1, 2)}


def test_rewriting_examples():
    p = sylvester_classes_rewriting(3)
    assert len(p) == 5
    assert p.class_of[P("132")] == p.class_of[P("312")]
    assert len(sylvester_classes_rewriting(4)) == 14
    assert len(sylvester_classes_rewriting(2)) == 2
    with pytest.raises(ScaleGuardError):
        sylvester_classes_rewriting(8)


@pytest.mark.parametrize("n, count", [(2, 2), (3, 5), (4, 14), (5, 42), (6, 132)])
def test_sylvester_two_routes_agree(n, count):
    shard_route = classes_from_ideal(sylvester_ideal(n))
    rewriting_route = sylvester_classes_rewriting(n)
    assert len(shard_route) == len(rewriting_route) == count
    assert shard_route.as_sets() == rewriting_route.as_sets()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_anti_sylvester_is_catalan(n):
    assert len(classes_from_ideal(anti_sylvester_ideal(n))) == [1, 2, 5, 14, 42][n - 1]


def test_oracle_examples():
    assert is_lattice_congruence_oracle(classes_from_ideal(full_ideal(3)))
    assert is_lattice_congruence_oracle(classes_from_ideal(sylvester_ideal(3)))
    perms = all_permutations(3)
    merged = [[P("123"), P("321")]] + [[p] for p in perms if p not in (P("123"), P("321"))]
    assert not is_lattice_congruence_oracle(ClassPartition.from_blocks(3, merged))
    with pytest.raises(ScaleGuardError):
        is_lattice_congruence_oracle(classes_from_ideal(full_ideal(5)))


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part


def test_lattice_congruences_of_s3_are_exactly_the_ideals():
    perms = all_permutations(3)
    congruences = {
        frozenset(frozenset(b) for b in part)
        for part in set_partitions(perms)
        if is_lattice_congruence_oracle(ClassPartition.from_blocks(3, part))
    }
    from_ideals = {
        frozenset(classes_from_ideal(Congruence(I)).as_sets()) for I in enumerate_upper_ideals(3)
    }
    assert len(congruences) == 7
    assert congruences == from_ideals


def test_every_ideal_on_s4_gives_a_congruence(all_ideals_4):
    for I in all_ideals_4:
        p = classes_from_ideal(Congruence(I))
        assert is_lattice_congruence_oracle(p)
        assert ideal_from_partition(p) == I


def test_ideal_to_partition_is_injective(all_ideals_4):
    parts = {frozenset(classes_from_ideal(Congruence(I)).as_sets()) for I in all_ideals_4}
    assert len(parts) == len(all_ideals_4) == 60


def test_classes_are_intervals(all_ideals_4):
    for I in all_ideals_4:
        p = classes_from_ideal(Congruence(I))
        assert all(is_interval(p, k) for k in range(len(p)))


def test_classes_are_connected_through_glued_walls(all_ideals_4):
    from quotientopes.congruence import walls

    for I in all_ideals_4[::5]:
        c = Congruence(I)
        p = classes_from_ideal(c)
        for k, block in enumerate(p.classes):
            seen, frontier = {block[0]}, [block[0]]
            glued = [(w.lower, w.upper) for w in walls(4) if w.shard not in I]
            while frontier:
                x = frontier.pop()
                for a, b in glued:
                    for u, v in ((a, b), (b, a)):
                        if u == x and v not in seen:
                            seen.add(v)
                            frontier.append(v)
            assert seen == set(block)


def test_monotone_refinement(all_ideals_4):
    parts = {I.members: classes_from_ideal(Congruence(I)) for I in all_ideals_4}
    for A, B in itertools.product(all_ideals_4, repeat=2):
        if A.members <= B.members:
            assert refines(parts[B.members], parts[A.members])


def test_quotient_poset_has_unique_bottom_and_top(all_ideals_4):
    for I in all_ideals_4:
        q = quotient_covers(classes_from_ideal(Congruence(I)))
        lowers = {a for a, _ in q.cover_edges}
        uppers = {b for _, b in q.cover_edges}
        minima = [x for x in q.elements if x not in uppers]
        maxima = [x for x in q.elements if x not in lowers]
        assert minima == [q.bottom] and maxima == [q.top]


def test_arc_diagram_examples():
    c = full_ideal(3)
    p = classes_from_ideal(c)
    assert arc_diagram_of_class(c, p, p.class_of[identity(3)]) == frozenset()
    assert arc_diagram_of_class(c, p, p.class_of[P("321")]) == {Shard(1, 2), Shard(2, 3)}
    c = sylvester_ideal(3)
    p = classes_from_ideal(c)
    assert arc_diagram_of_class(c, p, p.class_of[P("132")]) == {Shard(2, 3)}


def test_arc_conflicts():
    assert arcs_conflict(Shard(1, 3), Shard(1, 4))  # common left endpoint
    assert arcs_conflict(Shard(2, 4), Shard(1, 4, {2, 3}))  # common right endpoint
    assert not arcs_conflict(Shard(1, 2), Shard(2, 3))  # touching end to start
    assert not arcs_conflict(Shard(1, 4), Shard(2, 3))  # nested, inner arc under nothing
    assert arcs_conflict(Shard(1, 4, {2}), Shard(2, 3))
    assert arcs_conflict(Shard(1, 3), Shard(2, 4))
    assert not arcs_conflict(Shard(1, 3, {2}), Shard(2, 4))
    assert not arcs_conflict(Shard(1, 5, {3}), Shard(2, 4, {3}))
    assert arcs_conflict(Shard(1, 5, {3}), Shard(2, 4))


def test_arc_diagrams_are_noncrossing(all_ideals_4):
    for I in all_ideals_4:
        c = Congruence(I)
        p = classes_from_ideal(c)
        for k in range(len(p)):
            arcs = arc_diagram_of_class(c, p, k)
            assert arcs <= I.members
            assert is_noncrossing(arcs)


def test_full_ideal_arc_diagrams_are_distinct():
    # canonical join representations: distinct regions get distinct diagrams
    for n in (3, 4):
        c = full_ideal(n)
        p = classes_from_ideal(c)
        diagrams = {arc_diagram_of_class(c, p, k) for k in range(len(p))}
        assert len(diagrams) == len(p)


def test_non_ideal_is_rejected():
    with pytest.raises(NotAnIdealError) as info:
        Congruence(ShardIdeal(3, frozenset({Shard(1, 3, {2})})))
    assert info.value.member == Shard(1, 3, {2})
    assert info.value.forcer.is_basic
