import math
from fractions import Fraction

import pytest

from chipfire.chip import point_configuration
from chipfire.enumeration import (all_configurations, composition_count, count_debt_reachable,
                                  count_reachable, debt_reachable_configurations, simplex_lattice_count,
                                  simplex_spec, sweep)
from chipfire.graph import make_complete, make_cycle, make_path, random_connected_graph
from chipfire.reach import ResourceLimitError, block_partition, debt_reachability_vector

C3 = make_cycle(3)


def solve_count(g, conf):
    # oracle: one exact linear solve per candidate, no residue labels involved
    return sum(debt_reachability_vector(g, conf, b) is not None
               for b in all_configurations(g.n, sum(conf)))


def test_all_configurations():
    assert list(all_configurations(2, 3)) == [(3, 0), (2, 1), (1, 2), (0, 3)]
    assert list(all_configurations(3, 0)) == [(0, 0, 0)]
    for n in range(1, 5):
        for c in range(6):
            confs = list(all_configurations(n, c))
            assert len(confs) == len(set(confs)) == composition_count(n, c)
            assert confs == sorted(confs, reverse=True)


def test_debt_count_examples():
    assert count_debt_reachable(C3, (3, 0, 0)) == 4
    assert count_debt_reachable(C3, (4, 0, 0)) == 5
    assert count_debt_reachable(make_cycle(5), (3, 0, 0, 0, 0)) == 7
    assert count_debt_reachable(make_path(4), (5, 0, 0, 0)) == math.comb(8, 3)


def test_debt_count_rejects_bad_source():
    with pytest.raises(ValueError):
        count_debt_reachable(C3, (1, -1, 0))
    with pytest.raises(ResourceLimitError):
        count_debt_reachable(make_cycle(6), (40, 0, 0, 0, 0, 0), max_compositions=1000)


def test_streamed_class_is_the_solve_class():
    g = make_cycle(4)
    got = set(debt_reachable_configurations(g, (6, 0, 0, 0)))
    want = {b for b in all_configurations(4, 6) if debt_reachability_vector(g, (6, 0, 0, 0), b)}
    assert got == want


def test_simplex_examples():
    assert simplex_lattice_count(C3, 0, 3) == 4
    assert simplex_lattice_count(C3, 0, 5) == 7
    assert simplex_lattice_count(C3, 0, 0) == 1
    with pytest.raises(ValueError):
        simplex_lattice_count(C3, 0, -1)


def test_simplex_vertices_satisfy_constraints():
    spec = simplex_spec(make_cycle(4), 0, 8)
    for v in spec.vertices():
        for row, k in zip(spec.rows, spec.constants):
            assert k + sum(a * x for a, x in zip(row, v)) >= 0


def test_count_reachable_examples():
    assert count_reachable(C3, (3, 0, 0)) == 2
    assert count_reachable(C3, (4, 0, 0)) == 5
    assert count_reachable(C3, (1, 0, 0)) == 1


def _graphs_up_to_five(rng):
    return [make_cycle(3), make_cycle(4), make_cycle(5), make_path(4), make_complete(4),
            random_connected_graph(4, rng), random_connected_graph(5, rng)]


def test_three_counting_methods_agree(rng):
    for g in _graphs_up_to_five(rng):
        cmax = 15 if g.n <= 4 else 10
        for c in range(cmax + 1):
            for source in {0, g.n - 1}:
                conf = point_configuration(g.n, c, source)
                a = count_debt_reachable(g, conf)
                assert a == simplex_lattice_count(g, source, c)
                if c <= 8:
                    assert a == solve_count(g, conf)


def test_block_sizes_sum_and_counts_monotone(rng):
    for g in _graphs_up_to_five(rng):
        prev = 0
        for c in range(0, 12):
            part = block_partition(g, c)
            assert part.total == composition_count(g.n, c)
            debt = count_debt_reachable(g, point_configuration(g.n, c))
            assert debt in part.sizes.values()
            assert debt >= prev
            prev = debt


def test_reachable_never_exceeds_debt_and_ratio_grows():
    g = make_cycle(4)
    ratios = []
    for c in range(1, 25):
        conf = point_configuration(4, c)
        r, d = count_reachable(g, conf), count_debt_reachable(g, conf)
        assert r <= d
        ratios.append(Fraction(r, d))
    assert ratios[-1] > Fraction(9, 10) > ratios[3]


@pytest.mark.parametrize("n", [3, 5])
def test_prime_cycle_offsets_depend_on_residue_only(n):
    g = make_cycle(n)
    offsets = {}
    for c in range(n, 31):
        diff = count_debt_reachable(g, point_configuration(n, c)) - Fraction(math.comb(c + n - 1, n - 1), n)
        offsets.setdefault(c % n, set()).add(diff)
    assert all(len(v) == 1 for v in offsets.values())
    assert offsets[0] == {Fraction(n - 1, n)}
    assert all(offsets[r] == {0} for r in range(1, n))


def test_four_cycle_offsets_vary_within_a_class():
    g = make_cycle(4)
    counts = {c: count_debt_reachable(g, point_configuration(4, c)) for c in (4, 6, 8, 10, 12, 16)}
    assert counts == {4: 10, 6: 22, 8: 43, 10: 73, 12: 116, 16: 245}
    offs = [counts[c] - Fraction(math.comb(c + 3, 3), 4) for c in (4, 8, 12, 16)]
    assert offs == [Fraction(5, 4), Fraction(7, 4), Fraction(9, 4), Fraction(11, 4)]
    offs = [counts[c] - Fraction(math.comb(c + 3, 3), 4) for c in (6, 10)]
    assert offs == [Fraction(1), Fraction(3, 2)]


def test_six_cycle_counts():
    g = make_cycle(6)
    assert [count_debt_reachable(g, point_configuration(6, c)) for c in (6, 9, 12)] == [80, 335, 1038]
    assert simplex_lattice_count(g, 0, 9) == 335


def test_sweep_examples():
    recs = sweep(C3, 0, 0, 6, ("debt",))
    assert [r.debt_count for r in recs] == [1, 1, 2, 4, 5, 7, 10]
    assert [r.c for r in recs] == list(range(7))
    rec = sweep(C3, 0, 3, 3, ("debt", "reachable"))[0]
    assert (rec.debt_count, rec.reachable_count, rec.block_count) == (4, 2, None)
    assert all(r.block_count == 1 for r in sweep(make_path(2), 0, 0, 5, ("blocks",)))


def test_sweep_rejects_bad_arguments():
    with pytest.raises(ValueError):
        sweep(C3, 0, 5, 2)
    with pytest.raises(ValueError):
        sweep(C3, 0, 0, 2, ("nonsense",))
    with pytest.raises(ValueError):
        sweep(C3, 3, 0, 2)


def test_sweep_parallel_matches_serial():
    strip = lambda recs: [(r.c, r.debt_count, r.reachable_count, r.block_count) for r in recs]  # noqa: E731
    g = make_cycle(4)
    modes = ("debt", "reachable", "blocks")
    assert strip(sweep(g, 0, 0, 9, modes, jobs=2)) == strip(sweep(g, 0, 0, 9, modes, jobs=1))
