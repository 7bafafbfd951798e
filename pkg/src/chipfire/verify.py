"""Named check bundles behind ``chipfire verify``.

Each check returns a list of CheckResult; a bundle passes when all of them
do. Bounds are arguments so the same code serves quick CLI runs and the
larger acceptance runs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .chip import apply_firing_vector, fire, point_configuration
from .enumeration import (all_configurations, count_debt_reachable, count_reachable,
                          simplex_lattice_count)
from .graph import (Graph, make_complete, make_cycle, make_path, random_connected_graph,
                    spanning_tree_count)
from .reach import (block_partition, debt_reachability_vector, is_reachable, most_fired,
                    residue_label)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def c3_debt_formula(c: int) -> int:
    """Debt-reachable count from (c, 0, 0) on the triangle."""
    k, r = divmod(c, 3)
    num = {0: 3 * k * k + 3 * k + 2, 1: 3 * k * k + 5 * k + 2, 2: 3 * k * k + 7 * k + 4}[r]
    return num // 2


def c3_reachable_formula(c: int) -> int:
    """Reachable count from (c, 0, 0) on the triangle, c >= 1."""
    k, r = divmod(c, 3)
    num = {0: 3 * k * k + 3 * k - 2, 1: 3 * k * k + 5 * k + 2, 2: 3 * k * k + 7 * k + 4}[r]
    return num // 2


def _mismatches(pairs) -> str:
    bad = [f"c={c}: got {got}, want {want}" for c, got, want in pairs if got != want]
    return "; ".join(bad[:5])


def check_thm1(cmax: int = 30) -> list[CheckResult]:
    g = make_cycle(3)
    rows = [(c, count_debt_reachable(g, (c, 0, 0)), c3_debt_formula(c)) for c in range(cmax + 1)]
    simplex = [(c, simplex_lattice_count(g, 0, c), c3_debt_formula(c)) for c in range(cmax + 1)]
    return [
        CheckResult("C3 debt counts (residue filter)", not _mismatches(rows),
                    _mismatches(rows) or f"c=0..{cmax}"),
        CheckResult("C3 debt counts (simplex lattice points)", not _mismatches(simplex),
                    _mismatches(simplex) or f"c=0..{cmax}"),
    ]


def check_thm3(cmax: int = 30) -> list[CheckResult]:
    g = make_cycle(3)
    rows, gaps = [], []
    for c in range(1, cmax + 1):
        reach = count_reachable(g, (c, 0, 0))
        debt = count_debt_reachable(g, (c, 0, 0))
        rows.append((c, reach, c3_reachable_formula(c)))
        gaps.append((c, debt - reach, 2 if c % 3 == 0 else 0))
    return [
        CheckResult("C3 reachable counts", not _mismatches(rows), _mismatches(rows) or f"c=1..{cmax}"),
        CheckResult("C3 debt minus reachable", not _mismatches(gaps), _mismatches(gaps)),
    ]


def check_thm8(ns=range(3, 7), cmax: int = 15) -> list[CheckResult]:
    out = []
    for n in ns:
        counts = [(c, block_partition(make_cycle(n), c).block_count, n) for c in range(1, cmax + 1)]
        out.append(CheckResult(f"C{n} block count is {n}", not _mismatches(counts),
                               _mismatches(counts) or f"c=1..{cmax}"))
    return out


def check_thm9(ns=range(3, 9), cmax: int = 20) -> list[CheckResult]:
    out = []
    for n in ns:
        g = make_cycle(n)
        bad = []
        for c in range(1, cmax + 1):
            labels = {residue_label(g, point_configuration(n, c, i)) for i in range(n)}
            distinct = len(labels) == n
            if distinct != (math.gcd(c, n) == 1):
                bad.append(c)
        out.append(CheckResult(f"C{n} point configurations distinct iff gcd(c, n) = 1", not bad,
                               f"fails at c={bad}" if bad else f"c=1..{cmax}"))
    return out


def check_thm10(ns=range(3, 7), cmax: int = 25) -> list[CheckResult]:
    out = []
    for n in ns:
        g = make_cycle(n)
        rows = [(c, Fraction(count_debt_reachable(g, point_configuration(n, c))),
                 Fraction(math.comb(c + n - 1, n - 1), n))
                for c in range(1, cmax + 1) if math.gcd(c, n) == 1]
        out.append(CheckResult(f"C{n} debt count = binom(c+n-1, n-1)/n for gcd(c, n) = 1",
                               not _mismatches(rows), _mismatches(rows)))
    return out


def check_thm10_5(ns=range(3, 7), cmax: int = 30) -> list[CheckResult]:
    out = []
    for n in ns:
        g = make_cycle(n)
        offsets: dict[int, set[Fraction]] = {}
        for c in range(n, cmax + 1):
            diff = count_debt_reachable(g, point_configuration(n, c)) - Fraction(
                math.comb(c + n - 1, n - 1), n)
            offsets.setdefault(c % n, set()).add(diff)
        bad = {r: [str(f) for f in sorted(v)] for r, v in offsets.items() if len(v) > 1}
        shown = {r: str(next(iter(v))) for r, v in sorted(offsets.items())}
        out.append(CheckResult(f"C{n} offset from binom/n depends only on c mod {n}", not bad,
                               f"varying offsets {bad}" if bad else f"offsets {shown}"))
    return out


def random_instance(rng: random.Random, max_n: int = 6, max_c: int = 12):
    n = rng.randint(2, max_n)
    g = rng.choice([random_connected_graph(n, rng), make_path(n),
                    make_complete(n)] + ([make_cycle(n)] if n >= 3 else []))
    c = rng.randint(0, max_c)
    conf = rng.choice(list(all_configurations(n, c)))
    return g, conf


def greedy_random_order(g: Graph, start, budget, rng: random.Random):
    """One fire at a time, choosing uniformly among eligible budgeted vertices."""
    chips, left = list(start), list(budget)
    while True:
        eligible = [v for v in range(g.n) if left[v] and chips[v] >= g.degrees[v]]
        if not eligible:
            return tuple(chips), tuple(left)
        v = rng.choice(eligible)
        chips = list(fire(g, chips, v))
        left[v] -= 1


def check_thm13(trials: int = 200, seed: int = 0, orders: int = 10) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        g, conf = random_instance(rng)
        budget = tuple(rng.randint(0, 4) for _ in range(g.n))
        ref = most_fired(g, conf, budget)
        for _ in range(orders):
            if greedy_random_order(g, conf, budget, rng) != (ref.configuration, ref.remaining):
                bad += 1
                break
    return [CheckResult("most-fired configuration independent of firing order", bad == 0,
                        f"{bad}/{trials} trials differ" if bad else f"{trials} trials x {orders} orders")]


def check_lem11(trials: int = 200, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = tested = 0
    while tested < trials:
        g, a = random_instance(rng, max_c=10)
        # a random debt-reachable partner: fire a random vector, retry if in debt
        x = [rng.randint(0, 3) for _ in range(g.n)]
        b = apply_firing_vector(g, a, x)
        if min(b) < 0:
            continue
        tested += 1
        if debt_reachability_vector(g, b, a) is None:
            bad += 1
            continue
        shifted_a = tuple(v + d for v, d in zip(a, g.degrees))
        shifted_b = tuple(v + d for v, d in zip(b, g.degrees))
        if not is_reachable(g, shifted_b, shifted_a):
            bad += 1
    return [CheckResult("degree shift turns debt-reachable into reachable", bad == 0,
                        f"{bad}/{trials} failures" if bad else f"{trials} trials")]


def check_blocks(cmax: int = 15, seed: int = 5) -> list[CheckResult]:
    out = []
    for n in range(2, 6):
        counts = [(c, block_partition(make_path(n), c).block_count, 1) for c in range(cmax + 1)]
        out.append(CheckResult(f"P{n} has a single block", not _mismatches(counts),
                               _mismatches(counts)))
    rng = random.Random(seed)
    graphs = [make_complete(4), random_connected_graph(5, rng)]
    for g in graphs:
        kappa = spanning_tree_count(g)
        seq = [block_partition(g, c).block_count for c in range(cmax + 1)]
        monotone = all(a <= b for a, b in zip(seq, seq[1:]))
        bounded = max(seq) <= kappa
        out.append(CheckResult(f"{g.name or g.edge_list()} block counts nondecreasing and <= kappa={kappa}",
                               monotone and bounded, f"b_0..b_{cmax} = {seq}"))
    return out


def check_triv3(trials: int = 200, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    bad_comm = bad_ones = 0
    for _ in range(trials):
        g, conf = random_instance(rng)
        i, j = rng.randrange(g.n), rng.randrange(g.n)
        if fire(g, fire(g, conf, i, "general"), j, "general") != fire(
                g, fire(g, conf, j, "general"), i, "general"):
            bad_comm += 1
        x = [rng.randint(-3, 3) for _ in range(g.n)]
        if apply_firing_vector(g, conf, x) != apply_firing_vector(g, conf, [v + 1 for v in x]):
            bad_ones += 1
    return [
        CheckResult("general fires commute", bad_comm == 0, f"{bad_comm} failures" if bad_comm else ""),
        CheckResult("firing every vertex once changes nothing", bad_ones == 0,
                    f"{bad_ones} failures" if bad_ones else ""),
    ]


def check_thm2(cmax: int = 15) -> list[CheckResult]:
    g = make_cycle(3)
    bad = []
    for c in range(1, cmax + 1):
        start = (c, 0, 0)
        perms = {(c, 0, 0), (0, c, 0), (0, 0, c)}
        for conf in all_configurations(3, c):
            if debt_reachability_vector(g, start, conf) is not None and not is_reachable(g, start, conf):
                if conf not in perms:
                    bad.append((c, conf))
    return [CheckResult("C3 debt-reachable but unreachable targets are permutations of (c,0,0)",
                        not bad, f"counterexamples {bad[:5]}" if bad else f"c=1..{cmax}")]


CHECKS: dict[str, Callable[..., list[CheckResult]]] = {
    "thm1": check_thm1,
    "thm2": check_thm2,
    "thm3": check_thm3,
    "thm8": check_thm8,
    "thm9": check_thm9,
    "thm10": check_thm10,
    "thm10_5": check_thm10_5,
    "thm13": check_thm13,
    "lem11": check_lem11,
    "triv3": check_triv3,
    "blocks": check_blocks,
}

