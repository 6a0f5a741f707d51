"""Admissible sequences and generic-chaining complexity functionals.

An admissible set sequence (T_n) has a single point at level 0 and at most
2^(2^n) points at level n.  The order-p functional of a sequence truncates
the weighted sum at level l = floor(log2 p):

    sup_t  sum_{n >= l}  2^(n/alpha) * d(t, T_n).

The partition variant uses refining partitions (A_n), starting from the
trivial partition {T}, and sums cell diameters 2^(n/alpha) * diam(A_n(t)).
Exact values come from exhaustive search over a truncated level range: once
2^(2^n) reaches |T| the optimal tail is the whole space (resp. the singleton
partition) at zero cost, so only finitely many levels are free.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError, MetricValidationError
from .metric import FiniteMetricSpace

__all__ = [
    "AdmissibleSequence",
    "admissible_sets",
    "admissible_partitions",
    "level_capacity",
    "truncation_level",
    "GammaEstimate",
    "functional_value",
    "greedy_admissible_sequence",
    "gamma_exact",
    "gamma_greedy",
    "gamma_prime",
    "merge_partitions",
    "GAMMA_EXACT_CAP",
]

GAMMA_EXACT_CAP = 6


def level_capacity(n: int) -> int:
    """Cardinality cap at level n: 1 at level 0, else 2^(2^n)."""
    if n < 0:
        raise DomainError(f"level must be nonnegative, got {n}")
    if n == 0:
        return 1
    if n >= 6:
        return 1 << 64  # effectively unbounded for finite spaces here
    return 1 << (1 << n)


def truncation_level(p: float) -> int:
    """l = floor(log2 p); the order-p functional sums levels n >= l."""
    if p < 1:
        raise DomainError(f"order p must be >= 1, got {p}")
    return int(math.floor(math.log2(p)))


@dataclass(frozen=True)
class AdmissibleSequence:
    """A validated admissible set or partition sequence over a fixed space.

    levels holds, per stored level n, either a sorted tuple of point indices
    (set kind) or a tuple of disjoint sorted cells covering the space
    (partition kind).  Beyond the stored levels the sequence repeats its last
    level.  projections[n][t] is the chosen representative of t at level n:
    the nearest point of T_n (ties to the lowest index) for set sequences,
    the lowest-index member of t's cell for partition sequences.
    """

    kind: str  # "set" | "partition"
    levels: tuple
    projections: tuple[tuple[int, ...], ...]
    space: FiniteMetricSpace

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, n: int):
        """Level n with the repeat-last convention."""
        return self.levels[min(n, self.depth - 1)]

    def covers_space(self) -> bool:
        """True when the final level leaves every point at distance zero."""
        if self.kind == "set":
            return bool(self.space.point_to_set(self.levels[-1]).max() == 0.0)
        return all(self.space.subset_diameter(cell) == 0.0 for cell in self.levels[-1])


def _check_space(space: FiniteMetricSpace, seq: AdmissibleSequence) -> None:
    if seq.space is not space and not (
        seq.space.labels == space.labels and np.array_equal(seq.space.dist, space.dist)
    ):
        raise MetricValidationError("sequence was built over a different space")


def admissible_sets(space: FiniteMetricSpace, levels) -> AdmissibleSequence:
    """Validate and wrap a set sequence (|T_0| = 1, |T_n| <= 2^(2^n))."""
    norm_levels = []
    for n, lvl in enumerate(levels):
        pts = tuple(sorted(set(int(i) for i in lvl)))
        if not pts:
            raise DomainError(f"level {n} is empty")
        if any(i < 0 or i >= space.size for i in pts):
            raise DomainError(f"level {n} has an out-of-range point index")
        if len(pts) > level_capacity(n):
            raise DomainError(
                f"level {n} holds {len(pts)} points, cap is {level_capacity(n)}"
            )
        norm_levels.append(pts)
    if not norm_levels:
        raise DomainError("sequence needs at least one level")
    projections = tuple(
        tuple(int(i) for i in space.nearest_in(lvl)) for lvl in norm_levels
    )
    return AdmissibleSequence(
        kind="set", levels=tuple(norm_levels), projections=projections, space=space
    )


def _validate_partition(space: FiniteMetricSpace, cells, n: int) -> tuple:
    norm = []
    seen: set[int] = set()
    for cell in cells:
        c = tuple(sorted(set(int(i) for i in cell)))
        if not c:
            raise DomainError(f"level {n} has an empty cell")
        if any(i < 0 or i >= space.size for i in c):
            raise DomainError(f"level {n} has an out-of-range point index")
        if seen & set(c):
            raise DomainError(f"level {n} cells overlap")
        seen |= set(c)
        norm.append(c)
    if seen != set(range(space.size)):
        raise DomainError(f"level {n} does not cover the space")
    cap = level_capacity(n)
    if len(norm) > cap:
        raise DomainError(f"level {n} holds {len(norm)} cells, cap is {cap}")
    return tuple(sorted(norm))


def _refines(finer, coarser) -> bool:
    coarse_sets = [set(c) for c in coarser]
    return all(any(set(c) <= cs for cs in coarse_sets) for c in finer)


def admissible_partitions(space: FiniteMetricSpace, levels) -> AdmissibleSequence:
    """Validate a partition sequence: A_0 = {T}, refining, |A_n| <= 2^(2^n)."""
    norm_levels = [_validate_partition(space, lvl, n) for n, lvl in enumerate(levels)]
    if not norm_levels:
        raise DomainError("sequence needs at least one level")
    if len(norm_levels[0]) != 1:
        raise DomainError("level 0 must be the trivial partition {T}")
    for n in range(1, len(norm_levels)):
        if not _refines(norm_levels[n], norm_levels[n - 1]):
            raise DomainError(f"level {n} does not refine level {n - 1}")
    projections = []
    for lvl in norm_levels:
        rep = [0] * space.size
        for cell in lvl:
            r = min(cell)
            for i in cell:
                rep[i] = r
        projections.append(tuple(rep))
    return AdmissibleSequence(
        kind="partition",
        levels=tuple(norm_levels),
        projections=tuple(projections),
        space=space,
    )


@dataclass(frozen=True)
class GammaEstimate:
    """A value of the order-p chaining functional with its provenance."""

    alpha: float
    p: float
    l: int
    value: float
    mode: str  # "exact" | "greedy" | "entropy"
    sequence: AdmissibleSequence | None = None


def functional_value(
    space: FiniteMetricSpace, seq: AdmissibleSequence, alpha: float, p: float = 1.0
) -> float:
    """sup_t sum_{n >= l} 2^(n/alpha) d(t, T_n), or cell-diameter analog.

    Returns inf when the final stored level does not reduce every point to
    distance zero (the repeated tail would diverge).
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    _check_space(space, seq)
    l = truncation_level(p)
    if not seq.covers_space():
        return math.inf
    per_point = np.zeros(space.size)
    for n in range(max(l, 0), seq.depth):
        w = 2.0 ** (n / alpha)
        if seq.kind == "set":
            per_point += w * space.point_to_set(seq.level(n))
        else:
            diam = np.empty(space.size)
            for cell in seq.level(n):
                dval = space.subset_diameter(cell)
                for i in cell:
                    diam[i] = dval
            per_point += w * diam
    return float(per_point.max())


def greedy_admissible_sequence(
    space: FiniteMetricSpace, alpha: float = 2.0, p: float = 1.0
) -> AdmissibleSequence:
    """Farthest-point set sequence started at the Chebyshev center.

    Level n grows the previous level by repeated farthest-point insertion
    (ties to the lowest index) until its cardinality cap or until every point
    is at distance zero; the construction itself does not depend on alpha or
    p, which only weight the resulting functional.
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    truncation_level(p)  # validates p
    current = [space.chebyshev_center()]
    dmin = space.dist[current[0]].copy()
    levels = [tuple(current)]
    n = 0
    while dmin.max() > 0.0:
        n += 1
        cap = min(level_capacity(n), space.size)
        while len(current) < cap and dmin.max() > 0.0:
            nxt = int(np.argmax(dmin))
            current.append(nxt)
            dmin = np.minimum(dmin, space.dist[nxt])
        levels.append(tuple(sorted(current)))
    return admissible_sets(space, levels)


def gamma_greedy(
    space: FiniteMetricSpace, alpha: float, p: float = 1.0
) -> GammaEstimate:
    """Upper estimate of gamma from the greedy sequence."""
    seq = greedy_admissible_sequence(space, alpha, p)
    val = functional_value(space, seq, alpha, p)
    return GammaEstimate(alpha=float(alpha), p=float(p), l=truncation_level(p),
                         value=val, mode="greedy", sequence=seq)


def _subsets_up_to(indices, max_size: int):
    for k in range(1, max_size + 1):
        yield from itertools.combinations(indices, k)


def gamma_exact(
    space: FiniteMetricSpace,
    alpha: float,
    p: float = 1.0,
    exact_cap: int = GAMMA_EXACT_CAP,
) -> GammaEstimate:
    """Exact order-p functional by exhaustive admissible-sequence search.

    Levels from the first n with 2^(2^n) >= |T| onward are fixed to the whole
    space (free and optimal), so only levels l..n*-1 are enumerated.
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    n = space.size
    if n > exact_cap:
        raise CapacityError(
            f"exact gamma search capped at {exact_cap} points, space has {n}"
        )
    l = truncation_level(p)
    n_star = 0
    while level_capacity(n_star) < n:
        n_star += 1
    all_points = tuple(range(n))

    free_levels = list(range(l, n_star))
    if not free_levels:
        # the truncated sum can start at a level that may hold all of T
        levels = [(0,)] * l + [all_points]
        seq = admissible_sets(space, levels)
        return GammaEstimate(alpha=float(alpha), p=float(p), l=l, value=0.0,
                             mode="exact", sequence=seq)

    choices_per_level = []
    for lvl in free_levels:
        cap = min(level_capacity(lvl), n)
        choices = list(_subsets_up_to(all_points, cap))
        choices_per_level.append(choices)

    # distance of every point to every candidate subset, per level
    dists_per_level = [
        {sub: space.point_to_set(sub) for sub in choices}
        for choices in choices_per_level
    ]
    weights = [2.0 ** (lvl / alpha) for lvl in free_levels]

    best_val = math.inf
    best_combo = None
    for combo in itertools.product(*choices_per_level):
        acc = np.zeros(n)
        for w, sub, table in zip(weights, combo, dists_per_level):
            acc += w * table[sub]
        val = float(acc.max())
        if val < best_val:
            best_val = val
            best_combo = combo
    # levels below l never enter the sum; a singleton keeps them admissible
    levels = [best_combo[0][:1]] * l
    levels.extend(best_combo)
    levels.append(all_points)
    seq = admissible_sets(space, levels)
    return GammaEstimate(alpha=float(alpha), p=float(p), l=l, value=best_val,
                         mode="exact", sequence=seq)


def _partitions_up_to(items: tuple[int, ...], max_blocks: int):
    """All set partitions of items into at most max_blocks blocks."""
    if not items:
        yield ()
        return

    def rec(idx: int, blocks: list[list[int]]):
        if idx == len(items):
            yield tuple(tuple(b) for b in blocks)
            return
        x = items[idx]
        for b in blocks:
            b.append(x)
            yield from rec(idx + 1, blocks)
            b.pop()
        if len(blocks) < max_blocks:
            blocks.append([x])
            yield from rec(idx + 1, blocks)
            blocks.pop()

    yield from rec(1, [[items[0]]])


def gamma_prime(
    space: FiniteMetricSpace,
    alpha: float,
    mode: str = "exact",
    exact_cap: int = GAMMA_EXACT_CAP,
) -> GammaEstimate:
    """Partition-sequence functional sup_t sum_n 2^(n/alpha) diam(A_n(t)).

    Exact mode enumerates refining chains; as soon as a level may hold |T|
    cells the singleton partition finishes the chain at zero cost.  Greedy
    mode repeatedly splits the widest cell by farthest-pair seeding.
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    n = space.size
    singletons = tuple((i,) for i in range(n))
    trivial = (tuple(range(n)),)

    if mode == "greedy":
        levels = [trivial]
        current = trivial
        lvl = 0
        while any(space.subset_diameter(c) > 0 for c in current):
            lvl += 1
            cap = min(level_capacity(lvl), n)
            cells = [list(c) for c in current]
            while len(cells) < cap:
                widths = [space.subset_diameter(c) for c in cells]
                w = max(widths)
                if w == 0:
                    break
                ci = widths.index(w)
                cell = cells[ci]
                sub = np.ix_(cell, cell)
                d = space.dist[sub]
                a, b = np.unravel_index(int(np.argmax(d)), d.shape)
                seed_a, seed_b = cell[a], cell[b]
                if seed_a > seed_b:
                    seed_a, seed_b = seed_b, seed_a
                left = [i for i in cell
                        if space.dist[i, seed_a] <= space.dist[i, seed_b]]
                right = [i for i in cell if i not in left]
                cells[ci:ci + 1] = [left, right]
            current = tuple(sorted(tuple(sorted(c)) for c in cells))
            levels.append(current)
        seq = admissible_partitions(space, levels)
        val = functional_value(space, seq, alpha, 1.0)
        return GammaEstimate(alpha=float(alpha), p=1.0, l=0, value=val,
                             mode="greedy", sequence=seq)

    if mode != "exact":
        raise DomainError(f"unknown gamma_prime mode {mode!r}")
    if n > exact_cap:
        raise CapacityError(
            f"exact gamma' search capped at {exact_cap} points, space has {n}"
        )

    best_val = math.inf
    best_chain: list | None = None

    def diam_vec(partition) -> np.ndarray:
        out = np.empty(n)
        for cell in partition:
            dval = space.subset_diameter(cell)
            for i in cell:
                out[i] = dval
        return out

    def rec(level: int, current, acc: np.ndarray, chain: list) -> None:
        nonlocal best_val, best_chain
        if float(acc.max()) >= best_val:
            return
        if all(space.subset_diameter(c) == 0 for c in current):
            if float(acc.max()) < best_val:
                best_val = float(acc.max())
                best_chain = list(chain)
            return
        nxt_cap = min(level_capacity(level + 1), n)
        if nxt_cap >= n:
            # singletons are admissible and free from here on
            total = acc  # remaining contributions are zero
            if float(total.max()) < best_val:
                best_val = float(total.max())
                best_chain = chain + [singletons]
            return
        w = 2.0 ** ((level + 1) / alpha)
        seen = set()
        for refined in _refining_partitions(space, current, nxt_cap):
            if refined in seen:
                continue
            seen.add(refined)
            rec(level + 1, refined, acc + w * diam_vec(refined), chain + [refined])

    acc0 = diam_vec(trivial)  # 2^0 weight
    rec(0, trivial, acc0, [trivial])
    seq = admissible_partitions(space, best_chain)
    return GammaEstimate(alpha=float(alpha), p=1.0, l=0, value=best_val,
                         mode="exact", sequence=seq)


def _refining_partitions(space: FiniteMetricSpace, coarse, max_blocks: int):
    """All partitions refining `coarse` with at most max_blocks blocks."""
    per_cell_options = []
    for cell in coarse:
        per_cell_options.append(
            [list(part) for part in _partitions_up_to(cell, len(cell))]
        )
    for combo in itertools.product(*per_cell_options):
        blocks: list[tuple[int, ...]] = []
        for part in combo:
            blocks.extend(tuple(b) for b in part)
        if len(blocks) <= max_blocks:
            yield tuple(sorted(blocks))


def merge_partitions(
    first: AdmissibleSequence, second: AdmissibleSequence
) -> AdmissibleSequence:
    """Intersect two partition sequences with a one-level shift.

    The merged level n (n >= 1) consists of the nonempty intersections of the
    inputs' level n-1 cells; level 0 is the trivial partition.  The cell count
    is at most 2^(2^(n-1)) * 2^(2^(n-1)) = 2^(2^n), so the result is again
    admissible (revalidated on construction).
    """
    if first.kind != "partition" or second.kind != "partition":
        raise DomainError("merge_partitions expects two partition sequences")
    _check_space(first.space, second)
    space = first.space
    depth = max(first.depth, second.depth) + 1
    levels = [(tuple(range(space.size)),)]
    for lvl in range(1, depth):
        cells = []
        for b in first.level(lvl - 1):
            sb = set(b)
            for c in second.level(lvl - 1):
                inter = tuple(sorted(sb & set(c)))
                if inter:
                    cells.append(inter)
        levels.append(tuple(sorted(cells)))
    return admissible_partitions(space, levels)
