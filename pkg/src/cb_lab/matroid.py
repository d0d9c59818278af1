"""Abstract matroids, flat enumeration, and the matroid Cayley-Bacharach check.

A matroid here is a ground set 0..n-1 with an exact rank oracle, backed by a
representing point set, by a stored flat lattice, or analytically (uniform
matroids).  MCB(r) asks that no union of r flats contain all elements but
one; the search runs over the maximal proper flats avoiding the excluded
element, which is lossless because any flat avoiding it extends to a maximal
one.  Whether those maximal flats can always be taken corank-1 is unclear in
general, so restricting to matroid hyperplanes is offered only as a flagged
experimental mode.

Ground sets are capped at 20 elements; flat enumeration is exponential.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .errors import GroundTooLargeError
from .fields import FieldSpec
from .projective import PointSet

GROUND_CAP = 20


def _mask_of(subset) -> int:
    mask = 0
    for e in subset:
        mask |= 1 << e
    return mask


def _elements(mask: int):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Matroid:
    """Ground set {0..size-1} with a memoized exact rank oracle."""

    def __init__(self, size: int, rank_fn, label: str = "matroid", source=None):
        if size < 1:
            raise ValueError("ground set must be nonempty")
        self.size = size
        self.label = label
        self._rank_fn = rank_fn
        self._cache = {}
        self._source = source  # ("matrix", PointSet) or ("flats", lattice dict)
        self._spot_check()

    # -- construction ------------------------------------------------------

    @classmethod
    def from_points(cls, gamma: PointSet) -> Matroid:
        if len(gamma) == 0:
            raise ValueError("need a nonempty point set")
        rows = [list(pt.coords) for pt in gamma]
        fld = gamma.field

        def rank_fn(mask: int) -> int:
            return linalg.rank([rows[i] for i in _elements(mask)], fld)

        return cls(len(rows), rank_fn, f"points({len(rows)})", ("matrix", gamma))

    @classmethod
    def uniform(cls, k: int, n: int) -> Matroid:
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")

        def rank_fn(mask: int) -> int:
            return min(k, mask.bit_count())

        return cls(n, rank_fn, f"U({k},{n})")

    @classmethod
    def fano(cls) -> Matroid:
        from .projective import enumerate_points

        gf2 = FieldSpec.prime(2)
        pts = enumerate_points(gf2, 2)
        return cls.from_points(PointSet(gf2, 2, tuple(pts)))

    @classmethod
    def from_flat_list(cls, size: int, flat_sets) -> Matroid:
        """Matroid from its complete list of flats (ranks inferred by lattice height)."""
        masks = sorted({_mask_of(s) for s in flat_sets})
        full = (1 << size) - 1
        if full not in masks:
            raise ValueError("the ground set must be among the flats")
        height = {}
        for m in sorted(masks, key=lambda m: m.bit_count()):
            below = [height[o] for o in masks if o != m and o & m == o]
            height[m] = (max(below) + 1) if below else 0

        def rank_fn(mask: int) -> int:
            best = None
            for m in masks:
                if mask & m == mask and (best is None or height[m] < best):
                    best = height[m]
            return best

        lattice = {h: sorted(m for m in masks if height[m] == h) for h in set(height.values())}
        return cls(size, rank_fn, f"flats({size})", ("flats", lattice))

    # -- rank / closure ----------------------------------------------------

    def rank(self, subset) -> int:
        mask = subset if isinstance(subset, int) else _mask_of(subset)
        got = self._cache.get(mask)
        if got is None:
            got = self._rank_fn(mask)
            self._cache[mask] = got
        return got

    @property
    def full_rank(self) -> int:
        return self.rank((1 << self.size) - 1)

    def closure(self, subset) -> int:
        mask = subset if isinstance(subset, int) else _mask_of(subset)
        r = self.rank(mask)
        out = mask
        for e in range(self.size):
            if not out >> e & 1 and self.rank(mask | (1 << e)) == r:
                out |= 1 << e
        return out

    def _spot_check(self, triples: int = 40):
        """Light rank-axiom check at construction (full fuzz lives in tests)."""
        if self.rank(0) != 0:
            raise ValueError("rank of the empty set must be 0")
        rng = random.Random(self.size * 7919 + 1)
        full = (1 << self.size) - 1
        for _ in range(triples):
            a = rng.randrange(full + 1)
            b = rng.randrange(full + 1)
            ra, rb = self.rank(a), self.rank(b)
            rub, rint = self.rank(a | b), self.rank(a & b)
            if rub + rint > ra + rb:
                raise ValueError("rank oracle is not submodular")
            if ra > rub or rb > rub:
                raise ValueError("rank oracle is not monotone")
            if ra > a.bit_count():
                raise ValueError("rank oracle exceeds cardinality")

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        if self._source and self._source[0] == "matrix":
            return {"matrix": self._source[1].to_json()}
        lattice = flats(self, self.full_rank)
        sets = [
            _elements(m) for rk in sorted(lattice.by_rank) for m in lattice.by_rank[rk]
        ]
        return {"flats": sets}

    @classmethod
    def from_json(cls, obj: dict) -> Matroid:
        if "matrix" in obj:
            return cls.from_points(PointSet.from_json(obj["matrix"]))
        sets = obj["flats"]
        size = max(max(s) for s in sets if s) + 1
        return cls.from_flat_list(size, sets)


@dataclass(frozen=True)
class FlatLattice:
    """Closed sets grouped by rank: by_rank[r] is a sorted tuple of masks."""

    size: int
    by_rank: dict

    def all_masks(self):
        for rk in sorted(self.by_rank):
            yield from self.by_rank[rk]

    def sets(self):
        return {rk: [_elements(m) for m in masks] for rk, masks in self.by_rank.items()}


def flats(m: Matroid, max_rank: int) -> FlatLattice:
    """All flats of rank <= max_rank, grown by closing one-element extensions."""
    if m.size > GROUND_CAP:
        raise GroundTooLargeError(f"ground set of {m.size} exceeds the cap {GROUND_CAP}")
    by_rank = {}
    bottom = m.closure(0)
    by_rank[0] = (bottom,)
    current = [bottom]
    rk = 0
    while rk < max_rank and current:
        nxt = set()
        for f in current:
            for e in range(m.size):
                if not f >> e & 1:
                    nxt.add(m.closure(f | (1 << e)))
        rk += 1
        current = sorted(nxt)
        if current:
            by_rank[rk] = tuple(current)
    return FlatLattice(m.size, by_rank)


@dataclass(frozen=True)
class McbReport:
    r: int
    verdict: bool
    witness_flats: tuple | None = None  # element tuples
    excluded_element: int | None = None

    def to_json(self) -> dict:
        obj = {"r": self.r, "verdict": self.verdict}
        if not self.verdict:
            obj["witness"] = {
                "flats": [list(f) for f in self.witness_flats],
                "excluded": self.excluded_element,
            }
        return obj


def _maximal_masks(masks):
    out = []
    for m in masks:
        if not any(o != m and m & o == m for o in masks):
            out.append(m)
    return out


def _cover_with_flats(target: int, flat_masks, limit: int) -> tuple | None:
    """<= limit of the given flats whose union contains target, or None."""
    if target == 0:
        return ()
    if limit == 0:
        return None
    elems = _elements(target)
    containing = {e: [f for f in flat_masks if f >> e & 1] for e in elems}
    if any(not containing[e] for e in elems):
        return None
    memo = set()

    def dfs(remaining: int, depth: int, stack):
        if remaining == 0:
            return tuple(stack)
        if depth == limit:
            return None
        key = (remaining, depth)
        if key in memo:
            return None
        pick = min((e for e in elems if remaining >> e & 1), key=lambda e: len(containing[e]))
        for f in containing[pick]:
            stack.append(f)
            got = dfs(remaining & ~f, depth + 1, stack)
            if got is not None:
                return got
            stack.pop()
        memo.add(key)
        return None

    return dfs(target, 0, [])


def is_mcb(m: Matroid, r: int, hyperplanes_only: bool = False) -> McbReport:
    """Matroid Cayley-Bacharach: no union of r flats holds all elements but one.

    The default mode searches unions of maximal proper flats avoiding the
    candidate element (equivalent to all proper flats).  hyperplanes_only
    restricts to corank-1 flats; that restriction is experimental and is
    cross-checked against the full mode on small cases in the test suite.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if m.size > GROUND_CAP:
        raise GroundTooLargeError(f"ground set of {m.size} exceeds the cap {GROUND_CAP}")
    full_rank = m.full_rank
    lattice = flats(m, max_rank=max(full_rank - 1, 0))
    proper = [mask for mask in lattice.all_masks() if mask != (1 << m.size) - 1]
    if hyperplanes_only:
        proper = list(lattice.by_rank.get(full_rank - 1, ()))
    ground = (1 << m.size) - 1
    for x in range(m.size):
        avoid = [f for f in proper if not f >> x & 1]
        candidates = _maximal_masks(avoid) if not hyperplanes_only else avoid
        got = _cover_with_flats(ground & ~(1 << x), candidates, r)
        if got is not None:
            if not got and candidates:
                got = (candidates[0],)  # all-but-one is empty; show one avoiding flat
            return McbReport(
                r, False, tuple(tuple(_elements(f)) for f in got), x
            )
    return McbReport(r, True)


def matroid_from_points(gamma: PointSet) -> Matroid:
    """The representable matroid of a point set (rank = coordinate-matrix rank)."""
    return Matroid.from_points(gamma)


def exists_flat_cover(m: Matroid, dims) -> list | None:
    """Flats F_i with rank(F_i) = dims[i] + 1 covering the ground set, or None."""
    dims = list(dims)
    if m.size > GROUND_CAP:
        raise GroundTooLargeError(f"ground set of {m.size} exceeds the cap {GROUND_CAP}")
    ranks_needed = [d + 1 for d in dims]
    if any(rk < 1 for rk in ranks_needed):
        raise ValueError("flat cover dimensions must be >= 0")
    lattice = flats(m, max_rank=max(ranks_needed))
    pool = {rk: list(lattice.by_rank.get(rk, ())) for rk in set(ranks_needed)}
    if any(not pool[rk] for rk in ranks_needed):
        return None
    ground = (1 << m.size) - 1
    memo = set()

    def dfs(covered: int, remaining: tuple, acc):
        # remaining is the sorted multiset of ranks still to place.
        if covered == ground:
            return acc + [(rk, pool[rk][0]) for rk in remaining]
        if not remaining:
            return None
        key = (covered, remaining)
        if key in memo:
            return None
        first = _elements(ground & ~covered)[0]
        tried = set()
        for idx, rk in enumerate(remaining):
            # Equal-rank slots are interchangeable: branch each rank once.
            if rk in tried:
                continue
            tried.add(rk)
            rest = remaining[:idx] + remaining[idx + 1 :]
            for f in pool[rk]:
                if f >> first & 1:
                    got = dfs(covered | f, rest, acc + [(rk, f)])
                    if got is not None:
                        return got
        memo.add(key)
        return None

    got = dfs(0, tuple(sorted(ranks_needed)), [])
    if got is None:
        return None
    by_rank_found = {}
    for rk, f in got:
        by_rank_found.setdefault(rk, []).append(f)
    return [_elements(by_rank_found[rk].pop(0)) for rk in ranks_needed]
