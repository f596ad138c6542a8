"""Structural predicates and restricted-game machinery.

Two graph-level predicates drive the whole analysis:

* cohesiveness: every member of a subset keeps at least an ``r_i`` fraction
  of its degree inside the subset;
* indecomposability: no labeled split of the coordinating set leaves both
  labeled halves (each together with the anti-coordinating side) cohesive
  enough to be self-supporting.

On top of these sit the restricted games obtained by freezing one side:
their effective thresholds, the non-strategic remainder term, and the
exact potential functions that make one-side dynamics monotone.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import DegenerateNodeError, GameInputError, SizeCapError
from .game import DEFAULT_ENUM_CAP, Game, _threshold_map
from .game import utility as _full_utility
from .graph import WeightedGraph, ZERO


def _validated_thresholds(members, thresholds) -> dict:
    th = _threshold_map(members, thresholds)
    for v, r in th.items():
        if not (0 < r < 1):
            raise GameInputError(
                f"threshold of {v!r} must lie strictly between 0 and 1, got {r}"
            )
    return th


@dataclass(frozen=True)
class CohesivenessReport:
    """Outcome of a cohesiveness check.

    ``violators`` holds (node, inside weight, required weight) triples; the
    predicate holds exactly when it is empty.
    """

    holds: bool
    violators: tuple

    def __bool__(self) -> bool:
        return self.holds


def cohesiveness(graph: WeightedGraph, members: Iterable, thresholds) -> CohesivenessReport:
    """Check that each member keeps at least its threshold fraction of
    degree inside ``members``.  Isolated members pass vacuously (0 >= 0).
    The comparison is non-strict.
    """
    member_list = sorted(set(members))
    for v in member_list:
        graph.index(v)
    th = _validated_thresholds(member_list, thresholds)
    violators = []
    for v in member_list:
        inside = graph.restricted_degree(v, member_list)
        required = th[v] * graph.degree(v)
        if inside < required:
            violators.append((v, inside, required))
    return CohesivenessReport(holds=not violators, violators=tuple(violators))


@dataclass(frozen=True)
class PartitionWitness:
    """A labeled split of the coordinating set.

    With ``certifying_player`` set, that player violates the cohesiveness of
    its own part (``condition`` names the part, "part1" or "part0") and so
    certifies the partition.  With no certifying player the partition is a
    decomposition: both labeled halves are self-supporting.
    """

    part0: frozenset
    part1: frozenset
    certifying_player: object = None
    condition: Optional[str] = None


@dataclass(frozen=True)
class IndecomposabilityReport:
    holds: bool
    mode: str
    witness: Optional[PartitionWitness]
    partitions_checked: int

    def __bool__(self) -> bool:
        return self.holds


class _PartitionScan:
    """Shared precomputation for scanning partitions of one member set."""

    def __init__(self, graph: WeightedGraph, members: Iterable, thresholds, mode: str):
        if mode not in ("strict", "weak"):
            raise GameInputError(f"mode must be 'strict' or 'weak', got {mode!r}")
        self.mode = mode
        self.members = sorted(set(members))
        for v in self.members:
            graph.index(v)
        self.graph = graph
        th = _validated_thresholds(self.members, thresholds)
        m = len(self.members)
        pos = {v: k for k, v in enumerate(self.members)}
        member_set = set(self.members)
        # Integer-scaled data per member: internal neighbor weights, the
        # outside-weight constant, and both thresholds r*w and (1-r)*w.
        self.internal = []
        self.outside_int = []
        self.thr1_int = []
        self.thr0_int = []
        for v in self.members:
            w = graph.degree(v)
            inside_nbrs = [
                (pos[u], graph.weight(v, u)) for u in graph.neighbors(v) if u in member_set
            ]
            outside = w - sum((wt for _, wt in inside_nbrs), ZERO)
            t1 = th[v] * w
            t0 = (1 - th[v]) * w
            scale = math.lcm(
                t1.denominator,
                t0.denominator,
                outside.denominator,
                *(wt.denominator for _, wt in inside_nbrs),
            )
            self.internal.append(tuple((j, int(wt * scale)) for j, wt in inside_nbrs))
            self.outside_int.append(int(outside * scale))
            self.thr1_int.append(int(t1 * scale))
            self.thr0_int.append(int(t0 * scale))
        self.m = m

    def certifier(self, mask0: int):
        """First member certifying the partition, or None if the partition
        is a decomposition.  ``mask0`` selects part0 over the sorted member
        list; the complement is part1.
        """
        strict = self.mode == "strict"
        for k in range(self.m):
            in_part0 = mask0 >> k & 1
            own_mask = mask0 if in_part0 else ((1 << self.m) - 1) ^ mask0
            s = self.outside_int[k]
            for j, w in self.internal[k]:
                if own_mask >> j & 1:
                    s += w
            t = self.thr0_int[k] if in_part0 else self.thr1_int[k]
            if (s < t) if strict else (s <= t):
                return k, ("part0" if in_part0 else "part1")
        return None

    def witness_at(self, mask0: int, certified) -> PartitionWitness:
        part0 = frozenset(self.members[k] for k in range(self.m) if mask0 >> k & 1)
        part1 = frozenset(self.members) - part0
        if certified is None:
            return PartitionWitness(part0, part1)
        k, condition = certified
        return PartitionWitness(part0, part1, self.members[k], condition)


def partition_certificate(
    graph: WeightedGraph,
    members: Iterable,
    thresholds,
    part0: Iterable,
    part1: Iterable,
    mode: str = "strict",
) -> PartitionWitness:
    """Evaluate one labeled partition.

    Returns a witness carrying the certifying player when the partition is
    certified, or one with ``certifying_player=None`` when the partition is
    a decomposition (both halves self-supporting).
    """
    scan = _PartitionScan(graph, members, thresholds, mode)
    p0 = frozenset(part0)
    p1 = frozenset(part1)
    if not p0 or not p1 or p0 | p1 != frozenset(scan.members) or p0 & p1:
        raise GameInputError("part0 and part1 must be non-empty and partition the members")
    mask0 = 0
    for k, v in enumerate(scan.members):
        if v in p0:
            mask0 |= 1 << k
    return scan.witness_at(mask0, scan.certifier(mask0))


def indecomposability(
    graph: WeightedGraph,
    members: Iterable,
    thresholds,
    mode: str = "strict",
    jobs: int = 1,
) -> IndecomposabilityReport:
    """Decide indecomposability by scanning every labeled partition.

    The scan runs in ascending bitmask order of the first part and stops at
    the first decomposition; that partition is reported as the witness.
    ``jobs > 1`` splits the mask range across processes; the reported
    witness is the ascending-order first one regardless of chunking.
    With fewer than two members no partition exists, so the predicate holds
    trivially (a warning is emitted).
    """
    scan = _PartitionScan(graph, members, thresholds, mode)
    if scan.m < 2:
        warnings.warn(
            "indecomposability over fewer than 2 members holds trivially",
            stacklevel=2,
        )
        return IndecomposabilityReport(True, mode, None, 0)
    total = (1 << scan.m) - 2
    if jobs > 1:
        first = _scan_parallel(graph, scan, thresholds, mode, jobs)
        if first is None:
            return IndecomposabilityReport(True, mode, None, total)
        return IndecomposabilityReport(
            False, mode, scan.witness_at(first, None), first
        )
    checked = 0
    for mask0 in range(1, (1 << scan.m) - 1):
        checked += 1
        if scan.certifier(mask0) is None:
            return IndecomposabilityReport(
                False, mode, scan.witness_at(mask0, None), checked
            )
    return IndecomposabilityReport(True, mode, None, checked)


def _scan_chunk(args):
    graph, members, thresholds, mode, start, stop = args
    scan = _PartitionScan(graph, members, thresholds, mode)
    for mask0 in range(start, stop):
        if scan.certifier(mask0) is None:
            return mask0
    return None


def _scan_parallel(graph, scan, thresholds, mode, jobs):
    from concurrent.futures import ProcessPoolExecutor

    hi = (1 << scan.m) - 1
    bounds = []
    step = max(1, (hi - 1) // jobs + 1)
    lo = 1
    while lo < hi:
        bounds.append((lo, min(lo + step, hi)))
        lo += step
    tasks = [(graph, scan.members, thresholds, mode, a, b) for a, b in bounds]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        hits = [h for h in pool.map(_scan_chunk, tasks) if h is not None]
    return min(hits) if hits else None


def decomposition_witnesses(
    graph: WeightedGraph, members: Iterable, thresholds, mode: str = "strict"
) -> Iterator[PartitionWitness]:
    """Yield every partition that defeats indecomposability, in scan order."""
    scan = _PartitionScan(graph, members, thresholds, mode)
    for mask0 in range(1, (1 << scan.m) - 1):
        if scan.certifier(mask0) is None:
            yield scan.witness_at(mask0, None)


def game_cohesiveness(game: Game, toward: int = 1) -> CohesivenessReport:
    """Cohesiveness of the coordinating set in the game's own thresholds.

    ``toward=1`` uses r_i (supports all-ones consensus), ``toward=0`` the
    complementary 1 - r_i (supports all-zeros consensus).
    """
    members = sorted(game.coordinating)
    th = {v: game.thresholds[v] if toward == 1 else 1 - game.thresholds[v] for v in members}
    return cohesiveness(game.graph, members, th)


def game_indecomposability(game: Game, mode: str = "strict", jobs: int = 1) -> IndecomposabilityReport:
    members = sorted(game.coordinating)
    th = {v: game.thresholds[v] for v in members}
    return indecomposability(game.graph, members, th, mode=mode, jobs=jobs)


# -- restricted games ---------------------------------------------------


@dataclass(frozen=True)
class RestrictedGame:
    """One side of a game with the other side frozen.

    ``side`` is "coordinating" or "anticoordinating" and names the moving
    players; ``fixed`` is a full configuration mask of which only the
    opposite side's bits are read.
    """

    game: Game
    side: str
    fixed: int

    def __post_init__(self):
        if self.side not in ("coordinating", "anticoordinating"):
            raise GameInputError(f"side must name a role, got {self.side!r}")

    @property
    def moving(self) -> frozenset:
        return self.game.coordinating if self.side == "coordinating" else self.game.anticoordinating

    @property
    def moving_mask(self) -> int:
        return self.game.coord_mask if self.side == "coordinating" else self.game.anti_mask

    def merged(self, x: int) -> int:
        """Full configuration: moving bits from ``x``, the rest from ``fixed``."""
        mm = self.moving_mask
        return (x & mm) | (self.fixed & ~mm)

    def _moving_index(self, node) -> int:
        k = self.game.graph.index(node)
        if not self.moving_mask >> k & 1:
            raise GameInputError(f"{node!r} is not on the {self.side} side")
        return k

    def modified_threshold(self, node) -> Fraction:
        """Effective threshold of a moving player once the frozen side's
        actions are absorbed.

        May leave (0, 1); it is never clamped.  Undefined (degenerate) when
        the player has no neighbors on its own side.
        """
        k = self._moving_index(node)
        game = self.game
        inside = game._inside_deg[k]
        if inside == 0:
            raise DegenerateNodeError(
                f"{node!r} has no same-side neighbors; its effective threshold is undefined"
            )
        outside = game._w[k] - inside
        out1 = sum((w for j, w in game._cross[k] if self.fixed >> j & 1), ZERO)
        return game._r[k] * (1 + outside / inside) - out1 / inside

    def utility(self, node, x: int) -> Fraction:
        """Utility of a moving player at the merged configuration."""
        self._moving_index(node)
        return _full_utility(self.game, node, self.merged(x))

    def nonstrategic_term(self, node, x: int) -> Fraction:
        """The part of a coordinating mover's utility that its own action
        cannot influence.  Only defined on the coordinating side and for
        players with same-side neighbors.
        """
        if self.side != "coordinating":
            raise GameInputError("the non-strategic term is defined for the coordinating side")
        k = self._moving_index(node)
        game = self.game
        r = game._r[k]
        r_eff = self.modified_threshold(node)
        merged = self.merged(x)
        own0 = sum(
            (
                w
                for j, w in game._nbrf[k]
                if game._sign[j] > 0 and not merged >> j & 1
            ),
            ZERO,
        )
        out0 = sum((w for j, w in game._cross[k] if not self.fixed >> j & 1), ZERO)
        return (r - r_eff) * own0 + r * out0

    def potential(self, x: int) -> Fraction:
        merged = self.merged(x)
        if self.side == "coordinating":
            return coordination_potential(self.game, merged)
        return anticoordination_potential(self.game, merged)

    def nash(self, cap: int = DEFAULT_ENUM_CAP) -> list:
        """Exact equilibria of the one-side game, as full masks (frozen bits
        included), ascending.
        """
        game = self.game
        positions = [k for k in range(game.n) if self.moving_mask >> k & 1]
        if len(positions) > cap:
            raise SizeCapError(
                f"restricted scan over {len(positions)} players exceeds the cap of {cap}"
            )
        base = self.fixed & ~self.moving_mask
        out = []
        for sub in range(1 << len(positions)):
            x = base
            for t, pos in enumerate(positions):
                if sub >> t & 1:
                    x |= 1 << pos
            if all(
                game._br_bits(k, x) >> (x >> k & 1) & 1 for k in positions
            ):
                out.append(x)
        return out


def _cleared_coefficient(game: Game, k: int, x: int) -> Fraction:
    """(effective threshold - 1/2) * own-side degree, in division-free form.

    Equals r_i * w_i - (opposite-side weight playing 1) - own_side_degree/2,
    which stays defined when the own-side degree is zero.
    """
    out1 = sum((w for j, w in game._cross[k] if x >> j & 1), ZERO)
    return game._rw[k] - out1 - game._inside_deg[k] / 2


def coordination_potential(game: Game, x: int) -> Fraction:
    """Exact potential of the coordinating side at frozen opposite actions.

    Unilateral coordinating flips change this by exactly their utility
    difference.  Each matched internal edge counts half its weight: a flip
    of one endpoint then shifts the pair term by half the difference of the
    mover's matched and unmatched internal weight, which together with the
    cleared linear coefficient reproduces the utility difference exactly.
    """
    matched = ZERO
    for ki, kj, w in game._coord_edges:
        if (x >> ki & 1) == (x >> kj & 1):
            matched += w
    total = matched / 2
    for k in game._coord_idx:
        if x >> k & 1:
            total -= _cleared_coefficient(game, k, x)
    return total


def anticoordination_potential(game: Game, x: int) -> Fraction:
    """Exact potential of the anti-coordinating side at frozen opposite
    actions; the mirror of ``coordination_potential``.
    """
    matched = ZERO
    for ki, kj, w in game._anti_edges:
        if (x >> ki & 1) == (x >> kj & 1):
            matched += w
    total = -matched / 2
    for k in game._anti_idx:
        if x >> k & 1:
            total += _cleared_coefficient(game, k, x)
    return total
