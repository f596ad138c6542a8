"""Best-response dynamics over the configuration space.

A transition flips a single player's action to one of its current best
responses.  Re-picking the current action is allowed by the update rule but
never changes the state, so the transition relation used for reachability
keeps only the state-changing moves.
"""

from __future__ import annotations

import random
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import (
    GameInputError,
    GuaranteeViolationError,
    PathValidationError,
    PreconditionError,
    SizeCapError,
)
from .game import DEFAULT_ENUM_CAP, Game, is_nash, utility
from .structure import game_cohesiveness, game_indecomposability

SCHEDULERS = ("round-robin", "uniform-random", "greedy-potential")


@dataclass(frozen=True)
class BRPath:
    """A validated-by-construction sequence of single-player updates.

    ``configs`` has one more entry than ``steps``; step k moves player
    ``steps[k][0]`` to action ``steps[k][1]`` between ``configs[k]`` and
    ``configs[k+1]``.
    """

    steps: tuple
    configs: tuple

    @property
    def start(self) -> int:
        return self.configs[0]

    @property
    def end(self) -> int:
        return self.configs[-1]

    def __len__(self) -> int:
        return len(self.steps)


def validate_br_path(game: Game, path: BRPath) -> None:
    """Check the update rule at every step; raise PathValidationError on the
    first violation.  No-op steps (re-picking the current action) pass.
    """
    if len(path.configs) != len(path.steps) + 1:
        raise PathValidationError(
            f"{len(path.configs)} configurations for {len(path.steps)} steps"
        )
    for k, (node, action) in enumerate(path.steps):
        before = path.configs[k]
        after = path.configs[k + 1]
        bit = 1 << game.graph.index(node)
        if before & ~bit != after & ~bit:
            raise PathValidationError(f"step {k}: players other than {node!r} changed")
        if (1 if after & bit else 0) != action:
            raise PathValidationError(
                f"step {k}: configuration does not apply action {action} of {node!r}"
            )
        if not game._br_bits(game.graph.index(node), before) >> action & 1:
            raise PathValidationError(
                f"step {k}: action {action} is not a best response of {node!r}"
            )


def br_transitions(game: Game, x: int) -> list:
    """All state-changing single-player updates from ``x``.

    Returns (node, new_action, new_configuration) triples in ascending node
    order.  Empty exactly when every player strictly prefers its current
    action (a tie still contributes a move to the other action).
    """
    out = []
    for k in range(game.n):
        cur = x >> k & 1
        if game._br_bits(k, x) >> (1 - cur) & 1:
            out.append((game.nodes[k], 1 - cur, x ^ (1 << k)))
    return out


def _check_cap(game: Game, cap: int) -> None:
    if game.n > cap:
        raise SizeCapError(
            f"state-space scan over {game.n} players exceeds the cap of {cap}"
        )


def reachable_set(game: Game, x0: int, cap: int = DEFAULT_ENUM_CAP) -> set:
    """Forward closure of one configuration under best-response moves."""
    _check_cap(game, cap)
    seen = {x0}
    frontier = deque((x0,))
    while frontier:
        x = frontier.popleft()
        for k in range(game.n):
            cur = x >> k & 1
            if game._br_bits(k, x) >> (1 - cur) & 1:
                nxt = x ^ (1 << k)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    return seen


@dataclass(frozen=True)
class ReachabilityReport:
    """Result of a reachability query.

    ``source`` is a configuration mask or "all".  For a single source,
    ``reachable_count`` is the size of its forward closure; for "all" it is
    the number of configurations from which the target can be reached.
    ``witness`` is present exactly when the target was reached.
    """

    source: object
    reached: bool
    reachable_count: int
    trap_states: frozenset
    witness: Optional[BRPath]


def _witness_path(game: Game, x0: int, parents: dict, hit: int) -> BRPath:
    steps = []
    configs = [hit]
    x = hit
    while x != x0:
        prev, node, action = parents[x]
        steps.append((node, action))
        configs.append(prev)
        x = prev
    steps.reverse()
    configs.reverse()
    return BRPath(tuple(steps), tuple(configs))


def reachability_from(
    game: Game, x0: int, target: Iterable, cap: int = DEFAULT_ENUM_CAP
) -> ReachabilityReport:
    """Forward search from one configuration toward a target set.

    The returned witness path is a shortest one (in moves).  When the target
    cannot be reached, the whole forward closure is reported as trapped.
    """
    _check_cap(game, cap)
    target_set = frozenset(target)
    if not target_set:
        raise GameInputError("target set must be non-empty")
    parents = {x0: None}
    order = deque((x0,))
    hit = x0 if x0 in target_set else None
    while order:
        x = order.popleft()
        for k in range(game.n):
            cur = x >> k & 1
            if game._br_bits(k, x) >> (1 - cur) & 1:
                nxt = x ^ (1 << k)
                if nxt not in parents:
                    parents[nxt] = (x, game.nodes[k], 1 - cur)
                    if hit is None and nxt in target_set:
                        hit = nxt
                    order.append(nxt)
    closure_size = len(parents)
    if hit is None:
        return ReachabilityReport(
            x0, False, closure_size, frozenset(parents), None
        )
    return ReachabilityReport(
        x0, True, closure_size, frozenset(), _witness_path(game, x0, parents, hit)
    )


def global_reachability(
    game: Game, target: Iterable, cap: int = DEFAULT_ENUM_CAP
) -> ReachabilityReport:
    """Decide whether the target set is reachable from every configuration.

    Works backward from the target: a predecessor of x along player k exists
    exactly when x's own bit at k is a best response against x (the player's
    own entry does not matter), so predecessors can be generated locally
    without materializing the transition graph.
    """
    _check_cap(game, cap)
    target_set = frozenset(target)
    if not target_set:
        raise GameInputError("target set must be non-empty")
    n_states = 1 << game.n
    for t in target_set:
        if not 0 <= t < n_states:
            raise GameInputError(f"target configuration {t!r} is out of range")
    closed = bytearray(n_states)
    frontier = deque()
    for t in target_set:
        closed[t] = 1
        frontier.append(t)
    count = len(target_set)
    while frontier:
        x = frontier.popleft()
        for k in range(game.n):
            if game._br_bits(k, x) >> (x >> k & 1) & 1:
                prev = x ^ (1 << k)
                if not closed[prev]:
                    closed[prev] = 1
                    count += 1
                    frontier.append(prev)
    reached = count == n_states
    traps = frozenset(x for x in range(n_states) if not closed[x])
    witness = None
    if reached:
        witness = reachability_from(game, 0, target_set, cap).witness
    return ReachabilityReport("all", reached, count, traps, witness)


def forward_global_reachability(
    game: Game, target: Iterable, cap: int = DEFAULT_ENUM_CAP
) -> bool:
    """Independent forward-search check of global reachability.

    Runs one bounded search per source configuration; kept as a second route
    for cross-checking the backward closure on small instances.
    """
    _check_cap(game, cap)
    target_set = frozenset(target)
    if not target_set:
        raise GameInputError("target set must be non-empty")
    for x0 in range(1 << game.n):
        seen = {x0}
        stack = [x0]
        found = x0 in target_set
        while stack and not found:
            x = stack.pop()
            for k in range(game.n):
                cur = x >> k & 1
                if game._br_bits(k, x) >> (1 - cur) & 1:
                    nxt = x ^ (1 << k)
                    if nxt in target_set:
                        found = True
                        break
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
        if not found:
            return False
    return True


# -- constructive path to a consensus equilibrium -----------------------


def _strict_move(game: Game, x: int, side_idx) -> Optional[int]:
    for k in side_idx:
        if not game._br_bits(k, x) >> (x >> k & 1) & 1:
            return k
    return None


def _tie_move(game: Game, x: int, side_idx, prefer_action: int) -> Optional[int]:
    fallback = None
    for k in side_idx:
        cur = x >> k & 1
        if game._br_bits(k, x) >> (1 - cur) & 1:
            if 1 - cur == prefer_action:
                return k
            if fallback is None:
                fallback = k
    return fallback


def _consensus_value(game: Game, x: int) -> Optional[int]:
    part = x & game.coord_mask
    if part == game.coord_mask:
        return 1
    if part == 0:
        return 0
    return None


def construct_consensus_path(game: Game, x0: int, mode: str = "strict") -> BRPath:
    """Build a best-response path from ``x0`` to an equilibrium whose
    coordinating players are at consensus.

    Requires the coordinating set to be cohesive in at least one direction
    and indecomposable in the requested mode.  The path runs in phases:
    first only coordinating players move until they agree, then only
    anti-coordinating players move until none can improve; if the result is
    not an equilibrium, the coordinating side walks to the opposite
    consensus and the second phase repeats once.

    Improving moves are preferred; exact-tie moves are used only when no
    player on the active side can strictly improve (they can be needed when
    ``mode="weak"``).  Failure to make progress raises
    GuaranteeViolationError, since the preconditions provably rule it out.
    """
    coh_one = game_cohesiveness(game, toward=1).holds
    coh_zero = game_cohesiveness(game, toward=0).holds
    if not (coh_one or coh_zero):
        raise PreconditionError(
            "the coordinating set is not cohesive in either direction"
        )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        indec = game_indecomposability(game, mode=mode)
    if not indec.holds:
        w = indec.witness
        raise PreconditionError(
            f"the coordinating set is decomposable ({mode} mode): "
            f"parts {sorted(w.part0)} / {sorted(w.part1)}"
        )
    backed_action = 1 if coh_one else 0

    steps: list = []
    configs = [x0]
    x = x0

    def move(k: int, action: int) -> None:
        nonlocal x
        x = (x & ~(1 << k)) | (action << k)
        steps.append((game.nodes[k], action))
        configs.append(x)

    def coordinating_phase(prefer: int) -> None:
        # Walk until the coordinating side is both at consensus and free of
        # strictly improving moves.  Improving moves never need the
        # preference hint; tie moves do (and only occur in weak mode).
        visited = {x}
        while True:
            k = _strict_move(game, x, game._coord_idx)
            if k is None:
                if _consensus_value(game, x) is not None:
                    return
                k = _tie_move(game, x, game._coord_idx, prefer)
            if k is None:
                raise GuaranteeViolationError(
                    "no coordinating player can move toward consensus; "
                    "this contradicts indecomposability"
                )
            move(k, 1 - (x >> k & 1))
            if x in visited:
                raise GuaranteeViolationError(
                    "the coordinating phase revisited a configuration"
                )
            visited.add(x)

    def anticoordinating_phase() -> None:
        while True:
            k = _strict_move(game, x, game._anti_idx)
            if k is None:
                return
            move(k, 1 - (x >> k & 1))

    coordinating_phase(backed_action)
    anticoordinating_phase()
    if not is_nash(game, x):
        reached = _consensus_value(game, x)
        coordinating_phase(1 - reached if reached is not None else backed_action)
        anticoordinating_phase()
        if not is_nash(game, x):
            raise GuaranteeViolationError(
                "the two-phase construction did not terminate at an equilibrium"
            )
    return BRPath(tuple(steps), tuple(configs))


# -- stochastic simulation ----------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    """One simulated run of asynchronous best-response updates.

    ``configs`` records the start and every state change; ``activations``
    counts scheduler ticks including the ones that changed nothing.
    """

    start: int
    configs: tuple
    activations: int
    status: str
    seed: int
    scheduler: str


def simulate(
    game: Game,
    x0: int,
    scheduler: str = "uniform-random",
    seed: int = 0,
    max_steps: int = 1000,
) -> Trajectory:
    """Activate one player at a time until an equilibrium absorbs the run,
    a cycle is proven, or the step budget runs out.

    An activated player switches to its unique best response; on an exact
    tie it keeps its current action with probability one half.  Cycles are
    only reported when the trajectory so far was provably deterministic
    (round-robin or greedy scheduling with no randomized tie yet).
    """
    if scheduler not in SCHEDULERS:
        raise GameInputError(f"unknown scheduler {scheduler!r}; pick one of {SCHEDULERS}")
    if max_steps < 0:
        raise GameInputError("max_steps must be non-negative")
    rng = random.Random(seed)
    x = x0
    configs = [x0]
    ticks = 0
    deterministic = True
    seen = set()
    status = None
    while True:
        if is_nash(game, x):
            status = "absorbed-at-NE"
            break
        if ticks >= max_steps:
            status = "step-cap"
            break
        if scheduler == "round-robin":
            key = (x, ticks % game.n)
            if deterministic:
                if key in seen:
                    status = "cycle-detected"
                    break
                seen.add(key)
            k = ticks % game.n
        elif scheduler == "uniform-random":
            k = rng.randrange(game.n)
        else:  # greedy-potential: biggest own improvement first
            if deterministic:
                if x in seen:
                    status = "cycle-detected"
                    break
                seen.add(x)
            k = _greedy_pick(game, x)
        ticks += 1
        bits = game._br_bits(k, x)
        cur = x >> k & 1
        if bits == 3:
            deterministic = False
            seen.clear()
            if rng.getrandbits(1):
                x ^= 1 << k
                configs.append(x)
        elif not bits >> cur & 1:
            x ^= 1 << k
            configs.append(x)
    return Trajectory(x0, tuple(configs), ticks, status, seed, scheduler)


def _greedy_pick(game: Game, x: int) -> int:
    best_k = None
    best_gain = None
    for k in range(game.n):
        if game._br_bits(k, x) >> (x >> k & 1) & 1:
            continue
        node = game.nodes[k]
        gain = utility(game, node, x ^ (1 << k)) - utility(game, node, x)
        if best_gain is None or gain > best_gain:
            best_k, best_gain = k, gain
    return best_k
