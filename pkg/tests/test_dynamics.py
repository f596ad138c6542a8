"""Transitions, reachability, constructive paths, simulation."""

import random
import warnings
from fractions import Fraction

import pytest

import cacgames as cg
from cacgames import (
    BRPath,
    Game,
    GameInputError,
    PathValidationError,
    PreconditionError,
    SizeCapError,
    WeightedGraph,
    anticoordination_potential,
    br_transitions,
    construct_consensus_path,
    coordination_potential,
    enumerate_nash,
    forward_global_reachability,
    global_reachability,
    is_nash,
    reachability_from,
    reachable_set,
    simulate,
    validate_br_path,
)

HALF = Fraction(1, 2)


def _fig3_trap_starts(fig3):
    return [
        fig3.mask_of_actions(
            {1: 1, 2: 1, 3: 1, 4: 1, 5: 0, 6: 0, 7: 0, 8: 0, 9: a, 10: b}
        )
        for a in (0, 1)
        for b in (0, 1)
    ]


# -- transitions -----------------------------------------------------------


def test_transitions_from_strict_equilibrium_are_empty(games):
    fig3 = games["fig3"]
    x_star = fig3.mask_of_actions({i: 1 for i in range(1, 10)} | {10: 0})
    assert is_nash(fig3, x_star)
    assert br_transitions(fig3, x_star) == []


def test_transitions_pennies_both_matched(games):
    pennies = games["pennies"]
    x = pennies.mask_of_actions({1: 1, 2: 1})
    expected = pennies.mask_of_actions({1: 1, 2: 0})
    assert br_transitions(pennies, x) == [(2, 0, expected)]


def test_transitions_fig2a_only_the_tied_player_moves(games):
    a = games["fig2a"]
    x_star = a.mask_of_actions({1: 0, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1})
    k6 = a.graph.index(6)
    assert br_transitions(a, x_star) == [(6, 0, x_star ^ (1 << k6))]


def test_equilibrium_iff_no_strictly_improving_transition():
    rng = random.Random(3)
    for _ in range(15):
        game = cg.random_game(rng, rng.randint(2, 8), max_weight=4)
        nash = set(enumerate_nash(game))
        for x in range(1 << game.n):
            strict_moves = [
                (v, a, y)
                for v, a, y in br_transitions(game, x)
                if cg.best_response(game, v, x) == {a}
            ]
            assert (x in nash) == (not strict_moves)


# -- reachable sets ----------------------------------------------------------


def test_reachable_set_of_strict_equilibrium_is_singleton(games):
    fig3 = games["fig3"]
    x_star = fig3.mask_of_actions({i: 1 for i in range(1, 10)} | {10: 0})
    assert reachable_set(fig3, x_star) == {x_star}


def test_reachable_set_pennies_cycles_through_everything(games):
    pennies = games["pennies"]
    for x0 in range(4):
        assert reachable_set(pennies, x0) == {0, 1, 2, 3}


def test_fig3_trap_closures_avoid_all_equilibria(games):
    fig3 = games["fig3"]
    nash = set(enumerate_nash(fig3))
    assert nash
    for x0 in _fig3_trap_starts(fig3):
        assert not reachable_set(fig3, x0) & nash


def test_reachable_set_respects_cap(games):
    with pytest.raises(SizeCapError):
        reachable_set(games["fig3"], 0, cap=5)


# -- global reachability ------------------------------------------------------


def test_k3_equilibria_globally_reachable(games):
    k3 = games["k3"]
    nash = enumerate_nash(k3)
    assert [k3.format_bits(x) for x in nash] == ["110", "001"]
    report = global_reachability(k3, nash)
    assert report.reached and not report.trap_states
    assert report.reachable_count == 8
    validate_br_path(k3, report.witness)
    assert report.witness.end in set(nash)


def test_fig3_equilibria_not_globally_reachable(games):
    fig3 = games["fig3"]
    report = global_reachability(fig3, enumerate_nash(fig3))
    assert not report.reached
    assert report.witness is None
    assert set(_fig3_trap_starts(fig3)) <= report.trap_states


def test_fig5_consensus_set_globally_reachable(games):
    fig5 = games["fig5"]
    target = cg.consensus_equilibria(fig5)
    report = global_reachability(fig5, target)
    assert report.reached
    assert report.reachable_count == 1 << fig5.n


def test_reachability_from_single_sources(games):
    fig3 = games["fig3"]
    nash = enumerate_nash(fig3)
    trapped = reachability_from(fig3, _fig3_trap_starts(fig3)[0], nash)
    assert not trapped.reached and trapped.witness is None
    assert trapped.trap_states == frozenset(reachable_set(fig3, trapped.source))

    free = fig3.mask_of_actions({i: 1 for i in range(1, 11)})
    hit = reachability_from(fig3, free, nash)
    assert hit.reached and not hit.trap_states
    validate_br_path(fig3, hit.witness)
    assert hit.witness.start == free and hit.witness.end in set(nash)


def test_empty_target_rejected(games):
    with pytest.raises(GameInputError):
        global_reachability(games["k3"], [])
    with pytest.raises(GameInputError):
        reachability_from(games["k3"], 0, [])


def test_backward_and_forward_reachability_agree():
    rng = random.Random(19)
    checked = 0
    for _ in range(40):
        game = cg.random_game(rng, rng.randint(2, 7), max_weight=4)
        nash = enumerate_nash(game)
        if not nash:
            continue
        checked += 1
        assert global_reachability(game, nash).reached == forward_global_reachability(
            game, nash
        )
    assert checked > 10


# -- constructive consensus paths ---------------------------------------------


def test_path_from_consensus_equilibrium_is_empty(games):
    fig5 = games["fig5"]
    x_star = fig5.mask_of_ones(range(1, 7))  # ones on the clique, zeros outside
    assert is_nash(fig5, x_star)
    path = construct_consensus_path(fig5, x_star, mode="weak")
    assert len(path) == 0 and path.configs == (x_star,)


def test_path_fig5_from_mixed_start(games):
    fig5 = games["fig5"]
    x0 = fig5.mask_of_ones([1, 2, 3, 7, 9])  # balanced split on the clique
    path = construct_consensus_path(fig5, x0, mode="weak")
    validate_br_path(fig5, path)
    assert path.start == x0
    assert is_nash(fig5, path.end)
    assert path.end & fig5.coord_mask in (0, fig5.coord_mask)


def test_path_k3_mode_dependence(games):
    k3 = games["k3"]
    with pytest.raises(PreconditionError):
        construct_consensus_path(k3, 0, mode="strict")
    path = construct_consensus_path(k3, 0, mode="weak")
    validate_br_path(k3, path)
    assert is_nash(k3, path.end)


def test_path_requires_cohesiveness(games):
    b = games["fig2b"]  # player 6 breaks cohesiveness both ways
    with pytest.raises(PreconditionError, match="cohesive"):
        construct_consensus_path(b, 0, mode="weak")


def test_path_phases_raise_the_matching_potential():
    rng = random.Random(59)
    found = 0
    while found < 6:
        game = cg.random_game(rng, rng.randint(2, 7), max_weight=3)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            ok = (
                cg.game_cohesiveness(game, 1).holds or cg.game_cohesiveness(game, 0).holds
            ) and cg.game_indecomposability(game, "strict").holds
        if not ok:
            continue
        found += 1
        x0 = rng.randrange(1 << game.n)
        path = construct_consensus_path(game, x0)
        validate_br_path(game, path)
        assert is_nash(game, path.end)
        for before, after, (node, _) in zip(path.configs, path.configs[1:], path.steps):
            if node in game.coordinating:
                assert coordination_potential(game, after) > coordination_potential(game, before)
            else:
                assert anticoordination_potential(game, after) > anticoordination_potential(game, before)


# -- path validation -----------------------------------------------------------


def test_validator_rejects_corrupted_paths(games):
    k3 = games["k3"]
    good = construct_consensus_path(k3, 0, mode="weak")
    # two players changed in one step
    with pytest.raises(PathValidationError, match="changed"):
        validate_br_path(k3, BRPath(((3, 1),), (0b000, 0b111)))
    # recorded action does not match the configuration
    with pytest.raises(PathValidationError, match="does not apply"):
        validate_br_path(k3, BRPath(((3, 0),), (0b000, 0b100)))
    # move that is not a best response (player 3 must switch to 1 at 000)
    with pytest.raises(PathValidationError, match="not a best response"):
        validate_br_path(k3, BRPath(((1, 1),), (0b000, 0b001)))
    # length mismatch
    with pytest.raises(PathValidationError, match="configurations"):
        validate_br_path(k3, BRPath(good.steps, good.configs + (0,)))
    # no-op steps are allowed when the action is optimal
    validate_br_path(k3, BRPath(((3, 1),), (0b100, 0b100)))


# -- simulation -----------------------------------------------------------------


def test_simulation_absorbs_immediately_at_equilibrium(games):
    fig3 = games["fig3"]
    x_star = fig3.mask_of_actions({i: 1 for i in range(1, 10)} | {10: 0})
    for scheduler in cg.dynamics.SCHEDULERS:
        traj = simulate(fig3, x_star, scheduler=scheduler, seed=0, max_steps=100)
        assert traj.status == "absorbed-at-NE"
        assert traj.activations <= fig3.n


def test_simulation_pennies_never_absorbs(games):
    pennies = games["pennies"]
    for scheduler in cg.dynamics.SCHEDULERS:
        for seed in range(5):
            traj = simulate(pennies, 0b11, scheduler=scheduler, seed=seed, max_steps=60)
            assert traj.status in ("cycle-detected", "step-cap")
    # the deterministic schedulers prove their cycles
    assert simulate(pennies, 0b11, "round-robin", 0, 60).status == "cycle-detected"
    assert simulate(pennies, 0b11, "greedy-potential", 0, 60).status == "cycle-detected"


def test_simulation_fig3_traps_never_absorb(games):
    fig3 = games["fig3"]
    for x0 in _fig3_trap_starts(fig3):
        for seed in range(4):
            traj = simulate(fig3, x0, scheduler="uniform-random", seed=seed, max_steps=250)
            assert traj.status != "absorbed-at-NE"


def test_simulation_is_deterministic_per_seed(games):
    fig5 = games["fig5"]
    a = simulate(fig5, 0, scheduler="uniform-random", seed=42, max_steps=500)
    b = simulate(fig5, 0, scheduler="uniform-random", seed=42, max_steps=500)
    assert a == b
    c = simulate(fig5, 0, scheduler="uniform-random", seed=43, max_steps=500)
    assert (a.configs, a.status) != (c.configs, c.status) or a.activations != c.activations


def test_simulation_steps_are_valid_transitions(games):
    fig5 = games["fig5"]
    traj = simulate(fig5, fig5.mask_of_ones([1, 2, 3]), seed=7, max_steps=400)
    for before, after in zip(traj.configs, traj.configs[1:]):
        flips = before ^ after
        assert flips and not flips & (flips - 1)  # exactly one bit
        k = flips.bit_length() - 1
        node = fig5.nodes[k]
        assert (after >> k & 1) in cg.best_response(fig5, node, before)


def test_simulation_validates_inputs(games):
    with pytest.raises(GameInputError):
        simulate(games["pennies"], 0, scheduler="alphabetical")
    with pytest.raises(GameInputError):
        simulate(games["pennies"], 0, max_steps=-1)


def test_zero_step_budget_reports_cap_unless_already_stable(games):
    pennies = games["pennies"]
    assert simulate(pennies, 0, max_steps=0).status == "step-cap"
    k3 = games["k3"]
    stable = k3.parse_bits("001")
    assert simulate(k3, stable, max_steps=0).status == "absorbed-at-NE"
