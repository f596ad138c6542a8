"""Game files: a small JSON format plus DOT export.

A game file is an object with two keys::

    {"nodes": [{"id": 1, "role": "coordinating", "threshold": "1/2"}, ...],
     "edges": [{"u": 1, "v": 2, "weight": "2"}, ...]}

Node ids are all ints or all strings.  Rationals travel as "p/q" strings
(bare integers, as strings or JSON ints, are accepted).  Each undirected
edge appears exactly once; self-loops, duplicates and conflicting weights
are rejected with the offending entry named in the diagnostic.
Serialization is canonical (sorted nodes and edges, two-space indent), so
parse followed by serialize reproduces a canonical file byte for byte.
"""

from __future__ import annotations

import json
from typing import Optional

from .errors import GameInputError
from .game import Game
from .graph import WeightedGraph
from .rationals import as_rational, format_rational

ROLES = ("coordinating", "anticoordinating")


def parse_game(text: str) -> Game:
    """Parse a game file from a JSON string."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameInputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise GameInputError("top level must be an object with 'nodes' and 'edges'")
    for key in ("nodes", "edges"):
        if key not in data or not isinstance(data[key], list):
            raise GameInputError(f"missing or non-list {key!r} entry")

    ids = []
    coordinating = set()
    thresholds = {}
    for k, entry in enumerate(data["nodes"]):
        where = f"nodes[{k}]"
        if not isinstance(entry, dict):
            raise GameInputError(f"{where}: expected an object")
        try:
            node_id = entry["id"]
            role = entry["role"]
            threshold = entry["threshold"]
        except KeyError as exc:
            raise GameInputError(f"{where}: missing field {exc.args[0]!r}") from None
        if not isinstance(node_id, (int, str)) or isinstance(node_id, bool):
            raise GameInputError(f"{where}: id must be an int or string")
        if node_id in ids:
            raise GameInputError(f"{where}: duplicate node id {node_id!r}")
        if role not in ROLES:
            raise GameInputError(f"{where}: role must be one of {ROLES}, got {role!r}")
        r = as_rational(threshold, what=f"{where}: threshold")
        if not (0 < r < 1):
            raise GameInputError(
                f"{where}: threshold must lie strictly between 0 and 1, got {format_rational(r)}"
            )
        ids.append(node_id)
        thresholds[node_id] = r
        if role == "coordinating":
            coordinating.add(node_id)
    if len({type(i) for i in ids}) > 1:
        raise GameInputError("node ids must be all ints or all strings")

    edges = []
    seen = {}
    for k, entry in enumerate(data["edges"]):
        where = f"edges[{k}]"
        if not isinstance(entry, dict):
            raise GameInputError(f"{where}: expected an object")
        try:
            u, v, w = entry["u"], entry["v"], entry["weight"]
        except KeyError as exc:
            raise GameInputError(f"{where}: missing field {exc.args[0]!r}") from None
        if u not in thresholds or v not in thresholds:
            missing = u if u not in thresholds else v
            raise GameInputError(f"{where}: unknown node {missing!r}")
        if u == v:
            raise GameInputError(f"{where}: self-loop at {u!r}")
        weight = as_rational(w, what=f"{where}: weight")
        if weight <= 0:
            raise GameInputError(f"{where}: weight must be positive, got {w!r}")
        pair = (u, v) if u < v else (v, u)
        if pair in seen:
            if seen[pair] != weight:
                raise GameInputError(
                    f"{where}: asymmetric weights for edge {pair!r}: "
                    f"{format_rational(seen[pair])} vs {format_rational(weight)}"
                )
            raise GameInputError(f"{where}: duplicate edge {pair!r}")
        seen[pair] = weight
        edges.append((u, v, weight))

    graph = WeightedGraph(ids, edges)
    return Game(graph, coordinating, thresholds)


def load_game(path: str) -> Game:
    """Parse a game file from disk ('-' reads standard input)."""
    if path == "-":
        import sys

        return parse_game(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise GameInputError(f"cannot read {path!r}: {exc.strerror}") from None
    return parse_game(text)


def serialize_game(game: Game) -> str:
    """Canonical JSON text for a game (ends with a newline)."""
    nodes = [
        {
            "id": v,
            "role": "coordinating" if v in game.coordinating else "anticoordinating",
            "threshold": format_rational(game.thresholds[v]),
        }
        for v in game.nodes
    ]
    edges = [
        {"u": u, "v": v, "weight": format_rational(w)}
        for u, v, w in game.graph.edges()
    ]
    return json.dumps({"nodes": nodes, "edges": edges}, indent=2) + "\n"


def to_dot(game: Game, config: Optional[int] = None) -> str:
    """Graphviz text: roles as node colors, weights as edge labels, and an
    optional action overlay (players at 1 drawn filled).
    """
    lines = ["graph game {"]
    for k, v in enumerate(game.nodes):
        color = "blue" if v in game.coordinating else "red"
        attrs = [f"color={color}"]
        if config is not None:
            attrs.append(
                "style=filled, fillcolor=lightgray" if config >> k & 1 else "style=solid"
            )
        lines.append(f'  "{v}" [{", ".join(attrs)}];')
    for u, v, w in game.graph.edges():
        lines.append(f'  "{u}" -- "{v}" [label="{format_rational(w)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
