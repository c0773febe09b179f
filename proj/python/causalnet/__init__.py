"""Causal networks and causal diagrams.

Every function accepts either JSON text or an already decoded dict/list and
returns decoded JSON (dicts and lists), except where noted.
"""

import json

from . import _core
from ._core import CausalNetError

__all__ = [
    "CausalNetError",
    "canonicalize",
    "decompose",
    "verify_decomposition",
    "apply_moves",
    "evaluate",
    "total_value",
    "gauge_check",
    "nerve",
    "poset_to_network",
    "network_to_poset",
    "to_dot",
]


def _text(x):
    return x if isinstance(x, str) else json.dumps(x)


def _opt(x):
    return None if x is None else _text(x)


def canonicalize(doc, kind):
    """Canonical form of a network, diagram, functor, moves or poset document."""
    return json.loads(_core.canonicalize(_text(doc), kind))


def decompose(functor):
    """{"moves": [...], "verified": bool}"""
    return json.loads(_core.decompose(_text(functor)))


def verify_decomposition(functor, moves):
    return _core.verify_decomposition(_text(functor), _text(moves))


def apply_moves(network, moves):
    return json.loads(_core.apply_moves(_text(network), _text(moves)))


def evaluate(diagram, subset=None, qdom=None, qcod=None):
    return json.loads(_core.evaluate(_text(diagram), subset, qdom, qcod))


def total_value(diagram):
    return json.loads(_core.total_value(_text(diagram)))


def gauge_check(left, right, witness=None):
    return _core.gauge_check(_text(left), _text(right), _opt(witness))


def nerve(diagram, functor=None, moves=None):
    return json.loads(_core.nerve(_text(diagram), _opt(functor), _opt(moves)))


def poset_to_network(poset):
    return json.loads(_core.poset_to_network(_text(poset)))


def network_to_poset(network):
    return json.loads(_core.network_to_poset(_text(network)))


def to_dot(doc):
    """DOT text for a diagram (has "instance") or a network."""
    decoded = json.loads(doc) if isinstance(doc, str) else doc
    if "instance" in decoded:
        return _core.diagram_to_dot(_text(doc))
    return _core.network_to_dot(_text(doc))
