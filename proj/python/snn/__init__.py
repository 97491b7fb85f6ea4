"""Simultaneous nearest neighbor search.

Instances are dicts in the same JSON schema the ``snn`` command line tool
reads. Results come back as dicts.
"""

import json

from . import _snn
from ._snn import GuardExceeded, IoError

__all__ = [
    "GuardExceeded",
    "IoError",
    "cost",
    "denoise",
    "gap",
    "lower_bound_instance",
    "oracle",
    "reduce",
    "rplus",
    "solve",
]


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def cost(instance, labels):
    return json.loads(_snn.cost(_text(instance), list(labels)))


def solve(instance, stage2="auto", seed=42):
    return json.loads(_snn.solve(_text(instance), stage2, seed))


def oracle(instance, method="enumeration", guard=0.0):
    return json.loads(_snn.oracle(_text(instance), method, guard))


def gap(instance, method="enumeration"):
    return json.loads(_snn.gap(_text(instance), method))


def rplus(instance):
    return json.loads(_snn.rplus(_text(instance)))


def reduce(instance):
    return json.loads(_snn.reduce(_text(instance)))


def lower_bound_instance(k, d=3, mult=2, seed=42):
    return json.loads(_snn.lower_bound_instance(k, d, mult, seed))


def denoise(path, runs=20, seed=42, noise="salt-and-pepper", noise_param=0.05, noise_seed=42):
    return json.loads(_snn.denoise(str(path), runs, seed, noise, noise_param, noise_seed))
