"""Seven-term Waring decompositions of ternary quartics.

Forms, frames and decompositions are plain dicts in the same JSON layout the
command-line tool reads and writes.
"""

import json

from . import _waring7
from ._waring7 import Error

__all__ = ["Error", "DecompositionFailure", "decompose", "chain", "verify", "probe", "experiments", "generate"]


class DecompositionFailure(RuntimeError):
    """The procedure stopped; ``reason`` holds the failure record."""

    def __init__(self, reason):
        super().__init__(reason.get("label", "failure") if reason else "failure")
        self.reason = reason


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _opt(obj):
    return None if obj is None else _dump(obj)


def decompose(form, frame=None, seed=0, tol=None):
    out = json.loads(_waring7.decompose(_dump(form), _opt(frame), seed, tol))
    if "failure" in out:
        raise DecompositionFailure(out["failure"])
    return out["decomposition"]


def chain(form, frame=None, seed=0):
    out = json.loads(_waring7.chain(_dump(form), _opt(frame), seed))
    if "failure" in out:
        raise DecompositionFailure(out["failure"])
    return out["chain"]


def verify(form, decomposition):
    return _waring7.verify(_dump(form), _dump(decomposition))


def probe(form, trials, seed, tol=None):
    return json.loads(_waring7.probe(_dump(form), trials, seed, tol))


def experiments(seed, frames, tol=None):
    return json.loads(_waring7.experiments(seed, frames, tol))


def generate(kind, seed=0):
    return json.loads(_waring7.generate(kind, seed))
