"""Representations of finite groupoids: Python front end to the C++ core."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import _run


def run(command, input, seed=0, tol=1e-9, rep="", rep2="", bibundle=""):
    """Run a CLI command in process. Returns (status, report dict)."""
    status, text = _run(command, input, seed, tol, rep, rep2, bibundle)
    return status, _json.loads(text)
