"""JSON output with 17 significant digits for floats.

Floats always carry a ``.`` or an exponent so they parse back as floats, which
makes ``dumps(json.loads(dumps(x)))`` reproduce the text exactly. Non-finite
floats become ``null``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = "%.17g" % x
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _plain(o):
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, tuple):
        return list(o)
    return o


def _encode(o, indent: int, level: int) -> str:
    o = _plain(o)
    if o is None or isinstance(o, (bool, str)):
        return json.dumps(o)
    if isinstance(o, int):
        return str(o)
    if isinstance(o, float):
        return format_float(o)
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [json.dumps(str(k)) + ": " + _encode(v, indent, level + 1) for k, v in o.items()]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(o, list):
        if not o:
            return "[]"
        if all(not isinstance(_plain(v), (dict, list)) for v in o):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in o) + "]"
        return "[" + pad + ("," + pad).join(_encode(v, indent, level + 1) for v in o) + end + "]"
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"
