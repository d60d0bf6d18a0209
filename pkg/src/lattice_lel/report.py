"""Output formatting shared by the CLI and the report builders.

Numbers are written with 12 significant digits; every write goes through a
temporary file in the target directory followed by an atomic rename.
"""

from __future__ import annotations

import json
import math
import os
import tempfile

from .errors import InvariantError


def fmt12(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise InvariantError(f"non-finite value {x!r} in output")
    out = f"{x:.12g}"
    return "0" if out == "-0" else out


def round12(x: float) -> float:
    return float(fmt12(x))


def clean(obj):
    """Recursively round floats to 12 significant digits for JSON output."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round12(obj)
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return clean(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_json(obj) -> str:
    return json.dumps(clean(obj), indent=2, sort_keys=True) + "\n"


def csv_text(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt12(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
