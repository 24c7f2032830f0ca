"""Plain text formats: model files, solution spec files, CSV dumps.

Numbers are stored exactly when rational ("5/2", "-7") and as repr-floats
otherwise, so files round-trip without loss.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np

from .model import DlvModel, ModelError

__all__ = [
    "parse_number",
    "format_number",
    "serialize_model",
    "parse_model",
    "load_model",
    "save_model",
    "parse_solution_spec",
    "load_solution_spec",
    "write_csv",
    "fmt17",
]


def parse_number(text: str):
    """'3' -> int, '5/2' -> Fraction, '0.25'/'1e-3' -> float.

    Non-numeric tokens come back unchanged (some entries take string-valued
    parameters such as branch selectors); numeric contexts reject them later.
    """
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except ValueError:
        return text


def format_number(v) -> str:
    if isinstance(v, bool):
        raise ModelError("booleans are not model numbers")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(float(v))


def fmt17(v: float) -> str:
    """Locale-independent, 17 significant digits."""
    return f"{float(v):.17g}"


def serialize_model(model: DlvModel) -> str:
    lines = []
    if model.name:
        lines.append(f"name = {model.name}")
    lines.append(f"m = {model.m}")
    lines.append("lambda = " + " ".join(format_number(v) for v in model.lam))
    lines.append("a = " + " ".join(format_number(v) for v in model.a))
    lines.append("b = " + " ; ".join(" ".join(format_number(v) for v in row) for row in model.b))
    return "\n".join(lines) + "\n"


def parse_model(text: str) -> DlvModel:
    fields = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ModelError(f"bad model line: {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        fields[key] = val
    try:
        m = int(fields["m"])
        lam = tuple(parse_number(s) for s in fields["lambda"].split())
        a = tuple(parse_number(s) for s in fields["a"].split())
        b = tuple(
            tuple(parse_number(s) for s in row.split()) for row in fields["b"].split(";")
        )
    except KeyError as exc:
        raise ModelError(f"model file missing field {exc}") from None
    if len(lam) != m:
        raise ModelError(f"m={m} but lambda has {len(lam)} entries")
    return DlvModel(lam, a, b, fields.get("name"))


def load_model(path) -> DlvModel:
    return parse_model(Path(path).read_text())


def save_model(model: DlvModel, path) -> None:
    Path(path).write_text(serialize_model(model))


def parse_solution_spec(text: str) -> tuple[str, dict]:
    """Spec file: an ``id = NAME`` line plus one ``key = value`` per parameter."""
    sol_id = None
    params = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ModelError(f"bad solution spec line: {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key == "id":
            sol_id = val
        else:
            params[key] = parse_number(val)
    if sol_id is None:
        raise ModelError("solution spec has no 'id' line")
    return sol_id, params


def load_solution_spec(path) -> tuple[str, dict]:
    return parse_solution_spec(Path(path).read_text())


def write_csv(path, header: str, columns) -> None:
    """Columns of equal length, full double precision, byte-reproducible."""
    cols = [np.asarray(c, dtype=float).ravel() for c in columns]
    n = len(cols[0])
    lines = [header]
    for i in range(n):
        lines.append(",".join(fmt17(c[i]) for c in cols))
    Path(path).write_text("\n".join(lines) + "\n")
