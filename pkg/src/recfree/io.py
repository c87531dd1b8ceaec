"""Text formats: arrangement files, derivation files, certificates."""
from __future__ import annotations

import json
from pathlib import Path

from .arrangement import Arrangement, Hyperplane
from .exactfield import FieldError, make_field
from .poly import parse_poly


class InputError(ValueError):
    pass


def arrangement_to_json(a: Arrangement) -> dict:
    F = a.field
    return {"field": F.descriptor(), "hyperplanes": [[F.encode(x) for x in h.normal] for h in a]}


def dump_arrangement(a: Arrangement) -> str:
    """Canonical text: one hyperplane per line, fixed separators, trailing newline."""
    data = arrangement_to_json(a)
    lines = ["{", f'  "field": {json.dumps(data["field"])},']
    if data["hyperplanes"]:
        lines.append('  "hyperplanes": [')
        rows = [json.dumps(h) for h in data["hyperplanes"]]
        lines += [f"    {r}," for r in rows[:-1]] + [f"    {rows[-1]}"]
        lines.append("  ]")
    else:
        lines.append('  "hyperplanes": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _loads(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{what}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def arrangement_from_json(data, what: str = "arrangement") -> Arrangement:
    if not isinstance(data, dict) or "field" not in data or "hyperplanes" not in data:
        raise InputError(f"{what}: expected an object with 'field' and 'hyperplanes'")
    try:
        F = make_field(data["field"])
    except FieldError as e:
        raise InputError(f"{what}: field: {e}") from None
    hs = []
    for i, h in enumerate(data["hyperplanes"]):
        if not isinstance(h, list) or len(h) != 3:
            raise InputError(f"{what}: hyperplane {i}: expected 3 coordinates")
        try:
            hs.append(Hyperplane(F, [F.parse(x) for x in h]))
        except (FieldError, ValueError) as e:
            raise InputError(f"{what}: hyperplane {i}: {e}") from None
    return Arrangement(F, hs)


def load_arrangement_text(text: str, what: str = "arrangement") -> Arrangement:
    return arrangement_from_json(_loads(text, what), what)


def load_arrangement(path) -> Arrangement:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    return load_arrangement_text(text, str(path))


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    return _loads(text, str(path))


def load_hyperplanes(path, field) -> list[Hyperplane]:
    """A hint file: either an arrangement file over ``field`` or a bare list of covectors."""
    data = load_json(path)
    if isinstance(data, dict):
        a = arrangement_from_json(data, str(path))
        if a.field is not field:
            raise InputError(f"{path}: field {a.field!r} does not match {field!r}")
        return list(a)
    if isinstance(data, list):
        try:
            return [Hyperplane(field, [field.parse(x) for x in h]) for h in data]
        except (FieldError, ValueError, TypeError) as e:
            raise InputError(f"{path}: {e}") from None
    raise InputError(f"{path}: expected a list of covectors")


def load_derivations(path, field):
    """Derivation file: ``{"basis": [[f1, f2, f3], ...]}`` with polynomial strings in x, y, z.

    A ``"field"`` entry, if present, must match the arrangement's field.
    """
    data = load_json(path)
    if not isinstance(data, dict) or "basis" not in data:
        raise InputError(f"{path}: expected an object with 'basis'")
    if "field" in data and make_field(data["field"]) is not field:
        raise InputError(f"{path}: field does not match the arrangement")
    try:
        return [[parse_poly(field, str(f)) for f in theta] for theta in data["basis"]]
    except (FieldError, ValueError) as e:
        raise InputError(f"{path}: {e}") from None
