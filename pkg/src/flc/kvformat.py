"""Line-oriented `key = value` format shared by .flc and .cfg files.

Values: bare scalars (bool/int/float/word), "quoted text", [sym lists],
and name(arg=..., ...) calls. Entries come back as {key: (value, line)};
keys listed in `repeated` accumulate [(value, line), ...]; keys under
`numbered_prefix.` collect into {index: (value, line)}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class Call:
    name: str
    kwargs: dict

    def __str__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.kwargs.items())
        return f"{self.name}({args})"


CALL_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$", re.DOTALL)


def parse_scalar(text: str):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text


def parse_value(text: str, line_no: int):
    text = text.strip()
    if not text:
        raise ParseError("missing value", line_no)
    if text.startswith('"'):
        if len(text) < 2 or not text.endswith('"'):
            raise ParseError("unterminated quoted value", line_no)
        return text[1:-1]
    if text.startswith("["):
        if not text.endswith("]"):
            raise ParseError("unterminated list value", line_no)
        return text[1:-1].split()
    call = CALL_RE.fullmatch(text)
    if call:
        kwargs = {}
        body = call.group(2).strip()
        if body:
            for part in body.split(","):
                if "=" not in part:
                    raise ParseError(f"expected name=value in call, got {part.strip()!r}",
                                     line_no)
                key, raw = part.split("=", 1)
                key = key.strip()
                raw = raw.strip()
                if raw.startswith("[") and raw.endswith("]"):
                    kwargs[key] = raw[1:-1].split()
                else:
                    kwargs[key] = parse_scalar(raw)
        return Call(call.group(1), kwargs)
    return parse_scalar(text)


def parse_lines(text: str, *, numbered_prefix: str | None = None,
                repeated: frozenset[str] = frozenset()) -> dict:
    entries: dict[str, object] = {}
    numbered: dict[int, tuple] = {}
    prefix = None if numbered_prefix is None else numbered_prefix + "."
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected key = value, got {line!r}", line_no)
        key, value_text = line.split("=", 1)
        key = key.strip()
        value = parse_value(value_text, line_no)
        if prefix is not None and key.startswith(prefix):
            index_text = key[len(prefix):]
            if not index_text.isdigit():
                raise ParseError(f"{numbered_prefix} key needs a state index, "
                                 f"got {key!r}", line_no)
            idx = int(index_text)
            if idx in numbered:
                raise ParseError(f"duplicate {numbered_prefix} entry for "
                                 f"state {idx}", line_no)
            numbered[idx] = (value, line_no)
            continue
        if key in repeated:
            entries.setdefault(key, []).append((value, line_no))
            continue
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", line_no)
        entries[key] = (value, line_no)
    if numbered_prefix is not None:
        entries[numbered_prefix] = numbered
    return entries
