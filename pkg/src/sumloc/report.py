"""JSON-lines reports with exact rationals rendered as ``p/q`` strings."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

from ._exact import CReal

ENCLOSURE_BITS = 64


def exact(value: Any) -> Any:
    """A JSON-ready form: rationals become strings, certified reals become enclosures."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return "inf" if math.isinf(value) else repr(value)
    if isinstance(value, CReal):
        if value.exact is not None:
            return str(value.exact)
        lo, hi = value.bounds(ENCLOSURE_BITS)
        return {"lower": str(lo), "upper": str(hi)}
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    return str(value)


def approx(value: Any) -> Optional[float]:
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, Fraction)):
        return float(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, CReal):
        return value.approx()
    return None


@dataclass
class Assertion:
    name: str
    lhs: Any
    relation: str
    rhs: Any
    passed: bool


@dataclass
class Report:
    command: str
    argv: list[str]
    inputs: dict[str, bytes] = field(default_factory=dict)
    outputs: list[tuple[str, Any]] = field(default_factory=list)
    assertions: list[Assertion] = field(default_factory=list)

    def output(self, name: str, value: Any) -> None:
        self.outputs.append((name, value))

    def check(self, name: str, lhs: Any, relation: str, rhs: Any, passed: bool) -> bool:
        self.assertions.append(Assertion(name, lhs, relation, rhs, bool(passed)))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(json.dumps(self.argv).encode())
        for name in sorted(self.inputs):
            h.update(name.encode())
            h.update(self.inputs[name])
        return h.hexdigest()

    def lines(self, exit_code: int) -> Iterable[str]:
        dump = lambda obj: json.dumps(obj, sort_keys=True, separators=(",", ":"))
        yield dump({"type": "command", "command": self.command, "argv": self.argv, "inputs_digest": self.digest()})
        for name, value in self.outputs:
            rec = {"type": "output", "name": name, "value": exact(value)}
            a = approx(value)
            if a is not None:
                rec["approx"] = a
            yield dump(rec)
        for a in self.assertions:
            yield dump({"type": "assertion", "name": a.name, "lhs": exact(a.lhs), "relation": a.relation,
                        "rhs": exact(a.rhs), "pass": a.passed})
        yield dump({"type": "summary", "pass": self.passed, "assertions": len(self.assertions), "exit": exit_code})

    def render(self, exit_code: int) -> str:
        return "\n".join(self.lines(exit_code)) + "\n"
