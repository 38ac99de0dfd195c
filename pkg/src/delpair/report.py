"""Deterministic run reports for the command-line front end.

A report collects named instances, each with a pass/fail verdict and a
dictionary of witnesses (scalars, cocycle tables, isomorphism data).
Rendering is deterministic: instances keep insertion order, witness keys
are sorted, and the wall-clock duration is only emitted when explicitly
requested, so identical commands with identical seeds and inputs produce
identical bytes.
"""

import json
from fractions import Fraction

PASS = "pass"
FAIL = "fail"


def jsonable(value):
    """Reduce a witness value to JSON-serializable data, deterministically."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in
                sorted(value.items(), key=lambda kv: str(kv[0]))}
    return str(value)


def _flat(value):
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class Report:
    """The outcome of one command: named instances, verdicts, witnesses."""

    __slots__ = ("command", "seed", "field", "instances", "duration")

    def __init__(self, command, seed=None, field=None):
        self.command = command
        self.seed = seed
        self.field = field
        self.instances = []
        self.duration = None

    def add(self, name, ok, **witnesses):
        """Record one instance; returns ``ok`` so callers can chain."""
        self.instances.append({
            "name": name,
            "verdict": PASS if ok else FAIL,
            "witnesses": {k: jsonable(v) for k, v in sorted(witnesses.items())},
        })
        return ok

    @property
    def all_passed(self):
        return all(inst["verdict"] == PASS for inst in self.instances)

    @property
    def exit_code(self):
        return 0 if self.all_passed else 1

    def as_dict(self, timing=False):
        data = {
            "command": self.command,
            "seed": self.seed,
            "field": self.field,
            "instances": self.instances,
            "verdict": PASS if self.all_passed else FAIL,
        }
        if timing:
            data["duration"] = self.duration
        return data

    def to_json(self, timing=False):
        return json.dumps(self.as_dict(timing=timing), sort_keys=True, indent=2)

    def to_text(self, timing=False):
        lines = ["command: " + self.command]
        if self.seed is not None:
            lines.append("seed: %d" % self.seed)
        if self.field is not None:
            lines.append("field: " + self.field)
        for inst in self.instances:
            bits = ["%s: %s" % (inst["name"], inst["verdict"])]
            for k, v in inst["witnesses"].items():
                bits.append("%s=%s" % (k, _flat(v)))
            lines.append("  ".join(bits))
        good = sum(1 for inst in self.instances if inst["verdict"] == PASS)
        lines.append("%d/%d instances passed" % (good, len(self.instances)))
        if timing and self.duration is not None:
            lines.append("duration: %.3fs" % self.duration)
        return "\n".join(lines)
