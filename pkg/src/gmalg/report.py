"""Pass/fail reports shared by the verification pipelines.

One line per checked condition; serialization is deterministic so report
bytes are stable across runs for identical inputs.
"""

import json
from collections import namedtuple

CheckLine = namedtuple("CheckLine", ["cond_id", "passed", "witness"])


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items())}
    return str(value)


class Report:
    def __init__(self, title, lines=None):
        self.title = title
        self.lines = list(lines or [])

    def add(self, cond_id, passed, witness=None):
        self.lines.append(CheckLine(cond_id, bool(passed), witness))

    @property
    def all_pass(self):
        return all(line.passed for line in self.lines)

    def failures(self):
        return [line for line in self.lines if not line.passed]

    def to_json(self):
        return {
            "title": self.title,
            "all_pass": self.all_pass,
            "lines": [
                {
                    "cond_id": line.cond_id,
                    "passed": line.passed,
                    "witness": _jsonable(line.witness),
                }
                for line in self.lines
            ],
        }

    def to_markdown(self):
        out = [f"## {self.title}", "", "| condition | result | witness |", "|---|---|---|"]
        for line in self.lines:
            res = "pass" if line.passed else "FAIL"
            wit = "" if line.witness is None else json.dumps(_jsonable(line.witness))
            out.append(f"| {line.cond_id} | {res} | {wit} |")
        return "\n".join(out)

    def __repr__(self):
        status = "all-pass" if self.all_pass else f"{len(self.failures())} failing"
        return f"Report({self.title!r}, {len(self.lines)} lines, {status})"
