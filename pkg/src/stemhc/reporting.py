"""Uniform pass/fail reports for the verification entry points."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckItem:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {"name": self.name, "checked": self.checked,
                "ok": self.ok, "violations": list(self.violations)}


@dataclass
class CheckReport:
    items: list = field(default_factory=list)

    def record(self, name, checked, violations=()):
        item = CheckItem(name, checked, list(violations))
        self.items.append(item)
        return item

    def extend(self, other: "CheckReport"):
        self.items.extend(other.items)
        return self

    @property
    def ok(self):
        return all(it.ok for it in self.items)

    @property
    def total_checked(self):
        return sum(it.checked for it in self.items)

    def to_dict(self):
        return {"ok": self.ok, "total_checked": self.total_checked,
                "items": [it.to_dict() for it in self.items]}

    def summary(self):
        lines = []
        for it in self.items:
            status = "ok" if it.ok else "FAIL(%d)" % len(it.violations)
            lines.append("%-40s %6d checks  %s" % (it.name, it.checked, status))
        return "\n".join(lines)

    def raise_on_failure(self):
        if not self.ok:
            bad = [it for it in self.items if not it.ok]
            msgs = []
            for it in bad:
                msgs.append("%s: %s" % (it.name, "; ".join(it.violations[:3])))
            raise AssertionError("verification failed: " + " | ".join(msgs))
