"""Outcome records shared by the class system, the harness and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
SKIP = "skip"
FAIL = "fail"

BASIS_INSTANCE = "instance"
BASIS_ESTABLISHED = "ledger: established"
BASIS_EVIDENCE = "ledger: corpus evidence"


@dataclass
class PropositionReport:
    """One check of one statement on one group (or one corpus)."""

    prop_id: str
    group: str
    group_id: str
    params: dict[str, Any]
    outcome: str
    reason: str | None = None
    witness: dict[str, Any] = field(default_factory=dict)
    basis: str = BASIS_INSTANCE
    detail: dict[str, Any] = field(default_factory=dict)
    timing: float = 0.0

    def __post_init__(self):
        if self.outcome == FAIL and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.outcome == PASS

    @property
    def failed(self) -> bool:
        return self.outcome == FAIL

    @property
    def skipped(self) -> bool:
        return self.outcome == SKIP

    def sort_key(self) -> tuple:
        return (self.prop_id, self.group, sorted((k, str(v)) for k, v in self.params.items()))

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready form; timing is deliberately left out so output is reproducible."""
        out: dict[str, Any] = {
            "prop": self.prop_id,
            "group": self.group,
            "group_id": self.group_id,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "outcome": self.outcome,
            "basis": self.basis,
        }
        if self.reason:
            out["reason"] = self.reason
        if self.witness:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def subgroup_summary(H) -> dict[str, Any]:
    """Serializable description of a Subgroup: order and member indices."""
    return {"order": H.order, "members": list(H.members)}
