"""Pass/fail records for computational claims."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass
class Certificate:
    claim: str
    status: bool
    witness: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim,
            "status": "pass" if self.status else "fail",
            "witness": self.witness,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{'PASS' if self.status else 'FAIL'}: {self.claim}"]
        for k in sorted(self.witness):
            lines.append(f"  {k}: {self.witness[k]}")
        return "\n".join(lines)
