import json
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, model_validator


class Verdict(BaseModel):
    """Outcome of a decision procedure.

    Failed verdicts always carry a witness; passes may carry a certificate.
    Sub-verdicts (e.g. each conclusion of a theorem instance) go in `parts`.
    """
    check: str
    passed: bool
    witness: Optional[Dict[str, Any]] = None
    certificate: Optional[Dict[str, Any]] = None
    parts: Dict[str, "Verdict"] = Field(default_factory=dict)
    authoritative: bool = True

    @model_validator(mode="after")
    def failed_verdict_has_witness(self) -> "Verdict":
        if not self.passed and not self.witness:
            raise ValueError(f"failed verdict '{self.check}' must carry a witness")
        return self

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json", exclude_none=True), indent=2, sort_keys=True)
