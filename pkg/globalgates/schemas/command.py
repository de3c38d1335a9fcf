from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from globalgates.enums import ExitCode


class CommandResult(BaseModel):
    """Outcome of one CLI command."""

    exit_code: ExitCode = Field(..., description="0 ok, 1 failed check, 2 usage, 3 internal.")
    report: str = Field("", description="Human-readable report.")
    data: Optional[Dict[str, Any]] = Field(None, description="Machine-readable payload printed with --json.")
