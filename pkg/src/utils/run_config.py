"""Validated per-invocation settings."""
from typing import List, Literal, Optional
import sys
from pathlib import Path

from pydantic import BaseModel, Field, model_validator

sys.path.append(str(Path(__file__).parent.parent))

from circuits.gate_stats import sample_indices

OutputFormat = Literal["json", "qasm", "text"]


def parse_selection(text: str, n: int, ceiling: int) -> List[int]:
    """Basis indices from "5", "2-7" or "all"."""
    d = 1 << n
    text = text.strip().lower()
    if text == "all":
        if d > ceiling:
            raise ValueError(f"'all' would enumerate {d} circuits; use a range or --sample")
        return list(range(d))
    try:
        if "-" in text:
            lo, hi = (int(part) for part in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ValueError(f"invalid index selection {text!r}") from None
    if not 0 <= lo <= hi < d:
        raise ValueError(f"index selection {text!r} outside 0..2^{n}-1")
    return list(range(lo, hi + 1))


class RunConfig(BaseModel):
    """Settings of one CLI invocation."""
    n: int = Field(ge=1)
    poly: Optional[str] = None
    selection: str = "all"
    output_format: OutputFormat = "json"
    sample: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    ceiling: int = Field(default=1 << 16, ge=1)

    @model_validator(mode="after")
    def _selection_fits(self) -> "RunConfig":
        if self.sample is None:
            parse_selection(self.selection, self.n, self.ceiling)
        return self

    def indices(self) -> List[int]:
        if self.sample is not None:
            return sample_indices(self.n, self.sample, self.seed)
        return parse_selection(self.selection, self.n, self.ceiling)
