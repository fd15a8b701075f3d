"""Pydantic schemas for single-evaluation reports."""
from enum import Enum

from pydantic import BaseModel

from charsum.arithmetic.values import ExactValue, SumResult


class OutputFormat(str, Enum):
    """Rendering of a single evaluation."""
    json = "json"
    text = "text"


class SumReport(BaseModel):
    """JSON rendering of a SumResult. Exact fields are None for numeric values."""
    zero: bool
    p: int
    half_exp: int | None = None
    scale: int | None = None
    phase_num: int | None = None
    phase_den: int | None = None
    re: float
    im: float
    method: str
    exact: bool
    notes: str = ""
    terms: int | None = None  # summed terms, numeric values only
    generator: int  # canonical generator the character labels refer to

    @classmethod
    def from_result(cls, result: SumResult, p: int, generator: int) -> "SumReport":
        z = result.to_complex()
        fields = dict(
            p=p,
            re=z.real,
            im=z.imag,
            method=result.method.value,
            exact=result.is_exact,
            notes=result.notes,
            terms=result.terms,
            generator=generator,
        )
        value = result.value
        if isinstance(value, ExactValue):
            s, n = value.phase
            return cls(
                zero=value.zero,
                half_exp=value.half_exp,
                scale=value.scale,
                phase_num=s,
                phase_den=n,
                **fields,
            )
        return cls(zero=z == 0, **fields)

    def to_text(self) -> str:
        if self.exact and self.zero:
            closed = "0"
        elif self.exact:
            scale = f"{self.scale}*" if self.scale != 1 else ""
            closed = f"{scale}{self.p}^({self.half_exp}/2)*e(2pi i {self.phase_num}/{self.phase_den})"
        else:
            closed = f"numeric ({self.terms} terms)"
        line = f"{closed} ~ {self.re:+.6f} {self.im:+.6f}i  [{self.method}, generator {self.generator}]"
        return f"{line}  {self.notes}" if self.notes else line
