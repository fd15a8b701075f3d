"""Pydantic schemas for verification sweeps and benchmarks."""
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime, perfect_power

SUITES = (
    "gauss-oracle",
    "gauss-j-independence",
    "rj-congruence",
    "jacobi-paths",
    "jacobi-triples",
    "translation",
    "top-case",
    "magnitude",
    "induction",
)

CSV_COLUMNS = [
    "p", "m", "k", "n", "B", "c_tuple", "e_tuple",
    "method_a", "method_b", "re_a", "im_a", "re_b", "im_b", "deviation", "status",
]


class BPolicy(str, Enum):
    """Which B = p^n a Jacobi sweep visits."""
    all = "all"        # every 0 <= n <= m
    sample = "sample"  # B in {1, p}


class ReportFormat(str, Enum):
    csv = "csv"
    json = "json"  # one object per line


class Status(str, Enum):
    passed = "pass"
    failed = "fail"
    skipped = "skipped-regime"


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    if isprime(q):
        return q, 1
    # largest exponent first: a prime power comes back with a prime base
    found = perfect_power(q)
    if not found or not isprime(found[0]):
        raise ValueError(f"{q} is not a prime power")
    return int(found[0]), int(found[1])


class SweepConfig(BaseModel):
    """Grid and tolerances of a verification sweep."""
    primes: list[int] = Field(default_factory=lambda: [2, 3, 5, 7, 11, 13])
    max_modulus: int = Field(default=20000, gt=1)  # bounds p^m in the Gauss suites
    jacobi_moduli: list[int] = Field(default_factory=lambda: [8, 16, 32, 64, 128, 9, 27, 81, 25, 125, 49])
    triple_moduli: list[int] = Field(default_factory=lambda: [9, 27, 25, 8, 16, 32])
    magnitude_moduli: list[int] = Field(default_factory=lambda: [9, 27, 8, 16])
    induction_moduli: list[int] = Field(default_factory=lambda: [9, 27, 25])
    k_values: list[int] = Field(default_factory=lambda: [2, 3])
    b_policy: BPolicy = BPolicy.all
    sample_cap: int = Field(default=500, gt=0)
    triple_samples: int = Field(default=200, gt=0)
    tolerance: float = Field(default=1e-6, gt=0)
    jobs: int = Field(default=1, gt=0)
    term_guard: int = Field(default=10**8, gt=0)
    seed: int = 0
    suites: list[str] = Field(default_factory=lambda: list(SUITES))
    output: Path | None = None
    format: ReportFormat = ReportFormat.csv

    @field_validator("primes")
    @classmethod
    def check_primes(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("at least one prime is required")
        bad = [p for p in v if not isprime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        return sorted(set(v))

    @field_validator("jacobi_moduli", "triple_moduli", "magnitude_moduli", "induction_moduli")
    @classmethod
    def check_prime_powers(cls, v: list[int]) -> list[int]:
        for q in v:
            _, m = _prime_power(q)
            if m < 2:
                raise ValueError(f"Jacobi moduli need m >= 2, got {q}")
        return v

    @field_validator("k_values")
    @classmethod
    def check_k(cls, v: list[int]) -> list[int]:
        if not v or any(k not in (2, 3) for k in v):
            raise ValueError(f"k_values must be a non-empty subset of [2, 3], got {v}")
        return v

    @field_validator("suites")
    @classmethod
    def check_suites(cls, v: list[str]) -> list[str]:
        unknown = [s for s in v if s not in SUITES]
        if unknown or not v:
            raise ValueError(f"unknown suites {unknown}; expected a subset of {list(SUITES)}")
        return v

    @model_validator(mode="after")
    def check_any_modulus(self) -> "SweepConfig":
        if all(q > self.max_modulus for q in self.jacobi_moduli) and "jacobi-paths" in self.suites:
            raise ValueError("every Jacobi modulus exceeds max_modulus")
        return self

    def moduli(self, values: list[int]) -> list[tuple[int, int]]:
        """(p, m) pairs of the listed moduli whose prime is swept and q <= max_modulus."""
        pairs = [_prime_power(q) for q in values if q <= self.max_modulus]
        return [(p, m) for p, m in pairs if p in self.primes]


class DiscrepancyRecord(BaseModel):
    """One comparison between two evaluation paths (or a path and a prediction)."""
    suite: str
    p: int
    m: int
    k: int
    n: int
    B: int
    c_tuple: tuple[int, ...]
    e_tuple: tuple[int, ...]
    method_a: str
    method_b: str
    re_a: float
    im_a: float
    re_b: float
    im_b: float
    deviation: float
    status: Status
    notes: str = ""

    def csv_row(self) -> dict:
        row = self.model_dump(include=set(CSV_COLUMNS), mode="json")
        row["c_tuple"] = " ".join(str(c) for c in self.c_tuple)
        row["e_tuple"] = " ".join(str(e) for e in self.e_tuple)
        return row


class SweepSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0

    def add(self, record: DiscrepancyRecord) -> None:
        self.total += 1
        if record.status is Status.passed:
            self.passed += 1
        elif record.status is Status.failed:
            self.failed += 1
        else:
            self.skipped += 1

    def __str__(self) -> str:
        return f"{self.total} checks: {self.passed} pass, {self.failed} fail, {self.skipped} skipped"


class BenchRow(BaseModel):
    """Median wall times of the brute and closed paths for one (p, m, k)."""
    p: int
    m: int
    k: int
    terms: int
    brute_median_s: float | None = None
    closed_median_s: float
    speedup: float | None = None
    status: str = "ok"  # "brute-skipped" when the term guard refuses the brute sum
