"""
Shared logic behind the CLI commands.

Single Gauss/Jacobi evaluations, the verification suites run by `verify`,
the sweep runner with its report writer, and the closed-form-vs-brute
benchmark. The suites are plain functions of (task arguments, config) so they
can run in worker processes.
"""
import csv
import logging
import math
import statistics
import sys
import timeit
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from itertools import product as cartesian
from itertools import repeat
from pathlib import Path
from typing import Callable, Iterable, TextIO

import numpy as np
from tqdm import tqdm

from charsum.arithmetic import (
    Character,
    ExactValue,
    Value,
    character,
    compute_Rj,
    deviation,
    enumerate_characters,
    get_context,
    is_primitive,
    mixed_product,
    to_complex,
)
from charsum.cli.schemas import (
    CSV_COLUMNS,
    SUITES,
    BenchRow,
    BPolicy,
    DiscrepancyRecord,
    ReportFormat,
    Status,
    SumReport,
    SweepConfig,
    SweepSummary,
)
from charsum.config import get_settings
from charsum.errors import InvalidArgumentError, UnsupportedRegimeError
from charsum.sums import (
    JacobiQuery,
    gauss_brute,
    gauss_closed,
    gauss_eval,
    jacobi_brute,
    jacobi_closed,
    jacobi_direct_k2,
    jacobi_eval,
    jacobi_top_case,
    jacobi_vanishes,
    jacobi_via_gauss,
    make_query,
    normalize_B,
    pair_factor,
)
from charsum.sums.gauss import min_j

logger = logging.getLogger(__name__)

GAUSS_EXHAUSTIVE_LIMIT = 5000  # above this phi(q) the Gauss suites sample characters
ZERO_TOLERANCE = 1e-9
TRANSLATION_MAX_MODULUS = 81
TOP_CASE_MAX_MODULUS = 81
BENCH_BATCH_SECONDS = 2e-3
BENCH_MAX_BATCH = 10000


# =============================================================================
# Single evaluations
# =============================================================================

def evaluate_gauss(
    p: int, m: int, c: int = 0, sign: int = 0, method: str = "auto", term_guard: int | None = None
) -> SumReport:
    """
    Evaluate one Gauss sum.

    Args:
        p, m: The modulus p^m
        c, sign: Exponent data of the character
        method: "auto", "brute" or "closed"
        term_guard: Optional override of the brute-force guard

    Returns:
        SumReport carrying the value, provenance and generator
    """
    chi = character(p, m, c, sign)
    result = gauss_eval(chi, method, term_guard)
    logger.info(f"G({chi}) via {result.method.value}")
    return SumReport.from_result(result, p, chi.ctx.generator)


def evaluate_jacobi(
    p: int,
    m: int,
    exponents: list[int],
    signs: list[int] | None = None,
    B: int = 1,
    method: str = "auto",
    term_guard: int | None = None,
) -> SumReport:
    """
    Evaluate one generalised Jacobi sum J_B(chi_1, ..., chi_k, p^m).

    Returns:
        SumReport carrying the value, provenance and generator
    """
    query = make_query(p, m, exponents, signs, B)
    result = jacobi_eval(query, method, term_guard)
    logger.info(f"{query} via {result.method.value}")
    return SumReport.from_result(result, p, query.ctx.generator)


# =============================================================================
# Record helpers
# =============================================================================

def _ident_chars(p: int, m: int, chars, n: int = 0, B: int = 0) -> dict:
    return dict(
        p=p,
        m=m,
        k=len(chars),
        n=n,
        B=B,
        c_tuple=tuple(chi.exponent for chi in chars),
        e_tuple=tuple(chi.sign for chi in chars),
    )


def _ident(query: JacobiQuery) -> dict:
    return _ident_chars(query.p, query.m, query.chars, query.n, query.B)


def _record(
    suite: str,
    ident: dict,
    method_a: str,
    za: complex,
    method_b: str,
    zb: complex,
    ok: bool,
    notes: str = "",
    dev: float | None = None,
) -> DiscrepancyRecord:
    return DiscrepancyRecord(
        suite=suite,
        method_a=method_a,
        method_b=method_b,
        re_a=za.real,
        im_a=za.imag,
        re_b=zb.real,
        im_b=zb.imag,
        deviation=abs(za - zb) if dev is None else dev,
        status=Status.passed if ok else Status.failed,
        notes=notes,
        **ident,
    )


def _agree(a: Value, b: Value, tolerance: float, scale: float) -> bool:
    if isinstance(a, ExactValue) and isinstance(b, ExactValue):
        return a == b
    return deviation(a, b) <= tolerance * max(1.0, scale)


def _compare(
    suite: str, ident: dict, method_a: str, a: Value, method_b: str, b: Value,
    tolerance: float, scale: float, notes: str = "",
) -> DiscrepancyRecord:
    return _record(
        suite, ident, method_a, to_complex(a), method_b, to_complex(b),
        _agree(a, b, tolerance, scale), notes, deviation(a, b),
    )


def _skipped(suite: str, ident: dict, method_a: str, method_b: str, reason: str) -> DiscrepancyRecord:
    return DiscrepancyRecord(
        suite=suite,
        method_a=method_a,
        method_b=method_b,
        re_a=0.0,
        im_a=0.0,
        re_b=0.0,
        im_b=0.0,
        deviation=0.0,
        status=Status.skipped,
        notes=reason,
        **ident,
    )


def _rng(config: SweepConfig, suite: str, *key: int) -> np.random.Generator:
    # seeded per task so parallel runs reproduce serial ones
    return np.random.default_rng([config.seed, SUITES.index(suite), *key])


def _sample(items: list, cap: int, rng: np.random.Generator) -> list:
    if len(items) <= cap:
        return items
    picked = rng.choice(len(items), size=cap, replace=False)
    return [items[i] for i in sorted(picked)]


def _tuples(chars: list[Character], k: int, cap: int, rng: np.random.Generator) -> list[tuple[Character, ...]]:
    """All k-tuples when there are at most cap of them, else cap random draws."""
    if len(chars) ** k <= cap:
        return list(cartesian(chars, repeat=k))
    draws = rng.integers(len(chars), size=(cap, k))
    return [tuple(chars[i] for i in row) for row in draws]


def _characters(p: int, m: int) -> list[Character]:
    return list(enumerate_characters(get_context(p, m)))


def _b_values(p: int, m: int, policy: BPolicy) -> list[int]:
    if policy is BPolicy.sample:
        return [1, p]
    return [p**n for n in range(m + 1)]


def _gauss_moduli(config: SweepConfig) -> list[tuple[int, int]]:
    pairs = []
    for p in config.primes:
        m = 2
        while p**m <= config.max_modulus:
            pairs.append((p, m))
            m += 1
    return pairs


# =============================================================================
# Jacobi path agreement
# =============================================================================

def check_query(suite: str, query: JacobiQuery, config: SweepConfig, zeros: bool = True) -> list[DiscrepancyRecord]:
    """
    Compare every applicable evaluation path of one query against brute force.

    Exact paths are also compared with each other (bitwise), and for n < m the
    vanishing criterion is checked against the brute-force value.
    """
    p, m, n, k = query.p, query.m, query.n, query.k
    ident = _ident(query)
    brute = jacobi_brute(query, config.term_guard).value
    scale = max(math.sqrt(p) ** (m * (k - 1) + n), brute.magnitude)

    if n < m and not any(is_primitive(chi) for chi in query.chars):
        return [_skipped(suite, ident, "brute", "closed-paths", "no primitive character")]

    paths: list[tuple[str, Callable]] = []
    if n == m:
        paths.append(("top-case", jacobi_top_case))
    else:
        if n <= m - 2:
            paths.append(("jacobi-closed", jacobi_closed))
            if p != 2 and k == 2:
                paths.append(("direct-k2", jacobi_direct_k2))
        paths.append(("gauss-quotient", jacobi_via_gauss))

    records, exact = [], []
    for name, path in paths:
        try:
            result = path(query)
        except UnsupportedRegimeError as e:
            records.append(_skipped(suite, ident, "brute", name, str(e)))
            continue
        records.append(_compare(suite, ident, "brute", brute, name, result.value, config.tolerance, scale, result.notes))
        if result.is_exact:
            exact.append((name, result.value))

    for (name_a, a), (name_b, b) in zip(exact, exact[1:]):
        records.append(_compare(suite, ident, name_a, a, name_b, b, config.tolerance, scale))

    if zeros and m >= 2 and n < m:
        predicted = jacobi_vanishes(query)
        observed = brute.magnitude <= ZERO_TOLERANCE
        records.append(_record(
            suite, ident, "brute |J|", complex(brute.magnitude),
            "zero-criterion", 0j if predicted else complex(1),
            ok=predicted == observed,
            notes="predicted zero" if predicted else "predicted nonzero",
            dev=brute.magnitude if predicted else 0.0,
        ))
    return records


# =============================================================================
# Suites: planners return picklable task arguments, runners return records
# =============================================================================

def _plan_gauss_oracle(config: SweepConfig) -> list[tuple]:
    return _gauss_moduli(config)


def _run_gauss_oracle(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    p, m = args
    ctx = get_context(p, m)
    chars = list(enumerate_characters(ctx))
    if ctx.phi > GAUSS_EXHAUSTIVE_LIMIT:
        chars = _sample(chars, config.sample_cap, _rng(config, "gauss-oracle", p, m))
    scale = math.sqrt(p) ** m
    records = []
    for chi in chars:
        closed = gauss_closed(chi)
        brute = gauss_brute(chi, min(config.term_guard, get_settings().gauss_term_guard))
        records.append(_compare(
            "gauss-oracle", _ident_chars(p, m, [chi]), "gauss-brute", brute.value,
            "gauss-closed", closed.value, config.tolerance, scale, closed.notes,
        ))
    return records


def _plan_j_independence(config: SweepConfig) -> list[tuple]:
    return [(p, m) for p, m in _gauss_moduli(config) if p != 2 or m >= 5]


def _run_j_independence(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    p, m = args
    chars = list(enumerate_characters(get_context(p, m), primitive_only=True))
    chars = _sample(chars, config.sample_cap, _rng(config, "gauss-j-independence", p, m))
    lowest = min_j(p, m)
    scale = math.sqrt(p) ** m
    records = []
    for chi in chars:
        base = gauss_closed(chi).value
        for j in range(lowest + 1, m + 1):
            records.append(_compare(
                "gauss-j-independence", _ident_chars(p, m, [chi]),
                f"gauss-closed j={lowest}", base, f"gauss-closed j={j}", gauss_closed(chi, j).value,
                config.tolerance, scale,
            ))
    return records


def _plan_rj_congruence(config: SweepConfig) -> list[tuple]:
    return _gauss_moduli(config)


def _run_rj_congruence(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    p, m = args
    ctx = get_context(p, m)
    R = {j: compute_Rj(ctx, j) for j in range(ctx.min_j, m + 1)}
    checks: list[tuple[int, int, str, int, int]] = []  # (i, j, statement, lhs, rhs)

    if p != 2:
        checks.append((1, 1, "p does not divide r", int(ctx.r % p != 0), 1))
        for i in range(1, m + 1):
            for j in range(i, m + 1):
                mod = p**i
                checks.append((i, j, f"R_j = R_i mod {p}^i", R[j] % mod, R[i] % mod))
    else:
        for i in range(2, m - 1):
            mod = 2 ** (i + 2)
            checks.append((i, i + 1, "R_(i+1) = R_i + 2^(i-1) mod 2^(i+2)", R[i + 1] % mod, (R[i] + 2 ** (i - 1)) % mod))
        for i in range(2, m - 1):
            mod = 2 ** (i + 1)
            for j in range(i + 2, m + 1):
                checks.append((i, j, "R_j = R_i - 2^(i-1) mod 2^(i+1)", R[j] % mod, (R[i] - 2 ** (i - 1)) % mod))
        for j in range(3, m + 1):
            checks.append((j, j, "R_j = -1 mod 4", R[j] % 4, 3))

    ident = dict(p=p, m=m, k=0, n=0, B=0, e_tuple=())
    return [
        _record("rj-congruence", {**ident, "c_tuple": (i, j)}, "lhs", complex(lhs), "rhs", complex(rhs), lhs == rhs, statement)
        for i, j, statement, lhs, rhs in checks
    ]


def _plan_jacobi_paths(config: SweepConfig) -> list[tuple]:
    if 2 not in config.k_values:
        return []
    return [(p, m, i) for p, m in config.moduli(config.jacobi_moduli) for i in range(p ** (m - 1) * (p - 1))]


def _run_jacobi_paths(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    p, m, i = args
    chars = _characters(p, m)
    records = []
    for second in chars:
        for B in _b_values(p, m, config.b_policy):
            records += check_query("jacobi-paths", JacobiQuery((chars[i], second), B), config)
    return records


def _plan_triples(config: SweepConfig) -> list[tuple]:
    if 3 not in config.k_values:
        return []
    return config.moduli(config.triple_moduli)


def _run_triples(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    p, m = args
    triples = _tuples(_characters(p, m), 3, config.triple_samples, _rng(config, "jacobi-triples", p, m))
    records = []
    for triple in triples:
        for B in (1, p):
            records += check_query("jacobi-triples", JacobiQuery(triple, B), config)
    return records


def _plan_translation(config: SweepConfig) -> list[tuple]:
    if 2 not in config.k_values:
        return []
    return [(p, m) for p, m in config.moduli(config.jacobi_moduli) if p**m <= TRANSLATION_MAX_MODULUS]


def _run_translation(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    p, m = args
    q = p**m
    pairs = _tuples(_characters(p, m), 2, config.sample_cap, _rng(config, "translation", p, m))
    records = []
    for pair in pairs:
        base = {n: jacobi_brute(JacobiQuery(pair, p**n), config.term_guard).value for n in range(m)}
        for B in range(1, q):
            query = JacobiQuery(pair, B)
            _, prefactor = normalize_B(query)
            lhs = jacobi_brute(query, config.term_guard).value
            rhs = mixed_product([prefactor, base[query.n]])
            records.append(_compare(
                "translation", _ident(query), "brute J_B", lhs, "chi(B') brute J_(p^n)", rhs,
                config.tolerance, lhs.magnitude,
            ))
    return records


def _plan_top_case(config: SweepConfig) -> list[tuple]:
    return [(p, m) for p, m in config.moduli(config.jacobi_moduli) if p**m <= TOP_CASE_MAX_MODULUS]


def _run_top_case(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    p, m = args
    chars = _characters(p, m)
    rng = _rng(config, "top-case", p, m)
    queries = []
    if 2 in config.k_values:
        queries += _tuples(chars, 2, config.sample_cap, rng)
    if 3 in config.k_values:
        for draw in range(config.triple_samples):
            first, second, third = (chars[i] for i in rng.integers(len(chars), size=3))
            # every other triple gets a principal product
            if draw % 2 == 0:
                third = (first * second).conjugate()
            queries.append((first, second, third))

    records = []
    for chars_ in queries:
        query = JacobiQuery(chars_, 0)
        brute = jacobi_brute(query, config.term_guard).value
        top = jacobi_top_case(query)
        records.append(_compare(
            "top-case", _ident(query), "brute", brute, "top-case", top.value,
            config.tolerance, brute.magnitude, top.notes,
        ))
    return records


def _plan_magnitude(config: SweepConfig) -> list[tuple]:
    return config.moduli(config.magnitude_moduli)


def _run_magnitude(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    """|J_(p^(m-1))| is p^(mk/2-1) for a principal product and p^((mk-1)/2) otherwise."""
    p, m = args
    chars = _characters(p, m)
    rng = _rng(config, "magnitude", p, m)
    records = []
    for k in config.k_values:
        cap = config.sample_cap if k == 2 else config.triple_samples
        for tuple_ in _tuples(chars, k, cap, rng):
            query = JacobiQuery(tuple_, p ** (m - 1))
            ident = _ident(query)
            if not any(is_primitive(chi) for chi in tuple_):
                records.append(_skipped("magnitude", ident, "brute |J|", "predicted |J|", "no primitive character"))
                continue
            if jacobi_vanishes(query):
                expected = 0.0
            elif query.product.is_principal:
                expected = math.sqrt(p) ** (m * k - 2)
            else:
                expected = math.sqrt(p) ** (m * k - 1)
            bound = config.tolerance * max(1.0, expected)
            for name, result in (
                ("brute |J|", jacobi_brute(query, config.term_guard)),
                ("gauss-quotient |J|", jacobi_via_gauss(query)),
            ):
                records.append(_record(
                    "magnitude", ident, name, complex(result.magnitude), "predicted |J|", complex(expected),
                    abs(result.magnitude - expected) <= bound,
                ))
    return records


def _plan_induction(config: SweepConfig) -> list[tuple]:
    if 3 not in config.k_values:
        return []
    return [(p, m) for p, m in config.moduli(config.induction_moduli) if p != 2 and m >= 2]


def _run_induction(args: tuple, config: SweepConfig) -> list[DiscrepancyRecord]:
    """
    J_{p^n}(chi_1, chi_2, chi_3) = pair_factor(chi_1, chi_2) J_{p^n}(chi_1 chi_2, chi_3).

    Pairs are drawn with chi_1, chi_2 and chi_1 chi_2 all primitive (odd p only).
    """
    p, m = args
    chars = _characters(p, m)
    rng = _rng(config, "induction", p, m)
    pairs = [(a, b) for a in chars for b in chars if is_primitive(a) and is_primitive(b) and is_primitive(a * b)]
    records = []
    if not pairs:
        return records
    for _ in range(config.triple_samples):
        first, second = pairs[rng.integers(len(pairs))]
        third = chars[rng.integers(len(chars))]
        for n in range(m):
            query = JacobiQuery((first, second, third), p**n)
            lhs = jacobi_brute(query, config.term_guard).value
            folded = jacobi_eval(JacobiQuery((first * second, third), p**n))
            rhs = mixed_product([pair_factor(first, second), folded.value])
            records.append(_compare(
                "induction", _ident(query), "brute", lhs,
                f"pair-factor x {folded.method.value}", rhs,
                config.tolerance, math.sqrt(p) ** (2 * m + n),
            ))
    return records


SUITE_RUNNERS: dict[str, tuple[Callable[[SweepConfig], list[tuple]], Callable[[tuple, SweepConfig], list]]] = {
    "gauss-oracle": (_plan_gauss_oracle, _run_gauss_oracle),
    "gauss-j-independence": (_plan_j_independence, _run_j_independence),
    "rj-congruence": (_plan_rj_congruence, _run_rj_congruence),
    "jacobi-paths": (_plan_jacobi_paths, _run_jacobi_paths),
    "jacobi-triples": (_plan_triples, _run_triples),
    "translation": (_plan_translation, _run_translation),
    "top-case": (_plan_top_case, _run_top_case),
    "magnitude": (_plan_magnitude, _run_magnitude),
    "induction": (_plan_induction, _run_induction),
}


# =============================================================================
# Sweep runner
# =============================================================================

def plan_sweep(config: SweepConfig) -> list[tuple[str, tuple]]:
    """All (suite, task arguments) pairs of a sweep, in report order."""
    return [(suite, args) for suite in config.suites for args in SUITE_RUNNERS[suite][0](config)]


def run_task(task: tuple[str, tuple], config: SweepConfig) -> list[DiscrepancyRecord]:
    """Run one task; a crash becomes a failed record instead of aborting the sweep."""
    suite, args = task
    try:
        return SUITE_RUNNERS[suite][1](args, config)
    except Exception as e:
        logger.exception(f"Suite {suite} crashed on task {args}")
        p, m = args[:2]
        return [DiscrepancyRecord(
            suite=suite, p=p, m=m, k=0, n=0, B=0, c_tuple=tuple(args[2:]), e_tuple=(),
            method_a="task", method_b="task", re_a=0.0, im_a=0.0, re_b=0.0, im_b=0.0,
            deviation=0.0, status=Status.failed, notes=f"{type(e).__name__}: {e}",
        )]


def _collect(batches: Iterable[list[DiscrepancyRecord]], total: int, summary: SweepSummary) -> list[DiscrepancyRecord]:
    records = []
    for batch in tqdm(batches, total=total, desc="verify", unit="task"):
        for record in batch:
            summary.add(record)
            records.append(record)
    return records


def run_sweep(config: SweepConfig) -> tuple[list[DiscrepancyRecord], SweepSummary]:
    """
    Run every configured suite.

    Tasks fan out over a process pool when config.jobs > 1; records come back
    in plan order, so the report does not depend on scheduling.

    Returns:
        (records, summary)
    """
    tasks = plan_sweep(config)
    logger.info(f"Planned {len(tasks)} tasks across suites {', '.join(config.suites)}")
    summary = SweepSummary()
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            records = _collect(executor.map(run_task, tasks, repeat(config)), len(tasks), summary)
    else:
        records = _collect(map(run_task, tasks, repeat(config)), len(tasks), summary)
    logger.info(f"Sweep finished: {summary}")
    return records, summary


def _write_records(records: list[DiscrepancyRecord], fmt: ReportFormat, stream: TextIO) -> None:
    if fmt is ReportFormat.csv:
        writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(record.csv_row() for record in records)
    else:
        for record in records:
            stream.write(record.model_dump_json() + "\n")


def write_report(records: list[DiscrepancyRecord], fmt: ReportFormat, output: Path | None = None) -> None:
    """Write the sweep report to a file, or to stdout when no path is given."""
    if output is None:
        _write_records(records, fmt, sys.stdout)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    with output.open("w", newline="") as f:
        _write_records(records, fmt, f)
    logger.info(f"Wrote {len(records)} records to {output}")


# =============================================================================
# Benchmark
# =============================================================================

def _median_seconds(fn: Callable[[], object], reps: int) -> float:
    """Median seconds per call over reps batches; fast calls are batched up to about BENCH_BATCH_SECONDS."""
    timer = timeit.Timer(fn)
    single = timer.timeit(number=1)  # also warms per-query caches
    number = max(1, min(BENCH_MAX_BATCH, int(BENCH_BATCH_SECONDS / max(single, 1e-9))))
    return statistics.median(timer.repeat(repeat=reps, number=number)) / number


def run_bench(p: int, m: int, k: int, reps: int = 20, term_guard: int | None = None) -> BenchRow:
    """
    Time the closed path against brute force.

    k = 1 benchmarks the Gauss sum of the first primitive character; k >= 2
    benchmarks J_1 of k copies of it. A brute sum the guard refuses is
    reported as skipped.
    """
    if reps < 1:
        raise InvalidArgumentError(f"reps must be >= 1, got {reps}")
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    ctx = get_context(p, m)
    chi = next(enumerate_characters(ctx, primitive_only=True), None)
    if chi is None:
        raise InvalidArgumentError(f"no primitive character mod {ctx.modulus}")

    if k == 1:
        guard = term_guard or get_settings().gauss_term_guard
        terms = ctx.q
        closed = partial(gauss_closed, chi)
        brute = partial(gauss_brute, chi, guard)
    else:
        guard = term_guard or get_settings().term_guard
        query = JacobiQuery((chi,) * k, 1)
        terms = ctx.q ** (k - 1)
        closed = partial(jacobi_eval, query)
        brute = partial(jacobi_brute, query, guard)

    closed_median = _median_seconds(closed, reps)
    if terms > guard:
        row = BenchRow(p=p, m=m, k=k, terms=terms, closed_median_s=closed_median, status="brute-skipped")
    else:
        brute_median = _median_seconds(brute, reps)
        row = BenchRow(
            p=p,
            m=m,
            k=k,
            terms=terms,
            brute_median_s=brute_median,
            closed_median_s=closed_median,
            speedup=brute_median / closed_median if closed_median > 0 else None,
        )
    logger.info(f"bench p={p} m={m} k={k}: {row.status}, speedup {row.speedup}")
    return row
