"""The reproduction battery behind ``trace-pi paper-suite``."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .algebra import build_c2, build_ck_degenerate, build_dn, build_mn, build_ut2, is_degenerate, trace_space
from .catalog import catalog
from .codim import codimension, contains_at_degree, ideals_equal_at_degree
from .comb import bell, stirling2, stirling2_explicit, stirling_identity_check, count_trace_monomials
from .poly import COMMUTATIVE, GENERAL, enumerate_mt, least_rotation, project_commutative
from .tideal import GeneratorSet, consequence_space, verify_generators, verify_transfer, wrap_generator


@dataclass
class CriterionResult:
    id: int
    title: str
    passed: bool
    details: list[str] = field(default_factory=list)
    elapsed_ms: int | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "passed": self.passed,
            "details": self.details,
            "elapsed_ms": self.elapsed_ms,
        }


def _table(details: list[str], name: str, got: list[int], want: list[int]) -> bool:
    ok = got == want
    details.append(f"{name}: {'ok' if ok else 'MISMATCH'} got={got} want={want}")
    return ok


def _codims(A, ns) -> list[int]:
    return [codimension(A, n) for n in ns]


def criterion_1(details: list[str]) -> bool:
    ns = range(1, 7)
    ok = _table(details, "D2[1,0]", _codims(build_dn([1, 0]), ns), [2**n for n in ns])
    ok &= _table(details, "D2[1,1]", _codims(build_dn([1, 1]), ns), [2**n for n in ns])
    ok &= _table(details, "D2[1,2]", _codims(build_dn([1, 2]), ns), [2 ** (n + 1) - n - 1 for n in ns])
    return ok


def criterion_2(details: list[str]) -> bool:
    ns = range(1, 7)
    ok = _table(details, "D3[1,1,0]", _codims(build_dn([1, 1, 0]), ns), [(3**n + 1) // 2 for n in ns])
    want = [Fraction(3**n + 3 ** (n - 1) * n - 2**n * n + n + 1, 2) for n in ns]
    ok &= _table(details, "D3[1,2,0]", _codims(build_dn([1, 2, 0]), ns), [int(w) for w in want])
    return ok


def criterion_3(details: list[str]) -> bool:
    ns = range(1, 6)
    ok = True
    for m in (2, 3, 4):
        ok &= _table(details, f"D{m}[1,0..]", _codims(build_dn([1] + [0] * (m - 1)), ns), [2**n for n in ns])
    eq = [ideals_equal_at_degree(build_dn([1, 0, 0]), build_dn([1, 0]), n) for n in ns]
    details.append(f"Id(D3[1,0,0]) = Id(D2[1,0]) for n<=5: {eq}")
    return ok and all(eq)


def criterion_4(details: list[str]) -> bool:
    ns = range(1, 7)
    ok = _table(details, "C2[0,1]", _codims(build_c2(0, 1), ns), [2 ** (n + 1) - n - 1 for n in ns])
    ok &= _table(details, "C2[1,1]", _codims(build_c2(1, 1), ns), [2 ** (n + 1) - n - 1 for n in ns])
    for k in (2, 3, 4):
        ns7 = range(1, 8)
        ok &= _table(
            details, f"C{k}[1,0]", _codims(build_ck_degenerate(k, 1), ns7),
            [sum(comb(n, i) for i in range(k)) for n in ns7],
        )
    return ok


def generator_theorems():
    c = catalog
    return [
        ("{f1,f2} on D2[1,0]", ("f1", "f2"), (c("f1"), c("f2", [1])), build_dn([1, 0])),
        ("{f1,f3} on D2[1,1]", ("f1", "f3"), (c("f1"), c("f3", [1])), build_dn([1, 1])),
        ("{f1,f4,f5} on D2[1,2]", ("f1", "f4", "f5"), (c("f1"), c("f4", [1, 2]), c("f5", [1, 2])), build_dn([1, 2])),
        ("{f1,f2} on D4[1,0,0,0]", ("f1", "f2"), (c("f1"), c("f2", [1])), build_dn([1, 0, 0, 0])),
        ("{f1,g3} on D3[1,1,0]", ("f1", "g3"), (c("f1"), c("g3", [1])), build_dn([1, 1, 0])),
        ("{f1,g4,g5} on D3[1,2,0]", ("f1", "g4", "g5"), (c("f1"), c("g4", [1, 2]), c("g5", [1, 2])), build_dn([1, 2, 0])),
        ("{f1,h2,h3} on C2[0,1]", ("f1", "h2", "h3"), (c("f1"), c("h2"), c("h3")), build_c2(0, 1)),
        ("{f1,h4,h5} on C2[1,1]", ("f1", "h4", "h5"), (c("f1"), c("h4", [1]), c("h5", [1])), build_c2(1, 1)),
        ("{f1,g6,g7} on C3[1,0]", ("f1", "g6", "g7"), (c("f1"), c("g6", [1]), c("g7", [1, 3])), build_ck_degenerate(3, 1)),
    ]


def _report_line(label: str, report) -> str:
    dims = " ".join(f"{r.n}:{r.dim_consequences}/{r.dim_identities}" for r in report.rows)
    return f"{label}: {'pass' if report.ok else 'FAIL'} [{dims}]"


def criterion_5(details: list[str]) -> bool:
    ok = True
    for label, names, gens, A in generator_theorems():
        report = verify_generators(GeneratorSet(gens, names), A, 5)
        details.append(_report_line(label, report))
        ok &= report.ok
    return ok


def criterion_6(details: list[str]) -> bool:
    c = catalog
    ok = True
    w3, g3 = wrap_generator(c("f3", [1])), c("g3", [1])
    literal = w3 == g3
    modulo = project_commutative(w3) == project_commutative(g3) and (w3 - g3) in consequence_space(
        [c("f1")], 3, GENERAL
    )
    details.append(f"Tr(f3 x3) = g3: {literal} (equal modulo [x1,x2]: {modulo})")
    ok &= literal
    for f, g in (("f4", "g4"), ("f5", "g5")):
        same = wrap_generator(c(f, [1, 2])) == c(g, [1, 2])
        details.append(f"Tr({f} x4) = {g}: {same}")
        ok &= same
    r = verify_transfer(GeneratorSet((c("f1"), c("f3", [1])), ("f1", "f3")), [1, 1], 4)
    details.append(_report_line("transfer {f1,f3} D2[1,1] -> D3[1,1,0]", r))
    ok &= r.ok
    r = verify_transfer(GeneratorSet((c("f1"), c("f4", [1, 2]), c("f5", [1, 2])), ("f1", "f4", "f5")), [1, 2], 4)
    details.append(_report_line("transfer {f1,f4,f5} D2[1,2] -> D3[1,2,0]", r))
    return ok and r.ok


def criterion_7(details: list[str]) -> bool:
    bad = [(n, k) for n in range(21) for k in range(n + 1) if stirling2(n, k) != stirling2_explicit(n, k)]
    details.append(f"recurrence vs explicit sum, n<=20: {'ok' if not bad else bad}")
    lemma = stirling_identity_check(12)
    details.append(f"S(n+1,k+1) = sum C(n,t) S(t,k), n<=12: {lemma.checked} cases, failures={lemma.failures}")
    counts = [(n, k) for n in range(1, 9) for k in range(n + 1) if count_trace_monomials(n, k) != stirling2(n + 1, k + 1)]
    details.append(f"count_trace_monomials = S(n+1,k+1), n<=8: {'ok' if not counts else counts}")
    return not bad and lemma.ok and not counts


def criterion_8(details: list[str]) -> bool:
    dims = {
        "M2": len(trace_space(build_mn(2))),
        "M3": len(trace_space(build_mn(3))),
        "UT2": len(trace_space(build_ut2())),
    }
    want = {"M2": 1, "M3": 1, "UT2": 2}
    for n in range(1, 5):
        dims[f"D{n}"] = len(trace_space(build_dn([1] * n)))
        want[f"D{n}"] = n
    ok = dims == want
    details.append(f"trace space dimensions {dims}")
    wrong = []
    checked = 0
    for n in range(1, 5):
        for alphas in itertools.product((0, 1, 2), repeat=n):
            checked += 1
            if is_degenerate(build_dn(list(alphas))).degenerate != (0 in alphas):
                wrong.append(alphas)
    details.append(f"degenerate iff some alpha_i = 0: {checked} patterns, wrong={wrong}")
    return ok and not wrong


def criterion_9(details: list[str]) -> bool:
    ok = True
    cases = [
        ("C2[2,0] in var D2[1,1]", build_c2(2, 0), build_dn([1, 1])),
        ("C2[1,0] in var D2[1,0]", build_ck_degenerate(2, 1), build_dn([1, 0])),
        ("C3[1,0] in var D2[1,0]", build_ck_degenerate(3, 1), build_dn([1, 0])),
    ]
    for label, A, B in cases:
        got = [contains_at_degree(A, B, n) for n in range(1, 6)]
        details.append(f"{label}, n<=5: {got}")
        ok &= all(got)
    return ok


def criterion_10(details: list[str]) -> bool:
    words = [w for L in range(1, 7) for w in itertools.product(range(1, 4), repeat=L)]
    words += [w for L in range(1, 7) for w in itertools.permutations(range(1, L + 1))]
    bad = 0
    for w in words:
        r = least_rotation(w)
        if least_rotation(r) != r or any(least_rotation(w[i:] + w[:i]) != r for i in range(len(w))):
            bad += 1
    details.append(f"least rotation idempotent and rotation invariant on {len(words)} words: bad={bad}")
    general = [len(enumerate_mt(n, GENERAL)) == factorial(n + 1) for n in range(1, 8)]
    commutative = [len(enumerate_mt(n, COMMUTATIVE)) == bell(n + 1) for n in range(1, 9)]
    details.append(f"|MT_n| = (n+1)! for n<=7: {all(general)}; commutative = Bell(n+1) for n<=8: {all(commutative)}")
    return bad == 0 and all(general) and all(commutative)


CRITERIA: list[tuple[int, str, Callable[[list[str]], bool]]] = [
    (1, "D2 codimension tables", criterion_1),
    (2, "D3 codimension tables", criterion_2),
    (3, "D_m[1,0..0] codimensions and Id(D3[1,0,0]) = Id(D2[1,0])", criterion_3),
    (4, "C2 and C_k codimension tables", criterion_4),
    (5, "generator theorems, n <= 5", criterion_5),
    (6, "trace wrapping and transfer", criterion_6),
    (7, "Stirling numbers and trace monomial counts", criterion_7),
    (8, "trace spaces and degeneracy", criterion_8),
    (9, "variety containment evidence", criterion_9),
    (10, "canonical forms and MT_n sizes", criterion_10),
]


def run_suite(timing: bool = True, only: set[int] | None = None) -> list[CriterionResult]:
    results = []
    for cid, title, fn in CRITERIA:
        if only and cid not in only:
            continue
        details: list[str] = []
        start = time.perf_counter()
        passed = bool(fn(details))
        elapsed = round((time.perf_counter() - start) * 1000) if timing else None
        results.append(CriterionResult(cid, title, passed, details, elapsed))
    return results
