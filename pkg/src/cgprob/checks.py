"""Named verification suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

from .counts import CharParity
from .genfun import finite_prob, finite_prob_exact, limit_prob, parity_check
from .oracle import census_many
from .partitions import LambdaSpec, stong_sum
from .stabilization import (c_minus_s_relation, f_as, s_gl_product_check, sigma_with_one,
                            sigma_without_one, stabilization_scan, unitary_functional_equation)
from .transforms import verify_identity

STANDARD_SPECS = ("separable", "cyclic", "semisimple", "all", "set:[1];[2,1]", "set:[1];[3]")
ORACLE_SPECS = ("separable", "cyclic", "semisimple", "all")
# (group, d, q) sizes covered by the oracle suite; d is the half-dimension for Sp
ORACLE_CASES = (
    ("gl", 1, 2), ("gl", 2, 2), ("gl", 3, 2), ("gl", 4, 2),
    ("gl", 1, 3), ("gl", 2, 3), ("gl", 3, 3),
    ("u", 1, 2), ("u", 2, 2),
    ("sp", 1, 2), ("sp", 1, 3),
)


class CheckResult(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


def _run(name: str, fn: Callable[[], object]) -> CheckResult:
    try:
        out = fn()
    except (AssertionError, ArithmeticError) as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(out, CheckResult):
        return out
    return CheckResult(name, bool(out), "" if out else "returned false")


def identities(order: int = 12) -> Iterator[CheckResult]:
    for which in "abcdef":
        parities = (CharParity.ODD,) if which in "abc" else (CharParity.EVEN, CharParity.ODD)
        for p in parities:
            yield _run(f"identity ({which}) {p.name.lower()} to x^{order}",
                       lambda w=which, p=p: verify_identity(w, order, p))


def _groups_with_parity():
    yield "gl", None
    yield "u", None
    yield "sp", CharParity.EVEN
    yield "sp", CharParity.ODD


def integrality(order: int = 12, d_max: int = 5) -> Iterator[CheckResult]:
    """Every coefficient integral; the probability functions raise on failure."""
    for text in STANDARD_SPECS:
        spec = LambdaSpec.parse(text)
        for group, parity in _groups_with_parity():
            tag = group + (f"/{parity.name.lower()}" if parity else "")

            def check(spec=spec, group=group, parity=parity):
                limit_prob(group, spec, order, parity)
                for d in range(1, d_max + 1):
                    finite_prob(group, d, spec, order, parity)
                return True

            yield _run(f"integrality {tag} {text} order {order} d<={d_max}", check)


def parity(order: int = 12) -> Iterator[CheckResult]:
    for text in STANDARD_SPECS:
        name = f"GL-U parity {text} order {order}"

        def check(spec=LambdaSpec.parse(text), name=name):
            res = parity_check(spec, order)
            return CheckResult(name, res.ok, "" if res.ok else f"odd difference at q^-{res.first_odd_index}")

        yield _run(name, check)


def stong(n_max: int = 6) -> Iterator[CheckResult]:
    for variant in ("gl", "u"):
        for n in range(1, n_max + 1):
            yield _run(f"centralizer sum {variant} n={n}", lambda n=n, v=variant: stong_sum(n, v))


def stabilization(order: int = 12, d_max: int = 8) -> Iterator[CheckResult]:
    def f_integers():
        for a in range(13):
            for s in range(1, 13):
                f_as(a, s)
        return f_as(0, 1) == -1 and f_as(0, 2) == 1 and all(f_as(0, m) == 0 for m in range(3, 13))

    yield _run("F(a,s) integral for a,s <= 12", f_integers)
    yield _run("separable GL product formula to (u^8, q^-8)", lambda: s_gl_product_check(8, 8))
    for group in ("gl", "u"):
        for d in range(0, min(d_max, 6)):
            yield _run(f"c-s difference {group} d={d}", lambda g=group, d=d: c_minus_s_relation(g, d, order))
    yield _run("unitary functional equation to (u^8, q^-8)", lambda: unitary_functional_equation(8, 8))

    for group in ("gl", "u"):
        yield _run(f"separable stabilization {group} d<={d_max}",
                   lambda g=group: stabilization_scan(g, LambdaSpec.separable(), d_max, max(order, d_max)).ok)
        yield _run(f"cyclic stabilization {group} d<=6",
                   lambda g=group: stabilization_scan(g, LambdaSpec.cyclic(), 6, 12).ok)

    def sharp():
        row = stabilization_scan("gl", LambdaSpec.separable(), 4, 6).row(4)
        return row.first_unstable_order == 4

    yield _run("separable GL d=4 differs from the limit at q^-4", sharp)
    yield _run("semisimple GL stabilizes for j < (d+1)/2",
               lambda: stabilization_scan("gl", LambdaSpec.semisimple(), d_max, 10).ok)

    def zeros():
        spec = LambdaSpec.parse("set:[2]")
        for d in range(1, d_max + 1):
            coeffs = finite_prob("gl", d, spec, 10).coefficients
            if any(coeffs[j] for j in range(10 + 1) if 2 * j < d):
                return False
        return True

    yield _run("{(2)} GL coefficients vanish for j < d/2", zeros)

    def sigmas():
        got = [sigma_with_one(LambdaSpec.parse(t)).value for t in ("separable", "cyclic", "semisimple")]
        return got == [Fraction(1, 2), 1, Fraction(1, 2)] and \
            sigma_without_one(LambdaSpec.parse("set:[2]")).value == Fraction(1, 2)

    yield _run("sigma constants", sigmas)


def oracle(workers: int = 1, cases=ORACLE_CASES) -> Iterator[CheckResult]:
    specs = [LambdaSpec.parse(t) for t in ORACLE_SPECS]
    for group, d, q in cases:
        counts, total = census_many(group, d, q, specs, workers)
        for spec, count in zip(specs, counts):
            want = finite_prob_exact(group, d, spec, q)
            got = Fraction(count, total)
            yield CheckResult(f"oracle {group}({d},{q}) {spec}", got == want,
                              "" if got == want else f"census {got} vs formula {want}")


SUITES = ("identities", "integrality", "parity", "stong", "stabilization", "oracle")


def run_suite(name: str, order: int = 12, d_max: int = 6, workers: int = 1) -> Iterator[CheckResult]:
    if name == "all":
        for s in SUITES:
            yield from run_suite(s, order, d_max, workers)
        return
    if name == "identities":
        yield from identities(order)
    elif name == "integrality":
        yield from integrality(order, min(d_max, 5))
    elif name == "parity":
        yield from parity(order)
    elif name == "stong":
        yield from stong(min(d_max, 6))
    elif name == "stabilization":
        yield from stabilization(order, d_max)
    elif name == "oracle":
        yield from oracle(workers)
    else:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or all")

