"""Shared fixtures and helpers for the test suite.

The acceptance tests register one PASS/FAIL line per criterion through
`record_criterion`; the terminal-summary hook prints the table at the
end of the run so it survives output capturing.
"""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from reespow import Element, ReesContext, Ring, parse_polynomial

SAMPLE_DIR = Path(__file__).resolve().parent.parent / "samples"

_criterion_results: dict[int, tuple[str, bool]] = {}


def record_criterion(number: int, title: str, passed: bool) -> None:
    _criterion_results[number] = (title, passed)


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criterion_results):
        title, passed = _criterion_results[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[criterion {number:02d}] {status}: {title}")


@pytest.fixture(scope="session")
def R2() -> Ring:
    return Ring(("x", "y"))


@pytest.fixture(scope="session")
def R3() -> Ring:
    return Ring(("x", "y", "z"))


@pytest.fixture(scope="session")
def RQ() -> Ring:
    return Ring(("x", "y"), char=0)


@pytest.fixture(scope="session")
def sample_paths() -> list[Path]:
    paths = sorted(SAMPLE_DIR.glob("*.ins"))
    assert len(paths) >= 10, "curated sample corpus went missing"
    return paths


def poly(ring: Ring, text: str) -> Element:
    return parse_polynomial(ring, text)


def vector(ring: Ring, *coords: str) -> Element:
    """Vector element from one polynomial string per coordinate."""
    return Element.from_components(ring, [parse_polynomial(ring, c) for c in coords])


def context(ring: Ring, rank: int, *gens) -> ReesContext:
    """ReesContext from coordinate-string tuples (or plain strings for rank 1)."""
    built = []
    for g in gens:
        if isinstance(g, str):
            built.append(vector(ring, g) if rank == 1 else vector(ring, *([g] + ["0"] * (rank - 1))))
        else:
            built.append(vector(ring, *g))
    return ReesContext(ring, built, rank)


def random_poly(
    ring: Ring,
    rng: random.Random,
    max_degree: int = 3,
    max_terms: int = 4,
    homogeneous: bool = False,
    degree: int | None = None,
) -> Element:
    """Random polynomial with small coefficients, possibly zero."""
    total = Element.zero(ring, 1)
    target = degree if degree is not None else None
    for _ in range(rng.randint(1, max_terms)):
        deg = target if target is not None else rng.randint(0, max_degree)
        monos = ring.monomials_of_degree(deg)
        if not monos:
            continue
        exps = rng.choice(monos)
        coeff = rng.randint(1, 5) * rng.choice((1, -1))
        total = total + Element.monomial(ring, exps, coeff)
    if homogeneous and not total.is_zero() and not total.is_homogeneous():
        degs = total.term_degrees()
        top = int(degs.max())
        keep = [t for t in range(len(total.comps)) if int(degs[t]) == top]
        total = Element(
            ring,
            1,
            total.comps[keep],
            total.exps[keep],
            total.coeffs[keep],
        )
    return total


def random_vector(
    ring: Ring,
    rank: int,
    rng: random.Random,
    max_degree: int = 3,
    max_terms: int = 3,
) -> Element:
    coords = [
        random_poly(ring, rng, max_degree=max_degree, max_terms=max_terms)
        for _ in range(rank)
    ]
    return Element.from_components(ring, coords)
