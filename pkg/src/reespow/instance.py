"""Plain-text instance files describing a module and run options.

Format, line oriented with # comments:

    [ring]
    char = 32003
    vars = x, y
    grading = 1, 1

    [module]
    rank = 2
    gen = x, 0
    gen = y, x

    [options]
    n_max = 6
    window = 3
    max_degree = 64
    seed = 0
    prime = x, y

`char`, `grading`, and the whole [options] section are optional.  `gen`
lines repeat, one generator each, with exactly `rank` comma-separated
polynomial entries.  `prime` lines repeat and supply the minimal primes
over the column Fitting ideal for instances where it is not monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .element import Element, parse_polynomial
from .errors import InstanceParseError
from .modops import Submodule
from .rees import ReesContext
from .ring import DEFAULT_CHAR, DEFAULT_MAX_DEGREE, Ring

DEFAULT_N_MAX = 6
DEFAULT_WINDOW = 3


@dataclass
class Instance:
    ring: Ring
    rank: int
    gens: list[Element]
    n_max: int = DEFAULT_N_MAX
    window: int = DEFAULT_WINDOW
    seed: int = 0
    primes: list[Submodule] | None = None
    source: str | None = None

    def context(self) -> ReesContext:
        return ReesContext(self.ring, self.gens, self.rank, primes=self.primes)


def _split_list(value: str) -> list[str]:
    return [part.strip() for part in value.split(",")]


def _parse_int(value: str, line: int, what: str) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise InstanceParseError(line, f"{what} must be an integer, got {value!r}")


def parse_instance(
    text: str,
    char: int | None = None,
    n_max: int | None = None,
    window: int | None = None,
    seed: int | None = None,
) -> Instance:
    """Parse an instance file, with optional overrides for run options."""
    sections: dict[str, list[tuple[int, str, str]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in ("ring", "module", "options"):
                raise InstanceParseError(lineno, f"unknown section [{current}]")
            sections.setdefault(current, [])
            continue
        if current is None:
            raise InstanceParseError(lineno, "content before any section header")
        if "=" not in line:
            raise InstanceParseError(lineno, "expected key = value")
        key, value = line.split("=", 1)
        sections[current].append((lineno, key.strip().lower(), value.strip()))

    if "ring" not in sections:
        raise InstanceParseError(0, "missing [ring] section")
    if "module" not in sections:
        raise InstanceParseError(0, "missing [module] section")

    ring_char = DEFAULT_CHAR
    names: list[str] | None = None
    weights: list[int] | None = None
    names_line = 0
    for lineno, key, value in sections["ring"]:
        if key == "char":
            ring_char = _parse_int(value, lineno, "char")
        elif key == "vars":
            names = _split_list(value)
            names_line = lineno
            for name in names:
                if not name.isidentifier():
                    raise InstanceParseError(lineno, f"bad variable name {name!r}")
            if len(set(names)) != len(names):
                raise InstanceParseError(lineno, "duplicate variable names")
        elif key == "grading":
            weights = [_parse_int(v, lineno, "grading entry") for v in _split_list(value)]
        else:
            raise InstanceParseError(lineno, f"unknown [ring] key {key!r}")
    if names is None:
        raise InstanceParseError(0, "missing vars in [ring]")
    if weights is not None and len(weights) != len(names):
        raise InstanceParseError(names_line, "grading length differs from vars")
    if char is not None:
        ring_char = char

    max_degree = DEFAULT_MAX_DEGREE
    opt_n_max = DEFAULT_N_MAX
    opt_window = DEFAULT_WINDOW
    opt_seed = 0
    prime_lines: list[tuple[int, str]] = []
    for lineno, key, value in sections.get("options", []):
        if key == "n_max":
            opt_n_max = _parse_int(value, lineno, "n_max")
        elif key == "window":
            opt_window = _parse_int(value, lineno, "window")
        elif key == "max_degree":
            max_degree = _parse_int(value, lineno, "max_degree")
        elif key == "seed":
            opt_seed = _parse_int(value, lineno, "seed")
        elif key == "prime":
            prime_lines.append((lineno, value))
        else:
            raise InstanceParseError(lineno, f"unknown [options] key {key!r}")

    try:
        ring = Ring(names, char=ring_char, weights=weights, max_degree=max_degree)
    except ValueError as exc:
        raise InstanceParseError(names_line, str(exc))

    rank = 1
    gen_lines: list[tuple[int, str]] = []
    for lineno, key, value in sections["module"]:
        if key == "rank":
            rank = _parse_int(value, lineno, "rank")
            if rank < 1:
                raise InstanceParseError(lineno, "rank must be positive")
        elif key == "gen":
            gen_lines.append((lineno, value))
        else:
            raise InstanceParseError(lineno, f"unknown [module] key {key!r}")
    if not gen_lines:
        raise InstanceParseError(0, "missing gen lines in [module]")

    gens = []
    for ordinal, (lineno, value) in enumerate(gen_lines):
        parts = _split_list(value)
        if len(parts) != rank:
            raise InstanceParseError(
                lineno,
                f"generator {ordinal} has {len(parts)} entries, expected {rank}",
            )
        total = Element.zero(ring, rank)
        for c, part in enumerate(parts):
            try:
                poly = parse_polynomial(ring, part)
            except (ValueError, KeyError) as exc:
                raise InstanceParseError(
                    lineno, f"generator {ordinal}, entry {c}: {exc}"
                )
            total = total + poly.embedded(rank, c)
        gens.append(total)

    primes = None
    if prime_lines:
        primes = []
        for lineno, value in prime_lines:
            pgens = []
            for part in _split_list(value):
                try:
                    pgens.append(parse_polynomial(ring, part))
                except (ValueError, KeyError) as exc:
                    raise InstanceParseError(lineno, f"prime entry: {exc}")
            primes.append(Submodule(ring, 1, pgens))

    return Instance(
        ring=ring,
        rank=rank,
        gens=gens,
        n_max=n_max if n_max is not None else opt_n_max,
        window=window if window is not None else opt_window,
        seed=seed if seed is not None else opt_seed,
        primes=primes,
    )


def load_instance(path: str | Path, **overrides) -> Instance:
    p = Path(path)
    inst = parse_instance(p.read_text(), **overrides)
    inst.source = str(p)
    return inst
