"""Instance file parsing: grammar, defaults, overrides, and error
reporting with line numbers."""

import pytest

from reespow.errors import InstanceParseError
from reespow.instance import (
    DEFAULT_N_MAX,
    DEFAULT_WINDOW,
    Instance,
    load_instance,
    parse_instance,
)

BASIC = """
[ring]
vars = x, y

[module]
gen = x
gen = y
"""

MODULE = """
[ring]
char = 32003
vars = x, y
grading = 1, 1

[module]
rank = 2
gen = x, 0
gen = 0, y

[options]
n_max = 4
window = 2
max_degree = 32
seed = 7
"""


def test_basic_defaults():
    inst = parse_instance(BASIC)
    assert inst.ring.names == ("x", "y")
    assert inst.ring.char == 32003
    assert inst.ring.weights == (1, 1)
    assert inst.ring.max_degree == 64
    assert inst.rank == 1
    assert [str(g) for g in inst.gens] == ["x", "y"]
    assert inst.n_max == DEFAULT_N_MAX == 6
    assert inst.window == DEFAULT_WINDOW == 3
    assert inst.seed == 0
    assert inst.primes is None
    assert inst.source is None


def test_full_options():
    inst = parse_instance(MODULE)
    assert inst.rank == 2
    assert inst.n_max == 4
    assert inst.window == 2
    assert inst.seed == 7
    assert inst.ring.max_degree == 32
    ctx = inst.context()
    assert ctx.mu == 2
    assert ctx.rank == 2


def test_overrides_beat_file_values():
    inst = parse_instance(MODULE, char=0, n_max=2, window=1, seed=99)
    assert inst.ring.char == 0
    assert inst.n_max == 2
    assert inst.window == 1
    assert inst.seed == 99


def test_comments_and_blank_lines():
    text = "# leading comment\n\n[ring]\nvars = x  # trailing\n[module]\ngen = x\n"
    inst = parse_instance(text)
    assert inst.ring.names == ("x",)
    assert [str(g) for g in inst.gens] == ["x"]


def test_prime_lines():
    text = """
[ring]
vars = x, y

[module]
gen = x^2 + y^2
gen = x*y

[options]
prime = x, y
"""
    inst = parse_instance(text)
    assert inst.primes is not None and len(inst.primes) == 1
    assert [str(g) for g in inst.primes[0].gens] == ["x", "y"]
    ctx = inst.context()
    assert ctx.primes is not None


def error_line(text, **kw):
    with pytest.raises(InstanceParseError) as info:
        parse_instance(text, **kw)
    return info.value


def test_unknown_section():
    err = error_line("[rings]\nvars = x\n")
    assert err.line == 1
    assert "unknown section" in str(err)


def test_content_before_header():
    err = error_line("vars = x\n[ring]\n")
    assert err.line == 1
    assert "before any section" in str(err)


def test_missing_sections():
    assert "missing [ring]" in str(error_line("[module]\ngen = x\n"))
    assert "missing [module]" in str(error_line("[ring]\nvars = x\n"))
    assert "missing vars" in str(error_line("[ring]\nchar = 7\n[module]\ngen = x\n"))
    assert "missing gen" in str(error_line("[ring]\nvars = x\n[module]\nrank = 1\n"))


def test_bad_keys_and_values():
    assert "unknown [ring] key" in str(error_line("[ring]\nvars = x\nfoo = 1\n[module]\ngen = x\n"))
    assert "unknown [module] key" in str(error_line("[ring]\nvars = x\n[module]\ngen = x\nfoo = 1\n"))
    assert "unknown [options] key" in str(
        error_line("[ring]\nvars = x\n[module]\ngen = x\n[options]\nfoo = 1\n")
    )
    assert "must be an integer" in str(error_line("[ring]\nchar = seven\nvars = x\n[module]\ngen = x\n"))
    assert "expected key = value" in str(error_line("[ring]\nvars x\n[module]\ngen = x\n"))


def test_bad_variable_lists():
    assert "bad variable name" in str(error_line("[ring]\nvars = x, 2y\n[module]\ngen = x\n"))
    assert "duplicate variable" in str(error_line("[ring]\nvars = x, x\n[module]\ngen = x\n"))
    assert "grading length" in str(
        error_line("[ring]\nvars = x, y\ngrading = 1\n[module]\ngen = x\n")
    )


def test_ring_construction_errors_carry_line():
    err = error_line("[ring]\nchar = 6\nvars = x\n[module]\ngen = x\n")
    assert err.line == 3  # reported at the vars line that fixed the ring


def test_generator_entry_errors():
    err = error_line("[ring]\nvars = x, y\n[module]\nrank = 2\ngen = x\n")
    assert "generator 0 has 1 entries, expected 2" in str(err)
    assert err.line == 5
    err2 = error_line("[ring]\nvars = x, y\n[module]\ngen = x +\n")
    assert "generator 0, entry 0" in str(err2)
    err3 = error_line("[ring]\nvars = x, y\n[module]\ngen = z\n")
    assert "generator 0, entry 0" in str(err3)
    err4 = error_line("[ring]\nvars = x\n[module]\nrank = 0\ngen = x\n")
    assert "rank must be positive" in str(err4)


def test_bad_prime_entry():
    err = error_line("[ring]\nvars = x\n[module]\ngen = x\n[options]\nprime = q\n")
    assert "prime entry" in str(err)


def test_parse_error_renders_line():
    err = error_line("[rings]\n")
    assert "line 1" in str(err)


def test_load_instance_sets_source(tmp_path):
    path = tmp_path / "case.ins"
    path.write_text(BASIC)
    inst = load_instance(path)
    assert inst.source == str(path)
    assert isinstance(inst, Instance)


def test_all_samples_parse(sample_paths):
    for path in sample_paths:
        inst = load_instance(path)
        ctx = inst.context()
        assert ctx.mu >= 1
        assert 1 <= inst.window
        assert inst.n_max >= 1
