"""Graded polynomial rings with exact coefficients and matrix term orders.

A ring is k[x_1..x_v] where k is F_p (char = p prime) or Q (char = 0),
with a positive integer weight per variable defining the grading.  The
monomial order is realized as an integer matrix: the key of an exponent
vector e is order.matrix @ e, keys compare lexicographically and a larger
key means a larger monomial.  Every supported order (grevlex, lex, block
elimination) is injective on exponent vectors, so ties never occur.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeGuardError

DEFAULT_CHAR = 32003
DEFAULT_MAX_DEGREE = 64


def is_prime(n: int) -> bool:
    """Deterministic primality test for moduli up to 2**31."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % q == 0:
            return n == q
    i = 37
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class TermOrder:
    """Monomial order given by an integer key matrix.

    name is one of "grevlex", "lex", "elim"; elim_block is the number of
    leading variables the order eliminates (0 unless name == "elim").
    """

    __slots__ = ("name", "elim_block", "matrix")

    def __init__(self, name: str, matrix: np.ndarray, elim_block: int = 0):
        self.name = name
        self.elim_block = elim_block
        self.matrix = np.ascontiguousarray(matrix, dtype=np.int64)

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and self.name == other.name
            and self.elim_block == other.elim_block
            and self.matrix.shape == other.matrix.shape
            and bool(np.array_equal(self.matrix, other.matrix))
        )

    def __hash__(self):
        return hash((self.name, self.elim_block, self.matrix.tobytes()))

    def __repr__(self):
        if self.name == "elim":
            return f"TermOrder(elim, block={self.elim_block})"
        return f"TermOrder({self.name})"


def _grevlex_rows(weights: Sequence[int]) -> list[list[int]]:
    v = len(weights)
    rows = [list(weights)]
    for i in range(v - 1, -1, -1):
        row = [0] * v
        row[i] = -1
        rows.append(row)
    return rows


def grevlex_order(weights: Sequence[int]) -> TermOrder:
    """Degree (weighted) first, ties by smallest last exponent."""
    v = len(weights)
    mat = np.array(_grevlex_rows(weights), dtype=np.int64).reshape(v + 1, v)
    return TermOrder("grevlex", mat)


def lex_order(nvars: int) -> TermOrder:
    """Pure lexicographic order on the variables as listed."""
    return TermOrder("lex", np.eye(nvars, dtype=np.int64))


def elim_order(weights: Sequence[int], block: int) -> TermOrder:
    """Block order eliminating the first `block` variables.

    Any monomial involving a block variable beats any monomial in the
    remaining variables; each block is ordered by grevlex.
    """
    v = len(weights)
    if not 0 <= block <= v:
        raise ValueError(f"elimination block {block} out of range for {v} variables")
    rows = []
    head = [weights[i] if i < block else 0 for i in range(v)]
    rows.append(head)
    for i in range(block - 1, -1, -1):
        row = [0] * v
        row[i] = -1
        rows.append(row)
    tail = [0 if i < block else weights[i] for i in range(v)]
    rows.append(tail)
    for i in range(v - 1, block - 1, -1):
        row = [0] * v
        row[i] = -1
        rows.append(row)
    return TermOrder("elim", np.array(rows, dtype=np.int64).reshape(len(rows), v), block)


def _build_order(name: str, weights: Sequence[int], elim_block: int) -> TermOrder:
    if name == "grevlex":
        return grevlex_order(weights)
    if name == "lex":
        return lex_order(len(weights))
    if name == "elim":
        return elim_order(weights, elim_block)
    raise ValueError(f"unknown term order {name!r}")


class Ring:
    """Immutable description of k[x_1..x_v] with grading and term order.

    char == 0 selects Q with Fraction coefficients; a prime char selects
    F_char with int64 coefficients in [0, char).  max_degree bounds the
    total (unweighted) degree of any intermediate term; crossing it raises
    DegreeGuardError rather than silently truncating.
    """

    __slots__ = ("char", "names", "weights", "order", "max_degree", "_name_index", "_mono_cache")

    def __init__(
        self,
        names: Sequence[str],
        char: int = DEFAULT_CHAR,
        weights: Sequence[int] | None = None,
        order: str = "grevlex",
        elim_block: int = 0,
        max_degree: int = DEFAULT_MAX_DEGREE,
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for nm in names:
            if not nm or not (nm[0].isalpha() or nm[0] == "_"):
                raise ValueError(f"invalid variable name {nm!r}")
        if char != 0:
            if not is_prime(char):
                raise ValueError(f"characteristic {char} is not prime (or zero)")
            if char >= 2**31:
                raise ValueError("prime characteristic must fit in 31 bits")
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names):
            raise ValueError("one weight per variable required")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be positive")
        self.char = char
        self.names = names
        self.weights = weights
        self.order = _build_order(order, weights, elim_block)
        self.max_degree = max_degree
        self._name_index = {nm: i for i, nm in enumerate(names)}
        self._mono_cache: dict[int, list[tuple[int, ...]]] = {}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var_index(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def degree_of_exponents(self, exps: np.ndarray) -> np.ndarray:
        """Weighted degree of each exponent row."""
        w = np.asarray(self.weights, dtype=np.int64)
        return exps @ w if exps.size else np.zeros(len(exps), dtype=np.int64)

    def guard_exponents(self, exps: np.ndarray) -> None:
        if exps.size and int(exps.sum(axis=1).max()) > self.max_degree:
            raise DegreeGuardError(
                f"term degree exceeds guard {self.max_degree} over {self}"
            )

    def compare_monomials(self, e1: Sequence[int], e2: Sequence[int]) -> int:
        """Order comparison of two exponent vectors: -1, 0 or 1."""
        a = self.order.matrix @ np.asarray(e1, dtype=np.int64)
        b = self.order.matrix @ np.asarray(e2, dtype=np.int64)
        for x, y in zip(a, b):
            if x != y:
                return 1 if x > y else -1
        return 0

    def monomials_of_degree(self, degree: int) -> list[tuple[int, ...]]:
        """All exponent vectors of the given weighted degree, order-descending."""
        if degree < 0:
            return []
        cached = self._mono_cache.get(degree)
        if cached is not None:
            return cached
        out: list[tuple[int, ...]] = []
        exp = [0] * self.nvars

        def rec(pos: int, remaining: int) -> None:
            if pos == self.nvars:
                if remaining == 0:
                    out.append(tuple(exp))
                return
            w = self.weights[pos]
            for a in range(remaining // w, -1, -1):
                exp[pos] = a
                rec(pos + 1, remaining - a * w)
            exp[pos] = 0

        rec(0, degree)
        if out:
            arr = np.array(out, dtype=np.int64)
            keys = arr @ self.order.matrix.T
            idx = np.lexsort(keys.T[::-1])[::-1]
            out = [tuple(int(x) for x in arr[i]) for i in idx]
        self._mono_cache[degree] = out
        return out

    def coeff_from_int(self, value: int):
        if self.char:
            return int(value) % self.char
        return Fraction(value)

    def coeff_inverse(self, value):
        if self.char:
            return pow(int(value), self.char - 2, self.char)
        return 1 / Fraction(value)

    def coeff_array(self, values: Iterable) -> np.ndarray:
        vals = list(values)
        if self.char:
            return np.array([int(v) % self.char for v in vals], dtype=np.int64)
        arr = np.empty(len(vals), dtype=object)
        for i, v in enumerate(vals):
            arr[i] = v if isinstance(v, Fraction) else Fraction(v)
        return arr

    def extended(
        self,
        extra_names: Sequence[str],
        extra_weights: Sequence[int],
        order: str | None = None,
        elim_block: int = 0,
    ) -> "Ring":
        """Ring with additional variables appended after the current ones."""
        return Ring(
            self.names + tuple(extra_names),
            char=self.char,
            weights=self.weights + tuple(int(w) for w in extra_weights),
            order=order if order is not None else self.order.name,
            elim_block=elim_block,
            max_degree=self.max_degree,
        )

    def restricted(self, keep: Sequence[int], order: str = "grevlex") -> "Ring":
        """Ring on a subset of the variables (indices into names)."""
        return Ring(
            tuple(self.names[i] for i in keep),
            char=self.char,
            weights=tuple(self.weights[i] for i in keep),
            order=order,
            max_degree=self.max_degree,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.char == other.char
            and self.names == other.names
            and self.weights == other.weights
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.char, self.names, self.weights, self.order))

    def __repr__(self):
        field = "QQ" if self.char == 0 else f"GF({self.char})"
        return f"{field}[{', '.join(self.names)}]"
