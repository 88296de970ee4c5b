"""Elements of free modules R^rank over a Ring, stored as term arrays.

A rank-1 element is a polynomial.  Terms live in three parallel arrays:
comps (int64, component index), exps (int64, one exponent row per term)
and coeffs (int64 residues for prime characteristic, Fraction objects for
characteristic zero).  Terms are kept strictly descending under the
storage order (ring monomial order, ties broken by smaller component
first), with no zero coefficients and no repeated (component, monomial)
pairs.  Instances are immutable; every operation builds a new element.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import RingMismatchError
from .ring import Ring


def _empty_arrays(nvars: int, char: int):
    coeffs = np.empty(0, dtype=np.int64 if char else object)
    return (
        np.empty(0, dtype=np.int64),
        np.empty((0, nvars), dtype=np.int64),
        coeffs,
    )


def canonical_arrays(ring: Ring, comps, exps, coeffs):
    """Sort descending, merge equal terms, drop zeros, enforce the guard."""
    comps = np.asarray(comps, dtype=np.int64)
    exps = np.asarray(exps, dtype=np.int64).reshape(len(comps), ring.nvars)
    if ring.char:
        coeffs = np.asarray(coeffs, dtype=np.int64) % ring.char
    else:
        coeffs = np.asarray(coeffs, dtype=object)
    if len(comps) == 0:
        return _empty_arrays(ring.nvars, ring.char)

    keys = exps @ ring.order.matrix.T
    cols = [keys[:, j] for j in range(keys.shape[1])] + [-comps]
    idx = np.lexsort(cols[::-1])[::-1]
    comps, exps, coeffs = comps[idx], exps[idx], coeffs[idx]

    tagged = np.concatenate([comps[:, None], exps], axis=1)
    new_group = np.empty(len(comps), dtype=bool)
    new_group[0] = True
    new_group[1:] = np.any(tagged[1:] != tagged[:-1], axis=1)
    starts = np.flatnonzero(new_group)
    summed = np.add.reduceat(coeffs, starts)
    if ring.char:
        summed = summed % ring.char
    comps, exps = comps[starts], exps[starts]

    keep = summed != 0
    comps, exps, summed = comps[keep], exps[keep], summed[keep]
    if len(comps) == 0:
        return _empty_arrays(ring.nvars, ring.char)
    ring.guard_exponents(exps)
    return np.ascontiguousarray(comps), np.ascontiguousarray(exps), summed


class Element:
    """Immutable element of R^rank with terms in canonical storage order."""

    __slots__ = ("ring", "rank", "comps", "exps", "coeffs")

    def __init__(self, ring: Ring, rank: int, comps, exps, coeffs, _canonical=False):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.ring = ring
        self.rank = rank
        if _canonical:
            self.comps, self.exps, self.coeffs = comps, exps, coeffs
        else:
            self.comps, self.exps, self.coeffs = canonical_arrays(ring, comps, exps, coeffs)
        if len(self.comps) and (self.comps.min() < 0 or self.comps.max() >= rank):
            raise ValueError("component index out of range")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(ring: Ring, rank: int = 1) -> "Element":
        return Element(ring, rank, *_empty_arrays(ring.nvars, ring.char), _canonical=True)

    @staticmethod
    def constant(ring: Ring, value, rank: int = 1, comp: int = 0) -> "Element":
        c = ring.coeff_from_int(value) if not isinstance(value, Fraction) else value
        if c == 0:
            return Element.zero(ring, rank)
        return Element(
            ring,
            rank,
            np.array([comp], dtype=np.int64),
            np.zeros((1, ring.nvars), dtype=np.int64),
            ring.coeff_array([c]),
        )

    @staticmethod
    def one(ring: Ring) -> "Element":
        return Element.constant(ring, 1)

    @staticmethod
    def variable(ring: Ring, index: int) -> "Element":
        exps = np.zeros((1, ring.nvars), dtype=np.int64)
        exps[0, index] = 1
        return Element(
            ring, 1, np.zeros(1, dtype=np.int64), exps, ring.coeff_array([1])
        )

    @staticmethod
    def unit_vector(ring: Ring, rank: int, comp: int) -> "Element":
        return Element.constant(ring, 1, rank=rank, comp=comp)

    @staticmethod
    def monomial(ring: Ring, exponents: Sequence[int], coeff=1, rank: int = 1, comp: int = 0) -> "Element":
        exps = np.array([exponents], dtype=np.int64)
        return Element(ring, rank, np.array([comp], dtype=np.int64), exps, ring.coeff_array([coeff]))

    @staticmethod
    def from_components(ring: Ring, polys: Sequence["Element"]) -> "Element":
        """Assemble a vector from rank-1 coordinates."""
        rank = len(polys)
        comps, exps, coeffs = [], [], []
        for i, p in enumerate(polys):
            if p.ring != ring or p.rank != 1:
                raise RingMismatchError("components must be rank-1 over the same ring")
            comps.append(np.full(len(p.comps), i, dtype=np.int64))
            exps.append(p.exps)
            coeffs.append(p.coeffs)
        if not comps:
            raise ValueError("empty component list")
        return Element(
            ring,
            rank,
            np.concatenate(comps),
            np.concatenate(exps, axis=0),
            np.concatenate(coeffs),
        )

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return len(self.comps) == 0

    def __len__(self) -> int:
        return len(self.comps)

    def term_degrees(self) -> np.ndarray:
        return self.ring.degree_of_exponents(self.exps)

    def degree(self, shifts: Sequence[int] | None = None) -> int:
        """Max weighted term degree (plus component shift); -1 for zero."""
        if self.is_zero():
            return -1
        degs = self.term_degrees()
        if shifts is not None:
            degs = degs + np.asarray(shifts, dtype=np.int64)[self.comps]
        return int(degs.max())

    def is_homogeneous(self, shifts: Sequence[int] | None = None) -> bool:
        if self.is_zero():
            return True
        degs = self.term_degrees()
        if shifts is not None:
            degs = degs + np.asarray(shifts, dtype=np.int64)[self.comps]
        return int(degs.min()) == int(degs.max())

    def component(self, index: int) -> "Element":
        """Coordinate polynomial at a component, as a rank-1 element."""
        mask = self.comps == index
        return Element(
            self.ring,
            1,
            np.zeros(int(mask.sum()), dtype=np.int64),
            self.exps[mask],
            self.coeffs[mask],
            _canonical=True,
        )

    def support_components(self) -> set[int]:
        return {int(c) for c in np.unique(self.comps)}

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other: "Element", same_rank=True):
        if self.ring != other.ring:
            raise RingMismatchError(f"mixed rings {self.ring} and {other.ring}")
        if same_rank and self.rank != other.rank:
            raise RingMismatchError(f"mixed ranks {self.rank} and {other.rank}")

    def __add__(self, other: "Element") -> "Element":
        self._check_compatible(other)
        return Element(
            self.ring,
            self.rank,
            np.concatenate([self.comps, other.comps]),
            np.concatenate([self.exps, other.exps], axis=0),
            np.concatenate([self.coeffs, other.coeffs]),
        )

    def __neg__(self) -> "Element":
        if self.ring.char:
            coeffs = (-self.coeffs) % self.ring.char
        else:
            coeffs = np.array([-c for c in self.coeffs], dtype=object) if len(self.coeffs) else self.coeffs
        return Element(self.ring, self.rank, self.comps, self.exps, coeffs, _canonical=True)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scaled(self, value) -> "Element":
        """Multiply by a field constant."""
        c = self.ring.coeff_from_int(value) if not isinstance(value, Fraction) else value
        if c == 0:
            return Element.zero(self.ring, self.rank)
        if self.ring.char:
            coeffs = (self.coeffs * int(c)) % self.ring.char
        else:
            coeffs = np.array([x * c for x in self.coeffs], dtype=object) if len(self.coeffs) else self.coeffs
        return Element(self.ring, self.rank, self.comps, self.exps, coeffs, _canonical=True)

    def term_multiple(self, coeff, exponents: Sequence[int]) -> "Element":
        """Multiply by coeff * x^exponents without re-sorting."""
        if self.is_zero():
            return self
        shift = np.asarray(exponents, dtype=np.int64)
        exps = self.exps + shift
        self.ring.guard_exponents(exps)
        if self.ring.char:
            coeffs = (self.coeffs * (int(coeff) % self.ring.char)) % self.ring.char
        else:
            coeffs = np.array([x * coeff for x in self.coeffs], dtype=object)
        if self.ring.char and not coeffs.any():
            return Element.zero(self.ring, self.rank)
        return Element(self.ring, self.rank, self.comps, exps, coeffs, _canonical=True)

    def __mul__(self, other: "Element") -> "Element":
        """Product where at least one factor has rank 1."""
        self._check_compatible(other, same_rank=False)
        if self.rank != 1 and other.rank != 1:
            raise RingMismatchError("product needs a rank-1 factor")
        scalar, vector = (self, other) if self.rank == 1 else (other, self)
        if scalar.is_zero() or vector.is_zero():
            return Element.zero(self.ring, vector.rank)
        n1, n2 = len(scalar), len(vector)
        comps = np.repeat(vector.comps[None, :], n1, axis=0).ravel()
        exps = (scalar.exps[:, None, :] + vector.exps[None, :, :]).reshape(n1 * n2, -1)
        if self.ring.char:
            coeffs = (scalar.coeffs[:, None] * vector.coeffs[None, :]).ravel() % self.ring.char
        else:
            coeffs = np.array(
                [a * b for a in scalar.coeffs for b in vector.coeffs], dtype=object
            )
        return Element(self.ring, vector.rank, comps, exps, coeffs)

    def __pow__(self, n: int) -> "Element":
        if self.rank != 1:
            raise RingMismatchError("powers need rank 1")
        if n < 0:
            raise ValueError("negative power")
        result = Element.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def monic(self) -> "Element":
        """Scale so the storage-leading coefficient is 1."""
        if self.is_zero():
            return self
        return self.scaled(self.ring.coeff_inverse(self.coeffs[0]))

    # -- reshaping ----------------------------------------------------

    def embedded(self, rank: int, offset: int) -> "Element":
        """View inside a larger free module, components shifted by offset."""
        if offset < 0 or (len(self.comps) and offset + self.rank > rank):
            raise ValueError("embedding out of range")
        return Element(self.ring, rank, self.comps + offset, self.exps, self.coeffs, _canonical=True)

    def component_range(self, start: int, stop: int) -> "Element":
        """Restriction to components [start, stop), reindexed from zero."""
        mask = (self.comps >= start) & (self.comps < stop)
        return Element(
            self.ring,
            stop - start,
            self.comps[mask] - start,
            self.exps[mask],
            self.coeffs[mask],
            _canonical=True,
        )

    def drop_component(self, index: int) -> "Element":
        """Remove one coordinate (which must not be in the support)."""
        if index in self.support_components():
            raise ValueError("dropping a live component")
        comps = self.comps - (self.comps > index)
        return Element(self.ring, self.rank - 1, comps, self.exps, self.coeffs, _canonical=True)

    def mapped(self, target: Ring, images: Sequence["Element"]) -> "Element":
        """Apply the ring map sending variable i to images[i].

        Every image must be rank-1 over the target ring; components pass
        through unchanged.
        """
        if len(images) != self.ring.nvars:
            raise ValueError("one image per source variable required")
        power_cache: list[dict[int, Element]] = [dict() for _ in images]

        def var_power(i: int, a: int) -> Element:
            got = power_cache[i].get(a)
            if got is None:
                got = images[i] ** a
                power_cache[i][a] = got
            return got

        total = Element.zero(target, self.rank)
        for t in range(len(self.comps)):
            acc = Element.constant(target, self.coeffs[t] if not target.char else int(self.coeffs[t]))
            for i in range(self.ring.nvars):
                a = int(self.exps[t, i])
                if a:
                    acc = acc * var_power(i, a)
            total = total + acc.embedded(self.rank, int(self.comps[t]))
        return total

    # -- comparison / formatting --------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.ring == other.ring
            and self.rank == other.rank
            and np.array_equal(self.comps, other.comps)
            and np.array_equal(self.exps, other.exps)
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
            and len(self.coeffs) == len(other.coeffs)
        )

    def __hash__(self):
        return hash(
            (
                self.ring,
                self.rank,
                self.comps.tobytes(),
                self.exps.tobytes(),
                tuple(self.coeffs) if not self.ring.char else self.coeffs.tobytes(),
            )
        )

    def _coeff_display(self, c):
        if self.ring.char:
            c = int(c)
            return c if c <= self.ring.char // 2 else c - self.ring.char
        return c

    def _format_term(self, t: int) -> tuple[bool, str]:
        """(negative, body) for term t, without its sign."""
        c = self._coeff_display(self.coeffs[t])
        negative = c < 0
        c = -c if negative else c
        factors = []
        for i in range(self.ring.nvars):
            a = int(self.exps[t, i])
            if a == 1:
                factors.append(self.ring.names[i])
            elif a > 1:
                factors.append(f"{self.ring.names[i]}^{a}")
        if not factors:
            return negative, str(c)
        body = "*".join(factors)
        if c != 1:
            body = f"{c}*{body}"
        return negative, body

    def _format_poly(self, terms: Sequence[int]) -> str:
        if not len(terms):
            return "0"
        parts = []
        for pos, t in enumerate(terms):
            negative, body = self._format_term(t)
            if pos == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        if self.rank == 1:
            return self._format_poly(list(range(len(self.comps))))
        coords = []
        for c in range(self.rank):
            idx = [t for t in range(len(self.comps)) if self.comps[t] == c]
            coords.append(self._format_poly(idx))
        return "(" + ", ".join(coords) + ")"

    def __repr__(self):
        return f"<{self} over {self.ring}>"


# -- parsing -----------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*^/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ValueError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", "", len(text)))
    return tokens


def parse_polynomial(ring: Ring, text: str) -> Element:
    """Parse `3*x^2*y + t1*t2 - 1` style input into a rank-1 element.

    Grammar: signed sum of terms; a term is `*`-separated factors; a
    factor is an integer (optionally `a/b` in characteristic zero), or a
    variable with an optional `^exponent`.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_factor():
        kind, value, where = advance()
        if kind == "int":
            num = int(value)
            if peek()[0] == "/":
                advance()
                k2, v2, w2 = advance()
                if k2 != "int":
                    raise ValueError(f"expected denominator at position {w2}")
                if ring.char:
                    return Element.constant(ring, num * ring.coeff_inverse(int(v2))), None
                return Element.constant(ring, Fraction(num, int(v2))), None
            return Element.constant(ring, num), None
        if kind == "name":
            idx = ring.var_index(value)
            exp = 1
            if peek()[0] == "^":
                advance()
                k2, v2, w2 = advance()
                if k2 != "int":
                    raise ValueError(f"expected exponent at position {w2}")
                exp = int(v2)
            return Element.variable(ring, idx) ** exp, None
        raise ValueError(f"unexpected token {value!r} at position {where}")

    def parse_term():
        acc, _ = parse_factor()
        while peek()[0] == "*":
            advance()
            nxt, _ = parse_factor()
            acc = acc * nxt
        return acc

    total = Element.zero(ring, 1)
    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if advance()[0] == "-" else 1
    while True:
        term = parse_term()
        total = total + (term if sign == 1 else -term)
        kind, value, where = peek()
        if kind == "end":
            return total
        if kind == "+":
            sign = 1
        elif kind == "-":
            sign = -1
        else:
            raise ValueError(f"unexpected token {value!r} at position {where}")
        advance()
