"""Rees powers of a module E inside G = R^e, and the Rees algebra data.

The n-th Rees power E_n is the degree-n piece of the image of Sym(E) in
Sym(G) = R[t_1..t_e], realized concretely as the submodule of
G_n = R^{C(n+e-1, e-1)} spanned by n-fold products of the generators,
coordinates taken in the basis of degree-n monomials in the t's listed
in descending lexicographic order.

The presentation of the Rees algebra is computed by eliminating the t
block from (y_j - L_j), where L_j is the linear form of the j-th minimal
generator; the fiber cone is the same data modulo the variables of R.
Two independent routes exist for powers (direct products vs. iterated
ideal powers upstairs) and for dimension (presentation vs. rank), and
the engine cross-checks them where cheap.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from .element import Element
from .errors import (
    EngineInconsistencyError,
    ResourceLimitError,
    UnsupportedInstanceError,
)
from .groebner import buchberger, eliminate, top_order
from .modops import (
    Quotient,
    Submodule,
    generator_matrix,
    ideal_height,
    is_double_dual_free,
    local_min_gen_count,
    minors_ideal,
    module_rank,
    monomial_ideal_associated_primes,
)
from .ring import Ring

POWER_RANK_LIMIT = 5000


def t_monomials(total: int, count: int) -> list[tuple[int, ...]]:
    """Exponent tuples of degree `total` in `count` variables, lex descending."""
    if count == 0:
        return [()] if total == 0 else []
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, slots - 1)

    rec((), total, count)
    return out


class ReesContext:
    """All derived data for one module E = <gens> inside R^rank.

    Validates that every generator is column-graded (all coordinates of
    one generator share a degree) and that E is a proper submodule.
    Optional `primes` supply the minimal primes of R/F_e(E) when the
    Fitting ideal is not monomial; they are trusted input.
    """

    def __init__(
        self,
        ring: Ring,
        gens: Sequence[Element],
        rank: int,
        primes: Sequence[Submodule] | None = None,
    ):
        if rank < 1:
            raise ValueError("ambient rank must be at least 1")
        self.ring = ring
        self.rank = rank
        kept = []
        for i, g in enumerate(gens):
            if g.ring != ring or g.rank != rank:
                raise ValueError(f"generator {i} does not live in R^{rank} over {ring}")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise ValueError(
                    f"generator {i} is not column-graded (coordinates of mixed degree)"
                )
            kept.append(g)
        self.module = Submodule(ring, rank, kept)
        for c in range(rank):
            if not self.module.contains(Element.unit_vector(ring, rank, c)):
                break
        else:
            raise ValueError("the module equals its ambient free module")
        self.min_gens = self.module.minimal_gens()
        self.degrees = tuple(g.degree() for g in self.min_gens)
        self.primes = list(primes) if primes else None
        self._powers: dict[int, Submodule] = {}
        self._quotients: dict[int, Quotient] = {}
        self._presentation: tuple[Ring, Submodule] | None = None
        self._rees_quotient: Quotient | None = None
        self._fiber: Quotient | None = None
        self._fitting: Submodule | None = None
        self._rank: int | None = None

    @property
    def mu(self) -> int:
        return len(self.min_gens)

    # -- powers ----------------------------------------------------------

    def power_rank(self, n: int) -> int:
        g = math.comb(n + self.rank - 1, self.rank - 1)
        if g > POWER_RANK_LIMIT:
            raise ResourceLimitError(
                f"rank of the degree-{n} symmetric power exceeds {POWER_RANK_LIMIT}"
            )
        return g

    def t_basis(self, n: int) -> list[tuple[int, ...]]:
        self.power_rank(n)
        return t_monomials(n, self.rank)

    def _expand_product(self, indices: Sequence[int], n: int) -> Element:
        """Product of the chosen generators' linear forms, in G_n coordinates."""
        basis = self.t_basis(n)
        index = {m: i for i, m in enumerate(basis)}
        acc: dict[tuple[int, ...], Element] = {(0,) * self.rank: Element.one(self.ring)}
        for j in indices:
            nxt: dict[tuple[int, ...], Element] = {}
            gen = self.min_gens[j]
            for te, poly in acc.items():
                for c in range(self.rank):
                    coeff = gen.component(c)
                    if coeff.is_zero():
                        continue
                    key = te[:c] + (te[c] + 1,) + te[c + 1 :]
                    prod = poly * coeff
                    if key in nxt:
                        nxt[key] = nxt[key] + prod
                    else:
                        nxt[key] = prod
            acc = nxt
        total = Element.zero(self.ring, len(basis))
        for te, poly in acc.items():
            if not poly.is_zero():
                total = total + poly.embedded(len(basis), index[te])
        return total

    def rees_power(self, n: int) -> Submodule:
        """E_n as a submodule of R^{C(n+e-1,e-1)} (zero shifts)."""
        if n < 0:
            raise ValueError("negative Rees power")
        got = self._powers.get(n)
        if got is not None:
            return got
        if n == 0:
            out = Submodule(self.ring, 1, [Element.one(self.ring)])
        else:
            g = self.power_rank(n)
            prods = [
                self._expand_product(idx, n)
                for idx in itertools.combinations_with_replacement(range(self.mu), n)
            ]
            out = Submodule(self.ring, g, prods)
        self._powers[n] = out
        return out

    def power_quotient(self, n: int) -> Quotient:
        got = self._quotients.get(n)
        if got is None:
            got = Quotient(self.rees_power(n))
            self._quotients[n] = got
        return got

    def sym_product(self, a: Element, na: int, b: Element, nb: int) -> Element:
        """Multiplication G_na x G_nb -> G_{na+nb} through t-monomials."""
        basis_a = self.t_basis(na)
        basis_b = self.t_basis(nb)
        basis_out = self.t_basis(na + nb)
        index = {m: i for i, m in enumerate(basis_out)}
        total = Element.zero(self.ring, len(basis_out))
        for ca in range(len(basis_a)):
            pa = a.component(ca)
            if pa.is_zero():
                continue
            for cb in range(len(basis_b)):
                pb = b.component(cb)
                if pb.is_zero():
                    continue
                te = tuple(x + y for x, y in zip(basis_a[ca], basis_b[cb]))
                total = total + (pa * pb).embedded(len(basis_out), index[te])
        return total

    def rees_power_oracle(self, n: int) -> Submodule:
        """Independent route to E_n: iterated ideal powers in R[t].

        Multiplies the ideal (L_1..L_mu) with itself n times in R[t] with
        a reduced basis at every step, then extracts the t-degree-n slice
        by multiplying each basis element up by complementary t-monomials.
        """
        if n == 0:
            return Submodule(self.ring, 1, [Element.one(self.ring)])
        g = self.power_rank(n)
        e = self.rank
        tnames = [f"_t{i}" for i in range(e)]
        upstairs = self.ring.extended(tnames, [1] * e)
        x_images = [Element.variable(upstairs, e + i) for i in range(self.ring.nvars)]
        tvars = [Element.variable(upstairs, i) for i in range(e)]

        def linear_form(gen: Element) -> Element:
            acc = Element.zero(upstairs, 1)
            for c in range(e):
                coeff = gen.component(c)
                if not coeff.is_zero():
                    acc = acc + coeff.mapped(upstairs, x_images) * tvars[c]
            return acc

        forms = [linear_form(gm) for gm in self.min_gens]
        current = forms
        for _ in range(n - 1):
            prods = [a * b for a in current for b in forms]
            current = list(buchberger(prods, top_order(upstairs, 1)).elements)
        basis = self.t_basis(n)
        index = {m: i for i, m in enumerate(basis)}
        gens_out = []
        for b in current:
            tdegs = {tuple(int(x) for x in row[:e]) for row in b.exps}
            levels = {sum(td) for td in tdegs}
            if len(levels) != 1:
                raise EngineInconsistencyError("power basis element not t-homogeneous")
            level = levels.pop()
            if level > n:
                continue
            for extra in t_monomials(n - level, e):
                lifted = b
                for i in range(e):
                    if extra[i]:
                        lifted = lifted * tvars[i] ** extra[i]
                # split each term into its t-part (component) and x-part
                comps = [
                    index[tuple(int(x) for x in lifted.exps[t, :e])]
                    for t in range(len(lifted.comps))
                ]
                vec = Element(
                    self.ring,
                    g,
                    np.array(comps, dtype=np.int64),
                    np.array(lifted.exps[:, e:], dtype=np.int64),
                    self.ring.coeff_array(list(lifted.coeffs)),
                )
                gens_out.append(vec)
        return Submodule(self.ring, g, gens_out)

    # -- presentation, fiber cone, spread ---------------------------------

    def presentation(self) -> tuple[Ring, Submodule]:
        """(k[x, y], J) with Rees algebra = k[x, y]/J, y_j of weight deg_j + 1."""
        if self._presentation is not None:
            return self._presentation
        d = self.ring.nvars
        e = self.rank
        mu = self.mu
        tnames = [f"_t{i}" for i in range(e)]
        ynames = [f"_y{j}" for j in range(mu)]
        yweights = [self.degrees[j] + 1 for j in range(mu)]
        big = Ring(
            tuple(tnames) + self.ring.names + tuple(ynames),
            char=self.ring.char,
            weights=(1,) * e + self.ring.weights + tuple(yweights),
            order="elim",
            elim_block=e,
            max_degree=self.ring.max_degree,
        )
        x_images = [Element.variable(big, e + i) for i in range(d)]
        inputs = []
        for j, gen in enumerate(self.min_gens):
            rel = Element.variable(big, e + d + j)
            for c in range(e):
                coeff = gen.component(c)
                if not coeff.is_zero():
                    rel = rel - coeff.mapped(big, x_images) * Element.variable(big, c)
            inputs.append(rel)
        sym_ring = big.restricted(range(e, e + d + mu))
        j_gens = eliminate(inputs, e, sym_ring) if inputs else []
        ideal = Submodule(sym_ring, 1, j_gens)
        self._verify_presentation(sym_ring, ideal)
        self._presentation = (sym_ring, ideal)
        return self._presentation

    def _verify_presentation(self, sym_ring: Ring, ideal: Submodule) -> None:
        """Every presentation generator must vanish under y_j -> L_j."""
        d = self.ring.nvars
        e = self.rank
        tnames = [f"_t{i}" for i in range(e)]
        upstairs = self.ring.extended(tnames, [1] * e)
        x_up = [Element.variable(upstairs, i) for i in range(d)]
        t_up = [Element.variable(upstairs, d + i) for i in range(e)]
        images = list(x_up)
        for j, gen in enumerate(self.min_gens):
            form = Element.zero(upstairs, 1)
            for c in range(e):
                coeff = gen.component(c)
                if not coeff.is_zero():
                    form = form + coeff.mapped(upstairs, x_up) * t_up[c]
            images.append(form)
        for gsub in ideal.gens:
            if not gsub.mapped(upstairs, images).is_zero():
                raise EngineInconsistencyError(
                    "presentation generator fails to vanish on the Rees algebra"
                )

    def rees_quotient(self) -> Quotient:
        """The Rees algebra as a cyclic module over its presentation ring."""
        if self._rees_quotient is None:
            _, ideal = self.presentation()
            self._rees_quotient = Quotient(ideal)
        return self._rees_quotient

    def fiber_cone(self) -> Quotient:
        """k[y]/(J mod x), graded by the y-count (all y weights 1)."""
        if self._fiber is not None:
            return self._fiber
        sym_ring, ideal = self.presentation()
        d = self.ring.nvars
        mu = self.mu
        y_ring = Ring(
            sym_ring.names[d:],
            char=self.ring.char,
            weights=(1,) * mu,
            max_degree=self.ring.max_degree,
        )
        zero = Element.zero(y_ring, 1)
        images = [zero] * d + [Element.variable(y_ring, j) for j in range(mu)]
        gens = []
        for g in ideal.gens:
            img = g.mapped(y_ring, images)
            if not img.is_zero():
                gens.append(img)
        self._fiber = Quotient(Submodule(y_ring, 1, gens))
        return self._fiber

    def analytic_spread(self) -> int:
        return self.fiber_cone().krull_dim()

    def mu_of_power(self, n: int) -> int:
        return 1 if n == 0 else len(self.rees_power(n).minimal_gens())

    def dim_rees(self) -> int:
        """Krull dimension of the Rees algebra, cross-checked two ways."""
        via_presentation = self.rees_quotient().krull_dim()
        via_rank = self.ring.nvars + self.generic_rank()
        if via_presentation != via_rank:
            raise EngineInconsistencyError(
                f"Rees dimension mismatch: presentation gives {via_presentation}, "
                f"d + rank gives {via_rank}"
            )
        return via_presentation

    # -- Fitting data and deviations --------------------------------------

    def generic_rank(self) -> int:
        if self._rank is None:
            self._rank = module_rank(self.module)
        return self._rank

    def column_fitting_ideal(self) -> Submodule:
        """Ideal of e x e minors of the matrix of minimal generators."""
        if self._fitting is None:
            self._fitting = minors_ideal(
                generator_matrix(self.module), self.rank, self.ring
            )
        return self._fitting

    def fitting_height(self) -> int | float:
        return ideal_height(self.column_fitting_ideal())

    def is_ideal_module(self) -> bool:
        return (
            not self.module.is_zero()
            and self.generic_rank() == self.rank
            and is_double_dual_free(self.module)
        )

    def _require_ideal_module(self):
        if not self.is_ideal_module():
            raise UnsupportedInstanceError(
                "not an ideal module (rank must equal the ambient rank "
                "and the double dual must be free)"
            )

    def deviation(self) -> int:
        """mu(E) - e + 1 - height of the column Fitting ideal."""
        self._require_ideal_module()
        de = self.mu - self.rank + 1 - self.fitting_height()
        ad = self.analytic_deviation()
        if not (de >= ad >= 0):
            raise EngineInconsistencyError(
                f"deviation chain broken: deviation {de}, analytic deviation {ad}"
            )
        return de

    def analytic_deviation(self) -> int:
        """spread - e + 1 - height of the column Fitting ideal."""
        self._require_ideal_module()
        return self.analytic_spread() - self.rank + 1 - self.fitting_height()

    def is_complete_intersection(self) -> bool:
        return self.deviation() == 0

    def is_equimultiple(self) -> bool:
        return self.analytic_deviation() == 0

    def minimal_primes_over_fitting(self) -> list[Submodule]:
        """Minimal primes of R/F_e(E), monomial route or supplied primes."""
        fitting = self.column_fitting_ideal()
        if fitting.is_zero():
            raise UnsupportedInstanceError("zero Fitting ideal has no height data")
        if Quotient(fitting).is_zero():
            return []
        if fitting.is_monomial():
            gens = [e for (_, e) in fitting.leading_exponents()]
            primes = monomial_ideal_associated_primes(gens, self.ring.nvars)
            minimal = [
                p for p in primes if not any(q < p for q in primes)
            ]
            out = []
            for p in sorted(minimal, key=lambda s: (len(s), sorted(s))):
                out.append(
                    Submodule(
                        self.ring,
                        1,
                        [Element.variable(self.ring, i) for i in sorted(p)],
                    )
                )
            return out
        if self.primes is not None:
            for i, p in enumerate(self.primes):
                if not all(p.contains(g) for g in fitting.gens):
                    raise UnsupportedInstanceError(
                        f"supplied prime {i} does not contain the Fitting ideal"
                    )
            return self.primes
        raise UnsupportedInstanceError(
            "Fitting ideal is not monomial and no minimal primes were supplied"
        )

    def is_generically_ci(self) -> bool:
        """Whether E is a complete intersection at every minimal prime of F_e."""
        self._require_ideal_module()
        for p in self.minimal_primes_over_fitting():
            ht = ideal_height(p)
            if local_min_gen_count(self.module, p) != ht + self.rank - 1:
                return False
        return True
