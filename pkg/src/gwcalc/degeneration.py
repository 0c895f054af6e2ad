"""Degeneration bookkeeping for the cut of X along a divisor Z.

Cutting X along the boundary of a tubular neighbourhood of Z produces X
itself (relative to Z) glued to the completed normal bundle P(N + O)
(relative to its infinity section).  For a positive divisor whose minimal
normal Chern number dominates the number of transferred insertions, every
bundle-side component of a nonzero degeneration term is a fiber line with a
single transverse tangency point.  This module enumerates those terms,
builds the resulting comparison identity between absolute and relative
invariants, inverts it on the set-partition lattice, and runs the
divisor-to-ambient lift for point-constrained witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian

from .errors import HypothesisViolated, Inapplicable, UnsupportedQuery
from .partitions import (
    InvariantKey,
    Ordering,
    WeightedPair,
    WeightedPartition,
    delta_factor,
    key_compare,
    partition_to_text,
    weighted_partition,
)
from .quantum import AbsoluteQuery, gw_invariant
from .relative import (
    BundleSpec,
    Pullback,
    ZeroSection,
    make_fiber_query,
    min_normal_chern,
    relative_invariant,
)
from .ring import (
    POINT,
    DivisorDescriptor,
    RingElement,
    Space,
    basis,
    basis_element,
    cup_all,
    dual_basis,
    generator_class,
    h2_pairing,
    hyperplane_divisor,
    normal_degree,
    point_class,
    point_space,
    projective_space,
    restrict,
    shriek_pushforward,
    unit,
)


@dataclass(frozen=True)
class CutSpec:
    """A divisor with an ambient model, together with the completed normal
    bundle glued in by the cut."""

    divisor: DivisorDescriptor
    bundle: BundleSpec


def make_cut(divisor: DivisorDescriptor) -> CutSpec:
    if divisor.ambient is None:
        raise ValueError("cutting needs a divisor with an ambient model")
    return CutSpec(divisor, BundleSpec(divisor.divisor, normal_degree(divisor)))


@lru_cache(maxsize=None)
def testbed_cut(name: str) -> CutSpec:
    """Named testbeds: "p1-pt" (a point in the line) and "p2-line" (a line
    in the plane)."""
    if name == "p1-pt":
        return make_cut(hyperplane_divisor(1))
    if name == "p2-line":
        return make_cut(hyperplane_divisor(2))
    raise ValueError(f"unknown testbed {name!r}")


def divisor_weight(cut: CutSpec, degree: int) -> int:
    """Total tangency weight Z . A for a degree-d ambient class."""
    value = degree * h2_pairing(cut.divisor.divisor_class)
    if value.denominator != 1:
        raise ValueError("divisor pairing must be integral")
    return int(value)


# ---------------------------------------------------------------------------
# Insertion splitting.


@dataclass(frozen=True)
class AmbientInsertion:
    """Insertion supported away from the divisor: it stays on the X side and
    restricts to a pullback on the bundle side."""

    cls: RingElement


@dataclass(frozen=True)
class ShriekInsertion:
    """Insertion of the transfer of a divisor class, supported near the
    divisor: it vanishes on the X side and lands on the bundle side."""

    beta: RingElement


SplitInsertion = AmbientInsertion | ShriekInsertion


def absolute_insertions(cut: CutSpec, insertions) -> tuple[RingElement, ...]:
    out = []
    for ins in insertions:
        if isinstance(ins, AmbientInsertion):
            out.append(ins.cls)
        else:
            out.append(shriek_pushforward(cut.divisor, ins.beta))
    return tuple(out)


# ---------------------------------------------------------------------------
# The comparison identity: partitions and right-hand side.


def set_partitions(items: list):
    """All set partitions of the given items, deterministically ordered."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
        yield sub + [[first]]


def comparison_partitions(
    z_space: Space, betas, weight: int
) -> list[tuple[WeightedPartition, tuple[tuple[int, ...], ...]]]:
    """Weighted partitions appearing in the comparison identity.

    One entry per set partition of the insertion indices into at most
    ``weight`` blocks: each block contributes a transverse pair weighted by
    the cup product of its classes, and the remaining tangency is filled
    with unit-weighted pairs.  Partitions with a vanishing block product are
    dropped.  Entries repeat when distinct set partitions produce equal
    weighted partitions; the multiplicity is part of the identity.
    """
    betas = list(betas)
    if betas and weight < 1:
        raise ValueError("positive tangency weight required with insertions")
    out = []
    for blocks in set_partitions(list(range(len(betas)))):
        if len(blocks) > weight:
            continue
        gammas = [cup_all(z_space, (betas[i] for i in block)) for block in blocks]
        if any(g.is_zero() for g in gammas):
            continue
        pairs = [WeightedPair(1, g) for g in gammas]
        pairs += [WeightedPair(1, unit(z_space))] * (weight - len(blocks))
        mu = weighted_partition(z_space, pairs)
        out.append((mu, tuple(tuple(sorted(b)) for b in sorted(map(sorted, blocks)))))
    out.sort(key=lambda entry: (len(entry[1]), entry[1]))
    return out


def _check_hypothesis(cut: CutSpec, n_transfers: int) -> None:
    v = min_normal_chern(cut.divisor)
    if v < n_transfers:
        raise HypothesisViolated(
            f"minimal normal Chern number {v} is below the number of "
            f"transferred insertions {n_transfers}"
        )


def comparison_rhs(
    cut: CutSpec,
    degree: int,
    alphas,
    betas,
    rel_oracle,
    require_hypothesis: bool = True,
):
    """Sum of relative invariants over the comparison partitions.

    ``rel_oracle(degree, alphas, partition)`` supplies the relative
    invariants of (X, Z).  With ``require_hypothesis`` the minimal normal
    Chern number must dominate the number of transferred classes; pass
    False to exercise the formal identity outside that range.
    """
    alphas = tuple(alphas)
    betas = tuple(betas)
    if require_hypothesis:
        _check_hypothesis(cut, len(betas))
    weight = divisor_weight(cut, degree)
    terms = []
    for mu, blocks in comparison_partitions(cut.divisor.divisor, betas, weight):
        terms.append((mu, blocks, rel_oracle(degree, alphas, mu)))
    total = sum((v for _, _, v in terms), Fraction(0))
    return total, terms


def closed_form_oracle(cut: CutSpec):
    """Relative oracle for an X that is itself a completed line bundle: the
    line relative to a point, viewed over a point base."""
    ambient = cut.divisor.ambient
    if not (
        cut.divisor.divisor.kind == POINT
        and ambient == projective_space(1)
    ):
        raise UnsupportedQuery(
            "closed-form relative oracle only exists for the line/point testbed"
        )
    bundle = BundleSpec(point_space(), 0)

    def oracle(degree: int, alphas, mu: WeightedPartition) -> Fraction:
        alphas = tuple(alphas)
        total = Fraction(0)
        for combo in _cartesian(*(a.terms() for a in alphas)) if alphas else [()]:
            coeff = Fraction(1)
            insertions = []
            for idx, c in combo:
                coeff *= c
                if idx == 0:
                    insertions.append(Pullback(unit(bundle.base)))
                else:
                    insertions.append(ZeroSection(unit(bundle.base)))
            query = make_fiber_query(bundle, degree, insertions, mu)
            total += coeff * relative_invariant(query)
        return total

    return oracle


# ---------------------------------------------------------------------------
# Solving for relative invariants on the set-partition lattice.


def _frozen(blocks) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(b)) for b in sorted(map(sorted, blocks)))


def _refines(finer, coarser) -> bool:
    return all(any(set(b) <= set(c) for c in coarser) for b in finer)


def solve_relative(
    cut: CutSpec,
    degree: int,
    alphas,
    betas,
    require_hypothesis: bool = True,
) -> dict[WeightedPartition, Fraction]:
    """Recover relative invariants from absolute ones by lattice inversion.

    For every set partition P of the transferred classes, the absolute
    invariant of the merged family equals the sum of the unknown relative
    invariants over all coarsenings of P.  The system is unitriangular under
    refinement, so peeling from the coarsest partition downward isolates
    each unknown exactly.  Distinct partitions can index the same weighted
    partition; their solved values must then agree, which is asserted.
    """
    alphas = tuple(alphas)
    betas = tuple(betas)
    if require_hypothesis:
        _check_hypothesis(cut, len(betas))
    weight = divisor_weight(cut, degree)
    z_space = cut.divisor.divisor
    ambient = cut.divisor.ambient
    all_partitions = [_frozen(p) for p in set_partitions(list(range(len(betas))))]
    all_partitions.sort(key=lambda p: (len(p), p))
    solved: dict[tuple, Fraction] = {}
    table: dict[WeightedPartition, Fraction] = {}
    for blocks in all_partitions:
        if len(blocks) > weight:
            continue
        gammas = [cup_all(z_space, (betas[i] for i in block)) for block in blocks]
        if any(g.is_zero() for g in gammas):
            continue
        insertions = alphas + tuple(
            shriek_pushforward(cut.divisor, g) for g in gammas
        )
        try:
            lhs = gw_invariant(ambient, degree, insertions)
        except UnsupportedQuery as exc:
            raise UnsupportedQuery(
                f"absolute oracle cannot evaluate the merged query for blocks "
                f"{blocks}: {exc}"
            ) from exc
        coarser_sum = Fraction(0)
        for other, value in solved.items():
            if other != blocks and _refines(blocks, other):
                coarser_sum += value
        solved[blocks] = lhs - coarser_sum
        pairs = [WeightedPair(1, g) for g in gammas]
        pairs += [WeightedPair(1, unit(z_space))] * (weight - len(blocks))
        mu = weighted_partition(z_space, pairs)
        if mu in table:
            assert table[mu] == solved[blocks], (
                f"inconsistent relative value for {partition_to_text(mu)}"
            )
        else:
            table[mu] = solved[blocks]
    return table


def table_oracle(table: dict[WeightedPartition, Fraction]):
    def oracle(degree: int, alphas, mu: WeightedPartition) -> Fraction:
        if mu not in table:
            raise UnsupportedQuery(
                f"partition {partition_to_text(mu)} is outside the solved table"
            )
        return table[mu]

    return oracle


# ---------------------------------------------------------------------------
# Full verification reports.


@dataclass(frozen=True)
class ComparisonReport:
    status: str
    lhs: Fraction | None
    rhs: Fraction | None
    equal: bool | None
    terms: tuple
    detail: str = ""

    def to_json(self, include_terms: bool = True) -> dict:
        data = {
            "status": self.status,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "equal": self.equal,
        }
        if include_terms:
            data["terms"] = [
                {
                    "partition": partition_to_text(mu),
                    "delta": delta_factor(mu),
                    "value": str(v),
                }
                for mu, _, v in self.terms
            ]
        if self.detail:
            data["detail"] = self.detail
        return data


def verify_comparison(
    cut: CutSpec,
    degree: int,
    alphas,
    betas,
    rel_source: str = "auto",
    require_hypothesis: bool = True,
) -> ComparisonReport:
    """Compute both sides of the comparison identity and report equality."""
    alphas = tuple(alphas)
    betas = tuple(betas)
    if rel_source == "auto":
        rel_source = "closed" if cut.divisor.divisor.kind == POINT else "solve"
    insertions = alphas + tuple(
        shriek_pushforward(cut.divisor, b) for b in betas
    )
    try:
        lhs = gw_invariant(cut.divisor.ambient, degree, insertions)
    except UnsupportedQuery as exc:
        return ComparisonReport("unsupported", None, None, None, (), str(exc))
    if rel_source == "closed":
        oracle = closed_form_oracle(cut)
    elif rel_source == "solve":
        oracle = table_oracle(
            solve_relative(cut, degree, alphas, betas, require_hypothesis)
        )
    else:
        raise ValueError(f"unknown relative source {rel_source!r}")
    try:
        rhs, terms = comparison_rhs(
            cut, degree, alphas, betas, oracle, require_hypothesis
        )
    except UnsupportedQuery as exc:
        return ComparisonReport("unsupported", lhs, None, None, (), str(exc))
    return ComparisonReport("ok", lhs, rhs, lhs == rhs, tuple(terms))


# ---------------------------------------------------------------------------
# Term-by-term degeneration of an absolute invariant.


@dataclass(frozen=True)
class BundleComponent:
    """One bundle-side component: a fiber line carrying some transferred
    insertions and a single transverse tangency point."""

    betas: tuple[RingElement, ...]
    tangency_weight: RingElement
    value: Fraction


@dataclass(frozen=True)
class DegenerationTerm:
    degree: int
    x_insertions: tuple[RingElement, ...]
    x_partition: WeightedPartition
    partition: WeightedPartition
    components: tuple[BundleComponent, ...]
    delta: int
    x_value: Fraction
    value: Fraction
    connected: bool = True

    def to_json(self) -> dict:
        return {
            "partition": partition_to_text(self.partition),
            "delta": self.delta,
            "value": str(self.value),
        }


@dataclass(frozen=True)
class TermEnumeration:
    terms: tuple[DegenerationTerm, ...]
    dropped: tuple[tuple[str, object], ...]
    total: Fraction


def enumerate_terms(
    cut: CutSpec, degree: int, insertions, rel_oracle
) -> TermEnumeration:
    """All nonzero degeneration terms of an absolute query under the cut.

    Positivity of the divisor plus the dominance of its minimal normal Chern
    number restrict the bundle side to fiber lines in the single
    transverse-tangency shape; everything else is dropped with a reason and
    a representative query whose vanishing can be rechecked.
    """
    insertions = tuple(insertions)
    z_space = cut.divisor.divisor
    shrieks = [ins.beta for ins in insertions if isinstance(ins, ShriekInsertion)]
    ambients = [ins.cls for ins in insertions if isinstance(ins, AmbientInsertion)]
    if z_space.kind != POINT and normal_degree(cut.divisor) < 1:
        raise UnsupportedQuery("term pruning needs a positive divisor")
    _check_hypothesis(cut, len(shrieks))
    weight = divisor_weight(cut, degree)
    bundle = cut.bundle
    bas = basis(z_space)
    duals = dual_basis(z_space)
    dropped: list[tuple[str, object]] = []
    if ambients:
        sample = make_fiber_query(
            bundle,
            1,
            [Pullback(unit(z_space))],
            weighted_partition(z_space, [WeightedPair(1, unit(z_space))]),
        )
        dropped.append(
            (
                "bundle-side components with pulled-back insertions vanish, so "
                "every ambient insertion stays on the X side",
                sample,
            )
        )
    if weight >= 2:
        heavy = make_fiber_query(
            bundle,
            2,
            [],
            weighted_partition(z_space, [WeightedPair(2, point_class(z_space))]),
        )
        dropped.append(
            (
                "components of fiber degree two or more (or with several "
                "tangency points) vanish",
                heavy,
            )
        )
    terms: list[DegenerationTerm] = []
    total = Fraction(0)
    for blocks in set_partitions(list(range(len(shrieks)))):
        if len(blocks) > weight:
            dropped.append(
                (
                    "more components than the total tangency weight allows",
                    _frozen(blocks),
                )
            )
            continue
        empties = weight - len(blocks)
        choices = [list(range(len(bas)))] * len(blocks)
        for assignment in _cartesian(*choices) if blocks else [()]:
            components = []
            y_value = Fraction(1)
            ok = True
            for block, widx in zip(blocks, assignment):
                betas = tuple(shrieks[i] for i in block)
                gamma = basis_element(z_space, widx)
                query = make_fiber_query(
                    bundle,
                    1,
                    [ZeroSection(b) for b in betas],
                    weighted_partition(z_space, [WeightedPair(1, gamma)]),
                )
                v = relative_invariant(query)
                if v == 0:
                    dropped.append(("component integral vanishes", query))
                    ok = False
                    break
                components.append(BundleComponent(betas, gamma, v))
                y_value *= v
            if not ok:
                continue
            # Components with no insertions need a point-class tangency weight.
            if empties:
                pt = point_class(z_space)
                empty_query = make_fiber_query(
                    bundle,
                    1,
                    [],
                    weighted_partition(z_space, [WeightedPair(1, pt)]),
                )
                v = relative_invariant(empty_query)
                if v == 0:
                    dropped.append(("empty component integral vanishes", empty_query))
                    continue
                for _ in range(empties):
                    components.append(BundleComponent((), pt, v))
                    y_value *= v
            mu = weighted_partition(
                z_space, (WeightedPair(1, c.tangency_weight) for c in components)
            )
            dual_pairs = []
            for c in components:
                widx = c.tangency_weight.coeffs[0][0]
                dual_pairs.append(
                    WeightedPair(1, basis_element(z_space, duals[widx].index))
                )
            mu_dual = weighted_partition(z_space, dual_pairs)
            x_value = rel_oracle(degree, tuple(ambients), mu_dual)
            value = x_value * y_value
            term = DegenerationTerm(
                degree=degree,
                x_insertions=tuple(ambients),
                x_partition=mu_dual,
                partition=mu,
                components=tuple(components),
                delta=delta_factor(mu),
                x_value=x_value,
                value=value,
            )
            if value == 0:
                dropped.append(("X-side relative invariant vanishes", term))
            else:
                terms.append(term)
                total += value
    return TermEnumeration(tuple(terms), tuple(dropped), total)


# ---------------------------------------------------------------------------
# Divisor-to-ambient lift of point-constrained witnesses.


@dataclass(frozen=True)
class LiftResult:
    stage: str
    query: AbsoluteQuery
    value: Fraction


def rc_lift(
    cut: CutSpec,
    degree: int,
    alphas,
    k_points: int,
    betas,
) -> LiftResult:
    """Lift a nonzero point-constrained invariant of the divisor to one of
    the ambient space.

    The divisor witness (restricted ambient classes, k point insertions,
    extra divisor classes) is first padded with degree-2 classes until it
    has exactly one insertion more than the tangency weight.  The matching
    ambient query usually is already nonzero; if it vanishes, the relative
    invariants recovered from the comparison identity contain a minimal
    nonzero term, and transferring its weights gives the ambient witness.
    """
    alphas = tuple(alphas)
    betas = list(betas)
    divisor = cut.divisor
    z = divisor.divisor
    x = divisor.ambient
    v = min_normal_chern(divisor)
    weight = divisor_weight(cut, degree)
    if v != weight:
        raise Inapplicable(
            f"lift needs a minimal class: tangency weight {weight} != minimal "
            f"normal Chern number {v}"
        )
    r = len(alphas) + k_points + len(betas)
    if r > v + 1:
        raise Inapplicable(f"witness has {r} insertions, more than V+1 = {v + 1}")
    betas += [generator_class(z)] * (weight + 1 - r)
    restricted = [restrict(divisor, a) for a in alphas]
    z_insertions = restricted + [point_class(z)] * k_points + betas
    witness_value = gw_invariant(z, degree, z_insertions)
    if witness_value == 0:
        raise ValueError("precondition: the divisor witness vanishes")
    x_insertions = (
        alphas
        + tuple([point_class(x)] * k_points)
        + tuple(shriek_pushforward(divisor, b) for b in betas)
    )
    direct = gw_invariant(x, degree, x_insertions)
    if direct != 0:
        return LiftResult("direct", AbsoluteQuery(x, degree, x_insertions), direct)
    family = [point_class(z)] * k_points + betas
    table = solve_relative(cut, degree, alphas, family, require_hypothesis=False)
    nonzero = {mu: val for mu, val in table.items() if val != 0}
    if not nonzero:
        raise Inapplicable("no nonzero relative invariant in the expansion")
    mu0 = _minimal_partition(degree, alphas, list(nonzero))
    final = alphas + tuple(
        shriek_pushforward(divisor, p.weight) for p in mu0.pairs
    )
    return LiftResult(
        "relative-minimal", AbsoluteQuery(x, degree, final), nonzero[mu0]
    )


def _minimal_partition(degree: int, alphas, candidates: list[WeightedPartition]):
    keys = {mu: InvariantKey(degree, tuple(alphas), mu) for mu in candidates}
    minimal = [
        mu
        for mu in candidates
        if not any(
            key_compare(keys[other], keys[mu]) is Ordering.LESS
            for other in candidates
            if other != mu
        )
    ]
    if len(minimal) != 1:
        raise Inapplicable(
            f"no unique minimal relative term among {len(candidates)} candidates"
        )
    return minimal[0]
