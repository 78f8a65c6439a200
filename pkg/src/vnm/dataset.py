"""Pairwise preference datasets: consistency checks and reward-model fitting.

A dataset is a list of (winner, loser) lottery pairs over one outcome
space, the usual raw material of preference learning. Validation looks for
the two ways such data can contradict itself: the same pair recorded in
both directions, and longer strict-preference cycles. Cycle detection goes
beyond pairwise contradiction checking and is reported as such.

Fitting searches for a utility whose expected-utility ranking reproduces
every pair at a requested margin, via perceptron-style additive updates on
the winner-minus-loser probability vectors. A linear-programming solver
would do the same job; the iterative rule keeps this module dependency-free
and its updates are exact in rational mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import Infeasible, PreconditionViolated, SpaceMismatch
from .jsonio import (
    lottery_from_json,
    lottery_to_json,
    number_to_json,
    space_from_json,
    space_to_json,
    utility_from_json,
    utility_to_json,
)
from .lottery import Lottery, OutcomeSpace, UtilityFunction, expected_utility
from .preference import UtilityOracle

# float-mode lotteries closer than this componentwise count as the same node
FLOAT_EQUALITY_TOL = 1e-12


@dataclass(frozen=True)
class PrefDataset:
    """Recorded strict preferences: in every pair the winner beat the loser."""

    space: OutcomeSpace
    pairs: tuple[tuple[Lottery, Lottery], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(pair) for pair in self.pairs))
        for winner, loser in self.pairs:
            if winner.space != self.space or loser.space != self.space:
                raise SpaceMismatch("dataset pairs must live on the dataset's space")

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class RewardModel:
    """A utility function read as a preference model: higher EU wins."""

    utility: UtilityFunction

    def pref(self, p: Lottery, q: Lottery) -> bool:
        return expected_utility(p, self.utility) >= expected_utility(q, self.utility)

    def oracle(self, query_budget: Optional[int] = None) -> UtilityOracle:
        return UtilityOracle(self.utility, query_budget=query_budget)


def lotteries_equal(p: Lottery, q: Lottery) -> bool:
    """Identity used when grouping dataset rows: exact, or 1e-12 in float mode."""
    if p.space != q.space:
        return False
    if p.space.exact:
        return p.probs == q.probs
    return all(abs(a - b) <= FLOAT_EQUALITY_TOL for a, b in zip(p.probs, q.probs))


@dataclass
class ValidationReport:
    """What consistency checking found.

    ``direct_contradictions`` lists index pairs (i, j) recorded in both
    directions. ``cycles`` lists strict-preference cycles as lists of pair
    indices; detecting these is an extension over plain pairwise
    contradiction checking. The dataset counts as consistent only when it
    is nonempty and both lists are empty.
    """

    nonempty: bool
    pair_count: int
    distinct_lotteries: int
    direct_contradictions: list[tuple[int, int]]
    cycles: list[list[int]]

    @property
    def consistent(self) -> bool:
        return self.nonempty and not self.direct_contradictions and not self.cycles

    def to_json(self) -> dict:
        return {
            "nonempty": self.nonempty,
            "pair_count": self.pair_count,
            "distinct_lotteries": self.distinct_lotteries,
            "direct_contradictions": [list(c) for c in self.direct_contradictions],
            "cycles": [list(c) for c in self.cycles],
            "consistent": self.consistent,
            "note": "cycle detection extends pairwise contradiction checking",
        }


def _canonical_ids(dataset: PrefDataset) -> list[tuple[int, int]]:
    """Map each pair to (winner_node, loser_node) ids under dataset identity."""
    if dataset.space.exact:
        seen: dict[tuple, int] = {}
        ids = []
        for winner, loser in dataset.pairs:
            row = []
            for lot in (winner, loser):
                node = seen.setdefault(lot.probs, len(seen))
                row.append(node)
            ids.append(tuple(row))
        return ids
    # float mode: first-match bucketing within tolerance
    representatives: list[Lottery] = []
    ids = []
    for winner, loser in dataset.pairs:
        row = []
        for lot in (winner, loser):
            node = None
            for k, rep in enumerate(representatives):
                if lotteries_equal(lot, rep):
                    node = k
                    break
            if node is None:
                node = len(representatives)
                representatives.append(lot)
            row.append(node)
        ids.append(tuple(row))
    return ids


def _find_cycles(edge_ids: list[tuple[int, int]]) -> list[list[int]]:
    """All DFS back-edge cycles, each as the list of pair indices along it."""
    adjacency: dict[int, list[tuple[int, int]]] = {}
    nodes: set[int] = set()
    for pair_index, (src, dst) in enumerate(edge_ids):
        adjacency.setdefault(src, []).append((dst, pair_index))
        nodes.add(src)
        nodes.add(dst)

    WHITE, GRAY, BLACK = 0, 1, 2
    state = {n: WHITE for n in nodes}
    cycles: list[list[int]] = []

    for start in sorted(nodes):
        if state[start] != WHITE:
            continue
        state[start] = GRAY
        stack = [(start, iter(adjacency.get(start, ())))]
        path_nodes = [start]
        path_edges: list[int] = []
        while stack:
            node, edge_iter = stack[-1]
            pushed = False
            for nxt, pair_index in edge_iter:
                if state.get(nxt, WHITE) == GRAY:
                    at = path_nodes.index(nxt)
                    cycles.append(path_edges[at:] + [pair_index])
                elif state.get(nxt, WHITE) == WHITE:
                    state[nxt] = GRAY
                    stack.append((nxt, iter(adjacency.get(nxt, ()))))
                    path_nodes.append(nxt)
                    path_edges.append(pair_index)
                    pushed = True
                    break
            if not pushed:
                stack.pop()
                state[node] = BLACK
                path_nodes.pop()
                if path_edges:
                    path_edges.pop()
    return cycles


def validate_dataset(dataset: PrefDataset) -> ValidationReport:
    """Report coverage, direct contradictions, and preference cycles.

    A 2-cycle is a direct contradiction and shows up in both lists; the two
    detectors are independent on purpose.
    """
    edge_ids = _canonical_ids(dataset)
    distinct = len({n for edge in edge_ids for n in edge})

    by_edge: dict[tuple[int, int], list[int]] = {}
    for i, edge in enumerate(edge_ids):
        by_edge.setdefault(edge, []).append(i)
    contradictions: list[tuple[int, int]] = []
    for i, (src, dst) in enumerate(edge_ids):
        for j in by_edge.get((dst, src), ()):
            if i < j:
                contradictions.append((i, j))

    cycles = _find_cycles(edge_ids)
    return ValidationReport(
        nonempty=len(dataset.pairs) > 0,
        pair_count=len(dataset.pairs),
        distinct_lotteries=distinct,
        direct_contradictions=contradictions,
        cycles=cycles,
    )


@dataclass
class FitCheck:
    """Whether a model reproduces a dataset at a margin."""

    passed: bool
    checked: int
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "witness": self.witness}


def model_fits_data(model: RewardModel, dataset: PrefDataset, margin=0) -> FitCheck:
    """Every winner must beat its loser by at least ``margin`` in EU."""
    for index, (winner, loser) in enumerate(dataset.pairs):
        eu_w = expected_utility(winner, model.utility)
        eu_l = expected_utility(loser, model.utility)
        if not eu_w >= eu_l + margin:
            return FitCheck(
                passed=False,
                checked=index + 1,
                witness={
                    "index": index,
                    "winner": lottery_to_json(winner),
                    "loser": lottery_to_json(loser),
                    "eu_winner": number_to_json(eu_w),
                    "eu_loser": number_to_json(eu_l),
                    "margin": number_to_json(margin),
                },
            )
    return FitCheck(passed=True, checked=len(dataset.pairs))


def fit_reward_model(
    dataset: PrefDataset, margin=1e-3, max_epochs: int = 10000
) -> RewardModel:
    """Find a utility whose EU ranking reproduces every recorded pair.

    Requires a dataset free of contradictions and cycles (checked first; an
    empty dataset fits vacuously with the zero utility). Perceptron-style
    updates walk along violated winner-minus-loser vectors until an epoch
    passes clean; the utility is then min-max normalized to [0, 1] and the
    fit re-checked at the requested margin before it is returned. If
    normalization eats too much of the achieved margin, training resumes at
    a doubled internal margin within the same epoch budget.
    """
    report = validate_dataset(dataset)
    if report.direct_contradictions or report.cycles:
        raise PreconditionViolated(
            "dataset is inconsistent: "
            f"{len(report.direct_contradictions)} contradictions, {len(report.cycles)} cycles"
        )
    space = dataset.space
    zero, one = space.zero(), space.one()
    if not dataset.pairs:
        return RewardModel(UtilityFunction(space, tuple([zero] * space.size)))

    diffs = [
        tuple(w - l for w, l in zip(winner.probs, loser.probs))
        for winner, loser in dataset.pairs
    ]
    weights = [zero] * space.size
    internal_margin = margin

    def normalized_model() -> RewardModel:
        lo, hi = min(weights), max(weights)
        if hi == lo:
            values = tuple([zero] * space.size)
        else:
            spread = hi - lo
            values = tuple((w - lo) / spread for w in weights)
        return RewardModel(UtilityFunction(space, values))

    epochs = 0
    while epochs < max_epochs:
        epochs += 1
        updates = 0
        for diff in diffs:
            score = sum(w * d for w, d in zip(weights, diff) if d)
            if not score >= internal_margin:
                weights = [w + d for w, d in zip(weights, diff)]
                updates += 1
        if updates == 0:
            candidate = normalized_model()
            if model_fits_data(candidate, dataset, margin).passed:
                return candidate
            # normalization shrank the slack below the requested margin
            internal_margin = internal_margin * 2 if internal_margin > 0 else one
    candidate = normalized_model()
    violations = []
    for index, (winner, loser) in enumerate(dataset.pairs):
        eu_w = expected_utility(winner, candidate.utility)
        eu_l = expected_utility(loser, candidate.utility)
        shortfall = (eu_l + margin) - eu_w
        if shortfall > 0:
            violations.append((shortfall, index))
    violations.sort(key=lambda t: (-t[0], t[1]))
    worst = [
        {"index": index, "shortfall": number_to_json(shortfall)}
        for shortfall, index in violations[:5]
    ]
    raise Infeasible(max_epochs, worst)


def dataset_to_json(dataset: PrefDataset) -> dict:
    return {
        "space": space_to_json(dataset.space),
        "pairs": [
            {"winner": lottery_to_json(w), "loser": lottery_to_json(l)}
            for w, l in dataset.pairs
        ],
    }


def dataset_from_json(obj, mode: str = "rational") -> PrefDataset:
    if not isinstance(obj, Mapping) or "space" not in obj or "pairs" not in obj:
        raise ValueError('dataset must be an object with "space" and "pairs"')
    space = space_from_json(obj["space"], mode)
    pairs = []
    for k, entry in enumerate(obj["pairs"]):
        if not isinstance(entry, Mapping) or "winner" not in entry or "loser" not in entry:
            raise ValueError(f'pair {k} must be an object with "winner" and "loser"')
        pairs.append(
            (
                lottery_from_json(entry["winner"], space=space),
                lottery_from_json(entry["loser"], space=space),
            )
        )
    return PrefDataset(space, tuple(pairs))


def model_to_json(model: RewardModel) -> dict:
    return utility_to_json(model.utility)


def model_from_json(obj, mode: str = "rational", space: Optional[OutcomeSpace] = None) -> RewardModel:
    return RewardModel(utility_from_json(obj, space=space, mode=mode))
