"""Black-box preference oracles and axiom checking.

An oracle answers weak-preference queries ``pref(p, q)`` ("is p at least as
good as q?") over lotteries on one outcome space. Everything else in this
module is built from that single primitive:

* :func:`compare` derives strict preference and indifference from exactly
  two ``pref`` queries;
* :func:`check_order_axioms`, :func:`check_independence`, and
  :func:`check_classical_independence` test sampled instances of the order
  and independence axioms, reporting a replayable witness on failure;
* :func:`probe_continuity` searches for the two mixture witnesses that the
  continuity axiom promises. Finding them certifies the sampled instance
  only; this is a witness search, not a proof of the axiom.

Checks never prove an axiom. A passing report means no counterexample was
found in the given sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    AlphaOutOfRange,
    BudgetExhausted,
    IncompleteOracle,
    PreconditionViolated,
    SearchExhausted,
    SpaceMismatch,
)
from .jsonio import lottery_to_json, number_to_json
from .lottery import Lottery, OutcomeSpace, UtilityFunction, expected_utility, mix

from enum import Enum


class Comparison(Enum):
    """Outcome of comparing two lotteries."""

    PREFER_FIRST = "prefer_first"
    PREFER_SECOND = "prefer_second"
    INDIFFERENT = "indifferent"


class PreferenceOracle:
    """A weak-preference comparator with a query counter.

    Subclasses override :meth:`_answer`; alternatively pass ``pref_fn``
    taking two lotteries and returning a bool. The counter increases by one
    per query and never resets. With ``query_budget`` set, the oracle raises
    :class:`BudgetExhausted` once the budget is spent.

    Oracles are expected to answer deterministically within a session;
    everything downstream (witness replay, byte-identical reports) relies
    on that.
    """

    def __init__(
        self,
        space: OutcomeSpace,
        pref_fn: Optional[Callable[[Lottery, Lottery], bool]] = None,
        query_budget: Optional[int] = None,
    ):
        self.space = space
        self._pref_fn = pref_fn
        self.query_budget = query_budget
        self._query_count = 0

    @property
    def query_count(self) -> int:
        return self._query_count

    def pref(self, p: Lottery, q: Lottery) -> bool:
        """Answer whether ``p`` is weakly preferred to ``q``. Counts one query."""
        if p.space != self.space or q.space != self.space:
            raise SpaceMismatch("query lotteries must live on the oracle's space")
        if self.query_budget is not None and self._query_count >= self.query_budget:
            raise BudgetExhausted(self.query_budget)
        self._query_count += 1
        return bool(self._answer(p, q))

    def _answer(self, p: Lottery, q: Lottery) -> bool:
        if self._pref_fn is None:
            raise NotImplementedError("provide pref_fn or override _answer")
        return self._pref_fn(p, q)


class UtilityOracle(PreferenceOracle):
    """The preference relation induced by a utility function.

    ``pref(p, q)`` holds iff ``EU(p) >= EU(q) - indiff_epsilon``. The
    epsilon exists for float-mode sweeps where exact ties are unstable; in
    rational mode it must stay 0 so the relation is a genuine total
    preorder.
    """

    def __init__(
        self,
        utility: UtilityFunction,
        indiff_epsilon=0,
        query_budget: Optional[int] = None,
    ):
        super().__init__(utility.space, query_budget=query_budget)
        if indiff_epsilon < 0:
            raise ValueError("indiff_epsilon must be nonnegative")
        if utility.space.exact and indiff_epsilon != 0:
            raise ValueError("indiff_epsilon must be 0 in rational mode")
        self.utility = utility
        self.indiff_epsilon = indiff_epsilon
        self._eu_cache: dict[tuple, object] = {}

    def _eu(self, p: Lottery):
        key = p.probs
        got = self._eu_cache.get(key)
        if got is None:
            got = expected_utility(p, self.utility)
            self._eu_cache[key] = got
        return got

    def _answer(self, p: Lottery, q: Lottery) -> bool:
        return self._eu(p) >= self._eu(q) - self.indiff_epsilon


def compare(oracle: PreferenceOracle, p: Lottery, q: Lottery) -> Comparison:
    """Classify the pair with exactly two queries: pref(p,q) and pref(q,p).

    Raises :class:`IncompleteOracle` if the oracle declines both directions,
    since a complete relation must accept at least one.
    """
    pq = oracle.pref(p, q)
    qp = oracle.pref(q, p)
    if pq and qp:
        return Comparison.INDIFFERENT
    if pq:
        return Comparison.PREFER_FIRST
    if qp:
        return Comparison.PREFER_SECOND
    raise IncompleteOracle(p, q)


@dataclass
class AxiomReport:
    """Result of one sampled axiom check.

    ``witness`` is a JSON-ready dict present only on failure; it contains
    every lottery and weight needed to replay the violated instance.
    """

    axiom: str
    passed: bool
    checked: int
    queries_used: int
    witness: Optional[dict] = None
    note: str = ""
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "axiom": self.axiom,
            "passed": self.passed,
            "checked": self.checked,
            "queries_used": self.queries_used,
            "witness": self.witness,
        }
        if self.note:
            out["note"] = self.note
        if self.details:
            out["details"] = self.details
        return out


def _pair_witness(kind: str, entries: dict) -> dict:
    w = {"kind": kind}
    w.update(entries)
    return w


def check_order_axioms(
    oracle: PreferenceOracle, triples: Iterable[tuple[Lottery, Lottery, Lottery]]
) -> AxiomReport:
    """Test completeness and transitivity on each sampled triple.

    For a triple (p, q, r) all six directed queries are made once, then:
    every unordered pair must be accepted in at least one direction
    (completeness), and every chain ``a >= b >= c`` must close with
    ``a >= c`` (transitivity). The first violation becomes the witness.
    """
    start = oracle.query_count
    checked = 0
    for p, q, r in triples:
        checked += 1
        lots = (p, q, r)
        table = {}
        for i in range(3):
            for j in range(3):
                if i != j:
                    table[(i, j)] = oracle.pref(lots[i], lots[j])
        names = ("p", "q", "r")
        for i in range(3):
            for j in range(i + 1, 3):
                if not table[(i, j)] and not table[(j, i)]:
                    return AxiomReport(
                        axiom="order",
                        passed=False,
                        checked=checked,
                        queries_used=oracle.query_count - start,
                        witness=_pair_witness(
                            "completeness",
                            {
                                "first": lottery_to_json(lots[i]),
                                "second": lottery_to_json(lots[j]),
                                "roles": [names[i], names[j]],
                            },
                        ),
                    )
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    if len({i, j, k}) == 3 and table[(i, j)] and table[(j, k)] and not table[(i, k)]:
                        return AxiomReport(
                            axiom="order",
                            passed=False,
                            checked=checked,
                            queries_used=oracle.query_count - start,
                            witness=_pair_witness(
                                "transitivity",
                                {
                                    "first": lottery_to_json(lots[i]),
                                    "second": lottery_to_json(lots[j]),
                                    "third": lottery_to_json(lots[k]),
                                    "roles": [names[i], names[j], names[k]],
                                },
                            ),
                        )
    return AxiomReport(
        axiom="order",
        passed=True,
        checked=checked,
        queries_used=oracle.query_count - start,
    )


def _require_mixing_weight(alpha) -> None:
    # independence needs alpha in (0, 1]; mix() itself allows 0
    if alpha <= 0 or alpha > 1:
        raise AlphaOutOfRange(alpha, required="(0, 1]")


def check_independence(
    oracle: PreferenceOracle,
    tuples: Iterable[tuple[Lottery, Lottery, Lottery, object]],
) -> AxiomReport:
    """Test the independence axiom on sampled (p, q, r, alpha) instances.

    Whatever relation holds between p and q must also hold between
    ``mix(p, r, alpha)`` and ``mix(q, r, alpha)``: strict preference stays
    strict in the same direction, indifference stays indifference.
    """
    start = oracle.query_count
    checked = 0
    for p, q, r, alpha in tuples:
        checked += 1
        _require_mixing_weight(alpha)
        base = compare(oracle, p, q)
        mixed = compare(oracle, mix(p, r, alpha), mix(q, r, alpha))
        if mixed is not base:
            return AxiomReport(
                axiom="independence",
                passed=False,
                checked=checked,
                queries_used=oracle.query_count - start,
                witness=_pair_witness(
                    "independence",
                    {
                        "p": lottery_to_json(p),
                        "q": lottery_to_json(q),
                        "r": lottery_to_json(r),
                        "alpha": number_to_json(alpha),
                        "base_comparison": base.value,
                        "mixed_comparison": mixed.value,
                    },
                ),
            )
    return AxiomReport(
        axiom="independence",
        passed=True,
        checked=checked,
        queries_used=oracle.query_count - start,
    )


def check_classical_independence(
    oracle: PreferenceOracle,
    tuples: Iterable[tuple[Lottery, Lottery, Lottery, object]],
) -> AxiomReport:
    """Test the biconditional form: p >= q iff the alpha-mixtures with r compare the same way.

    Both directions of the equivalence are asserted, for both query
    orientations, so four raw queries per tuple.
    """
    start = oracle.query_count
    checked = 0
    for p, q, r, alpha in tuples:
        checked += 1
        _require_mixing_weight(alpha)
        mp = mix(p, r, alpha)
        mq = mix(q, r, alpha)
        forward = oracle.pref(p, q)
        forward_mixed = oracle.pref(mp, mq)
        backward = oracle.pref(q, p)
        backward_mixed = oracle.pref(mq, mp)
        if forward != forward_mixed or backward != backward_mixed:
            return AxiomReport(
                axiom="classical_independence",
                passed=False,
                checked=checked,
                queries_used=oracle.query_count - start,
                witness=_pair_witness(
                    "classical_independence",
                    {
                        "p": lottery_to_json(p),
                        "q": lottery_to_json(q),
                        "r": lottery_to_json(r),
                        "alpha": number_to_json(alpha),
                        "pref_p_q": forward,
                        "pref_mixed_p_q": forward_mixed,
                        "pref_q_p": backward,
                        "pref_mixed_q_p": backward_mixed,
                    },
                ),
            )
    return AxiomReport(
        axiom="classical_independence",
        passed=True,
        checked=checked,
        queries_used=oracle.query_count - start,
    )


def _upper_grid(space: OutcomeSpace, max_probes: int):
    # 1/2, 3/4, 7/8, ... approaching 1 from below
    if space.exact:
        for k in range(1, max_probes + 1):
            yield Fraction(2**k - 1, 2**k)
    else:
        # cap so the float weight stays strictly below 1
        for k in range(1, min(max_probes, 50) + 1):
            yield 1.0 - 0.5**k


def _lower_grid(space: OutcomeSpace, max_probes: int):
    # 1/2, 1/4, 1/8, ... approaching 0 from above
    if space.exact:
        for k in range(1, max_probes + 1):
            yield Fraction(1, 2**k)
    else:
        for k in range(1, min(max_probes, 50) + 1):
            yield 0.5**k


def probe_continuity(
    oracle: PreferenceOracle,
    p: Lottery,
    q: Lottery,
    r: Lottery,
    max_probes: int = 64,
):
    """Search for mixture weights witnessing continuity around q.

    Requires the strict sandwich p > q > r (verified through the oracle
    first; anything weaker is rejected, because when q ties with an
    endpoint no strict witness can exist). Returns ``(alpha, beta)`` with
    ``mix(p, r, alpha) > q`` and ``q > mix(p, r, beta)``, both re-verified
    against the oracle before returning. This certifies the instance; it
    says nothing about other triples.
    """
    if compare(oracle, p, q) is not Comparison.PREFER_FIRST:
        raise PreconditionViolated("continuity probe needs p strictly preferred to q")
    if compare(oracle, q, r) is not Comparison.PREFER_FIRST:
        raise PreconditionViolated("continuity probe needs q strictly preferred to r")
    if compare(oracle, p, r) is not Comparison.PREFER_FIRST:
        raise PreconditionViolated("continuity probe needs p strictly preferred to r")

    alpha = None
    for a in _upper_grid(oracle.space, max_probes):
        if compare(oracle, mix(p, r, a), q) is Comparison.PREFER_FIRST:
            alpha = a
            break
    if alpha is None:
        raise SearchExhausted(max_probes, "no upper witness with mix(p, r, alpha) > q")

    beta = None
    for b in _lower_grid(oracle.space, max_probes):
        if compare(oracle, q, mix(p, r, b)) is Comparison.PREFER_FIRST:
            beta = b
            break
    if beta is None:
        raise SearchExhausted(max_probes, "no lower witness with q > mix(p, r, beta)")

    # replay both witnesses once more before handing them out
    if compare(oracle, mix(p, r, alpha), q) is not Comparison.PREFER_FIRST:
        raise SearchExhausted(max_probes, "upper witness did not replay")
    if compare(oracle, q, mix(p, r, beta)) is not Comparison.PREFER_FIRST:
        raise SearchExhausted(max_probes, "lower witness did not replay")
    return alpha, beta
