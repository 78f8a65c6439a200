"""Extra oracle implementations: external comparators and adversarial models.

:class:`SubprocessOracle` adapts any executable speaking a one-line JSON
protocol into a :class:`PreferenceOracle`. :class:`RankDependentOracle`
deliberately violates the independence axiom (while keeping a complete
transitive order), which makes it useful as a known-bad comparator when
exercising the axiom checkers.
"""

from __future__ import annotations

import json
import shlex
import subprocess
from typing import Callable, Optional

from .jsonio import lottery_to_json
from .lottery import Lottery, UtilityFunction
from .preference import PreferenceOracle


def _square(t):
    return t * t


class RankDependentOracle(PreferenceOracle):
    """Rank-dependent value: cumulative probabilities pass through a weight curve.

    Outcomes are ranked best-first by the supplied utility; outcome ``i`` in
    that order receives decision weight ``w(c_i) - w(c_{i-1})`` where ``c_i``
    is the cumulative probability of the top ``i`` outcomes. With any
    nonlinear ``w`` (default ``w(t) = t^2``) the induced preference is still
    a total preorder but mixing can reshuffle it, so independence fails on
    easily sampled instances.
    """

    def __init__(
        self,
        utility: UtilityFunction,
        weight: Callable = _square,
        query_budget: Optional[int] = None,
    ):
        super().__init__(utility.space, query_budget=query_budget)
        self.utility = utility
        self.weight = weight
        # best-first outcome order, ties broken toward the lower index
        self._order = sorted(
            range(utility.space.size), key=lambda i: (utility.values[i], -i), reverse=True
        )
        self._cache: dict[tuple, object] = {}

    def rank_dependent_value(self, p: Lottery):
        key = p.probs
        got = self._cache.get(key)
        if got is not None:
            return got
        total = self.space.zero()
        cum = self.space.zero()
        w_prev = self.weight(cum)
        for i in self._order:
            cum = cum + p.probs[i]
            w_cum = self.weight(cum)
            total += (w_cum - w_prev) * self.utility.values[i]
            w_prev = w_cum
        self._cache[key] = total
        return total

    def _answer(self, p: Lottery, q: Lottery) -> bool:
        return self.rank_dependent_value(p) >= self.rank_dependent_value(q)


class SubprocessOracle(PreferenceOracle):
    """Bridge to an external comparator process.

    The child reads one JSON object per line, ``{"p": lottery, "q":
    lottery}``, and must answer with one JSON line ``{"pref": true}`` or
    ``{"pref": false}``. The process is started once and kept alive for the
    whole session; it is expected to answer deterministically.
    """

    def __init__(self, space, command: str, query_budget: Optional[int] = None):
        super().__init__(space, query_budget=query_budget)
        self.command = command
        self._proc = subprocess.Popen(
            shlex.split(command),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )

    def _answer(self, p: Lottery, q: Lottery) -> bool:
        request = json.dumps({"p": lottery_to_json(p), "q": lottery_to_json(q)})
        try:
            self._proc.stdin.write(request + "\n")
            self._proc.stdin.flush()
            line = self._proc.stdout.readline()
        except (BrokenPipeError, ValueError) as exc:
            raise RuntimeError(f"oracle subprocess {self.command!r} is not responding") from exc
        if not line:
            raise RuntimeError(f"oracle subprocess {self.command!r} closed its output")
        reply = json.loads(line)
        if not isinstance(reply, dict) or not isinstance(reply.get("pref"), bool):
            raise RuntimeError(f'oracle subprocess reply must be {{"pref": bool}}, got {line!r}')
        return reply["pref"]

    def close(self) -> None:
        if self._proc.poll() is None:
            self._proc.stdin.close()
            self._proc.wait(timeout=10)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False
