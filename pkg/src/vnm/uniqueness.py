"""Recovery of the positive affine map between equivalent utilities.

Two utility functions represent the same preferences exactly when one is a
positive affine transform of the other, ``v = alpha * u + beta`` with
``alpha > 0``. :func:`recover_affine` computes the only candidate transform
from the extremes of ``u`` and rejects inputs where no such transform
exists; :func:`verify_affine` independently checks a claimed transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotAffine, PreconditionViolated, RankMismatch, SpaceMismatch
from .jsonio import number_to_json
from .lottery import UtilityFunction


@dataclass(frozen=True)
class AffineTransform:
    """v(x) = alpha * u(x) + beta with a strictly positive slope."""

    alpha: object
    beta: object

    def __post_init__(self):
        if not self.alpha > 0:
            raise PreconditionViolated(f"affine slope must be positive, got {self.alpha}")

    def apply(self, value):
        return self.alpha * value + self.beta

    def to_json(self) -> dict:
        return {"alpha": number_to_json(self.alpha), "beta": number_to_json(self.beta)}


def _default_tol(space):
    return 0 if space.exact else 1e-9


def _check_spaces(u: UtilityFunction, v: UtilityFunction) -> None:
    if u.space != v.space:
        raise SpaceMismatch("utilities must share one outcome space")


def _residual_witness(u: UtilityFunction, v: UtilityFunction, t: AffineTransform):
    worst = None
    worst_gap = None
    for x, uv, vv in zip(u.space.labels, u.values, v.values):
        gap = abs(vv - t.apply(uv))
        if worst_gap is None or gap > worst_gap:
            worst_gap = gap
            worst = (x, t.apply(uv), vv)
    return worst_gap, worst


def recover_affine(u: UtilityFunction, v: UtilityFunction, tol=None) -> AffineTransform:
    """The positive affine transform carrying ``u`` onto ``v``.

    The two utilities must rank every pair of outcomes identically
    (including ties); that is checked first and a disagreeing pair raises
    :class:`RankMismatch`. If ``u`` is constant the slope defaults to 1 and
    the offset is the constant gap. Otherwise the slope comes from the
    spread between u's argmax and argmin (ties toward the lower index) and
    the offset anchors the minimum. Residuals beyond ``tol`` (0 in rational
    mode, 1e-9 in float mode) raise :class:`NotAffine`.
    """
    _check_spaces(u, v)
    if tol is None:
        tol = _default_tol(u.space)

    labels = u.space.labels
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            du = u.values[i] - u.values[j]
            dv = v.values[i] - v.values[j]
            sign_u = (du > 0) - (du < 0)
            sign_v = (dv > 0) - (dv < 0)
            if sign_u != sign_v:
                raise RankMismatch((labels[i], labels[j]))

    if u.is_constant():
        transform = AffineTransform(u.space.one(), v.values[0] - u.values[0])
    else:
        i_max = max(range(len(labels)), key=lambda i: (u.values[i], -i))
        i_min = min(range(len(labels)), key=lambda i: (u.values[i], i))
        alpha = (v.values[i_max] - v.values[i_min]) / (u.values[i_max] - u.values[i_min])
        beta = v.values[i_min] - alpha * u.values[i_min]
        transform = AffineTransform(alpha, beta)

    gap, witness = _residual_witness(u, v, transform)
    if gap > tol:
        raise NotAffine(witness)
    return transform


@dataclass
class AffineCheck:
    """Outcome of verifying one claimed transform."""

    passed: bool
    max_residual: object
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "max_residual": number_to_json(self.max_residual),
            "witness": self.witness,
        }


def verify_affine(
    u: UtilityFunction, v: UtilityFunction, transform: AffineTransform, tol=None
) -> AffineCheck:
    """Does ``alpha * u + beta`` reproduce ``v`` within ``tol`` everywhere?"""
    _check_spaces(u, v)
    if tol is None:
        tol = _default_tol(u.space)
    gap, worst = _residual_witness(u, v, transform)
    passed = gap <= tol
    witness = None
    if not passed:
        label, expected, actual = worst
        witness = {
            "outcome": label,
            "transformed": number_to_json(expected),
            "target": number_to_json(actual),
        }
    return AffineCheck(passed=passed, max_residual=gap, witness=witness)
