"""Goresky–MacPherson perversities, duality and perverse dimension."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

BUILTINS = ("zero", "top", "lower-middle", "upper-middle")


class PerversityError(ValueError):
    pass


@dataclass(frozen=True)
class Perversity:
    """Values ``p(d)`` for ``d = 0..dim``."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))
        if not self.values:
            raise PerversityError("a perversity needs at least the value p(0)")

    @property
    def dim(self) -> int:
        return len(self.values) - 1

    def __call__(self, d: int) -> int:
        return self.values[d]

    def __getitem__(self, d: int) -> int:
        return self.values[d]

    def restrict(self, dim: int) -> "Perversity":
        if dim > self.dim:
            raise PerversityError(f"perversity given up to dimension {self.dim}, need {dim}")
        return Perversity(self.values[: dim + 1])

    @property
    def top_value(self) -> int:
        """``p(X)``, the value on the top dimension."""
        return self.values[-1]


def builtin(name: str, dim: int) -> Perversity:
    if dim < 0:
        raise PerversityError("dimension must be non-negative")
    if name == "zero":
        vals = [0] * (dim + 1)
    elif name == "top":
        vals = [-d for d in range(dim + 1)]
    elif name == "lower-middle":
        vals = [(-d) // 2 for d in range(dim + 1)]
    elif name == "upper-middle":
        vals = [-((d) // 2) for d in range(dim + 1)]
    else:
        raise PerversityError(f"unknown perversity {name!r}; expected one of {', '.join(BUILTINS)}")
    return Perversity(tuple(vals))


def validate_gm(p: Perversity) -> Optional[tuple[int, int]]:
    """None if ``p`` is GM, otherwise the first offending pair of dimensions."""
    if p.values[0] != 0:
        return (0, 0)
    for d in range(1, len(p.values)):
        if p.values[d - 1] - p.values[d] not in (0, 1):
            return (d - 1, d)
    return None


def require_gm(p: Perversity) -> Perversity:
    bad = validate_gm(p)
    if bad is not None:
        a, b = bad
        if a == b:
            raise PerversityError(f"GM violation: p(0) = {p.values[0]}, must be 0")
        raise PerversityError(f"GM violation between dimensions {a} and {b}: "
                              f"p({a}) - p({b}) = {p.values[a] - p.values[b]} is not 0 or 1")
    return p


def dual(p: Perversity) -> Perversity:
    return Perversity(tuple(-d - x for d, x in enumerate(p.values)))


def classify(p: Perversity, d: int) -> str:
    """``"!"``, ``"*"`` or ``"both"`` (the last only in dimension 0)."""
    if not 0 <= d <= p.dim:
        raise PerversityError(f"dimension {d} outside 0..{p.dim}")
    if d == 0:
        return "both"
    step = p.values[d - 1] - p.values[d]
    if step == 0:
        return "!"
    if step == 1:
        return "*"
    raise PerversityError(f"perversity is not GM at dimension {d}")


def perverse_dimension(p: Perversity, d: int) -> int:
    kind = classify(p, d)
    if kind == "both":
        return 0
    if kind == "!":
        return -d - p.values[d]
    return -p.values[d]


def perverse_dimensions(p: Perversity) -> list[int]:
    return [perverse_dimension(p, d) for d in range(p.dim + 1)]


def delta_range(p: Perversity) -> tuple[int, int]:
    """``(p*(X), -p(X))``: the interval containing every perverse dimension."""
    n = p.dim
    return (-n - p.values[n], -p.values[n])


@dataclass(frozen=True)
class StratPerversity:
    """Arbitrary integer value per named stratum."""

    values: dict

    def __call__(self, name: str) -> int:
        try:
            return self.values[name]
        except KeyError:
            raise PerversityError(f"no perversity value for stratum {name!r}") from None


def strat_from_dimension(p: Perversity, strat) -> StratPerversity:
    """Per-stratum values obtained by evaluating ``p`` on stratum dimensions."""
    return StratPerversity({s.name: p(s.dim) for s in strat.strata})
