"""Finitely generated modules over a complete DVR, by invariants only.

The coefficient ring O (valuation ring with uniformizer pi, fraction
field K, residue field F) never appears concretely: a module is a free
rank plus a multiset of torsion exponents, O^rank + sum_i O/pi^e_i.
That is exactly the data the rest of the package consumes, and it keeps
every computation exact.

Graded variants carry a degree -> module mapping.  Graded support is
checked against a window, [-32, 32] by default, overridable through the
DECNUM_DEGREE_WINDOW environment variable ("48" for symmetric bounds or
"-4:64" for explicit ones, read at construction time).  Out-of-window
degrees almost always mean a dropped or doubled shift upstream, so they
fail loudly instead of propagating.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Mapping

DEFAULT_WINDOW = (-32, 32)
_WINDOW_ENV = "DECNUM_DEGREE_WINDOW"


class DegreeWindowError(ValueError):
    """A graded degree fell outside the configured support window."""


def degree_window() -> tuple[int, int]:
    """Current support window, honoring DECNUM_DEGREE_WINDOW.

    >>> degree_window()
    (-32, 32)
    """
    raw = os.environ.get(_WINDOW_ENV)
    if raw is None:
        return DEFAULT_WINDOW
    text = raw.strip()
    try:
        if ":" in text:
            lo_s, hi_s = text.split(":", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            half = int(text)
            lo, hi = -half, half
    except ValueError:
        raise ValueError(
            f"cannot parse {_WINDOW_ENV}={raw!r}: expected 'N' or 'LO:HI'"
        ) from None
    if lo > hi:
        raise ValueError(f"{_WINDOW_ENV} bounds are reversed: {raw!r}")
    return lo, hi


def _check_degree(deg: int) -> None:
    lo, hi = degree_window()
    if not lo <= deg <= hi:
        raise DegreeWindowError(
            f"degree {deg} outside support window [{lo}, {hi}]"
        )


@dataclass(frozen=True)
class OModule:
    """O^rank plus one torsion summand O/pi^e per listed exponent.

    Exponents are kept individually (not merged) and canonicalized in
    descending order.

    >>> OModule(2, (1, 3))
    OModule(rank=2, torsion=(3, 1))
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.rank, int) or self.rank < 0:
            raise ValueError(f"invalid rank {self.rank!r}")
        tors = tuple(sorted(self.torsion, reverse=True))
        for e in tors:
            if not isinstance(e, int) or e < 1:
                raise ValueError(f"invalid torsion exponent {e!r}")
        object.__setattr__(self, "torsion", tors)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("O")
        elif self.rank > 1:
            parts.append(f"O^{self.rank}")
        parts.extend("O/pi" if e == 1 else f"O/pi^{e}" for e in self.torsion)
        return " + ".join(parts) if parts else "0"


ZERO = OModule(0, ())


def tensor_K(m: OModule) -> int:
    """K-dimension after inverting pi: torsion dies, rank survives.

    >>> tensor_K(OModule(2, (3, 1)))
    2
    """
    return m.rank


def derived_tensor_F(m: OModule) -> tuple[int, int]:
    """(dim Tor_1(F, m), dim F tensor m) over the residue field.

    Each torsion summand contributes 1 to both; free rank only to the
    plain tensor.

    >>> derived_tensor_F(OModule(2, (1, 3)))
    (2, 4)
    """
    t = len(m.torsion)
    return (t, m.rank + t)


class GradedOModule:
    """Degree-indexed O-modules with window-checked finite support.

    Zero modules are dropped, so equal objects have equal support.
    """

    __slots__ = ("_by_degree",)

    def __init__(self, modules: Mapping[int, OModule] | Iterable[tuple[int, OModule]]):
        items = modules.items() if isinstance(modules, Mapping) else modules
        store: dict[int, OModule] = {}
        for deg, mod in items:
            if not isinstance(deg, int):
                raise ValueError(f"non-integer degree {deg!r}")
            if not isinstance(mod, OModule):
                raise ValueError(f"degree {deg}: expected OModule, got {mod!r}")
            if deg in store:
                raise ValueError(f"degree {deg} listed twice")
            if mod.is_zero():
                continue
            _check_degree(deg)
            store[deg] = mod
        self._by_degree = dict(sorted(store.items()))

    def degrees(self) -> tuple[int, ...]:
        return tuple(self._by_degree)

    def module_at(self, deg: int) -> OModule:
        return self._by_degree.get(deg, ZERO)

    def items(self) -> tuple[tuple[int, OModule], ...]:
        return tuple(self._by_degree.items())

    def is_zero(self) -> bool:
        return not self._by_degree

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOModule):
            return NotImplemented
        return self._by_degree == other._by_degree

    def __hash__(self):
        return hash(tuple(self._by_degree.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{d}: {m}" for d, m in self._by_degree.items())
        return f"GradedOModule({{{inner}}})"


def truncate(g: GradedOModule, n: int, plus: bool = False) -> GradedOModule:
    """Keep degrees <= n; with plus, also the torsion part of degree n+1.

    >>> g = GradedOModule({0: OModule(1), 2: OModule(0, (1,)), 3: OModule(1)})
    >>> truncate(g, 1).items()
    ((0, OModule(rank=1, torsion=())),)
    >>> truncate(g, 1, plus=True).module_at(2)
    OModule(rank=0, torsion=(1,))
    """
    out = {d: m for d, m in g.items() if d <= n}
    if plus:
        edge = g.module_at(n + 1)
        if edge.torsion:
            out[n + 1] = OModule(0, edge.torsion)
    return GradedOModule(out)


class FGraded:
    """Graded vector space over a field, recorded as degree -> dimension.

    coefficients is a display label such as "F_2" or "K".
    """

    __slots__ = ("_dims", "coefficients")

    def __init__(self, dims: Mapping[int, int], coefficients: str = "F"):
        store: dict[int, int] = {}
        for deg, dim in dims.items():
            if not isinstance(deg, int) or not isinstance(dim, int):
                raise ValueError(f"bad graded dimension entry {deg!r}: {dim!r}")
            if dim < 0:
                raise ValueError(f"negative dimension at degree {deg}")
            if dim:
                _check_degree(deg)
                store[deg] = dim
        self._dims = dict(sorted(store.items()))
        self.coefficients = coefficients

    def dims(self) -> dict[int, int]:
        return dict(self._dims)

    def dim_at(self, deg: int) -> int:
        return self._dims.get(deg, 0)

    def degrees(self) -> tuple[int, ...]:
        return tuple(self._dims)

    def total_dim(self) -> int:
        return sum(self._dims.values())

    def euler_characteristic(self) -> int:
        """Alternating sum of dimensions.

        >>> FGraded({-2: 1, -1: 1}).euler_characteristic()
        0
        """
        return sum(dim if deg % 2 == 0 else -dim for deg, dim in self._dims.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FGraded):
            return NotImplemented
        return self._dims == other._dims and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((tuple(self._dims.items()), self.coefficients))

    def __repr__(self) -> str:
        inner = ", ".join(f"{d}: {v}" for d, v in self._dims.items())
        return f"FGraded({{{inner}}}, {self.coefficients!r})"


def reduce_graded(g: GradedOModule, coefficients: str = "F") -> FGraded:
    """Derived reduction mod pi: dim_i = rank_i + t_i + t_{i+1}.

    Torsion in degree i contributes once in place and once one degree
    down (the Tor term), which is the universal-coefficient bookkeeping
    for a complex whose cohomology is g.

    >>> g = GradedOModule({0: OModule(1), 2: OModule(0, (1,)), 3: OModule(1)})
    >>> reduce_graded(g).dims()
    {0: 1, 1: 1, 2: 1, 3: 1}
    """
    if g.is_zero():
        return FGraded({}, coefficients)
    degs = g.degrees()
    lo, hi = min(degs) - 1, max(degs)
    dims = {}
    for deg in range(lo, hi + 1):
        here = g.module_at(deg)
        above = g.module_at(deg + 1)
        dims[deg] = here.rank + len(here.torsion) + len(above.torsion)
    return FGraded(dims, coefficients)


# the stalkwise statement is identical, so this is an alias by design
reduce_stalk = reduce_graded


def truncate_F(f: FGraded, n: int) -> FGraded:
    """Naive truncation: drop all degrees above n."""
    return FGraded({d: v for d, v in f.dims().items() if d <= n}, f.coefficients)


def poincare_dual(hc: GradedOModule, real_dim: int) -> GradedOModule:
    """Cohomology from compactly supported cohomology on an oriented
    real_dim-manifold: rank from the complementary degree, torsion from
    one above the complementary degree.

    >>> hc = GradedOModule({1: OModule(1), 3: OModule(0, (2,)), 4: OModule(1)})
    >>> poincare_dual(hc, 4).items()
    ((0, OModule(rank=1, torsion=())), (2, OModule(rank=0, torsion=(2,))), (3, OModule(rank=1, torsion=())))
    """
    if hc.is_zero():
        return GradedOModule({})
    degs = [real_dim - d for d in hc.degrees()] + [real_dim - d + 1 for d in hc.degrees()]
    out = {}
    for k in range(min(degs), max(degs) + 1):
        rank = hc.module_at(real_dim - k).rank
        torsion = hc.module_at(real_dim - k + 1).torsion
        if rank or torsion:
            out[k] = OModule(rank, torsion)
    return GradedOModule(out)
