"""Dynkin diagrams, Cartan matrices, root generation, foldings.

Conventions, fixed once for the whole package:

* Cartan matrix entries are C[i][j] = 2 (a_i, a_j) / (a_j, a_j), so the
  row index varies over the roots being paired and the column index
  carries the normalization.  Under this convention the coordinates of
  the simple coroot a_j^vee in the coweight basis form column j of C,
  and the coordinates of the simple root a_j in the weight basis form
  column j of C^T.
* Nodes are numbered in the Bourbaki order.  Series B/C/F/G are paths
  with the arrow conventions below; D forks at node rank-2 (1-based);
  E puts node 2 on the short branch attached to node 4.
* B_n has a single short simple root (the last node), C_n a single long
  one (the last node), F_4 is long-long-short-short, and in G_2 the
  first node is short.  Equivalently: C[B_n][n-1][n] = -2,
  C[C_n][n][n-1] = -2, C[F_4][2][3] = -2, C[G_2] = [[2,-1],[-3,2]]
  (1-based indices).

`fundamental_group` literally returns the cokernel of the Cartan matrix
(of its transpose when dual=True).  With the convention above, coker(C)
presents the quotient of the coweight lattice by the coroot lattice and
coker(C^T) the quotient of the weight lattice by the root lattice; the
invariant factors agree either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import intmat
from .intmat import FinAbGroup, Matrix

SERIES_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
EXCEPTIONAL = {("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)}

# safety bound for the reflection closure; the largest system in scope
# (E8) has 240 roots, so anything past this is not a finite type we accept
_CLOSURE_BOUND = 1000


@dataclass(frozen=True)
class DynkinDiagram:
    """An irreducible finite-type Dynkin diagram, e.g. DynkinDiagram("B", 3).

    >>> str(DynkinDiagram("D", 5))
    'D5'
    >>> DynkinDiagram("D", 3)
    Traceback (most recent call last):
        ...
    ValueError: inadmissible type D3
    """

    series: str
    rank: int

    def __post_init__(self) -> None:
        ok = False
        if self.series in SERIES_MIN_RANK:
            ok = isinstance(self.rank, int) and self.rank >= SERIES_MIN_RANK[self.series]
        elif (self.series, self.rank) in EXCEPTIONAL:
            ok = True
        if not ok:
            raise ValueError(f"inadmissible type {self.series}{self.rank}")

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def simply_laced(self) -> bool:
        return self.series in ("A", "D", "E")


def _edges(d: DynkinDiagram) -> list[tuple[int, int]]:
    n = d.rank
    if d.series in ("A", "B", "C", "F", "G"):
        return [(i, i + 1) for i in range(n - 1)]
    if d.series == "D":
        return [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    # E: chain 1-3-4-5-6(-7-8) with node 2 hanging off node 4
    chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
    return [(a, b) for a, b in zip(chain, chain[1:])] + [(1, 3)]


def _length_squares(d: DynkinDiagram) -> list[int]:
    # relative squared lengths of the simple roots, up to common scale
    n = d.rank
    if d.series == "B":
        return [2] * (n - 1) + [1]
    if d.series == "C":
        return [1] * (n - 1) + [2]
    if d.series == "F":
        return [2, 2, 1, 1]
    if d.series == "G":
        return [1, 3]
    return [1] * n


def cartan_matrix(d: DynkinDiagram) -> Matrix:
    """Cartan matrix in the convention documented at module top.

    >>> cartan_matrix(DynkinDiagram("G", 2))
    ((2, -1), (-3, 2))
    """
    n = d.rank
    ls = _length_squares(d)
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
    for i, j in _edges(d):
        # C[i][j] = -(a_i, a_i)/(a_j, a_j) when a_i is the longer one, else -1
        c[i][j] = -(ls[i] // ls[j]) if ls[i] > ls[j] else -1
        c[j][i] = -(ls[j] // ls[i]) if ls[j] > ls[i] else -1
    return intmat.freeze(c)


ALL_DIAGRAMS_RANK_LE_8 = tuple(
    DynkinDiagram(s, n)
    for s in ("A", "B", "C", "D", "E", "F", "G")
    for n in range(1, 9)
    if (s in SERIES_MIN_RANK and n >= SERIES_MIN_RANK[s]) or (s, n) in EXCEPTIONAL
)


@dataclass(frozen=True)
class RootSystemData:
    """Roots in simple-root coordinates plus derived numerology.

    roots are sorted lexicographically;  lengths[i] is "long" or "short"
    for roots[i] (every root of a simply-laced system counts as long).
    """

    cartan: Matrix
    roots: tuple[tuple[int, ...], ...]
    lengths: tuple[str, ...]
    highest_root: tuple[int, ...]
    dual_coxeter: int


def _validate_cartan(c: Matrix) -> None:
    n = len(c)
    if len(c[0]) != n:
        raise ValueError("Cartan matrix must be square")
    for i in range(n):
        if c[i][i] != 2:
            raise ValueError("Cartan diagonal must be 2")
        for j in range(n):
            if i != j:
                if c[i][j] > 0:
                    raise ValueError("positive off-diagonal Cartan entry")
                if (c[i][j] == 0) != (c[j][i] == 0):
                    raise ValueError("asymmetric Cartan zero pattern")


def _symmetrizer(c: Matrix) -> tuple[int, ...]:
    """Positive integers L with C[i][j] * L[j] == C[j][i] * L[i].

    Found by propagating the ratio along edges of the diagram.  Errors
    out if the zero pattern is disconnected or inconsistent (we only
    handle irreducible finite types).
    """
    n = len(c)
    vals: list[Fraction | None] = [None] * n
    vals[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(n):
            if i != j and c[i][j] != 0:
                # C[i][j] L[j] == C[j][i] L[i] forces the ratio below
                want = vals[i] * Fraction(c[j][i], c[i][j])
                if vals[j] is None:
                    vals[j] = want
                    queue.append(j)
                elif vals[j] != want:
                    raise ValueError("Cartan matrix is not symmetrizable")
    if any(v is None for v in vals):
        raise ValueError("Cartan matrix is not connected")
    scale = lcm(*(v.denominator for v in vals))
    return tuple(int(v * scale) for v in vals)


def generate_roots(cartan) -> RootSystemData:
    """Close the simple roots under all simple reflections.

    Coordinates are with respect to the simple roots, so reflection i
    sends v to v with v[i] replaced by v[i] - sum_j C[j][i] v[j].

    >>> rs = generate_roots(cartan_matrix(DynkinDiagram("A", 2)))
    >>> (len(rs.roots), rs.dual_coxeter, rs.highest_root)
    (6, 3, (1, 1))
    """
    c = intmat.freeze(cartan)
    _validate_cartan(c)
    n = len(c)

    def reflect(v: tuple[int, ...], i: int) -> tuple[int, ...]:
        w = list(v)
        w[i] -= sum(c[j][i] * v[j] for j in range(n))
        return tuple(w)

    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                w = reflect(v, i)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if len(seen) > _CLOSURE_BOUND:
            raise ValueError(
                "reflection closure exceeded safety bound; not a finite type"
            )
        frontier = nxt

    roots = tuple(sorted(seen))
    ls = _symmetrizer(c)
    # (v, v) up to the common factor 1/2: sum_ij v_i v_j C[i][j] L[j]
    def norm(v):
        return sum(v[i] * v[j] * c[i][j] * ls[j] for i in range(n) for j in range(n))

    norms = [norm(v) for v in roots]
    top = max(norms)
    lengths = tuple("long" if nm == top else "short" for nm in norms)

    positive = [v for v in roots if all(x >= 0 for x in v)]
    highest = max(positive, key=sum)
    for v in roots:
        if any(h < x for h, x in zip(highest, v)):
            raise AssertionError("highest root fails to dominate")
    theta_norm = norm(highest)
    acc = Fraction(1)
    for i in range(n):
        # norm(a_i) = 2 * ls[i], so the length-square ratio is 2 ls[i] / theta_norm
        acc += Fraction(highest[i] * 2 * ls[i], theta_norm)
    if acc.denominator != 1:
        raise AssertionError("dual Coxeter number came out non-integral")
    return RootSystemData(
        cartan=c,
        roots=roots,
        lengths=lengths,
        highest_root=highest,
        dual_coxeter=int(acc),
    )


def root_system(d: DynkinDiagram) -> RootSystemData:
    return generate_roots(cartan_matrix(d))


def fundamental_group(d: DynkinDiagram, dual: bool = False) -> tuple[FinAbGroup, Matrix]:
    """Weight lattice mod root lattice (coweights mod coroots when dual).

    Returned as (group, projection) straight from intmat.cokernel.

    >>> fundamental_group(DynkinDiagram("A", 5))[0].divisors
    (6,)
    """
    c = cartan_matrix(d)
    return intmat.cokernel(intmat.transpose(c) if dual else c)


def simple_reflection(cartan, i: int) -> Matrix:
    """Simple reflection as an ambient matrix compatible with cokernel(cartan).

    Column i is e_i minus column i of the Cartan matrix; all other
    columns are standard.  This is the reflection on the (co)weight
    lattice in the basis for which cartan's columns span the (co)root
    sublattice, so it always preserves that sublattice.
    """
    c = intmat.freeze(cartan)
    n = len(c)
    s = [[1 if r == k else 0 for k in range(n)] for r in range(n)]
    for r in range(n):
        s[r][i] -= c[r][i]
    return intmat.freeze(s)


def long_root_subsystem(d: DynkinDiagram) -> DynkinDiagram:
    """Sub-root-system spanned by the long simple roots.

    Simply-laced types are their own answer; for the others the long
    nodes always induce a path, hence a type A diagram.

    >>> str(long_root_subsystem(DynkinDiagram("B", 7)))
    'A6'
    >>> str(long_root_subsystem(DynkinDiagram("F", 4)))
    'A2'
    """
    if d.simply_laced:
        return d
    ls = _length_squares(d)
    top = max(ls)
    nodes = [i for i, v in enumerate(ls) if v == top]
    edges = [(i, j) for i, j in _edges(d) if i in nodes and j in nodes]
    # sanity: the induced graph must be a path on these nodes
    degree = {i: 0 for i in nodes}
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    if len(edges) != len(nodes) - 1 or any(v > 2 for v in degree.values()):
        raise AssertionError("long simple roots did not induce a path")
    return DynkinDiagram("A", len(nodes))


_S3_WORDS = ("e", "s", "t", "tt", "st", "stt")


def _perm_compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p then q) as functions: composite[i] = q[p[i]]
    return tuple(q[p[i]] for i in range(len(p)))


@dataclass(frozen=True)
class FoldingDatum:
    """A diagram, its simply-laced unfolding, and the folding symmetry.

    generators maps generator labels to node permutations of gamma_hat
    (perm[i] is the image of node i, 0-based).  Labels are "s" for the
    order-2 generator and additionally "t" (order 3) when the symmetry
    group is S3.  quotient_groups names the finite subgroup pair (H in
    H-hat) whose quotient surface realizes the singularity; it is purely
    documentary.
    """

    gamma: DynkinDiagram
    gamma_hat: DynkinDiagram
    symmetry: str  # "trivial" | "C2" | "S3"
    generators: dict[str, tuple[int, ...]] = field(default_factory=dict)
    quotient_groups: tuple[str, str] = ("", "")

    def __post_init__(self) -> None:
        expected = {"trivial": (), "C2": ("s",), "S3": ("s", "t")}[self.symmetry]
        if tuple(sorted(self.generators)) != tuple(sorted(expected)):
            raise ValueError("generator labels do not match symmetry group")
        c = cartan_matrix(self.gamma_hat)
        n = self.gamma_hat.rank
        for label, perm in self.generators.items():
            if sorted(perm) != list(range(n)):
                raise ValueError(f"generator {label} is not a permutation")
            for i in range(n):
                for j in range(n):
                    if c[perm[i]][perm[j]] != c[i][j]:
                        raise ValueError(
                            f"generator {label} is not a diagram automorphism"
                        )
        ident = tuple(range(n))
        if "s" in self.generators:
            s = self.generators["s"]
            if _perm_compose(s, s) != ident or s == ident:
                raise ValueError("generator s must have order exactly 2")
        if "t" in self.generators:
            t = self.generators["t"]
            tt = _perm_compose(t, t)
            if _perm_compose(tt, t) != ident or t == ident or tt == ident:
                raise ValueError("generator t must have order exactly 3")
            s = self.generators["s"]
            if _perm_compose(_perm_compose(s, t), s) != tt:
                raise ValueError("generators must satisfy s t s = t^2")

    def symmetry_order(self) -> int:
        return {"trivial": 1, "C2": 2, "S3": 6}[self.symmetry]

    def elements(self) -> dict[str, tuple[int, ...]]:
        """All group elements as node permutations, keyed by reduced word."""
        n = self.gamma_hat.rank
        e = tuple(range(n))
        if self.symmetry == "trivial":
            return {"e": e}
        s = self.generators["s"]
        if self.symmetry == "C2":
            return {"e": e, "s": s}
        t = self.generators["t"]
        tt = _perm_compose(t, t)
        return {
            "e": e,
            "s": s,
            "t": t,
            "tt": tt,
            "st": _perm_compose(t, s),   # apply t then s
            "stt": _perm_compose(tt, s),
        }


def _binary_dihedral(order: int) -> str:
    return f"binary dihedral of order {order}"


def _homogeneous_quotient(d: DynkinDiagram) -> str:
    if d.series == "A":
        return f"cyclic of order {d.rank + 1}"
    if d.series == "D":
        return _binary_dihedral(4 * (d.rank - 2))
    return {6: "binary tetrahedral", 7: "binary octahedral", 8: "binary icosahedral"}[
        d.rank
    ]


def folding(d: DynkinDiagram) -> FoldingDatum:
    """Unfold a diagram to its simply-laced cover with folding symmetry.

    Simply-laced input folds trivially to itself.

    >>> f = folding(DynkinDiagram("B", 3))
    >>> (str(f.gamma_hat), f.symmetry, f.generators["s"])
    ('A5', 'C2', (4, 3, 2, 1, 0))
    """
    n = d.rank
    if d.simply_laced:
        h = _homogeneous_quotient(d)
        return FoldingDatum(d, d, "trivial", {}, (h, h))
    if d.series == "B":
        hat = DynkinDiagram("A", 2 * n - 1)
        flip = tuple(2 * n - 2 - i for i in range(2 * n - 1))
        return FoldingDatum(
            d, hat, "C2", {"s": flip},
            (f"cyclic of order {2 * n}", _binary_dihedral(4 * n)),
        )
    if d.series == "C":
        quotients = (_binary_dihedral(4 * (n - 1)), _binary_dihedral(8 * (n - 1)))
        if n == 2:
            # the general target D_3 is the inadmissible spelling of A_3
            return FoldingDatum(d, DynkinDiagram("A", 3), "C2", {"s": (2, 1, 0)}, quotients)
        hat = DynkinDiagram("D", n + 1)
        swap = tuple(range(n + 1))
        swap = swap[: n - 1] + (n, n - 1)
        return FoldingDatum(d, hat, "C2", {"s": swap}, quotients)
    if d.series == "F":
        hat = DynkinDiagram("E", 6)
        # 1<->6, 3<->5 in Bourbaki labels
        flip = (5, 1, 4, 3, 2, 0)
        return FoldingDatum(
            d, hat, "C2", {"s": flip}, ("binary tetrahedral", "binary octahedral")
        )
    # G2 -> D4 with the full triality group
    hat = DynkinDiagram("D", 4)
    s = (0, 1, 3, 2)      # swap the two fork tails
    t = (2, 1, 3, 0)      # rotate the three outer nodes
    return FoldingDatum(
        d, hat, "S3", {"s": s, "t": t}, (_binary_dihedral(8), "binary octahedral")
    )


def _permutation_matrix(perm: tuple[int, ...]) -> Matrix:
    n = len(perm)
    return intmat.freeze(
        [[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)]
    )


def symmetry_action_on_fundamental_group(f: FoldingDatum):
    """Induced action of the folding symmetry on the unfolding's P/Q.

    Returns a modrep.EquivariantAbGroup: the fundamental group of
    gamma_hat with one induced torsion matrix per generator, transported
    through intmat.induced_endomorphism.
    """
    from .modrep import EquivariantAbGroup

    c = cartan_matrix(f.gamma_hat)
    group, _ = intmat.cokernel(c)
    if group.free_rank:
        raise AssertionError("Cartan cokernel should be finite")
    action = {
        label: intmat.induced_endomorphism(c, _permutation_matrix(perm))
        for label, perm in f.generators.items()
    }
    return EquivariantAbGroup(group=group, action=action)
