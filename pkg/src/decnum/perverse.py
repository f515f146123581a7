"""Stalk data of extensions across a cone point, and decomposition numbers.

The geometry enters only through a small package of invariants: a cone
with smooth part U of real dimension 2d carries the cohomology of U
("the link data") in a band of degrees, and every question answered
here (six flavors of extension stalks, their field-coefficient
variants, decomposition numbers, symmetry refinements) is a function of
that band.

Two conventions are load-bearing:

* Link cohomology is stored against raw degrees (H^0 = O for a
  connected U), with torsion recorded by integral invariant factors.
  The residue characteristic enters later: localize_stalk turns each
  invariant factor divisible by ell into one O-torsion summand with the
  matching pi-adic exponent, and drops the rest.
* Stalk tables are reported in shifted degrees (raw minus d, the
  convention that puts the constant sheaf's stalk in degree -d of
  itself, i.e. degree -2 for a surface cone).  In shifted terms the six
  truncation thresholds are uniform across all cones: degree d-2, d-1,
  d become -2, -1, 0.

Entries list ranks that may be unknown (rank None means torsion-free of
unrecorded rank); completeness is either "full" or a (lo, hi) window of
raw degrees outside which nothing is known.  Requests that would need
unknown data refuse with ConeError rather than guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .modrep import EquivariantAbGroup, composition_multiplicities, reduce_mod_l
from .omodule import FGraded, GradedOModule, OModule, poincare_dual, reduce_graded
from .rootsys import (
    DynkinDiagram,
    FoldingDatum,
    cartan_matrix,
    folding,
    fundamental_group,
    long_root_subsystem,
    root_system,
    symmetry_action_on_fundamental_group,
)
from . import intmat


class ConeError(ValueError):
    """A stalk or decomposition request the stored link data cannot answer."""


@dataclass(frozen=True)
class LinkEntry:
    """One cohomology degree of a link: free rank plus invariant factors.

    rank None flags "torsion-free but of unrecorded rank"; its torsion
    must then be empty.
    """

    rank: int | None
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank is None:
            if self.torsion:
                raise ValueError("unknown-rank entries must be torsion-free")
        elif not isinstance(self.rank, int) or self.rank < 0:
            raise ValueError(f"invalid rank {self.rank!r}")
        for t in self.torsion:
            if not isinstance(t, int) or t < 2:
                raise ValueError(f"invalid invariant factor {t!r}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisor chain")

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion


ZERO_ENTRY = LinkEntry(0, ())


@dataclass(frozen=True)
class ExtensionFlavor:
    """A perversity ("p" or "p+") and an extension kind ("!", "!*", "*")."""

    perversity: str
    kind: str

    _OFFSETS = {"!": -2, "!*": -1, "*": 0}

    def __post_init__(self) -> None:
        if self.perversity not in ("p", "p+"):
            raise ValueError(f"unknown perversity {self.perversity!r}")
        if self.kind not in self._OFFSETS:
            raise ValueError(f"unknown extension kind {self.kind!r}")

    @property
    def plus(self) -> bool:
        return self.perversity == "p+"

    @property
    def shifted_threshold(self) -> int:
        """Truncation threshold in shifted degrees: -2, -1 or 0."""
        return self._OFFSETS[self.kind]

    def label(self) -> str:
        return f"{self.perversity},{self.kind}"


FLAVOR_CHAIN = (
    ExtensionFlavor("p", "!"),
    ExtensionFlavor("p+", "!"),
    ExtensionFlavor("p", "!*"),
    ExtensionFlavor("p+", "!*"),
    ExtensionFlavor("p", "*"),
    ExtensionFlavor("p+", "*"),
)


@dataclass
class ConeData:
    """Link cohomology of a cone, keyed by raw degree.

    completeness "full" means unlisted degrees vanish; a (lo, hi) pair
    means only degrees lo..hi are known and each of them is listed
    explicitly.  equivariant_degrees optionally attaches a symmetry
    action to the torsion of a given degree.
    """

    label: str
    open_dim: int
    link_cohomology: dict[int, LinkEntry]
    completeness: str | tuple[int, int] = "full"
    equivariant_degrees: dict[int, EquivariantAbGroup] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.open_dim < 1:
            raise ValueError("open part must have positive dimension")
        for deg, entry in self.link_cohomology.items():
            if not isinstance(deg, int) or not isinstance(entry, LinkEntry):
                raise ValueError(f"bad link entry at {deg!r}")
        if self.completeness == "full":
            zero = self.link_cohomology.get(0, ZERO_ENTRY)
            if zero != LinkEntry(1, ()):
                raise ValueError("a full link table must have H^0 = O")
        else:
            lo, hi = self.completeness
            if lo > hi:
                raise ValueError("empty completeness window")
            for deg in self.link_cohomology:
                if not lo <= deg <= hi:
                    raise ValueError(f"entry at degree {deg} outside window")
            for deg in range(lo, hi + 1):
                if deg not in self.link_cohomology:
                    raise ValueError(f"window degree {deg} missing an entry")
        for deg, eq in self.equivariant_degrees.items():
            entry = self.entry_or_none(deg)
            if entry is None:
                raise ValueError(f"equivariant action at unknown degree {deg}")
            if eq.group.divisors != entry.torsion:
                raise ValueError(
                    f"action group at degree {deg} does not match link torsion"
                )

    def entry_or_none(self, deg: int) -> LinkEntry | None:
        """The entry at a raw degree, or None if outside the known window."""
        if self.completeness == "full":
            return self.link_cohomology.get(deg, ZERO_ENTRY)
        lo, hi = self.completeness
        if lo <= deg <= hi:
            return self.link_cohomology[deg]
        return None

    def known_degrees(self) -> tuple[int, ...]:
        if self.completeness == "full":
            return tuple(sorted(self.link_cohomology))
        lo, hi = self.completeness
        return tuple(range(lo, hi + 1))


def _require(entry: LinkEntry | None, what: str) -> LinkEntry:
    if entry is None:
        raise ConeError(f"insufficient link data: {what}")
    return entry


def link_cohomology_simple(
    hat: DynkinDiagram,
    folding_source: FoldingDatum | None = None,
    label: str | None = None,
) -> ConeData:
    """Full link data of the surface cone attached to a simply-laced type.

    Built by the compactly-supported route: the resolved space retracts
    to the exceptional locus, the weight/root lattice comparison map is
    the transposed Cartan matrix, and Poincare duality on the real
    4-dimensional link converts the answer to ordinary cohomology.  The
    result always lands as H^0 = O, H^2 = weight mod root torsion,
    H^3 = O.

    >>> c = link_cohomology_simple(DynkinDiagram("A", 1))
    >>> [(d, e.rank, e.torsion) for d, e in sorted(c.link_cohomology.items())]
    [(0, 1, ()), (2, 0, (2,)), (3, 1, ())]
    """
    if not hat.simply_laced:
        raise ConeError(
            f"{hat} is not simply laced; fold it first (see subregular_cone)"
        )
    ct = intmat.transpose(cartan_matrix(hat))
    group, _ = intmat.cokernel(ct)
    if group.free_rank:
        raise AssertionError("lattice comparison map must be injective")
    hc = GradedOModule(
        {1: OModule(1), 3: OModule(0, group.divisors), 4: OModule(1)}
    )
    link = {
        deg: LinkEntry(m.rank, tuple(sorted(m.torsion)))
        for deg, m in poincare_dual(hc, 4).items()
    }
    equivariant: dict[int, EquivariantAbGroup] = {}
    if folding_source is not None:
        if folding_source.gamma_hat != hat:
            raise ConeError(
                f"folding of {folding_source.gamma} lands in "
                f"{folding_source.gamma_hat}, not {hat}"
            )
        equivariant[2] = symmetry_action_on_fundamental_group(folding_source)
    return ConeData(
        label=label or f"simple {hat}",
        open_dim=2,
        link_cohomology=link,
        completeness="full",
        equivariant_degrees=equivariant,
    )


def subregular_cone(gamma: DynkinDiagram) -> ConeData:
    """The folded surface cone of any type, with its symmetry action.

    For simply-laced gamma the folding is trivial and this is just
    link_cohomology_simple with a trivial action attached.
    """
    f = folding(gamma)
    return link_cohomology_simple(
        f.gamma_hat, folding_source=f, label=f"subregular {gamma}"
    )


def link_cohomology_minimal(gamma: DynkinDiagram) -> ConeData:
    """Windowed link data of the minimal nilpotent cone of a given type.

    The open part has complex dimension d = 2h - 2 (h the dual Coxeter
    number); the known band is H^{d-1} = 0, H^d = dual fundamental
    group of the subsystem spanned by the long roots, H^{d+1}
    torsion-free of unrecorded rank.

    >>> c = link_cohomology_minimal(DynkinDiagram("F", 4))
    >>> (c.open_dim, c.link_cohomology[c.open_dim].torsion)
    (16, (3,))
    """
    rs = root_system(gamma)
    d = 2 * rs.dual_coxeter - 2
    sub = long_root_subsystem(gamma)
    group, _ = fundamental_group(sub, dual=True)
    if group.free_rank:
        raise AssertionError("dual fundamental group must be finite")
    return ConeData(
        label=f"minimal {gamma.series.lower()}_{gamma.rank}",
        open_dim=d,
        link_cohomology={
            d - 1: ZERO_ENTRY,
            d: LinkEntry(0, group.divisors),
            d + 1: LinkEntry(None, ()),
        },
        completeness=(d - 1, d + 1),
    )


def extension_stalk(c: ConeData, f: ExtensionFlavor) -> GradedOModule:
    """Cone-point stalk of the f-extension, in shifted degrees.

    Torsion entries carry the link's integral invariant factors; apply
    localize_stalk to specialize them to O-torsion at a residue
    characteristic.  For windowed cones only the known band is
    reported, and the request refuses if the truncation threshold + 1
    is not covered.

    >>> c = link_cohomology_simple(DynkinDiagram("A", 1))
    >>> extension_stalk(c, ExtensionFlavor("p", "!*")).items()
    ((-2, OModule(rank=1, torsion=())),)
    >>> extension_stalk(c, ExtensionFlavor("p+", "!*")).items()
    ((-2, OModule(rank=1, torsion=())), (0, OModule(rank=0, torsion=(2,))))
    """
    d = c.open_dim
    threshold = d + f.shifted_threshold
    if c.completeness != "full":
        _, hi = c.completeness
        if threshold + 1 > hi:
            raise ConeError(
                "insufficient link data: window does not cover the "
                f"truncation threshold for {f.label()}"
            )
    out: dict[int, OModule] = {}
    for deg in c.known_degrees():
        if deg > threshold:
            continue
        entry = c.link_cohomology.get(deg, ZERO_ENTRY)
        if entry.rank is None:
            raise ConeError(
                f"insufficient link data: rank unknown at degree {deg}"
            )
        if not entry.is_zero():
            out[deg - d] = OModule(entry.rank, entry.torsion)
    if f.plus:
        edge = _require(
            c.entry_or_none(threshold + 1), "no entry above the threshold"
        )
        if edge.torsion:
            out[threshold + 1 - d] = OModule(0, edge.torsion)
    return GradedOModule(out)


def _ell_exponent(n: int, ell: int) -> int:
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def localize_stalk(g: GradedOModule, ell: int) -> GradedOModule:
    """Specialize integral torsion to O-torsion at residue characteristic ell.

    Each invariant factor divisible by ell becomes one summand with its
    ell-adic valuation as the pi-exponent; factors prime to ell vanish.

    >>> localize_stalk(GradedOModule({0: OModule(1, (12, 2))}), 2).module_at(0)
    OModule(rank=1, torsion=(2, 1))
    """
    _check_prime(ell)
    out = {}
    for deg, m in g.items():
        exps = tuple(_ell_exponent(t, ell) for t in m.torsion if t % ell == 0)
        out[deg] = OModule(m.rank, exps)
    return GradedOModule(out)


def _check_prime(ell: int) -> None:
    if not isinstance(ell, int) or ell < 2 or any(
        ell % k == 0 for k in range(2, int(ell**0.5) + 1)
    ):
        raise ValueError(f"ell must be a prime, got {ell!r}")


def _localized_link(c: ConeData, ell: int) -> GradedOModule:
    # shifted-degree graded module of the known, rank-known band
    out = {}
    for deg in c.known_degrees():
        entry = c.link_cohomology.get(deg, ZERO_ENTRY)
        if entry.rank is None:
            continue  # torsion-free: contributes nothing below, cut above
        exps = tuple(
            _ell_exponent(t, ell) for t in entry.torsion if t % ell == 0
        )
        if entry.rank or exps:
            out[deg - c.open_dim] = OModule(entry.rank, exps)
    return GradedOModule(out)


def f_extension_stalk(c: ConeData, f: ExtensionFlavor, ell: int) -> FGraded:
    """Cone-point stalk of the f-extension with coefficients in F_ell.

    Only defined for perversity "p": reduction mod pi followed by naive
    truncation at the same threshold.  For windowed cones, dimensions
    are reported for the known band only.

    >>> c = link_cohomology_simple(DynkinDiagram("A", 1))
    >>> f_extension_stalk(c, ExtensionFlavor("p", "!*"), 2).dims()
    {-2: 1, -1: 1}
    """
    if f.perversity != "p":
        raise ConeError("field-coefficient stalks are defined for perversity p only")
    _check_prime(ell)
    d = c.open_dim
    if c.completeness != "full":
        _, hi = c.completeness
        if d + f.shifted_threshold + 1 > hi:
            raise ConeError(
                "insufficient link data: window does not cover the "
                f"truncation threshold for {f.label()}"
            )
    reduced = reduce_graded(_localized_link(c, ell), coefficients=f"F_{ell}")
    dims = reduced.dims()
    if c.completeness != "full":
        lo, _ = c.completeness
        dims = {deg: v for deg, v in dims.items() if deg >= lo - d}
    dims = {deg: v for deg, v in dims.items() if deg <= f.shifted_threshold}
    return FGraded(dims, coefficients=f"F_{ell}")


def _check_euler_hypotheses(c: ConeData, ell: int) -> LinkEntry:
    _check_prime(ell)
    d = c.open_dim
    below = _require(c.entry_or_none(d - 1), f"degree {d - 1} outside window")
    middle = _require(c.entry_or_none(d), f"degree {d} outside window")
    above = _require(c.entry_or_none(d + 1), f"degree {d + 1} outside window")
    if below.rank is None or not below.is_zero():
        raise ConeError(
            f"hypotheses not met: H^{d - 1} of the link must vanish"
        )
    if above.torsion:
        raise ConeError(
            f"hypotheses not met: H^{d + 1} of the link must be torsion-free"
        )
    if middle.rank is None:
        raise ConeError(f"insufficient link data: rank unknown at degree {d}")
    return middle


def decomposition_number(c: ConeData, ell: int) -> int:
    """Multiplicity of the cone-point simple object inside the integral
    intermediate extension, read off by an Euler-characteristic
    comparison of its two mod-pi shadows.

    Requires the link band around degree d to be known with
    H^{d-1} = 0 and H^{d+1} torsion-free; refuses otherwise.  The
    result always equals the number of invariant factors of H^d
    divisible by ell, and that identity is asserted.

    >>> decomposition_number(link_cohomology_minimal(DynkinDiagram("E", 8)), 5)
    0
    >>> decomposition_number(link_cohomology_simple(DynkinDiagram("A", 3)), 2)
    1
    """
    middle = _check_euler_hypotheses(c, ell)
    flavor = ExtensionFlavor("p", "!*")
    o_side = reduce_graded(
        localize_stalk(extension_stalk(c, flavor), ell), coefficients=f"F_{ell}"
    )
    f_side = f_extension_stalk(c, flavor, ell)
    degrees = set(o_side.degrees()) | set(f_side.degrees())
    if c.completeness != "full":
        lo, _ = c.completeness
        degrees = {deg for deg in degrees if deg >= lo - c.open_dim}
    diff = sum(
        (1 if deg % 2 == 0 else -1) * (o_side.dim_at(deg) - f_side.dim_at(deg))
        for deg in degrees
    )
    expected = sum(1 for t in middle.torsion if t % ell == 0)
    if diff != expected:
        raise AssertionError(
            f"Euler comparison produced {diff}, torsion count says {expected}"
        )
    return diff


@dataclass
class DecompositionReport:
    """Structured output of equivariant_decomposition, CLI-ready."""

    singularity: str
    ell: int
    group: str
    plain: int
    per_character: dict[str, int]
    stalks_integral: dict[str, GradedOModule]
    stalks_field: dict[str, FGraded]


def equivariant_decomposition(c: ConeData, group: str, ell: int) -> DecompositionReport:
    """Refine the decomposition number by the symmetry action on the link.

    group names the expected symmetry kind ("trivial", "C2", "S3") and
    must match the action stored on the cone's middle degree.  The
    per-character multiplicities always sum (with dimension weights) to
    the plain decomposition number.
    """
    d = c.open_dim
    eq = c.equivariant_degrees.get(d)
    if eq is None:
        raise ConeError(f"no symmetry action recorded at degree {d}")
    if eq.kind != group:
        raise ConeError(f"cone carries a {eq.kind} action, not {group}")
    plain = decomposition_number(c, ell)
    per = composition_multiplicities(reduce_mod_l(eq, ell), group)
    from .modrep import CHARACTER_DIMS

    if sum(CHARACTER_DIMS[lb] * v for lb, v in per.items()) != plain:
        raise AssertionError("character multiplicities do not add up")
    return DecompositionReport(
        singularity=c.label,
        ell=ell,
        group=group,
        plain=plain,
        per_character=per,
        stalks_integral={f.label(): extension_stalk(c, f) for f in FLAVOR_CHAIN},
        stalks_field={
            f.label(): f_extension_stalk(c, f, ell)
            for f in FLAVOR_CHAIN
            if f.perversity == "p"
        },
    )
