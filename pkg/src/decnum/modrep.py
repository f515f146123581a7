"""Actions of tiny groups on finite abelian groups, and their mod-l shadows.

Only three symmetry groups ever show up downstream (trivial, the order-2
group, and the symmetric group on three letters), so representation
theory here is a handful of closed-form regimes rather than a general
character-theory engine.  Irreducible labels are fixed strings:

    "1"    trivial character (dimension 1)
    "eps"  sign character    (dimension 1)
    "psi"  two-dimensional irreducible of S3

Which labels survive reduction mod l depends on l; see
irreducible_labels.  composition_multiplicities counts composition
factors (not direct summands), which is what decomposition numbers
need.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intmat import FinAbGroup, Matrix, freeze, identity, multiply

GROUP_GENERATORS = {"trivial": (), "C2": ("s",), "S3": ("s", "t")}

CHARACTER_DIMS = {"1": 1, "eps": 1, "psi": 2}


def _mod_entrywise(m: Matrix, mods: tuple[int, ...]) -> Matrix:
    return tuple(
        tuple(e % mods[i] for e in row) for i, row in enumerate(m)
    )


@dataclass
class EquivariantAbGroup:
    """A finite abelian group with a generator-indexed integer action.

    group must be pure torsion; each action matrix acts on invariant
    factor coordinates and is stored reduced mod the row's divisor.
    Generator labels determine the group kind: {} trivial, {s} C2,
    {s, t} S3, and the defining relations are verified mod the divisors.
    """

    group: FinAbGroup
    action: dict[str, Matrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.group.free_rank:
            raise ValueError("equivariant structure requires a finite group")
        labels = tuple(sorted(self.action))
        if labels not in ((), ("s",), ("s", "t")):
            raise ValueError(f"unsupported generator set {labels}")
        divs = self.group.divisors
        n = len(divs)
        fixed = {}
        for label, m in self.action.items():
            m = freeze(m) if n else tuple()
            if n and (len(m) != n or len(m[0]) != n):
                raise ValueError(f"generator {label} must be {n}x{n}")
            fixed[label] = _mod_entrywise(m, divs) if n else m
        self.action = fixed
        ident = identity(n) if n else tuple()

        def same(a: Matrix, b: Matrix) -> bool:
            return not n or _mod_entrywise(a, divs) == _mod_entrywise(b, divs)

        if "s" in fixed:
            s = fixed["s"]
            if n and not same(multiply(s, s), ident):
                raise ValueError("generator s must square to the identity")
        if "t" in fixed:
            s, t = fixed["s"], fixed["t"]
            if n:
                tt = multiply(t, t)
                if not same(multiply(tt, t), ident):
                    raise ValueError("generator t must cube to the identity")
                if not same(multiply(multiply(s, t), s), tt):
                    raise ValueError("generators must satisfy s t s = t^2")

    @property
    def kind(self) -> str:
        return {(): "trivial", ("s",): "C2", ("s", "t"): "S3"}[
            tuple(sorted(self.action))
        ]


@dataclass
class ModularRep:
    """A finite-dimensional representation over the field with ell elements.

    action maps generator labels to dim x dim matrices with entries
    reduced mod ell; generators must be invertible and satisfy the
    group relations.
    """

    ell: int
    dim: int
    action: dict[str, Matrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.ell < 2:
            raise ValueError("ell must be a prime (at least 2)")
        if self.dim < 0:
            raise ValueError("negative dimension")
        labels = tuple(sorted(self.action))
        if labels not in ((), ("s",), ("s", "t")):
            raise ValueError(f"unsupported generator set {labels}")
        fixed = {}
        for label, m in self.action.items():
            if self.dim:
                m = tuple(tuple(e % self.ell for e in row) for row in freeze(m))
                if len(m) != self.dim or len(m[0]) != self.dim:
                    raise ValueError(f"generator {label} must be {self.dim}x{self.dim}")
                if modp_rank(m, self.ell) != self.dim:
                    raise ValueError(f"generator {label} is singular mod {self.ell}")
            else:
                m = tuple()
            fixed[label] = m
        self.action = fixed
        if self.dim:
            ident = identity(self.dim)

            def redmul(a, b):
                return tuple(
                    tuple(e % self.ell for e in row) for row in multiply(a, b)
                )

            if "s" in fixed and redmul(fixed["s"], fixed["s"]) != ident:
                raise ValueError("generator s must square to the identity")
            if "t" in fixed:
                tt = redmul(fixed["t"], fixed["t"])
                if redmul(tt, fixed["t"]) != ident:
                    raise ValueError("generator t must cube to the identity")
                if redmul(redmul(fixed["s"], fixed["t"]), fixed["s"]) != tt:
                    raise ValueError("generators must satisfy s t s = t^2")

    @property
    def kind(self) -> str:
        return {(): "trivial", ("s",): "C2", ("s", "t"): "S3"}[
            tuple(sorted(self.action))
        ]

    def elements(self) -> dict[str, Matrix]:
        """All group element matrices, keyed by word in the generators."""
        ident = identity(self.dim)
        if self.kind == "trivial":
            return {"e": ident}

        def redmul(a, b):
            return tuple(tuple(e % self.ell for e in row) for row in multiply(a, b))

        s = self.action["s"]
        if self.kind == "C2":
            return {"e": ident, "s": s}
        t = self.action["t"]
        tt = redmul(t, t)
        return {
            "e": ident,
            "t": t,
            "tt": tt,
            "s": s,
            "st": redmul(s, t),
            "stt": redmul(s, tt),
        }


def modp_rank(m: Matrix, p: int) -> int:
    """Rank of a matrix over the field with p elements (p prime)."""
    if not m or not m[0]:
        return 0
    a = [[e % p for e in row] for row in m]
    rows, cols = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, rows) if a[r][col]), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = pow(a[row][col], p - 2, p)
        a[row] = [(x * inv) % p for x in a[row]]
        for r in range(rows):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[row])]
        row += 1
        rank += 1
        if row == rows:
            break
    return rank


def _eigenspace_dim(m: Matrix, scalar: int, p: int, dim: int) -> int:
    if dim == 0:
        return 0
    shifted = tuple(
        tuple((m[i][j] - (scalar if i == j else 0)) % p for j in range(dim))
        for i in range(dim)
    )
    return dim - modp_rank(shifted, p)


def reduce_mod_l(e: EquivariantAbGroup, ell: int) -> ModularRep:
    """F_ell tensor the group, with the inherited action.

    Only invariant factors divisible by ell contribute (one dimension
    each); the action matrix restricts to those coordinates.

    >>> g = EquivariantAbGroup(FinAbGroup((6,)), {"s": ((5,),)})
    >>> reduce_mod_l(g, 2).action["s"]
    ((1,),)
    >>> reduce_mod_l(g, 5).dim
    0
    """
    keep = [i for i, d in enumerate(e.group.divisors) if d % ell == 0]
    action = {
        label: tuple(tuple(m[i][j] % ell for j in keep) for i in keep)
        for label, m in e.action.items()
    }
    return ModularRep(ell=ell, dim=len(keep), action=action)


def irreducible_labels(group: str, ell: int) -> tuple[str, ...]:
    """Irreducible F_ell-representations of the given group, by label.

    >>> irreducible_labels("S3", 2)
    ('1', 'psi')
    >>> irreducible_labels("C2", 2)
    ('1',)
    """
    if group not in GROUP_GENERATORS:
        raise ValueError(f"unknown group {group!r}")
    if group == "trivial":
        return ("1",)
    if group == "C2":
        return ("1",) if ell == 2 else ("1", "eps")
    if ell == 2:
        return ("1", "psi")
    if ell == 3:
        return ("1", "eps")
    return ("1", "eps", "psi")


def composition_multiplicities(
    rep: ModularRep, group: str | None = None
) -> dict[str, int]:
    """Composition factor multiplicities of rep, keyed by label.

    Every label from irreducible_labels appears, possibly with
    multiplicity zero.  The counts satisfy
    sum(multiplicity * dimension) == rep.dim in every regime.

    >>> r = ModularRep(3, 1, {"s": ((2,),)})
    >>> composition_multiplicities(r)
    {'1': 0, 'eps': 1}
    """
    kind = rep.kind
    if group is not None and group != kind:
        raise ValueError(f"representation is of kind {kind}, not {group}")
    ell, dim = rep.ell, rep.dim
    labels = irreducible_labels(kind, ell)
    out = {label: 0 for label in labels}

    if kind == "trivial":
        out["1"] = dim
    elif kind == "C2":
        if ell == 2:
            # only the trivial simple exists; length equals dimension
            out["1"] = dim
        else:
            s = rep.action["s"]
            out["1"] = _eigenspace_dim(s, 1, ell, dim)
            out["eps"] = _eigenspace_dim(s, ell - 1, ell, dim)
            if out["1"] + out["eps"] != dim:
                raise AssertionError("order-2 action failed to diagonalize")
    elif ell == 2:
        # S3 mod 2: factors are "1" and the (still simple) 2-dimensional
        # psi.  On psi the 3-cycle has no nonzero fixed vector while on
        # "1" it is the identity, so dim ker(t - 1) counts the trivial
        # factors and the rest pairs off into copies of psi.
        a = _eigenspace_dim(rep.action["t"], 1, 2, dim)
        if (dim - a) % 2:
            raise AssertionError("S3 mod-2 factor count came out fractional")
        out["1"] = a
        out["psi"] = (dim - a) // 2
    elif ell == 3:
        # S3 mod 3: the 3-cycle acts unipotently, simples factor through
        # the quotient of order 2, and s diagonalizes composition factors
        s = rep.action["s"]
        out["1"] = _eigenspace_dim(s, 1, 3, dim)
        out["eps"] = _eigenspace_dim(s, 2, 3, dim)
        if out["1"] + out["eps"] != dim:
            raise AssertionError("order-2 action failed to diagonalize mod 3")
    else:
        # semisimple case: ranks of the two central idempotents give the
        # linear multiplicities, psi soaks up the rest two at a time
        signs = {"e": 1, "t": 1, "tt": 1, "s": -1, "st": -1, "stt": -1}
        if dim:
            elems = rep.elements()
            sym = tuple(
                tuple(sum(m[i][j] for m in elems.values()) % ell for j in range(dim))
                for i in range(dim)
            )
            alt = tuple(
                tuple(
                    sum(signs[w] * m[i][j] for w, m in elems.items()) % ell
                    for j in range(dim)
                )
                for i in range(dim)
            )
            out["1"] = modp_rank(sym, ell)
            out["eps"] = modp_rank(alt, ell)
        rest = dim - out["1"] - out["eps"]
        if rest < 0 or rest % 2:
            raise AssertionError("S3 multiplicity accounting failed")
        out["psi"] = rest // 2

    if sum(CHARACTER_DIMS[lb] * v for lb, v in out.items()) != dim:
        raise AssertionError("composition factors do not fill the dimension")
    return out
