"""Bifiltered knot Floer complexes over GF(2) and their finite regions.

A complex is generated over F2[U, U^-1] by named generators.  The U^0
copy of a generator x sits at lattice point (0, alexander(x)) and U^k x
sits at (-k, alexander(x) - k), so j - i = alexander(x) along the whole
U-tower.  Differentials are U-equivariant and every term strictly drops
at least one filtration coordinate (the complex is reduced).

The finite hat-flavor regions are level sets of the (i, j) filtration:

    HatA(s)      max(i, j - s) = 0      one basis element per generator
    HatB         i = 0                  one basis element per generator
    JLevel(s)    j = s                  one basis element per generator
    Quadrant(t)  i < 0 and j >= t       finitely many elements

with the induced differential keeping exactly the components that stay
inside the region.  The maps v_hat(s) and h_hat(s) from HatA(s) to HatB
are the vertical projection and the horizontal projection composed with
U^s and the flip involution.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from . import f2
from .f2 import F2Matrix, HomologyBasis, InvalidComplexError


class FlipRequiredError(ValueError):
    """The operation needs a flip involution and none was supplied."""


class UnknownRegionError(ValueError):
    """The region tag is not one of the supported kinds."""


class UndefinedRegionError(ValueError):
    """The requested region is not defined for this complex."""


@dataclass(frozen=True)
class Generator:
    """One F2[U, U^-1] generator; maslov is metadata and never computed with."""

    id: str
    alexander: int
    maslov: int | None = None


@dataclass(frozen=True)
class DiffTerm:
    """The differential of ``source`` contains the term U^upower * target."""

    source: str
    target: str
    upower: int


@dataclass(frozen=True)
class FlipPair:
    """Generator pairing inducing the filtration-swapping involution.

    The involution sends x to U^(-alexander(x)) * partner(x), extended
    U-equivariantly; it must commute with the differential.
    """

    source: str
    target: str


@dataclass(frozen=True)
class HatA:
    s: int


@dataclass(frozen=True)
class HatB:
    pass


@dataclass(frozen=True)
class JLevel:
    s: int


@dataclass(frozen=True)
class Quadrant:
    """The region i < 0, j >= min_j."""

    min_j: int


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(str(issue) for issue in self.issues)


class RegionComplex:
    """A finite GF(2) complex cut out of the (i, j) lattice.

    ``basis`` lists (generator id, upower) lattice elements inside the
    region; ``boundary`` keeps the differential components that stay in
    the region.  Components leaving the region are dropped, and nothing
    can enter from outside because regions are differences of upward
    closed sets.
    """

    def __init__(self, tag, basis: tuple[tuple[str, int], ...], boundary: F2Matrix):
        self.tag = tag
        self.basis = basis
        self.boundary = boundary
        self.homology = HomologyBasis(boundary)
        self._pos = {elem: i for i, elem in enumerate(basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def position(self, gen_id: str, upower: int) -> int | None:
        return self._pos.get((gen_id, upower))

    def __repr__(self) -> str:
        return f"RegionComplex({self.tag}, dim={self.dim})"


class FilteredChainMap:
    """A chain map between region complexes with its induced homology matrix."""

    def __init__(self, source: RegionComplex, target: RegionComplex, matrix: F2Matrix):
        left = matrix @ source.boundary
        right = target.boundary @ matrix
        if left.data != right.data:
            raise f2.NotAChainMapError(
                f"map {source.tag} -> {target.tag} does not commute with boundaries"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        self.induced = f2.induced_map_on_homology(
            matrix, source.homology, target.homology, check=False
        )

    def induced_rank(self) -> int:
        return f2.rank(self.induced)

    def induced_kernel_dim(self) -> int:
        return self.source.homology.dim - f2.rank(self.induced)

    def is_induced_iso(self) -> bool:
        r = f2.rank(self.induced)
        return r == self.source.homology.dim == self.target.homology.dim


class CfkComplex:
    """A reduced bifiltered complex, immutable once built.

    Derived regions, maps and homology data are memoized; every public
    operation is pure, so sharing one instance between threads is safe.
    """

    def __init__(self, generators, differential, flip=None, name: str = "complex"):
        self.generators: tuple[Generator, ...] = tuple(generators)
        self.differential: tuple[DiffTerm, ...] = tuple(differential)
        self.flip_pairs: tuple[FlipPair, ...] | None = (
            tuple(flip) if flip is not None else None
        )
        self.name = name
        self.alexander: dict[str, int] = {}
        for g in self.generators:
            self.alexander.setdefault(g.id, g.alexander)
        self._terms_by_source: dict[str, list[tuple[str, int]]] = {
            g.id: [] for g in self.generators
        }
        for t in self.differential:
            if t.source in self._terms_by_source:
                self._terms_by_source[t.source].append((t.target, t.upower))
        self.flip_map: dict[str, str] | None = None
        self._flip_issues: list[ValidationIssue] = []
        if self.flip_pairs is not None:
            self._build_flip_map()
        self._memo: dict = {}

    # -- construction helpers -------------------------------------------

    def _build_flip_map(self):
        mapping: dict[str, str] = {}
        for pair in self.flip_pairs:
            for a, b in ((pair.source, pair.target), (pair.target, pair.source)):
                if a in mapping and mapping[a] != b:
                    self._flip_issues.append(
                        ValidationIssue(
                            "flip-conflict",
                            f"generator {a!r} paired with both {mapping[a]!r} and {b!r}",
                        )
                    )
                mapping[a] = b
        for g in self.generators:
            if g.id not in mapping:
                self._flip_issues.append(
                    ValidationIssue("flip-missing", f"generator {g.id!r} has no flip partner")
                )
        self.flip_map = mapping

    def renamed(self, name: str) -> "CfkComplex":
        return CfkComplex(self.generators, self.differential, self.flip_pairs, name)

    # -- validation ------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Check every structural invariant; collects failures, never raises."""
        if "validation" in self._memo:
            return self._memo["validation"]
        issues: list[ValidationIssue] = []
        seen_ids = set()
        for g in self.generators:
            if g.id in seen_ids:
                issues.append(ValidationIssue("duplicate-id", f"generator {g.id!r} repeated"))
            seen_ids.add(g.id)
        seen_terms = set()
        for t in self.differential:
            key = (t.source, t.target, t.upower)
            if key in seen_terms:
                issues.append(
                    ValidationIssue("duplicate-term", f"term {t.source}->{t.target} U^{t.upower} repeated")
                )
            seen_terms.add(key)
            if t.source not in self.alexander or t.target not in self.alexander:
                issues.append(
                    ValidationIssue("unknown-generator", f"term {t.source}->{t.target} names a missing generator")
                )
                continue
            if t.upower < 0:
                issues.append(
                    ValidationIssue("negative-upower", f"term {t.source}->{t.target} has U^{t.upower}")
                )
                continue
            a_from = self.alexander[t.source]
            a_to = self.alexander[t.target]
            if a_to - t.upower > a_from:
                issues.append(
                    ValidationIssue(
                        "filtration",
                        f"term {t.source}->{t.target} U^{t.upower} raises the j filtration",
                    )
                )
            if t.upower == 0 and a_to == a_from:
                issues.append(
                    ValidationIssue(
                        "reduced",
                        f"term {t.source}->{t.target} drops neither filtration coordinate",
                    )
                )
        terms_ok = not any(
            i.code in ("unknown-generator", "negative-upower") for i in issues
        )
        if terms_ok:
            issues.extend(self._check_d_squared())
        if self.flip_pairs is not None:
            issues.extend(self._check_flip(terms_ok))
        report = ValidationReport(tuple(issues))
        self._memo["validation"] = report
        return report

    def _check_d_squared(self) -> list[ValidationIssue]:
        issues = []
        for x in self._terms_by_source:
            acc: Counter = Counter()
            for y, k1 in self._terms_by_source[x]:
                for z, k2 in self._terms_by_source.get(y, ()):
                    acc[(z, k1 + k2)] += 1
            for (z, k), count in sorted(acc.items()):
                if count % 2:
                    issues.append(
                        ValidationIssue(
                            "d-squared",
                            f"d^2({x}) contains U^{k} {z} with odd multiplicity {count}",
                        )
                    )
        return issues

    def _check_flip(self, terms_ok: bool) -> list[ValidationIssue]:
        issues = list(self._flip_issues)
        mapping = self.flip_map or {}
        for x, y in sorted(mapping.items()):
            if y not in self.alexander:
                issues.append(ValidationIssue("flip-unknown", f"flip maps {x!r} to missing {y!r}"))
            elif mapping.get(y) != x:
                issues.append(ValidationIssue("flip-involution", f"flip is not an involution at {x!r}"))
            elif x in self.alexander and self.alexander[y] != -self.alexander[x]:
                issues.append(
                    ValidationIssue(
                        "flip-alexander",
                        f"flip pairs {x!r} (A={self.alexander[x]}) with {y!r} (A={self.alexander[y]})",
                    )
                )
        if issues or not terms_ok:
            return issues
        # Commutation of the induced module map with the differential, at
        # generator level: compare U-exponents relative to the source tower.
        for x in self._terms_by_source:
            lhs: Counter = Counter()
            rhs: Counter = Counter()
            for w, m in self._terms_by_source.get(mapping[x], ()):
                lhs[(w, m - self.alexander[x])] += 1
            for y, k in self._terms_by_source[x]:
                rhs[(mapping[y], k - self.alexander[y])] += 1
            keys = set(lhs) | set(rhs)
            for key in sorted(keys):
                if (lhs[key] - rhs[key]) % 2:
                    issues.append(
                        ValidationIssue(
                            "flip-commute",
                            f"flip does not commute with the differential at {x!r}",
                        )
                    )
                    break
        return issues

    def require_valid(self) -> None:
        report = self.validate()
        if not report.ok:
            raise InvalidComplexError(f"complex {self.name!r} is invalid:\n{report}")

    @property
    def has_flip(self) -> bool:
        return self.flip_pairs is not None

    def require_flip(self) -> None:
        if not self.has_flip:
            raise FlipRequiredError(
                f"complex {self.name!r} has no flip involution; horizontal maps are unavailable"
            )

    # -- basic invariants --------------------------------------------------

    @property
    def max_alexander(self) -> int:
        if not self.generators:
            return 0
        return max(g.alexander for g in self.generators)

    def hfk_hat(self, s: int) -> int:
        """Rank of the associated graded piece in Alexander grading s.

        Reducedness makes the graded differential vanish, so this is a
        generator count.
        """
        self.require_valid()
        return sum(1 for g in self.generators if g.alexander == s)

    def hfk_profile(self) -> dict[int, int]:
        self.require_valid()
        profile: dict[int, int] = {}
        for g in sorted(self.generators, key=lambda g: g.alexander):
            profile[g.alexander] = profile.get(g.alexander, 0) + 1
        return profile

    # -- regions -----------------------------------------------------------

    def _region_members(self, tag) -> list[tuple[str, int]]:
        members: list[tuple[str, int]] = []
        if isinstance(tag, HatA):
            for g in self.generators:
                members.append((g.id, max(0, g.alexander - tag.s)))
        elif isinstance(tag, HatB):
            for g in self.generators:
                members.append((g.id, 0))
        elif isinstance(tag, JLevel):
            for g in self.generators:
                members.append((g.id, g.alexander - tag.s))
        elif isinstance(tag, Quadrant):
            # i = -k < 0 and j = alexander - k >= min_j pin k to [1, A - min_j].
            for g in self.generators:
                for k in range(1, g.alexander - tag.min_j + 1):
                    members.append((g.id, k))
        else:
            raise UnknownRegionError(f"unknown region tag {tag!r}")
        return members

    def region_complex(self, tag) -> RegionComplex:
        self.require_valid()
        key = ("region", tag)
        if key not in self._memo:
            members = self._region_members(tag)
            index = {elem: i for i, elem in enumerate(members)}
            masks = [0] * len(members)
            for (gid, k), col in index.items():
                for target, m in self._terms_by_source[gid]:
                    row = index.get((target, k + m))
                    if row is not None:
                        masks[row] ^= 1 << col
            boundary = F2Matrix(len(members), len(members), tuple(masks))
            self._memo[key] = RegionComplex(tag, tuple(members), boundary)
        return self._memo[key]

    # -- the canonical maps -------------------------------------------------

    def v_hat(self, s: int) -> FilteredChainMap:
        """Vertical projection HatA(s) -> HatB: keep the i = 0 part."""
        self.require_valid()
        key = ("v", s)
        if key not in self._memo:
            source = self.region_complex(HatA(s))
            target = self.region_complex(HatB())
            masks = [0] * target.dim
            for col, (gid, k) in enumerate(source.basis):
                if k == 0:
                    masks[target.position(gid, 0)] |= 1 << col
            matrix = F2Matrix(target.dim, source.dim, tuple(masks))
            self._memo[key] = FilteredChainMap(source, target, matrix)
        return self._memo[key]

    def h_hat(self, s: int) -> FilteredChainMap:
        """Horizontal map HatA(s) -> HatB.

        Project onto the j = s part, shift it to j = 0 with U^s, then
        apply the flip.  On the canonical bases the composite sends
        (x, k) to (flip(x), 0) exactly when alexander(x) >= s.
        """
        self.require_valid()
        self.require_flip()
        key = ("h", s)
        if key not in self._memo:
            source = self.region_complex(HatA(s))
            target = self.region_complex(HatB())
            masks = [0] * target.dim
            for col, (gid, k) in enumerate(source.basis):
                if self.alexander[gid] >= s:
                    masks[target.position(self.flip_map[gid], 0)] |= 1 << col
            matrix = F2Matrix(target.dim, source.dim, tuple(masks))
            self._memo[key] = FilteredChainMap(source, target, matrix)
        return self._memo[key]

    def region_flip_equivalence(self, s: int) -> FilteredChainMap:
        """The chain isomorphism HatA(s) -> HatA(-s) given by U^s then the flip."""
        self.require_valid()
        self.require_flip()
        source = self.region_complex(HatA(s))
        target = self.region_complex(HatA(-s))
        masks = [0] * target.dim
        for col, (gid, k) in enumerate(source.basis):
            partner = self.flip_map[gid]
            masks[target.position(partner, max(0, s - self.alexander[gid]))] |= 1 << col
        matrix = F2Matrix(target.dim, source.dim, tuple(masks))
        return FilteredChainMap(source, target, matrix)

    # -- derived invariants ---------------------------------------------------

    def b_rank(self) -> int:
        """Total rank of the homology of HatB."""
        return self.region_complex(HatB()).homology.dim

    def genus(self) -> int:
        """Largest s with v_hat(s - 1) not a homology isomorphism, or 0.

        The scan starts at max_alexander + 1; reducedness bounds the
        filtration support, so everything above is an isomorphism.
        """
        self.require_valid()
        if "genus" not in self._memo:
            value = 0
            for s in range(self.max_alexander + 1, 0, -1):
                if not self.v_hat(s - 1).is_induced_iso():
                    value = s
                    break
            self._memo["genus"] = value
        return self._memo["genus"]

    def single_point_region_rank(self) -> int:
        """Homology rank of the quadrant i < 0, j >= genus - 1.

        For a reduced complex of positive genus the region collapses to
        the lattice point (-1, genus - 1), so this equals hfk_hat(genus).
        """
        g = self.genus()
        if g < 1:
            raise UndefinedRegionError("the quadrant region needs genus >= 1")
        return self.region_complex(Quadrant(g - 1)).homology.dim

    def reflected(self) -> "CfkComplex":
        """The complex with the two filtration roles exchanged.

        Generator x keeps its id with alexander grading negated; a term
        with drops (k, d_j) becomes a term with drops (d_j, k).  For every
        s the maps v_hat(s) of the result and h_hat(-s) of the original
        have the same rank and kernel dimension.
        """
        self.require_valid()
        self.require_flip()
        gens = [Generator(g.id, -g.alexander) for g in self.generators]
        terms = [
            DiffTerm(
                t.source,
                t.target,
                t.upower + self.alexander[t.source] - self.alexander[t.target],
            )
            for t in self.differential
        ]
        return CfkComplex(gens, terms, self.flip_pairs, f"reflected({self.name})")

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        data: dict = {
            "name": self.name,
            "generators": [
                {"id": g.id, "alexander": g.alexander}
                | ({"maslov": g.maslov} if g.maslov is not None else {})
                for g in self.generators
            ],
            "differential": [
                {"from": t.source, "to": t.target, "upower": t.upower}
                for t in self.differential
            ],
        }
        if self.flip_pairs is not None:
            data["flip"] = [
                {"from": g.id, "to": self.flip_map[g.id]}
                for g in self.generators
                if g.id in self.flip_map
            ]
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "CfkComplex":
        gens = [
            Generator(g["id"], g["alexander"], g.get("maslov"))
            for g in data.get("generators", [])
        ]
        terms = [
            DiffTerm(t["from"], t["to"], t["upower"])
            for t in data.get("differential", [])
        ]
        flip = None
        if "flip" in data:
            flip = [FlipPair(p["from"], p["to"]) for p in data["flip"]]
        return cls(gens, terms, flip, data.get("name", "complex"))

    @classmethod
    def from_json(cls, text: str) -> "CfkComplex":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"CfkComplex({self.name!r}, {len(self.generators)} generators)"
