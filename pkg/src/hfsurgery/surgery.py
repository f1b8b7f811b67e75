"""Surgery ranks from the truncated mapping cone, by two independent routes.

For a slope p/q the cone has one HatA(floor(j/q)) column for each
j in [-qc+1, qc-1] and one HatB column for each j in [-qc+p+1, qc-1],
where c is the truncation level.  Column j maps to the HatB column j by
v_hat and to the HatB column j+p by h_hat; a block is simply dropped
when its target column does not exist, which happens exactly on the p
leftmost columns (h only) and the p rightmost columns (v only).

Route one treats the whole cone as a single chain complex and computes
its homology from the chain-level boundary, never touching induced maps.
Route two counts kernel plus cokernel of the induced block matrix on
homology.  Over a field the two always agree, so route one continuously
validates the homology-level bookkeeping route two relies on.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from . import f2
from .cfk import CfkComplex, HatA, HatB
from .f2 import F2Matrix


class SlopeError(ValueError):
    """Slopes must be coprime positive fractions p/q."""


class TruncationError(ValueError):
    """The requested truncation level is below the safe bound."""


class FormulaNotApplicableError(ValueError):
    """The image-containment hypothesis fails, so the closed form is not asserted."""


class NotApplicableError(ValueError):
    """The invariant is only defined when the ambient homology has rank one."""


class InternalInvariantError(RuntimeError):
    """Cancellation ran past the truncation window; the hypothesis check lied."""


@dataclass(frozen=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise SlopeError(f"slope {self.p}/{self.q} must have positive p and q")
        if math.gcd(self.p, self.q) != 1:
            raise SlopeError(f"slope {self.p}/{self.q} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "Slope":
        parts = text.split("/")
        if len(parts) == 1:
            parts.append("1")
        if len(parts) != 2:
            raise SlopeError(f"cannot parse slope {text!r}; expected P/Q")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise SlopeError(f"cannot parse slope {text!r}; expected P/Q") from None
        return cls(p, q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def coprime_slopes(pmax: int, qmax: int):
    """All slopes with 1 <= p <= pmax, 1 <= q <= qmax, sorted by (p, q)."""
    return [
        Slope(p, q)
        for p in range(1, pmax + 1)
        for q in range(1, qmax + 1)
        if math.gcd(p, q) == 1
    ]


def truncation_bound(c: CfkComplex, slope: Slope) -> int:
    """Smallest safe truncation level, ceil(genus + p/q + 1)."""
    c.require_valid()
    return c.genus() + 1 + -(-slope.p // slope.q)


class MappingCone:
    """The truncated cone for one slope, with chain and homology views."""

    def __init__(self, complex_: CfkComplex, slope: Slope, level: int):
        self.complex = complex_
        self.slope = slope
        self.level = level
        qc = slope.q * level
        self.a_columns = tuple(range(-qc + 1, qc))
        self.b_columns = tuple(range(-qc + slope.p + 1, qc))
        self._b_set = set(self.b_columns)
        self._a_regions = {j: complex_.region_complex(HatA(j // slope.q)) for j in self.a_columns}
        self._b_region = complex_.region_complex(HatB())
        self._memo: dict = {}

    def a_region(self, j: int):
        return self._a_regions[j]

    def v_map(self, j: int):
        """Chain map out of column j into HatB column j, or None if dropped."""
        if j not in self._b_set:
            return None
        return self.complex.v_hat(j // self.slope.q)

    def h_map(self, j: int):
        """Chain map out of column j into HatB column j + p, or None if dropped."""
        if j + self.slope.p not in self._b_set:
            return None
        return self.complex.h_hat(j // self.slope.q)

    # -- chain-level view ---------------------------------------------------

    @property
    def total_dim(self) -> int:
        return sum(r.dim for r in self._a_regions.values()) + self._b_region.dim * len(
            self.b_columns
        )

    def _offsets(self):
        if "offsets" not in self._memo:
            a_off = {}
            pos = 0
            for j in self.a_columns:
                a_off[j] = pos
                pos += self._a_regions[j].dim
            b_off = {}
            for j in self.b_columns:
                b_off[j] = pos
                pos += self._b_region.dim
            self._memo["offsets"] = (a_off, b_off, pos)
        return self._memo["offsets"]

    def total_boundary(self) -> F2Matrix:
        """Boundary of the cone seen as one complex: internal differentials
        of every column plus the v and h blocks."""
        if "total_boundary" not in self._memo:
            a_off, b_off, total = self._offsets()
            masks = [0] * total
            for j in self.a_columns:
                region = self._a_regions[j]
                oa = a_off[j]
                for r, row in enumerate(region.boundary.data):
                    masks[oa + r] |= row << oa
                vmap = self.v_map(j)
                if vmap is not None:
                    ob = b_off[j]
                    for r, row in enumerate(vmap.matrix.data):
                        masks[ob + r] |= row << oa
                hmap = self.h_map(j)
                if hmap is not None:
                    ob = b_off[j + self.slope.p]
                    for r, row in enumerate(hmap.matrix.data):
                        masks[ob + r] |= row << oa
            for j in self.b_columns:
                ob = b_off[j]
                for r, row in enumerate(self._b_region.boundary.data):
                    masks[ob + r] |= row << ob
            self._memo["total_boundary"] = F2Matrix(total, total, tuple(masks))
        return self._memo["total_boundary"]

    # -- homology-level view --------------------------------------------------

    def _hom_offsets(self):
        if "hom_offsets" not in self._memo:
            a_off = {}
            pos = 0
            for j in self.a_columns:
                a_off[j] = pos
                pos += self._a_regions[j].homology.dim
            self._memo["hom_offsets"] = (a_off, pos)
        return self._memo["hom_offsets"]

    @property
    def a_homology_dim(self) -> int:
        return self._hom_offsets()[1]

    @property
    def b_homology_dim(self) -> int:
        return self._b_region.homology.dim * len(self.b_columns)

    def block_matrix(self) -> F2Matrix:
        """Induced block matrix on homology.

        HatB row block j receives the induced v_hat from column j and the
        induced h_hat from column j - p; both source columns always exist
        inside the truncation window.
        """
        if "block_matrix" not in self._memo:
            a_off, a_total = self._hom_offsets()
            b = self._b_region.homology.dim
            q, p = self.slope.q, self.slope.p
            masks = []
            for j in self.b_columns:
                v_ind = self.complex.v_hat(j // q).induced
                h_ind = self.complex.h_hat((j - p) // q).induced
                for r in range(b):
                    masks.append(
                        (v_ind.data[r] << a_off[j]) | (h_ind.data[r] << a_off[j - p])
                    )
            self._memo["block_matrix"] = F2Matrix(len(masks), a_total, tuple(masks))
        return self._memo["block_matrix"]

    def flatten(self, element: dict[int, int]) -> int:
        """Pack a column-indexed homology element into block coordinates."""
        a_off, _ = self._hom_offsets()
        out = 0
        for j, coeff in element.items():
            out |= coeff << a_off[j]
        return out

    def block_apply(self, element: dict[int, int]) -> int:
        return self.block_matrix().apply(self.flatten(element))


def build_cone(c: CfkComplex, slope: Slope, level: int | None = None) -> MappingCone:
    c.require_valid()
    c.require_flip()
    bound = truncation_bound(c, slope)
    if level is None:
        level = bound
    if level < bound:
        raise TruncationError(
            f"truncation level {level} is below the safe bound {bound} for slope {slope}"
        )
    return MappingCone(c, slope, level)


def cone_rank_chain(c: CfkComplex, slope: Slope, level: int | None = None) -> int:
    """Total homology rank of the cone, from the chain-level boundary only."""
    key = ("cone_rank_chain", slope.p, slope.q, level)
    if key not in c._memo:
        cone = build_cone(c, slope, level)
        boundary = cone.total_boundary()
        c._memo[key] = cone.total_dim - 2 * f2.rank(boundary)
    return c._memo[key]


def cone_rank_homological(c: CfkComplex, slope: Slope, level: int | None = None) -> int:
    """Kernel plus cokernel of the induced block matrix on homology."""
    key = ("cone_rank_homological", slope.p, slope.q, level)
    if key not in c._memo:
        cone = build_cone(c, slope, level)
        r = f2.rank(cone.block_matrix())
        c._memo[key] = (cone.a_homology_dim - r) + (cone.b_homology_dim - r)
    return c._memo[key]


def t_invariant(c: CfkComplex, slope: Slope) -> int:
    """Sum over j = 0..p-1 of dim(im v_hat(j/q) meet im h_hat((j-p)/q)) in
    the homology of HatB."""
    c.require_valid()
    c.require_flip()
    q, p = slope.q, slope.p
    total = 0
    for j in range(p):
        v_ind = c.v_hat(j // q).induced
        h_ind = c.h_hat((j - p) // q).induced
        total += f2.image_intersection_rank(v_ind, h_ind)
    return total


def hypothesis_verdicts(c: CfkComplex) -> tuple[dict[int, bool], dict[int, bool]]:
    """Per-s image containments: im h_hat(s) inside im v_hat(s) for
    0 <= s <= genus, and im v_hat(s) inside im h_hat(s) for -genus <= s <= 0.

    Outside this window the containments are forced by the genus
    finiteness of the maps.  Containment is tested through intersection
    ranks, which is exact over GF(2).
    """
    c.require_valid()
    c.require_flip()
    if "hypothesis" not in c._memo:
        g = c.genus()
        h_in_v: dict[int, bool] = {}
        v_in_h: dict[int, bool] = {}
        for s in range(0, g + 1):
            v_ind = c.v_hat(s).induced
            h_ind = c.h_hat(s).induced
            h_in_v[s] = f2.image_intersection_rank(v_ind, h_ind) == f2.rank(h_ind)
        for s in range(-g, 1):
            v_ind = c.v_hat(s).induced
            h_ind = c.h_hat(s).induced
            v_in_h[s] = f2.image_intersection_rank(v_ind, h_ind) == f2.rank(v_ind)
        c._memo["hypothesis"] = (h_in_v, v_in_h)
    return c._memo["hypothesis"]


def hypothesis_holds(c: CfkComplex) -> bool:
    h_in_v, v_in_h = hypothesis_verdicts(c)
    return all(h_in_v.values()) and all(v_in_h.values())


def _require_hypothesis(c: CfkComplex) -> None:
    if not hypothesis_holds(c):
        raise FormulaNotApplicableError(
            f"complex {c.name!r} fails the image-containment hypothesis; "
            "the closed-form rank is not asserted (the cone oracles still apply)"
        )


def rank_formula(c: CfkComplex, slope: Slope) -> int:
    """Closed-form surgery rank.

        q*(ker v0 + b - rk v0)
      + 2q * sum over s = 1..g-1 of (ker vs + b - rk vs)
      + 2*t - p*b

    where ker/rk are kernel dimension and rank of the induced v_hat(s),
    b is the homology rank of HatB, and t is t_invariant.  Only asserted
    when the image-containment hypothesis holds.
    """
    c.require_valid()
    c.require_flip()
    _require_hypothesis(c)
    q, p = slope.q, slope.p
    b = c.b_rank()
    g = c.genus()
    v0 = c.v_hat(0)
    total = q * (v0.induced_kernel_dim() + b - v0.induced_rank())
    for s in range(1, g):
        vs = c.v_hat(s)
        total += 2 * q * (vs.induced_kernel_dim() + b - vs.induced_rank())
    total += 2 * t_invariant(c, slope) - p * b
    return total


def nu_surrogate(c: CfkComplex) -> int:
    """Least s >= 0 with v_hat(s) surjective on homology (b_rank 1 only)."""
    c.require_valid()
    if c.b_rank() != 1:
        raise NotApplicableError(
            f"nu needs a complex with b_rank 1, got {c.b_rank()}"
        )
    s = 0
    while c.v_hat(s).induced_rank() < 1:
        s += 1
    return s


def t_closed_form(c: CfkComplex, slope: Slope) -> int:
    """Case formula for t: p when nu = 0, else max(0, p - (2 nu - 1) q)."""
    nu = nu_surrogate(c)
    if nu == 0:
        return slope.p
    return max(0, slope.p - (2 * nu - 1) * slope.q)


def kernel_rank(c: CfkComplex, slope: Slope) -> int:
    """Dimension of the kernel of the induced block matrix, in closed form:
    q*ker(v0) + 2q*sum(s=1..g-1) ker(vs) + t."""
    c.require_valid()
    c.require_flip()
    _require_hypothesis(c)
    q = slope.q
    g = c.genus()
    total = q * c.v_hat(0).induced_kernel_dim()
    for s in range(1, g):
        total += 2 * q * c.v_hat(s).induced_kernel_dim()
    return total + t_invariant(c, slope)


def kernel_basis_construction(
    c: CfkComplex, slope: Slope, level: int | None = None
) -> list[dict[int, int]]:
    """Explicit spanning set of the kernel of the induced block matrix.

    Elements are column-indexed homology classes (coefficient masks with
    respect to the HatA homology bases).  Kernel classes of v_hat on
    nonnegative columns are completed by rightward cancellation tails,
    kernel classes of h_hat on negative columns by leftward tails, and for
    each residue column 0 <= j <= p-1 one element per dimension of
    im v_hat(j/q) meet im h_hat((j-p)/q) is built from a matched pair and
    cancelled in both directions.
    """
    c.require_valid()
    c.require_flip()
    _require_hypothesis(c)
    cone = build_cone(c, slope, level)
    q, p = slope.q, slope.p
    lo, hi = cone.a_columns[0], cone.a_columns[-1]

    def ind_v(j: int) -> F2Matrix:
        return c.v_hat(j // q).induced

    def ind_h(j: int) -> F2Matrix:
        return c.h_hat(j // q).induced

    def extend_right(element: dict[int, int], j: int, coeff: int) -> None:
        while True:
            if cone.h_map(j) is None:
                return  # the h block is dropped at the right boundary
            target = ind_h(j).apply(coeff)
            if target == 0:
                return
            j += p
            if j > hi:
                raise InternalInvariantError(
                    f"rightward cancellation left the truncation window at column {j}"
                )
            coeff = f2.solve(ind_v(j), target)
            if coeff is None:
                raise InternalInvariantError(
                    f"no rightward cancellation at column {j}; containment check was wrong"
                )
            element[j] = element.get(j, 0) ^ coeff

    def extend_left(element: dict[int, int], j: int, coeff: int) -> None:
        while True:
            if cone.v_map(j) is None:
                return  # the v block is dropped at the left boundary
            target = ind_v(j).apply(coeff)
            if target == 0:
                return
            j -= p
            if j < lo:
                raise InternalInvariantError(
                    f"leftward cancellation left the truncation window at column {j}"
                )
            coeff = f2.solve(ind_h(j), target)
            if coeff is None:
                raise InternalInvariantError(
                    f"no leftward cancellation at column {j}; containment check was wrong"
                )
            element[j] = element.get(j, 0) ^ coeff

    basis: list[dict[int, int]] = []
    for j in cone.a_columns:
        if j >= 0:
            for vec in f2.kernel_basis(ind_v(j)):
                element = {j: vec}
                extend_right(element, j, vec)
                basis.append(element)
        else:
            for vec in f2.kernel_basis(ind_h(j)):
                element = {j: vec}
                extend_left(element, j, vec)
                basis.append(element)
    for j in range(p):
        v_ind = ind_v(j)
        h_ind = ind_h(j - p)
        for w in f2.image_intersection_basis(v_ind, h_ind):
            y = f2.solve(v_ind, w)
            z = f2.solve(h_ind, w)
            if y is None or z is None:
                raise InternalInvariantError(
                    f"intersection class at column {j} has no matched pair"
                )
            element = {j: y}
            element[j - p] = element.get(j - p, 0) ^ z
            extend_right(element, j, y)
            extend_left(element, j - p, z)
            basis.append(element)
    return basis


@dataclass
class RankReport:
    """Everything one surgery computation produced, ready to serialize."""

    name: str
    slope: Slope
    oracle_rank: int
    formula_rank: int | None
    t_value: int
    nu: int | None
    hypothesis_ok: bool
    b: int
    genus: int
    timings: dict[str, float] = field(default_factory=dict)
    note: str = ""

    TSV_HEADER = "name\tp\tq\toracle\tformula\tt\tnu\thypothesis\tb\tgenus"

    @property
    def consistent(self) -> bool:
        return self.formula_rank is None or self.formula_rank == self.oracle_rank

    def tsv_row(self) -> str:
        fmt = lambda x: "-" if x is None else str(x)
        return "\t".join(
            [
                self.name,
                str(self.slope.p),
                str(self.slope.q),
                str(self.oracle_rank),
                fmt(self.formula_rank),
                str(self.t_value),
                fmt(self.nu),
                "pass" if self.hypothesis_ok else "fail",
                str(self.b),
                str(self.genus),
            ]
        )

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "p": self.slope.p,
            "q": self.slope.q,
            "oracle": self.oracle_rank,
            "formula": self.formula_rank,
            "t": self.t_value,
            "nu": self.nu,
            "hypothesis": self.hypothesis_ok,
            "b": self.b,
            "genus": self.genus,
            "timings": self.timings,
            "note": self.note,
        }


def compute_rank_report(c: CfkComplex, slope: Slope) -> RankReport:
    """Run both routes plus the auxiliary invariants for one slope."""
    c.require_valid()
    c.require_flip()
    timings: dict[str, float] = {}
    start = time.perf_counter()
    oracle = cone_rank_chain(c, slope)
    timings["oracle_seconds"] = time.perf_counter() - start
    hyp = hypothesis_holds(c)
    formula = None
    if hyp:
        start = time.perf_counter()
        formula = rank_formula(c, slope)
        timings["formula_seconds"] = time.perf_counter() - start
    b = c.b_rank()
    nu = nu_surrogate(c) if b == 1 else None
    return RankReport(
        name=c.name,
        slope=slope,
        oracle_rank=oracle,
        formula_rank=formula,
        t_value=t_invariant(c, slope),
        nu=nu,
        hypothesis_ok=hyp,
        b=b,
        genus=c.genus(),
        timings=timings,
        note="t computed from the supplied flip involution",
    )
