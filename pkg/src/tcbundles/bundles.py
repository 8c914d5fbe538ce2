"""Cohomology presentations attached to sphere and projective bundles.

A bundle of rank ``n+1`` over a base ``B`` is described by a coefficient
field tag K (R, C or H with real scalar dimension d = 1, 2, 4), a completed
presentation of the cohomology of ``B``, and the characteristic classes
``w_1, ..., w_(n+1)`` of the bundle, where ``w_i`` sits in degree ``d*i``
(Stiefel-Whitney classes over F2 for K = R, Chern classes for K = C, the
symplectic classes for K = H).

From such a spec the constructors build:

* ``projective_ring``   -- the projectivization, one fibre generator ``t`` of
  degree d, relation ``x_(n+1) = 0`` where ``x_i = w_i - t*x_(i-1)``;
* ``q_tilde_ring``      -- ordered pairs of orthogonal lines, generators
  ``S, T`` of degree d;
* ``grassmann_ring``    -- planes of K-dimension 2, generators ``Y, Z`` (F2);
* ``feder_ring``        -- unordered pairs of orthogonal lines, generators
  ``Y, Z, X`` (F2), free over the plane ring with basis ``1, X, ..., X^d``.

Named Euler classes come back together with each presentation.  Module bases
claimed by the constructions are verified degreewise by dimension counts.
"""

from __future__ import annotations

from enum import Enum
from typing import Mapping, Sequence

from .polyalg import Coeffs, PolyRing, Polynomial
from .ringquot import (
    Element,
    ModuleBasisError,
    Presentation,
    Strategy,
    point_presentation,
)


class KField(Enum):
    """Scalar field of the bundle: reals, complexes or quaternions."""

    R = ("R", 1)
    C = ("C", 2)
    H = ("H", 4)

    def __init__(self, tag: str, d: int):
        self.tag = tag
        self.d = d

    @classmethod
    def from_tag(cls, tag: str) -> "KField":
        for f in cls:
            if f.tag == tag.upper():
                return f
        raise BundleError(f"unknown scalar field {tag!r}; use R, C or H")


class BundleError(ValueError):
    """Invalid bundle description."""


_FIBRE_NAMES = ("t", "S", "T", "X", "Y", "Z")


class BundleSpec:
    """A rank n+1 bundle over a presented base, with its classes."""

    __slots__ = ("field", "rank", "base", "classes", "_hash")

    def __init__(
        self,
        field: KField,
        rank: int,
        base: Presentation,
        classes: Sequence[Element],
    ):
        if not isinstance(rank, int) or rank < 2:
            raise BundleError("rank must be an integer >= 2 (projective fibres need n >= 1)")
        if not base.completed:
            raise BundleError("base presentation must be completed")
        if field is KField.R and base.ring.coeffs is not Coeffs.F2:
            raise BundleError("real bundles take F2 coefficients")
        for name in base.ring.names:
            if name in _FIBRE_NAMES:
                raise BundleError(f"base generator {name!r} collides with a fibre class name")
        if base.dimension(0) != 1:
            raise BundleError("base must be connected (one-dimensional degree-0 part)")
        classes = tuple(classes)
        n = rank - 1
        if len(classes) != rank:
            raise BundleError(f"need {rank} classes w_1..w_{rank}, got {len(classes)}")
        d = field.d
        for i, c in enumerate(classes, start=1):
            if c.pres != base:
                raise BundleError(f"class w_{i} does not live in the base presentation")
            if not c.is_zero():
                if not c.poly.is_homogeneous() or c.degree() != d * i:
                    raise BundleError(f"class w_{i} must be homogeneous of degree {d * i}")
        self.field = field
        self.rank = rank
        self.base = base
        self.classes = classes
        self._hash: int | None = None

    @property
    def n(self) -> int:
        return self.rank - 1

    @property
    def d(self) -> int:
        return self.field.d

    def w(self, i: int) -> Element:
        """The class w_i, with w_0 = 1 and w_i = 0 outside 0..rank."""
        if i == 0:
            return self.base.one()
        if 1 <= i <= self.rank:
            return self.classes[i - 1]
        return self.base.zero()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BundleSpec)
            and self.field is other.field
            and self.rank == other.rank
            and self.base == other.base
            and self.classes == other.classes
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.rank, self.base, self.classes))
        return self._hash

    def __repr__(self) -> str:
        return f"BundleSpec({self.field.tag}, rank={self.rank}, base={self.base.ring!r})"


def trivial_bundle(field: KField, rank: int, coeffs: Coeffs | None = None) -> BundleSpec:
    """The trivial rank ``rank`` bundle over a point (all classes zero)."""
    if coeffs is None:
        coeffs = Coeffs.F2 if field is KField.R else Coeffs.INT
    base = point_presentation(coeffs)
    return BundleSpec(field, rank, base, [base.zero()] * rank)


def make_bundle(
    field: KField,
    rank: int,
    base: Presentation,
    classes: Mapping[int, Element | Polynomial | str | int],
) -> BundleSpec:
    """Build a spec from a sparse ``{i: w_i}`` mapping; missing classes are 0."""
    elems = []
    for i in range(1, rank + 1):
        value = classes.get(i, 0)
        if isinstance(value, Element):
            elems.append(value)
        else:
            elems.append(base.element(value))
    for i in classes:
        if not (1 <= i <= rank):
            raise BundleError(f"class index {i} outside 1..{rank}")
    return BundleSpec(field, rank, base, elems)


def reduce_mod2(b: BundleSpec) -> BundleSpec:
    """The same bundle with coefficients reduced from Z to F2."""
    if b.base.ring.coeffs is Coeffs.F2:
        return b
    ring2 = b.base.ring.to_f2()
    rels2 = [r.mod2(ring2) for r in b.base.relations]
    base2 = Presentation(ring2, rels2, b.base.strategy, b.base.truncation).complete()
    classes2 = [base2.element(c.poly.mod2(ring2)) for c in b.classes]
    return BundleSpec(b.field, b.rank, base2, classes2)


# -- presentation extension ------------------------------------------------------


def _truncation_monomials(ring: PolyRing, indices: Sequence[int], bound: int) -> list[Polynomial]:
    """Minimal monomials in the chosen generators of weighted degree > bound.

    These generate the ideal of everything above the bound, so they encode a
    semantic truncation as honest relations once new generators are adjoined.
    """
    degs = [ring.degrees[i] for i in indices]
    if not degs:
        return []
    out: list[Polynomial] = []

    def rec(pos: int, exps: list[int], total: int) -> None:
        if total > bound:
            # minimal iff removing any present generator lands at or below bound
            if all(e == 0 or total - d <= bound for e, d in zip(exps, degs)):
                full = [0] * ring.ngens
                for i, e in zip(indices, exps):
                    full[i] = e
                out.append(ring.monomial(tuple(full)))
            return
        if pos == len(degs):
            return
        limit = (bound + degs[pos] - total) // degs[pos] + 1
        for e in range(limit + 1):
            exps[pos] = e
            rec(pos + 1, exps, total + e * degs[pos])
        exps[pos] = 0

    rec(0, [0] * len(degs), 0)
    return out


def _extend_presentation(
    base: Presentation,
    new_gens: Sequence[tuple[str, int]],
    fibre_budget: int,
) -> tuple[PolyRing, list[Polynomial], Strategy, int | None]:
    """Common setup for adjoining fibre generators to a base presentation.

    Returns the extended ring, the lifted base relations (with any base
    truncation materialized as monomial relations), the strategy, and the
    total truncation degree for the extended presentation.
    """
    ring = base.ring.with_generators(new_gens)
    rels = [r.lift(ring) for r in base.relations]
    if base.truncation is not None:
        if ring.coeffs is not Coeffs.F2:
            raise BundleError("truncated integral bases are not supported")
        base_indices = [ring.index(n) for n in base.ring.names]
        rels.extend(_truncation_monomials(ring, base_indices, base.truncation))
        return ring, rels, Strategy.GROEBNER_F2, base.truncation + fibre_budget
    return ring, rels, base.strategy, None


def _with_coeffs(b: BundleSpec, coeffs: Coeffs | None) -> BundleSpec:
    have = b.base.ring.coeffs
    if coeffs is None or coeffs is have:
        return b
    if coeffs is Coeffs.F2 and have is Coeffs.INT:
        return reduce_mod2(b)
    raise BundleError("cannot lift an F2 bundle description to Z")


def _x_polynomials(b: BundleSpec, ring: PolyRing, t_name: str, up_to: int) -> list[Polynomial]:
    """The classes x_0, ..., x_up_to with x_i = w_i - t * x_(i-1), x_0 = 1."""
    t = ring.gen(t_name)
    xs = [ring.one()]
    for i in range(1, up_to + 1):
        w_i = b.w(i).poly.lift(ring)
        xs.append(w_i - t * xs[-1])
    return xs


def projective_ring(
    b: BundleSpec, coeffs: Coeffs | None = None
) -> tuple[Presentation, Element, Element]:
    """Cohomology of the projectivized bundle.

    Adjoins one generator ``t`` of degree d (the Euler class of the Hopf line
    bundle) with the single relation ``x_(n+1) = 0``.  Returns the completed
    presentation together with ``e_zeta = x_n`` (Euler class of the
    complementary bundle) and ``e_eta = t``.
    """
    b = _with_coeffs(b, coeffs)
    n, d = b.n, b.d
    ring, rels, strategy, trunc = _extend_presentation(b.base, [("t", d)], n * d)
    xs = _x_polynomials(b, ring, "t", n + 1)
    rels.append(xs[n + 1])
    pres = Presentation(ring, rels, strategy, trunc).complete()
    e_zeta = pres.element(xs[n])
    e_eta = pres.element(ring.gen("t"))
    return pres, e_zeta, e_eta


def projective_x_classes(b: BundleSpec, pres: Presentation) -> list[Element]:
    """The module basis x_0, ..., x_n of the projectivization over the base."""
    xs = _x_polynomials(b, pres.ring, "t", b.n)
    return [pres.element(x) for x in xs]


def _h_complete(ring: PolyRing, s_name: str, t_name: str, i: int) -> Polynomial:
    """Complete homogeneous polynomial h_i = T^i + S*T^(i-1) + ... + S^i."""
    S = ring.gen(s_name)
    T = ring.gen(t_name)
    acc = ring.zero()
    for j in range(i + 1):
        acc = acc + S ** j * T ** (i - j)
    return acc


def q_tilde_ring(
    b: BundleSpec, coeffs: Coeffs | None = None
) -> tuple[Presentation, Element]:
    """Cohomology of the space of ordered pairs of orthogonal lines in the bundle.

    Two generators ``S, T`` of degree d (Euler classes of the two Hopf line
    bundles).  The first relation is the projectivization relation in ``S``;
    the second is ``w_n + sum_i (-1)^i (T^i + S T^(i-1) + ... + S^i) w_(n-i)``.
    Returns the presentation and the Euler class ``e_alpha_tilde = T - S`` of
    the line-to-line homomorphism bundle.
    """
    b = _with_coeffs(b, coeffs)
    n, d = b.n, b.d
    ring, rels, strategy, trunc = _extend_presentation(
        b.base, [("S", d), ("T", d)], (2 * n - 1) * d
    )
    xs = _x_polynomials(b, ring, "S", n + 1)
    rels.append(xs[n + 1])
    r2 = ring.zero()
    for i in range(n + 1):
        sign = -1 if i % 2 else 1
        r2 = r2 + sign * _h_complete(ring, "S", "T", i) * b.w(n - i).poly.lift(ring)
    rels.append(r2)
    pres = Presentation(ring, rels, strategy, trunc).complete()
    e_alpha_tilde = pres.element(ring.gen("T") - ring.gen("S"))
    return pres, e_alpha_tilde


class PPolyTable:
    """Memoized table of the recurrence p_0 = 1, p_1 = Y,
    p_(i+1) = Y*p_i + Z*p_(i-1), and its class-twisted companion
    p_i^xi = sum_j p_(i-j) * w_(j*d)."""

    def __init__(self, ring: PolyRing, y: Polynomial, z: Polynomial,
                 classes: Sequence[Polynomial]):
        self.ring = ring
        self.y = y
        self.z = z
        self.classes = list(classes)  # classes[j] is w_(j*d), classes[0] = 1
        self._p: list[Polynomial] = [ring.one(), y]
        self._p_xi: dict[int, Polynomial] = {}

    def p(self, i: int) -> Polynomial:
        if i < 0:
            return self.ring.zero()
        while len(self._p) <= i:
            k = len(self._p)
            self._p.append(self.y * self._p[k - 1] + self.z * self._p[k - 2])
        return self._p[i]

    def p_xi(self, i: int) -> Polynomial:
        if i not in self._p_xi:
            acc = self.ring.zero()
            for j in range(i + 1):
                w_j = self.classes[j] if j < len(self.classes) else self.ring.zero()
                acc = acc + self.p(i - j) * w_j
            self._p_xi[i] = acc
        return self._p_xi[i]


def p_polynomial(i: int, table: PPolyTable) -> Polynomial:
    """The i-th recurrence polynomial p_i(Y, Z)."""
    return table.p(i)


def _grassmann_setup(b: BundleSpec, extra_gens, truncation: int | None):
    b = _with_coeffs(b, Coeffs.F2)
    n, d = b.n, b.d
    if truncation is None:
        dim_b = b.base.truncation
        if dim_b is None:
            dim_b = b.base.top_degree()
        if dim_b is None:
            raise BundleError(
                "base has unbounded degrees; supply an explicit truncation"
            )
        truncation = dim_b + 2 * n * d + d + 1
    gens = [("Y", d), ("Z", 2 * d)] + list(extra_gens)
    ring = b.base.ring.with_generators(gens)
    rels = [r.lift(ring) for r in b.base.relations]
    if b.base.truncation is not None:
        base_indices = [ring.index(nm) for nm in b.base.ring.names]
        rels.extend(_truncation_monomials(ring, base_indices, b.base.truncation))
    classes = [b.w(j).poly.lift(ring) for j in range(0, n + 2)]
    table = PPolyTable(ring, ring.gen("Y"), ring.gen("Z"), classes)
    rels.append(table.p_xi(n))
    rels.append(ring.gen("Z") * table.p_xi(n - 1) + classes[n + 1])
    return b, ring, rels, truncation


def gaussian_binomial_two(m: int) -> list[int]:
    """Coefficients of the Gaussian binomial [m choose 2]_q.

    Coefficient e counts the fibre cells of the plane Grassmannian in degree
    d*e; used for the degreewise freeness check.  Computed by the Pascal rule
    G(m, r) = G(m-1, r-1) + q^r G(m-1, r).
    """
    table: dict[tuple[int, int], list[int]] = {}

    def g(mm: int, rr: int) -> list[int]:
        if rr < 0 or rr > mm:
            return [0]
        if rr == 0 or rr == mm:
            return [1]
        key = (mm, rr)
        if key not in table:
            left = g(mm - 1, rr - 1)
            right = g(mm - 1, rr)
            size = max(len(left), len(right) + rr)
            coeffs = [0] * size
            for e, c in enumerate(left):
                coeffs[e] += c
            for e, c in enumerate(right):
                coeffs[e + rr] += c
            table[key] = coeffs
        return table[key]

    return g(m, 2)


def grassmann_ring(
    b: BundleSpec, truncation: int | None = None, verify: bool = True
) -> tuple[Presentation, Element, Element]:
    """F2 cohomology of the bundle of 2-dimensional K-subspaces.

    Generators ``Y`` (degree d) and ``Z`` (degree 2d); relations
    ``p_n^xi(Y, Z)`` and ``Z * p_(n-1)^xi(Y, Z) + w_((n+1)d)``.  The quotient
    is a free module over the base whose rank in each degree matches the
    Gaussian binomial [n+1 choose 2]_q; with ``verify`` the dimensions are
    checked degree by degree.
    """
    b2, ring, rels, trunc = _grassmann_setup(b, [], truncation)
    pres = Presentation(ring, rels, Strategy.GROEBNER_F2, trunc).complete()
    if verify:
        cells = gaussian_binomial_two(b2.n + 1)
        d = b2.d
        for m in range(trunc + 1):
            want = sum(
                c * b2.base.dimension(m - d * e)
                for e, c in enumerate(cells)
                if c and m - d * e >= 0
            )
            got = pres.dimension(m)
            if got != want:
                raise ModuleBasisError(
                    f"plane-bundle ring fails freeness at degree {m}: {got} != {want}"
                )
    return pres, pres.element(ring.gen("Y")), pres.element(ring.gen("Z"))


def feder_ring(
    b: BundleSpec, truncation: int | None = None, verify: bool = True
) -> tuple[Presentation, Element, Element, Element]:
    """F2 cohomology of the space of unordered pairs of orthogonal lines.

    Adds ``X`` of degree 1 (Euler class of the swap line bundle) to the plane
    ring, with the extra relation ``X (X^d + Y)``.  The result is free over
    the plane ring with basis ``1, X, ..., X^d`` (checked degreewise when
    ``verify`` is set).  Returns ``(presentation, e_lambda, e_alpha,
    w_d_beta)`` where ``e_lambda = X``, ``e_alpha = Y + X^d`` and
    ``w_d_beta = Y``.
    """
    b2, ring, rels, trunc = _grassmann_setup(b, [("X", 1)], truncation)
    x = ring.gen("X")
    rels.append(x ** (b2.d + 1) + x * ring.gen("Y"))
    pres = Presentation(ring, rels, Strategy.GROEBNER_F2, trunc).complete()
    if verify:
        plane, _, _ = grassmann_ring(b, truncation=trunc, verify=False)
        for m in range(trunc + 1):
            want = sum(plane.dimension(m - j) for j in range(b2.d + 1))
            got = pres.dimension(m)
            if got != want:
                raise ModuleBasisError(
                    f"pair ring fails freeness over the plane ring at degree {m}: "
                    f"{got} != {want}"
                )
    e_lambda = pres.element(x)
    e_alpha = pres.element(ring.gen("Y") + x ** b2.d)
    w_d_beta = pres.element(ring.gen("Y"))
    return pres, e_lambda, e_alpha, w_d_beta
