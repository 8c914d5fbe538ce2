"""Euler-class power criteria bounding the complexity of fibrewise motion planning.

Each test decides whether a power of a named Euler class vanishes in the
appropriate presented cohomology ring.  A nonzero k-th power obstructs motion
planners with k+1 local rules; the tests therefore report lower-bound
information only.  Wherever the literature supplies two independent ways to
compute the same verdict (quotient-ring reduction vs. degreewise linear
algebra, direct power vs. a module-basis reduction), both are run and any
mismatch raises :class:`InternalDisagreementError` rather than returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bundles import (
    BundleError,
    BundleSpec,
    KField,
    feder_ring,
    grassmann_ring,
    make_bundle,
    projective_ring,
    q_tilde_ring,
)
from .polyalg import Coeffs, Polynomial
from .ringquot import (
    Element,
    Presentation,
    Strategy,
    derived_sub_presentation,
    free_presentation,
    module_coordinates,
)


class InternalDisagreementError(RuntimeError):
    """Two independent computations of one criterion disagreed: a bug, never
    a legitimate verdict."""


@dataclass(frozen=True)
class NotFoundUpTo:
    """Returned when no vanishing power exists up to and including k_max."""

    k_max: int


def default_k_max(b: BundleSpec) -> int:
    """Search bound 2*(n+1)*d + 2, comfortably past every worked example."""
    return 2 * b.rank * b.d + 2


def min_k_vanishing(e: Element, k_max: int) -> int | NotFoundUpTo:
    """Smallest k <= k_max with e^k = 0, or NotFoundUpTo(k_max).

    Powers are built incrementally, reducing after each multiplication, so
    the search cost is k_max ring multiplications and never re-expands.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    power = e.pres.one()
    for k in range(k_max + 1):
        if k:
            power = power * e
        if power.is_zero():
            return k
    return NotFoundUpTo(k_max)


# -- cached ring constructions ---------------------------------------------------
#
# The min-k searches and the CLI call the same constructions for many values
# of k; the specs are immutable and hashable, so plain memoization is safe.


@lru_cache(maxsize=None)
def projective_of(b: BundleSpec) -> tuple[Presentation, Element, Element]:
    return projective_ring(b)


@lru_cache(maxsize=None)
def q_tilde_of(b: BundleSpec, coeffs: Coeffs | None = None) -> tuple[Presentation, Element]:
    return q_tilde_ring(b, coeffs)


@lru_cache(maxsize=None)
def grassmann_of(b: BundleSpec) -> tuple[Presentation, Element, Element]:
    return grassmann_ring(b)


@lru_cache(maxsize=None)
def feder_of(b: BundleSpec) -> tuple[Presentation, Element, Element, Element]:
    return feder_ring(b)


def _require_real_f2(b: BundleSpec, what: str) -> None:
    if b.field is not KField.R or b.base.ring.coeffs is not Coeffs.F2:
        raise BundleError(f"{what} applies to real bundles with F2 coefficients")


# -- sphere bundle: divisibility vs. quotient ------------------------------------


def _f2_in_span(columns: list[int], target: int) -> bool:
    """Membership of a target bit-vector in the F2 span of column bit-vectors."""
    pivots: dict[int, int] = {}
    for col in columns:
        cur = col
        while cur:
            msb = cur.bit_length() - 1
            if msb in pivots:
                cur ^= pivots[msb]
            else:
                pivots[msb] = cur
                break
    cur = target
    while cur:
        msb = cur.bit_length() - 1
        if msb not in pivots:
            return False
        cur ^= pivots[msb]
    return True


def sphere_divisibility_test(b: BundleSpec, k: int) -> bool:
    """Is w_n^k divisible by w_(n+1) in the base ring?

    Decided by degreewise F2 linear algebra: the standard monomials of the
    source degree k*n - (n+1) are multiplied by w_(n+1) and the resulting
    vectors are tested for spanning w_n^k in degree k*n.  Divisibility is
    exactly the vanishing of the Euler class power upstairs in the sphere
    bundle, by the exactness of the Gysin sequence.
    """
    _require_real_f2(b, "the sphere divisibility test")
    if k < 0:
        raise ValueError("k must be >= 0")
    base = b.base
    target = b.w(b.n) ** k
    if target.is_zero():
        return True
    wtop = b.w(b.rank)
    if wtop.is_zero():
        return False
    degree = target.degree()
    tgt_basis = base.standard_monomials(degree)
    index = {m: i for i, m in enumerate(tgt_basis)}
    columns = []
    for m in base.standard_monomials(degree - b.rank):
        product = base.element(Polynomial(base.ring, {m: 1})) * wtop
        mask = 0
        for exps in product.poly.terms:
            mask |= 1 << index[exps]
        columns.append(mask)
    target_mask = 0
    for exps in target.poly.terms:
        mask = 1 << index[exps]
        target_mask |= mask
    return _f2_in_span(columns, target_mask)


@lru_cache(maxsize=None)
def sphere_quotient_ring(b: BundleSpec) -> Presentation:
    """The base ring modulo the ideal (w_(n+1)): the image of the pullback to
    the sphere bundle."""
    wtop = b.w(b.rank)
    if wtop.is_zero():
        return b.base
    trunc = b.base.truncation
    if trunc is None:
        top = b.base.top_degree()
        if top is None:
            raise BundleError(
                "the quotient route needs a truncated or degreewise-finite base"
            )
        trunc = max(1, top)
    rels = list(b.base.relations) + [wtop.poly]
    return Presentation(b.base.ring, rels, Strategy.GROEBNER_F2, trunc).complete()


def gysin_equivalence_check(b: BundleSpec, k: int) -> bool:
    """Run the divisibility test and the quotient-ring computation of the same
    vanishing statement; raise on any mismatch, else return the shared verdict."""
    by_division = sphere_divisibility_test(b, k)
    quotient = sphere_quotient_ring(b)
    by_quotient = (quotient.element(b.w(b.n).poly) ** k).is_zero()
    if by_division != by_quotient:
        raise InternalDisagreementError(
            f"sphere-bundle routes disagree at k={k}: "
            f"divisibility={by_division}, quotient={by_quotient}"
        )
    return by_division


# -- symmetrized sphere criterion -------------------------------------------------


def _t_reduce(coeffs: dict[int, Element], b: BundleSpec) -> dict[int, Element]:
    """Remainder of a polynomial in t (coefficients in the base) under the
    monic degree-(n+1) fibre relation, written t^(n+1) -> -(lower terms)."""
    n = b.n
    base = b.base
    work = {j: c for j, c in coeffs.items() if not c.is_zero()}
    while work:
        top = max(work)
        if top <= n:
            break
        lead = work.pop(top)
        for j in range(n + 1):
            # divisor coefficient of t^j is (-1)^(n+1+j) w_(n+1-j)
            w = b.w(n + 1 - j).poly
            sign = -1 if (n + 1 + j) % 2 else 1
            delta = lead * (sign * w)
            slot = top - (n + 1) + j
            acc = work.get(slot, base.zero()) - delta
            if acc.is_zero():
                work.pop(slot, None)
            else:
                work[slot] = acc
    return work


def _symm_division_route(b: BundleSpec, k: int) -> bool:
    """Compute x_n^k by long division in t over the base and test for zero."""
    n = b.n
    base = b.base
    x_n = {}
    for j in range(n + 1):
        w = b.w(n - j).poly
        x_n[j] = base.element((-1 if j % 2 else 1) * w)
    power: dict[int, Element] = {0: base.one()}
    for _ in range(k):
        convolved: dict[int, Element] = {}
        for i, c in power.items():
            for j, x in x_n.items():
                acc = convolved.get(i + j, base.zero()) + c * x
                convolved[i + j] = acc
        power = _t_reduce(convolved, b)
    return all(c.is_zero() for c in power.values())


def symm_sphere_test(b: BundleSpec, k: int) -> bool:
    """Does e(zeta)^k vanish in the projectivization?

    Computed once in the quotient presentation and once by univariate long
    division by the monic fibre relation with base-reduced coefficients; the
    answers must agree.
    """
    _require_real_f2(b, "the symmetrized sphere test")
    if k < 0:
        raise ValueError("k must be >= 0")
    pres, e_zeta, _ = projective_of(b)
    direct = (e_zeta ** k).is_zero()
    by_division = _symm_division_route(b, k)
    if direct != by_division:
        raise InternalDisagreementError(
            f"symmetrized sphere routes disagree at k={k}: "
            f"quotient={direct}, long division={by_division}"
        )
    return direct


# -- closed forms for low powers ---------------------------------------------------


def euler_power_x_coordinates(b: BundleSpec, power: int) -> list[Element]:
    """Coordinates of e(zeta)^power on the module basis x_0, ..., x_n.

    The projectivization is free over the base on 1, t, ..., t^n; the
    t-coordinates are converted to the x-basis by back-substitution through
    the unitriangular change of basis x_j = sum_i (-1)^i t^i w_(j-i).
    """
    pres, e_zeta, _ = projective_of(b)
    sub = derived_sub_presentation(pres, "t")
    a = module_coordinates(e_zeta ** power, "t", b.n, sub)
    c = [sub.zero()] * (b.n + 1)
    for i in range(b.n, -1, -1):
        acc = a[i] if i % 2 == 0 else -a[i]
        for j in range(i + 1, b.n + 1):
            acc = acc - c[j] * sub.element(b.w(j - i).poly)
        c[i] = acc
    return c


def closed_form_check(n: int) -> bool:
    """Verify the displayed formulas for e(zeta)^2 and e(zeta)^3 with fully
    generic classes: a free F2 base on symbols w1, ..., w(n+1).

      e^2 = w_n x_n + w_(n+1) x_(n-1)
      e^3 = (w_n^2 + w_(n-1) w_(n+1)) x_n + w_n w_(n+1) x_(n-1) + w_(n+1)^2 x_(n-2)
    """
    if not 2 <= n <= 6:
        raise ValueError("closed forms are checked for 2 <= n <= 6")
    gens = [(f"w{i}", i) for i in range(1, n + 2)]
    base = free_presentation(Coeffs.F2, gens)
    b = make_bundle(KField.R, n + 1, base, {i: f"w{i}" for i in range(1, n + 2)})

    def w(i: int) -> Element:
        return base.element(f"w{i}")

    sq = euler_power_x_coordinates(b, 2)
    want_sq = [base.zero()] * (n + 1)
    want_sq[n] = w(n)
    want_sq[n - 1] = w(n + 1)

    cube = euler_power_x_coordinates(b, 3)
    want_cube = [base.zero()] * (n + 1)
    want_cube[n] = w(n) * w(n) + w(n - 1) * w(n + 1)
    want_cube[n - 1] = w(n) * w(n + 1)
    want_cube[n - 2] = w(n + 1) * w(n + 1)

    return sq == want_sq and cube == want_cube


# -- projective criteria -----------------------------------------------------------


def proj_pair_test(b: BundleSpec, k: int, coeffs: Coeffs | None = None) -> bool:
    """Does e(alpha~)^k vanish in the ordered-pairs ring over the chosen
    coefficients?"""
    if k < 0:
        raise ValueError("k must be >= 0")
    _, e = q_tilde_of(b, coeffs)
    return (e ** k).is_zero()


def symm_proj_test(b: BundleSpec, k: int) -> bool:
    """Does e(alpha)^k vanish in the unordered-pairs (Feder) ring?

    Also evaluates the module-basis reduction -- e(alpha)^k is nonzero
    exactly when w_d(beta)^(k-1) is nonzero in the plane ring -- and
    raises if the two verdicts differ.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    _, _, e_alpha, _ = feder_of(b)
    direct = (e_alpha ** k).is_zero()
    if k >= 1:
        _, y, _ = grassmann_of(b)
        reduced = (y ** (k - 1)).is_zero()
        if direct != reduced:
            raise InternalDisagreementError(
                f"unordered-pairs routes disagree at k={k}: "
                f"direct={direct}, plane-ring reduction={reduced}"
            )
    return direct


# -- the integral point-sphere table ------------------------------------------------


@dataclass(frozen=True)
class PointSphereRow:
    """Integral verdicts for the trivial rank n+1 sphere bundle over a point.

    ``values[k]`` is the integer value of e^k in H^(kn) of the n-sphere for
    k = 0, 1, 2 (the group is Z for kn in {0, n} and 0 above), ``minimal_k``
    the first vanishing power and ``witness`` the last nonzero value.
    """

    n: int
    minimal_k: int
    witness: str
    values: tuple[str, str, str]


def point_sphere_table(n: int) -> PointSphereRow:
    """Exact integral computation over a point: the Euler class of the
    complement of the diagonal is (1 + (-1)^n) times the fundamental class,
    and every higher power lands in a vanishing cohomology group."""
    if n < 1:
        raise ValueError("n must be >= 1")
    e1 = 1 + (-1) ** n
    values = ("1", str(e1), "0")
    if e1 == 0:
        return PointSphereRow(n, 1, "1", values)
    return PointSphereRow(n, 2, str(e1), values)
