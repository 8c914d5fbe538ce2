"""Graded quotient rings presented by generators and homogeneous relations.

Two normal-form strategies cover every presentation used here:

``MONIC_TOWER``
    Each relation is monic in its own *designated* generator: it has a single
    leading term ``g^m`` with unit coefficient, and every other term involves
    strictly earlier generators and lower powers of ``g``.  The quotient is
    then a free module over the subring of earlier generators with basis
    ``1, g, ..., g^(m-1)``, and iterated division computes a canonical normal
    form.  All integral presentations take this shape.

``GROEBNER_F2``
    Truncated Buchberger completion over F2 in graded-lex order (later
    generators larger).  Only S-pairs whose lcm degree stays within the
    truncation bound are processed; since all relations are homogeneous this
    yields normal forms that are canonical up to the truncation degree.

A presentation may carry a ``truncation`` degree: every element of weighted
degree above it is zero in the quotient.  The truncation is semantic, i.e. it
is part of the ring being presented, not a computational shortcut.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator, Sequence

from .polyalg import Coeffs, ExpVec, PolyRing, Polynomial, RingMismatchError


class Strategy(Enum):
    MONIC_TOWER = "monic_tower"
    GROEBNER_F2 = "groebner_f2"


class PresentationError(ValueError):
    """The relation set violates the requirements of its strategy."""


class ModuleBasisError(ValueError):
    """A claimed free module decomposition fails to hold."""


def _exps_divides(a: ExpVec, b: ExpVec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exps_shift(exps: ExpVec, by: ExpVec) -> ExpVec:
    return tuple(x + y for x, y in zip(exps, by))


def _exps_diff(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(x - y for x, y in zip(a, b))


def _exps_lcm(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(max(x, y) for x, y in zip(a, b))


def _exps_coprime(a: ExpVec, b: ExpVec) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class Presentation:
    """A graded ring given by generators, homogeneous relations and a strategy.

    Instances are immutable.  ``complete()`` returns a presentation whose
    relation set is ready for normal-form computation; elements can only be
    built from completed presentations.
    """

    __slots__ = ("ring", "relations", "strategy", "truncation", "completed",
                 "_tower_rules", "_hash")

    def __init__(
        self,
        ring: PolyRing,
        relations: Sequence[Polynomial],
        strategy: Strategy,
        truncation: int | None = None,
        _completed: bool = False,
    ):
        rels = []
        for r in relations:
            if r.ring != ring:
                raise PresentationError("relation lives in a different ring")
            if r.is_zero():
                continue
            if not r.is_homogeneous():
                raise PresentationError(f"relation {r} is not homogeneous")
            rels.append(r)
        if truncation is not None and (not isinstance(truncation, int) or truncation <= 0):
            raise PresentationError("truncation must be a positive integer")
        if strategy is Strategy.GROEBNER_F2:
            if ring.coeffs is not Coeffs.F2:
                raise PresentationError("GROEBNER_F2 requires F2 coefficients")
            if truncation is None:
                raise PresentationError("GROEBNER_F2 requires a truncation degree")
        self.ring = ring
        self.strategy = strategy
        self.truncation = truncation
        self.completed = _completed
        if strategy is Strategy.MONIC_TOWER:
            rels, rules = _tower_normalize(ring, rels)
            self.relations = tuple(rels)
            self._tower_rules = rules
        else:
            self.relations = tuple(rels)
            self._tower_rules = None
        self._hash: int | None = None

    # -- completion -----------------------------------------------------------

    def complete(self) -> "Presentation":
        """Return a presentation whose relations admit canonical normal forms.

        Monic towers are already complete, so they come back unchanged (only
        marked).  F2 presentations run truncated Buchberger completion and the
        relation set is replaced by the reduced basis.
        """
        if self.completed:
            return self
        if self.strategy is Strategy.MONIC_TOWER:
            return Presentation(self.ring, self.relations, self.strategy,
                                self.truncation, _completed=True)
        basis = _buchberger(self.ring, self.relations, self.truncation)
        return Presentation(self.ring, basis, self.strategy,
                            self.truncation, _completed=True)

    # -- normal forms ----------------------------------------------------------

    def normal_form(self, p: Polynomial) -> Polynomial:
        if not self.completed:
            raise PresentationError("presentation must be completed first")
        if p.ring != self.ring:
            raise RingMismatchError("polynomial lives in a different ring")
        if self.strategy is Strategy.MONIC_TOWER:
            return _tower_reduce(self, p)
        return _groebner_reduce(self, p)

    def element(self, p: "Polynomial | str | int") -> "Element":
        if isinstance(p, str):
            p = self.ring.parse(p)
        elif isinstance(p, int):
            p = self.ring.const(p)
        return Element(self, self.normal_form(p))

    def zero(self) -> "Element":
        return self.element(0)

    def one(self) -> "Element":
        return self.element(1)

    # -- degreewise structure ----------------------------------------------------

    def leading_exponent_set(self) -> list[ExpVec]:
        """Exponent vectors whose multiples are killed by reduction."""
        if not self.completed:
            raise PresentationError("presentation must be completed first")
        if self.strategy is Strategy.MONIC_TOWER:
            out = []
            for gidx, power, _ in self._tower_rules:
                exps = [0] * self.ring.ngens
                exps[gidx] = power
                out.append(tuple(exps))
            return out
        return [r.leading_exponents() for r in self.relations]

    def standard_monomials(self, degree: int) -> list[ExpVec]:
        """Monomial basis of the quotient in one weighted degree."""
        if degree < 0:
            return []
        if self.truncation is not None and degree > self.truncation:
            return []
        leads = self.leading_exponent_set()
        out = [
            exps for exps in _monomials_of_degree(self.ring, degree)
            if not any(_exps_divides(l, exps) for l in leads)
        ]
        out.sort(key=self.ring.order_key)
        return out

    def dimension(self, degree: int) -> int:
        return len(self.standard_monomials(degree))

    def top_degree(self) -> int | None:
        """Largest degree with a nonzero graded piece, or None if unbounded."""
        if self.truncation is not None:
            bound = self.truncation
        else:
            # Finite only when every generator has a pure power among the
            # leading exponents; the box of standard monomials is then bounded.
            bound = 0
            leads = self.leading_exponent_set()
            for i, d in enumerate(self.ring.degrees):
                pure = [l[i] for l in leads if all(e == 0 for j, e in enumerate(l) if j != i) and l[i] > 0]
                if not pure:
                    return None
                bound += (min(pure) - 1) * d
        top = -1
        for m in range(bound, -1, -1):
            if self.dimension(m) > 0:
                top = m
                break
        return top

    # -- identity ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Presentation)
            and self.ring == other.ring
            and self.relations == other.relations
            and self.strategy is other.strategy
            and self.truncation == other.truncation
            and self.completed == other.completed
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.relations, self.strategy,
                               self.truncation, self.completed))
        return self._hash

    def __repr__(self) -> str:
        rels = "; ".join(str(r) for r in self.relations) or "0"
        trunc = f", trunc<={self.truncation}" if self.truncation is not None else ""
        return f"Presentation({self.ring!r} / ({rels}){trunc}, {self.strategy.value})"


def free_presentation(
    coeffs: Coeffs,
    generators: Sequence[tuple[str, int]],
    truncation: int | None = None,
) -> Presentation:
    """Polynomial ring with no relations, optionally truncated."""
    ring = PolyRing(coeffs, generators)
    return Presentation(ring, (), Strategy.MONIC_TOWER, truncation).complete()


def point_presentation(coeffs: Coeffs = Coeffs.F2) -> Presentation:
    """The cohomology of a point: no generators, no relations."""
    return free_presentation(coeffs, ())


# -- monic tower internals ------------------------------------------------------------


def _tower_normalize(
    ring: PolyRing, relations: list[Polynomial]
) -> tuple[list[Polynomial], tuple]:
    """Validate tower shape; normalize leading units to +1; build rewrite rules."""
    rules = []
    seen: set[int] = set()
    normalized: list[Polynomial] = []
    for rel in relations:
        gidx = max(
            i for exps in rel.terms for i, e in enumerate(exps) if e > 0
        ) if any(any(exps) for exps in rel.terms) else None
        if gidx is None:
            raise PresentationError(f"constant relation {rel} is not allowed")
        power = max(exps[gidx] for exps in rel.terms)
        lead_exps = [0] * ring.ngens
        lead_exps[gidx] = power
        lead_exps = tuple(lead_exps)
        lc = rel.coefficient(lead_exps)
        others_at_power = [
            exps for exps in rel.terms
            if exps[gidx] == power and exps != lead_exps
        ]
        if lc not in (1, -1) or others_at_power:
            raise PresentationError(
                f"relation {rel} is not monic in generator "
                f"{ring.names[gidx]!r}; use GROEBNER_F2"
            )
        if gidx in seen:
            raise PresentationError(
                f"two relations are monic in the same generator {ring.names[gidx]!r}"
            )
        seen.add(gidx)
        if lc == -1:
            rel = -rel
        normalized.append(rel)
        # g^power rewrites to -(tail).
        tail = rel - ring.monomial(lead_exps)
        repl = {e: -c for e, c in tail.terms.items()}
        rules.append((gidx, power, repl))
    rules.sort(key=lambda r: -r[0])
    return normalized, tuple(rules)


def _tower_reduce(pres: Presentation, p: Polynomial) -> Polynomial:
    ring = pres.ring
    trunc = pres.truncation
    rules = pres._tower_rules
    out: dict[ExpVec, int] = {}
    stack = list(p.terms.items())
    while stack:
        exps, coeff = stack.pop()
        if coeff == 0:
            continue
        if trunc is not None and ring.weighted_degree(exps) > trunc:
            continue
        for gidx, power, repl in rules:
            if exps[gidx] >= power:
                rest = list(exps)
                rest[gidx] -= power
                for rexps, rc in repl.items():
                    stack.append((_exps_shift(tuple(rest), rexps), coeff * rc))
                break
        else:
            out[exps] = out.get(exps, 0) + coeff
    return Polynomial(ring, out)


# -- F2 Groebner internals --------------------------------------------------------------


def _f2_add(a: dict[ExpVec, int], b_keys: Iterable[ExpVec]) -> None:
    for k in b_keys:
        if k in a:
            del a[k]
        else:
            a[k] = 1


def _f2_leading(terms: dict[ExpVec, int], ring: PolyRing) -> ExpVec:
    return max(terms, key=ring.order_key)


def _f2_full_reduce(
    terms: dict[ExpVec, int],
    basis: list[tuple[ExpVec, dict[ExpVec, int]]],
    ring: PolyRing,
    trunc: int | None,
) -> dict[ExpVec, int]:
    """Fully reduce an F2 polynomial (dict of monomials) by the basis."""
    work = dict(terms)
    out: dict[ExpVec, int] = {}
    while work:
        m = _f2_leading(work, ring)
        del work[m]
        if trunc is not None and ring.weighted_degree(m) > trunc:
            continue
        for lt, bterms in basis:
            if _exps_divides(lt, m):
                shift = _exps_diff(m, lt)
                _f2_add(work, (_exps_shift(e, shift) for e in bterms if e != lt))
                break
        else:
            out[m] = 1
    return out


def _buchberger(
    ring: PolyRing, relations: Sequence[Polynomial], trunc: int | None
) -> tuple[Polynomial, ...]:
    """Truncated Buchberger completion for homogeneous F2 ideals."""
    basis: list[tuple[ExpVec, dict[ExpVec, int]]] = []

    def push(terms: dict[ExpVec, int]) -> None:
        if terms:
            basis.append((_f2_leading(terms, ring), terms))

    for r in relations:
        reduced = _f2_full_reduce(dict(r.terms), basis, ring, trunc)
        push(reduced)

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        pairs.sort(
            key=lambda ij: ring.weighted_degree(
                _exps_lcm(basis[ij[0]][0], basis[ij[1]][0])
            ),
            reverse=True,
        )
        i, j = pairs.pop()
        lt_i, f_i = basis[i]
        lt_j, f_j = basis[j]
        if _exps_coprime(lt_i, lt_j):
            continue
        lcm = _exps_lcm(lt_i, lt_j)
        if trunc is not None and ring.weighted_degree(lcm) > trunc:
            continue
        spoly: dict[ExpVec, int] = {}
        _f2_add(spoly, (_exps_shift(e, _exps_diff(lcm, lt_i)) for e in f_i))
        _f2_add(spoly, (_exps_shift(e, _exps_diff(lcm, lt_j)) for e in f_j))
        reduced = _f2_full_reduce(spoly, basis, ring, trunc)
        if reduced:
            basis.append((_f2_leading(reduced, ring), reduced))
            new = len(basis) - 1
            pairs.extend((k, new) for k in range(new))

    # Inter-reduce to the unique reduced basis (up to the truncation bound).
    changed = True
    while changed:
        changed = False
        for idx in range(len(basis)):
            lt, terms = basis[idx]
            rest = basis[:idx] + basis[idx + 1:]
            reduced = _f2_full_reduce(terms, rest, ring, trunc)
            if reduced != terms:
                changed = True
                basis = rest
                if reduced:
                    basis.append((_f2_leading(reduced, ring), reduced))
                break
    polys = [Polynomial(ring, terms) for _, terms in basis]
    polys.sort(key=lambda p: ring.order_key(p.leading_exponents()))
    return tuple(polys)


def _groebner_reduce(pres: Presentation, p: Polynomial) -> Polynomial:
    basis = [(r.leading_exponents(), dict(r.terms)) for r in pres.relations]
    reduced = _f2_full_reduce(dict(p.terms), basis, pres.ring, pres.truncation)
    return Polynomial(pres.ring, reduced)


def _monomials_of_degree(ring: PolyRing, degree: int) -> Iterator[ExpVec]:
    """All exponent vectors of exact weighted degree, in no particular order."""
    n = ring.ngens

    def rec(i: int, remaining: int, prefix: list[int]) -> Iterator[ExpVec]:
        if i == n:
            if remaining == 0:
                yield tuple(prefix)
            return
        d = ring.degrees[i]
        if i == n - 1:
            if remaining % d == 0:
                yield tuple(prefix + [remaining // d])
            return
        for e in range(remaining // d + 1):
            yield from rec(i + 1, remaining - e * d, prefix + [e])

    if degree == 0:
        yield (0,) * n
        return
    if n == 0:
        return
    yield from rec(0, degree, [])


class Element:
    """An element of a presented quotient ring, stored in normal form."""

    __slots__ = ("pres", "poly")

    def __init__(self, pres: Presentation, poly_in_normal_form: Polynomial):
        self.pres = pres
        self.poly = poly_in_normal_form

    def _check(self, other: "Element") -> None:
        if self.pres != other.pres:
            raise RingMismatchError("elements belong to different presentations")

    def _coerce(self, other: "Element | Polynomial | int") -> "Element":
        if isinstance(other, Element):
            return other
        return self.pres.element(other)

    def __add__(self, other: "Element | Polynomial | int") -> "Element":
        other = self._coerce(other)
        self._check(other)
        return Element(self.pres, self.pres.normal_form(self.poly + other.poly))

    def __sub__(self, other: "Element | Polynomial | int") -> "Element":
        other = self._coerce(other)
        self._check(other)
        return Element(self.pres, self.pres.normal_form(self.poly - other.poly))

    def __neg__(self) -> "Element":
        return Element(self.pres, self.pres.normal_form(-self.poly))

    def __mul__(self, other: "Element | Polynomial | int") -> "Element":
        other = self._coerce(other)
        self._check(other)
        return Element(self.pres, self.pres.normal_form(self.poly * other.poly))

    def __rmul__(self, other: int) -> "Element":
        return self * other

    def __pow__(self, exponent: int) -> "Element":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.pres.one()
        for _ in range(exponent):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def degree(self) -> int:
        return self.poly.degree()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Polynomial)):
            other = self.pres.element(other)
        return (
            isinstance(other, Element)
            and self.pres == other.pres
            and self.poly == other.poly
        )

    def __hash__(self) -> int:
        return hash((self.pres, self.poly))

    def __repr__(self) -> str:
        return f"Element({self.poly})"

    def __str__(self) -> str:
        return str(self.poly)


def derived_sub_presentation(pres: Presentation, gen_name: str) -> Presentation:
    """Presentation on the remaining generators, keeping relations that avoid
    the named generator.  Used as the coefficient ring for free module
    decompositions in powers of that generator."""
    ring = pres.ring
    idx = ring.index(gen_name)
    sub_ring = ring.without_generator(gen_name)
    kept: list[Polynomial] = []
    for r in pres.relations:
        if all(exps[idx] == 0 for exps in r.terms):
            terms = {
                tuple(e for i, e in enumerate(exps) if i != idx): c
                for exps, c in r.terms.items()
            }
            kept.append(Polynomial(sub_ring, terms))
    return Presentation(sub_ring, kept, pres.strategy, pres.truncation).complete()


def module_coordinates(
    e: Element,
    gen_name: str,
    max_power: int,
    sub: Presentation | None = None,
) -> list[Element]:
    """Coordinates of ``e`` in the basis ``1, g, ..., g^max_power`` over the
    subring of the remaining generators.

    The normal form of ``e`` must not involve ``g`` beyond ``max_power``;
    otherwise the claimed decomposition fails and :class:`ModuleBasisError`
    is raised.  Coefficients are returned reduced in ``sub`` (derived from the
    presentation when not supplied).
    """
    pres = e.pres
    idx = pres.ring.index(gen_name)
    if sub is None:
        sub = derived_sub_presentation(pres, gen_name)
    buckets: list[dict[ExpVec, int]] = [dict() for _ in range(max_power + 1)]
    for exps, c in e.poly.terms.items():
        j = exps[idx]
        if j > max_power:
            raise ModuleBasisError(
                f"normal form involves {gen_name}^{j} beyond max power {max_power}"
            )
        key = tuple(x for i, x in enumerate(exps) if i != idx)
        buckets[j][key] = buckets[j].get(key, 0) + c
    return [sub.element(Polynomial(sub.ring, b)) for b in buckets]


def verify_free_basis(
    pres: Presentation,
    gen_name: str,
    max_power: int,
    sub: Presentation | None = None,
    max_degree: int | None = None,
) -> None:
    """Check degreewise over F2-style dimension counts that the quotient is a
    free module over the subring with basis ``1, g, ..., g^max_power``.

    Raises :class:`ModuleBasisError` at the first degree where the dimensions
    disagree.
    """
    if sub is None:
        sub = derived_sub_presentation(pres, gen_name)
    if max_degree is None:
        if pres.truncation is None:
            raise ModuleBasisError("max_degree required for untruncated presentations")
        max_degree = pres.truncation
    gdeg = pres.ring.degrees[pres.ring.index(gen_name)]
    for m in range(max_degree + 1):
        got = pres.dimension(m)
        want = sum(sub.dimension(m - j * gdeg) for j in range(max_power + 1))
        if got != want:
            raise ModuleBasisError(
                f"free basis fails at degree {m}: quotient has dimension {got}, "
                f"module decomposition predicts {want}"
            )
