"""Tate spaces k((t))^n, their lattices and admissible sequences of Laurent matrices.

A lattice L with t^hi O^n ⊆ L ⊆ t^lo O^n is stored as the subspace L / t^hi O^n of
the finite quotient t^lo O^n / t^hi O^n. The quotient is coordinatized by the
monomials t^e u_i, ordered by e ascending and then i ascending, so the monomial
t^e u_i has coordinate (e - lo) * n + i.

Morphisms between Tate spaces are matrices of Laurent polynomials. All finite
computations happen in exponent windows derived from the valuations of the maps
and of their one-sided inverses over k(t); a term falling below a window raises
PrecisionError instead of being dropped.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field as dataclass_field

from .errors import (
    DimensionMismatchError,
    InexactSequenceError,
    LatticeError,
    NotAdmissibleError,
    PrecisionError,
)
from .exactcat import FdSpace, LinMap, check_ses
from .exactlin import (
    Field,
    Matrix,
    Subspace,
    complement_basis,
    preimage,
    reduce_mod,
    span,
    subspace_meet_join,
)

log = logging.getLogger(__name__)

_TERM = re.compile(r"(?P<c>-?(?:\d+(?:/\d+)?)?)(?P<t>\*?t(?:\^(?P<e>-?\d+))?)?")


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial; terms are (exponent, coefficient) pairs sorted by exponent."""

    field: Field
    terms: tuple = ()

    @classmethod
    def from_dict(cls, field, coefficients):
        terms = []
        for e in sorted(coefficients):
            c = field.canon(coefficients[e])
            if c != 0:
                terms.append((int(e), c))
        return cls(field, tuple(terms))

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls.monomial(field, 1, 0)

    @classmethod
    def monomial(cls, field, c=1, e=0):
        return cls.from_dict(field, {e: c})

    @classmethod
    def parse(cls, field, text):
        """Parse a "+"-joined list of "c*t^e" terms; "0" is the zero polynomial."""
        text = text.strip()
        coefficients = {}
        for token in text.split("+"):
            match = _TERM.fullmatch(token.strip())
            if not match or not token.strip():
                raise ValueError('Invalid Laurent term "%s".' % token.strip())
            c, t_part, e = match["c"], match["t"], match["e"]
            if c in ("", "-"):
                if not t_part:
                    raise ValueError('Invalid Laurent term "%s".' % token.strip())
                c = c + "1"
            exponent = 0 if not t_part else (1 if e is None else int(e))
            value = field.parse_scalar(c)
            coefficients[exponent] = field.add(coefficients.get(exponent, 0), value)
        return cls.from_dict(field, coefficients)

    def format(self):
        if not self.terms:
            return "0"
        return "+".join("%s*t^%d" % (self.field.format(c), e) for e, c in self.terms)

    def __str__(self):
        return self.format()

    def is_zero(self):
        return not self.terms

    @property
    def valuation(self):
        return self.terms[0][0] if self.terms else None

    @property
    def degree(self):
        return self.terms[-1][0] if self.terms else None

    def coefficient(self, e):
        for exponent, c in self.terms:
            if exponent == e:
                return c
        return self.field.zero

    def _combine(self, other, sign):
        f = self.field
        coefficients = dict(self.terms)
        for e, c in other.terms:
            coefficients[e] = f.add(coefficients.get(e, 0), c if sign > 0 else f.neg(c))
        return LaurentPoly.from_dict(f, coefficients)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        f = self.field
        return LaurentPoly(f, tuple((e, f.neg(c)) for e, c in self.terms))

    def __mul__(self, other):
        f = self.field
        coefficients = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                coefficients[e1 + e2] = f.add(coefficients.get(e1 + e2, 0), f.mul(c1, c2))
        return LaurentPoly.from_dict(f, coefficients)

    def scale(self, c):
        f = self.field
        return LaurentPoly.from_dict(f, {e: f.mul(c, x) for e, x in self.terms})

    def shift(self, k):
        """Return t^k times self."""
        return LaurentPoly(self.field, tuple((e + k, c) for e, c in self.terms))

    def exact_quotient(self, divisor):
        """Return q with q * divisor == self; raise ArithmeticError when there is none."""
        f = self.field
        if divisor.is_zero():
            raise ZeroDivisionError("Division by the zero Laurent polynomial.")
        if self.is_zero():
            return self
        lead_e, lead_c = divisor.terms[0]
        remainder = dict(self.terms)
        quotient = {}
        while remainder:
            e = min(remainder)
            q_e = e - lead_e
            if q_e + divisor.degree > self.degree:
                raise ArithmeticError("%s does not divide %s." % (divisor, self))
            c = f.div(remainder[e], lead_c)
            quotient[q_e] = c
            for d_e, d_c in divisor.terms:
                k = q_e + d_e
                value = f.sub(remainder.get(k, 0), f.mul(c, d_c))
                if value:
                    remainder[k] = value
                else:
                    remainder.pop(k, None)
        return LaurentPoly.from_dict(f, quotient)


def _eliminate(field, rows, ncols):
    """Fraction-free elimination over k[t, 1/t].

    Returns (rank, sign, last pivot); for a square matrix of full rank the
    determinant is sign * last pivot.
    """
    m = [list(row) for row in rows]
    one = LaurentPoly.one(field)
    previous = one
    sign = 1
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pivot = next((k for k in range(r, len(m)) if not m[k][c].is_zero()), None)
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
            sign = -sign
        for k in range(r + 1, len(m)):
            for col in range(c + 1, ncols):
                m[k][col] = (m[r][c] * m[k][col] - m[k][c] * m[r][col]).exact_quotient(
                    previous
                )
            m[k][c] = LaurentPoly.zero(field)
        previous = m[r][c]
        r += 1
    return r, sign, previous


@dataclass(frozen=True)
class LaurentMatrix:
    """A matrix of Laurent polynomials acting on column vectors."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        converted = []
        for row in rows:
            converted.append(
                tuple(
                    x if isinstance(x, LaurentPoly) else LaurentPoly.monomial(field, x, 0)
                    for x in row
                )
            )
        if cols is None:
            cols = len(converted[0]) if converted else 0
        for row in converted:
            if len(row) != cols:
                raise DimensionMismatchError(
                    "Row of length %d in a Laurent matrix with %d columns." % (len(row), cols)
                )
        return cls(field, len(converted), cols, tuple(converted))

    @classmethod
    def zeros(cls, field, rows, cols):
        zero = LaurentPoly.zero(field)
        return cls(field, rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n):
        return cls.monomial_diagonal(field, [1] * n, [0] * n)

    @classmethod
    def monomial_diagonal(cls, field, coefficients, exponents):
        """Return diag(c_k t^e_k); invertible when every c_k is nonzero."""
        n = len(coefficients)
        zero = LaurentPoly.zero(field)
        rows = [
            [
                LaurentPoly.monomial(field, coefficients[r], exponents[r]) if r == c else zero
                for c in range(n)
            ]
            for r in range(n)
        ]
        return cls.from_rows(field, rows, n)

    @classmethod
    def transvection(cls, field, n, r, c, poly):
        """Return the identity plus poly in position (r, c), r != c."""
        if r == c:
            raise ValueError("A transvection needs two different indices.")
        m = [list(row) for row in cls.identity(field, n).entries]
        m[r][c] = poly
        return cls.from_rows(field, m, n)

    @classmethod
    def coordinate_inclusion(cls, field, n, m, offset=0):
        """Return the m x n matrix sending unit k to unit offset + k."""
        return cls.from_rows(
            field, [[int(r == offset + k) for k in range(n)] for r in range(m)], n
        )

    @classmethod
    def coordinate_projection(cls, field, n, m, offset=0):
        """Return the m x n matrix keeping coordinates offset .. offset + m - 1."""
        return cls.from_rows(
            field, [[int(k == offset + r) for k in range(n)] for r in range(m)], n
        )

    def column(self, k):
        return tuple(row[k] for row in self.entries)

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def __matmul__(self, other):
        if self.field != other.field:
            raise DimensionMismatchError("Laurent matrices over different fields.")
        if self.cols != other.rows:
            raise DimensionMismatchError(
                "Cannot compose %dx%d with %dx%d."
                % (self.rows, self.cols, other.rows, other.cols)
            )
        zero = LaurentPoly.zero(self.field)
        rows = []
        for r in range(self.rows):
            row = []
            for c in range(other.cols):
                total = zero
                for k in range(self.cols):
                    total = total + self.entries[r][k] * other.entries[k][c]
                row.append(total)
            rows.append(row)
        return LaurentMatrix.from_rows(self.field, rows, other.cols)

    def apply(self, vector):
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                "Vector of length %d for a map with %d columns." % (len(vector), self.cols)
            )
        zero = LaurentPoly.zero(self.field)
        out = []
        for row in self.entries:
            total = zero
            for a, x in zip(row, vector):
                total = total + a * x
            out.append(total)
        return tuple(out)

    def valuation(self):
        """Return the minimal valuation of a nonzero entry, or None for the zero matrix."""
        values = [x.valuation for row in self.entries for x in row if not x.is_zero()]
        return min(values) if values else None

    def submatrix(self, row_indices, col_indices):
        return [[self.entries[r][c] for c in col_indices] for r in row_indices]

    def rank(self):
        """Return the rank over the rational function field k(t)."""
        if self.rows == 0 or self.cols == 0:
            return 0
        rank, _, _ = _eliminate(self.field, self.entries, self.cols)
        return rank

    def det(self):
        if self.rows != self.cols:
            raise DimensionMismatchError("Determinant of a non-square Laurent matrix.")
        return _det(self.field, self.entries)

    def format(self):
        return "\n".join(" ".join(x.format() for x in row) for row in self.entries)


def _det(field, rows):
    n = len(rows)
    if n == 0:
        return LaurentPoly.one(field)
    rank, sign, last = _eliminate(field, rows, n)
    if rank < n:
        return LaurentPoly.zero(field)
    return last if sign > 0 else -last


def _cofactor_valuation(field, square):
    """Return the minimal valuation of a nonzero cofactor of a square matrix."""
    n = len(square)
    if n == 1:
        return 0
    values = []
    for r in range(n):
        for c in range(n):
            minor = [
                [square[i][j] for j in range(n) if j != c] for i in range(n) if i != r
            ]
            d = _det(field, minor)
            if not d.is_zero():
                values.append(d.valuation)
    return min(values)


def _inverse_valuation(matrix, by_rows):
    """Return the minimal valuation of a one-sided inverse of a full-rank matrix.

    The inverse is adj(M_S) / det(M_S) for the first nonsingular maximal minor M_S,
    taken over row subsets (left inverse of a mono) or column subsets (right inverse
    of an epi). Entries are expanded in k((t)), so only valuations matter.
    """
    size = matrix.cols if by_rows else matrix.rows
    total = matrix.rows if by_rows else matrix.cols
    for subset in itertools.combinations(range(total), size):
        if by_rows:
            square = matrix.submatrix(subset, range(matrix.cols))
        else:
            square = matrix.submatrix(range(matrix.rows), subset)
        d = _det(matrix.field, square)
        if not d.is_zero():
            log.debug("inverse from minor %s with det valuation %d", subset, d.valuation)
            return _cofactor_valuation(matrix.field, square) - d.valuation
    raise NotAdmissibleError("rank-deficient")


@dataclass(frozen=True)
class TateSpace:
    """The Tate space k((t))^rank; rank 0 is the zero space."""

    rank: int
    field: Field

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("Negative rank %d." % self.rank)


@dataclass(frozen=True)
class Lattice:
    """A lattice t^hi O^n ⊆ L ⊆ t^lo O^n, in normalized form.

    Build lattices with lattice_normalize or the helper constructors; equal lattices
    then have equal data.
    """

    space: TateSpace
    lo: int
    hi: int
    sub: Subspace

    def __post_init__(self):
        if self.lo > self.hi:
            raise LatticeError("Lattice bounds lo=%d > hi=%d." % (self.lo, self.hi))
        if self.sub.ambient_dim != (self.hi - self.lo) * self.space.rank:
            raise LatticeError("Lattice subspace has the wrong ambient dimension.")
        if self.sub.field != self.space.field:
            raise DimensionMismatchError("Lattice subspace over the wrong field.")

    @property
    def field(self):
        return self.space.field

    def generators(self):
        """Return the basis rows of the window as vectors of Laurent polynomials."""
        return [_row_vector(row, self.lo, self.space) for row in self.sub.basis]

    def __str__(self):
        return "Lattice(rank=%d, lo=%d, hi=%d, dim=%d)" % (
            self.space.rank,
            self.lo,
            self.hi,
            self.sub.dim,
        )


def _row_vector(row, lo, space):
    n = space.rank
    coefficients = [dict() for _ in range(n)]
    for p, c in enumerate(row):
        if c != 0:
            coefficients[p % n][lo + p // n] = c
    return tuple(LaurentPoly.from_dict(space.field, d) for d in coefficients)


def _truncate(vector, wlo, whi, field):
    """Return the window coordinates of a Laurent vector, dropping terms at or above whi."""
    n = len(vector)
    out = [field.zero] * ((whi - wlo) * n)
    for i, poly in enumerate(vector):
        for e, c in poly.terms:
            if e >= whi:
                break
            if e < wlo:
                raise PrecisionError(
                    "Term t^%d below the window [%d, %d)." % (e, wlo, whi)
                )
            out[(e - wlo) * n + i] = c
    return tuple(out)


def lattice_window(lattice, wlo, whi):
    """Return lattice / t^whi O^n inside t^wlo O^n / t^whi O^n."""
    if wlo > lattice.lo or whi < lattice.hi:
        raise ValueError("Window does not contain the lattice bounds.")
    n = lattice.space.rank
    field = lattice.field
    before = (lattice.lo - wlo) * n
    after = (whi - lattice.hi) * n
    size = (whi - wlo) * n
    zeros = (field.zero,)
    rows = [zeros * before + tuple(row) + zeros * after for row in lattice.sub.basis]
    for p in range((lattice.hi - wlo) * n, size):
        rows.append(tuple(field.one if k == p else field.zero for k in range(size)))
    return Subspace(field, size, tuple(rows))


def _normalize_subspace(space, lo, hi, sub):
    """Tighten the bounds of a t-stable subspace of t^lo O^n / t^hi O^n."""
    field = space.field
    n = space.rank
    if n == 0:
        return Lattice(space, 0, 0, Subspace.zero(field, 0))
    pivots = sub.pivots
    new_lo = lo + pivots[0] // n if pivots else hi
    taken = set(pivots)
    new_hi = hi
    while new_hi > new_lo and all(
        (new_hi - 1 - lo) * n + i in taken for i in range(n)
    ):
        new_hi -= 1
    start, stop = (new_lo - lo) * n, (new_hi - lo) * n
    rows = tuple(row[start:stop] for row, p in zip(sub.basis, pivots) if p < stop)
    return Lattice(space, new_lo, new_hi, Subspace(field, stop - start, rows))


def _shift_rows(rows, n, width):
    """Return the rows together with all their t-multiples inside the window."""
    out = []
    for row in rows:
        for k in range(width):
            shifted = (0,) * (k * n) + tuple(row[: len(row) - k * n])
            if any(shifted):
                out.append(shifted)
    return out


def lattice_normalize(space, lo, hi, raw_basis):
    """Return the lattice O·span(raw_basis) + t^hi O^n in normalized form.

    raw_basis rows are coordinate vectors of t^lo O^n / t^hi O^n.
    """
    if lo > hi:
        raise LatticeError("Lattice bounds lo=%d > hi=%d." % (lo, hi))
    field = space.field
    n = space.rank
    size = (hi - lo) * n
    rows = []
    for v in raw_basis:
        if len(v) != size:
            raise LatticeError(
                "Basis vector of length %d in a quotient of dimension %d." % (len(v), size)
            )
        rows.append(tuple(field.canon(x) for x in v))
    if n == 0:
        return Lattice(space, 0, 0, Subspace.zero(field, 0))
    sub = span(field, size, _shift_rows(rows, n, hi - lo))
    return _normalize_subspace(space, lo, hi, sub)


def standard_lattice(space, k=0):
    """Return t^k O^n."""
    return lattice_normalize(space, k, k, [])


def diagonal_lattice(space, exponents):
    """Return the direct sum of t^a_i O."""
    n = space.rank
    if len(exponents) != n:
        raise DimensionMismatchError("Need one exponent per coordinate.")
    if n == 0:
        return standard_lattice(space)
    lo, hi = min(exponents), max(exponents)
    size = (hi - lo) * n
    rows = []
    for i, a in enumerate(exponents):
        for e in range(a, hi):
            rows.append(tuple(int(k == (e - lo) * n + i) for k in range(size)))
    return lattice_normalize(space, lo, hi, rows)


def lattice_from_generators(space, generators, hi):
    """Return the O-span of Laurent vectors plus t^hi O^n."""
    valuations = [p.valuation for g in generators for p in g if not p.is_zero()]
    lo = min(valuations + [hi])
    rows = [_truncate(g, lo, hi, space.field) for g in generators]
    return lattice_normalize(space, lo, hi, rows)


def _check_same_space(a, b):
    if a.space != b.space:
        raise DimensionMismatchError("Lattices in different Tate spaces.")


def common_window(*lattices):
    return min(x.lo for x in lattices), max(x.hi for x in lattices)


def lattice_contains(a, b):
    """Return whether b ⊆ a."""
    _check_same_space(a, b)
    wlo, whi = common_window(a, b)
    return lattice_window(b, wlo, whi).is_subspace_of(lattice_window(a, wlo, whi))


def lattice_meet(a, b):
    _check_same_space(a, b)
    wlo, whi = common_window(a, b)
    meet, _ = subspace_meet_join(lattice_window(a, wlo, whi), lattice_window(b, wlo, whi))
    return _normalize_subspace(a.space, wlo, whi, meet)


def lattice_join(a, b):
    _check_same_space(a, b)
    wlo, whi = common_window(a, b)
    _, join = subspace_meet_join(lattice_window(a, wlo, whi), lattice_window(b, wlo, whi))
    return _normalize_subspace(a.space, wlo, whi, join)


def relative_index(a, b):
    """Return dim(a / a∩b) - dim(b / a∩b)."""
    _check_same_space(a, b)
    wlo, whi = common_window(a, b)
    return lattice_window(a, wlo, whi).dim - lattice_window(b, wlo, whi).dim


@dataclass(frozen=True)
class TateSES:
    """A validated admissible sequence k((t))^a >-> k((t))^b ->> k((t))^c.

    The valuation fields bound the Laurent expansions of i, j and of a left inverse
    of i and a right inverse of j; lift and project derive their windows from them.
    """

    i: LaurentMatrix
    j: LaurentMatrix
    mono_valuation: object = dataclass_field(default=None, compare=False)
    epi_valuation: object = dataclass_field(default=None, compare=False)
    left_inverse_valuation: object = dataclass_field(default=None, compare=False)
    right_inverse_valuation: object = dataclass_field(default=None, compare=False)

    @property
    def field(self):
        return self.i.field

    @property
    def sub(self):
        return TateSpace(self.i.cols, self.field)

    @property
    def middle(self):
        return TateSpace(self.i.rows, self.field)

    @property
    def quotient(self):
        return TateSpace(self.j.rows, self.field)


def diagnose_tate_ses(i, j):
    """Return the first failed admissibility condition of (i, j), or None."""
    if i.field != j.field:
        raise DimensionMismatchError("Laurent matrices over different fields.")
    if j.cols != i.rows:
        return "shape-mismatch"
    if i.rank() != i.cols:
        return "not-mono"
    if j.rank() != j.rows:
        return "not-epi"
    if not (j @ i).is_zero():
        return "composite-nonzero"
    if i.cols + j.rows != i.rows:
        return "inexact-at-middle"
    return None


def check_tate_ses(i, j):
    """Validate (i, j) by ranks over k(t) and return a TateSES."""
    reason = diagnose_tate_ses(i, j)
    if reason is not None:
        raise InexactSequenceError(reason)
    left = _inverse_valuation(i, by_rows=True) if i.cols else None
    right = _inverse_valuation(j, by_rows=False) if j.rows else None
    return TateSES(i, j, i.valuation(), j.valuation(), left, right)


def split_tate_ses(field, a, c):
    """Return the coordinate sequence k((t))^a >-> k((t))^(a+c) ->> k((t))^c."""
    i = LaurentMatrix.coordinate_inclusion(field, a, a + c)
    j = LaurentMatrix.coordinate_projection(field, a + c, c, a)
    return check_tate_ses(i, j)


def lift_lattice(ses, u):
    """Return i⁻¹(u), the lattice "u ∩ X'" of the sub space."""
    if u.space != ses.middle:
        raise DimensionMismatchError("Lattice does not live in the middle space.")
    source = ses.sub
    if source.rank == 0:
        return standard_lattice(source)
    field = ses.field
    whi = u.hi - ses.mono_valuation
    wlo = min(u.lo + ses.left_inverse_valuation, whi)
    tlo = min(u.lo, wlo + ses.mono_valuation)
    target = lattice_window(u, tlo, u.hi)
    columns = []
    for e in range(wlo, whi):
        for k in range(source.rank):
            image = tuple(poly.shift(e) for poly in ses.i.column(k))
            columns.append(_truncate(image, tlo, u.hi, field))
    m = Matrix.from_columns(field, columns, target.ambient_dim)
    log.debug("lift window [%d, %d) over target window [%d, %d)", wlo, whi, tlo, u.hi)
    return _normalize_subspace(source, wlo, whi, preimage(m, target))


def project_lattice(ses, u):
    """Return j(u), the lattice "u / (u ∩ X')" of the quotient space."""
    if u.space != ses.middle:
        raise DimensionMismatchError("Lattice does not live in the middle space.")
    target = ses.quotient
    if target.rank == 0:
        return standard_lattice(target)
    field = ses.field
    whi = u.hi - ses.right_inverse_valuation
    wlo = min(u.lo + ses.epi_valuation, whi)
    rows = [_truncate(ses.j.apply(g), wlo, whi, field) for g in u.generators()]
    for e in range(u.hi, whi - ses.epi_valuation):
        for k in range(ses.middle.rank):
            image = tuple(poly.shift(e) for poly in ses.j.column(k))
            rows.append(_truncate(image, wlo, whi, field))
    log.debug("project window [%d, %d) with %d spanning rows", wlo, whi, len(rows))
    return _normalize_subspace(target, wlo, whi, span(field, (whi - wlo) * target.rank, rows))


def sub_image_lattice(ses, k=-1):
    """Return the O-span of t^k i(e_1), ..., t^k i(e_a) plus t O^b.

    For a twisted sequence this lattice is neither standard nor diagonal.
    """
    generators = [tuple(poly.shift(k) for poly in ses.i.column(c)) for c in range(ses.sub.rank)]
    return lattice_from_generators(ses.middle, generators, 1)


def lattice_image(g, lattice):
    """Return g(L) for a matrix g invertible over k((t))."""
    if g.rows != g.cols or g.cols != lattice.space.rank:
        raise DimensionMismatchError("Matrix does not act on the space of the lattice.")
    ses = check_tate_ses(LaurentMatrix.zeros(g.field, g.cols, 0), g)
    return project_lattice(ses, lattice)


@dataclass(frozen=True)
class _QuotientFrame:
    """Canonical coordinates on upper / lower for lattices lower ⊆ upper."""

    lo: int
    hi: int
    lower: Subspace
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return [next(p for p, x in enumerate(row) if x != 0) for row in self.basis]

    def coordinates(self, vector, field):
        reduced = reduce_mod(self.lower, _truncate(vector, self.lo, self.hi, field))
        return tuple(reduced[p] for p in self.pivots)


def _quotient_frame(lower, upper):
    wlo, whi = common_window(lower, upper)
    lower_w = lattice_window(lower, wlo, whi)
    basis = complement_basis(lower_w, lattice_window(upper, wlo, whi))
    return _QuotientFrame(wlo, whi, lower_w, basis)


def _induced_map(frame_in, frame_out, matrix, space_in, field):
    columns = []
    for row in frame_in.basis:
        vector = matrix.apply(_row_vector(row, frame_in.lo, space_in))
        columns.append(frame_out.coordinates(vector, field))
    source, target = FdSpace(frame_in.dim, field), FdSpace(frame_out.dim, field)
    return LinMap.from_columns(source, target, columns)


@dataclass(frozen=True)
class LatticeGrid:
    """The nine-term diagram of a sequence X' >-> X ->> X'' and lattices lower ⊆ upper.

    The columns are lower ⊆ upper ->> upper/lower in X', X and X''; the bottom row
    is the finite sequence of quotients in canonical coordinates.
    """

    ses: TateSES
    lower: Lattice
    upper: Lattice
    lower_sub: Lattice
    upper_sub: Lattice
    lower_quotient: Lattice
    upper_quotient: Lattice
    bottom: object

    def quotient_dims(self):
        return (
            self.bottom.sub.dim,
            self.bottom.middle.dim,
            self.bottom.quotient.dim,
        )


def lattice_grid(ses, lower, upper, lower_sub=None, upper_sub=None):
    """Complete lower ⊆ upper in the middle space to the nine-term grid.

    Supplied sub lattices must be the lifts of lower and upper (the pullback
    condition); otherwise NotAdmissibleError("not-pullback") is raised.
    """
    if not lattice_contains(upper, lower):
        raise LatticeError("The lower lattice is not contained in the upper one.")
    lifts = (lift_lattice(ses, lower), lift_lattice(ses, upper))
    for given, lift in zip((lower_sub, upper_sub), lifts):
        if given is not None and given != lift:
            raise NotAdmissibleError("not-pullback")
    projections = (project_lattice(ses, lower), project_lattice(ses, upper))
    field = ses.field
    sub_frame = _quotient_frame(*lifts)
    mid_frame = _quotient_frame(lower, upper)
    quot_frame = _quotient_frame(*projections)
    mono = _induced_map(sub_frame, mid_frame, ses.i, ses.sub, field)
    epi = _induced_map(mid_frame, quot_frame, ses.j, ses.middle, field)
    bottom = check_ses(mono, epi)
    return LatticeGrid(ses, lower, upper, lifts[0], lifts[1], *projections, bottom)
