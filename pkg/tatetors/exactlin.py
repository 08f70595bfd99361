"""Exact linear algebra over prime fields and the rationals, and integer Smith forms.

Isolation layer for the sympy package: elimination, determinants and Smith normal
forms run on sympy DomainMatrix objects, everything else sees plain tuples of
canonical scalars (ints reduced mod p, or Fractions).
"""

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors, smith_normal_decomp

from .errors import DimensionMismatchError

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _domain(p):
    if p == 0:
        return QQ
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class Field:
    """The prime field F_p, or the rationals when p is 0.

    Scalars are plain Python values: ints in range(p) for F_p, Fractions for Q.
    """

    p: int = 0

    def __post_init__(self):
        if self.p < 0 or (self.p != 0 and not isprime(self.p)):
            raise ValueError("Field characteristic %d is not prime." % self.p)

    @classmethod
    def prime(cls, p):
        return cls(p)

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def parse(cls, text):
        """Parse a field name on the format "F<p>" or "Q"."""
        text = text.strip()
        if text == "Q":
            return cls(0)
        match = re.fullmatch(r"F(\d+)", text)
        if not match:
            raise ValueError('Invalid field "%s".' % text)
        return cls(int(match[1]))

    @property
    def name(self):
        return "Q" if self.p == 0 else "F%d" % self.p

    @property
    def is_finite(self):
        return self.p != 0

    @property
    def zero(self):
        return self.canon(0)

    @property
    def one(self):
        return self.canon(1)

    def canon(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return self.div(x.numerator, x.denominator)
            return int(x) % self.p
        return Fraction(x)

    def add(self, a, b):
        return self.canon(a + b)

    def sub(self, a, b):
        return self.canon(a - b)

    def mul(self, a, b):
        return self.canon(a * b)

    def neg(self, a):
        return self.canon(-a)

    def inv(self, a):
        a = self.canon(a)
        if a == 0:
            raise ZeroDivisionError("Zero has no inverse in %s." % self.name)
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        if self.p:
            b = int(b) % self.p
            if b == 0:
                raise ZeroDivisionError("Division by zero in %s." % self.name)
            return (int(a) * pow(b, -1, self.p)) % self.p
        return Fraction(a) / Fraction(b)

    def sign(self, exponent):
        return self.canon(-1 if exponent % 2 else 1)

    def elements(self):
        if not self.p:
            raise ValueError("The rationals cannot be enumerated.")
        return range(self.p)

    def random(self, rng, nonzero=False):
        if self.p:
            return rng.randrange(1 if nonzero else 0, self.p)
        while True:
            value = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if value or not nonzero:
                return value

    def parse_scalar(self, token):
        return self.canon(Fraction(token.strip()))

    def format(self, x):
        return str(x)

    def to_domain(self, x):
        K = _domain(self.p)
        if self.p:
            return K(int(x))
        x = Fraction(x)
        return K(x.numerator, x.denominator)

    def from_domain(self, a):
        value = _domain(self.p).to_sympy(a)
        if self.p:
            return int(value) % self.p
        return Fraction(int(value.p), int(value.q))


def _to_domain_matrix(field, rows, shape):
    return DomainMatrix(
        [[field.to_domain(x) for x in row] for row in rows], shape, _domain(field.p)
    )


def _from_domain_matrix(field, dm):
    return tuple(tuple(field.from_domain(a) for a in row) for row in dm.to_list())


@dataclass(frozen=True)
class Matrix:
    """A rows x cols matrix of canonical scalars.

    Linear maps act on column vectors: a map F^n -> F^m is an m x n matrix.
    """

    field: Field
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [tuple(field.canon(x) for x in row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatchError(
                    "Row of length %d in a matrix with %d columns." % (len(row), cols)
                )
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, field, columns, rows):
        columns = [tuple(column) for column in columns]
        for column in columns:
            if len(column) != rows:
                raise DimensionMismatchError(
                    "Column of length %d in a matrix with %d rows."
                    % (len(column), rows)
                )
        entries = [[column[r] for column in columns] for r in range(rows)]
        return cls.from_rows(field, entries, len(columns))

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols, tuple((field.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n):
        return cls.from_rows(
            field, [[1 if r == c else 0 for c in range(n)] for r in range(n)], n
        )

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return Matrix.from_columns(self.field, self.entries, self.cols)

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def to_domain_matrix(self):
        return _to_domain_matrix(self.field, self.entries, (self.rows, self.cols))

    def __matmul__(self, other):
        if self.field != other.field:
            raise DimensionMismatchError("Matrices over different fields.")
        if self.cols != other.rows:
            raise DimensionMismatchError(
                "Cannot compose %dx%d with %dx%d."
                % (self.rows, self.cols, other.rows, other.cols)
            )
        if 0 in (self.rows, self.cols, other.cols):
            return Matrix.zeros(self.field, self.rows, other.cols)
        product = self.to_domain_matrix() * other.to_domain_matrix()
        return Matrix(
            self.field, self.rows, other.cols, _from_domain_matrix(self.field, product)
        )

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("Cannot add matrices of different shapes.")
        f = self.field
        return Matrix.from_rows(
            f,
            [[f.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.cols,
        )

    def scale(self, c):
        f = self.field
        return Matrix.from_rows(
            f, [[f.mul(c, a) for a in row] for row in self.entries], self.cols
        )

    def apply(self, vector):
        """Return the image m·v of a column vector."""
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                "Vector of length %d for a map with %d columns." % (len(vector), self.cols)
            )
        f = self.field
        return tuple(
            f.canon(sum(a * x for a, x in zip(row, vector))) for row in self.entries
        )

    def rank(self):
        if self.rows == 0 or self.cols == 0:
            return 0
        return self.to_domain_matrix().rank()

    def det(self):
        if self.rows != self.cols:
            raise DimensionMismatchError("Determinant of a non-square matrix.")
        if self.rows == 0:
            return self.field.one
        return self.field.from_domain(self.to_domain_matrix().det())


def _rref_rows(field, rows, cols):
    """Return the nonzero rows of the reduced row echelon form and their pivots."""
    rows = [row for row in rows if any(x != 0 for x in row)]
    if not rows or cols == 0:
        return (), ()
    reduced, pivots = _to_domain_matrix(field, rows, (len(rows), cols)).rref()
    reduced = _from_domain_matrix(field, reduced)
    out = []
    for r, c in enumerate(pivots):
        row = reduced[r]
        if row[c] != 1:
            row = tuple(field.div(x, row[c]) for x in row)
        out.append(row)
    return tuple(out), tuple(pivots)


def _leading_position(row):
    for i, x in enumerate(row):
        if x != 0:
            return i
    return None


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n given by its reduced row echelon basis.

    Each subspace has exactly one representation, so equality is data equality.
    """

    field: Field
    ambient_dim: int
    basis: tuple

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, ())

    @classmethod
    def full(cls, field, n):
        return cls(field, n, Matrix.identity(field, n).entries)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return tuple(_leading_position(row) for row in self.basis)

    @property
    def free_positions(self):
        pivots = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in pivots)

    def basis_matrix(self):
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis)

    def contains(self, vector):
        return not any(reduce_mod(self, vector))

    def is_subspace_of(self, other):
        _check_same_ambient(self, other)
        return all(other.contains(v) for v in self.basis)

    def coordinates(self, vector):
        """Return c with vector = sum(c[r] * basis[r])."""
        if not self.contains(vector):
            raise ValueError("Vector does not lie in the subspace.")
        return tuple(vector[c] for c in self.pivots)


def _check_same_ambient(a, b):
    if a.field != b.field or a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            "Subspaces of %s^%d and %s^%d."
            % (a.field.name, a.ambient_dim, b.field.name, b.ambient_dim)
        )


def span(field, ambient_dim, vectors):
    """Return the subspace spanned by some vectors of F^ambient_dim."""
    vectors = [tuple(field.canon(x) for x in v) for v in vectors]
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatchError(
                "Vector of length %d in F^%d." % (len(v), ambient_dim)
            )
    basis, _ = _rref_rows(field, vectors, ambient_dim)
    return Subspace(field, ambient_dim, basis)


def rref_basis(m):
    """Return the row space of a matrix in canonical echelon form."""
    return span(m.field, m.cols, m.entries)


def kernel(m):
    """Return the subspace of column vectors x with m·x = 0."""
    field = m.field
    reduced, pivots = _rref_rows(field, m.entries, m.cols)
    vectors = []
    for f in range(m.cols):
        if f in pivots:
            continue
        v = [field.zero] * m.cols
        v[f] = field.one
        for row, c in zip(reduced, pivots):
            v[c] = field.neg(row[f])
        vectors.append(v)
    return span(field, m.cols, vectors)


def subspace_meet_join(a, b):
    """Return (a ∩ b, a + b)."""
    _check_same_ambient(a, b)
    field = a.field
    join = span(field, a.ambient_dim, a.basis + b.basis)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(field, a.ambient_dim), join
    stacked = Matrix.from_rows(
        field,
        list(a.basis) + [[field.neg(x) for x in row] for row in b.basis],
        a.ambient_dim,
    )
    relations = kernel(stacked.transpose())
    vectors = []
    for relation in relations.basis:
        x = relation[: a.dim]
        vectors.append(
            [field.canon(sum(c * row[k] for c, row in zip(x, a.basis))) for k in range(a.ambient_dim)]
        )
    return span(field, a.ambient_dim, vectors), join


def image(m, sub=None):
    """Return m(sub), or the column space of m when sub is omitted."""
    if sub is None:
        return span(m.field, m.rows, m.columns())
    if sub.ambient_dim != m.cols:
        raise DimensionMismatchError("Subspace does not lie in the source of the map.")
    return span(m.field, m.rows, [m.apply(v) for v in sub.basis])


def annihilator(sub):
    """Return the vectors a with a·s = 0 for all s in sub."""
    if sub.dim == 0:
        return Subspace.full(sub.field, sub.ambient_dim)
    return kernel(sub.basis_matrix())


def preimage(m, sub):
    """Return {x : m·x in sub}."""
    if sub.ambient_dim != m.rows:
        raise DimensionMismatchError("Subspace does not lie in the target of the map.")
    equations = annihilator(sub)
    if equations.dim == 0:
        return Subspace.full(m.field, m.cols)
    return kernel(equations.basis_matrix() @ m)


def solve(m, b):
    """Return some x with m·x = b, or None when there is none."""
    field = m.field
    if len(b) != m.rows:
        raise DimensionMismatchError("Right-hand side has the wrong length.")
    if m.cols == 0:
        return () if not any(field.canon(x) for x in b) else None
    augmented = [row + (field.canon(x),) for row, x in zip(m.entries, b)]
    reduced, pivots = _rref_rows(field, augmented, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [field.zero] * m.cols
    for row, c in zip(reduced, pivots):
        x[c] = row[-1]
    return tuple(x)


def reduce_mod(sub, vector):
    """Return the unique representative of vector + sub vanishing on the pivots."""
    field = sub.field
    if len(vector) != sub.ambient_dim:
        raise DimensionMismatchError(
            "Vector of length %d in F^%d." % (len(vector), sub.ambient_dim)
        )
    v = [field.canon(x) for x in vector]
    for row, c in zip(sub.basis, sub.pivots):
        coef = v[c]
        if coef:
            v = [field.sub(x, field.mul(coef, y)) for x, y in zip(v, row)]
    return tuple(v)


def quotient_coordinates(sub, vector):
    """Return the coordinates of the class of vector in F^n / sub."""
    reduced = reduce_mod(sub, vector)
    return tuple(reduced[c] for c in sub.free_positions)


def quotient_section(sub, coords):
    """Return the canonical lift of quotient coordinates to F^n."""
    field = sub.field
    v = [field.zero] * sub.ambient_dim
    for c, x in zip(sub.free_positions, coords):
        v[c] = field.canon(x)
    return tuple(v)


def quotient_map(sub):
    """Return the matrix of F^n -> F^n / sub in canonical coordinates."""
    field = sub.field
    n = sub.ambient_dim
    columns = []
    for c in range(n):
        e = [field.zero] * n
        e[c] = field.one
        columns.append(quotient_coordinates(sub, e))
    return Matrix.from_columns(field, columns, n - sub.dim)


def complement_basis(u, v):
    """Return the canonical basis of v/u: rows of rref(v) whose pivots are not pivots of u."""
    _check_same_ambient(u, v)
    if not u.is_subspace_of(v):
        raise ValueError("Subspace is not contained in the larger one.")
    taken = set(u.pivots)
    return tuple(row for row, c in zip(v.basis, v.pivots) if c not in taken)


def determinant(field, rows):
    return Matrix.from_rows(field, rows, len(rows)).det()


def rank(m):
    return m.rank()


def enumerate_vectors(field, n):
    for values in itertools.product(field.elements(), repeat=n):
        yield tuple(values)


def enumerate_matrices(field, rows, cols):
    for values in itertools.product(field.elements(), repeat=rows * cols):
        yield Matrix(
            field, rows, cols, tuple(values[r * cols : (r + 1) * cols] for r in range(rows))
        )


def enumerate_subspaces(field, n, dim=None):
    """Yield every subspace of F^n (of the given dimension), already in echelon form."""
    dims = range(n + 1) if dim is None else [dim]
    for k in dims:
        for pivots in itertools.combinations(range(n), k):
            slots = [
                (r, c)
                for r, p in enumerate(pivots)
                for c in range(p + 1, n)
                if c not in pivots
            ]
            for values in itertools.product(field.elements(), repeat=len(slots)):
                rows = [[0] * n for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = 1
                for (r, c), x in zip(slots, values):
                    rows[r][c] = x
                yield Subspace(field, n, tuple(tuple(row) for row in rows))


def smith_decomposition(rows, ncols=None):
    """Return (diagonal, U, V) with U·m·V diagonal and non-negative, U and V unimodular."""
    rows = [[int(x) for x in row] for row in rows]
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if nrows == 0 or ncols == 0:
        eye = lambda n: tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
        return (), eye(nrows), eye(ncols)
    dm = DomainMatrix([[ZZ(x) for x in row] for row in rows], (nrows, ncols), ZZ)
    smf, u, v = smith_normal_decomp(dm)
    smf = [[int(x) for x in row] for row in smf.to_list()]
    u = [[int(x) for x in row] for row in u.to_list()]
    v = tuple(tuple(int(x) for x in row) for row in v.to_list())
    diagonal = [smf[i][i] for i in range(min(nrows, ncols))]
    for i, d in enumerate(diagonal):
        if d < 0:
            diagonal[i] = -d
            u[i] = [-x for x in u[i]]
    return tuple(diagonal), tuple(tuple(row) for row in u), v


def smith_normal_form(rows, ncols=None):
    """Return (invariant factors, rank) of an integer matrix.

    The factors are the nonzero diagonal entries of the Smith normal form, each
    dividing the next.
    """
    rows = [[int(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return (), 0
    dm = DomainMatrix([[ZZ(x) for x in row] for row in rows], (len(rows), ncols), ZZ)
    factors = sorted(abs(int(f)) for f in invariant_factors(dm) if int(f) != 0)
    return tuple(factors), len(factors)


def integer_inverse(rows):
    """Return the inverse of a unimodular integer matrix."""
    n = len(rows)
    if n == 0:
        return ()
    dm = DomainMatrix([[QQ(int(x)) for x in row] for row in rows], (n, n), QQ)
    out = []
    for row in dm.inv().to_list():
        values = [QQ.to_sympy(a) for a in row]
        if any(v.q != 1 for v in values):
            raise ValueError("Matrix is not unimodular.")
        out.append(tuple(int(v) for v in values))
    return tuple(out)
