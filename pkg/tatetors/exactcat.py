"""The exact category of finite dimensional vector spaces.

Admissibility checks, pullbacks of admissible monos, pushouts of admissible epis,
epi-mono factorizations and 3x3 grid completion, all with canonical middle objects
so that uniqueness statements become equalities.
"""

import logging
from dataclasses import dataclass

from .errors import DimensionMismatchError, InexactSequenceError, NotAdmissibleError
from .exactlin import (
    Field,
    Matrix,
    enumerate_matrices,
    enumerate_vectors,
    image,
    kernel,
    quotient_map,
    quotient_section,
    solve,
    span,
    subspace_meet_join,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FdSpace:
    """The space F^dim with its standard basis."""

    dim: int
    field: Field

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("Negative dimension %d." % self.dim)


@dataclass(frozen=True)
class LinMap:
    source: FdSpace
    target: FdSpace
    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if (m.rows, m.cols) != (self.target.dim, self.source.dim):
            raise DimensionMismatchError(
                "A %dx%d matrix cannot map F^%d to F^%d."
                % (m.rows, m.cols, self.source.dim, self.target.dim)
            )
        if not (m.field == self.source.field == self.target.field):
            raise DimensionMismatchError("Linear map between spaces over different fields.")

    @classmethod
    def from_rows(cls, source, target, rows):
        return cls(source, target, Matrix.from_rows(source.field, rows, source.dim))

    @classmethod
    def from_columns(cls, source, target, columns):
        return cls(source, target, Matrix.from_columns(source.field, columns, target.dim))

    @classmethod
    def identity(cls, space):
        return cls(space, space, Matrix.identity(space.field, space.dim))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, Matrix.zeros(source.field, target.dim, source.dim))

    @property
    def field(self):
        return self.source.field

    def compose(self, inner):
        """Return self ∘ inner."""
        if inner.target != self.source:
            raise DimensionMismatchError("Maps are not composable.")
        return LinMap(inner.source, self.target, self.matrix @ inner.matrix)

    def __call__(self, vector):
        return self.matrix.apply(vector)

    def rank(self):
        return self.matrix.rank()

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_surjective(self):
        return self.rank() == self.target.dim

    def is_iso(self):
        return self.source.dim == self.target.dim and self.is_injective()

    def kernel(self):
        return kernel(self.matrix)

    def image(self):
        return image(self.matrix)


@dataclass(frozen=True)
class SES:
    """A validated admissible short exact sequence a' >-> a ->> a''."""

    i: LinMap
    j: LinMap

    @property
    def sub(self):
        return self.i.source

    @property
    def middle(self):
        return self.i.target

    @property
    def quotient(self):
        return self.j.target


def diagnose_ses(i, j):
    """Return the first failed exactness condition of i, j, or None."""
    if i.target != j.source:
        raise DimensionMismatchError("Source of j is not the target of i.")
    if not i.is_injective():
        return "not-mono"
    if not j.is_surjective():
        return "not-epi"
    if not j.compose(i).matrix.is_zero():
        return "composite-nonzero"
    if i.source.dim + j.target.dim != i.target.dim:
        return "inexact-at-middle"
    return None


def check_ses(i, j):
    """Validate i, j as an admissible short exact sequence."""
    reason = diagnose_ses(i, j)
    if reason is not None:
        raise InexactSequenceError(reason)
    return SES(i, j)


def split_ses(field, a, c):
    """Return the split sequence F^a >-> F^(a+c) ->> F^c."""
    sub, middle, quot = FdSpace(a, field), FdSpace(a + c, field), FdSpace(c, field)
    n = a + c
    i = LinMap.from_rows(sub, middle, [[int(r == k) for k in range(a)] for r in range(n)])
    j = LinMap.from_rows(middle, quot, [[int(r + a == k) for k in range(n)] for r in range(c)])
    return check_ses(i, j)


def _section(map_, vector):
    x = solve(map_.matrix, vector)
    if x is None:
        raise NotAdmissibleError("not-epi", "vector outside the image")
    return x


def pullback_admissible_monos(m1, m2):
    """Return (p, into1, into2): the intersection of two admissible subobjects.

    p carries the echelon basis of im(m1) ∩ im(m2), so the construction is
    canonical.
    """
    if m1.target != m2.target:
        raise DimensionMismatchError("Monomorphisms with different targets.")
    for m in (m1, m2):
        if not m.is_injective():
            raise NotAdmissibleError("not-mono")
    meet, _ = subspace_meet_join(m1.image(), m2.image())
    p = FdSpace(meet.dim, m1.field)
    into1 = LinMap.from_columns(p, m1.source, [_section(m1, w) for w in meet.basis])
    into2 = LinMap.from_columns(p, m2.source, [_section(m2, w) for w in meet.basis])
    return p, into1, into2


def pushout_admissible_epis(e1, e2):
    """Return (q, from1, from2): the common quotient a / (ker e1 + ker e2)."""
    if e1.source != e2.source:
        raise DimensionMismatchError("Epimorphisms with different sources.")
    for e in (e1, e2):
        if not e.is_surjective():
            raise NotAdmissibleError("not-epi")
    _, relations = subspace_meet_join(e1.kernel(), e2.kernel())
    project = quotient_map(relations)
    q = FdSpace(project.rows, e1.field)

    def leg(e):
        columns = []
        for c in range(e.target.dim):
            y = [0] * e.target.dim
            y[c] = 1
            columns.append(project.apply(_section(e, y)))
        return LinMap.from_columns(e.target, q, columns)

    return q, leg(e1), leg(e2)


def is_pullback(m1, m2, p, into1, into2):
    """Check the pullback universal property against every cone from a line.

    Linear cones are determined by their values on a basis, so lines suffice.
    """
    if m1.compose(into1).matrix != m2.compose(into2).matrix:
        return False
    field = m1.field
    legs = Matrix.from_rows(
        field, into1.matrix.entries + into2.matrix.entries, p.dim
    )
    if legs.rank() != p.dim:
        return False
    d1, d2 = m1.source.dim, m2.source.dim
    for x in enumerate_vectors(field, d1 + d2):
        x1, x2 = x[:d1], x[d1:]
        if m1(x1) != m2(x2):
            continue
        if solve(legs, x1 + x2) is None:
            return False
    return True


def is_pushout(e1, e2, q, from1, from2):
    """Check the pushout universal property against every cocone to a line."""
    if from1.compose(e1).matrix != from2.compose(e2).matrix:
        return False
    field = e1.field
    # u·[from1 | from2] = [g1 | g2] for row vectors u
    legs = Matrix.from_rows(
        field,
        [r1 + r2 for r1, r2 in zip(from1.matrix.entries, from2.matrix.entries)],
        from1.source.dim + from2.source.dim,
    ).transpose()
    if legs.rank() != q.dim:
        return False
    b1, b2 = e1.target.dim, e2.target.dim
    g1_of = lambda g: Matrix.from_rows(field, [g], b1) @ e1.matrix
    g2_of = lambda g: Matrix.from_rows(field, [g], b2) @ e2.matrix
    for g in enumerate_vectors(field, b1 + b2):
        if g1_of(g[:b1]) != g2_of(g[b1:]):
            continue
        if solve(legs, g) is None:
            return False
    return True


def epi_mono_factorize(f, witness_mono, witness_epi):
    """Factor f = m ∘ e through the echelon image of f.

    f must be presented as witness_epi ∘ witness_mono.
    """
    if not witness_mono.is_injective():
        raise NotAdmissibleError("not-mono", "mono witness")
    if not witness_epi.is_surjective():
        raise NotAdmissibleError("not-epi", "epi witness")
    if witness_epi.compose(witness_mono).matrix != f.matrix:
        raise NotAdmissibleError("bad-witness", "composite differs from f")
    middle_space = f.image()
    middle = FdSpace(middle_space.dim, f.field)
    m = LinMap.from_columns(middle, f.target, middle_space.basis)
    e = LinMap.from_columns(
        f.source,
        middle,
        [middle_space.coordinates(column) for column in f.matrix.columns()],
    )
    return e, m


def factorization_comparison(e1, m1, e2, m2):
    """Return the unique iso phi with phi ∘ e1 = e2 and m2 ∘ phi = m1."""
    columns = []
    for column in m1.matrix.columns():
        x = solve(m2.matrix, column)
        if x is None:
            raise NotAdmissibleError("not-comparable", "images differ")
        columns.append(x)
    phi = LinMap.from_columns(m1.source, m2.source, columns)
    if not phi.is_iso() or phi.compose(e1).matrix != e2.matrix:
        raise NotAdmissibleError("not-comparable", "comparison is not an iso")
    return phi


def induced_cokernel_map(top, left, right, bottom):
    """Return the map a/a' -> b/b' induced by a commuting square of monos.

    The square is top: a' -> a, left: a' -> b', right: a -> b, bottom: b' -> b.
    It is cartesian iff the returned map is injective.
    """
    if right.compose(top).matrix != bottom.compose(left).matrix:
        raise NotAdmissibleError("not-commutative")
    top_image, bottom_image = top.image(), bottom.image()
    source_project = quotient_map(top_image)
    target_project = quotient_map(bottom_image)
    source = FdSpace(source_project.rows, top.field)
    target = FdSpace(target_project.rows, top.field)
    columns = []
    for c in range(source.dim):
        e = [0] * source.dim
        e[c] = 1
        columns.append(target_project.apply(right(quotient_section(top_image, e))))
    return LinMap.from_columns(source, target, columns)


def quotient_ses(mono):
    """Return the sequence a' >-> a ->> a/a' with canonical quotient coordinates."""
    project = quotient_map(mono.image())
    quot = FdSpace(project.rows, mono.field)
    return check_ses(mono, LinMap(mono.target, quot, project))


def admissible_square(top, kernel_basis):
    """Return the square a' >-> a over a'/K >-> a/K for K spanned inside a'.

    The result is (top, left, right, bottom) with vertical epis.
    """
    field = top.field
    k_sub = span(field, top.source.dim, kernel_basis)
    k_image = image(top.matrix, k_sub)
    left_project = quotient_map(k_sub)
    right_project = quotient_map(k_image)
    left = LinMap(top.source, FdSpace(left_project.rows, field), left_project)
    right = LinMap(top.target, FdSpace(right_project.rows, field), right_project)
    columns = []
    for c in range(left.target.dim):
        e = [0] * left.target.dim
        e[c] = 1
        columns.append(right(top(quotient_section(k_sub, e))))
    bottom = LinMap.from_columns(left.target, right.target, columns)
    return top, left, right, bottom


def is_cartesian_square(top, left, right, bottom):
    """Check that a' is the pullback of right and bottom via top and left."""
    if right.compose(top).matrix != bottom.compose(left).matrix:
        return False
    field = top.field
    stacked = Matrix.from_rows(
        field, top.matrix.entries + left.matrix.entries, top.source.dim
    )
    if stacked.rank() != top.source.dim:
        return False
    # dim of the fibre product a x_b b'
    pair = Matrix.from_rows(
        field,
        [r1 + tuple(field.neg(x) for x in r2) for r1, r2 in zip(right.matrix.entries, bottom.matrix.entries)],
        right.source.dim + bottom.source.dim,
    )
    return kernel(pair).dim == top.source.dim


def is_cocartesian_square(top, left, right, bottom):
    """Check that b is the pushout of top and left via right and bottom."""
    if right.compose(top).matrix != bottom.compose(left).matrix:
        return False
    field = top.field
    joint = Matrix.from_rows(
        field,
        [r1 + r2 for r1, r2 in zip(right.matrix.entries, bottom.matrix.entries)],
        right.source.dim + bottom.source.dim,
    )
    if joint.rank() != right.target.dim:
        return False
    # dim of the pushout a +_{a'} b' is dim a + dim b' - rank of (top, -left)
    relation = Matrix.from_rows(
        field,
        top.matrix.entries + tuple(tuple(field.neg(x) for x in row) for row in left.matrix.entries),
        top.source.dim,
    )
    pushout_dim = top.target.dim + left.target.dim - relation.rank()
    return pushout_dim == right.target.dim


@dataclass(frozen=True)
class Grid3x3:
    """A 3x3 diagram of spaces whose rows and columns are short exact.

    rows[r] is spaces[r][0] >-> spaces[r][1] ->> spaces[r][2]; columns[c] is
    spaces[0][c] >-> spaces[1][c] ->> spaces[2][c].
    """

    rows: tuple
    columns: tuple

    def space(self, r, c):
        if c < 2:
            return self.rows[r].i.source if c == 0 else self.rows[r].middle
        return self.rows[r].quotient

    def transpose(self):
        return Grid3x3(self.columns, self.rows)

    def squares_commute(self):
        """Check the four squares between the rows and the columns."""
        r, c = self.rows, self.columns
        checks = [
            (r[1].i.compose(c[0].i), c[1].i.compose(r[0].i)),
            (r[1].j.compose(c[1].i), c[2].i.compose(r[0].j)),
            (r[2].i.compose(c[0].j), c[1].j.compose(r[1].i)),
            (r[2].j.compose(c[1].j), c[2].j.compose(r[1].j)),
        ]
        return all(a.matrix == b.matrix for a, b in checks)


def _induced(source_sub, source_space, mono, target_sub, target_space):
    """Map source_space/source_sub -> target_space/target_sub induced by mono."""
    project = quotient_map(target_sub)
    source = FdSpace(source_space.dim - source_sub.dim, mono.field)
    target = FdSpace(target_space.dim - target_sub.dim, mono.field)
    columns = []
    for c in range(source.dim):
        e = [0] * source.dim
        e[c] = 1
        columns.append(project.apply(mono(quotient_section(source_sub, e))))
    return LinMap.from_columns(source, target, columns)


def complete_grid_3x3(top, left, corner=None):
    """Complete two admissible subobjects x¹ (top) and x₁ (left) of x to a 3x3 grid.

    The corner x¹₁ is their pullback; a supplied corner (c, into_top, into_left)
    must be cartesian.
    """
    if top.target != left.target:
        raise DimensionMismatchError("Subobjects of different spaces.")
    p, into_top, into_left = pullback_admissible_monos(top, left)
    if corner is not None:
        c, c_top, c_left = corner
        if (
            top.compose(c_top).matrix != left.compose(c_left).matrix
            or not c_top.is_injective()
            or c.dim != p.dim
            or top.compose(c_top).image() != top.compose(into_top).image()
        ):
            raise NotAdmissibleError("not-cartesian")
        p, into_top, into_left = c, c_top, c_left
    x = top.target
    top_image, left_image = top.image(), left.image()
    _, joint = subspace_meet_join(top_image, left_image)

    row0 = quotient_ses(into_top)
    col0 = quotient_ses(into_left)
    row1 = quotient_ses(left)
    col1 = quotient_ses(top)
    # row 2: x₁/x¹₁ -> x/x¹ ->> x/(x¹ + x₁)
    row2_i = _induced(into_left.image(), left.source, left, top_image, x)
    col2_i = _induced(into_top.image(), top.source, top, left_image, x)
    row2_j = _induced(top_image, x, LinMap.identity(x), joint, x)
    col2_j = _induced(left_image, x, LinMap.identity(x), joint, x)
    row2 = check_ses(row2_i, row2_j)
    col2 = check_ses(col2_i, col2_j)
    grid = Grid3x3((row0, row1, row2), (col0, col1, col2))
    if not grid.squares_commute():
        raise NotAdmissibleError("not-commutative")
    log.debug("completed grid with center dimension %d", x.dim)
    return grid


def enumerate_linmaps(source, target):
    """Yield every linear map between two spaces over a finite field."""
    for m in enumerate_matrices(source.field, target.dim, source.dim):
        yield LinMap(source, target, m)


def enumerate_monos(field, source_dim, target_dim):
    source, target = FdSpace(source_dim, field), FdSpace(target_dim, field)
    for f in enumerate_linmaps(source, target):
        if f.is_injective():
            yield f


def subspace_inclusion(sub):
    """Return the inclusion of a subspace, with its echelon basis, into its ambient space."""
    source = FdSpace(sub.dim, sub.field)
    target = FdSpace(sub.ambient_dim, sub.field)
    return LinMap.from_columns(source, target, sub.basis)
