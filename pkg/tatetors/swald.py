"""A truncated Waldhausen S-construction over finite dimensional spaces.

An object of S_n is a filtration 0 = W_0 ⊆ W_1 ⊆ ... ⊆ W_n = F^d, rigidified by
taking a_ij = W_j / W_i with the canonical complement basis of rref(W_j). Faces
work on explicit coordinates: ∂0 passes to F^d / W_1 in quotient coordinates, ∂n
restricts to W_(n-1) in pivot coordinates, and the inner faces drop a step. All
simplicial identities then hold as equalities of data.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from functools import reduce as fold

from sympy.ntheory import discrete_log, primitive_root

from .detline import det_map, lambda_ses
from .dimtorsor import AbelianGroup, DimTheory
from .errors import (
    BudgetExceededError,
    DegreeOutOfRangeError,
    DimensionMismatchError,
    InexactSequenceError,
    NotAdmissibleError,
)
from .exactcat import FdSpace, LinMap, check_ses
from .exactlin import (
    Matrix,
    Subspace,
    complement_basis,
    enumerate_subspaces,
    image,
    quotient_map,
    reduce_mod,
    span,
)
from .simptors import (
    Cochain,
    MultTorsorRep,
    SimplexRef,
    check_mult_torsor,
    validate_simplicial_set,
)

log = logging.getLogger(__name__)


def _pivots(rows):
    return [next(p for p, x in enumerate(row) if x != 0) for row in rows]


@dataclass(frozen=True)
class SObject:
    """A rigidified admissible filtration of length n of F^d.

    interior holds W_1, ..., W_(n-1); the level 0 object is the basepoint on F^0.
    """

    field: object
    n: int
    d: int
    interior: tuple = ()

    def __post_init__(self):
        if self.n < 0 or self.d < 0:
            raise ValueError("Negative level or dimension.")
        if self.n == 0 and self.d != 0:
            raise DimensionMismatchError("The level 0 object lives on the zero space.")
        if len(self.interior) != max(self.n - 1, 0):
            raise DimensionMismatchError(
                "Level %d needs %d intermediate steps." % (self.n, max(self.n - 1, 0))
            )
        full = self.full
        for k, (lower, upper) in enumerate(zip(full, full[1:])):
            if lower.ambient_dim != self.d or upper.ambient_dim != self.d:
                raise DimensionMismatchError("Filtration step outside F^%d." % self.d)
            if not lower.is_subspace_of(upper):
                raise NotAdmissibleError("not-filtration", "step %d" % k)

    @property
    def full(self):
        zero = Subspace.zero(self.field, self.d)
        if self.n == 0:
            return (zero,)
        return (zero,) + tuple(self.interior) + (Subspace.full(self.field, self.d),)

    @property
    def dims(self):
        return tuple(w.dim for w in self.full)

    @classmethod
    def from_full(cls, field, d, full):
        full = tuple(full)
        return cls(field, len(full) - 1, d, full[1:-1] if len(full) > 1 else ())

    def entry(self, i, j):
        """Return a_ij = W_j / W_i as a coordinate space."""
        full = self.full
        return FdSpace(full[j].dim - full[i].dim, self.field)

    def entry_basis(self, i, j):
        full = self.full
        return complement_basis(full[i], full[j])

    def ses(self, i, j, k):
        """Return the admissible sequence a_ij >-> a_ik ->> a_jk in canonical coordinates."""
        if not 0 <= i <= j <= k <= self.n:
            raise ValueError("Need 0 <= i <= j <= k <= %d." % self.n)
        full = self.full
        b_ij, b_ik, b_jk = (self.entry_basis(*p) for p in ((i, j), (i, k), (j, k)))
        p_ik, p_jk = _pivots(b_ik), _pivots(b_jk)
        mono_columns = []
        for row in b_ij:
            reduced = reduce_mod(full[i], row)
            mono_columns.append([reduced[p] for p in p_ik])
        epi_columns = []
        for row in b_ik:
            reduced = reduce_mod(full[j], row)
            epi_columns.append([reduced[p] for p in p_jk])
        a_ij, a_ik, a_jk = self.entry(i, j), self.entry(i, k), self.entry(j, k)
        mono = LinMap.from_columns(a_ij, a_ik, mono_columns)
        epi = LinMap.from_columns(a_ik, a_jk, epi_columns)
        return check_ses(mono, epi)

    def face(self, i):
        """Return ∂_i; ∂0 erases the top row, ∂n the last column."""
        n = self.n
        if n == 0 or not 0 <= i <= n:
            raise ValueError("Face index %d out of range at level %d." % (i, n))
        full = self.full
        field = self.field
        if i == 0:
            q = quotient_map(full[1])
            return SObject.from_full(field, q.rows, [image(q, w) for w in full[1:]])
        if i == n:
            top = full[n - 1]
            return SObject.from_full(
                field,
                top.dim,
                [span(field, top.dim, [top.coordinates(v) for v in w.basis]) for w in full[:n]],
            )
        return SObject.from_full(field, self.d, full[:i] + full[i + 1 :])

    def degeneracy(self, i):
        """Return s_i, which doubles the step W_i."""
        if not 0 <= i <= self.n:
            raise ValueError("Degeneracy index %d out of range at level %d." % (i, self.n))
        full = self.full
        return SObject.from_full(self.field, self.d, full[: i + 1] + full[i:])

    def repeats(self):
        """Return the positions i with W_i = W_(i+1), in descending order."""
        full = self.full
        return tuple(i for i in range(self.n - 1, -1, -1) if full[i] == full[i + 1])

    @property
    def is_degenerate(self):
        return bool(self.repeats())

    def core(self):
        """Return the nondegenerate object this one is an iterated degeneracy of."""
        full = self.full
        kept = [full[0]] + [full[k] for k in range(1, len(full)) if full[k] != full[k - 1]]
        return SObject.from_full(self.field, self.d, kept)

    def describe(self):
        return {
            "level": self.n,
            "dim": self.d,
            "steps": [[list(row) for row in w.basis] for w in self.interior],
        }


def s_face(x, i):
    return x.face(i)


def s_degeneracy(x, i):
    return x.degeneracy(i)


def build_s_object(field, monos=(), top=None, quotient_dims=None):
    """Build an S_n object from a chain of monos a_1 >-> a_2 >-> ... >-> a_n.

    With no monos, top gives the single object of a level 1 object; with neither,
    the basepoint is returned. quotient_dims optionally maps (i, j) to the expected
    dimension of a_ij.
    """
    monos = list(monos)
    if not monos:
        if top is None:
            return SObject(field, 0, 0)
        return SObject(field, 1, top.dim)
    for k, (m, nxt) in enumerate(zip(monos, monos[1:])):
        if m.target != nxt.source:
            raise DimensionMismatchError("Monos %d and %d are not composable." % (k, k + 1))
    for k, m in enumerate(monos):
        if m.field != field:
            raise DimensionMismatchError("Mono %d over another field." % k)
        if not m.is_injective():
            raise NotAdmissibleError("not-mono", "step %d" % (k + 1))
    d = monos[-1].target.dim
    steps = []
    for k in range(len(monos)):
        composite = fold(lambda inner, outer: outer.compose(inner), monos[k:])
        steps.append(composite.image())
    x = SObject(field, len(monos) + 1, d, tuple(steps))
    for (i, j), expected in (quotient_dims or {}).items():
        if x.entry(i, j).dim != expected:
            raise NotAdmissibleError(
                "bad-quotient", "a_%d%d has dimension %d" % (i, j, x.entry(i, j).dim)
            )
    for i in range(x.n + 1):
        for j in range(i, x.n + 1):
            for k in range(j, x.n + 1):
                try:
                    x.ses(i, j, k)
                except InexactSequenceError as e:
                    raise NotAdmissibleError("not-exact", "(%d, %d, %d): %s" % (i, j, k, e))
    return x


def _chains(field, d, length, lower):
    if length == 0:
        yield ()
        return
    for w in enumerate_subspaces(field, d):
        if lower.is_subspace_of(w):
            for rest in _chains(field, d, length - 1, w):
                yield (w,) + rest


@dataclass(frozen=True)
class SSkeleton:
    """All S_n objects with d <= dim_cap for n <= level_cap, with their incidences.

    faces[(n, k)] lists the level n - 1 indices of the faces of levels[n][k].
    """

    field: object
    dim_cap: int
    level_cap: int
    levels: tuple
    index: dict = dataclass_field(hash=False, repr=False)
    faces: dict = dataclass_field(hash=False, repr=False)
    degeneracies: dict = dataclass_field(hash=False, repr=False)

    def counts(self):
        return [len(objects) for objects in self.levels]


def enumerate_s_skeleton(field, dim_cap, level_cap, budget=20000):
    """Enumerate the S-construction on F^d, d <= dim_cap, up to level level_cap."""
    if dim_cap < 0 or level_cap < 0:
        raise ValueError("Negative caps.")
    levels = []
    total = 0
    for n in range(level_cap + 1):
        objects = []
        dims = [0] if n == 0 else range(dim_cap + 1)
        for d in dims:
            zero = Subspace.zero(field, d)
            for interior in _chains(field, d, max(n - 1, 0), zero):
                objects.append(SObject(field, n, d, interior))
                total += 1
                if total > budget:
                    raise BudgetExceededError(
                        "More than %d objects up to level %d over %s." % (budget, n, field.name)
                    )
        levels.append(tuple(objects))
        log.debug("level %d: %d objects", n, len(objects))
    index = {x: (n, k) for n, objects in enumerate(levels) for k, x in enumerate(objects)}
    faces = {}
    degeneracies = {}
    for n, objects in enumerate(levels):
        for k, x in enumerate(objects):
            if n > 0:
                faces[(n, k)] = tuple(index[x.face(i)][1] for i in range(n + 1))
            if n < level_cap:
                degeneracies[(n, k)] = tuple(index[x.degeneracy(i)][1] for i in range(n + 1))
    log.info("enumerated %d S-objects over %s", total, field.name)
    return SSkeleton(field, dim_cap, level_cap, tuple(levels), index, faces, degeneracies)


def check_simplicial_identities(skeleton):
    """Check the face-face and face-degeneracy identities on every object."""
    violations = []
    checked = 0
    for n, objects in enumerate(skeleton.levels):
        for x in objects:
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    if n >= 2:
                        checked += 1
                        if x.face(j).face(i) != x.face(i).face(j - 1):
                            violations.append({"object": x.describe(), "identity": "dd", "i": i, "j": j})
            if n >= skeleton.level_cap:
                continue
            for j in range(n + 1):
                y = x.degeneracy(j)
                for i in range(n + 2):
                    checked += 1
                    if i < j:
                        expected = x.face(i).degeneracy(j - 1)
                    elif i in (j, j + 1):
                        expected = x
                    else:
                        expected = x.face(i - 1).degeneracy(j)
                    if y.face(i) != expected:
                        violations.append({"object": x.describe(), "identity": "ds", "i": i, "j": j})
    return {
        "status": "pass" if not violations else "fail",
        "checked": checked,
        "violations": violations,
    }


def _simplex_id(skeleton, x):
    n, k = skeleton.index[x]
    return "%d:%d" % (n, k)


def _simplex_ref(skeleton, x):
    return SimplexRef(_simplex_id(skeleton, x.core()), x.repeats())


def skeleton_as_simplicial_set(skeleton, dim_cap=None):
    """Return the nondegenerate part of the skeleton as a SimplicialSet.

    Ids are "level:index"; a degenerate face refers to its core with the repeated
    steps as degeneracy operators.
    """
    top = min(skeleton.level_cap, 5) if dim_cap is None else dim_cap
    simplices = []
    faces = {}
    for n, objects in enumerate(skeleton.levels[: top + 1]):
        ids = []
        for x in objects:
            if x.is_degenerate:
                continue
            ids.append(_simplex_id(skeleton, x))
            if n > 0:
                faces[ids[-1]] = [_simplex_ref(skeleton, x.face(i)) for i in range(n + 1)]
        simplices.append(ids)
    return validate_simplicial_set(simplices, faces, top)


@dataclass(frozen=True)
class DeterminantLambda:
    """λ on S_2 objects from the determinant, in canonical bases.

    fault, when set, is an S_2 object whose λ gets its sign flipped.
    """

    field: object
    graded: bool = True
    fault: object = None

    def __call__(self, y):
        if y.n != 2:
            raise DimensionMismatchError("λ is defined on level 2 objects.")
        scalar = lambda_ses(y.ses(0, 1, 2)).scalar
        if self.fault is not None and y == self.fault:
            scalar = self.field.neg(scalar)
        return scalar

    def units_group(self):
        """Return Z/(q-1), the unit group of the field, and a discrete logarithm."""
        q = self.field.p
        if not q:
            raise ValueError("Discrete logarithms need a finite field.")
        group = AbelianGroup.cyclic(q - 1)
        if q == 2:
            return group, lambda x: group.element([])
        g = primitive_root(q)
        return group, lambda x: group.element([discrete_log(q, int(x), g)])


def _dim_check(skeleton, chi):
    violations = []
    for y in skeleton.levels[2]:
        a01, a02, a12 = y.entry(0, 1).dim, y.entry(0, 2).dim, y.entry(1, 2).dim
        if chi(a02) != chi(a01) + chi(a12):
            violations.append({"object": y.describe()})
    complex_ = skeleton_as_simplicial_set(skeleton, 2)
    alpha = {
        s: chi(skeleton.levels[1][int(s.split(":")[1])].d).coords
        for s in complex_.nondegenerate(1)
    }
    torsor = MultTorsorRep.from_alpha(Cochain.from_coords(complex_, 1, chi.group, alpha))
    return violations, check_mult_torsor(torsor), len(skeleton.levels[2])


def _det_check(skeleton, lam):
    violations = []
    for x in skeleton.levels[3]:
        lhs = lam.field.mul(lam(x.face(2)), lam(x.face(0)))
        rhs = lam.field.mul(lam(x.face(1)), lam(x.face(3)))
        if lhs != rhs:
            violations.append({"object": x.describe(), "lhs": lhs, "rhs": rhs})
    group, dlog = lam.units_group()
    complex_ = skeleton_as_simplicial_set(skeleton, 3)
    alpha = {
        s: dlog(lam(skeleton.levels[2][int(s.split(":")[1])])).coords
        for s in complex_.nondegenerate(2)
    }
    torsor = MultTorsorRep.from_alpha(Cochain.from_coords(complex_, 2, group, alpha))
    return violations, check_mult_torsor(torsor), len(skeleton.levels[3])


def verify_theory_as_torsor(skeleton, theory):
    """Verify a dimension theory as a 0-torsor or a determinant λ as a 1-torsor on S.

    Dimension theories are checked for additivity on level 2, determinants for the
    two-path identity on level 3; both are also run through check_mult_torsor.
    """
    if skeleton.level_cap < 3:
        raise DegreeOutOfRangeError("Torsor verification needs level cap 3.")
    if isinstance(theory, DimTheory):
        kind = "dim"
        violations, torsor_report, checked = _dim_check(skeleton, theory)
    elif isinstance(theory, DeterminantLambda):
        kind = "det"
        violations, torsor_report, checked = _det_check(skeleton, theory)
    else:
        raise TypeError("Unsupported theory %r." % (theory,))
    passed = not violations and torsor_report["status"] == "pass"
    log.info("%s theory on the S-skeleton: %s", kind, "pass" if passed else "fail")
    return {
        "status": "pass" if passed else "fail",
        "theory": kind,
        "checked": checked,
        "violations": violations,
        "torsor": torsor_report,
    }


def _induced_det(field, source_rows, target_rows, g, lower=None):
    """Return det of the map source span -> target span induced by g, modulo lower."""
    if not source_rows:
        return field.one
    pivots = _pivots(target_rows)
    columns = []
    for row in source_rows:
        image_row = g.apply(row)
        if lower is not None:
            image_row = reduce_mod(lower, image_row)
        columns.append([image_row[p] for p in pivots])
    return Matrix.from_columns(field, columns, len(pivots)).det()


def check_naturality(skeleton, lam, rng, samples=20):
    """Check λ_y' ∘ (det f' ⊗ det f'') = det g ∘ λ_y on sampled isomorphisms g.

    The samples are random invertible matrices acting on level 2 objects; the check
    is not exhaustive over all isomorphisms of arrays.
    """
    field = lam.field
    objects = [y for y in skeleton.levels[2] if y.d > 0]
    violations = []
    for _ in range(samples if objects else 0):
        y = objects[rng.randrange(len(objects))]
        while True:
            g = Matrix.from_rows(field, [[field.random(rng) for _ in range(y.d)] for _ in range(y.d)])
            if g.rank() == y.d:
                break
        moved = SObject(field, 2, y.d, (image(g, y.interior[0]),))
        sub_det = _induced_det(field, y.interior[0].basis, moved.interior[0].basis, g)
        quot_det = _induced_det(
            field, y.entry_basis(1, 2), moved.entry_basis(1, 2), g, moved.interior[0]
        )
        space = FdSpace(y.d, field)
        lhs = field.mul(field.mul(lam(moved), sub_det), quot_det)
        rhs = field.mul(det_map(LinMap(space, space, g)).scalar, lam(y))
        if lhs != rhs:
            violations.append({"object": y.describe(), "image": moved.describe()})
    return {
        "status": "pass" if not violations else "fail",
        "checked": samples if objects else 0,
        "violations": violations,
    }
