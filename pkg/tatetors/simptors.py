"""Finite simplicial sets, normalized cochains and multiplicative torsors of degree n.

A simplex is referred to by a nondegenerate base id and a sequence of degeneracy
operators in Eilenberg-Zilber normal form, so degenerate simplices never have to be
stored. Torsors are kept in trivialized form: the torsor on an n-simplex is G acting
on itself, a morphism is the image of the anchor, and pasting reduces to addition
with the factors tracked as multisets.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations
from math import gcd

from .dimtorsor import AbelianGroup
from .errors import (
    DegreeOutOfRangeError,
    DimensionMismatchError,
    InvalidGerbeError,
    InvalidReferenceError,
    SimplicialIdentityError,
    VerificationError,
)
from .exactlin import integer_inverse, smith_decomposition

log = logging.getLogger(__name__)

MAX_DIM_CAP = 5

_DEGENERATE = re.compile(r"s(\d+)\((.+)\)")


@dataclass(frozen=True)
class SimplexRef:
    """The simplex s_{ops[0]} s_{ops[1]} ... (base), with ops strictly decreasing."""

    base: str
    ops: tuple = ()

    @classmethod
    def parse(cls, text):
        """Parse "id" or nested degeneracies like "s1(s0(v))"."""
        text = text.strip()
        match = _DEGENERATE.fullmatch(text)
        if match is None:
            if not text or "(" in text or ")" in text:
                raise ValueError('Invalid simplex reference "%s".' % text)
            return cls(text)
        return degenerate(int(match[1]), cls.parse(match[2]))

    @property
    def is_degenerate(self):
        return bool(self.ops)

    def __str__(self):
        text = self.base
        for j in reversed(self.ops):
            text = "s%d(%s)" % (j, text)
        return text


def degenerate(j, ref):
    """Return s_j(ref) in normal form."""
    if not ref.ops or j > ref.ops[0]:
        return SimplexRef(ref.base, (j,) + ref.ops)
    inner = degenerate(j, SimplexRef(ref.base, ref.ops[1:]))
    return SimplexRef(inner.base, (ref.ops[0] + 1,) + inner.ops)


@dataclass(frozen=True)
class SimplicialSet:
    """A finite simplicial set given by its nondegenerate simplices.

    simplices[n] lists the ids of dimension n; faces maps an id of dimension n > 0
    to its n + 1 faces as SimplexRefs.
    """

    dim_cap: int
    simplices: tuple
    faces: dict = dataclass_field(hash=False)

    def nondegenerate(self, n):
        if n < 0 or n >= len(self.simplices):
            return ()
        return self.simplices[n]

    def dim_of(self, simplex_id):
        for n, ids in enumerate(self.simplices):
            if simplex_id in ids:
                return n
        raise InvalidReferenceError('Unknown simplex "%s".' % simplex_id)

    def ref_dim(self, ref):
        return self.dim_of(ref.base) + len(ref.ops)

    @property
    def dim(self):
        for n in range(len(self.simplices) - 1, -1, -1):
            if self.simplices[n]:
                return n
        return -1

    def face(self, ref, i):
        """Return ∂_i of a possibly degenerate simplex."""
        if isinstance(ref, str):
            ref = SimplexRef(ref)
        if not ref.ops:
            return self.faces[ref.base][i]
        j = ref.ops[0]
        inner = SimplexRef(ref.base, ref.ops[1:])
        if i in (j, j + 1):
            return inner
        if i < j:
            return degenerate(j - 1, self.face(inner, i))
        return degenerate(j, self.face(inner, i - 1))

    def face_refs(self, ref):
        if isinstance(ref, str):
            ref = SimplexRef(ref)
        return [self.face(ref, i) for i in range(self.ref_dim(ref) + 1)]


def validate_simplicial_set(simplices, faces, dim_cap=MAX_DIM_CAP):
    """Validate raw simplicial data and return a SimplicialSet.

    simplices is a list of id lists per dimension; faces maps ids to lists of face
    references (SimplexRef or their string form). Dangling references raise
    InvalidReferenceError, a failed face identity raises SimplicialIdentityError.
    """
    if not 0 <= dim_cap <= MAX_DIM_CAP:
        raise DegreeOutOfRangeError("Dimension cap %d outside 0..%d." % (dim_cap, MAX_DIM_CAP))
    simplices = tuple(tuple(ids) for ids in simplices)
    while simplices and not simplices[-1]:
        simplices = simplices[:-1]
    if len(simplices) - 1 > dim_cap:
        raise DegreeOutOfRangeError(
            "Simplices of dimension %d above the cap %d." % (len(simplices) - 1, dim_cap)
        )
    seen = {}
    for n, ids in enumerate(simplices):
        for simplex_id in ids:
            if simplex_id in seen:
                raise InvalidReferenceError('Duplicate simplex id "%s".' % simplex_id)
            seen[simplex_id] = n
    table = {}
    for simplex_id, n in seen.items():
        raw = faces.get(simplex_id, ())
        refs = tuple(r if isinstance(r, SimplexRef) else SimplexRef.parse(r) for r in raw)
        expected = n + 1 if n > 0 else 0
        if len(refs) != expected:
            raise InvalidReferenceError(
                'Simplex "%s" of dimension %d has %d faces.' % (simplex_id, n, len(refs))
            )
        for ref in refs:
            if ref.base not in seen:
                raise InvalidReferenceError(
                    'Simplex "%s" refers to unknown simplex "%s".' % (simplex_id, ref.base)
                )
            if seen[ref.base] + len(ref.ops) != n - 1:
                raise InvalidReferenceError(
                    'Face %s of "%s" has the wrong dimension.' % (ref, simplex_id)
                )
            if ref.ops and ref.ops[0] > seen[ref.base] + len(ref.ops) - 1:
                raise InvalidReferenceError("Degeneracy index out of range in %s." % ref)
        if refs:
            table[simplex_id] = refs
    for simplex_id in faces:
        if simplex_id not in seen:
            raise InvalidReferenceError('Faces given for unknown simplex "%s".' % simplex_id)
    complex_ = SimplicialSet(dim_cap, simplices, table)
    for n in range(2, len(simplices)):
        for simplex_id in simplices[n]:
            x = SimplexRef(simplex_id)
            for i, j in combinations(range(n + 1), 2):
                left = complex_.face(complex_.face(x, j), i)
                right = complex_.face(complex_.face(x, i), j - 1)
                if left != right:
                    raise SimplicialIdentityError(simplex_id, i, j)
    log.debug(
        "validated simplicial set with %s simplices",
        "/".join(str(len(ids)) for ids in simplices),
    )
    return complex_


def _vertex_id(vertices):
    return "".join(str(v) for v in vertices)


def _simplex_faces(vertices):
    return [
        _vertex_id(vertices[:i] + vertices[i + 1 :]) for i in range(len(vertices))
    ]


def _from_vertex_sets(m, top, dim_cap):
    simplices = []
    faces = {}
    for n in range(top + 1):
        ids = []
        for vertices in combinations(range(m + 1), n + 1):
            ids.append(_vertex_id(vertices))
            if n > 0:
                faces[_vertex_id(vertices)] = _simplex_faces(vertices)
        simplices.append(ids)
    return validate_simplicial_set(simplices, faces, dim_cap)


def standard_simplex(m, dim_cap=MAX_DIM_CAP):
    """Return Δ^m; simplices are named by their vertex strings, like "012"."""
    return _from_vertex_sets(m, m, dim_cap)


def simplex_boundary(m, dim_cap=MAX_DIM_CAP):
    """Return ∂Δ^m, a sphere of dimension m - 1."""
    if m < 1:
        raise ValueError("The boundary of Δ^%d is empty." % m)
    return _from_vertex_sets(m, m - 1, dim_cap)


def minimal_torus(dim_cap=MAX_DIM_CAP):
    """Return the torus with one vertex, three edges and two triangles."""
    return validate_simplicial_set(
        [["v"], ["a", "b", "c"], ["U", "L"]],
        {
            "a": ["v", "v"],
            "b": ["v", "v"],
            "c": ["v", "v"],
            "U": ["b", "c", "a"],
            "L": ["a", "c", "b"],
        },
        dim_cap,
    )


def projective_plane(dim_cap=MAX_DIM_CAP):
    """Return the real projective plane with two vertices, three edges and two triangles."""
    return validate_simplicial_set(
        [["v", "w"], ["a", "b", "c"], ["T1", "T2"]],
        {
            "a": ["w", "v"],
            "b": ["w", "v"],
            "c": ["w", "w"],
            "T1": ["c", "b", "a"],
            "T2": ["c", "a", "b"],
        },
        dim_cap,
    )


@dataclass(frozen=True)
class Cochain:
    """A normalized G-valued cochain; values maps every nondegenerate n-simplex id."""

    complex: SimplicialSet
    degree: int
    group: AbelianGroup
    values: dict = dataclass_field(hash=False)

    def __post_init__(self):
        ids = set(self.complex.nondegenerate(self.degree))
        if set(self.values) != ids:
            missing = sorted(ids - set(self.values))
            extra = sorted(set(self.values) - ids)
            raise InvalidReferenceError(
                "Cochain of degree %d: missing %s, unknown %s." % (self.degree, missing, extra)
            )
        for value in self.values.values():
            if value.group != self.group:
                raise DimensionMismatchError("Cochain value outside %s." % self.group.name)

    @classmethod
    def zero(cls, complex_, degree, group):
        return cls(complex_, degree, group, {s: group.zero for s in complex_.nondegenerate(degree)})

    @classmethod
    def from_coords(cls, complex_, degree, group, coords):
        """Build a cochain from a map id -> coordinate list; missing ids are zero."""
        values = {s: group.zero for s in complex_.nondegenerate(degree)}
        for s, c in coords.items():
            if s not in values:
                raise InvalidReferenceError('No %d-simplex "%s".' % (degree, s))
            values[s] = group.element(c)
        return cls(complex_, degree, group, values)

    def __call__(self, ref):
        if isinstance(ref, str):
            ref = SimplexRef(ref)
        if ref.ops:
            return self.group.zero
        return self.values[ref.base]

    def _check(self, other):
        if (self.complex, self.degree, self.group) != (other.complex, other.degree, other.group):
            raise DimensionMismatchError("Cochains of different shape.")

    def __add__(self, other):
        self._check(other)
        return Cochain(
            self.complex, self.degree, self.group, {s: v + other.values[s] for s, v in self.values.items()}
        )

    def __sub__(self, other):
        self._check(other)
        return Cochain(
            self.complex, self.degree, self.group, {s: v - other.values[s] for s, v in self.values.items()}
        )

    def __neg__(self):
        return Cochain(self.complex, self.degree, self.group, {s: -v for s, v in self.values.items()})

    def is_zero(self):
        return all(v.is_zero() for v in self.values.values())

    def component(self, k):
        """Return the integer vector of coordinate k, in the order of the simplex ids."""
        return [self.values[s].coords[k] for s in self.complex.nondegenerate(self.degree)]


def coboundary(c):
    """Return δc with (δc)(x) = Σ (-1)^i c(∂_i x)."""
    complex_ = c.complex
    n = c.degree + 1
    if n > complex_.dim_cap:
        raise DegreeOutOfRangeError("Coboundary into degree %d above the cap." % n)
    values = {}
    for x in complex_.nondegenerate(n):
        total = c.group.zero
        for i, face in enumerate(complex_.faces[x]):
            total = total + c(face) * (-1) ** i
        values[x] = total
    return Cochain(complex_, n, c.group, values)


@dataclass(frozen=True)
class FormalSum:
    """An element of the free abelian group on symbols; terms are (symbol, coefficient)."""

    terms: tuple = ()

    @classmethod
    def from_counts(cls, counts):
        return cls(tuple(sorted((s, c) for s, c in counts.items() if c)))

    @classmethod
    def symbol(cls, name):
        return cls(((name, 1),))

    def _counts(self):
        return Counter(dict(self.terms))

    def __add__(self, other):
        counts = self._counts()
        for s, c in other.terms:
            counts[s] += c
        return FormalSum.from_counts(counts)

    def __neg__(self):
        return FormalSum(tuple((s, -c) for s, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return FormalSum.from_counts({s: k * c for s, c in self.terms})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join("%d*%s" % (c, s) for s, c in self.terms)


@dataclass(frozen=True)
class Morph:
    """A trivialized torsor morphism ⊗ T_source -> ⊗ T_target.

    source and target are multisets of nondegenerate simplex ids; value is the image
    of the tensor of anchors, measured against the tensor of target anchors.
    """

    source: Counter
    target: Counter
    value: object

    def then(self, after):
        """Return after ∘ self, extending both by identities on the unused factors."""
        common = self.target & after.source
        return Morph(
            self.source + (after.source - common),
            (self.target - common) + after.target,
            self.value + after.value,
        )


def _split_faces(complex_, ref):
    plus, minus = Counter(), Counter()
    for i, face in enumerate(complex_.face_refs(ref)):
        (plus if i % 2 == 0 else minus)[str(face)] += 1
    return plus, minus


def street_boundaries(complex_, sigma):
    """Return ∂+, ∂-, and the four second-order boundaries ∂xy = x-faces of y-faces.

    The second-order multisets satisfy ∂++ ⊎ ∂-- = ∂+- ⊎ ∂-+.
    """
    ref = sigma if isinstance(sigma, SimplexRef) else SimplexRef.parse(sigma)
    if complex_.ref_dim(ref) < 2:
        raise DegreeOutOfRangeError("Second-order boundaries need a simplex of dimension 2.")
    first = {"+": Counter(), "-": Counter()}
    second = {key: Counter() for key in ("++", "+-", "-+", "--")}
    for j, face in enumerate(complex_.face_refs(ref)):
        y = "+" if j % 2 == 0 else "-"
        first[y][str(face)] += 1
        plus, minus = _split_faces(complex_, face)
        second["+" + y] += plus
        second["-" + y] += minus
    return {
        "+": first["+"],
        "-": first["-"],
        "++": second["++"],
        "+-": second["+-"],
        "-+": second["-+"],
        "--": second["--"],
    }


def street_identity_holds(boundaries):
    return boundaries["++"] + boundaries["--"] == boundaries["+-"] + boundaries["-+"]


def _morph(complex_, ref, value):
    plus, minus = Counter(), Counter()
    for i, face in enumerate(complex_.face_refs(ref)):
        if not face.ops:
            (plus if i % 2 == 0 else minus)[face.base] += 1
    return Morph(plus, minus, value)


def paste(complex_, tau, values, zero):
    """Return the even and odd pastings (E, O) over the faces of tau.

    values(face) is the morphism value of a face of tau. E applies ∂0, ∂2, ... in
    ascending order; O applies the highest odd face first and ∂1 last.
    """
    ref = tau if isinstance(tau, SimplexRef) else SimplexRef(tau)
    faces = complex_.face_refs(ref)
    morphs = [_morph(complex_, face, values(face)) for face in faces]
    even = [morphs[i] for i in range(0, len(morphs), 2)]
    odd = [morphs[i] for i in range(len(morphs) - 1, 0, -1) if i % 2 == 1]
    results = []
    for chain in (even, odd):
        total = Morph(Counter(), Counter(), zero)
        for m in chain:
            total = total.then(m)
        results.append(total)
    return results[0], results[1]


@dataclass(frozen=True)
class MultTorsorRep:
    """A multiplicative G-torsor of degree n in trivialized form.

    anchors is a cochain of degree n (base points of the torsors on n-simplices),
    alpha a cochain of degree n + 1 (the morphisms on (n+1)-simplices measured
    against the anchors).
    """

    complex: SimplicialSet
    degree: int
    group: AbelianGroup
    anchors: Cochain
    alpha: Cochain

    def __post_init__(self):
        if self.degree < 0 or self.degree + 2 > self.complex.dim_cap:
            raise DegreeOutOfRangeError(
                "Torsor degree %d needs dimension cap %d." % (self.degree, self.degree + 2)
            )
        if (self.anchors.degree, self.alpha.degree) != (self.degree, self.degree + 1):
            raise DimensionMismatchError("Anchor or morphism cochain of the wrong degree.")
        for c in (self.anchors, self.alpha):
            if c.complex != self.complex or c.group != self.group:
                raise DimensionMismatchError("Cochain over another complex or group.")

    @classmethod
    def trivial(cls, complex_, degree, group):
        return cls(
            complex_,
            degree,
            group,
            Cochain.zero(complex_, degree, group),
            Cochain.zero(complex_, degree + 1, group),
        )

    @classmethod
    def from_alpha(cls, alpha):
        complex_, group = alpha.complex, alpha.group
        return cls(complex_, alpha.degree - 1, group, Cochain.zero(complex_, alpha.degree - 1, group), alpha)


def raw_cochain(t):
    """Return the anchor-free translation cochain alpha - δ anchors."""
    return t.alpha - coboundary(t.anchors)


def reanchor(t, shift):
    """Move every anchor by shift; the morphism values follow, the torsor is unchanged."""
    return MultTorsorRep(t.complex, t.degree, t.group, t.anchors + shift, t.alpha + coboundary(shift))


def evaluate_even_odd(t, tau):
    """Return (E_τ, O_τ) for an (n+2)-simplex tau by executing the pasting rule."""
    ref = tau if isinstance(tau, SimplexRef) else SimplexRef(tau)
    if t.complex.ref_dim(ref) != t.degree + 2:
        raise DimensionMismatchError("Simplex %s has the wrong dimension." % ref)
    even, odd = paste(t.complex, ref, t.alpha, t.group.zero)
    if even.source + odd.target != odd.source + even.target:
        raise VerificationError("Even and odd pastings of %s have different boundaries." % ref)
    return even.value, odd.value


def symbolic_even_odd(complex_, tau):
    """Return (E - O, Σ (-1)^i α[∂_i τ]) as formal sums of the face symbols."""
    ref = tau if isinstance(tau, SimplexRef) else SimplexRef(tau)

    def symbol(face):
        return FormalSum() if face.ops else FormalSum.symbol("α[%s]" % face.base)

    even, odd = paste(complex_, ref, symbol, FormalSum())
    expected = FormalSum()
    for i, face in enumerate(complex_.face_refs(ref)):
        expected = expected + symbol(face) * (-1) ** i
    return even.value - odd.value, expected


def check_mult_torsor(t):
    """Check E_τ = O_τ on every (n+2)-simplex and report the violations."""
    violations = []
    taus = t.complex.nondegenerate(t.degree + 2)
    for tau in taus:
        even, odd = evaluate_even_odd(t, tau)
        if even != odd:
            violations.append({"simplex": tau, "difference": list((even - odd).coords)})
    log.debug("checked %d simplices, %d violations", len(taus), len(violations))
    return {
        "status": "pass" if not violations else "fail",
        "degree": t.degree,
        "group": t.group.name,
        "checked": len(taus),
        "violations": violations,
    }


def coboundary_matrix(complex_, n):
    """Return the integer matrix of δ: C^n -> C^(n+1) on nondegenerate simplices."""
    rows = complex_.nondegenerate(n + 1)
    cols = complex_.nondegenerate(n)
    index = {s: k for k, s in enumerate(cols)}
    matrix = []
    for x in rows:
        row = [0] * len(cols)
        for i, face in enumerate(complex_.faces[x]):
            if not face.ops:
                row[index[face.base]] += (-1) ** i
        matrix.append(row)
    return matrix


def _mat_vec(matrix, vector):
    return [sum(a * x for a, x in zip(row, vector)) for row in matrix]


@dataclass(frozen=True)
class _Part:
    """H^n with coefficients in one cyclic factor Z/modulus (Z when modulus is 0)."""

    modulus: int
    generators: tuple
    cocycle_inverse: tuple
    cocycle_basis: tuple
    transform: tuple
    transform_inverse: tuple
    kept: tuple
    factors: tuple

    def _reduce(self, x):
        return x % self.modulus if self.modulus else x

    def class_coordinates(self, component):
        y = [self._reduce(v) for v in _mat_vec(self.cocycle_inverse, component)]
        c = [y[k] // m for k, m, _ in self.generators]
        z = _mat_vec(self.transform, c)
        return [z[i] % f if f else z[i] for i, f in zip(self.kept, self.factors)]

    def representative(self, position):
        c = [row[self.kept[position]] for row in self.transform_inverse]
        size = len(self.cocycle_basis)
        x = [0] * size
        for coef, (k, m, _) in zip(c, self.generators):
            for r in range(size):
                x[r] += coef * m * self.cocycle_basis[r][k]
        return [self._reduce(v) for v in x]


def _cyclic_part(complex_, n, d):
    size = len(complex_.nondegenerate(n))
    previous = len(complex_.nondegenerate(n - 1))
    a = coboundary_matrix(complex_, n - 1) if n > 0 else [[] for _ in range(size)]
    b = coboundary_matrix(complex_, n)
    diag_b, _, v_b = smith_decomposition(b, size)
    generators = []
    for k in range(size):
        s = diag_b[k] if k < len(diag_b) else 0
        if d == 0:
            if s == 0:
                generators.append((k, 1, 0))
        else:
            g = gcd(s, d)
            if g != 1:
                generators.append((k, d // g, g))
    v_inv = integer_inverse(v_b)
    relations = []
    for p in range(previous):
        w = _mat_vec(v_inv, [row[p] for row in a])
        relations.append([w[k] // m for k, m, _ in generators])
    for r, (_, _, order) in enumerate(generators):
        if order:
            relations.append([order if q == r else 0 for q in range(len(generators))])
    count = len(generators)
    matrix = [[col[r] for col in relations] for r in range(count)]
    diag_r, u_r, _ = smith_decomposition(matrix, len(relations))
    factors = [diag_r[i] if i < len(diag_r) else 0 for i in range(count)]
    transform = [list(row) for row in u_r]
    for i, f in enumerate(factors):
        if f == 0:
            lead = next((x for x in transform[i] if x), 0)
            if lead < 0:
                transform[i] = [-x for x in transform[i]]
    kept = tuple(i for i, f in enumerate(factors) if f != 1)
    return _Part(
        d,
        tuple(generators),
        v_inv,
        v_b,
        tuple(tuple(row) for row in transform),
        integer_inverse(transform),
        kept,
        tuple(factors[i] for i in kept),
    )


@dataclass(frozen=True)
class Cohomology:
    """The group H^n(complex, G) with representative cocycles of its generators."""

    complex: SimplicialSet
    degree: int
    coefficients: AbelianGroup
    group: AbelianGroup
    representatives: tuple
    parts: tuple = dataclass_field(repr=False)

    def class_of(self, cocycle):
        """Return the class of a cocycle as an element of self.group."""
        if cocycle.degree != self.degree or cocycle.group != self.coefficients:
            raise DimensionMismatchError("Cochain of another degree or group.")
        if not coboundary(cocycle).is_zero():
            raise VerificationError("Cochain is not a cocycle.")
        coords = []
        for k, part in enumerate(self.parts):
            coords += part.class_coordinates(cocycle.component(k))
        return self.group.element(coords)


def cohomology(complex_, n, group):
    """Compute H^n(complex, G) through Smith normal forms of the coboundary matrices."""
    if n < 0 or n > complex_.dim_cap - 1:
        raise DegreeOutOfRangeError(
            "Degree %d outside 0..%d for dimension cap %d." % (n, complex_.dim_cap - 1, complex_.dim_cap)
        )
    parts = tuple(_cyclic_part(complex_, n, d) for d in group.factors)
    result = AbelianGroup(tuple(f for part in parts for f in part.factors))
    ids = complex_.nondegenerate(n)
    representatives = []
    for k, part in enumerate(parts):
        for position in range(len(part.kept)):
            vector = part.representative(position)
            coords = {
                s: [vector[r] if q == k else 0 for q in range(len(group.factors))]
                for r, s in enumerate(ids)
            }
            representatives.append(Cochain.from_coords(complex_, n, group, coords))
    log.debug("H^%d with %s coefficients is %s", n, group.name, result.name)
    return Cohomology(complex_, n, group, result, tuple(representatives), parts)


def classify_torsor(t):
    """Return the class of a multiplicative torsor in H^(n+1)."""
    raw = raw_cochain(t)
    if not coboundary(raw).is_zero():
        raise VerificationError("Torsor data violates the cocycle condition.")
    return cohomology(t.complex, t.degree + 1, t.group).class_of(raw)


def _solve_cyclic(s, value, d):
    if d == 0:
        if s == 0:
            return 0 if value == 0 else None
        return value // s if value % s == 0 else None
    g = gcd(s, d)
    if value % g:
        return None
    reduced = d // g
    if reduced == 1:
        return 0
    return (value // g) * pow((s // g) % reduced, -1, reduced) % reduced


def solve_coboundary(target):
    """Return a cochain x with δx = target, or None when target is not a coboundary."""
    complex_, group = target.complex, target.group
    n = target.degree - 1
    if n < 0:
        raise DegreeOutOfRangeError("No cochains below degree 0.")
    a = coboundary_matrix(complex_, n)
    cols = len(complex_.nondegenerate(n))
    diag, u, v = smith_decomposition(a, cols)
    coords = {s: [0] * len(group.factors) for s in complex_.nondegenerate(n)}
    for k, d in enumerate(group.factors):
        beta = _mat_vec(u, target.component(k))
        y = [0] * cols
        for i, value in enumerate(beta):
            s = diag[i] if i < len(diag) else 0
            solution = _solve_cyclic(s, value, d)
            if solution is None:
                return None
            if i < cols:
                y[i] = solution
        for r, value in enumerate(_mat_vec(v, y)):
            coords[complex_.nondegenerate(n)[r]][k] = value
    x = Cochain.from_coords(complex_, n, group, coords)
    if coboundary(x) != target:
        raise VerificationError("Coboundary solve produced a wrong transporter.")
    return x


def iso_decide(t1, t2):
    """Return a transporter x with δx = raw(t1) - raw(t2), or None when t1 ≇ t2."""
    if (t1.complex, t1.degree, t1.group) != (t2.complex, t2.degree, t2.group):
        raise DimensionMismatchError("Torsors over different complexes, degrees or groups.")
    return solve_coboundary(raw_cochain(t1) - raw_cochain(t2))


@dataclass(frozen=True)
class GerbeRep:
    """A multiplicative G-gerbe in trivialized form.

    hom_anchors picks a base point of each morphism torsor on a 2-simplex; beta is
    the associativity datum on 3-simplices, measured against those base points.
    """

    complex: SimplicialSet
    group: AbelianGroup
    hom_anchors: Cochain
    beta: Cochain

    def __post_init__(self):
        if self.complex.dim_cap < 4:
            raise DegreeOutOfRangeError("Gerbe data needs dimension cap 4.")
        if (self.hom_anchors.degree, self.beta.degree) != (2, 3):
            raise DimensionMismatchError("Gerbe data needs cochains of degree 2 and 3.")
        for c in (self.hom_anchors, self.beta):
            if c.complex != self.complex or c.group != self.group:
                raise DimensionMismatchError("Cochain over another complex or group.")
        defect = coboundary(self.beta)
        if not defect.is_zero():
            bad = sorted(s for s, v in defect.values.items() if not v.is_zero())
            raise InvalidGerbeError("Associativity fails on 4-simplices %s." % bad)


def gerbe_to_torsor(g):
    """Return the degree-2 torsor of the morphism torsors of a gerbe."""
    alpha = g.beta + coboundary(g.hom_anchors)
    t = MultTorsorRep(g.complex, 2, g.group, g.hom_anchors, alpha)
    log.debug("gerbe on %d 3-simplices turned into a degree 2 torsor", len(alpha.values))
    return t
