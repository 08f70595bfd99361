"""Dimension theories, relative dimension theories on lattices and their torsor structure."""

import itertools
import logging
import re
from dataclasses import dataclass

from .errors import DimensionMismatchError, NotAdmissibleError, VerificationError
from .tate import (
    lift_lattice,
    project_lattice,
    relative_index,
    standard_lattice,
    sub_image_lattice,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianGroup:
    """The group ⊕ Z/d_k; a factor 0 stands for Z."""

    factors: tuple = ()

    def __post_init__(self):
        for d in self.factors:
            if d < 0 or d == 1:
                raise ValueError("Invalid cyclic factor %d." % d)

    @classmethod
    def parse(cls, text):
        """Parse a presentation like "Z", "Z/6" or "Z+Z/2"; "0" is the trivial group."""
        text = text.strip()
        if text == "0":
            return cls(())
        factors = []
        for item in text.split("+"):
            match = re.fullmatch(r"\s*Z(?:/(\d+))?\s*", item)
            if not match:
                raise ValueError('Invalid group presentation "%s".' % text)
            d = int(match[1]) if match[1] else 0
            if d == 1:
                continue
            factors.append(d)
        return cls(tuple(factors))

    @classmethod
    def integers(cls):
        return cls((0,))

    @classmethod
    def cyclic(cls, d):
        return cls((d,)) if d != 1 else cls(())

    @property
    def name(self):
        if not self.factors:
            return "0"
        return "+".join("Z" if d == 0 else "Z/%d" % d for d in self.factors)

    @property
    def is_finite(self):
        return 0 not in self.factors

    def order(self):
        if not self.is_finite:
            return None
        total = 1
        for d in self.factors:
            total *= d
        return total

    def reduce(self, coords):
        if len(coords) != len(self.factors):
            raise DimensionMismatchError(
                "Element with %d coordinates in %s." % (len(coords), self.name)
            )
        return tuple(int(x) % d if d else int(x) for x, d in zip(coords, self.factors))

    def element(self, coords):
        return GroupElem(self, self.reduce(coords))

    @property
    def zero(self):
        return GroupElem(self, (0,) * len(self.factors))

    def generator(self, k=0):
        return self.element([int(i == k) for i in range(len(self.factors))])

    def elements(self):
        if not self.is_finite:
            raise ValueError("Cannot enumerate the infinite group %s." % self.name)
        for coords in itertools.product(*(range(d) for d in self.factors)):
            yield GroupElem(self, coords)

    def random(self, rng, spread=5):
        return self.element(
            [rng.randrange(d) if d else rng.randint(-spread, spread) for d in self.factors]
        )


@dataclass(frozen=True)
class GroupElem:
    group: AbelianGroup
    coords: tuple

    def _check(self, other):
        if other.group != self.group:
            raise DimensionMismatchError(
                "Elements of %s and %s." % (self.group.name, other.group.name)
            )

    def __add__(self, other):
        self._check(other)
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return self.group.element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return self.group.element([-a for a in self.coords])

    def __mul__(self, k):
        return self.group.element([k * a for a in self.coords])

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def format(self):
        return ",".join(str(x) for x in self.coords)

    def __str__(self):
        return "(%s) in %s" % (self.format(), self.group.name)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by an integer matrix on the presentations.

    matrix[r][c] is the image of generator c in coordinate r of the target.
    """

    source: AbelianGroup
    target: AbelianGroup
    matrix: tuple

    def __post_init__(self):
        if len(self.matrix) != len(self.target.factors) or any(
            len(row) != len(self.source.factors) for row in self.matrix
        ):
            raise DimensionMismatchError("Homomorphism matrix has the wrong shape.")
        for r, t in enumerate(self.target.factors):
            for c, d in enumerate(self.source.factors):
                if d == 0:
                    continue
                image = self.matrix[r][c] * d
                if (t == 0 and image != 0) or (t and image % t):
                    raise NotAdmissibleError(
                        "ill-defined-hom",
                        "generator %d of order %d maps to an element of other order" % (c, d),
                    )

    def __call__(self, g):
        if g.group != self.source:
            raise DimensionMismatchError("Element outside the source group.")
        return self.target.element(
            [sum(a * x for a, x in zip(row, g.coords)) for row in self.matrix]
        )


@dataclass(frozen=True)
class DimTheory:
    """The dimension theory χ(a) = dim(a) · generator_image.

    K_0 of finite dimensional vector spaces is Z, so χ is determined by the image
    of the class of the line.
    """

    group: AbelianGroup
    generator_image: GroupElem

    def __post_init__(self):
        if self.generator_image.group != self.group:
            raise DimensionMismatchError("Generator image lies in another group.")

    @classmethod
    def universal(cls):
        z = AbelianGroup.integers()
        return cls(z, z.generator())

    def __call__(self, dim):
        return self.generator_image * dim


@dataclass(frozen=True)
class RelDimTheory:
    """A χ-relative dimension theory on the lattices of a Tate space.

    The theory is stored by its value at one base lattice.
    """

    chi: DimTheory
    space: object
    base: object
    base_value: GroupElem

    def __post_init__(self):
        if self.base.space != self.space:
            raise DimensionMismatchError("Base lattice lies in another space.")
        if self.base_value.group != self.chi.group:
            raise DimensionMismatchError("Base value lies in another group.")


def eval_reldim(d, lattice):
    """Return d(L) = d(base) + χ-index of L over the base."""
    if lattice.space != d.space:
        raise DimensionMismatchError("Lattice lies in another space.")
    return d.base_value + d.chi(relative_index(lattice, d.base))


def _check_comparable(d1, d2):
    if d1.chi != d2.chi or d1.space != d2.space:
        raise DimensionMismatchError("Theories with different χ or space.")


def torsor_difference(d1, d2):
    """Return the unique g with d1 = g + d2."""
    _check_comparable(d1, d2)
    return eval_reldim(d1, d1.base) - eval_reldim(d2, d1.base)


def act(g, d):
    """Return the translated theory g + d."""
    return RelDimTheory(d.chi, d.space, d.base, d.base_value + g)


def reanchor(d, lattice):
    """Return the same theory stored at another base lattice."""
    return RelDimTheory(d.chi, d.space, lattice, eval_reldim(d, lattice))


def theories_equal(d1, d2):
    return d1.chi == d2.chi and d1.space == d2.space and torsor_difference(d1, d2).is_zero()


def evaluate_combined(ses, d1, d2, lattice):
    """Return d1(U ∩ X') + d2(U / (U ∩ X'))."""
    return eval_reldim(d1, lift_lattice(ses, lattice)) + eval_reldim(
        d2, project_lattice(ses, lattice)
    )


def mu_combine(ses, d1, d2):
    """Combine theories on X' and X'' into one on X along an admissible sequence.

    The result is anchored at O^b and checked against the combined formula at
    t O^b, t^-1 O^b and the lattice spanned by t^-1 i(O^a) over t O^b.
    """
    if d1.chi != d2.chi:
        raise DimensionMismatchError("Theories with different χ.")
    if d1.space != ses.sub or d2.space != ses.quotient:
        raise DimensionMismatchError("Theories do not live on the ends of the sequence.")
    base = standard_lattice(ses.middle, 0)
    d = RelDimTheory(d1.chi, ses.middle, base, evaluate_combined(ses, d1, d2, base))
    samples = [standard_lattice(ses.middle, 1), standard_lattice(ses.middle, -1)]
    samples.append(sub_image_lattice(ses))
    for sample in samples:
        expected = evaluate_combined(ses, d1, d2, sample)
        if eval_reldim(d, sample) != expected:
            raise VerificationError("Combined theory is not χ-relative at %s." % (sample,))
    log.debug("combined theory anchored with value %s", d.base_value)
    return d


def pushout_along(hom, d):
    """Push a theory forward along a group homomorphism."""
    if hom.source != d.chi.group:
        raise DimensionMismatchError("Homomorphism does not start at the theory's group.")
    chi = DimTheory(hom.target, hom(d.chi.generator_image))
    return RelDimTheory(chi, d.space, d.base, hom(d.base_value))

