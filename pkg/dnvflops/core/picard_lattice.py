"""
Exact integer lattice arithmetic for Picard lattices of rational surfaces

Classes are integer coefficient vectors over a named basis; the intersection
form is an integer Gram matrix. Blow-ups append a basis vector of square -1,
blow-downs contract a (-1)-class and re-express everything in an integral
basis of its orthogonal complement.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from ..utils.validation import LatticeError


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector of a divisor class in some lattice basis"""
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, 'coeffs', tuple(self.coeffs))

    @classmethod
    def zero(cls, rank: int) -> 'DivisorClass':
        return cls((0,) * rank)

    @classmethod
    def basis(cls, rank: int, index: int) -> 'DivisorClass':
        coeffs = [0] * rank
        coeffs[index] = 1
        return cls(tuple(coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: 'DivisorClass') -> None:
        if len(other.coeffs) != len(self.coeffs):
            raise LatticeError(f"Dimension mismatch: {len(self.coeffs)} vs {len(other.coeffs)}")

    def __add__(self, other: 'DivisorClass') -> 'DivisorClass':
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'DivisorClass') -> 'DivisorClass':
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> 'DivisorClass':
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __mul__(self, k) -> 'DivisorClass':
        return DivisorClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def extended(self, extra: int = 0) -> 'DivisorClass':
        """Embed into a lattice with one more basis vector"""
        return DivisorClass(self.coeffs + (extra,))

    def __repr__(self) -> str:
        return f"DivisorClass{self.coeffs}"


def class_sum(classes: Iterable[DivisorClass], rank: int) -> DivisorClass:
    total = DivisorClass.zero(rank)
    for c in classes:
        total = total + c
    return total


@dataclass(frozen=True)
class ClassMap:
    """Linear map between lattices, with optional per-class corrections.

    ``matrix`` has one row per target coordinate. ``corrections`` lists source
    classes that get ``mult`` times ``correction_class`` subtracted after the
    linear part; this is how a blow-up turns listed curves into strict
    transforms while embedding everything else verbatim.
    """
    matrix: Tuple[Tuple[int, ...], ...]
    corrections: Tuple[Tuple[Tuple[int, ...], int], ...] = ()
    correction_class: Optional[DivisorClass] = None

    @property
    def source_rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_rank(self) -> int:
        return len(self.matrix)

    def linear(self, c: DivisorClass) -> DivisorClass:
        if c.rank != self.source_rank:
            raise LatticeError(f"Class of rank {c.rank} does not belong to the source lattice")
        return DivisorClass(tuple(sum(m * x for m, x in zip(row, c.coeffs)) for row in self.matrix))

    def __call__(self, c: DivisorClass) -> DivisorClass:
        image = self.linear(c)
        for coeffs, mult in self.corrections:
            if coeffs == c.coeffs and mult:
                image = image - mult * self.correction_class
        return image


class BlowUpResult(NamedTuple):
    lattice: 'IntersectionLattice'
    transform: ClassMap
    exceptional: DivisorClass


class BlowDownResult(NamedTuple):
    lattice: 'IntersectionLattice'
    push: ClassMap
    removed_index: int


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class IntersectionLattice:
    """Integral lattice with a symmetric bilinear form"""
    gram: Tuple[Tuple[int, ...], ...]
    basis_names: Tuple[str, ...]

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, 'gram', gram)
        object.__setattr__(self, 'basis_names', tuple(self.basis_names))
        n = len(gram)
        if n == 0:
            raise LatticeError("Lattice rank must be positive")
        if any(len(row) != n for row in gram):
            raise LatticeError("Gram matrix must be square")
        if len(self.basis_names) != n:
            raise LatticeError(f"Expected {n} basis names, got {len(self.basis_names)}")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i}, {j})")

    @classmethod
    def projective_plane(cls) -> 'IntersectionLattice':
        return cls(gram=((1,),), basis_names=("l",))

    @classmethod
    def quadric(cls) -> 'IntersectionLattice':
        """P1 x P1 with the two rulings as basis"""
        return cls(gram=((0, 1), (1, 0)), basis_names=("f1", "f2"))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def basis(self, name: str) -> DivisorClass:
        try:
            return DivisorClass.basis(self.rank, self.basis_names.index(name))
        except ValueError:
            raise LatticeError(f"No basis vector named '{name}'")

    def make(self, terms: Dict[str, int]) -> DivisorClass:
        """Build a class from basis names, e.g. {'l': 1, 'E1': -1}"""
        total = DivisorClass.zero(self.rank)
        for name, k in terms.items():
            total = total + k * self.basis(name)
        return total

    def _owns(self, c: DivisorClass) -> None:
        if c.rank != self.rank:
            raise LatticeError(f"Class of rank {c.rank} used in a lattice of rank {self.rank}")

    def pairing(self, a: DivisorClass, b: DivisorClass) -> int:
        self._owns(a)
        self._owns(b)
        total = 0
        for i, x in enumerate(a.coeffs):
            if x:
                row = self.gram[i]
                total += x * sum(g * y for g, y in zip(row, b.coeffs))
        return total

    def square(self, a: DivisorClass) -> int:
        return self.pairing(a, a)

    def gram_of(self, classes: Sequence[DivisorClass]) -> List[List[int]]:
        return [[self.pairing(a, b) for b in classes] for a in classes]

    def blow_up(self, through_point: Iterable[Tuple[DivisorClass, int]] = (),
                name: Optional[str] = None) -> BlowUpResult:
        """Blow up a point lying on the listed classes with the given multiplicities"""
        corrections = []
        for c, mult in through_point:
            self._owns(c)
            if mult < 0:
                raise LatticeError("Multiplicities must be non-negative")
            corrections.append((c.coeffs, mult))

        n = self.rank
        gram = [list(row) + [0] for row in self.gram]
        gram.append([0] * n + [-1])
        names = self.basis_names + (name or f"E{n}",)
        lattice = IntersectionLattice(gram=tuple(tuple(r) for r in gram), basis_names=names)

        exceptional = DivisorClass.basis(n + 1, n)
        embedding = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)) + ((0,) * n,)
        transform = ClassMap(matrix=embedding, corrections=tuple(corrections), correction_class=exceptional)
        return BlowUpResult(lattice, transform, exceptional)

    def blow_down(self, e: DivisorClass) -> BlowDownResult:
        """Contract a (-1)-class; push(C) = C + (C.E)E in a basis of the complement of E"""
        self._owns(e)
        if self.square(e) != -1:
            raise LatticeError(f"Cannot contract a class of square {self.square(e)}")

        n = self.rank
        gram = [list(row) for row in self.gram]
        names = list(self.basis_names)
        coords = list(e.coeffs)
        # rows express current coordinates in terms of the original ones
        change = _identity(n)

        while not any(abs(x) == 1 for x in coords):
            nonzero = [k for k, x in enumerate(coords) if x]
            j = min(nonzero, key=lambda k: (abs(coords[k]), k))
            i = max((k for k in nonzero if k != j), key=lambda k: (abs(coords[k]), -k))
            q = coords[i] // coords[j]
            # new basis vector b_j + q b_i
            coords[i] -= q * coords[j]
            change[i] = [a - q * b for a, b in zip(change[i], change[j])]
            for k in range(n):
                gram[j][k] += q * gram[i][k]
            for k in range(n):
                gram[k][j] += q * gram[k][i]

        i = min(k for k, x in enumerate(coords) if abs(x) == 1)
        ei = coords[i]
        dots = [sum(gram[j][k] * coords[k] for k in range(n)) for j in range(n)]
        keep = [k for k in range(n) if k != i]

        new_gram = tuple(tuple(gram[a][b] + dots[a] * dots[b] for b in keep) for a in keep)
        lattice = IntersectionLattice(gram=new_gram, basis_names=tuple(names[k] for k in keep))

        # c''_k = c'_k - c'_i * e_i * e_k, composed with the basis change
        rows = []
        for k in keep:
            rows.append(tuple(change[k][s] - change[i][s] * ei * coords[k] for s in range(n)))
        push = ClassMap(matrix=tuple(rows))
        return BlowDownResult(lattice, push, i)

    def determinant(self) -> int:
        return int(sp.Matrix(self.gram).det())

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def signature(self) -> Tuple[int, int]:
        """Numbers of positive and negative eigenvalues of the Gram matrix"""
        eigenvalues = np.linalg.eigvalsh(np.array(self.gram, dtype=float))
        return int(np.sum(eigenvalues > 1e-9)), int(np.sum(eigenvalues < -1e-9))

    def classes_determinant(self, classes: Sequence[DivisorClass]) -> int:
        """Determinant of the pairing matrix of a list of classes"""
        if not classes:
            return 1
        return int(sp.Matrix(self.gram_of(classes)).det())
