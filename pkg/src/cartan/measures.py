"""Finitely supported probability measures on SPD matrices or positive vectors."""

from dataclasses import dataclass, field

import numpy as np

from ._validation import DimensionMismatchError, check_ordered_positive, check_spd, check_weights


@dataclass(frozen=True)
class DiscreteMeasure:
    """Weighted atoms ``sum_j w_j delta_{atoms[j]}``.

    ``atoms`` has shape ``(k, n, n)`` for matrix atoms or ``(k, n)`` for
    vector atoms (each sorted decreasingly).  Weights are positive and sum
    to one within ``1e-12``.
    """

    atoms: np.ndarray
    weights: np.ndarray
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float)
        if atoms.ndim not in (2, 3) or atoms.shape[0] == 0:
            raise DimensionMismatchError(f"atoms must have shape (k, n) or (k, n, n), got {atoms.shape}")
        if self.validate:
            if atoms.ndim == 3:
                atoms = np.stack([check_spd(a, f"atoms[{j}]") for j, a in enumerate(atoms)])
            else:
                atoms = np.stack([check_ordered_positive(a, f"atoms[{j}]") for j, a in enumerate(atoms)])
        weights = check_weights(self.weights, atoms.shape[0])
        atoms.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, atoms, validate=True):
        atoms = np.asarray(atoms, dtype=float)
        k = atoms.shape[0]
        return cls(atoms, np.full(k, 1.0 / k), validate=validate)

    @classmethod
    def point_mass(cls, atom):
        return cls(np.asarray(atom, dtype=float)[None], np.ones(1))

    @property
    def size(self):
        return self.atoms.shape[0]

    @property
    def dim(self):
        return self.atoms.shape[1]

    @property
    def is_matrix(self):
        return self.atoms.ndim == 3

    def map(self, f):
        """Push-forward by ``f``: same weights, atoms replaced by ``f(atom)``."""
        return DiscreteMeasure(np.stack([f(a) for a in self.atoms]), self.weights, validate=False)

    def __len__(self):
        return self.size
