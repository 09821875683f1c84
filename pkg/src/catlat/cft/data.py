"""Modular S-matrices, twist-sector matrices and universal entropy targets.

These tables are the ground truth the lattice pipelines are compared against:
S-matrices in the unitary normalization, the integer matrices giving the
character content of every defect-twisted torus partition function, and the
Klein-bottle entropy values implied by them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .characters import character_table

_PHI = (1 + math.sqrt(5.0)) / 2


def s_matrix(model: str) -> np.ndarray:
    """Modular S-matrix over the model's primaries (unitary normalization)."""
    if model == "ising":
        r2 = math.sqrt(2.0)
        return 0.5 * np.array([[1, r2, 1], [r2, 0, -r2], [1, -r2, 1]], dtype=float)
    if model == "yanglee":
        c = 2 / math.sqrt(5.0)
        s2, s4 = math.sin(2 * math.pi / 5), math.sin(4 * math.pi / 5)
        return c * np.array([[-s2, s4], [s4, s2]], dtype=float)
    if model == "fib":
        d = math.sqrt(1 + _PHI**2)
        return np.array([[1, _PHI], [_PHI, -1]], dtype=float) / d
    if model == "su24":
        r3 = math.sqrt(3.0)
        m = np.array(
            [
                [1, r3, 2, r3, 1],
                [r3, r3, 0, -r3, -r3],
                [2, 0, -2, 0, 2],
                [r3, -r3, 0, r3, -r3],
                [1, -r3, 2, -r3, 1],
            ],
            dtype=float,
        )
        return m / math.sqrt(12.0)
    if model in ("tci", "potts"):
        s4 = s_matrix("su24")
        sf = s_matrix("fib")
        kron = np.kron(s4, sf)
        order = [_TCI_PAIR_INDEX[f] for f in character_table("tci").labels()]
        return kron[np.ix_(order, order)]
    raise KeyError(f"no S-matrix for model {model!r}")


SU24_OBJECTS = ("0", "1/2", "1", "3/2", "2")
FIB_OBJECTS = ("1", "tau")

# tetracritical fields as (su24, fib) pairs
TCI_FIELD_FACTORS = {
    "0": ("0", "1"),
    "1/8": ("1/2", "1"),
    "2/3": ("1", "1"),
    "13/8": ("3/2", "1"),
    "3": ("2", "1"),
    "7/5": ("0", "tau"),
    "21/40": ("1/2", "tau"),
    "1/15": ("1", "tau"),
    "1/40": ("3/2", "tau"),
    "2/5": ("2", "tau"),
}

_TCI_PAIR_INDEX = {
    f: SU24_OBJECTS.index(j) * 2 + FIB_OBJECTS.index(x)
    for f, (j, x) in TCI_FIELD_FACTORS.items()
}


@dataclass(frozen=True)
class TwistMatrixSet:
    """Integer character-pair multiplicities of twisted torus partition functions."""

    model: str
    primaries: tuple[str, ...]
    matrices: dict

    def matrix(self, twist: str) -> np.ndarray:
        try:
            return self.matrices[twist]
        except KeyError:
            raise KeyError(f"unknown twist {twist!r} for model {self.model}") from None

    def klein_diagonal(self, twist: str) -> dict:
        """Multiplicities of the single characters surviving on the Klein bottle."""
        m = self.matrix(twist)
        return {
            p: int(m[i, i])
            for i, p in enumerate(self.primaries)
            if m[i, i] != 0
        }


def _mat(primaries, terms):
    idx = {p: i for i, p in enumerate(primaries)}
    m = np.zeros((len(primaries), len(primaries)), dtype=int)
    for a, b, n in terms:
        m[idx[a], idx[b]] += n
    return m


def _ising_twists():
    p = ("1", "sigma", "psi")
    mats = {
        "1": np.eye(3, dtype=int),
        "psi": _mat(p, [("sigma", "sigma", 1), ("1", "psi", 1), ("psi", "1", 1)]),
        "sigma": _mat(
            p,
            [("1", "sigma", 1), ("sigma", "1", 1), ("psi", "sigma", 1), ("sigma", "psi", 1)],
        ),
    }
    return TwistMatrixSet("ising", p, mats)


def _yanglee_twists():
    p = ("1", "tau")
    mats = {
        "1": np.eye(2, dtype=int),
        "tau": _mat(p, [("tau", "tau", 1), ("1", "tau", 1), ("tau", "1", 1)]),
    }
    return TwistMatrixSet("yanglee", p, mats)


def _potts_twists():
    p = tuple(character_table("tci").labels())
    a_plus = _mat(
        p,
        [
            ("0", "0", 1), ("3", "3", 1), ("2/5", "2/5", 1), ("7/5", "7/5", 1),
            ("2/3", "2/3", 2), ("1/15", "1/15", 2),
            ("0", "3", 1), ("3", "0", 1), ("2/5", "7/5", 1), ("7/5", "2/5", 1),
        ],
    )
    b_plus = _mat(
        p,
        [
            ("1/15", "1/15", 1), ("2/3", "2/3", 1),
            ("2/3", "0", 1), ("0", "2/3", 1),
            ("7/5", "1/15", 1), ("1/15", "7/5", 1),
            ("2/3", "3", 1), ("3", "2/3", 1),
            ("1/15", "2/5", 1), ("2/5", "1/15", 1),
        ],
    )
    sig_plus = _mat(
        p,
        [
            ("0", "1/8", 1), ("7/5", "21/40", 1), ("3", "13/8", 1), ("2/5", "1/40", 1),
            ("3", "1/8", 1), ("2/5", "21/40", 1), ("0", "13/8", 1), ("7/5", "1/40", 1),
            ("2/3", "1/8", 2), ("1/15", "21/40", 2), ("2/3", "13/8", 2), ("1/15", "1/40", 2),
        ],
    )
    a_minus = _mat(
        p,
        [
            ("1/40", "1/40", 1), ("21/40", "21/40", 1), ("1/8", "1/8", 1), ("13/8", "13/8", 1),
            ("1/40", "21/40", 1), ("21/40", "1/40", 1), ("1/8", "13/8", 1), ("13/8", "1/8", 1),
        ],
    )
    mats = {
        "A+": a_plus,
        "B+": b_plus,
        "C+": b_plus.copy(),
        "sigma+": sig_plus,
        "sigma-": sig_plus.T.copy(),
        "A-": a_minus,
        "B-": a_minus.copy(),
        "C-": a_minus.copy(),
        "1": a_plus,  # trivial twist alias
    }
    return TwistMatrixSet("potts", p, mats)


_TWISTS = {
    "ising": _ising_twists(),
    "yanglee": _yanglee_twists(),
    "potts": _potts_twists(),
}


def twist_matrices(model: str) -> TwistMatrixSet:
    try:
        return _TWISTS[model]
    except KeyError:
        raise KeyError(f"no twist matrices for model {model!r}") from None


def twist_matrix(model: str, twist: str) -> np.ndarray:
    return twist_matrices(model).matrix(twist)


def expected_entropy(model: str, twist: str = "1", sectors=None) -> float:
    """Universal Klein-bottle entropy: sum of S_{alpha, rho_min} over the
    diagonal sectors kept by the projection (all of them when sectors=None)."""
    table = character_table("tci" if model == "potts" else model)
    s = s_matrix(model)
    labels = table.labels()
    rho = labels.index(table.min_weight_primary())
    diag = twist_matrices(model).klein_diagonal(twist)
    total = 0.0
    for prim, mult in diag.items():
        if sectors is not None and prim not in sectors:
            continue
        total += mult * s[labels.index(prim), rho]
    return total
