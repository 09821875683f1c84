"""Fusion-category and bimodule-stack data with axiom validation.

Conventions used throughout the package:

* An F-block (any of the five associator families) is the basis-change matrix
  from the left-parenthesized fusion tree to the right-parenthesized one,

      |((s1 s2) s3 -> t); e, mu, nu>  =  sum_f  F[(e,mu,nu),(f,rho,sigma)] |(s1 (s2 s3) -> t); f, rho, sigma>

  with row/column bases enumerated in canonical (object order, multiplicity)
  order.  Slots may be objects of the defect category C, the module M or the
  input category D; the admissible slot typings give the families F0..F4.
* Blocks in which one of the three moved slots is a unit object are identity
  matrices and are synthesized, not stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TOL_AXIOM = 1e-12


class AxiomError(ValueError):
    """A category axiom failed; message names the identity and the labels."""


class SchemaError(ValueError):
    """Input document does not conform to the expected schema."""


def _as_tuple(labels):
    return tuple(str(x) for x in labels)


@dataclass
class ModularData:
    """Topological S-matrix and twists over a category's objects.

    braided=False marks data attached to a non-braided category (the S-matrix
    is then the character-transformation factor and the diagram formula
    relating S to twists does not apply)."""

    objects: tuple
    s: np.ndarray
    theta: dict
    braided: bool = True

    def s_entry(self, a: str, b: str) -> complex:
        return self.s[self.objects.index(a), self.objects.index(b)]


@dataclass
class FusionCategoryData:
    """Objects, fusion multiplicities, associator blocks and dimension data."""

    name: str
    objects: tuple
    dual: dict
    fusion: dict  # (a, b, c) -> int, zero entries absent
    assoc: dict = field(default_factory=dict)  # (a,b,c,d) -> ndarray
    qdim: dict = field(default_factory=dict)
    fs_indicator: dict = field(default_factory=dict)
    modular: ModularData | None = None

    # -- structure ---------------------------------------------------------
    @property
    def unit(self) -> str:
        return self.objects[0]

    @property
    def total_dim_sq(self) -> float:
        return float(sum(d * d for d in self.qdim.values()))

    def n(self, a: str, b: str, c: str) -> int:
        return self.fusion.get((a, b, c), 0)

    def fuse(self, a: str, b: str) -> dict:
        if a not in self.objects or b not in self.objects:
            raise KeyError(f"unknown object in fuse({a!r}, {b!r})")
        return {c: n for c in self.objects if (n := self.n(a, b, c))}

    def row_basis(self, a, b, c, d):
        """Basis (e, mu, nu) of the left tree ((a b) c -> d)."""
        out = []
        for e in self.objects:
            n1, n2 = self.n(a, b, e), self.n(e, c, d)
            out.extend((e, mu, nu) for mu in range(n1) for nu in range(n2))
        return out

    def col_basis(self, a, b, c, d):
        """Basis (f, rho, sigma) of the right tree (a (b c) -> d)."""
        out = []
        for f in self.objects:
            n1, n2 = self.n(b, c, f), self.n(a, f, d)
            out.extend((f, rho, sigma) for rho in range(n1) for sigma in range(n2))
        return out

    def f_block(self, a, b, c, d) -> np.ndarray:
        key = (a, b, c, d)
        blk = self.assoc.get(key)
        if blk is not None:
            return blk
        rows = self.row_basis(a, b, c, d)
        if not rows:
            return np.zeros((0, 0), dtype=complex)
        if self.unit in (a, b, c):
            return np.eye(len(rows), dtype=complex)
        raise KeyError(f"missing associator block {key} of {self.name}")

    # -- axioms -------------------------------------------------------------
    def validate(self, tol: float = TOL_AXIOM):
        self._check_unit(tol)
        self._check_assoc()
        self._check_dual()
        self._check_qdim(tol)
        self._check_fs(tol)
        if self.modular is not None:
            self._check_modular(max(tol, 1e-11))
        return self

    def _check_unit(self, tol):
        one = self.unit
        for a in self.objects:
            for b in self.objects:
                want = 1 if a == b else 0
                if self.n(one, a, b) != want or self.n(a, one, b) != want:
                    raise AxiomError(f"unit axiom fails at N({one},{a})^{b}")

    def _check_assoc(self):
        objs = self.objects
        for a in objs:
            for b in objs:
                for c in objs:
                    for d in objs:
                        lhs = sum(self.n(a, b, e) * self.n(e, c, d) for e in objs)
                        rhs = sum(self.n(b, c, f) * self.n(a, f, d) for f in objs)
                        if lhs != rhs:
                            raise AxiomError(
                                f"fusion associativity fails at ({a},{b},{c})->{d}: {lhs} != {rhs}"
                            )

    def _check_dual(self):
        one = self.unit
        for a in self.objects:
            ab = self.dual.get(a)
            if ab is None or self.dual.get(ab) != a:
                raise AxiomError(f"duality is not an involution at {a}")
            if self.n(a, ab, one) < 1:
                raise AxiomError(f"dual pairing N({a},{ab})^{one} vanishes")
            if abs(self.qdim[a] - self.qdim[ab]) > TOL_AXIOM:
                raise AxiomError(f"d_{a} != d_{ab}")

    def _check_qdim(self, tol):
        for a in self.objects:
            for b in self.objects:
                lhs = self.qdim[a] * self.qdim[b]
                rhs = sum(self.n(a, b, c) * self.qdim[c] for c in self.objects)
                if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
                    raise AxiomError(f"quantum dimensions inconsistent at d_{a} d_{b}")

    def _check_fs(self, tol):
        for a in self.objects:
            blk = self.f_block(a, self.dual[a], a, a)
            rows = self.row_basis(a, self.dual[a], a, a)
            cols = self.col_basis(a, self.dual[a], a, a)
            i = rows.index((self.unit, 0, 0))
            j = cols.index((self.unit, 0, 0))
            kappa = self.qdim[a] * blk[i, j]
            want = self.fs_indicator.get(a, 1.0)
            if abs(kappa - want) > 1e-9:
                raise AxiomError(
                    f"Frobenius-Schur indicator of {a}: d*F = {kappa}, stored {want}"
                )

    def _check_modular(self, tol):
        md = self.modular
        n_obj = len(self.objects)
        if md.braided:
            d_total = np.sqrt(self.total_dim_sq)
            s_pred = np.zeros((n_obj, n_obj), dtype=complex)
            for i, a in enumerate(self.objects):
                for j, b in enumerate(self.objects):
                    acc = 0.0 + 0.0j
                    for c in self.objects:
                        nn = self.n(a, self.dual[b], c)
                        if nn:
                            acc += nn * md.theta[c] / (md.theta[a] * md.theta[b]) * self.qdim[c]
                    s_pred[i, j] = acc / d_total
            # printed S-matrices are the unitary-normalized modular matrices
            # and, for nonunitary data, may differ from the categorical
            # diagram by a global sign; conjugation covers chirality.
            dev = min(
                np.max(np.abs(sgn * m - md.s))
                for sgn in (1, -1)
                for m in (s_pred, np.conj(s_pred))
            )
            if dev > tol:
                raise AxiomError(f"S-matrix/twist consistency fails: deviation {dev:.3e}")
        # Verlinde: columns of S give one-dimensional fusion representations
        s1 = md.s[0]
        for x in range(n_obj):
            lam = md.s[:, x] / s1[x]
            for i, a in enumerate(self.objects):
                for j, b in enumerate(self.objects):
                    rhs = sum(self.n(a, b, c) * lam[self.objects.index(c)] for c in self.objects)
                    if abs(lam[i] * lam[j] - rhs) > 1e-9:
                        raise AxiomError(f"Verlinde representation fails at ({a},{b};x={x})")


@dataclass
class ModuleStack:
    """(C, D)-bimodule data: actions and the F1, F2, F3 associator families."""

    name: str
    cat_c: FusionCategoryData
    cat_d: FusionCategoryData
    module_objects: tuple
    right_action: dict  # (A, alpha, B) -> int
    left_action: dict  # (a, A, B) -> int
    f1: dict = field(default_factory=dict)  # (a, b, A, B) -> ndarray
    f2: dict = field(default_factory=dict)  # (a, A, alpha, B) -> ndarray
    f3: dict = field(default_factory=dict)  # (A, alpha, beta, B) -> ndarray
    module_qdim: dict = field(default_factory=dict)

    def nr(self, big_a, alpha, big_b) -> int:
        return self.right_action.get((big_a, alpha, big_b), 0)

    def nl(self, a, big_a, big_b) -> int:
        return self.left_action.get((a, big_a, big_b), 0)

    def act_right(self, big_a, alpha) -> dict:
        return {B: n for B in self.module_objects if (n := self.nr(big_a, alpha, B))}

    def act_left(self, a, big_a) -> dict:
        return {B: n for B in self.module_objects if (n := self.nl(a, big_a, B))}

    # block bases per family -------------------------------------------------
    def f1_bases(self, a, b, big_a, big_b):
        rows = [
            (c, mu, m)
            for c in self.cat_c.objects
            for mu in range(self.cat_c.n(a, b, c))
            for m in range(self.nl(c, big_a, big_b))
        ]
        cols = [
            (C, rho, n)
            for C in self.module_objects
            for rho in range(self.nl(b, big_a, C))
            for n in range(self.nl(a, C, big_b))
        ]
        return rows, cols

    def f2_bases(self, a, big_a, alpha, big_b):
        rows = [
            (C, j, m)
            for C in self.module_objects
            for j in range(self.nl(a, big_a, C))
            for m in range(self.nr(C, alpha, big_b))
        ]
        cols = [
            (D, n, k)
            for D in self.module_objects
            for n in range(self.nr(big_a, alpha, D))
            for k in range(self.nl(a, D, big_b))
        ]
        return rows, cols

    def f3_bases(self, big_a, alpha, beta, big_b):
        rows = [
            (C, j, n)
            for C in self.module_objects
            for j in range(self.nr(big_a, alpha, C))
            for n in range(self.nr(C, beta, big_b))
        ]
        cols = [
            (gamma, k, m)
            for gamma in self.cat_d.objects
            for k in range(self.cat_d.n(alpha, beta, gamma))
            for m in range(self.nr(big_a, gamma, big_b))
        ]
        return rows, cols

    def _get(self, table, bases, unit_slots, key, family):
        blk = table.get(key)
        if blk is not None:
            return blk
        rows, cols = bases(*key)
        if not rows:
            return np.zeros((0, 0), dtype=complex)
        if any(key[i] == u for i, u in unit_slots):
            return np.eye(len(rows), dtype=complex)
        raise KeyError(f"missing {family} block {key} of stack {self.name}")

    def f1_block(self, a, b, big_a, big_b):
        units = [(0, self.cat_c.unit), (1, self.cat_c.unit)]
        return self._get(self.f1, self.f1_bases, units, (a, b, big_a, big_b), "F1")

    def f2_block(self, a, big_a, alpha, big_b):
        units = [(0, self.cat_c.unit), (2, self.cat_d.unit)]
        return self._get(self.f2, self.f2_bases, units, (a, big_a, alpha, big_b), "F2")

    def f3_block(self, big_a, alpha, beta, big_b):
        units = [(1, self.cat_d.unit), (2, self.cat_d.unit)]
        return self._get(self.f3, self.f3_bases, units, (big_a, alpha, beta, big_b), "F3")

    def check_compatibility(self):
        """Bimodule condition: left and right actions commute as multiplicities."""
        for a in self.cat_c.objects:
            for big_a in self.module_objects:
                for alpha in self.cat_d.objects:
                    for big_b in self.module_objects:
                        lhs = sum(
                            self.nl(a, big_a, C) * self.nr(C, alpha, big_b)
                            for C in self.module_objects
                        )
                        rhs = sum(
                            self.nr(big_a, alpha, D) * self.nl(a, D, big_b)
                            for D in self.module_objects
                        )
                        if lhs != rhs:
                            raise AxiomError(
                                f"bimodule compatibility fails at ({a},{big_a},{alpha})->{big_b}"
                            )
        return self

    def check_module_qdim(self, tol=1e-9):
        dm = self.module_qdim
        for big_a in self.module_objects:
            for alpha in self.cat_d.objects:
                lhs = dm[big_a] * self.cat_d.qdim[alpha]
                rhs = sum(self.nr(big_a, alpha, B) * dm[B] for B in self.module_objects)
                if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
                    raise AxiomError(f"module dimensions inconsistent at d_{big_a} d_{alpha}")
            for a in self.cat_c.objects:
                lhs = self.cat_c.qdim[a] * dm[big_a]
                rhs = sum(self.nl(a, big_a, B) * dm[B] for B in self.module_objects)
                if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
                    raise AxiomError(f"module dimensions inconsistent at d_{a} d_{big_a}")
        return self


def diagonal_stack(cat: FusionCategoryData) -> ModuleStack:
    """The stack with M = D = C = cat; every family equals the associator.

    Blocks with the unit in a module slot are synthesized by the category but
    must be stored on the stack (module slots have no unit special case), so
    all admissible blocks are materialized here.
    """
    fus = dict(cat.fusion)
    full_assoc = {}
    objs = cat.objects
    for a in objs:
        for b in objs:
            for c in objs:
                for d in objs:
                    if cat.row_basis(a, b, c, d):
                        full_assoc[(a, b, c, d)] = np.asarray(cat.f_block(a, b, c, d))
    stack = ModuleStack(
        name=f"{cat.name}-diagonal",
        cat_c=cat,
        cat_d=cat,
        module_objects=cat.objects,
        right_action={k: v for k, v in fus.items()},
        left_action={k: v for k, v in fus.items()},
        f1=dict(full_assoc),
        f2=dict(full_assoc),
        f3=dict(full_assoc),
        module_qdim=dict(cat.qdim),
    )
    return stack


def fuse(cat: FusionCategoryData, a: str, b: str) -> dict:
    """Decomposition of a x b as {object: multiplicity}."""
    return cat.fuse(a, b)


def quantum_dims(cat: FusionCategoryData, tol: float = TOL_AXIOM) -> dict:
    """Stored quantum dimensions after re-verifying the defining identity."""
    cat._check_qdim(tol)
    return dict(cat.qdim)
