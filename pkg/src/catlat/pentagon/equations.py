"""Coupled pentagon equations for all five associator families.

Every pentagon instance compares the two recoupling paths on a four-slot tree
(((s1 s2) s3) s4 -> t).  The slots carry types (C-object, module object,
D-object); the admissible typings give six equation families:

    p0  : (C,C,C,C)      pure defect-category pentagon (F0)
    p01 : (C,C,C,M)      F0-F1 compatibility
    p12 : (C,C,M,D)      F1-F2 compatibility
    p23 : (C,M,D,D)      F2-F3 compatibility
    p34 : (M,D,D,D)      F3-F4 compatibility
    p4  : (D,D,D,D)      pure input-category pentagon (F4)

Instances are compiled once into flat multilinear term lists over block
entries, so residuals and Jacobians evaluate as vectorized gathers; the same
compiled systems drive both verification and the least-squares solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..categories.core import FusionCategoryData, ModuleStack, diagonal_stack

FAMILY_SLOTS = {
    "p0": ("C", "C", "C", "C"),
    "p01": ("C", "C", "C", "M"),
    "p12": ("C", "C", "M", "D"),
    "p23": ("C", "M", "D", "D"),
    "p34": ("M", "D", "D", "D"),
    "p4": ("D", "D", "D", "D"),
}

_PAIR_TYPE = {("C", "C"): "C", ("C", "M"): "M", ("M", "D"): "M", ("D", "D"): "D"}
_TRIPLE_FAMILY = {
    ("C", "C", "C"): "f0",
    ("C", "C", "M"): "f1",
    ("C", "M", "D"): "f2",
    ("M", "D", "D"): "f3",
    ("D", "D", "D"): "f4",
}


class StackContext:
    """Label sets, multiplicities and block access for one bimodule stack."""

    def __init__(self, stack: ModuleStack):
        self.stack = stack
        self._bases_cache: dict = {}

    @classmethod
    def from_category(cls, cat: FusionCategoryData) -> "StackContext":
        return cls(diagonal_stack(cat))

    def labels(self, typ: str):
        if typ == "C":
            return self.stack.cat_c.objects
        if typ == "D":
            return self.stack.cat_d.objects
        return self.stack.module_objects

    def unit(self, typ: str):
        return (self.stack.cat_c if typ == "C" else self.stack.cat_d).unit

    def mult(self, t1, t2, x, y, z) -> int:
        """Multiplicity of z in the fusion/action of (x:t1, y:t2)."""
        if (t1, t2) == ("C", "C"):
            return self.stack.cat_c.n(x, y, z)
        if (t1, t2) == ("D", "D"):
            return self.stack.cat_d.n(x, y, z)
        if (t1, t2) == ("C", "M"):
            return self.stack.nl(x, y, z)
        if (t1, t2) == ("M", "D"):
            return self.stack.nr(x, y, z)
        raise KeyError((t1, t2))

    def pair_type(self, t1, t2) -> str:
        return _PAIR_TYPE[(t1, t2)]

    def fuse(self, t1, t2, x, y) -> dict:
        t = self.pair_type(t1, t2)
        return {z: n for z in self.labels(t) if (n := self.mult(t1, t2, x, y, z))}

    def triple_family(self, t1, t2, t3) -> str:
        return _TRIPLE_FAMILY[(t1, t2, t3)]

    def block(self, family: str, key) -> np.ndarray:
        s = self.stack
        if family == "f0":
            return s.cat_c.f_block(*key)
        if family == "f4":
            return s.cat_d.f_block(*key)
        return {"f1": s.f1_block, "f2": s.f2_block, "f3": s.f3_block}[family](*key)

    def bases(self, family: str, key):
        got = self._bases_cache.get((family, key))
        if got is not None:
            return got
        s = self.stack
        if family == "f0":
            out = s.cat_c.row_basis(*key), s.cat_c.col_basis(*key)
        elif family == "f4":
            out = s.cat_d.row_basis(*key), s.cat_d.col_basis(*key)
        else:
            out = {"f1": s.f1_bases, "f2": s.f2_bases, "f3": s.f3_bases}[family](*key)
        self._bases_cache[(family, key)] = out
        return out

    def bases_maps(self, family: str, key):
        got = self._bases_cache.get(("maps", family, key))
        if got is not None:
            return got
        rows, cols = self.bases(family, key)
        out = ({r: i for i, r in enumerate(rows)}, {c: i for i, c in enumerate(cols)})
        self._bases_cache[("maps", family, key)] = out
        return out

    def is_unit_block(self, family: str, key) -> bool:
        uc, ud = self.unit("C"), self.unit("D")
        slots = {
            "f0": ((0, uc), (1, uc), (2, uc)),
            "f1": ((0, uc), (1, uc)),
            "f2": ((0, uc), (2, ud)),
            "f3": ((1, ud), (2, ud)),
            "f4": ((0, ud), (1, ud), (2, ud)),
        }[family]
        return any(key[i] == u for i, u in slots)

    def admissible_blocks(self, family: str):
        """All block keys with nonzero dimension for one family."""
        typs = {
            "f0": ("C", "C", "C", "C"),
            "f1": ("C", "C", "M", "M"),
            "f2": ("C", "M", "D", "M"),
            "f3": ("M", "D", "D", "M"),
            "f4": ("D", "D", "D", "D"),
        }[family]
        t1, t2, t3, t4 = typs
        out = []
        for x in self.labels(t1):
            for y in self.labels(t2):
                t12 = self.pair_type(t1, t2)
                step1 = self.fuse(t1, t2, x, y)
                for z in self.labels(t3):
                    targets = set()
                    for e in step1:
                        targets.update(self.fuse(t12, t3, e, z))
                    for d in targets:
                        if d in self.labels(t4) or t4 in ("C", "D"):
                            out.append((x, y, z, d))
        return out


@dataclass
class PentagonInstance:
    family: str
    slots: tuple  # (s1, s2, s3, s4, total)


def enumerate_instances(ctx: StackContext, family: str):
    """All outer label tuples with a nonempty four-slot tree space."""
    t1, t2, t3, t4 = FAMILY_SLOTS[family]
    t12 = ctx.pair_type(t1, t2)
    t123 = ctx.pair_type(t12, t3)
    out = []
    for s1 in ctx.labels(t1):
        for s2 in ctx.labels(t2):
            f12 = ctx.fuse(t1, t2, s1, s2)
            for s3 in ctx.labels(t3):
                f123: dict = {}
                for x1, n1 in f12.items():
                    for x2, n2 in ctx.fuse(t12, t3, x1, s3).items():
                        f123[x2] = f123.get(x2, 0) + n1 * n2
                for s4 in ctx.labels(t4):
                    totals: dict = {}
                    for x2, n in f123.items():
                        for t, n2 in ctx.fuse(t123, t4, x2, s4).items():
                            totals[t] = totals.get(t, 0) + n * n2
                    for t in totals:
                        out.append(PentagonInstance(family, (s1, s2, s3, s4, t)))
    return out


class EntryIndex:
    """Global integer ids for individual block entries across families."""

    def __init__(self, ctx: StackContext):
        self.ctx = ctx
        self.ids: dict = {}
        self.values: list = []
        self.meta: list = []

    def key_id(self, family, key, i, j) -> int:
        k = (family, key, i, j)
        got = self.ids.get(k)
        if got is None:
            got = len(self.values)
            self.ids[k] = got
            self.values.append(0.0 + 0.0j)
            self.meta.append(k)
        return got

    def load_known(self, families, unit_only: bool = False):
        for fam in families:
            for key in self.ctx.admissible_blocks(fam):
                if unit_only and not self.ctx.is_unit_block(fam, key):
                    continue
                try:
                    blk = self.ctx.block(fam, key)
                except KeyError:
                    continue
                for i in range(blk.shape[0]):
                    for j in range(blk.shape[1]):
                        self.values[self.key_id(fam, key, i, j)] = blk[i, j]

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=complex)


class TermSystem:
    """Compiled multilinear equations: residual_k = sum_t coeff_t prod_i x[f_i]."""

    def __init__(self, n_eq: int):
        self.n_eq = n_eq
        self.terms = {0: [], 1: [], 2: [], 3: []}  # arity -> (eq, coeff, factors)
        self._packed = None

    def add(self, eq: int, coeff: complex, factors: tuple):
        if coeff == 0:
            return
        self.terms[len(factors)].append((eq, coeff, tuple(sorted(factors))))

    def pack(self):
        packed = {}
        for arity, lst in self.terms.items():
            if not lst:
                continue
            eq = np.array([t[0] for t in lst], dtype=np.int64)
            co = np.array([t[1] for t in lst], dtype=complex)
            fac = np.array([t[2] for t in lst], dtype=np.int64).reshape(len(lst), arity)
            packed[arity] = (eq, co, fac)
        self._packed = packed
        return self

    def residual(self, x: np.ndarray) -> np.ndarray:
        r = np.zeros(self.n_eq, dtype=complex)
        for arity, (eq, co, fac) in self._packed.items():
            v = co.copy()
            for k in range(arity):
                v = v * x[fac[:, k]]
            np.add.at(r, eq, v)
        return r

    def jacobian_coo(self, x: np.ndarray, unknown_pos: np.ndarray):
        """d residual / d x restricted to unknowns; unknown_pos maps id -> col (or -1)."""
        rows, cols, vals = [], [], []
        for arity, (eq, co, fac) in self._packed.items():
            for k in range(arity):
                pos = unknown_pos[fac[:, k]]
                sel = pos >= 0
                if not np.any(sel):
                    continue
                v = co[sel].copy()
                for m in range(arity):
                    if m != k:
                        v = v * x[fac[sel, m]]
                rows.append(eq[sel])
                cols.append(pos[sel])
                vals.append(v)
        if not rows:
            return np.array([]), np.array([]), np.array([])
        return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


def compile_family(ctx: StackContext, family: str, index: EntryIndex,
                   systems: TermSystem | None = None, eq_offset: int = 0):
    """Expand all instances of one pentagon family into term lists.

    Returns (system, n_eq).  Entry ids are taken from `index`; the caller
    decides which families' entries are unknowns.
    """
    t1, t2, t3, t4 = FAMILY_SLOTS[family]
    t12 = ctx.pair_type(t1, t2)
    t123 = ctx.pair_type(t12, t3)
    t34 = ctx.pair_type(t3, t4)
    t23 = ctx.pair_type(t2, t3)
    t234 = ctx.pair_type(t2, t34)
    terms = []
    n_eq = 0
    for inst in enumerate_instances(ctx, family):
        s1, s2, s3, s4, tt = inst.slots
        rows = [
            (x1, mu1, x2, mu2, mu3)
            for x1 in ctx.fuse(t1, t2, s1, s2)
            for mu1 in range(ctx.mult(t1, t2, s1, s2, x1))
            for x2 in ctx.fuse(t12, t3, x1, s3)
            for mu2 in range(ctx.mult(t12, t3, x1, s3, x2))
            for mu3 in range(ctx.mult(t123, t4, x2, s4, tt))
        ]
        cols = [
            (y1, nu1, y2, nu2, nu3)
            for y1 in ctx.fuse(t3, t4, s3, s4)
            for nu1 in range(ctx.mult(t3, t4, s3, s4, y1))
            for y2 in ctx.fuse(t2, t34, s2, y1)
            for nu2 in range(ctx.mult(t2, t34, s2, y1, y2))
            for nu3 in range(ctx.mult(t1, t234, s1, y2, tt))
        ]
        if not rows or not cols:
            continue
        famA1 = ctx.triple_family(t12, t3, t4)
        famA2 = ctx.triple_family(t1, t2, t34)
        famB1 = ctx.triple_family(t1, t2, t3)
        famB2 = ctx.triple_family(t1, t23, t4)
        famB3 = ctx.triple_family(t2, t3, t4)
        for x1, mu1, x2, mu2, mu3 in rows:
            a1_r, a1_c = ctx.bases_maps(famA1, (x1, s3, s4, tt))
            b1_r, b1_c = ctx.bases_maps(famB1, (s1, s2, s3, x2))
            i1a = a1_r.get((x2, mu2, mu3))
            i1b = b1_r.get((x1, mu1, mu2))
            for y1, nu1, y2, nu2, nu3 in cols:
                eq = eq_offset + n_eq
                n_eq += 1
                # A-side: F(x1,s3,s4;t) * F(s1,s2,y1;t), summed over rho2
                a2_r, a2_c = ctx.bases_maps(famA2, (s1, s2, y1, tt))
                j2a = a2_c.get((y2, nu2, nu3))
                for rho2 in range(ctx.mult(t12, t34, x1, y1, tt)):
                    j1 = a1_c.get((y1, nu1, rho2))
                    i2 = a2_r.get((x1, mu1, rho2))
                    if None in (i1a, j1, i2, j2a):
                        continue
                    terms.append(
                        (eq, 1.0, (
                            index.key_id(famA1, (x1, s3, s4, tt), i1a, j1),
                            index.key_id(famA2, (s1, s2, y1, tt), i2, j2a),
                        ))
                    )
                # B-side: -F(s1,s2,s3;x2) F(s1,w,s4;t) F(s2,s3,s4;y2)
                for w, n_s1 in ctx.fuse(t2, t3, s2, s3).items():
                    b2_r, b2_c = ctx.bases_maps(famB2, (s1, w, s4, tt))
                    b3_r, b3_c = ctx.bases_maps(famB3, (s2, s3, s4, y2))
                    n_s2 = ctx.mult(t1, t23, s1, w, x2)
                    n_t1 = ctx.mult(t23, t4, w, s4, y2)
                    for sig1 in range(n_s1):
                        for sig2 in range(n_s2):
                            j1 = b1_c.get((w, sig1, sig2))
                            i2 = b2_r.get((x2, sig2, mu3))
                            for tau1 in range(n_t1):
                                j2 = b2_c.get((y2, tau1, nu3))
                                i3 = b3_r.get((w, sig1, tau1))
                                j3 = b3_c.get((y1, nu1, nu2))
                                if None in (i1b, j1, i2, j2, i3, j3):
                                    continue
                                terms.append(
                                    (eq, -1.0, (
                                        index.key_id(famB1, (s1, s2, s3, x2), i1b, j1),
                                        index.key_id(famB2, (s1, w, s4, tt), i2, j2),
                                        index.key_id(famB3, (s2, s3, s4, y2), i3, j3),
                                    ))
                                )
    sys_ = systems if systems is not None else TermSystem(0)
    sys_.n_eq = max(sys_.n_eq, eq_offset + n_eq)
    for eq, co, fac in terms:
        sys_.add(eq, co, fac)
    return sys_, n_eq


def family_residual(ctx: StackContext, family: str) -> float:
    """Max absolute pentagon deviation of one family, all blocks known."""
    index = EntryIndex(ctx)
    sys_, _ = compile_family(ctx, family, index)
    sys_.pack()
    index.load_known(["f0", "f1", "f2", "f3", "f4"])
    if sys_.n_eq == 0:
        return 0.0
    r = sys_.residual(index.array())
    return float(np.max(np.abs(r))) if r.size else 0.0


def check_pentagon(cat: FusionCategoryData) -> float:
    """Max pentagon residual of a single category's associator."""
    ctx = StackContext.from_category(cat)
    return family_residual(ctx, "p4")


def verify_stack(stack: ModuleStack) -> dict:
    """Max residual of every coupled pentagon family of a full stack."""
    ctx = StackContext(stack)
    return {fam: family_residual(ctx, fam) for fam in FAMILY_SLOTS}
