"""Randomized-restart damped least-squares solver for coupled pentagon systems.

The systems are compiled once into multilinear term lists (see equations.py);
residuals and the analytic Jacobian then evaluate as vectorized gathers. The
solver runs scipy's trust-region reflective least squares on the stacked
real/imaginary residual from random unit-modulus starting points and accepts
the first restart whose maximum residual beats the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.optimize import least_squares

from ..categories.core import FusionCategoryData, ModuleStack
from .equations import EntryIndex, StackContext, TermSystem, compile_family


class NoConvergenceError(RuntimeError):
    def __init__(self, best):
        super().__init__(f"pentagon solve did not converge; best residual {best:.3e}")
        self.best_residual = best


@dataclass
class PentagonSystem:
    """A compiled solve stage: which families constrain which unknown blocks."""

    ctx: StackContext
    families: tuple
    unknown_families: tuple
    index: EntryIndex = None
    system: TermSystem = None
    unknown_ids: np.ndarray = None
    extra: list = field(default_factory=list)  # (entry_id, target) affine pins
    orthogonal: bool = False  # add B B^T = 1 for square unknown blocks (real gauge)

    @property
    def unknown_blocks(self):
        seen = []
        for fam in self.unknown_families:
            for key in self.ctx.admissible_blocks(fam):
                if not self.ctx.is_unit_block(fam, key):
                    rows, cols = self.ctx.bases(fam, key)
                    seen.append((fam, key, len(rows), len(cols)))
        return seen

    def compile(self):
        self.index = EntryIndex(self.ctx)
        self.system = TermSystem(0)
        off = 0
        for fam in self.families:
            _, n = compile_family(self.ctx, fam, self.index, self.system, off)
            off += n
        # register every entry of every unknown block so solutions are complete
        unknown = []
        for fam, key, nr, nc in self.unknown_blocks:
            for i in range(nr):
                for j in range(nc):
                    unknown.append(self.index.key_id(fam, key, i, j))
        for eid, target in self.extra:
            if isinstance(eid, tuple):
                eid = self.index.key_id(*eid)
            eq = self.system.n_eq
            self.system.n_eq += 1
            self.system.add(eq, 1.0, (eid,))
            self.system.add(eq, -target, ())
        if self.orthogonal:
            for fam, key, nr, nc in self.unknown_blocks:
                if nr != nc:
                    continue
                for i in range(nr):
                    for j in range(i, nc):
                        eq = self.system.n_eq
                        self.system.n_eq += 1
                        for k in range(nr):
                            self.system.add(eq, 1.0, (
                                self.index.key_id(fam, key, k, i),
                                self.index.key_id(fam, key, k, j),
                            ))
                        if i == j:
                            self.system.add(eq, -1.0, ())
        self.system.pack()
        self.index.load_known([f for f in ("f0", "f1", "f2", "f3", "f4")
                               if f not in self.unknown_families])
        self.index.load_known(self.unknown_families, unit_only=True)
        self.unknown_ids = np.array(sorted(set(unknown)), dtype=np.int64)
        if self.system.n_eq < len(self.unknown_ids):
            raise ValueError("pentagon system is underdetermined")
        return self

    def pin_entry(self, family, key, i, j, value):
        self.extra.append(((family, key, i, j), value))


def solve_system(psys: PentagonSystem, seeds: int = 64, tol: float = 1e-8,
                 real: bool = False, rng_seed: int = 7, max_nfev: int = 400,
                 unitary: bool = False, x0_hint: dict | None = None,
                 verbose: bool = False):
    """Solve for the unknown entries; returns (xfull, max_residual, seed_used).

    unitary=True appends B B^dagger = 1 residuals for every square unknown
    block (legal in a unitary gauge); these are not complex-analytic, so their
    Jacobian is assembled separately from the multilinear system's.
    """
    if psys.system is None:
        psys.compile()
    sys_, index, unk = psys.system, psys.index, psys.unknown_ids
    x_base = index.array()
    x_base[unk] = 0.0
    n_u = len(unk)
    pos = np.full(len(index.values), -1, dtype=np.int64)
    pos[unk] = np.arange(n_u)

    # per-block parameter position tables for the unitarity residuals
    ublocks = []
    if unitary:
        for fam, key, nr, nc in psys.unknown_blocks:
            if nr != nc:
                continue
            p = np.empty((nr, nc), dtype=np.int64)
            for i in range(nr):
                for j in range(nc):
                    p[i, j] = pos[index.key_id(fam, key, i, j)]
            ublocks.append(p)
    n_unit_eq = sum(p.shape[0] * p.shape[1] for p in ublocks)

    def unpack(params):
        if real:
            return params.astype(complex)
        return params[:n_u] + 1j * params[n_u:]

    def fun(params):
        x = x_base.copy()
        x[unk] = unpack(params)
        r = sys_.residual(x)
        parts = [r.real, r.imag]
        for p in ublocks:
            b = x[unk][p.reshape(-1)].reshape(p.shape)
            g = b @ b.conj().T - np.eye(p.shape[0])
            parts += [g.real.ravel(), g.imag.ravel()]
        return np.concatenate(parts)

    def jac(params):
        x = x_base.copy()
        z = unpack(params)
        x[unk] = z
        rows, cols, vals = sys_.jacobian_coo(x, pos)
        n_eq = sys_.n_eq
        blocks = []
        if real:
            data = np.concatenate([vals.real, vals.imag])
            r = np.concatenate([rows, rows + n_eq])
            c = np.concatenate([cols, cols])
            blocks.append(sp.csr_matrix((data, (r, c)), shape=(2 * n_eq, n_u)))
        else:
            data = np.concatenate([vals.real, -vals.imag, vals.imag, vals.real])
            r = np.concatenate([rows, rows, rows + n_eq, rows + n_eq])
            c = np.concatenate([cols, cols + n_u, cols, cols + n_u])
            blocks.append(sp.csr_matrix((data, (r, c)), shape=(2 * n_eq, 2 * n_u)))
        if ublocks:
            width = n_u if real else 2 * n_u
            ju = np.zeros((2 * n_unit_eq, width))
            row0 = 0
            for p in ublocks:
                m = p.shape[0]
                b = z[p.reshape(-1)].reshape(p.shape)
                for i in range(m):
                    for j in range(m):
                        rre = row0 + 2 * 0 + (i * m + j)
                        rim = row0 + m * m + (i * m + j)
                        for k in range(m):
                            # d/d b_ik -> conj(b_jk); d/d conj(b_jk) -> b_ik
                            pik, pjk = p[i, k], p[j, k]
                            cjk = np.conj(b[j, k])
                            bik = b[i, k]
                            ju[rre, pik] += cjk.real
                            ju[rim, pik] += cjk.imag
                            ju[rre, pjk] += bik.real
                            ju[rim, pjk] += bik.imag
                            if not real:
                                ju[rre, n_u + pik] += -cjk.imag
                                ju[rim, n_u + pik] += cjk.real
                                ju[rre, n_u + pjk] += bik.imag
                                ju[rim, n_u + pjk] += -bik.real
                row0 += 2 * m * m
            blocks.append(sp.csr_matrix(ju))
        return sp.vstack(blocks, format="csr")

    def block_orthogonal_start(rng):
        """Random orthogonal/unitary start per block; 1x1 blocks start at +1.

        Scalar blocks (group-like sectors) are seeded coherently: random signs
        frustrate the cocycle-type consistency conditions and x=0 is a saddle
        of every quadratic-and-higher term, so incoherent starts collapse."""
        x0 = np.zeros(len(index.values), dtype=complex)
        for fam, key, nr, nc in psys.unknown_blocks:
            if x0_hint and (fam, key) in x0_hint:
                h = np.asarray(x0_hint[(fam, key)])
                for i in range(nr):
                    for j in range(nc):
                        x0[index.key_id(fam, key, i, j)] = h[i, j]
                continue
            if nr == 1 and nc == 1:
                x0[index.key_id(fam, key, 0, 0)] = 1.0
                continue
            g = rng.normal(size=(nr, nc)) + (0 if real else 1j * rng.normal(size=(nr, nc)))
            q, _ = np.linalg.qr(g.T if nr < nc else g)
            q = q.T if nr < nc else q
            for i in range(nr):
                for j in range(nc):
                    x0[index.key_id(fam, key, i, j)] = q[i, j] if i < q.shape[0] and j < q.shape[1] else 0
        return x0[unk]

    best = (np.inf, None, -1)
    for seed in range(seeds):
        rng = np.random.default_rng(rng_seed * 100003 + seed)
        z0 = block_orthogonal_start(rng)
        if real:
            p0 = z0.real
        else:
            p0 = np.concatenate([z0.real, z0.imag])
        res = least_squares(fun, p0, jac=jac, method="trf", tr_solver="lsmr",
                            max_nfev=max_nfev, xtol=1e-15, ftol=1e-15, gtol=1e-14)
        r = fun(res.x)
        worst = float(np.max(np.abs(r))) if r.size else 0.0
        if verbose:
            print(f"  seed {seed}: residual {worst:.3e}")
        if worst < best[0]:
            best = (worst, res.x, seed)
        if worst < tol:
            break
    worst, params, seed = best
    if params is None or worst >= tol:
        raise NoConvergenceError(worst)
    x = x_base.copy()
    x[unk] = unpack(params)
    return x, worst, seed


def solve_system_invertible(psys: PentagonSystem, seeds: int = 64, tol: float = 1e-8,
                            rng_seed: int = 7, max_nfev: int = 2000,
                            polish: bool = True, verbose: bool = False):
    """Solve with invertibility enforced structurally.

    Scalar unknown blocks are parameterized log-polar, z = exp(s + i t), so
    they cannot collapse to zero; larger square blocks carry B B^dagger = 1
    unitarity residuals. A final polish drops the unitarity rows (the chosen
    gauge need not be isometric) while staying in the found basin.
    """
    if psys.system is None:
        psys.compile()
    sys_, index, unk = psys.system, psys.index, psys.unknown_ids
    x_base = index.array()
    x_base[unk] = 0.0
    n_u = len(unk)
    pos = np.full(len(index.values), -1, dtype=np.int64)
    pos[unk] = np.arange(n_u)
    scalar = np.zeros(n_u, dtype=bool)
    ublocks = []
    for fam, key, nr, nc in psys.unknown_blocks:
        if nr == 1 and nc == 1:
            scalar[pos[index.key_id(fam, key, 0, 0)]] = True
        elif nr == nc:
            ublocks.append(np.array(
                [[pos[index.key_id(fam, key, i, j)] for j in range(nc)] for i in range(nr)]
            ))
    n_unit_eq = sum(p.size for p in ublocks)

    def unpack(params):
        re, im = params[:n_u], params[n_u:]
        z = np.empty(n_u, dtype=complex)
        z[~scalar] = re[~scalar] + 1j * im[~scalar]
        z[scalar] = np.exp(re[scalar] + 1j * im[scalar])
        return z

    def fun(params, w_unit=1.0):
        x = x_base.copy()
        z = unpack(params)
        x[unk] = z
        r = sys_.residual(x)
        parts = [r.real, r.imag]
        if w_unit:
            for p in ublocks:
                b = z[p.reshape(-1)].reshape(p.shape)
                g = w_unit * (b @ b.conj().T - np.eye(p.shape[0]))
                parts += [g.real.ravel(), g.imag.ravel()]
        return np.concatenate(parts)

    def jac(params, w_unit=1.0):
        x = x_base.copy()
        z = unpack(params)
        x[unk] = z
        rows, cols, vals = sys_.jacobian_coo(x, pos)
        n_eq = sys_.n_eq
        # chain rule: for scalar entries dz/dre = z, dz/dim = i z
        sc = scalar[cols]
        d_re = np.where(sc, vals * z[cols], vals)
        d_im = np.where(sc, vals * 1j * z[cols], vals * 1j)
        data = np.concatenate([d_re.real, d_im.real, d_re.imag, d_im.imag])
        r = np.concatenate([rows, rows, rows + n_eq, rows + n_eq])
        c = np.concatenate([cols, cols + n_u, cols, cols + n_u])
        blocks = [sp.csr_matrix((data, (r, c)), shape=(2 * n_eq, 2 * n_u))]
        if w_unit and ublocks:
            ju = np.zeros((2 * n_unit_eq, 2 * n_u))
            row0 = 0
            for p in ublocks:
                m = p.shape[0]
                b = z[p.reshape(-1)].reshape(p.shape)
                for i in range(m):
                    for j in range(m):
                        rre = row0 + i * m + j
                        rim = row0 + m * m + i * m + j
                        for k in range(m):
                            pik, pjk = p[i, k], p[j, k]
                            cjk, bik = np.conj(b[j, k]) * w_unit, b[i, k] * w_unit
                            ju[rre, pik] += cjk.real
                            ju[rim, pik] += cjk.imag
                            ju[rre, pjk] += bik.real
                            ju[rim, pjk] += bik.imag
                            ju[rre, n_u + pik] += -cjk.imag
                            ju[rim, n_u + pik] += cjk.real
                            ju[rre, n_u + pjk] += bik.imag
                            ju[rim, n_u + pjk] += -bik.real
                row0 += 2 * m * m
            blocks.append(sp.csr_matrix(ju))
        return sp.vstack(blocks, format="csr")

    def pentagon_part(params):
        x = x_base.copy()
        x[unk] = unpack(params)
        r = sys_.residual(x)
        return float(np.max(np.abs(r))) if r.size else 0.0

    def min_block_sv(params):
        z = unpack(params)
        worst_sv = np.inf
        for p in ublocks:
            b = z[p.reshape(-1)].reshape(p.shape)
            worst_sv = min(worst_sv, np.linalg.svd(b, compute_uv=False).min())
        return worst_sv

    from scipy.optimize import least_squares as _lsq

    best = (np.inf, None, -1)
    for seed in range(seeds):
        rng = np.random.default_rng(rng_seed * 100003 + seed)
        p0 = np.zeros(2 * n_u)
        p0[np.where(scalar)[0] + n_u] = rng.uniform(0, 2 * np.pi, int(scalar.sum()))
        for p in ublocks:
            m = p.shape[0]
            g = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
            q, _ = np.linalg.qr(g)
            for i in range(m):
                for j in range(m):
                    p0[p[i, j]] = q[i, j].real
                    p0[p[i, j] + n_u] = q[i, j].imag
        res = _lsq(fun, p0, jac=jac, method="trf", tr_solver="lsmr",
                   max_nfev=max_nfev, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        params = res.x
        if polish:
            # relax the gauge: decay the unitarity weight, keep invertibility
            for w in (0.1, 0.01, 0.001):
                res = _lsq(lambda p: fun(p, w), params, jac=lambda p: jac(p, w),
                           method="trf", tr_solver="lsmr", max_nfev=2 * max_nfev,
                           xtol=1e-15, ftol=1e-15, gtol=1e-15)
                params = res.x
                if pentagon_part(params) < tol:
                    break
        worst = pentagon_part(params)
        sv = min_block_sv(params)
        if verbose:
            print(f"  seed {seed}: pentagon {worst:.3e}, min block sv {sv:.3f}")
        ok = worst < tol and sv > 0.2
        if ok:
            best = (worst, params, seed)
            break
        if worst < best[0] and sv > 0.2:
            best = (worst, params, seed)
    worst, params, seed = best
    if params is None or worst >= tol:
        raise NoConvergenceError(worst if params is not None else np.inf)
    x = x_base.copy()
    x[unk] = unpack(params)
    return x, worst, seed


def extract_blocks(psys: PentagonSystem, x: np.ndarray, family: str) -> dict:
    """Assemble the solved entries of one family back into block matrices."""
    out = {}
    for fam, key, nr, nc in psys.unknown_blocks:
        if fam != family:
            continue
        blk = np.zeros((nr, nc), dtype=complex)
        for i in range(nr):
            for j in range(nc):
                blk[i, j] = x[psys.index.key_id(fam, key, i, j)]
        out[key] = blk
    return out


def bare_stack(cat_c: FusionCategoryData, cat_d: FusionCategoryData,
               module_objects, right_action, left_action, module_qdim,
               name="partial") -> ModuleStack:
    """Stack shell without associator families (used while solving them)."""
    return ModuleStack(
        name=name,
        cat_c=cat_c,
        cat_d=cat_d,
        module_objects=tuple(module_objects),
        right_action=dict(right_action),
        left_action=dict(left_action),
        module_qdim=dict(module_qdim),
    )
