"""Defect category from module-endofunctor composition.

Given the bimodule families F2 (functor structure tensors) and F3 (module
associator), the defect category is reconstructed constructively:

* composite functor structure tensors are contractions of F2 blocks;
* intertwiners between a simple functor and a composite are nullspaces of the
  linear naturality equations -- their dimensions ARE the defect fusion ring;
* F1 blocks are the intertwiner components themselves;
* F0 blocks are the linear basis changes between the two ways of composing
  three intertwiners.

Everything is dense linear algebra; no nonlinear solving is involved.
"""

from __future__ import annotations

import numpy as np

from ..categories.core import ModuleStack


class DualCategoryBuilder:
    def __init__(self, stack: ModuleStack):
        self.stack = stack
        self.m = stack.module_objects
        self.dobj = stack.cat_d.objects
        self.cobj = stack.cat_c.objects

    # basis of Hom(B, a(b(A))): tuples (C, rho: b A -> C, n: a C -> B)
    def v_ab(self, a, b, A, B):
        s = self.stack
        return [
            (C, rho, n)
            for C in self.m
            for rho in range(s.nl(b, A, C))
            for n in range(s.nl(a, C, B))
        ]

    def composite_structure(self, a, b, A, alpha, Bp):
        """Matrix of the structure map of Phi_a Phi_b on edge (A, alpha).

        Rows: (C, rho, n, m) with (C,rho,n) in v_ab(A,B), m: B alpha -> Bp.
        Cols: (D, t, rho', n2) with t: A alpha -> D, (rho',n2)-part in v_ab(D,Bp).
        """
        s = self.stack
        rows = [
            (C, rho, n, B, m)
            for B in self.m
            for C, rho, n in self.v_ab(a, b, A, B)
            for m in range(s.nr(B, alpha, Bp))
        ]
        cols = [
            (D, t, C2, rp, n2)
            for D in self.m
            for t in range(s.nr(A, alpha, D))
            for C2, rp, n2 in self.v_ab(a, b, D, Bp)
        ]
        mat = np.zeros((len(rows), len(cols)), dtype=complex)
        for ri, (C, rho, n, B, m) in enumerate(rows):
            f2a = s.f2_block(a, C, alpha, Bp)
            ra, ca = s.f2_bases(a, C, alpha, Bp)
            for ci, (D, t, C2, rp, n2) in enumerate(cols):
                f2b = s.f2_block(b, A, alpha, C2)
                rb, cb = s.f2_bases(b, A, alpha, C2)
                acc = 0.0 + 0.0j
                for sig in range(s.nr(C, alpha, C2)):
                    try:
                        ia = ra.index((B, n, m))
                        ja = ca.index((C2, sig, n2))
                        ib = rb.index((C, rho, sig))
                        jb = cb.index((D, t, rp))
                    except ValueError:
                        continue
                    acc += f2a[ia, ja] * f2b[ib, jb]
                mat[ri, ci] = acc
        return rows, cols, mat

    def intertwiner_space(self, a, b, c, tol=1e-7):
        """Basis of natural transformations Phi_c => Phi_a Phi_b.

        Returns (u_basis, labels): each element maps A to a matrix with rows
        (m0: c A -> B) and cols v_ab(A, B), flattened over (A, B).
        """
        s = self.stack
        slots = []
        for A in self.m:
            for B in self.m:
                n_c = s.nl(c, A, B)
                vab = self.v_ab(a, b, A, B)
                if n_c and vab:
                    slots.append((A, B, n_c, tuple(vab)))
        offs = {}
        total = 0
        for A, B, n_c, vab in slots:
            offs[(A, B)] = total
            total += n_c * len(vab)
        if total == 0:
            return [], slots, offs
        eqs = []
        for A in self.m:
            for alpha in self.dobj:
                for Bp in self.m:
                    rows, cols, theta = self.composite_structure(a, b, A, alpha, Bp)
                    if not rows or not cols:
                        continue
                    # lhs: sum_{D,t,k} F2^{cAalpha}[ (B,m0,m),(D,t,k) ] u_D[(k),(C2,rp,n2)]
                    # rhs: sum_{C,rho,n} u_A[(m0),(C,rho,n)] theta[(C,rho,n,B,m),(D,t,C2,rp,n2)]
                    f2c = s.f2_block(c, A, alpha, Bp)
                    rc_, cc_ = s.f2_bases(c, A, alpha, Bp)
                    for B in self.m:
                        for m0 in range(s.nl(c, A, B)):
                            for m in range(s.nr(B, alpha, Bp)):
                                for D, t, C2, rp, n2 in cols:
                                    coeffs = np.zeros(total, dtype=complex)
                                    # lhs terms (u_D entries)
                                    if (D, Bp) in offs:
                                        vabD = self.v_ab(a, b, D, Bp)
                                        for k in range(s.nl(c, D, Bp)):
                                            try:
                                                i = rc_.index((B, m0, m))
                                                j = cc_.index((D, t, k))
                                            except ValueError:
                                                continue
                                            col = vabD.index((C2, rp, n2))
                                            idx = offs[(D, Bp)] + k * len(vabD) + col
                                            coeffs[idx] += f2c[i, j]
                                    # rhs terms (u_A entries)
                                    if (A, B) in offs:
                                        vabA = self.v_ab(a, b, A, B)
                                        ci = cols.index((D, t, C2, rp, n2))
                                        for vi, (C, rho, n) in enumerate(vabA):
                                            ri = rows.index((C, rho, n, B, m))
                                            idx = offs[(A, B)] + m0 * len(vabA) + vi
                                            coeffs[idx] -= theta[ri, ci]
                                    if np.any(coeffs):
                                        eqs.append(coeffs)
        if not eqs:
            return [], slots, offs
        mat = np.array(eqs)
        _, sv, vh = np.linalg.svd(mat)
        ns = [vh[i].conj() for i in range(len(vh)) if i >= len(sv) or sv[i] < tol * max(sv[0], 1)]
        return ns, slots, offs
