"""Regeneration of the associator families that are not hand-entered.

Stages (each verified before the next runs):
  1. F4 of the five-object input category: pure pentagon + pins fixing the
     quantum dimensions and all-positive Frobenius-Schur indicators.
  2. F3 of the four-height module over it: right-module pentagon.
  3. F2 of the bimodule: mixed pentagon against the solved F3.
  4. F0 and F1 of the defect category: remaining three families jointly.

Outputs are frozen into package data; reruns compare gauge invariants.
"""

from __future__ import annotations

import numpy as np

from ..categories.builders import (
    CS3_OBJECTS,
    CS3_QDIM,
    SU24_QDIM,
    TY_OBJECTS,
    TY_QDIM,
    cs3_fusion,
    cs3_left_action,
    su24_fusion,
    su24_modular,
    ty_right_action,
)
from ..categories.core import FusionCategoryData, ModuleStack
from .equations import StackContext, verify_stack
from .solver import PentagonSystem, bare_stack, extract_blocks, solve_system


def su24_shell() -> FusionCategoryData:
    return FusionCategoryData(
        name="su24abs",
        objects=("0", "1/2", "1", "3/2", "2"),
        dual={o: o for o in ("0", "1/2", "1", "3/2", "2")},
        fusion=su24_fusion(),
        qdim=dict(SU24_QDIM),
        fs_indicator={o: 1.0 for o in ("0", "1/2", "1", "3/2", "2")},
    )


def cs3_shell() -> FusionCategoryData:
    return FusionCategoryData(
        name="cs3",
        objects=CS3_OBJECTS,
        dual={o: (o if not o.startswith("sigma") else o) for o in CS3_OBJECTS},
        fusion=cs3_fusion(),
        qdim=dict(CS3_QDIM),
        fs_indicator={o: 1.0 for o in CS3_OBJECTS},
    )


def _fix_duals(cat: FusionCategoryData):
    # dual(a) is the unique b with N(a,b,unit) = 1
    dual = {}
    for a in cat.objects:
        for b in cat.objects:
            if cat.n(a, b, cat.unit):
                dual[a] = b
                break
    cat.dual = dual
    return cat


def generate_su24(seeds: int = 64, tol: float = 1e-12, verbose: bool = False) -> FusionCategoryData:
    """All-positive-Frobenius-Schur associator on the five-object ring.

    Closed form: the level-4 quantum 6j symbols twisted by the nontrivial
    grading 3-cocycle (see builders.su24_assoc_entry); verified against the
    pentagon equations here rather than solved numerically.
    """
    from ..categories.builders import su24_assoc_entry
    from .equations import check_pentagon

    cat = su24_shell()
    _fix_duals(cat)
    names = {0: "0", 1: "1/2", 2: "1", 3: "3/2", 4: "2"}
    ints = {v: k for k, v in names.items()}
    assoc = {}
    for a in cat.objects:
        for b in cat.objects:
            for c in cat.objects:
                for d in cat.objects:
                    rows = cat.row_basis(a, b, c, d)
                    if not rows:
                        continue
                    cols = cat.col_basis(a, b, c, d)
                    m = np.zeros((len(rows), len(cols)), dtype=complex)
                    for i, (e, _, _) in enumerate(rows):
                        for j, (f, _, _) in enumerate(cols):
                            m[i, j] = su24_assoc_entry(
                                ints[a], ints[b], ints[c], ints[d], ints[e], ints[f]
                            )
                    assoc[(a, b, c, d)] = m
    cat.assoc = assoc
    cat.modular = su24_modular()
    resid = check_pentagon(cat)
    if resid > tol:
        raise RuntimeError(f"twisted 6j data fails the pentagon: {resid:.3e}")
    cat.validate()
    if verbose:
        print(f"F4 generated: pentagon residual {resid:.2e}")
    return cat


def generate_ty_f3(su24: FusionCategoryData, seeds: int = 64, tol: float = 1e-9,
                   verbose: bool = False) -> ModuleStack:
    cs3 = cs3_shell()
    stack = bare_stack(cs3, su24, TY_OBJECTS, ty_right_action(), cs3_left_action(),
                       dict(TY_QDIM), name="potts-d4")
    stack.check_compatibility()
    stack.check_module_qdim()
    psys = PentagonSystem(StackContext(stack), families=("p34",), unknown_families=("f3",))
    x, resid, seed = solve_system(psys, seeds=seeds, tol=tol, real=True, verbose=verbose)
    stack.f3 = extract_blocks(psys, x, "f3")
    if verbose:
        print(f"F3 solved: residual {resid:.2e} (seed {seed})")
    return stack


def generate_f2(stack: ModuleStack, seeds: int = 64, tol: float = 1e-9,
                verbose: bool = False) -> ModuleStack:
    psys = PentagonSystem(StackContext(stack), families=("p23",), unknown_families=("f2",))
    x, resid, seed = solve_system(psys, seeds=seeds, tol=tol, real=False, unitary=True,
                                  max_nfev=3000, verbose=verbose)
    stack.f2 = extract_blocks(psys, x, "f2")
    if verbose:
        print(f"F2 solved: residual {resid:.2e} (seed {seed})")
    return stack


def generate_f0_f1(stack: ModuleStack, seeds: int = 64, tol: float = 1e-9,
                   verbose: bool = False) -> ModuleStack:
    psys = PentagonSystem(StackContext(stack), families=("p0", "p01", "p12"),
                          unknown_families=("f0", "f1"))
    x, resid, seed = solve_system(psys, seeds=seeds, tol=tol, real=False, unitary=True,
                                  verbose=verbose)
    stack.f1 = extract_blocks(psys, x, "f1")
    stack.cat_c.assoc = extract_blocks(psys, x, "f0")
    if verbose:
        print(f"F0+F1 solved: residual {resid:.2e} (seed {seed})")
    return stack


def generate_potts_stack(seeds: int = 64, tol: float = 1e-8, verbose: bool = False) -> ModuleStack:
    su24 = generate_su24(seeds=seeds, verbose=verbose)
    stack = generate_ty_f3(su24, seeds=seeds, verbose=verbose)
    generate_f2(stack, seeds=seeds, verbose=verbose)
    generate_f0_f1(stack, seeds=seeds, verbose=verbose)
    report = verify_stack(stack)
    if verbose:
        print("verify:", {k: f"{v:.2e}" for k, v in report.items()})
    worst = max(report.values())
    if worst > tol:
        raise RuntimeError(f"solved stack fails verification: {worst:.3e}")
    return stack
