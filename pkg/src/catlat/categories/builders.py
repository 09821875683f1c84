"""Hand-entered category data and the fusion rings / action tables used by the
pentagon solver to regenerate the remaining associator families."""

from __future__ import annotations

import cmath
import math

import numpy as np

from .core import FusionCategoryData, ModularData

GOLDEN_PLUS = (1 + math.sqrt(5.0)) / 2
GOLDEN_MINUS = (1 - math.sqrt(5.0)) / 2


def _sym_fusion(objects, table):
    """table: {(a,b): {c: n}} listing a <= b entries; symmetrized."""
    fus = {}
    for (a, b), res in table.items():
        for c, n in res.items():
            fus[(a, b, c)] = n
            fus[(b, a, c)] = n
    return fus


def make_trivial() -> FusionCategoryData:
    cat = FusionCategoryData(
        name="trivial",
        objects=("1",),
        dual={"1": "1"},
        fusion={("1", "1", "1"): 1},
        qdim={"1": 1.0},
        fs_indicator={"1": 1.0},
    )
    return cat.validate()


def make_ising() -> FusionCategoryData:
    objs = ("1", "sigma", "psi")
    fus = _sym_fusion(
        objs,
        {
            ("1", "1"): {"1": 1},
            ("1", "sigma"): {"sigma": 1},
            ("1", "psi"): {"psi": 1},
            ("sigma", "sigma"): {"1": 1, "psi": 1},
            ("sigma", "psi"): {"sigma": 1},
            ("psi", "psi"): {"1": 1},
        },
    )
    r2 = math.sqrt(2.0)
    one = np.array([[1.0]], dtype=complex)
    assoc = {
        ("sigma", "sigma", "sigma", "sigma"): np.array([[1, 1], [1, -1]], dtype=complex) / r2,
        ("sigma", "psi", "sigma", "psi"): -one,
        ("psi", "sigma", "psi", "sigma"): -one,
        ("sigma", "psi", "sigma", "1"): one.copy(),
        ("sigma", "sigma", "psi", "psi"): one.copy(),
        ("sigma", "sigma", "psi", "1"): one.copy(),
        ("psi", "sigma", "sigma", "1"): one.copy(),
        ("psi", "sigma", "sigma", "psi"): one.copy(),
        ("sigma", "psi", "psi", "sigma"): one.copy(),
        ("psi", "psi", "sigma", "sigma"): one.copy(),
        ("psi", "psi", "psi", "psi"): one.copy(),
    }
    s = 0.5 * np.array([[1, r2, 1], [r2, 0, -r2], [1, -r2, 1]], dtype=complex)
    theta = {"1": 1.0 + 0j, "sigma": cmath.exp(1j * math.pi / 8), "psi": -1.0 + 0j}
    cat = FusionCategoryData(
        name="ising",
        objects=objs,
        dual={o: o for o in objs},
        fusion=fus,
        assoc=assoc,
        qdim={"1": 1.0, "sigma": r2, "psi": 1.0},
        fs_indicator={o: 1.0 for o in objs},
        modular=ModularData(objs, s, theta),
    )
    return cat.validate()


def _make_fib_like(name, phi, theta_tau) -> FusionCategoryData:
    objs = ("1", "tau")
    fus = _sym_fusion(objs, {("1", "1"): {"1": 1}, ("1", "tau"): {"tau": 1}, ("tau", "tau"): {"1": 1, "tau": 1}})
    root_phi = cmath.sqrt(phi)
    f_tau = np.array([[1 / phi, root_phi / phi], [root_phi / phi, -1 / phi]], dtype=complex)
    assoc = {
        ("tau", "tau", "tau", "tau"): f_tau,
        ("tau", "tau", "tau", "1"): np.array([[1.0]], dtype=complex),
    }
    if name == "fib":
        d = math.sqrt(1 + phi * phi)
        s = np.array([[1, phi], [phi, -1]], dtype=complex) / d
    else:
        c = 2 / math.sqrt(5.0)
        s2, s4 = math.sin(2 * math.pi / 5), math.sin(4 * math.pi / 5)
        s = c * np.array([[-s2, s4], [s4, s2]], dtype=complex)
    theta = {"1": 1.0 + 0j, "tau": theta_tau}
    cat = FusionCategoryData(
        name=name,
        objects=objs,
        dual={o: o for o in objs},
        fusion=fus,
        assoc=assoc,
        qdim={"1": 1.0, "tau": phi},
        fs_indicator={o: 1.0 for o in objs},
        modular=ModularData(objs, s, theta),
    )
    return cat.validate()


def make_fib() -> FusionCategoryData:
    return _make_fib_like("fib", GOLDEN_PLUS, cmath.exp(4j * math.pi / 5))


def make_yanglee() -> FusionCategoryData:
    return _make_fib_like("yanglee", GOLDEN_MINUS, cmath.exp(-2j * math.pi / 5))


# -- fusion rings and actions for the solved families -----------------------

SU24_OBJECTS = ("0", "1/2", "1", "3/2", "2")


def su24_fusion() -> dict:
    o = SU24_OBJECTS

    def add(j1, j2):
        lo, hi = abs(j1 - j2), min(j1 + j2, 4 - j1 - j2)
        return [2 * j for j in range(int(2 * lo), int(2 * hi) + 1, 2)]

    idx = {0: "0", 1: "1/2", 2: "1", 3: "3/2", 4: "2"}
    fus = {}
    for t1 in range(5):
        for t2 in range(5):
            j1, j2 = t1 / 2, t2 / 2
            lo = abs(j1 - j2)
            hi = min(j1 + j2, 4 - j1 - j2)
            c = lo
            while c <= hi + 1e-9:
                fus[(idx[t1], idx[t2], idx[int(round(2 * c))])] = 1
                c += 1
            del c
    return fus


SU24_QDIM = {"0": 1.0, "1/2": math.sqrt(3.0), "1": 2.0, "3/2": math.sqrt(3.0), "2": 1.0}

# sector twists, pinned from the weights of the integer-spin coset fields
SU24_THETA = {
    "0": 1.0 + 0j,
    "1/2": cmath.exp(1j * math.pi / 4),
    "1": cmath.exp(4j * math.pi / 3),
    "3/2": cmath.exp(5j * math.pi / 4),
    "2": 1.0 + 0j,
}


def su24_modular() -> ModularData:
    r3 = math.sqrt(3.0)
    s = np.array(
        [
            [1, r3, 2, r3, 1],
            [r3, r3, 0, -r3, -r3],
            [2, 0, -2, 0, 2],
            [r3, -r3, 0, r3, -r3],
            [1, -r3, 2, -r3, 1],
        ],
        dtype=complex,
    ) / math.sqrt(12.0)
    # the cocycle-twisted category is not braided: S is the character factor
    return ModularData(SU24_OBJECTS, s, dict(SU24_THETA), braided=False)


def _qint(n, k=4):
    return math.sin(n * math.pi / (k + 2)) / math.sin(math.pi / (k + 2))


def _qfact(n):
    v = 1.0
    for m in range(2, n + 1):
        v *= _qint(m)
    return v


def _su2k_admissible(a, b, c, k=4):
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b and a + b + c <= 2 * k


def _su2k_sixj(a, b, e, c, d, f):
    if not (_su2k_admissible(a, b, e) and _su2k_admissible(e, c, d)
            and _su2k_admissible(b, c, f) and _su2k_admissible(a, f, d)):
        return 0.0

    def tri(x, y, z):
        return math.sqrt(
            _qfact((-x + y + z) // 2) * _qfact((x - y + z) // 2)
            * _qfact((x + y - z) // 2) / _qfact((x + y + z) // 2 + 1)
        )

    pref = tri(a, b, e) * tri(e, c, d) * tri(b, c, f) * tri(a, f, d)
    zmin = max((a + b + e) // 2, (e + c + d) // 2, (b + c + f) // 2, (a + f + d) // 2)
    zmax = min((a + b + c + d) // 2, (a + e + c + f) // 2, (b + e + d + f) // 2)
    s = 0.0
    for z in range(zmin, zmax + 1):
        s += (-1) ** z * _qfact(z + 1) / (
            _qfact(z - (a + b + e) // 2) * _qfact(z - (e + c + d) // 2)
            * _qfact(z - (b + c + f) // 2) * _qfact(z - (a + f + d) // 2)
            * _qfact((a + b + c + d) // 2 - z) * _qfact((a + e + c + f) // 2 - z)
            * _qfact((b + e + d + f) // 2 - z)
        )
    return pref * s


def su24_assoc_entry(a, b, c, d, e, f) -> float:
    """All-positive-Frobenius-Schur associator entries (doubled-spin ints).

    The standard level-4 quantum 6j solution is twisted by the nontrivial
    3-cocycle of the integer/half-integer grading, (-1)^{chi(a)chi(b)chi(c)},
    which flips the Frobenius-Schur indicators of the half-integer objects
    while preserving the pentagon equations.
    """
    sign = (-1) ** ((a % 2) * (b % 2) * (c % 2))
    return (
        sign
        * (-1) ** ((a + b + c + d) // 2)
        * math.sqrt(_qint(e + 1) * _qint(f + 1))
        * _su2k_sixj(a, b, e, c, d, f)
    )


CS3_OBJECTS = ("A+", "sigma+", "B+", "C+", "A-", "sigma-", "B-", "C-")

# S3 presented on {A,B,C}: '+' labels are the rotations fixing nothing /
# identity, '-' labels the reflections; sigma+- are the dualities.
_S3_PERM = {
    "A+": {"A": "A", "B": "B", "C": "C"},
    "B+": {"A": "B", "B": "C", "C": "A"},
    "C+": {"A": "C", "B": "A", "C": "B"},
    "A-": {"A": "A", "B": "C", "C": "B"},
    "B-": {"A": "C", "B": "B", "C": "A"},
    "C-": {"A": "B", "B": "A", "C": "C"},
}


def cs3_fusion() -> dict:
    fus = {}
    glikes = ["A+", "B+", "C+", "A-", "B-", "C-"]

    def compose(g, h):
        pg, ph = _S3_PERM[g], _S3_PERM[h]
        comp = {x: pg[ph[x]] for x in "ABC"}
        for k, p in _S3_PERM.items():
            if p == comp:
                return k
        raise AssertionError

    for g in glikes:
        for h in glikes:
            fus[(g, h, compose(g, h))] = 1
    for g in glikes:
        parity = "+" if g.endswith("+") else "-"
        for s in ("sigma+", "sigma-"):
            flip = {"++": "sigma+", "+-": "sigma-", "-+": "sigma-", "--": "sigma+"}
            out = flip[parity + s[-1]]
            fus[(g, s, out)] = 1
            fus[(s, g, out)] = 1
    for s1 in ("sigma+", "sigma-"):
        for s2 in ("sigma+", "sigma-"):
            parity = "+" if s1[-1] == s2[-1] else "-"
            for x in "ABC":
                fus[(s1, s2, x + parity)] = 1
    return fus


CS3_QDIM = {o: (math.sqrt(3.0) if o.startswith("sigma") else 1.0) for o in CS3_OBJECTS}

TY_OBJECTS = ("A", "sigma", "B", "C")

TY_QDIM = {"A": 1.0, "sigma": math.sqrt(3.0), "B": 1.0, "C": 1.0}


def ty_right_action() -> dict:
    """Right action of the five-object input category on the four heights."""
    act = {}
    spins = {"A": "A", "B": "B", "C": "C"}
    for x in ("A", "B", "C"):
        act[(x, "0", x)] = 1
        act[(x, "2", x)] = 1
        act[(x, "1/2", "sigma")] = 1
        act[(x, "3/2", "sigma")] = 1
        for y in ("A", "B", "C"):
            if y != x:
                act[(x, "1", y)] = 1
    act[("sigma", "0", "sigma")] = 1
    act[("sigma", "2", "sigma")] = 1
    act[("sigma", "1", "sigma")] = 2
    for y in ("A", "B", "C"):
        act[("sigma", "1/2", y)] = 1
        act[("sigma", "3/2", y)] = 1
    return act


def cs3_left_action() -> dict:
    """Left action of the defect category on the heights: S3 permutes the spin
    labels, the dualities map spins to sigma and sigma to the spin sum."""
    act = {}
    for g, perm in _S3_PERM.items():
        for x in "ABC":
            act[(g, x, perm[x])] = 1
        act[(g, "sigma", "sigma")] = 1
    for s in ("sigma+", "sigma-"):
        for x in "ABC":
            act[(s, x, "sigma")] = 1
            act[(s, "sigma", x)] = 1
    return act
