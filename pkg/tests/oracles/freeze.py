"""Freeze oracle values with exact rational arithmetic (sympy) and mpmath.

Independent of the package: Lie bases, forms and printed polynomials are
declared here from scratch.  Run from the repo root:

    python tests/oracles/freeze.py
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import mpmath
import sympy as sp

R = sp.Rational
X = sp.Matrix([[1, 0], [0, -1]])
Y = sp.Matrix([[0, 1], [0, 0]])
Z = sp.Matrix([[0, -1], [1, 0]])
O = sp.zeros(2, 2)

BASES = {
    "AxK": [(X, O), (O, Z)],
    "NxK": [(Y, O), (O, Z)],
    "KxK": [(Z, O), (O, Z)],
    "AffxI": [(X, O), (Y, O)],
    "GFK": [(X, Z), (Y, O)],
    "AxA": [(X, O), (O, X)],
    "NxN": [(Y, O), (O, Y)],
    "AxN": [(X, O), (O, Y)],
    "AffxA": [(X, O), (Y, O), (O, X)],
    "AffxN": [(X, O), (Y, O), (O, Y)],
    "AffxAff": [(X, O), (Y, O), (O, X), (O, Y)],
    "DiagAff": [(X, X), (Y, Y)],
    "DiagSL2": [(X, X), (Y, Y), (Z, Z)],
    "GFN": [(X, Y), (Y, O)],
    "GFF": [(X, X), (Y, O), (O, Y)],
    "GFA": [(X, X), (Y, O)],
}

# direction parameters -> Lie basis coefficients (one sign convention per label)
COEF = {
    "AxK": lambda a: (1, a), "NxK": lambda a: (1, a), "KxK": lambda a: (1, -a),
    "AffxI": lambda a, b: (a, b), "GFK": lambda a: (1, a), "AxA": lambda a: (1, a),
    "NxN": lambda a: (1, a), "AxN": lambda a: (1, a), "AffxA": lambda a, b: (1, a, -b),
    "AffxN": lambda a, b: (1, a, b), "AffxAff": lambda a, b, g, h: (g, -b, a, -h),
    "DiagAff": lambda a, b: (a, b), "DiagSL2": lambda a, b, g: (a, b, g),
    "GFN": lambda b: (1, b), "GFF": lambda a, b, g: (a, b, g), "GFA": lambda a, b: (a, b),
}


def _printed(label, p, d):
    p11, p12, p21, p22 = p
    if label == "AxK":
        a, = d
        return -(a**2 + 2 * (p11 * p21 + p12 * p22) * a - 1)
    if label == "KxK":
        a, = d
        return -(a**2 + (p11**2 + p12**2 + p21**2 + p22**2) * a + 1)
    if label == "GFK":
        a, = d
        return -a * (p21**2 + p22**2) + 2 * (p11 - p12) * p22
    if label == "AxA":
        a, = d
        return a**2 - 2 * (2 * p11 * p22 - 1) * a + 1
    if label == "AxN":
        a, = d
        return 1 + 2 * a * p11 * p21
    if label == "NxN":
        a, = d
        return a * p21**2
    if label == "DiagAff":
        a, b = d
        return b**2 * p21**2 - 2 * a * p21 * (2 * a * p12 + b * (p22 - p11))
    if label == "GFN":
        b, = d
        return 1 + 2 * p11 * p21 + b * p21**2
    if label == "GFA":
        a, b = d
        return -2 * a * p21 * (2 * a * p12 + b * p22)
    if label == "AffxA":
        a, b = d
        return b**2 + 2 * (p11 * p22 + p12 * p21) * b + 1 + 2 * a * b * p21 * p22
    if label == "AffxN":
        a, b = d
        return a * b * p21**2 + 2 * b * p11 * p21 + 1
    if label == "AffxAff":
        a, b, g, h = d
        return (b * h * p21**2 + 2 * a * b * p21 * p22 - 2 * g * h * p11 * p21
                - 4 * a * g * p11 * p22 + (a + g)**2)
    if label == "DiagSL2":
        a, b, g = d
        return ((g * p12 - (b - g) * p21)**2
                - (2 * a * p12 + (b - g) * (p22 - p11)) * (g * (p22 - p11) + 2 * a * p21))
    if label == "GFF":
        a, b, g = d
        return -b * g * p21**2 + 4 * a**2 * p12 * p21 - 2 * a * g * p11 * p21 + 2 * a * b * p21 * p22
    return None  # NxK and AffxI: nothing printed


def q_form(m):
    return -m.det()


def b_form(u, v):
    return -R(1, 2) * (u[0, 0] * v[1, 1] + v[0, 0] * u[1, 1] - u[0, 1] * v[1, 0] - v[0, 1] * u[1, 0])


def tangents(label, p):
    return [v * p - p * w for v, w in BASES[label]]


def character(label, p):
    vecs = sp.Matrix([list(t) for t in tangents(label, p)])
    r = vecs.rank()
    if r == 0:
        return r, "Point0"
    if r == 3:
        return r, "Open3"
    rows = [sp.Matrix(2, 2, list(v)) for v in vecs.rowspace()]
    g = sp.Matrix(r, r, lambda i, j: b_form(rows[i], rows[j]))
    if r == 1:
        s = sp.sign(g[0, 0])
        return r, {1: "SpacelikeCurve", 0: "LightlikeCurve", -1: "TimelikeCurve"}[int(s)]
    det, tr = g.det(), g.trace()
    if det < 0:
        return r, "LorentzianSurface"
    if det == 0:
        return r, "DegenerateSurface" if tr > 0 else "Anomalous"
    return r, "SpacelikeSurface" if tr > 0 else "Anomalous"


def stabilizer_dim(label, p):
    return len(BASES[label]) - sp.Matrix([list(t) for t in tangents(label, p)]).rank()


POINTS = {
    "I": [1, 0, 0, 1], "-I": [-1, 0, 0, -1], "J": [0, 1, -1, 0], "-J": [0, -1, 1, 0],
    "I+E12": [1, 1, 0, 1], "I-E12": [1, -1, 0, 1], "-I+E12": [-1, 1, 0, -1],
    "I+E21": [1, 0, 1, 1], "I-E21": [1, 0, -1, 1], "-I-E21": [-1, 0, -1, -1],
    "hyp": [2, 1, 1, 1], "diag": [2, 0, 0, R(1, 2)], "upper": [2, 1, 0, R(1, 2)],
    "p11zero": [0, 1, -1, 3], "gen1": [3, 2, 1, 1], "gen2": [R(1, 2), -1, 1, 0],
    "gen3": [3, -1, 1, 0], "gen4": [-2, 1, -3, 1], "half": [1, R(1, 2), 0, 1],
    "axa_half": [1, 1, R(-1, 2), R(1, 2)],
}
DIRECTIONS = [(R(1, 2), R(-3, 2), 2, R(1, 3)), (-2, R(5, 4), R(-1, 3), 3), (R(7, 3), 1, R(-5, 2), R(-1, 2))]
Q_POINTS = ["hyp", "gen1", "gen2", "gen3", "gen4", "axa_half"]


def _mat(v):
    return sp.Matrix(2, 2, v)


def _frac(x) -> str:
    return str(Fraction(int(sp.numer(x)), int(sp.denom(x))))


def freeze() -> dict:
    out = {"exp": [], "characters": {}, "direction_q": {}, "stabilizer_dim": {}, "points": {}}
    for name, v in POINTS.items():
        assert _mat(v).det() == 1, name
        out["points"][name] = [_frac(sp.nsimplify(x)) for x in v]
    mpmath.mp.dps = 40
    for t in (-5, -2.5, -1, -0.3, 0.7, 2, 5):
        e = mpmath.e ** mpmath.mpf(t)
        out["exp"].append({
            "t": t,
            "A": [float(e), 0.0, 0.0, float(1 / e)],
            "N": [1.0, float(t), 0.0, 1.0],
            "K": [float(mpmath.cos(t)), float(-mpmath.sin(t)), float(mpmath.sin(t)), float(mpmath.cos(t))],
        })
    for label in BASES:
        out["characters"][label] = {n: list(character(label, _mat(v))) for n, v in POINTS.items()}
        out["stabilizer_dim"][label] = {n: stabilizer_dim(label, _mat(v)) for n, v in POINTS.items()}
        rows = []
        npar = COEF[label].__code__.co_argcount
        for pn in Q_POINTS:
            p = _mat(POINTS[pn])
            for d in DIRECTIONS:
                d = d[:npar]
                c = COEF[label](*d)
                v = sum((ci * t for ci, t in zip(c, tangents(label, p))), sp.zeros(2, 2))
                printed = _printed(label, list(p), d)
                rows.append({"point": pn, "direction": [_frac(sp.nsimplify(x)) for x in d],
                             "generic": _frac(sp.nsimplify(q_form(v))),
                             "printed": None if printed is None else _frac(sp.nsimplify(printed))})
        out["direction_q"][label] = rows
    # AxN certificate image A_n p_n N_{e^n}^{-1} at n = 25, p_n = e^{-n} E11 + E12 - E21
    n = mpmath.mpf(25)
    en = mpmath.e ** n
    pn = mpmath.matrix([[1 / en, 1], [-1, 0]])
    img = mpmath.matrix([[en, 0], [0, 1 / en]]) * pn * mpmath.matrix([[1, -en], [0, 1]])
    out["axn_image_25"] = [float(img[i, j]) for i in range(2) for j in range(2)]
    return out


if __name__ == "__main__":
    path = Path(__file__).with_name("frozen.json")
    path.write_text(json.dumps(freeze(), indent=1) + "\n")
    print(f"wrote {path}")
