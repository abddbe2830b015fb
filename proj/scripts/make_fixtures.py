#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the desk-scale fixtures under data/.

Outputs (all deterministic):
  data/benchmark/gold.tsv   65 gold formula concepts (GoldID 310-374)
  data/kg/graph.json        miniature knowledge graph the KG fixtures are recorded from
  data/corpus/arxiv/...     20 MathML documents in subject-class directories
  data/corpus/wikipedia/... 12 MathML articles

The recorded SPARQL responses in data/kg/fixtures are produced afterwards by
`mathqa kg record --graph data/kg/graph.json --gold data/benchmark/gold.tsv --out data/kg/fixtures`.
"""

import json
import os
import random
import re
import shutil
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "data")

# Item IDs that appear in the source publication. Everything else gets a
# synthetic ID from the Q90000000 block so it can never be mistaken for a
# real knowledge-graph item.
KNOWN_QIDS = {
    "acceleration": "Q11376",
    "angular acceleration": "Q186300",
    "angular frequency": "Q834020",
    "angular momentum": "Q161254",
    "angular velocity": "Q161635",
    "center of mass": "Q2945123",
    "centripetal acceleration": "Q2248131",
    "centripetal force": "Q172881",
    "circumference": "Q843905",
    "conservation of energy": "Q11382",
    "conservation of momentum": "Q2305665",
    "energy": "Q11379",
    "mass": "Q11423",
    "mass-energy equivalence": "Q35875",
    "ideal gas law": "Q191785",
    "gas": "Q11432",
    "area": "Q11500",
    "volume": "Q39297",
}

CONSTANTS = {
    "speed of light": 299792458.0,
    "gravitational constant": 6.6743e-11,
    "planck constant": 6.62607015e-34,
    "boltzmann constant": 1.380649e-23,
    "coulomb constant": 8987551792.3,
    "gas constant": 8.314462618,
    "gravitational acceleration": 9.80665,
}

# (gold_id, name, formula, [(symbol, identifier name)], {slot: [relevant alternates]})
GOLD = [
    (310, "acceleration", r"\mathbf{a} = \frac{d\mathbf{v}}{dt}",
     [("a", "acceleration"), ("v", "velocity"), ("t", "duration")],
     {"a": ["g"], "v": ["c", "V", "u"], "velocity": ["vector", "speed"], "t": ["τ"], "duration": ["time"]}),
    (311, "angular acceleration", r"\boldsymbol{\alpha} = \frac{d\boldsymbol{\omega}}{dt}",
     [("α", "angular acceleration"), ("ω", "angular velocity"), ("t", "duration")],
     {"angular velocity": ["frequency", "oscillator", "harmonic"], "duration": ["time"], "t": ["τ"]}),
    (312, "angular frequency", r"\omega = 2\pi f",
     [("ω", "angular frequency"), ("f", "frequency")],
     {"angular frequency": ["frequency"], "f": ["ν"]}),
    (313, "angular momentum", r"\mathbf{L} = \mathbf{r} \times \mathbf{p}",
     [("L", "angular momentum"), ("r", "position"), ("p", "momentum")],
     {"r": ["x"], "position": ["radius", "distance"]}),
    (314, "angular velocity", r"\boldsymbol{\omega} = \frac{d\varphi}{dt} \mathbf{u}",
     [("ω", "angular velocity"), ("φ", "angle"), ("t", "duration"), ("u", "axis")],
     {"φ": ["θ"], "angle": ["phase"], "duration": ["time"]}),
    (315, "center of mass", r"\sum_{i=1}^n m_i (\mathbf{r}_i - \mathbf{R}) = 0",
     [("m", "mass"), ("r", "position"), ("R", "center of mass")],
     {"position": ["radius"]}),
    (316, "centripetal acceleration", r"a_c = \frac{v^2}{r}",
     [("a", "centripetal acceleration"), ("v", "velocity"), ("r", "radius")],
     {"velocity": ["speed"], "radius": ["distance"]}),
    (317, "centripetal force", r"\vec{F} = -\frac{mv^2}{r} \hat{r}",
     [("F", "centripetal force"), ("m", "mass"), ("v", "velocity"), ("r", "radius")],
     {"centripetal force": ["force"], "velocity": ["speed"]}),
    (318, "circumference", r"C = \pi \cdot d = 2\pi \cdot r",
     [("C", "circumference"), ("d", "diameter"), ("r", "radius")],
     {"circumference": ["perimeter"], "formula": [r"C = 2\pi r"]}),
    (319, "conservation of energy", r"E_{\text{tot1}} = E_{\text{tot2}}",
     [("E", "total energy")],
     {"total energy": ["energy"]}),
    (320, "conservation of momentum", r"p_{\text{tot1}} = p_{\text{tot2}}",
     [("p", "total momentum")],
     {"total momentum": ["momentum"]}),
    (321, "mass-energy equivalence", r"E = mc^2",
     [("E", "energy"), ("m", "mass"), ("c", "speed of light")],
     {"energy": ["rest energy"], "speed of light": ["light", "speed"]}),
    (322, "electric potential energy", r"U = qV",
     [("U", "electric potential energy"), ("q", "electric charge"), ("V", "voltage")],
     {"voltage": ["potential"], "electric charge": ["charge"]}),
    (323, "force", r"F = ma",
     [("F", "force"), ("m", "mass"), ("a", "acceleration")],
     {"F": ["f"], "acceleration": ["gravity"]}),
    (324, "momentum", r"p = mv",
     [("p", "momentum"), ("m", "mass"), ("v", "velocity")],
     {"velocity": ["speed"], "v": ["u"]}),
    (325, "kinetic energy", r"E_k = \frac{1}{2} m v^2",
     [("E", "kinetic energy"), ("m", "mass"), ("v", "velocity")],
     {"kinetic energy": ["energy"], "E": ["T", "K"], "velocity": ["speed"]}),
    (326, "potential energy", r"U = mgh",
     [("U", "potential energy"), ("m", "mass"), ("g", "gravitational acceleration"), ("h", "height")],
     {"potential energy": ["energy"], "U": ["V"], "gravitational acceleration": ["gravity"]}),
    (327, "mechanical work", r"W = Fd",
     [("W", "mechanical work"), ("F", "force"), ("d", "displacement")],
     {"mechanical work": ["work"], "displacement": ["distance"]}),
    (328, "power", r"P = \frac{W}{t}",
     [("P", "power"), ("W", "mechanical work"), ("t", "duration")],
     {"mechanical work": ["work", "energy"], "duration": ["time"]}),
    (329, "density", r"\rho = \frac{m}{V}",
     [("ρ", "density"), ("m", "mass"), ("V", "volume")],
     {"ρ": ["n"]}),
    (330, "pressure", r"p = \frac{F}{A}",
     [("p", "pressure"), ("F", "force"), ("A", "area")],
     {"p": ["P"], "area": ["surface"]}),
    (331, "ideal gas law", r"p = \frac{nRT}{V}",
     [("p", "pressure"), ("n", "amount of substance"), ("R", "gas constant"), ("T", "temperature"), ("V", "volume")],
     {"p": ["P"], "amount of substance": ["moles"], "formula": [r"pV = nRT"]}),
    (332, "hooke's law", r"F = -kx",
     [("F", "force"), ("k", "spring constant"), ("x", "displacement")],
     {"spring constant": ["stiffness"], "displacement": ["extension"]}),
    (333, "law of universal gravitation", r"F = G\frac{m_1 m_2}{r^2}",
     [("F", "gravitational force"), ("G", "gravitational constant"), ("m", "mass"), ("r", "distance")],
     {"gravitational force": ["force", "gravity"], "distance": ["radius", "separation"]}),
    (334, "weight", r"W = mg",
     [("W", "weight"), ("m", "mass"), ("g", "gravitational acceleration")],
     {"weight": ["force"], "gravitational acceleration": ["gravity"]}),
    (335, "impulse", r"J = Ft",
     [("J", "impulse"), ("F", "force"), ("t", "duration")],
     {"J": ["I"], "duration": ["time"]}),
    (336, "torque", r"\tau = rF\sin\theta",
     [("τ", "torque"), ("r", "lever arm"), ("F", "force"), ("θ", "angle")],
     {"τ": ["M", "T"], "lever arm": ["distance", "radius"]}),
    (337, "moment of inertia", r"I = mr^2",
     [("I", "moment of inertia"), ("m", "mass"), ("r", "distance")],
     {"distance": ["radius"]}),
    (338, "rotational energy", r"E_r = \frac{1}{2} I \omega^2",
     [("E", "rotational energy"), ("I", "moment of inertia"), ("ω", "angular velocity")],
     {"rotational energy": ["kinetic energy", "energy"], "E": ["K"]}),
    (339, "frequency", r"f = \frac{1}{T}",
     [("f", "frequency"), ("T", "period")],
     {"f": ["ν"], "period": ["time"]}),
    (340, "wave speed", r"v = f\lambda",
     [("v", "wave speed"), ("f", "frequency"), ("λ", "wavelength")],
     {"wave speed": ["speed", "velocity"], "v": ["c"]}),
    (341, "period of a pendulum", r"T = 2\pi\sqrt{\frac{l}{g}}",
     [("T", "period"), ("l", "length"), ("g", "gravitational acceleration")],
     {"l": ["L"], "gravitational acceleration": ["gravity"]}),
    (342, "period of a spring oscillator", r"T = 2\pi\sqrt{\frac{m}{k}}",
     [("T", "period"), ("m", "mass"), ("k", "spring constant")],
     {"spring constant": ["stiffness"]}),
    (343, "elastic potential energy", r"U = \frac{1}{2} k x^2",
     [("U", "elastic potential energy"), ("k", "spring constant"), ("x", "displacement")],
     {"elastic potential energy": ["potential energy", "energy"], "displacement": ["extension"]}),
    (344, "friction", r"F_f = \mu F_N",
     [("F", "friction force"), ("μ", "coefficient of friction")],
     {"friction force": ["force", "friction"], "coefficient of friction": ["friction"]}),
    (345, "coulomb's law", r"F = k_e \frac{q_1 q_2}{r^2}",
     [("F", "electrostatic force"), ("k", "coulomb constant"), ("q", "electric charge"), ("r", "distance")],
     {"electrostatic force": ["force"], "electric charge": ["charge"]}),
    (346, "ohm's law", r"V = IR",
     [("V", "voltage"), ("I", "electric current"), ("R", "electrical resistance")],
     {"V": ["U"], "electric current": ["current"], "electrical resistance": ["resistance"]}),
    (347, "electric power", r"P = VI",
     [("P", "electric power"), ("V", "voltage"), ("I", "electric current")],
     {"electric power": ["power"], "electric current": ["current"]}),
    (348, "electric charge", r"Q = It",
     [("Q", "electric charge"), ("I", "electric current"), ("t", "duration")],
     {"Q": ["q"], "electric current": ["current"], "duration": ["time"]}),
    (349, "capacitance", r"C = \frac{Q}{V}",
     [("C", "capacitance"), ("Q", "electric charge"), ("V", "voltage")],
     {"electric charge": ["charge"]}),
    (350, "electric field", r"E = \frac{F}{q}",
     [("E", "electric field"), ("F", "force"), ("q", "electric charge")],
     {"electric field": ["field"], "electric charge": ["charge"]}),
    (351, "magnetic force", r"F = qvB\sin\theta",
     [("F", "magnetic force"), ("q", "electric charge"), ("v", "velocity"), ("B", "magnetic field"), ("θ", "angle")],
     {"magnetic force": ["force", "lorentz force"], "magnetic field": ["field"]}),
    (352, "photon energy", r"E = hf",
     [("E", "photon energy"), ("h", "planck constant"), ("f", "frequency")],
     {"photon energy": ["energy"], "f": ["ν"]}),
    (353, "de broglie wavelength", r"\lambda = \frac{h}{p}",
     [("λ", "wavelength"), ("h", "planck constant"), ("p", "momentum")],
     {}),
    (354, "displacement", r"s = ut + \frac{1}{2} a t^2",
     [("s", "displacement"), ("u", "initial velocity"), ("t", "duration"), ("a", "acceleration")],
     {"s": ["x", "d"], "duration": ["time"], "initial velocity": ["velocity"]}),
    (355, "final velocity", r"v = u + at",
     [("v", "final velocity"), ("u", "initial velocity"), ("a", "acceleration"), ("t", "duration")],
     {"final velocity": ["velocity"], "initial velocity": ["velocity"], "duration": ["time"]}),
    (356, "escape velocity", r"v_e = \sqrt{\frac{2GM}{r}}",
     [("v", "escape velocity"), ("G", "gravitational constant"), ("M", "mass"), ("r", "radius")],
     {"escape velocity": ["velocity", "speed"]}),
    (357, "orbital speed", r"v = \sqrt{\frac{GM}{r}}",
     [("v", "orbital speed"), ("G", "gravitational constant"), ("M", "mass"), ("r", "radius")],
     {"orbital speed": ["speed", "velocity"]}),
    (358, "surface gravity", r"g = \frac{GM}{r^2}",
     [("g", "gravitational acceleration"), ("G", "gravitational constant"), ("M", "mass"), ("r", "radius")],
     {"gravitational acceleration": ["gravity", "acceleration"]}),
    (359, "buoyancy", r"F_b = \rho V g",
     [("F", "buoyant force"), ("ρ", "density"), ("V", "volume"), ("g", "gravitational acceleration")],
     {"buoyant force": ["force"]}),
    (360, "hydrostatic pressure", r"p = \rho g h",
     [("p", "pressure"), ("ρ", "density"), ("g", "gravitational acceleration"), ("h", "depth")],
     {"depth": ["height"], "p": ["P"]}),
    (361, "thermal energy", r"E = \frac{3}{2} k_B T",
     [("E", "thermal energy"), ("k", "boltzmann constant"), ("T", "temperature")],
     {"thermal energy": ["energy", "kinetic energy"]}),
    (362, "tangential velocity", r"v = \omega r",
     [("v", "tangential velocity"), ("ω", "angular velocity"), ("r", "radius")],
     {"tangential velocity": ["velocity", "speed"]}),
    (363, "speed", r"v = s/t",
     [("v", "speed"), ("s", "distance"), ("t", "duration")],
     {"speed": ["velocity"], "distance": ["displacement"], "duration": ["time"], "formula": [r"v = \frac{d}{t}"]}),
    (364, "reduced mass", r"\mu = \frac{m_1 m_2}{m_1 + m_2}",
     [("μ", "reduced mass"), ("m", "mass")],
     {"reduced mass": ["mass"]}),
    (365, "angular displacement", r"\theta = \frac{s}{r}",
     [("θ", "angle"), ("s", "arc length"), ("r", "radius")],
     {"angle": ["angular displacement"], "arc length": ["distance"]}),
    (366, "gravitational potential energy", r"U = -\frac{GMm}{r}",
     [("U", "gravitational potential energy"), ("G", "gravitational constant"), ("M", "mass"), ("r", "distance")],
     {"gravitational potential energy": ["potential energy", "energy"]}),
    (367, "efficiency", r"\eta = \frac{P_{\text{out}}}{P_{\text{in}}}",
     [("η", "efficiency"), ("P", "power")],
     {}),
    (368, "stress", r"\sigma = \frac{F}{A}",
     [("σ", "stress"), ("F", "force"), ("A", "area")],
     {"stress": ["pressure"]}),
    (369, "young's modulus", r"E = \frac{\sigma}{\varepsilon}",
     [("E", "young's modulus"), ("σ", "stress"), ("ε", "strain")],
     {"young's modulus": ["modulus", "elastic modulus"]}),
    (370, "angular momentum of a rigid body", r"L = I\omega",
     [("L", "angular momentum"), ("I", "moment of inertia"), ("ω", "angular velocity")],
     {"angular momentum": ["momentum"]}),
    (371, "magnetic flux", r"\Phi = BA\cos\theta",
     [("Φ", "magnetic flux"), ("B", "magnetic field"), ("A", "area"), ("θ", "angle")],
     {"magnetic flux": ["flux"], "Φ": ["ψ"]}),
    (372, "inductive reactance", r"X_L = 2\pi f L",
     [("X", "inductive reactance"), ("f", "frequency"), ("L", "inductance")],
     {"inductive reactance": ["reactance"]}),
    (373, "electrical resistivity", r"R = \rho\frac{l}{A}",
     [("R", "electrical resistance"), ("ρ", "resistivity"), ("l", "length"), ("A", "area")],
     {"electrical resistance": ["resistance"], "l": ["L"]}),
    (374, "optical power", r"P = \frac{1}{f}",
     [("P", "optical power"), ("f", "focal length")],
     {"optical power": ["power"]}),
]

# ---------------------------------------------------------------------------
# LaTeX subset -> Presentation MathML (only what the gold formulas use)

GREEK = {
    "alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ", "epsilon": "ϵ", "varepsilon": "ε",
    "zeta": "ζ", "eta": "η", "theta": "θ", "vartheta": "ϑ", "iota": "ι", "kappa": "κ",
    "lambda": "λ", "mu": "μ", "nu": "ν", "xi": "ξ", "pi": "π", "rho": "ρ", "sigma": "σ",
    "tau": "τ", "upsilon": "υ", "phi": "ϕ", "varphi": "φ", "chi": "χ", "psi": "ψ", "omega": "ω",
    "Gamma": "Γ", "Delta": "Δ", "Theta": "Θ", "Lambda": "Λ", "Xi": "Ξ", "Pi": "Π",
    "Sigma": "Σ", "Phi": "Φ", "Psi": "Ψ", "Omega": "Ω",
}
FUNCS = {"sin", "cos", "tan", "log", "ln", "exp"}


def tokenize_latex(s):
    out, i = [], 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
        elif c == "\\":
            j = i + 1
            while j < len(s) and s[j].isalpha():
                j += 1
            if j == i + 1:
                j += 1
            out.append(s[i:j])
            i = j
        else:
            out.append(c)
            i += 1
    return out


class MathMLWriter:
    def __init__(self, latex):
        self.toks = tokenize_latex(latex)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def group(self):
        if self.peek() == "{":
            self.take()
            parts = []
            while self.peek() != "}":
                parts.append(self.item())
            self.take()
            return parts[0] if len(parts) == 1 else "<mrow>" + "".join(parts) + "</mrow>"
        return self.atom()

    def raw_group(self):
        assert self.take() == "{"
        text = []
        while self.peek() != "}":
            text.append(self.take())
        self.take()
        return "".join(text)

    def atom(self):
        t = self.take()
        if t in ("\\mathbf", "\\boldsymbol"):
            inner = self.group()
            return inner.replace("<mi>", '<mi mathvariant="bold">', 1)
        if t == "\\vec":
            return "<mover>" + self.group() + "<mo>→</mo></mover>"
        if t == "\\hat":
            return "<mover>" + self.group() + "<mo>^</mo></mover>"
        if t == "\\frac":
            num = self.group()
            den = self.group()
            return "<mfrac>" + num + den + "</mfrac>"
        if t == "\\sqrt":
            return "<msqrt>" + self.group() + "</msqrt>"
        if t == "\\text":
            return "<mtext>" + self.raw_group() + "</mtext>"
        if t == "\\sum":
            return "<mo>∑</mo>"
        if t == "\\cdot":
            return "<mo>⋅</mo>"
        if t == "\\times":
            return "<mo>×</mo>"
        if t.startswith("\\") and t[1:] in GREEK:
            return "<mi>" + GREEK[t[1:]] + "</mi>"
        if t.startswith("\\") and t[1:] in FUNCS:
            return "<mi>" + t[1:] + "</mi>"
        if t == "{":
            self.pos -= 1
            return self.group()
        if t.isdigit():
            num = t
            while self.peek() is not None and (self.peek().isdigit() or self.peek() == "."):
                num += self.take()
            return "<mn>" + num + "</mn>"
        if t.isalpha():
            return "<mi>" + t + "</mi>"
        op = {"-": "−"}.get(t, t)
        return "<mo>" + op + "</mo>"

    def item(self):
        base = self.atom()
        sub = sup = None
        while self.peek() in ("_", "^"):
            kind = self.take()
            if kind == "_":
                sub = self.group()
            else:
                sup = self.group()
        if base == "<mo>∑</mo>" and (sub or sup):
            return "<munderover>" + base + (sub or "<mrow></mrow>") + (sup or "<mrow></mrow>") + "</munderover>"
        if sub and sup:
            return "<msubsup>" + base + sub + sup + "</msubsup>"
        if sub:
            return "<msub>" + base + sub + "</msub>"
        if sup:
            return "<msup>" + base + sup + "</msup>"
        return base

    def convert(self):
        parts = []
        while self.peek() is not None:
            parts.append(self.item())
        return "<math>" + "".join(parts) + "</math>"


def to_mathml(latex):
    return MathMLWriter(latex).convert()


def mi(symbol):
    return "<math><mi>" + symbol + "</mi></math>"


# ---------------------------------------------------------------------------


def assign_qids():
    names = set()
    for _, name, _, anns, _ in GOLD:
        names.add(name)
        for _, n in anns:
            names.add(n)
    names |= GEOMETRY_QUALITIES
    names |= {o for o, _ in GEOMETRY_OBJECTS}
    qids = dict(KNOWN_QIDS)
    next_id = 90000001
    for n in sorted(names):
        if n not in qids:
            qids[n] = "Q%d" % next_id
            next_id += 1
    return qids


GEOMETRY_OBJECTS = [
    ("circle", [("area", "direct", r"A = \pi r^2"), ("circumference", "quality", r"C = 2\pi r"),
                ("diameter", "quality", r"d = 2r")]),
    ("sphere", [("volume", "direct", r"V = \frac{4}{3}\pi r^3"), ("surface area", "quality", r"A = 4\pi r^2")]),
    ("cube", [("volume", "quality", r"V = a^3"), ("surface area", "quality", r"A = 6a^2")]),
    ("square", [("area", "direct", r"A = a^2"), ("perimeter", "quality", r"P = 4a"),
                ("diagonal", "quality", r"d = \sqrt{2} a")]),
    ("rectangle", [("area", "quality", r"A = ab"), ("perimeter", "quality", r"P = 2a + 2b")]),
    ("cylinder", [("volume", "direct", r"V = \pi r^2 h"), ("surface area", "quality", r"A = 2\pi r^2 + 2\pi r h")]),
    ("cone", [("volume", "quality", r"V = \frac{1}{3}\pi r^2 h")]),
    ("triangle", [("area", "direct", r"A = \frac{1}{2} b h")]),
]
GEOMETRY_QUALITIES = {q for _, props in GEOMETRY_OBJECTS for q, _, _ in props}


def write_gold(qids):
    path = os.path.join(DATA, "benchmark", "gold.tsv")
    with open(path, "w", encoding="utf-8") as f:
        f.write("gold_id\tqid\tname\tformula\tannotations\tsynonyms\n")
        for gid, name, formula, anns, syn in GOLD:
            ann = ";".join("%s=%s@%s" % (s, n, qids[n]) for s, n in anns)
            sy = ";".join("%s:%s" % (k, "|".join(v)) for k, v in syn.items() if v)
            f.write("%d\t%s\t%s\t%s\t%s\t%s\n" % (gid, qids[name], name, formula, ann, sy))


def scheme_for(gid):
    if gid == 321:
        return "P527"  # the relationship example item uses has-part
    return {0: "P7235", 1: "P527", 2: "P4934"}[gid % 3]


def write_graph(qids):
    items = {}

    def item(name):
        q = qids[name]
        if q not in items:
            items[q] = {"qid": q, "label": name, "symbols": [], "statements": []}
            if name in CONSTANTS:
                items[q]["numeric_value"] = CONSTANTS[name]
        return items[q]

    # identifier items carry the symbol they are most often written with
    symbol_of = {}
    for _, _, _, anns, _ in GOLD:
        for s, n in anns:
            symbol_of.setdefault(n, s)
    for idx, n in enumerate(sorted(symbol_of)):
        it = item(n)
        prop = "P416" if idx % 2 == 0 else "P7973"
        it["symbols"].append({"property": prop, "value": symbol_of[n]})

    for gid, name, formula, anns, _ in GOLD:
        it = item(name)
        it["formula"] = formula
        scheme = scheme_for(gid)
        seen = set()
        for s, n in anns:
            if (s, n) in seen:
                continue
            seen.add((s, n))
            if scheme == "P7235":
                it["statements"].append({"property": "P7235", "value": s,
                                         "qualifiers": [{"property": "P9758", "value": qids[n]}]})
            else:
                it["statements"].append({"property": scheme, "value": qids[n],
                                         "qualifiers": [{"property": "P2534", "value": s}]})

    # "work" resolves to two same-label items, neither carrying a formula
    items["Q42213"] = {"qid": "Q42213", "label": "work", "symbols": [], "statements": []}
    items["Q386724"] = {"qid": "Q386724", "label": "work", "symbols": [], "statements": []}
    # the gas item lost its defining formula to the ideal gas law item
    item("gas")

    for obj, props in GEOMETRY_OBJECTS:
        it = item(obj)
        for quality, how, formula in props:
            item(quality)
            if how == "direct":
                prop = {"area": "P2046", "volume": "P478"}[quality]
                it["statements"].append({"property": prop, "value": formula,
                                         "qualifiers": [{"property": "P2534", "value": formula}]})
            else:
                it["statements"].append({"property": "P1552", "value": qids[quality],
                                         "qualifiers": [{"property": "P2534", "value": formula}]})

    ordered = sorted(items.values(), key=lambda i: int(i["qid"][1:]))
    path = os.path.join(DATA, "kg", "graph.json")
    with open(path, "w", encoding="utf-8") as f:
        json.dump({"items": ordered}, f, ensure_ascii=False, indent=1, sort_keys=True)
        f.write("\n")


# ---------------------------------------------------------------------------
# corpus

FILLER = [
    "In this section we derive the main result for the system under study.",
    "The numerical simulations agree with the analytic estimate to good accuracy.",
    "We now turn to the experimental configuration used for the measurements.",
    "Further details of the derivation are given in the appendix.",
    "This approximation breaks down for strongly coupled systems.",
    "Observations of nearby galaxies constrain the parameters of the model.",
    "The boundary conditions are chosen to be periodic in both directions.",
    "Our treatment follows the standard textbook conventions.",
    "These results hold in the nonrelativistic limit.",
    "Uncertainties are dominated by systematic effects in the detector.",
]

NOISE = [
    ("t = 0", "At the initial time"),
    ("x = 0", "At the origin"),
    ("n = 1", "For the ground state"),
    ("t = 0", "The initial condition at time"),
]


def describe(formula, anns):
    parts = []
    for s, n in anns:
        parts.append("%s is the %s" % (mi(s), n))
    return "where " + ", ".join(parts) + "."


def paragraph(rng, rec, style):
    gid, name, formula, anns, _ = rec
    intro = rng.choice([
        "The %s is given by" % name,
        "Recall the expression for the %s," % name,
        "We use the standard relation for the %s:" % name,
    ])
    text = "%s %s %s" % (intro, to_mathml(formula), describe(formula, anns))
    if rng.random() < 0.5:
        s, n = rng.choice(anns)
        text += " Here the %s %s is measured in natural units." % (n, mi(s))
    return text


def write_doc(path, wrapper, title, paragraphs):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        if wrapper == "tei":
            f.write("<TEI><teiHeader><title>%s</title></teiHeader><text>\n" % title)
            for p in paragraphs:
                f.write("<p>%s</p>\n" % p)
            f.write("</text></TEI>\n")
        else:
            f.write("<html><head><title>%s</title></head><body>\n<h1>%s</h1>\n" % (title, title))
            for p in paragraphs:
                f.write("<p>%s</p>\n" % p)
            f.write("</body></html>\n")


def write_corpora():
    rng = random.Random(20220620)
    arxiv = os.path.join(DATA, "corpus", "arxiv")
    wiki = os.path.join(DATA, "corpus", "wikipedia")
    for d in (arxiv, wiki):
        if os.path.isdir(d):
            shutil.rmtree(d)

    subjects = ["astro-ph"] * 3 + ["cond-mat"] * 3 + ["gr-qc"] * 2 + ["hep-th"] * 3 + \
        ["physics"] * 4 + ["quant-ph"] * 3 + ["math"] * 2
    for n, subject in enumerate(subjects):
        doc_id = "%s%07d.tei" % (subject.replace("-", ""), 203001 + n * 7)
        recs = rng.sample(GOLD, 5)
        paras = []
        for rec in recs:
            paras.append(rng.choice(FILLER))
            paras.append(paragraph(rng, rec, "arxiv"))
            if rng.random() < 0.6:
                f, lead = rng.choice(NOISE)
                paras.append("%s %s the %s vanishes." % (lead, to_mathml(f), rng.choice(
                    ["velocity", "displacement", "field", "energy", "time derivative"])))
        write_doc(os.path.join(arxiv, subject, doc_id), "tei", doc_id, paras)

    articles = ["Acceleration", "Angular_velocity", "Momentum", "Kinetic_energy", "Force",
                "Mass-energy_equivalence", "Pressure", "Speed", "Work_(physics)", "Pendulum",
                "Ohm's_law", "Density"]
    by_name = {r[1]: r for r in GOLD}
    lead_rec = {
        "Acceleration": "acceleration", "Angular_velocity": "angular velocity", "Momentum": "momentum",
        "Kinetic_energy": "kinetic energy", "Force": "force", "Mass-energy_equivalence": "mass-energy equivalence",
        "Pressure": "pressure", "Speed": "speed", "Work_(physics)": "mechanical work",
        "Pendulum": "period of a pendulum", "Ohm's_law": "ohm's law", "Density": "density",
    }
    for title in articles:
        rec = by_name[lead_rec[title]]
        others = rng.sample([r for r in GOLD if r is not rec], 2)
        paras = [paragraph(rng, rec, "wiki"), rng.choice(FILLER), paragraph(rng, rec, "wiki")]
        for o in others:
            paras.append(paragraph(rng, o, "wiki"))
        write_doc(os.path.join(wiki, "physics", title + ".html"), "html", title.replace("_", " "), paras)


def main():
    qids = assign_qids()
    write_gold(qids)
    write_graph(qids)
    write_corpora()
    print("fixtures written under", DATA)


if __name__ == "__main__":
    sys.exit(main())
