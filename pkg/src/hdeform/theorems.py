"""Executable checks for the q- and h-deformed Gr(1|1) identities.

Route functions derive relation sets or matrices; ``CHECKS`` registers the
individual verifications, each producing a :class:`CheckResult`.  A check
either expects a zero residual (a positive statement), a nonzero one (a
negative control) or is reported without a verdict.
"""

from dataclasses import dataclass, field

from . import presets
from .algebra import EVEN, ODD, Alphabet, Element, Generator, RewriteSystem, substitute
from .errors import ExtractionFailure
from .relations import flat_limit, minimal_rules, orient, same_ideal, with_h_multiples
from .scalar import Scalar
from .supermatrix import (
    CONVENTIONS, SuperMatrix, T_hat, build_matrix, embed_R, embed_T1, embed_T2, g_matrix,
    mat_mul,
)

K = Scalar((1,), (-1, 1))  # 1/(q - 1)
GROUP_NAMES = ("alpha", "b", "c", "delta")
GENERIC_NAMES = ("t11", "t12", "t21", "t22")


# ----------------------------------------------------------------------------
# auxiliary algebras
# ----------------------------------------------------------------------------

_AUX = {}


def graded_commutative(generators, precedence, label):
    """u*v = (-1)^{p(u)p(v)} v*u for all letters, u*u = 0 for odd u."""
    a = Alphabet([Generator(n, p) for n, p in generators])
    rank = {n: i for i, n in enumerate(precedence)}
    rules = []
    for u, pu in generators:
        for v, pv in generators:
            if u == v and pu == ODD:
                rules.append(((u, u), Element.zero(a)))
            elif rank[u] > rank[v]:
                rules.append(((u, v), Element.monomial(a, (v, u), -1 if pu and pv else 1)))
    return RewriteSystem(a, rules, label=label, precedence=precedence)


def supercommutative_gr():
    """Undeformed Gr(1|1): all entries supercommute, alpha^2 = delta^2 = 0."""
    if "gr" not in _AUX:
        _AUX["gr"] = graded_commutative(presets.GROUP, presets.GROUP_PRECEDENCE, "Gr")
    return _AUX["gr"]


def _drop_h(e, alphabet):
    return Element._wrap(alphabet, {w: c for w, c in e.terms.items() if "h" not in w})


def superplane(plane="Ah"):
    """Undeformed superplane (x, xi) or its dual (eta, y)."""
    key = ("plane", plane)
    if key not in _AUX:
        _AUX[key] = graded_commutative(presets.PLANES[plane], presets.PLANE_PRECEDENCE[plane],
                                       f"{plane}|h=0")
    return _AUX[key]


def localized_supercommutative_gr():
    if "grloc" not in _AUX:
        _AUX["grloc"] = presets.extend_with_inverses(supercommutative_gr(), ("c", "b"),
                                                      label="GrLoc")
    return _AUX["grloc"]


def h_zero_system(system):
    """The same presentation with every h-term dropped, without h itself."""
    a = Alphabet([g for g in system.alphabet if g.name != "h"])
    rules = [(r.pattern, _drop_h(r.replacement, a)) for r in system.rules if "h" not in r.pattern]
    return RewriteSystem(a, rules, label=f"{system.label}|h=0",
                         precedence=[n for n in system.precedence if n != "h"])


def _free(alphabet, h):
    return presets.free_system(alphabet, nilpotent="h" if h else None,
                               precedence=(("h",) if h else ()) + tuple(
                                   n for n in alphabet.names if n != "h"))


def _extract(relations, alphabet, precedence, nilpotent, label, limit):
    """Orient a relation set (optionally after the q -> 1 flat limit)."""
    base = _free(alphabet, nilpotent)
    rels = with_h_multiples(relations, base) if nilpotent else list(relations)
    if limit:
        rels = flat_limit(rels, alphabet)
    system = orient(rels, alphabet, precedence, nilpotent, label=label,
                    base_rules=base.rules)
    return minimal_rules(system, keep={r.pattern for r in base.rules})


def proper_rules(system):
    """Rules other than the h-migration rules."""
    return [r for r in system.rules if system.nilpotent not in r.pattern]


# ----------------------------------------------------------------------------
# contraction of the superplanes
# ----------------------------------------------------------------------------

def _dual(name):
    return name.endswith("Dual")


def contract_plane(source="Aq", transform_side="left", h_zero=False):
    """q -> 1 limit of a q-plane in the coordinates U = g^{-1} U'.

    ``left`` uses U' = g U: x' = x, xi' = k x + xi on the plane and
    eta' = eta, y' = k eta + y on the dual, with k = h/(q - 1).  ``right``
    uses the row action U'^T = U^T g: x' = x + k xi, xi' = xi and
    eta' = eta + k y, y' = y.  With ``h_zero`` the transformation is the
    identity.
    """
    if transform_side not in ("left", "right"):
        raise ValueError("transform_side must be 'left' or 'right'")
    target = "AhDual" if _dual(source) else "Ah"
    src = presets.build(source)
    tgt = presets.build(target)
    a = tgt.alphabet
    even, odd = ("y", "eta") if _dual(source) else ("x", "xi")
    k = Element.monomial(a, ("h",), K)
    if h_zero:
        k = Element.zero(a)
    e = Element.generator(a, even)
    o = Element.generator(a, odd)
    if transform_side == "left":
        images = {even: e + k * o, odd: o} if _dual(source) else {even: e, odd: k * e + o}
    else:
        images = {even: e, odd: o + k * e} if _dual(source) else {even: e + k * o, odd: o}
    h_sys = presets.h_only(a)
    rels = [h_sys.normal_form(substitute(r, images, a)) for r in src.relations()]
    return _extract(rels, a, tgt.precedence, "h", f"{source}->q=1", limit=True)


# ----------------------------------------------------------------------------
# Gr_h(1|1) by the similarity transformation
# ----------------------------------------------------------------------------

def similarity_images(alphabet, h_zero=False):
    """Entries of T' = g T g^{-1} for T = (alpha b; c delta)."""
    h_sys = presets.h_only(alphabet)
    g = g_matrix(alphabet, 1)
    g_inv = g_matrix(alphabet, -1)
    if h_zero:
        g = g_inv = SuperMatrix.identity(2, alphabet)
    t = T_hat(alphabet)
    tp = mat_mul(mat_mul(g, t, h_sys), g_inv, h_sys)
    return dict(zip(GROUP_NAMES, (tp[0, 0], tp[0, 1], tp[1, 0], tp[1, 1])))


def derive_GrH_via_similarity(h_zero=False):
    """Impose the Gr_q relations on g T g^{-1} and take q -> 1."""
    a = presets.build("GrH").alphabet
    images = similarity_images(a, h_zero)
    h_sys = presets.h_only(a)
    grq = presets.build("GrQ")
    rels = [h_sys.normal_form(substitute(r.with_alphabet(_grq_lift(a)), images, a))
            for r in grq.relations()]
    return _extract(rels, a, presets.build("GrH").precedence, "h", "similarity", limit=True)


def _grq_lift(alphabet):
    return Alphabet([g for g in alphabet if g.name != "h"])


# ----------------------------------------------------------------------------
# relations imposed by the coaction (endomorphism route)
# ----------------------------------------------------------------------------

def coaction_images(alphabet, source, entries=GENERIC_NAMES):
    """Matrix-vector images of the source-plane coordinates.

    A plane (x, xi) maps into the dual coordinates (eta, y) and vice versa:
    u_1 -> t11 v_1 + t12 v_2, u_2 -> t21 v_1 + t22 v_2.
    """
    t = [Element.generator(alphabet, n) for n in entries]
    if _dual(source):
        u, v = ("eta", "y"), ("x", "xi")
    else:
        u, v = ("x", "xi"), ("eta", "y")
    v1, v2 = (Element.generator(alphabet, n) for n in v)
    images = {u[0]: t[0] * v1 + t[1] * v2, u[1]: t[2] * v1 + t[3] * v2}
    if "h" in alphabet:
        images["h"] = Element.generator(alphabet, "h")
    return images


def _composite(target_plane):
    """Relation-free entries next to the target plane."""
    return presets.generic_x_plane(target_plane)


def _plane_split(word, plane_letters):
    n = len(word)
    while n and word[n - 1] in plane_letters:
        n -= 1
    return word[:n], word[n:]


def endomorphism_relations(source, target):
    """Bilinear relations on t_ij forced by mapping ``source`` into ``target``."""
    comp = _composite(target)
    a = comp.alphabet
    images = coaction_images(a, source)
    plane_letters = {n for n, _ in presets.PLANES[target]}
    out = []
    for r in presets.build(source).relations():
        image = comp.normal_form(substitute(r, images, a))
        groups = {}
        for w, c in image.terms.items():
            t_part, p_part = _plane_split(w, plane_letters)
            groups.setdefault(p_part, {})[t_part] = c
        for p_part, coeffs in sorted(groups.items()):
            rel = Element._wrap(a, coeffs)
            for w in coeffs:
                if sum(1 for x in w if x in GENERIC_NAMES) != 2:
                    raise ExtractionFailure(f"non-bilinear coefficient {rel} of {p_part}")
            out.append(rel)
    return out


def _rename_into(e, alphabet, mapping):
    return Element._wrap(alphabet, {tuple(mapping.get(x, x) for x in w): c
                                    for w, c in e.terms.items()})


def derive_relations_from_endomorphisms(pair=("Ah", "AhDual")):
    """Gr relations from both endomorphisms between a plane and its dual."""
    first, second = pair
    h = first.startswith("Ah")
    group = presets.build("GrH" if h else "GrQ")
    rename = dict(zip(GENERIC_NAMES, GROUP_NAMES))
    rels = []
    for src, tgt in ((first, second), (second, first)):
        for r in endomorphism_relations(src, tgt):
            rels.append(_rename_into(r, group.alphabet, rename))
    return _extract(rels, group.alphabet, group.precedence, "h" if h else None,
                    "endomorphism", limit=False)


# ----------------------------------------------------------------------------
# RTT
# ----------------------------------------------------------------------------

def _has_h(m):
    return any("h" in w for row in m.entries for e in row for w in e.terms)


def rtt_matrix(r_left, r_right, t, sign, system=None):
    """R_left T1 T2 - sign T2 T1 R_right (entries normalized by ``system``)."""
    a = t.alphabet
    t1, t2 = embed_T1(t), embed_T2(t)
    rl, rr = r_left.over(a), r_right.over(a)
    lhs = mat_mul(mat_mul(rl, t1, system), t2, system)
    rhs = mat_mul(mat_mul(t2, t1, system), rr, system)
    return (lhs - rhs.scale(sign)).normalized(system) if system else lhs - rhs.scale(sign)


def rtt_residual(r_left, r_right, t_preset, sign=-1):
    system = presets.build(t_preset) if isinstance(t_preset, str) else t_preset
    return rtt_matrix(r_left, r_right, T_hat(system.alphabet), sign, system)


def relations_from_rtt(r_left, r_right, sign=-1, target=None):
    """Independent relations among free T entries imposed by an RTT equation."""
    h = _has_h(r_left) or _has_h(r_right)
    if target is None:
        target = presets.build("GrH" if h else "GrQ")
    a = target.alphabet
    free = _free(a, "h" in a)
    residual = rtt_matrix(r_left, r_right, T_hat(a), sign, free)
    rels = [e for row in residual.entries for e in row if e]
    return _extract(rels, a, target.precedence, "h" if "h" in a else None, "rtt", limit=False)


# ----------------------------------------------------------------------------
# R-matrices
# ----------------------------------------------------------------------------

def contract_R(h_zero=False):
    """lim_{q->1} G_h R_q G_h / 2."""
    h_sys = presets.scalar_h_system()
    a = h_sys.alphabet
    g = build_matrix("G_h", a)
    if h_zero:
        g = g.at_h_zero()
    prod = mat_mul(mat_mul(g, build_matrix("R_q", a), h_sys), g, h_sys)
    return prod.scale(Scalar((1,), (2,))).limit_at_one()


def triple(r, convention):
    """(R12 R13 R23, R23 R13 R12) with h*h = 0."""
    h_sys = presets.scalar_h_system()
    r = r.over(h_sys.alphabet)
    r12, r13, r23 = (embed_R(r, s, convention) for s in ("12", "13", "23"))
    left = mat_mul(mat_mul(r12, r13, h_sys), r23, h_sys)
    right = mat_mul(mat_mul(r23, r13, h_sys), r12, h_sys)
    return left, right


def qybe_residual(r, convention="graded"):
    left, right = triple(r, convention)
    return left - right


def modified_ybe_residuals(r, convention="graded"):
    """Residuals of (R12R13R23)(h) = (R23R13R12)(-h) and of the sum = 2 I8."""
    h_sys = presets.scalar_h_system()
    left, right = triple(r, convention)
    two = SuperMatrix.identity(8, h_sys.alphabet).scale(2)
    res29 = left - right.flip_h()
    res30 = left + right - two
    return res29.normalized(h_sys), res30.normalized(h_sys), (right + right.flip_h() - two)


def sdet_forms(system):
    d1 = system.element("b*cinv - alpha*cinv*delta*cinv")
    d2 = system.element("cinv*b - cinv*alpha*cinv*delta")
    return d1, d2


def inverse_matrix(alphabet):
    """Entries of T^{-1} in terms of alpha, b, c, delta, binv, cinv."""
    rows = [["-cinv*delta*binv", "cinv + cinv*delta*binv*alpha*cinv"],
            ["binv + binv*alpha*cinv*delta*binv", "-binv*alpha*cinv"]]
    return SuperMatrix.parse(rows, alphabet)


# ----------------------------------------------------------------------------
# check results and the registry
# ----------------------------------------------------------------------------

EXPECTATIONS = ("zero", "nonzero", "report")


@dataclass
class CheckResult:
    """Outcome of one check; ``passed`` means every residual vanished."""

    name: str
    passed: bool
    residual_summary: int
    witnesses: list = field(default_factory=list)
    convention_notes: str = ""
    expect: str = "zero"
    description: str = ""

    @property
    def ok(self):
        """Whether the outcome is the expected one."""
        if self.expect == "zero":
            return self.passed
        if self.expect == "nonzero":
            return not self.passed
        return True

    @property
    def verdict(self):
        if self.expect == "report":
            return "REPORT"
        return "PASS" if self.ok else "FAIL"

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "residual_summary": self.residual_summary,
            "witnesses": list(self.witnesses),
            "convention_notes": self.convention_notes,
            "expect": self.expect,
            "ok": self.ok,
            "description": self.description,
        }

    def line(self):
        tail = f" ({self.convention_notes})" if self.convention_notes else ""
        kind = {"zero": "", "nonzero": " [negative control]", "report": " [report]"}[self.expect]
        return (f"{self.verdict:6} {self.name}: {self.residual_summary} nonzero residual(s)"
                f"{kind}{tail}")


def _items(residual):
    """(label, Element) pairs of the nonzero parts of a residual."""
    if isinstance(residual, SuperMatrix):
        return [(f"({i + 1},{j + 1})", e) for i, row in enumerate(residual.entries)
                for j, e in enumerate(row) if e]
    if isinstance(residual, Element):
        return [("", residual)] if residual else []
    out = []
    for item in residual:
        if isinstance(item, tuple):
            label, e = item
            if isinstance(e, SuperMatrix):
                out.extend((f"{label} {sub}", x) for sub, x in _items(e))
            elif e:
                out.append((str(label), e))
        else:
            out.extend(_items(item))
    return out


def make_result(name, residual, expect="zero", notes="", description=""):
    items = _items(residual)
    witnesses = [f"{label}: {e}" if label else str(e) for label, e in items[:3]]
    return CheckResult(name, not items, len(items), witnesses, notes, expect, description)


def ideal_residual(derived, reference):
    """Residual pairs for mutual zero-normalization of two presentations."""
    return [(f"{r}", e) for r, e in same_ideal(derived, reference)]


def _rule_list(system):
    return "; ".join(str(r) for r in proper_rules(system))


@dataclass(frozen=True)
class Check:
    name: str
    run: object
    description: str
    expect: object = "zero"
    uses_convention: bool = False

    def expectation(self, convention):
        if isinstance(self.expect, dict):
            return self.expect.get(convention, self.expect.get("default", "report"))
        return self.expect


CHECKS = []


def check(name, description, expect="zero", uses_convention=False):
    def deco(fn):
        CHECKS.append(Check(name, fn, description, expect, uses_convention))
        return fn
    return deco


def _R(name):
    return build_matrix(name, presets.scalar_h_system().alphabet)


def _h_sys():
    return presets.scalar_h_system()


# -- contraction of the planes -------------------------------------------------

@check("eq07.contraction.ah", "q -> 1 limit of A_q in g-transformed coordinates equals A_h")
def _c_eq07(convention):
    derived = contract_plane("Aq")
    res = ideal_residual(derived, presets.build("Ah"))
    return res, f"relations: {_rule_list(derived)}"


@check("eq08.contraction.ahdual", "q -> 1 limit of the dual q-plane equals the dual h-plane")
def _c_eq08(convention):
    derived = contract_plane("AqDual")
    return ideal_residual(derived, presets.build("AhDual")), f"relations: {_rule_list(derived)}"


@check("eq07.contraction.right_action", "contraction with the row action of g", expect="report")
def _c_eq07_right(convention):
    res = []
    notes = []
    for src, tgt in (("Aq", "Ah"), ("AqDual", "AhDual")):
        derived = contract_plane(src, "right")
        res += ideal_residual(derived, presets.build(tgt))
        notes.append(f"{src}: {_rule_list(derived)}")
    return res, "; ".join(notes)


# -- three derivations of Gr_h(1|1) ------------------------------------------

@check("eq13.similarity.grh", "g T g^-1 with the Gr_q relations gives Gr_h at q -> 1 (8 relations)")
def _c_similarity(convention):
    derived = derive_GrH_via_similarity()
    res = ideal_residual(derived, presets.build("GrH"))
    n = len(proper_rules(derived))
    if n != 8:
        res.append((f"relation count {n} != 8", Element.one(derived.alphabet)))
    return res, f"{n} relations after reduction"


@check("eq09.endomorphism.grh", "endomorphisms A_h <-> A_h* impose exactly the Gr_h relations")
def _c_endo_h(convention):
    derived = derive_relations_from_endomorphisms(("Ah", "AhDual"))
    return ideal_residual(derived, presets.build("GrH")), f"{len(proper_rules(derived))} relations"


@check("eq03.endomorphism.grq", "endomorphisms A_q <-> A_q* impose exactly the Gr_q relations")
def _c_endo_q(convention):
    derived = derive_relations_from_endomorphisms(("Aq", "AqDual"))
    return ideal_residual(derived, presets.build("GrQ")), f"{len(proper_rules(derived))} relations"


@check("eq28.rtt_extraction.grh", "R_h T1 T2 = -T2 T1 R_-h on free entries gives the Gr_h relations")
def _c_rtt_h(convention):
    derived = relations_from_rtt(_R("R_h"), _R("R_minus_h"), -1)
    return ideal_residual(derived, presets.build("GrH")), f"{len(proper_rules(derived))} relations"


@check("eq16.rtt_extraction.grq", "R_q T1 T2 = -T2 T1 R_q on free entries gives the Gr_q relations")
def _c_rtt_q(convention):
    derived = relations_from_rtt(_R("R_q"), _R("R_q"), -1)
    return ideal_residual(derived, presets.build("GrQ")), f"{len(proper_rules(derived))} relations"


@check("eq22.rtt_extraction.grq", "R_q1 T1 T2 = -T2 T1 R_q2 on free entries gives the Gr_q relations")
def _c_rtt_split(convention):
    derived = relations_from_rtt(_R("R_q1"), _R("R_q2"), -1)
    return ideal_residual(derived, presets.build("GrQ")), f"{len(proper_rules(derived))} relations"


@check("eq10.triple_agreement", "endomorphism, similarity and RTT routes agree pairwise")
def _c_triple(convention):
    routes = {
        "endomorphism": derive_relations_from_endomorphisms(("Ah", "AhDual")),
        "similarity": derive_GrH_via_similarity(),
        "rtt": relations_from_rtt(_R("R_h"), _R("R_minus_h"), -1),
    }
    res = []
    names = list(routes)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            res += [(f"{a}/{b}: {r}", e) for r, e in same_ideal(routes[a], routes[b])]
    return res, ""


@check("eq10.h_flip", "R_-h T1 T2 = -T2 T1 R_h gives Gr_h with h -> -h")
def _c_hflip(convention):
    grh = presets.build("GrH")
    # a pattern with one h flips sign together with its replacement
    flipped = RewriteSystem(grh.alphabet, [(r.pattern, r.replacement if r.pattern.count("h") % 2
                                            else _flip(r.replacement)) for r in grh.rules],
                            label="GrH(-h)", precedence=grh.precedence, nilpotent="h")
    derived = relations_from_rtt(_R("R_minus_h"), _R("R_h"), -1)
    return ideal_residual(derived, flipped), ""


def _flip(e):
    return Element._wrap(e.alphabet, {w: (-c if w.count("h") % 2 else c) for w, c in e.terms.items()})


# -- coaction and columns ----------------------------------------------------

def _morphism_residual(source, target_system, images):
    return [(str(r), target_system.normal_form(substitute(r, images, target_system.alphabet)))
            for r in presets.build(source).relations()]


@check("eq11.coaction.mu", "x -> alpha eta + b y, xi -> c eta + delta y respects A_h")
def _c_mu(convention):
    comp = presets.build("GrH_x_AhDual")
    return _morphism_residual("Ah", comp, coaction_images(comp.alphabet, "Ah", GROUP_NAMES)), ""


@check("eq12.coaction.mu_star", "eta -> alpha x + b xi, y -> c x + delta xi respects A_h*")
def _c_mu_star(convention):
    comp = presets.build("GrH_x_Ah")
    return _morphism_residual("AhDual", comp,
                              coaction_images(comp.alphabet, "AhDual", GROUP_NAMES)), ""


def column_images(alphabet, column):
    even, odd = {"second": ("b", "delta"), "first": ("c", "alpha")}[column]
    g = Element.generator
    return {"x": g(alphabet, even), "xi": g(alphabet, odd), "h": g(alphabet, "h")}


@check("column.second", "x -> b, xi -> delta maps the A_h relations to zero in Gr_h")
def _c_col2(convention):
    grh = presets.build("GrH")
    return _morphism_residual("Ah", grh, column_images(grh.alphabet, "second")), ""


@check("column.first", "x -> c, xi -> alpha on the A_h relations", expect="report")
def _c_col1(convention):
    grh = presets.build("GrH")
    res = _morphism_residual("Ah", grh, column_images(grh.alphabet, "first"))
    return res, "first column is a morphism" if not _items(res) else "first column is not a morphism"


# -- superdeterminant and inverse ----------------------------------------------

@check("eq14.sdet.forms", "both superdeterminant expressions agree in localized Gr_h")
def _c_sdet_forms(convention):
    loc = presets.build("GrHLoc")
    d1, d2 = sdet_forms(loc)
    return loc.normal_form(d1 - d2), f"D = {loc.normal_form(d1)}"


@check("eq14.sdet.central", "D commutes with alpha, b, c, delta and h")
def _c_sdet_central(convention):
    loc = presets.build("GrHLoc")
    d, _ = sdet_forms(loc)
    res = []
    for g in ("alpha", "b", "c", "delta", "h"):
        x = Element.generator(loc.alphabet, g)
        res.append((f"[D,{g}]", loc.normal_form(d * x - x * d)))
    return res, ""


@check("eq14.sdet.relation_free", "the two expressions without any Gr_h relation", expect="report")
def _c_sdet_free(convention):
    loc = presets.build("GrHLoc")
    inverse_rules = [r for r in loc.rules if r.pattern in
                     {("b", "binv"), ("binv", "b"), ("c", "cinv"), ("cinv", "c")}]
    bare = RewriteSystem(loc.alphabet, inverse_rules + presets.h_rules(loc.alphabet),
                         label="inverses only", precedence=loc.precedence, nilpotent="h")
    d1, d2 = sdet_forms(loc)
    res = bare.normal_form(d1 - d2)
    return res, "equal without relations" if not res else "differ without relations"


@check("eq15.inverse", "T T^-1 = I2 = T^-1 T in localized Gr_h")
def _c_inverse(convention):
    loc = presets.build("GrHLoc")
    t, ti = T_hat(loc.alphabet), inverse_matrix(loc.alphabet)
    one = SuperMatrix.identity(2, loc.alphabet)
    return [("T Tinv", mat_mul(t, ti, loc) - one), ("Tinv T", mat_mul(ti, t, loc) - one)], ""


# -- RTT residuals -------------------------------------------------------------

def swapped_R_q():
    r = _R("R_q")
    rows = [list(row) for row in r.entries]
    rows[1][2], rows[2][1] = rows[2][1], rows[1][2]
    return SuperMatrix(rows, r.alphabet)


@check("eq16.rtt.grq", "R_q T1 T2 + T2 T1 R_q vanishes in Gr_q")
def _c_rtt_grq(convention):
    return rtt_residual(_R("R_q"), _R("R_q"), "GrQ", -1), ""


@check("eq16.rtt.grq.sign_flip", "R_q T1 T2 - T2 T1 R_q in Gr_q", expect="nonzero")
def _c_rtt_grq_flip(convention):
    return rtt_residual(_R("R_q"), _R("R_q"), "GrQ", +1), ""


@check("eq16.rtt.grq.swapped_entries", "R_q with entries (2,3), (3,2) exchanged", expect="nonzero")
def _c_rtt_grq_swap(convention):
    r = swapped_R_q()
    return rtt_residual(r, r, "GrQ", -1), ""


@check("eq22.rtt.split", "R_q1 T1 T2 + T2 T1 R_q2 vanishes in Gr_q")
def _c_rtt_split_res(convention):
    return rtt_residual(_R("R_q1"), _R("R_q2"), "GrQ", -1), ""


@check("eq22.rtt.split.sign_flip", "R_q1 T1 T2 - T2 T1 R_q2 in Gr_q", expect="nonzero")
def _c_rtt_split_flip(convention):
    return rtt_residual(_R("R_q1"), _R("R_q2"), "GrQ", +1), ""


@check("eq28.rtt.grh", "R_h T1 T2 + T2 T1 R_-h vanishes in Gr_h")
def _c_rtt_grh(convention):
    return rtt_residual(_R("R_h"), _R("R_minus_h"), "GrH", -1), ""


@check("eq28.rtt.grh.sign_flip", "R_h T1 T2 - T2 T1 R_-h in Gr_h", expect="nonzero")
def _c_rtt_grh_flip(convention):
    return rtt_residual(_R("R_h"), _R("R_minus_h"), "GrH", +1), ""


# -- matrices ----------------------------------------------------------------

@check("eq06.g_inverse", "g g^-1 = I2 using h^2 = 0")
def _c_g(convention):
    h = _h_sys()
    g, gi = _R("g"), _R("g_inv")
    one = SuperMatrix.identity(2, h.alphabet)
    return [mat_mul(g, gi, h) - one, mat_mul(gi, g, h) - one], ""


@check("eq20.decomposition", "R_q = R_q1 + R_q2")
def _c_decomp(convention):
    return _R("R_q1") + _R("R_q2") - _R("R_q"), ""


@check("eq24.g_inverse", "G_h G_-h = I4 and G_-h is G_h with h -> -h")
def _c_G(convention):
    h = _h_sys()
    g, gm = _R("G_h"), _R("G_minus_h")
    one = SuperMatrix.identity(4, h.alphabet)
    return [mat_mul(g, gm, h) - one, mat_mul(gm, g, h) - one, gm - g.flip_h()], ""


@check("eq27.contraction", "lim_{q->1} G_h R_q G_h / 2 = R_h")
def _c_contract_R(convention):
    return contract_R() - _R("R_h"), ""


@check("eq27.involution", "R_h^2 = I4 and (R_h - I)(R_h + I) = 0")
def _c_invol(convention):
    h = _h_sys()
    r = _R("R_h")
    one = SuperMatrix.identity(4, h.alphabet)
    return [mat_mul(r, r, h) - one, mat_mul(r - one, r + one, h)], ""


@check("eq27.h_flip", "h -> -h maps R_h to R_-h and is an involution")
def _c_rflip(convention):
    r = _R("R_h")
    return [r.flip_h() - _R("R_minus_h"), r.flip_h().flip_h() - r], ""


@check("golden.matrices", "R_q, R_q1, R_q2, R_h match the shipped golden files")
def _c_golden(convention):
    from .golden import GOLDEN, load_golden

    res = []
    for name in GOLDEN:
        m = _R(name)
        g = load_golden(name)
        for i, row in enumerate(m.entries):
            for j, e in enumerate(row):
                diff = e - g[i, j]
                if diff:
                    res.append((f"{name}({i + 1},{j + 1})", diff))
    return res, ""


def sdet_and_inverse_checks():
    return [run_check(n) for n in ("eq14.sdet.forms", "eq14.sdet.central",
                                   "eq14.sdet.relation_free", "eq15.inverse")]


def column_embedding_check():
    return run_check("column.second")


# -- Yang-Baxter ---------------------------------------------------------------

_GRADED_ONLY = {"graded": "zero", "graded_leg": "zero", "ungraded": "report"}


@check("eq19.qybe.identity", "I4 satisfies the QYBE", uses_convention=True)
def _c_qybe_id(convention):
    return qybe_residual(SuperMatrix.identity(4, _h_sys().alphabet), convention), ""


@check("eq19.qybe.r_q", "R_q does not satisfy the QYBE", expect="nonzero", uses_convention=True)
def _c_qybe_rq(convention):
    return qybe_residual(_R("R_q"), convention), ""


@check("eq21.qybe.r_q1", "R_q1 satisfies the graded QYBE", expect=_GRADED_ONLY,
       uses_convention=True)
def _c_qybe_rq1(convention):
    return qybe_residual(_R("R_q1"), convention), ""


@check("eq21.qybe.r_q2", "R_q2 satisfies the graded QYBE", expect=_GRADED_ONLY,
       uses_convention=True)
def _c_qybe_rq2(convention):
    return qybe_residual(_R("R_q2"), convention), ""


@check("eq19.qybe.r_h", "R_h does not satisfy the QYBE", uses_convention=True,
       expect={"graded": "nonzero", "ungraded": "nonzero", "graded_leg": "report"})
def _c_qybe_rh(convention):
    return qybe_residual(_R("R_h"), convention), ""


def modified_ybe_check(convention="graded"):
    """Both modified Yang-Baxter forms for R_h, with the convention recorded."""
    res29, res30, _ = modified_ybe_residuals(_R("R_h"), convention)
    return make_result("eq29_30.modified_ybe", [("eq29", res29), ("eq30", res30)],
                       notes=f"convention {convention}")


@check("eq29.modified_ybe", "(R12 R13 R23)(h) = (R23 R13 R12)(-h) for R_h", uses_convention=True)
def _c_eq29(convention):
    return modified_ybe_residuals(_R("R_h"), convention)[0], ""


@check("eq30.modified_ybe", "R12 R13 R23 + R23 R13 R12 = 2 I8 for R_h", uses_convention=True)
def _c_eq30(convention):
    return modified_ybe_residuals(_R("R_h"), convention)[1], ""


@check("eq29_30.equivalence", "the residuals of both forms coincide: B(h) + B(-h) = 2 I8",
       uses_convention=True)
def _c_equiv(convention):
    res29, res30, link = modified_ybe_residuals(_R("R_h"), convention)
    return [link, (res29 - res30) + link], ""


# -- degeneration h -> 0 -----------------------------------------------------

def _R0():
    return _R("R_h").at_h_zero()


@check("h0.grh.relations", "Gr_h at h = 0 is the supercommutative Gr(1|1)")
def _c_h0_rel(convention):
    return ideal_residual(h_zero_system(presets.build("GrH")), supercommutative_gr()), ""


@check("h0.grq.relations", "Gr_q at q = 1 is the supercommutative Gr(1|1)")
def _c_q1_rel(convention):
    grq = presets.build("GrQ")
    a = grq.alphabet
    rules = [(r.pattern, r.replacement.map_coefficients(lambda c: Scalar.coerce(c.limit_at_one())))
             for r in grq.rules]
    at_one = RewriteSystem(a, rules, label="GrQ|q=1", precedence=grq.precedence)
    return ideal_residual(at_one, supercommutative_gr()), ""


@check("h0.contraction.planes", "contraction with h = 0 gives the undeformed planes")
def _c_h0_planes(convention):
    res = []
    for src, plane in (("Aq", "Ah"), ("AqDual", "AhDual")):
        res += ideal_residual(h_zero_system(contract_plane(src, h_zero=True)), superplane(plane))
    return res, ""


@check("h0.similarity", "the similarity route with g = I gives the supercommutative Gr(1|1)")
def _c_h0_sim(convention):
    return ideal_residual(h_zero_system(derive_GrH_via_similarity(h_zero=True)),
                          supercommutative_gr()), ""


@check("h0.eq27.contraction", "R_q / 2 at q = 1 is diag(1, -1, -1, 1)")
def _c_h0_R(convention):
    a = _h_sys().alphabet
    return contract_R(h_zero=True) - SuperMatrix([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0],
                                                  [0, 0, 0, 1]], a), ""


@check("h0.eq28.rtt", "R_h at h = 0 in the RTT relation gives the supercommutative Gr(1|1)")
def _c_h0_rtt(convention):
    gr = supercommutative_gr()
    res = list(rtt_residual(_R0(), _R0(), gr, -1).entries)
    derived = relations_from_rtt(_R0(), _R0(), -1, target=gr)
    return [e for row in res for e in row] + ideal_residual(derived, gr), ""


@check("h0.eq30.modified_ybe", "modified Yang-Baxter forms for R_h at h = 0", uses_convention=True)
def _c_h0_ybe(convention):
    res29, res30, _ = modified_ybe_residuals(_R0(), convention)
    return [res29, res30, qybe_residual(_R0(), convention)], ""


@check("h0.coaction", "both coactions respect the undeformed planes")
def _c_h0_coaction(convention):
    res = []
    for source, comp_name in (("Ah", "GrH_x_AhDual"), ("AhDual", "GrH_x_Ah")):
        comp = h_zero_system(presets.build(comp_name))
        images = coaction_images(comp.alphabet, source, GROUP_NAMES)
        for r in superplane(source).relations():
            res.append((str(r), comp.normal_form(substitute(r, images, comp.alphabet))))
    return res, ""


@check("h0.sdet", "at h = 0 both determinant forms agree and are central")
def _c_h0_sdet(convention):
    loc = localized_supercommutative_gr()
    d1, d2 = sdet_forms(loc)
    res = [("forms", loc.normal_form(d1 - d2))]
    for g in GROUP_NAMES:
        x = Element.generator(loc.alphabet, g)
        res.append((f"[D,{g}]", loc.normal_form(d1 * x - x * d1)))
    t, ti = T_hat(loc.alphabet), inverse_matrix(loc.alphabet)
    res.append(("T Tinv", mat_mul(t, ti, loc) - SuperMatrix.identity(2, loc.alphabet)))
    return res, ""


@check("h0.column", "x -> b, xi -> delta maps the undeformed plane into Gr(1|1)")
def _c_h0_col(convention):
    gr = supercommutative_gr()
    g = Element.generator
    images = {"x": g(gr.alphabet, "b"), "xi": g(gr.alphabet, "delta")}
    return [(str(r), gr.normal_form(substitute(r, images, gr.alphabet)))
            for r in superplane("Ah").relations()], ""


# -- engine ------------------------------------------------------------------

@check("engine.presets", "every preset: relations reduce to zero, confluent to length 4, audit clean")
def _c_engine(convention):
    from .algebra import check_local_confluence, termination_audit

    res = []
    for name in presets.PRESET_NAMES:
        sys = presets.build(name)
        for r in sys.relations():
            res.append((f"{name} {r}", sys.normal_form(r)))
        for amb in check_local_confluence(sys, 4):
            res.append((f"{name} overlap {amb}", amb.left - amb.right))
        for bad in termination_audit(sys):
            res.append((f"{name} audit {bad}", Element.one(sys.alphabet)))
    return res, ""


# ----------------------------------------------------------------------------
# running
# ----------------------------------------------------------------------------

def _suffix(convention):
    return "" if convention == "graded" else f"[{convention}]"


def check_names(conventions=("graded",)):
    names = []
    for c in CHECKS:
        if c.uses_convention:
            names += [c.name + _suffix(conv) for conv in conventions]
        else:
            names.append(c.name)
    return names


def select(pattern, conventions=("graded",)):
    """Check names equal to ``pattern`` or starting with ``pattern.``."""
    names = check_names(conventions)
    if pattern in (None, "all"):
        return names
    chosen = [n for n in names if n == pattern or n.startswith(pattern + ".")
              or n.split("[")[0] == pattern]
    if not chosen:
        raise KeyError(f"unknown check {pattern!r}")
    return chosen


def run_check(name):
    base, _, conv = name.partition("[")
    convention = conv.rstrip("]") or "graded"
    for c in CHECKS:
        if c.name == base:
            residual, notes = c.run(convention)
            if c.uses_convention:
                notes = (f"convention {convention}; {notes}" if notes else f"convention {convention}")
            return make_result(name, residual, c.expectation(convention), notes, c.description)
    raise KeyError(f"unknown check {name!r}")


def run_suite(pattern="all", conventions=("graded",)):
    return [run_check(n) for n in select(pattern, conventions)]


def report(results, conventions=("graded",)):
    return {
        "format": "hdeform-report",
        "version": 1,
        "conventions": list(conventions),
        "checks": [r.to_dict() for r in results],
        "summary": {
            "total": len(results),
            "ok": sum(r.ok for r in results),
            "failed": [r.name for r in results if not r.ok],
        },
        "ok": all(r.ok for r in results),
    }


def report_schema():
    """The JSON schema every report conforms to."""
    import json
    from importlib import resources

    return json.loads(resources.files(__package__).joinpath("report_schema.json").read_text())
