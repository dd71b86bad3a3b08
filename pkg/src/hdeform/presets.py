"""Rewrite systems for the q- and h-deformed planes and Gr(1|1) groups.

Each rule is a relation oriented from its left side to its right side.
Wherever the odd parameter ``h`` is present, the h-migration rules are
appended::

    h*h -> 0,   g*h -> h*g  (g even),   g*h -> -h*g  (g odd)

Composite presets model a graded tensor product inside one free algebra:
letters of different sectors swap with the parity sign, group letters
before plane letters.
"""

import json

from .algebra import EVEN, ODD, Alphabet, Element, Generator, Rule, RewriteSystem, format_word
from .errors import InvalidRule, NonInvertibleDerivation

PRESET_NAMES = (
    "Aq", "AqDual", "GrQ", "Ah", "AhDual", "GrH", "GrHLoc",
    "GrH_x_AhDual", "GrH_x_Ah", "Generic_x_Plane",
)

# lower-case aliases used on the command line
ALIASES = {name.lower(): name for name in PRESET_NAMES}

GROUP = (("alpha", ODD), ("b", EVEN), ("c", EVEN), ("delta", ODD))
GENERIC = (("t11", ODD), ("t12", EVEN), ("t21", EVEN), ("t22", ODD))
PLANES = {
    "Aq": (("x", EVEN), ("xi", ODD)),
    "AqDual": (("eta", ODD), ("y", EVEN)),
    "Ah": (("x", EVEN), ("xi", ODD)),
    "AhDual": (("eta", ODD), ("y", EVEN)),
}
H = ("h", ODD)

# front-to-back order of letters in normal words
GROUP_PRECEDENCE = ("c", "b", "delta", "alpha")
PLANE_PRECEDENCE = {"Aq": ("xi", "x"), "AqDual": ("y", "eta"),
                    "Ah": ("xi", "x"), "AhDual": ("y", "eta")}

# defining relations, as (pattern, replacement text)
PLANE_RULES = {
    "Aq": [(("x", "xi"), "q*xi*x"), (("xi", "xi"), "0")],
    "AqDual": [(("eta", "eta"), "0"), (("eta", "y"), "q^-1*y*eta")],
    "Ah": [(("x", "xi"), "xi*x + h*x^2"), (("xi", "xi"), "-h*x*xi")],
    "AhDual": [(("eta", "eta"), "0"), (("eta", "y"), "y*eta")],
}
GRQ_RULES = [
    (("alpha", "b"), "q^-1*b*alpha"),
    (("alpha", "c"), "q^-1*c*alpha"),
    (("delta", "b"), "q^-1*b*delta"),
    (("delta", "c"), "q^-1*c*delta"),
    (("alpha", "delta"), "-delta*alpha"),
    (("alpha", "alpha"), "0"),
    (("delta", "delta"), "0"),
    (("b", "c"), "c*b + (q - q^-1)*delta*alpha"),
]
GRH_RULES = [
    (("alpha", "b"), "b*alpha + h*b^2"),
    (("alpha", "c"), "c*alpha + h*(b*c + delta*alpha)"),
    (("delta", "b"), "b*delta - h*b^2"),
    (("delta", "c"), "c*delta - h*(c*b - alpha*delta)"),
    (("alpha", "alpha"), "h*alpha*b"),
    (("alpha", "delta"), "-delta*alpha + h*(delta*b - b*alpha)"),
    (("delta", "delta"), "-h*delta*b"),
    (("b", "c"), "c*b + h*(b*delta + alpha*b)"),
]


def _alphabet(*groups):
    return Alphabet([Generator(n, p) for group in groups for n, p in group])


def h_rules(alphabet, h="h"):
    """h*h -> 0 and the sign-graded migration of h to the front."""
    rules = [((h, h), Element.zero(alphabet))]
    for g in alphabet:
        if g.name == h:
            continue
        sign = -1 if g.parity == ODD else 1
        rules.append(((g.name, h), Element.monomial(alphabet, (h, g.name), sign)))
    return rules


def cross_rules(alphabet, front, back):
    """back-letter * front-letter -> (+/-) front-letter * back-letter."""
    rules = []
    for b_name, b_par in back:
        for f_name, f_par in front:
            sign = -1 if (b_par and f_par) else 1
            rules.append(((b_name, f_name), Element.monomial(alphabet, (f_name, b_name), sign)))
    return rules


def _parsed(alphabet, rules):
    return [(p, Element.parse(r, alphabet)) for p, r in rules]


def _plane(name):
    has_h = name.startswith("Ah")
    a = _alphabet(PLANES[name], (H,) if has_h else ())
    rules = _parsed(a, PLANE_RULES[name])
    precedence = PLANE_PRECEDENCE[name]
    if has_h:
        rules += h_rules(a)
        precedence = ("h",) + precedence
    return RewriteSystem(a, rules, label=name, precedence=precedence,
                         nilpotent="h" if has_h else None)


def _grq():
    a = _alphabet(GROUP)
    return RewriteSystem(a, _parsed(a, GRQ_RULES), label="GrQ", precedence=GROUP_PRECEDENCE)


def _grh():
    a = _alphabet(GROUP, (H,))
    rules = _parsed(a, GRH_RULES) + h_rules(a)
    return RewriteSystem(a, rules, label="GrH", precedence=("h",) + GROUP_PRECEDENCE,
                         nilpotent="h")


def group_x_plane(plane, label=None):
    """Gr_h(1|1) and an h-plane in one algebra with graded cross-commutation."""
    a = _alphabet(GROUP, PLANES[plane], (H,))
    rules = (_parsed(a, GRH_RULES) + _parsed(a, PLANE_RULES[plane])
             + cross_rules(a, GROUP, PLANES[plane]) + h_rules(a))
    return RewriteSystem(a, rules, label=label or f"GrH_x_{plane}",
                         precedence=("h",) + GROUP_PRECEDENCE + PLANE_PRECEDENCE[plane],
                         nilpotent="h")


def generic_x_plane(plane="Ah", label=None):
    """Relation-free matrix entries t11, t12, t21, t22 next to a plane sector."""
    has_h = plane.startswith("Ah")
    a = _alphabet(GENERIC, PLANES[plane], (H,) if has_h else ())
    rules = _parsed(a, PLANE_RULES[plane]) + cross_rules(a, GENERIC, PLANES[plane])
    precedence = tuple(n for n, _ in GENERIC) + PLANE_PRECEDENCE[plane]
    if has_h:
        rules += h_rules(a)
        precedence = ("h",) + precedence
    return RewriteSystem(a, rules, label=label or f"Generic_x_{plane}",
                         precedence=precedence, nilpotent="h" if has_h else None)


def free_system(alphabet, label="free", nilpotent=None, precedence=None):
    """No relations, or only the h-migration rules when ``nilpotent`` is set."""
    rules = h_rules(alphabet, nilpotent) if nilpotent else []
    return RewriteSystem(alphabet, rules, label=label, nilpotent=nilpotent,
                         precedence=precedence)


def h_only(alphabet, label="h-rules"):
    return free_system(alphabet, label=label, nilpotent="h",
                       precedence=("h",) + tuple(n for n in alphabet.names if n != "h"))


def scalar_h_system():
    """The algebra generated by h alone (entries of R_h and G_h)."""
    a = _alphabet((H,))
    return RewriteSystem(a, [(("h", "h"), Element.zero(a))], label="H", nilpotent="h")


def inverse_name(u):
    return f"{u}inv"


def extend_with_inverses(system, invertibles, label=None):
    """Adjoin formal inverses of even generators with derived exchange rules.

    For an exchange rule ``g*u -> lam*u*g + t`` the rule
    ``g*uinv -> lam^-1*(uinv*g - uinv*t*uinv)`` follows by multiplying with
    ``uinv`` on both sides; ``u*g -> lam*g*u + t`` gives
    ``uinv*g -> lam^-1*(g*uinv - uinv*t*uinv)``.  Rules of any other shape
    that involve ``u`` cannot be inverted and raise
    :class:`NonInvertibleDerivation`.  Derived replacements are normalized
    once and frozen into the returned system.
    """
    alphabet = system.alphabet
    for u in invertibles:
        if u not in alphabet or alphabet.parity(u) != EVEN:
            raise NonInvertibleDerivation(f"{u} is not an even generator")
    new_alphabet = alphabet.extend(Generator(inverse_name(u), EVEN, inverse_of=u) for u in invertibles)
    precedence = list(system.precedence)
    for u in invertibles:
        precedence.insert(precedence.index(u) + 1, inverse_name(u))

    def lift(e):
        return e.with_alphabet(new_alphabet)

    rules = [(r.pattern, lift(r.replacement)) for r in system.rules]
    derived = []
    for u in invertibles:
        ui = inverse_name(u)
        uinv = Element.generator(new_alphabet, ui)
        one = Element.one(new_alphabet)
        found = [((u, ui), one), ((ui, u), one)]
        for pattern, repl in rules + derived:
            if u not in pattern:
                continue
            if len(pattern) != 2 or pattern == (u, u):
                raise NonInvertibleDerivation(f"cannot invert {u} through {format_word(pattern)}")
            g = pattern[1] if pattern[0] == u else pattern[0]
            swapped = (pattern[1], pattern[0])
            lam = repl.coefficient(swapped)
            if not lam:
                raise NonInvertibleDerivation(
                    f"{format_word(pattern)} -> {repl} has no invertible exchange term")
            tail = repl - Element.monomial(new_alphabet, swapped, lam)
            correction = uinv * tail * uinv
            gen = Element.generator(new_alphabet, g)
            if pattern[1] == u:
                found.append(((g, ui), (uinv * gen - correction).scale(lam.inverse())))
            else:
                found.append(((ui, g), (gen * uinv - correction).scale(lam.inverse())))
        derived.extend(found)

    frozen = [(p, _freeze(r, rules + derived, new_alphabet, precedence, system.nilpotent))
              for p, r in derived]
    return RewriteSystem(new_alphabet, rules + frozen, label=label or f"{system.label}Loc",
                         precedence=precedence, nilpotent=system.nilpotent,
                         step_limit=system.step_limit)


def _freeze(replacement, rules, alphabet, precedence, h):
    """Normal form of a derived replacement.

    With a nilpotent parameter every correction term carries one factor of
    h, so it is normalized by the h-truncated rules; the full rules would
    re-expand the pattern behind the h indefinitely.
    """
    if h is None:
        provisional = RewriteSystem(alphabet, rules, validate=False, precedence=precedence)
        return provisional.normal_form(replacement)
    truncated = []
    for pattern, repl in rules:
        if h in pattern:
            truncated.append((pattern, repl))
        else:
            truncated.append((pattern, Element._wrap(
                alphabet, {w: c for w, c in repl.terms.items() if h not in w})))
    system = RewriteSystem(alphabet, truncated, validate=False, precedence=precedence, nilpotent=h)
    h_free = Element._wrap(alphabet, {w: c for w, c in replacement.terms.items() if h not in w})
    h_part = replacement - h_free
    return system.normal_form(h_free) + system.normal_form(h_part)


_BUILDERS = {
    "Aq": lambda: _plane("Aq"),
    "AqDual": lambda: _plane("AqDual"),
    "GrQ": _grq,
    "Ah": lambda: _plane("Ah"),
    "AhDual": lambda: _plane("AhDual"),
    "GrH": _grh,
    "GrHLoc": lambda: extend_with_inverses(_grh(), ("c", "b"), label="GrHLoc"),
    "GrH_x_AhDual": lambda: group_x_plane("AhDual"),
    "GrH_x_Ah": lambda: group_x_plane("Ah"),
    "Generic_x_Plane": lambda: generic_x_plane("Ah", label="Generic_x_Plane"),
}

_CACHE = {}


def resolve_name(name):
    if name in _BUILDERS:
        return name
    try:
        return ALIASES[name.lower()]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None


def build(name):
    """The shared (immutable) preset called ``name``."""
    name = resolve_name(name)
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def defining_relations(name):
    """LHS - RHS of every rule of the preset."""
    return build(name).relations()


# ----------------------------------------------------------------------------
# JSON export / import
# ----------------------------------------------------------------------------

FORMAT_VERSION = 1


def to_dict(system):
    return {
        "format": "hdeform-preset",
        "version": FORMAT_VERSION,
        "label": system.label,
        "alphabet": [
            {"name": g.name, "parity": "odd" if g.parity else "even", "inverse_of": g.inverse_of}
            for g in system.alphabet
        ],
        "precedence": list(system.precedence),
        "nilpotent": system.nilpotent,
        "rules": [{"pattern": list(r.pattern), "replacement": str(r.replacement)}
                  for r in system.rules],
    }


def from_dict(data):
    if data.get("format") != "hdeform-preset":
        raise InvalidRule("not a preset document")
    alphabet = Alphabet(
        Generator(g["name"], 1 if g["parity"] == "odd" else 0, g.get("inverse_of"))
        for g in data["alphabet"]
    )
    rules = [Rule(tuple(r["pattern"]), Element.parse(r["replacement"], alphabet))
             for r in data["rules"]]
    return RewriteSystem(alphabet, rules, label=data.get("label", ""),
                         precedence=data.get("precedence"), nilpotent=data.get("nilpotent"))


def dumps(system):
    return json.dumps(to_dict(system), indent=2, ensure_ascii=False)


def loads(text):
    return from_dict(json.loads(text))


def export_presets(path, names=PRESET_NAMES):
    doc = {"presets": [to_dict(build(n)) for n in names]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    return doc
