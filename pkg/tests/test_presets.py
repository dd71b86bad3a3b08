import json
import random

import pytest

from helpers import random_word
from hdeform import presets
from hdeform.algebra import (
    EVEN, Alphabet, Element, Generator, RewriteSystem, check_local_confluence, termination_audit,
)
from hdeform.errors import NonInvertibleDerivation

GRH = presets.build("GrH")
LOC = presets.build("GrHLoc")


def rule_of(system, text):
    pattern = tuple(text.split("*"))
    return next(r for r in system.rules if r.pattern == pattern)


@pytest.mark.parametrize("name", presets.PRESET_NAMES)
def test_preset_sound(name):
    system = presets.build(name)
    assert all(system.normal_form(r).is_zero() for r in system.relations())
    assert check_local_confluence(system, 4) == []
    assert termination_audit(system) == []


def test_grq_bc_rule():
    grq = presets.build("GrQ")
    assert rule_of(grq, "b*c").replacement == grq.element("c*b + (q - q^-1)*delta*alpha")


def test_ahdual_rules():
    dual = presets.build("AhDual")
    assert rule_of(dual, "eta*eta").replacement.is_zero()
    assert rule_of(dual, "eta*y").replacement == dual.element("y*eta")


def test_ah_xi_squared():
    ah = presets.build("Ah")
    assert ah.normal_form(ah.element("xi*xi")) == ah.normal_form(ah.element("-h*x*xi"))
    assert str(ah.normal_form(ah.element("xi*xi"))) == "-h*xi*x"


def test_names_and_aliases():
    assert presets.build("grh") is presets.build("GrH")
    with pytest.raises(KeyError):
        presets.build("nope")


def test_h_rules_migrate_h_forward():
    assert GRH.normal_form(GRH.element("alpha*h")) == GRH.element("-h*alpha")
    assert GRH.normal_form(GRH.element("b*h")) == GRH.element("h*b")
    assert GRH.normal_form(GRH.element("alpha*h*b*h")).is_zero()


def test_composite_cross_signs():
    comp = presets.build("GrH_x_AhDual")
    assert comp.normal_form(comp.element("eta*alpha")) == comp.element("-alpha*eta")
    assert comp.normal_form(comp.element("y*alpha")) == comp.element("alpha*y")
    generic = presets.build("Generic_x_Plane")
    parities = {g.name: g.parity for g in generic.alphabet}
    assert (parities["t11"], parities["t12"], parities["t21"], parities["t22"]) == (1, 0, 0, 1)
    # the t-sector carries no relations
    assert generic.normal_form(generic.element("t12*t11")) == generic.element("t12*t11")


def test_inverse_rules():
    assert LOC.normal_form(LOC.element("c*cinv")) == Element.one(LOC.alphabet)
    assert LOC.normal_form(LOC.element("cinv*c*b")) == LOC.element("b")
    # the derived alpha*cinv rule is consistent with alpha*c -> c*alpha + h(bc + delta alpha)
    lhs = LOC.normal_form(LOC.element("cinv*alpha*c"))
    assert LOC.normal_form(LOC.element("cinv*(c*alpha + h*(b*c + delta*alpha))")) == lhs
    assert any(r.pattern == ("alpha", "cinv") for r in LOC.rules)
    assert LOC.normal_form(LOC.element("alpha*cinv*c")) == LOC.element("alpha")


def test_inverse_of_non_invertible():
    with pytest.raises(NonInvertibleDerivation):
        presets.extend_with_inverses(GRH, ("alpha",))
    a = Alphabet([Generator("u", EVEN), Generator("v", EVEN)])
    squash = RewriteSystem(a, [(("u", "v"), "u")])
    with pytest.raises(NonInvertibleDerivation):
        presets.extend_with_inverses(squash, ("u",))


def test_json_roundtrip(tmp_path):
    for name in presets.PRESET_NAMES:
        system = presets.build(name)
        back = presets.loads(presets.dumps(system))
        assert back.alphabet == system.alphabet
        assert [(r.pattern, r.replacement) for r in back.rules] == \
               [(r.pattern, r.replacement.with_alphabet(back.alphabet)) for r in system.rules]
    path = tmp_path / "presets.json"
    presets.export_presets(path)
    doc = json.loads(path.read_text())
    assert [p["label"] for p in doc["presets"]] == list(presets.PRESET_NAMES)
    assert {"name": "cinv", "parity": "even", "inverse_of": "c"} in doc["presets"][6]["alphabet"]


@pytest.mark.parametrize("name", ["GrH", "GrQ"])
def test_second_column_closure(name):
    system = presets.build(name)
    letters = [n for n in ("b", "delta", "h") if n in system.alphabet]
    rng = random.Random(name)
    for _ in range(300):
        word = random_word(rng, letters, 5)
        nf = system.normal_form(Element.monomial(system.alphabet, word))
        assert all(set(w) <= set(letters) for w in nf.terms)


def test_localization_is_conservative():
    rng = random.Random(5)
    names = GRH.alphabet.names
    for _ in range(500):
        word = random_word(rng, names, 5)
        plain = GRH.normal_form(Element.monomial(GRH.alphabet, word))
        local = LOC.normal_form(Element.monomial(LOC.alphabet, word))
        assert local == plain.with_alphabet(LOC.alphabet)
