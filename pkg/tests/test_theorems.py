import jsonschema
import pytest

from hdeform import presets, theorems
from hdeform.algebra import Element, check_local_confluence
from hdeform.errors import PoleAtOne
from hdeform.relations import same_ideal
from hdeform.supermatrix import SuperMatrix, build_matrix

GRH = presets.build("GrH")
GRQ = presets.build("GrQ")
H = presets.scalar_h_system()


def R(name):
    return build_matrix(name, H.alphabet)


def relation_strings(system):
    return {str(r) for r in theorems.proper_rules(system)}


def test_contract_plane_reproduces_h_planes():
    ah = theorems.contract_plane("Aq")
    assert same_ideal(ah, presets.build("Ah")) == []
    assert "x*xi -> xi*x + h*x^2" in relation_strings(ah)
    dual = theorems.contract_plane("AqDual")
    assert relation_strings(dual) == {"eta^2 -> 0", "eta*y -> y*eta"}


def test_contract_plane_without_h():
    plain = theorems.h_zero_system(theorems.contract_plane("Aq", h_zero=True))
    assert relation_strings(plain) == {"x*xi -> xi*x", "xi^2 -> 0"}


def test_contract_plane_requires_flat_limit():
    # the transformed xi'^2 relation alone still has a pole at q = 1
    a = presets.build("Ah").alphabet
    k = Element.monomial(a, ("h",), theorems.K)
    x, xi = Element.generator(a, "x"), Element.generator(a, "xi")
    image = presets.h_only(a).normal_form((k * x + xi) * (k * x + xi))
    with pytest.raises(PoleAtOne):
        image.map_coefficients(lambda c: c.limit_at_one())


def test_right_action_is_different():
    with pytest.raises(ValueError):
        theorems.contract_plane("Aq", "middle")
    assert theorems.same_ideal(theorems.contract_plane("Aq", "right"), presets.build("Ah")) != []


def test_similarity_route():
    derived = theorems.derive_GrH_via_similarity()
    assert same_ideal(derived, GRH) == []
    assert len(theorems.proper_rules(derived)) == 8
    assert derived.normal_form(derived.element("delta*delta + h*delta*b")).is_zero()
    assert check_local_confluence(derived, 4) == []


def test_similarity_route_at_h_zero():
    derived = theorems.h_zero_system(theorems.derive_GrH_via_similarity(h_zero=True))
    gr = theorems.supercommutative_gr()
    assert same_ideal(derived, gr) == []
    for text in ("alpha*alpha", "delta*delta", "alpha*delta + delta*alpha", "b*c - c*b"):
        assert gr.normal_form(gr.element(text)).is_zero()


def test_endomorphism_routes():
    q_case = theorems.derive_relations_from_endomorphisms(("Aq", "AqDual"))
    assert same_ideal(q_case, GRQ) == []
    assert q_case.normal_form(q_case.element("alpha*b - q^-1*b*alpha")).is_zero()
    h_case = theorems.derive_relations_from_endomorphisms(("Ah", "AhDual"))
    assert same_ideal(h_case, GRH) == []
    assert h_case.normal_form(h_case.element("alpha*c - c*alpha - h*(b*c + delta*alpha)")).is_zero()


def test_single_direction_is_not_enough():
    one_way = theorems.endomorphism_relations("Aq", "AqDual")
    assert 0 < len(one_way) < 8


def test_zero_matrix_satisfies_extracted_relations():
    derived = theorems.derive_relations_from_endomorphisms(("Ah", "AhDual"))
    zero = {n: Element.zero(derived.alphabet) for n in ("alpha", "b", "c", "delta")}
    zero["h"] = Element.generator(derived.alphabet, "h")
    for r in derived.relations():
        assert theorems.substitute(r, zero, derived.alphabet).is_zero() or "h" in str(r)


def test_rtt_residuals():
    assert theorems.rtt_residual(R("R_q"), R("R_q"), "GrQ", -1).is_zero()
    assert theorems.rtt_residual(R("R_h"), R("R_minus_h"), "GrH", -1).is_zero()
    assert not theorems.rtt_residual(R("R_q"), R("R_q"), "GrQ", +1).is_zero()
    assert not theorems.rtt_residual(R("R_h"), R("R_h"), "GrH", -1).is_zero()
    swapped = theorems.swapped_R_q()
    assert not theorems.rtt_residual(swapped, swapped, "GrQ", -1).is_zero()


@pytest.mark.parametrize("left,right,target", [
    ("R_h", "R_minus_h", "GrH"), ("R_q", "R_q", "GrQ"), ("R_q1", "R_q2", "GrQ")])
def test_relations_from_rtt(left, right, target):
    derived = theorems.relations_from_rtt(R(left), R(right), -1)
    assert same_ideal(derived, presets.build(target)) == []


def test_contract_R():
    r = theorems.contract_R()
    assert r == R("R_h")
    assert r[3, 1] == Element.parse("h", H.alphabet)
    assert r[3, 2] == Element.parse("-h", H.alphabet)
    assert theorems.contract_R(h_zero=True) == SuperMatrix(
        [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]], H.alphabet)
    assert R("G_h").at_h_zero() == R("I4")


def test_qybe_landscape():
    assert not theorems.qybe_residual(R("R_q"), "graded").is_zero()
    assert theorems.qybe_residual(R("R_q1"), "graded").is_zero()
    assert theorems.qybe_residual(R("R_q2"), "graded").is_zero()
    assert theorems.qybe_residual(R("I4"), "graded").is_zero()
    for convention in ("graded", "ungraded"):
        assert not theorems.qybe_residual(R("R_h"), convention).is_zero()


def test_modified_ybe():
    result = theorems.modified_ybe_check("graded")
    assert result.passed and "graded" in result.convention_notes
    for convention in ("graded", "ungraded"):
        res29, res30, link = theorems.modified_ybe_residuals(R("R_h"), convention)
        assert res29.is_zero() and res30.is_zero() and link.is_zero()


def test_sdet_and_inverse():
    results = {r.name: r for r in theorems.sdet_and_inverse_checks()}
    assert results["eq14.sdet.forms"].passed
    assert results["eq14.sdet.central"].passed
    assert results["eq15.inverse"].passed
    assert results["eq14.sdet.relation_free"].expect == "report"
    loc = presets.build("GrHLoc")
    t_inv = theorems.inverse_matrix(loc.alphabet)
    entry = loc.element("alpha") * t_inv[0, 0] + loc.element("b") * t_inv[1, 0]
    assert loc.normal_form(entry) == Element.one(loc.alphabet)


def test_column_embedding():
    assert theorems.column_embedding_check().passed
    images = theorems.column_images(GRH.alphabet, "second")
    image = theorems.substitute(presets.build("Ah").element("xi*xi + h*x*xi"), images, GRH.alphabet)
    assert image == GRH.element("delta*delta + h*b*delta")
    assert GRH.normal_form(image).is_zero()


def test_check_result_semantics():
    r = theorems.make_result("x", [Element.one(GRH.alphabet)], expect="nonzero")
    assert not r.passed and r.ok and r.residual_summary == 1
    r = theorems.make_result("x", [], expect="zero")
    assert r.passed and r.ok and r.witnesses == []
    many = [("e", Element.one(GRH.alphabet))] * 5
    assert len(theorems.make_result("x", many).witnesses) == 3


def test_selection():
    assert theorems.select("eq16") == ["eq16.rtt_extraction.grq", "eq16.rtt.grq",
                                       "eq16.rtt.grq.sign_flip", "eq16.rtt.grq.swapped_entries"]
    assert "eq30.modified_ybe[ungraded]" in theorems.select("eq30", ("graded", "ungraded"))
    with pytest.raises(KeyError):
        theorems.select("eq99")


def test_report_schema():
    results = theorems.run_suite("all", ("graded", "ungraded"))
    rep = theorems.report(results, ("graded", "ungraded"))
    jsonschema.validate(rep, theorems.report_schema())
    assert rep["ok"]
