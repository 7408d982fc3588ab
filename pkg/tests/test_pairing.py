import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsuper.coeffring import ONE, ZERO, Laurent
from qsuper.falg import FAlgebra
from qsuper.pairing import (
    PairingEngine,
    Report,
    pairing_matrix_rank,
    skew_primitivity_check,
    verify_J_coideal,
    verify_J_orthogonal,
    verify_R_orthogonal,
    verify_skew_primitivity,
)
from qsuper.supercore import E, Element, F, G, ParityDatum, TensorElement, Toral
from qsuper.ualg import UAlgebra
from strategies import datums, fwords

D01 = ParityDatum.from_bits("01")
D000 = ParityDatum.from_bits("000")


def xw(d, *pairs):
    return Element.word(tuple(d.fgen(i, j) for i, j in pairs))


def uw(*letters):
    return Element.word(tuple(letters))


def test_base_values():
    eng = PairingEngine(D01)
    assert eng.pair(xw(D01, (1, 2)), uw(E(1))) == ONE
    assert eng.pair(xw(D01, (2, 1)), uw(F(1))) == ONE
    assert eng.pair(xw(D01, (1, 2)), uw(F(1))) == ZERO
    for i in (1, 2):
        for j in (1, 2):
            assert eng.pair(xw(D01, (i, j)), Element.one()) == (ONE if i == j else ZERO)


def test_ordered_root_vector_pairing():
    eng = PairingEngine(D000)
    assert eng.pair(xw(D000, (1, 3)), uw(E(1), E(2))) == ONE
    assert eng.pair(xw(D000, (1, 3)), uw(E(2), E(1))) == ZERO


def test_product_against_gamma():
    d00 = ParityDatum.from_bits("00")
    assert PairingEngine(d00).pair(xw(d00, (1, 1), (2, 2)), uw(G(1))) == ONE
    assert PairingEngine(D01).pair(xw(D01, (1, 1), (2, 2)), uw(G(1))) == ONE


def test_toral_base_value():
    eng = PairingEngine(D01)
    assert eng.pair(xw(D01, (2, 2)), uw(Toral((1, 3)))) == Laurent.mono(Toral((1, 3)).vec[1])


def test_tensor_pairing_examples():
    eng = PairingEngine(D01)
    x12, x21 = D01.fgen(1, 2), D01.fgen(2, 1)
    assert eng.pair_tensor(TensorElement.pure((x12,), (x21,)), TensorElement.pure((E(1),), (F(1),))) == -ONE
    assert eng.pair_tensor(TensorElement.pure((), ()), TensorElement.pure((), ())) == ONE
    assert eng.pair_tensor(TensorElement.pure((x12,), (x21,)), TensorElement.pure((F(1),), (F(1),))) == ZERO


@pytest.mark.parametrize("bits", ["01", "10", "00", "11"])
def test_r_orthogonal_rank_two(bits):
    rep = verify_R_orthogonal(ParityDatum.from_bits(bits), "formal", 4)
    assert rep.passed, rep.failures[:3]
    assert rep.cases_total > 0


def test_r_orthogonal_polynomial_form():
    assert verify_R_orthogonal(D01, "polynomial", 3).passed


def test_r_orthogonal_detects_a_wrong_serre_coefficient(monkeypatch):
    original = UAlgebra.ideal_generators

    def classical_serre(self, form="formal"):
        out = []
        for g in original(self, form):
            if g.family == "serre":
                # the middle word a b a gets 2 instead of the quantum integer q + 1/q
                terms = {w: (Laurent.const(-2) if w[0] == w[2] != w[1] else c) for w, c in g.element.terms.items()}
                g = type(g)(g.family, g.label, Element(terms), g.group_like, g.side)
            out.append(g)
        return out

    serre_labels = {g.label for g in original(UAlgebra(D000)) if g.family == "serre"}
    monkeypatch.setattr(UAlgebra, "ideal_generators", classical_serre)
    rep = verify_R_orthogonal(D000, "formal", 3)
    assert not rep.passed
    assert {f["rhs"] for f in rep.failures} <= serre_labels


def test_j_orthogonal_rank_two():
    rep = verify_J_orthogonal(D01, "standard", 3)
    assert rep.passed and rep.cases_failed == 0


def test_odd_square_is_orthogonal_to_short_words():
    eng = PairingEngine(D01)
    eta = xw(D01, (1, 2), (1, 2))
    for w in UAlgebra(D01).words_upto(3):
        assert eng.pair(eta, Element.word(w)) == ZERO


def test_j_orthogonal_detects_a_wrong_relation():
    eng = PairingEngine(D01)
    # x11 x12 = q x12 x11 holds; the classical swap does not
    wrong = xw(D01, (1, 1), (1, 2)) - xw(D01, (1, 2), (1, 1))
    assert any(eng.pair(wrong, Element.word(w)) for w in UAlgebra(D01).words_upto(2))


def test_j_coideal_rank_two():
    rep = verify_J_coideal(D01)
    assert rep.passed
    assert rep.cases_total == len(FAlgebra(D01).relation_generators())


def test_skew_primitivity_examples():
    U = UAlgebra(D000)
    comm = uw(G(1), G(2)) - uw(G(2), G(1))
    assert skew_primitivity_check(U, comm, (0, 0, 0)).is_zero()
    Ug = UAlgebra(D01)
    h2 = tuple(c.scale(2) for c in D01.H(1))
    assert skew_primitivity_check(Ug, uw(E(1), E(1)), h2).is_zero()
    serre = [g for g in U.ideal_generators() if g.family == "serre" and g.side == "left"]
    assert serre
    for g in serre:
        assert skew_primitivity_check(U, g.element, g.group_like).is_zero()
    # a wrong group-like leaves a residue
    assert not skew_primitivity_check(Ug, uw(E(1), E(1)), D01.H(1)).is_zero()


def test_skew_suite_rank_two():
    assert verify_skew_primitivity(D01).passed


def test_rank_examples():
    assert pairing_matrix_rank(D01, 1, 1) == 5  # unit row plus the 4 generators
    assert pairing_matrix_rank(D01, 0, 0) == 1
    assert pairing_matrix_rank(D01, 2, 2) == len(FAlgebra(D01).pbw_words_upto(2)) == 13


def test_generator_block_is_a_permutation():
    eng = PairingEngine(D01)
    letters = [E(1), F(1), G(1), G(2)]
    mat = [[eng.pair_word((g,), (u,)) for u in letters] for g in range(4)]
    assert sorted(sum(1 for c in row if c) for row in mat) == [1, 1, 1, 1]
    assert all(sum(1 for row in mat if row[k]) == 1 for k in range(4))


def test_report_json_schema():
    rep = Report("demo", "01", "standard")
    rep.record(True)
    rep.record(False, "b", "a", "1")
    data = json.loads(rep.to_json())
    assert set(data) >= {"suite", "datum", "mode", "cases_total", "cases_failed", "failures"}
    assert data["cases_total"] == 2 and data["cases_failed"] == 1
    assert data["failures"] == [{"lhs": "b", "rhs": "a", "value": "1"}]


# -- properties ---------------------------------------------------------------

_engines = {}


def engine(d, prune=True):
    key = (d, prune)
    if key not in _engines:
        _engines[key] = PairingEngine(d, prune=prune)
    return _engines[key]


def uwords(d, max_len):
    return st.lists(st.sampled_from(UAlgebra(d).letters()), max_size=max_len).map(tuple)


@given(st.data())
def test_split_point_independence(data):
    d = data.draw(datums())
    eng = engine(d)
    i, j = data.draw(st.integers(1, d.n)), data.draw(st.integers(1, d.n))
    w = data.draw(uwords(d, 5))
    target = eng.pair_gen(d.fgen(i, j), w)
    for k in range(len(w) + 1):
        head, tail = w[:k], w[k:]
        total = ZERO
        for a in range(1, d.n + 1):
            s = (d.pij(i, a) * d.pij(a, j) + d.pij(a, j) * d.word_parity(head)) % 2
            term = eng.pair_word((d.fgen(i, a),), head) * eng.pair_word((d.fgen(a, j),), tail)
            total = total - term if s else total + term
        assert total == target, k


@given(st.data())
def test_pairing_respects_normal_form(data):
    d = data.draw(datums())
    eng = engine(d)
    f = Element.word(data.draw(fwords(d.n, 4)))
    u = Element.word(data.draw(uwords(d, 3)))
    assert eng.pair(FAlgebra(d).normal_form(f), u) == eng.pair(f, u)


@given(st.data())
def test_product_coproduct_duality(data):
    d = data.draw(datums())
    eng = engine(d)
    F = FAlgebra(d)
    f = data.draw(fwords(d.n, 3))
    u1, u2 = data.draw(uwords(d, 2)), data.draw(uwords(d, 2))
    assert eng.pair_word(f, u1 + u2) == eng.pair_tensor(F.coproduct_free(f), TensorElement.pure(u1, u2))
    f1, f2 = data.draw(fwords(d.n, 2)), data.draw(fwords(d.n, 2))
    u = data.draw(uwords(d, 3))
    assert eng.pair_word(f1 + f2, u) == eng.pair_tensor(TensorElement.pure(f1, f2), eng.U.word_coproduct(u))


@given(st.data())
def test_unit_and_counit(data):
    d = data.draw(datums())
    eng = engine(d)
    f = data.draw(fwords(d.n, 4))
    u = data.draw(uwords(d, 4))
    assert eng.pair_word(f, ()) == FAlgebra(d).counit_word(f)
    assert eng.pair_word((), u) == eng.U.counit_word(u)


@given(st.data())
def test_matches_matrix_representation(data):
    d = data.draw(datums())
    eng = engine(d)
    w = data.draw(uwords(d, 4))
    mat = eng.U.matrix_rep(w)
    for i in range(1, d.n + 1):
        for j in range(1, d.n + 1):
            assert eng.pair_word((d.fgen(i, j),), w) == mat[i - 1][j - 1]


@given(st.data())
def test_weight_pruning_is_sound(data):
    d = data.draw(datums())
    pruned, full = engine(d), engine(d, prune=False)
    f = data.draw(fwords(d.n, 3))
    u = data.draw(uwords(d, 3))
    v = full.pair_word(f, u)
    assert v == pruned.pair_word(f, u)
    if pruned.fweight(f) != pruned.uweight(u):
        assert v == ZERO
