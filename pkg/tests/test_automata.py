import json

import pytest

from fibwang.automata import (
    START,
    DFAO,
    AbstractNumerationSystem,
    LanguageError,
    RejectionError,
    ans_rep,
    ans_val,
    decompose_ans,
    dfao_from_morphism,
    dfao_from_seed_1d,
    dfao_from_seed_2d,
    dot_export,
    fibonacci_dfao,
    fibonacci_letter_at,
    json_export,
    run,
    run_from,
    tile_at,
    tile_trace,
    trace,
    wang_dfao,
)
from fibwang.morphisms import FIBONACCI, PHI, PHI_SEED, Morphism1D, Morphism2D, SeedError, power1, power2, two_sided_fixed_point
from fibwang.numeration import decompose_z, decompose_z2, fib, h_recode, rep_f, rep_f2


@pytest.fixture(scope="module")
def fib_square():
    return AbstractNumerationSystem.from_morphism(power1(FIBONACCI, 2), "a")


def test_square_automaton_edges():
    dfao = dfao_from_morphism(power1(FIBONACCI, 2), "a")
    assert dfao.transitions == {
        ("a", 0): "a", ("a", 1): "b", ("a", 2): "a",
        ("b", 0): "a", ("b", 1): "b",
    }
    assert dfao.start == "a"


def test_plain_fibonacci_automaton():
    dfao = dfao_from_morphism(FIBONACCI, "a")
    assert dfao.transitions == {("a", 0): "a", ("a", 1): "b", ("b", 0): "a"}


def test_non_prolongable_morphism():
    with pytest.raises(SeedError):
        dfao_from_morphism(Morphism1D({"a": "a", "b": "ab"}), "a")
    with pytest.raises(SeedError):
        dfao_from_morphism(FIBONACCI, "b")


def test_seeded_fibonacci_automaton():
    dfao = fibonacci_dfao()
    assert run(dfao, "0") == "a"
    assert run(dfao, "1") == "b"
    assert run(dfao, "100") == "a"
    assert trace(dfao, "100") == [START, "b", "a", "a"]
    assert set(dfao.states) == {START, "a", "b"}


def test_seeded_1d_rejects_bad_seed():
    with pytest.raises(SeedError):
        dfao_from_seed_1d(FIBONACCI, "a.b")


def test_dfao_forbids_edges_into_start():
    with pytest.raises(ValueError):
        DFAO({START, "a"}, (0,), {("a", 0): START}, START)
    with pytest.raises(ValueError):
        DFAO({"a"}, (0,), {("a", 1): "a"}, "a")


def test_run_rejection_reports_prefix():
    dfao = fibonacci_dfao()
    with pytest.raises(RejectionError) as info:
        run(dfao, "0011")
    assert info.value.prefix == (0, 0, 1)
    assert info.value.state == "b"


@pytest.mark.parametrize("n, letter", [(0, "a"), (-1, "b"), (5, "a"), (-2, "a")])
def test_fibonacci_letter_at(n, letter):
    assert fibonacci_letter_at(n) == letter


def test_fibonacci_letter_at_matches_fixed_point():
    lo, hi = -fib(14), fib(15)
    word = two_sided_fixed_point(FIBONACCI, "b.a", (lo, hi))
    assert "".join(fibonacci_letter_at(n) for n in range(lo, hi)) == word


def test_ans_rep_first_words(fib_square):
    words = [ans_rep(fib_square, n) for n in range(10)]
    assert words == ["", "1", "2", "10", "11", "20", "21", "22", "100", "101"]


def test_ans_val_ignores_leading_zeros(fib_square):
    assert ans_val(fib_square, "0101") == ans_val(fib_square, "101")
    assert ans_val(fib_square, "") == 0


def test_ans_round_trip(fib_square):
    for n in range(2000):
        assert fib_square.val(fib_square.rep(n)) == n


def test_ans_rejects_words_outside_the_language(fib_square):
    with pytest.raises(LanguageError):
        ans_val(fib_square, "12")
    with pytest.raises(ValueError):
        fib_square.rep(-1)


@pytest.mark.parametrize("n, expected", [(1, (0, 1)), (3, (1, 0)), (8, (3, 0))])
def test_decompose_ans(fib_square, n, expected):
    assert decompose_ans(fib_square, n) == expected


def test_decompose_ans_follows_the_square(fib_square):
    """x_n = sigma^2(x_m)[l] along the one-sided fixed point."""
    sq = power1(FIBONACCI, 2)
    x = two_sided_fixed_point(FIBONACCI, "b.a", (0, 3000))
    for n in range(1, 3000):
        m, ell = decompose_ans(fib_square, n)
        assert x[n] == sq.rule[x[m]][ell]


def test_one_sided_word_is_automatic(fib_square):
    """x_n is the state reached on rep_G(n)."""
    dfao = fib_square.dfao
    x = two_sided_fixed_point(FIBONACCI, "b.a", (0, fib(16)))
    for n in range(fib(16)):
        assert run(dfao, fib_square.rep(n)) == x[n]


def test_recoded_representation_matches(fib_square):
    """0 h(rep_G(n)) is the signed representation of n, padded."""
    for n in range(fib(15)):
        word = "0" + "".join(h_recode(d) for d in fib_square.rep(n))
        assert word.lstrip("0") == rep_f(n).lstrip("0")
        assert len(word) % 2 == 1


def test_decompose_z_agrees_with_the_square():
    """x_n = sigma^2(x_m)[l] on the two-sided fixed point."""
    sq = power1(FIBONACCI, 2)
    lo, hi = -fib(14), fib(15)
    x = two_sided_fixed_point(FIBONACCI, "b.a", (lo, hi))
    for n in range(lo, hi):
        if n in (-1, 0):
            continue
        m, ell = decompose_z(n)
        assert x[n - lo] == sq.rule[x[m - lo]][ell]


def test_wang_automaton_start_edges():
    dfao = wang_dfao()
    assert dfao.step(START, (1, 0)) == 8
    assert dfao.step(START, (0, 0)) == 12
    assert dfao.step(START, (1, 1)) == 1
    assert dfao.step(START, (0, 1)) == 6
    assert dfao.step(8, (0, 1)) == 3
    assert dfao.step(14, (1, 1)) == 1
    assert len(dfao.states) == 17


def test_wang_automaton_worked_example():
    assert tile_trace((-1, 6)) == [START, 8, 3, 8, 14, 1]
    assert tile_at((-1, 6)) == 1
    assert tile_at((0, 0)) == 12
    assert tile_at((-1, -1)) == 1
    assert run(wang_dfao(), rep_f2((-1, 6))) == 1


def test_two_digit_steps_follow_the_square():
    dfao = wang_dfao()
    sq = power2(PHI, 2)
    image = sq.rule[14]
    for l1 in range(image.width):
        for l2 in range(image.height):
            word = [(int(a), int(b)) for a, b in zip(h_recode(l1), h_recode(l2))]
            assert run_from(dfao, 14, word) == image[l1, l2]


def test_tile_at_decomposes():
    sq = power2(PHI, 2)
    for n1 in range(-20, 30):
        for n2 in range(-20, 30):
            if -1 <= n1 <= 0 and -1 <= n2 <= 0:
                continue
            m, ell = decompose_z2((n1, n2))
            assert tile_at((n1, n2)) == sq.rule[tile_at(m)][ell]


def test_seed_2d_rejects_large_images():
    omega = Morphism2D({0: [[0, 0, 0]]})
    with pytest.raises(ValueError):
        dfao_from_seed_2d(omega, PHI_SEED)


def test_dot_export():
    text = dot_export(fibonacci_dfao(), "fib1d")
    assert "START -1-> b" in text
    assert "START -0-> a" in text
    assert text.startswith("digraph fib1d {")
    wang = dot_export(wang_dfao(), "wang2d")
    assert wang.count("[shape=circle]") == 16 and "[shape=box]" in wang
    assert "START -(1,0)-> 8" in wang


def test_dot_export_is_deterministic():
    assert dot_export(wang_dfao()) == dot_export(dfao_from_seed_2d(PHI, PHI_SEED))


def test_json_export():
    doc = json.loads(json_export(wang_dfao()))
    assert len(doc["states"]) == 17
    assert doc["start"] == START
    assert {"from": START, "label": [1, 0], "to": 8} in doc["edges"]
    edges = {(e["from"], tuple(e["label"])): e["to"] for e in doc["edges"]}
    assert edges == {(q, c): r for (q, c), r in wang_dfao().transitions.items()}
