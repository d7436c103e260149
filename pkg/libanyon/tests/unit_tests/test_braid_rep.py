import math

import numpy as np
import pytest

from libanyon.braid_rep import (
    apply_word,
    build_rep,
    commutant_dimension,
    lie_closure,
    lie_closure_dim,
    verify_braid_relations,
    verify_determinants,
    verify_unitarity,
    verify_word_inverses,
)
from libanyon.braid_word import BraidError, parse_braid_word, random_braid_word
from libanyon.categories import EmptyFusionSpaceError, category_from_builtin, fibonacci_category, ising_category
from libanyon.categories.builtin import PHI
from libanyon.fusion_space import dimension

REL_TOL = 1e-10


def test_fibonacci_three_strand_golden():
    rep = build_rep(fibonacci_category(), ("tau",) * 3, "tau")
    s1 = np.diag([np.exp(-4j * np.pi / 5), np.exp(3j * np.pi / 5)])
    F = np.array([[1 / PHI, math.sqrt(1 / PHI)], [math.sqrt(1 / PHI), -1 / PHI]])
    assert np.max(np.abs(rep.generator(1) - s1)) < 1e-12, "rho(s1) should be diag(R^tt_1, R^tt_t)"
    assert np.max(np.abs(rep.generator(2) - F @ s1 @ F)) < 1e-12, "rho(s2) should be F rho(s1) F"


def _sectors(cat, x, n):
    return [c for c in range(cat.n_labels) if dimension(cat, (x,) * n, c) > 0]


BUILTINS = ["fibonacci", "ising", "su2k:1", "su2k:2", "su2k:3", "su2k:4"]


@pytest.mark.parametrize("name", BUILTINS)
def test_braid_relations(name):
    cat = category_from_builtin(name)
    x = 1
    for n in range(3, 7):
        for c in _sectors(cat, x, n):
            rep = build_rep(cat, (x,) * n, c)
            for report in (verify_braid_relations(rep, REL_TOL), verify_unitarity(rep, REL_TOL)):
                assert report.passed, f"{name} n={n} c={c}: {report.summary()}"
            assert verify_determinants(rep, REL_TOL).passed


def test_fibonacci_spectrum():
    cat = fibonacci_category()
    allowed = np.array([np.exp(-4j * np.pi / 5), np.exp(3j * np.pi / 5)])
    for n in range(2, 7):
        for c in _sectors(cat, 1, n):
            rep = build_rep(cat, (1,) * n, c)
            for i in range(1, n):
                for ev in np.linalg.eigvals(rep.generator(i)):
                    gap = np.min(np.abs(allowed - ev))
                    assert gap < REL_TOL, f"n={n} c={c}: eigenvalue {ev} of s{i} is not an R-symbol"


def test_two_strand_relations_are_vacuous():
    rep = build_rep(fibonacci_category(), ("tau",) * 2, "tau")
    report = verify_braid_relations(rep)
    assert report.passed and report.residual == 0.0
    assert report.notes, "Two-strand check should note that no relation was tested"


def test_word_inverses():
    cat = fibonacci_category()
    rep = build_rep(cat, ("tau",) * 5, "tau")
    report = verify_word_inverses(rep, n_words=200, max_length=40, rng=np.random.default_rng(0))
    assert report.passed, report.summary()

    rng = np.random.default_rng(1)
    for _ in range(20):
        w = random_braid_word(5, 12, rng)
        m = apply_word(rep, w)
        expected = np.eye(rep.dim)
        for i, e in w.letters:
            expected = expected @ rep.generator(i, e)
        assert np.allclose(m, expected), "Words multiply left to right"


def test_apply_word_identity_and_mismatch():
    rep = build_rep(fibonacci_category(), ("tau",) * 4, "1")
    assert np.allclose(apply_word(rep, parse_braid_word("", 4)), np.eye(rep.dim))
    with pytest.raises(BraidError):
        apply_word(rep, parse_braid_word("s1", 3))


def test_broken_generator_is_detected():
    rep = build_rep(fibonacci_category(), ("tau",) * 4, "tau")
    g = rep.generator(2).copy()
    g[0, 0] *= np.exp(0.1j)
    broken = rep.replace_generator(2, g)
    assert not verify_braid_relations(broken).passed, "A rephased entry should break Yang-Baxter"
    assert verify_braid_relations(rep).passed, "The original representation must be left untouched"


def test_build_errors():
    cat = ising_category()
    with pytest.raises(EmptyFusionSpaceError):
        build_rep(cat, ("sigma",) * 3, "1")
    with pytest.raises(BraidError, match="inhomogeneous leaves unsupported"):
        build_rep(cat, ("sigma", "psi", "sigma"), "psi")


def test_lie_closure_fibonacci():
    cat = fibonacci_category()
    rep3 = build_rep(cat, ("tau",) * 3, "tau")
    rep4 = build_rep(cat, ("tau",) * 4, "tau")
    assert rep3.dim == 2 and rep4.dim == 3
    assert lie_closure_dim(rep3.generators) == 3, "Fibonacci generators should span su(2)"
    report = lie_closure(rep4.generators)
    assert report.dimension == 8 and report.is_full, "Fibonacci generators should span su(3)"


def test_lie_closure_small_algebras():
    commuting = [np.diag([np.exp(0.3j), np.exp(-0.5j)]), np.diag([np.exp(1.1j), 1.0])]
    assert lie_closure_dim(commuting) == 1, "Commuting diagonal generators span one direction"
    assert lie_closure_dim([np.eye(2)]) == 0, "The identity has no traceless part"


def test_lie_closure_ising():
    cat = ising_category()
    rep = build_rep(cat, ("sigma",) * 4, "1")
    report = lie_closure(rep.generators)
    assert rep.dim == 2
    assert report.is_full and report.shifted_generators == (), "Ising logarithms still span su(2)"


def test_commutant():
    cat = fibonacci_category()
    rep = build_rep(cat, ("tau",) * 4, "tau")
    assert commutant_dimension(rep.generators) == 1, "Fibonacci representation is irreducible"
    diag = [np.diag([1.0, 1.0, -1.0])]
    assert commutant_dimension(diag) == 5, "diag(1, 1, -1) commutes with gl(2) + gl(1)"
    with pytest.raises(BraidError):
        commutant_dimension([])


if __name__ == "__main__":
    test_fibonacci_three_strand_golden()
    for name in BUILTINS:
        test_braid_relations(name)
    test_fibonacci_spectrum()
    test_two_strand_relations_are_vacuous()
    test_word_inverses()
    test_apply_word_identity_and_mismatch()
    test_broken_generator_is_detected()
    test_build_errors()
    test_lie_closure_fibonacci()
    test_lie_closure_small_algebras()
    test_lie_closure_ising()
    test_commutant()
