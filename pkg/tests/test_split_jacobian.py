"""Tests for complementary covers and split-Jacobian verification."""

from fractions import Fraction

import pytest

from oracles import cover_corpus, degree_two_cover
from tropjac.cover_analysis import is_optimal, quotient_and_gamma
from tropjac.curves_covers import (
    DumbbellCover,
    DumbbellCurve,
    ThetaCover,
    ThetaCurve,
    cover_degree,
    jacobian,
    validate_general_cover,
)
from tropjac.errors import (
    NotIsogeny,
    NotOptimal,
    NotProductTarget,
    ShapeMismatch,
)
from tropjac.exact_lattice import Matrix
from tropjac.split_jacobian import (
    complementary_cover,
    complementary_pushforward,
    cover_from_splitting,
    splitting_isogeny,
    verify_split_package,
)
from tropjac.torus_category import (
    classify,
    compose,
    identity_morphism,
    kernel_component_count,
)


def big_cover():
    return ThetaCover(ThetaCurve(1, 1, 1), (1, 1, 1), (4, 2, 2))


def tall_cover():
    return ThetaCover(ThetaCurve(1, 1, 4), (1, 1, 2), (2, 1, 1))


def strongly_optimal(cover):
    return is_optimal(cover).kernel_connected and quotient_and_gamma(cover).a_sharp == 1


# -------------------------------------------------------- complementary cover


def test_complementary_cover_of_degree_two_example():
    comp = complementary_cover(degree_two_cover())
    assert comp.target_length == 1
    assert comp.dilations == (0, 1, 1)  # contracts e
    assert comp.signs == (0, -1, 1)
    assert comp.degree == 2
    assert validate_general_cover(comp.general) == []
    assert cover_degree(comp.general) == 2


def test_complementary_cover_of_tall_theta():
    comp = complementary_cover(tall_cover())
    assert comp.target_length == 3
    assert comp.dilations == (1, 2, 1)
    assert comp.degree == 3


def test_complementary_cover_requires_strong_optimality():
    pytest.raises(NotOptimal, lambda: complementary_cover(big_cover()))
    disconnected = DumbbellCover(DumbbellCurve(1, 1, 1), (2, 2), (1, 1))
    pytest.raises(NotOptimal, lambda: complementary_cover(disconnected))
    connected_but_dilated = DumbbellCover(DumbbellCurve(1, 1, 1), (1, 1), (2, 2))
    pytest.raises(NotOptimal, lambda: complementary_cover(connected_but_dilated))


def test_complementary_pushforward_is_always_optimal():
    # the kernel functional is primitive and its value group is generated by
    # the kernel length, so the complementary projection never disconnects
    for cover in [c for c in cover_corpus() if strongly_optimal(c)][:25]:
        comp = complementary_pushforward(cover)
        assert classify(comp).surjective
        assert kernel_component_count(comp) == 1


# --------------------------------------------------------- splitting isogeny


def test_splitting_isogeny_of_degree_two_example():
    phi, kernel_points = splitting_isogeny(degree_two_cover())
    assert phi.universal_cover_matrix == Matrix([[1, 1], [2, 0]])
    assert phi.source.pairing == Matrix.diagonal([1, 3])
    assert classify(phi).isogeny
    assert [p.column_tuple(0) for p in kernel_points] == [
        (Fraction(0), Fraction(0)),
        (Fraction(1, 2), Fraction(3, 2)),
    ]


def test_splitting_isogeny_requires_strong_optimality():
    pytest.raises(NotOptimal, lambda: splitting_isogeny(big_cover()))


# ------------------------------------------------------------ verify package


def test_verify_split_package_on_degree_two_example():
    report = verify_split_package(degree_two_cover())
    assert report.phi == Matrix([[1, 1], [2, 0]])
    assert report.phi_tilde == Matrix([[0, 1], [2, -1]])
    assert report.degree == 2
    assert report.all_flags_hold
    assert set(report.flags) == {
        "kernel_matches_d_torsion_TEprime",
        "kernel_matches_d_torsion_TE",
        "composite_is_mult_d",
        "polarization_pullback_is_d_times_principal",
        "kernel_sequence_exact",
        "pullback_sequence_exact",
    }


def test_composite_is_multiplication_both_ways():
    report = verify_split_package(degree_two_cover())
    around = compose(report.phi_morphism, report.phi_tilde_morphism)
    assert around.f_sharp == 2 * Matrix.identity(2)
    assert around.f_hash == 2 * Matrix.identity(2)


def test_verify_split_package_on_dumbbell():
    cover = DumbbellCover(DumbbellCurve(1, 1, 1), (1, 1), (1, 1))
    report = verify_split_package(cover)
    assert report.degree == 2
    assert report.all_flags_hold


def test_verify_split_package_across_corpus_sample():
    sample = [c for c in cover_corpus() if strongly_optimal(c)][:20]
    assert sample
    for cover in sample:
        report = verify_split_package(cover)
        assert report.all_flags_hold
        assert len(report.kernel_points) == report.degree == cover_degree(cover)


# ------------------------------------------------------- cover from splitting


def test_cover_from_splitting_recovers_both_factors():
    report = verify_split_package(degree_two_cover())
    curve = ThetaCurve(1, 1, 1)
    second = cover_from_splitting(curve, report.phi_tilde_morphism, factor=2)
    assert second.dilations == (2, 1, 1)
    assert second.target_length == 3
    first = cover_from_splitting(curve, report.phi_tilde_morphism, factor=1)
    assert first.dilations == (0, 1, 1)
    assert first.target_length == 1


def test_cover_from_splitting_on_product_dumbbell():
    curve = DumbbellCurve(2, 3, 1)
    ident = identity_morphism(jacobian(curve).torus)
    general = cover_from_splitting(curve, ident, factor=1)
    assert general.dilations == (1, 0, 0)
    assert general.target_length == 2
    other = cover_from_splitting(curve, ident, factor=2)
    assert other.dilations == (0, 1, 0)
    assert other.target_length == 3


def test_cover_from_splitting_input_checking():
    curve = ThetaCurve(1, 1, 1)
    report = verify_split_package(degree_two_cover())
    tilde = report.phi_tilde_morphism
    # non-isogeny: the pushforward itself is surjective but not finite
    from tropjac.cover_analysis import pushforward_morphism

    push = pushforward_morphism(degree_two_cover())
    pytest.raises(NotIsogeny, lambda: cover_from_splitting(curve, push))
    # non-product target: the identity of the Jacobian
    ident = identity_morphism(jacobian(curve).torus)
    pytest.raises(NotProductTarget, lambda: cover_from_splitting(curve, ident))
    # source mismatch: feed a different curve's Jacobian
    pytest.raises(
        ShapeMismatch,
        lambda: cover_from_splitting(ThetaCurve(1, 1, 2), tilde),
    )
    pytest.raises(ValueError, lambda: cover_from_splitting(curve, tilde, factor=3))
