"""Split Jacobians of genus-2 graphs.

A strongly optimal cover mu (connected pushforward kernel, no dilation
factor) splits the Jacobian: the kernel circle TE' and the target circle TE
assemble into an isogeny TE' x TE -> Jac whose kernel, degree, and
polarization behaviour are all pinned down by the degree of mu.  The
complementary cover realizes the projection onto TE' geometrically.
"""

from fractions import Fraction

from .cover_analysis import (
    is_optimal,
    kernel_length,
    pullback_morphism,
    pushforward_morphism,
    quotient_and_gamma,
)
from .curves_covers import (
    DumbbellCurve,
    GeneralCircleCover,
    ThetaCurve,
    cover_degree,
    jacobian,
    target_length,
    validate_general_cover,
)
from .errors import NotIsogeny, NotOptimal, NotProductTarget, ShapeMismatch
from .exact_lattice import Matrix, block_diagonal, hstack, integer_kernel, vstack
from .tav import (
    Polarization,
    check_exact_sequence,
    isogeny_kernel_points,
    pullback_polarization,
)
from .torus_category import IntegralTorus, TorusMorphism, classify, compose, kernel0


class ComplementaryCover:
    """The cover of the kernel circle complementary to a strongly optimal
    cover: per-edge dilations and slope signs in the fixed edge order, the
    kernel circle length, the degree, and the full walk description."""

    __slots__ = ("target_length", "dilations", "signs", "degree", "general")

    def __init__(self, target_length, dilations, signs, degree, general):
        self.target_length = target_length
        self.dilations = dilations
        self.signs = signs
        self.degree = degree
        self.general = general

    def __repr__(self):
        return (
            f"ComplementaryCover(target_length={self.target_length}, "
            f"dilations={self.dilations}, signs={self.signs}, degree={self.degree})"
        )


class SplitReport:
    """Everything verify_split_package checks about a splitting, with the
    two isogenies recorded by their universal cover matrices."""

    __slots__ = (
        "phi",
        "phi_tilde",
        "kernel_points",
        "degree",
        "flags",
        "phi_morphism",
        "phi_tilde_morphism",
    )

    def __init__(self, phi, phi_tilde, kernel_points, degree, flags,
                 phi_morphism, phi_tilde_morphism):
        self.phi = phi
        self.phi_tilde = phi_tilde
        self.kernel_points = kernel_points
        self.degree = degree
        self.flags = flags
        self.phi_morphism = phi_morphism
        self.phi_tilde_morphism = phi_tilde_morphism

    @property
    def all_flags_hold(self):
        return all(self.flags.values())

    def __repr__(self):
        return (
            f"SplitReport(degree={self.degree}, flags={self.flags}, "
            f"kernel_points={self.kernel_points})"
        )


def _require_strongly_optimal(cover):
    """Reject covers whose Jacobian does not split off the target circle."""
    verdict = is_optimal(cover)
    if not verdict.kernel_connected:
        raise NotOptimal(
            f"pushforward kernel has {verdict.component_count} components"
        )
    gamma = quotient_and_gamma(cover)
    if gamma.a_sharp > 1:
        raise NotOptimal(
            f"cover factors through the multiplication-by-{gamma.a_sharp} "
            "dilation of its target"
        )


def _slopes_for(curve, row):
    """Per-edge integer slopes of the map with the given universal cover row."""
    slopes = []
    for edge in curve.EDGES:
        value = sum(
            Fraction(row[i]) * curve.CYCLE_COEFFICIENTS[edge][i] for i in range(2)
        )
        assert value.denominator == 1, "integral row must give integer slopes"
        slopes.append(int(value))
    return tuple(slopes)


def _vertex_positions(curve, row, length):
    """Images of P0 (the basepoint) and P1 under the universal cover row."""
    if isinstance(curve, ThetaCurve):
        raw = row[0] * curve.l_e  # integral of the basis forms along e
    else:
        raw = Fraction(0)  # the bridge lies in no cycle
    return {"P0": Fraction(0), "P1": raw % length}


def _walk_cover(curve, row, length):
    """GeneralCircleCover with the given universal cover row, built edge by
    edge from slopes and vertex positions."""
    slopes = _slopes_for(curve, row)
    positions = _vertex_positions(curve, row, length)
    edge_data = [
        (abs(slope), positions[curve.TAILS[edge]], slope * curve.edge_length(edge))
        for edge, slope in zip(curve.EDGES, slopes)
    ]
    general = GeneralCircleCover(curve.graph(), length, edge_data)
    violations = validate_general_cover(general)
    assert not violations, f"constructed walk cover is inconsistent: {violations}"
    return general, slopes


def complementary_cover(cover):
    """The cover of the kernel circle complementary to a strongly optimal
    cover; its slopes are the kernel direction paired with the cycle basis.
    """
    _require_strongly_optimal(cover)
    push = pushforward_morphism(cover)
    w = integer_kernel(push.f_hash)
    row = (w[0, 0], w[1, 0])
    length = kernel_length(cover)
    general, slopes = _walk_cover(cover.curve, row, length)
    degree = cover_degree(general)
    assert degree == cover_degree(cover), "complementary degree must match"
    signs = tuple(0 if s == 0 else (1 if s > 0 else -1) for s in slopes)
    dilations = tuple(abs(s) for s in slopes)
    return ComplementaryCover(length, dilations, signs, degree, general)


def splitting_isogeny(cover):
    """The isogeny TE' x TE -> Jac of a strongly optimal cover, assembled
    from the kernel inclusion and the pullback, with its kernel points."""
    _require_strongly_optimal(cover)
    push = pushforward_morphism(cover)
    te_prime, inclusion = kernel0(push)
    pull = pullback_morphism(cover)
    length = target_length(cover)
    source = IntegralTorus(
        2, block_diagonal(te_prime.pairing, Matrix([[length]]))
    )
    phi = TorusMorphism(
        source,
        push.source,
        vstack(inclusion.f_sharp, pull.f_sharp),
        hstack(inclusion.f_hash, pull.f_hash),
    )
    return phi, isogeny_kernel_points(phi)


def complementary_pushforward(cover):
    """Jac -> TE', the projection killing the pulled-back circle."""
    push = pushforward_morphism(cover)
    te_prime, _ = kernel0(push)
    w = integer_kernel(push.f_hash)
    length = te_prime.pairing[0, 0]
    f_hash = (w.transpose() * push.source.pairing) * Fraction(1, length)
    return TorusMorphism(push.source, te_prime, w, f_hash)


def _torsion_positions(length, degree):
    return sorted(Fraction(j, degree) * length for j in range(degree))


def verify_split_package(cover):
    """Run every check of the splitting theorem on one cover.

    Flags: the kernel of phi projects onto the full degree-torsion of both
    circle factors, phi_tilde . phi is multiplication by the degree, the
    principal polarization pulls back to degree times the principal one,
    and both short sequences (kernel inclusion then pushforward; pullback
    then complementary pushforward) are exact.
    """
    phi, kernel_points = splitting_isogeny(cover)
    degree = cover_degree(cover)
    push = pushforward_morphism(cover)
    pull = pullback_morphism(cover)
    _, inclusion = kernel0(push)
    comp = complementary_pushforward(cover)
    phi_tilde = TorusMorphism(
        push.source,
        phi.source,
        hstack(comp.f_sharp, push.f_sharp),
        vstack(comp.f_hash, push.f_hash),
    )
    scaled = degree * Matrix.identity(2)
    composite = compose(phi_tilde, phi)
    length_prime = phi.source.pairing[0, 0]
    length = phi.source.pairing[1, 1]
    first = sorted(point[0, 0] for point in kernel_points)
    second = sorted(point[1, 0] for point in kernel_points)
    pulled = pullback_polarization(phi, Polarization(Matrix.identity(2)))
    flags = {
        "kernel_matches_d_torsion_TEprime": first == _torsion_positions(length_prime, degree),
        "kernel_matches_d_torsion_TE": second == _torsion_positions(length, degree),
        "composite_is_mult_d": composite.f_sharp == scaled and composite.f_hash == scaled,
        "polarization_pullback_is_d_times_principal": pulled.zeta == scaled,
        "kernel_sequence_exact": check_exact_sequence(inclusion, push),
        "pullback_sequence_exact": check_exact_sequence(pull, comp),
    }
    return SplitReport(
        phi.universal_cover_matrix,
        phi_tilde.universal_cover_matrix,
        kernel_points,
        degree,
        flags,
        phi,
        phi_tilde,
    )


def cover_from_splitting(curve, iso, factor=1):
    """Reconstruct the circle cover of a factor from a splitting isogeny.

    iso must be an isogeny from the curve's Jacobian to a product of two
    circles (diagonal pairing); the selected factor's universal cover row
    dictates the per-edge slopes of the walk cover.
    """
    if not isinstance(curve, (ThetaCurve, DumbbellCurve)):
        raise ValueError("cover_from_splitting expects a genus-2 curve model")
    if factor not in (1, 2):
        raise ValueError("factor must be 1 or 2")
    jac = jacobian(curve).torus
    if iso.source != jac:
        raise ShapeMismatch("isogeny must start at the curve's Jacobian")
    if not classify(iso).isogeny:
        raise NotIsogeny("splitting map must be an isogeny")
    pairing = iso.target.pairing
    if iso.target.rank != 2 or pairing[0, 1] != 0 or pairing[1, 0] != 0:
        raise NotProductTarget("isogeny target must be a product of two circles")
    length = pairing[factor - 1, factor - 1]
    if length <= 0:
        raise NotProductTarget("circle factors must have positive length")
    cover_matrix = iso.universal_cover_matrix
    row = (cover_matrix[factor - 1, 0], cover_matrix[factor - 1, 1])
    general, _ = _walk_cover(curve, row, length)
    return general
