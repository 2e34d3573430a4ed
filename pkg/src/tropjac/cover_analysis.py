"""Torus-level analysis of circle covers of genus-2 graphs.

A valid cover mu of a circle induces mu_* : Jac -> C(l) on Jacobians; its
kernel circle, connectedness data, and the kernel of the pullback mu^* are
all computable from the dilation and winding numbers by exact integer
linear algebra.
"""

from fractions import Fraction
from math import gcd

from .curves_covers import (
    DumbbellCover,
    GeneralCircleCover,
    ThetaCover,
    cover_degree,
    jacobian,
    require_valid,
    target_length,
    validate_general_cover,
)
from .errors import InvalidCover, SourceMismatch
from .exact_lattice import Matrix, integer_kernel, xgcd
from .torus_category import TorusMorphism, circle, compose, dual_morphism


class GammaData:
    """Kernel-quotient data of a pushforward: the length of the quotient
    circle, the multiplicity a_sharp of the quotient map on lattices, and
    the multiplicity a_hash on dual lattices (the component count)."""

    __slots__ = ("l_tilde", "a_sharp", "a_hash")

    def __init__(self, l_tilde, a_sharp, a_hash):
        self.l_tilde = l_tilde
        self.a_sharp = a_sharp
        self.a_hash = a_hash

    def __eq__(self, other):
        if not isinstance(other, GammaData):
            return NotImplemented
        return (self.l_tilde, self.a_sharp, self.a_hash) == (
            other.l_tilde,
            other.a_sharp,
            other.a_hash,
        )

    def __repr__(self):
        return f"GammaData(l_tilde={self.l_tilde}, a_sharp={self.a_sharp}, a_hash={self.a_hash})"


class TorsionDivisor:
    """A divisor class P - P0 of finite order in the target Jacobian,
    recorded by the position of P on the circle and the order."""

    __slots__ = ("position", "order")

    def __init__(self, position, order):
        self.position = position
        self.order = order

    def __eq__(self, other):
        if not isinstance(other, TorsionDivisor):
            return NotImplemented
        return (self.position, self.order) == (other.position, other.order)

    def __hash__(self):
        return hash((TorsionDivisor, self.position, self.order))

    def __repr__(self):
        return f"TorsionDivisor(position={self.position}, order={self.order})"


class OptimalityVerdict:
    """Both optimality readings, reported side by side: connectedness of the
    pushforward kernel, the dumbbell gcd criterion (None for theta covers),
    and the component count.  When the two criteria disagree, note says why."""

    __slots__ = ("kernel_connected", "dumbbell_gcd_free", "component_count", "note")

    def __init__(self, kernel_connected, dumbbell_gcd_free, component_count, note=None):
        self.kernel_connected = kernel_connected
        self.dumbbell_gcd_free = dumbbell_gcd_free
        self.component_count = component_count
        self.note = note

    def __repr__(self):
        return (
            f"OptimalityVerdict(kernel_connected={self.kernel_connected}, "
            f"dumbbell_gcd_free={self.dumbbell_gcd_free}, "
            f"component_count={self.component_count}, note={self.note!r})"
        )


def _defining_pair(cover):
    """The two dilations that determine the pushforward lattice map:
    (d_e, d_e1) for theta covers, (d1, d2) for dumbbell covers."""
    return cover.dilations[0], cover.dilations[1]


def _all_dilations(cover):
    if isinstance(cover, ThetaCover):
        return cover.dilations
    if isinstance(cover, DumbbellCover):
        return cover.dilations + (0,)  # contracted bridge
    return cover.dilations


def pushforward_morphism(cover):
    """mu_* : Jac(source) -> C(l) on Jacobians, for a valid cover."""
    require_valid(cover)
    jac = jacobian(cover.curve).torus
    length = target_length(cover)
    if isinstance(cover, ThetaCover):
        n, n1, n2 = cover.windings
        d_e, d_e1, _ = cover.dilations
        f_sharp = Matrix([[d_e], [-d_e1]])
        f_hash = Matrix([[n + n2 - 1, n2 - n1]])
    else:
        n1, n2 = cover.windings
        d1, d2 = cover.dilations
        f_sharp = Matrix([[d1], [d2]])
        f_hash = Matrix([[n1, n2]])
    return TorusMorphism(jac, circle(length), f_sharp, f_hash)


def pullback_morphism(cover):
    """mu^* : C(l) -> Jac(source), the dual of the pushforward."""
    return dual_morphism(pushforward_morphism(cover))


def _kernel_direction(cover):
    """Canonical primitive integer vector spanning ker(mu_* on dual lattices)."""
    return integer_kernel(pushforward_morphism(cover).f_hash)


def kernel_length(cover):
    """Length of the connected kernel circle of the pushforward.

    Computed as |v M w^T| for the canonical kernel direction w and a
    complement functional v built from an extended gcd of the dilations;
    the value is independent of the choice of v because w M w^T pairs to
    zero against the kernel.
    """
    push = pushforward_morphism(cover)
    w = _kernel_direction(cover)
    left, right = _defining_pair(cover)
    g, x, y = xgcd(left, right)
    if isinstance(cover, ThetaCover):
        v = Matrix([[y, x]])  # v2·d_e + v1·d_e1 = g
    else:
        v = Matrix([[-y, x]])  # v2·d1 − v1·d2 = g
    value = (v * push.source.pairing * w)[0, 0]
    return abs(value)


def quotient_and_gamma(cover):
    """Quotient data of the pushforward kernel.

    The quotient map to a circle of length l_tilde has lattice multiplicity
    a_sharp = gcd of the defining dilations and dual multiplicity a_hash,
    tied together by l_tilde · a_sharp = l · a_hash.
    """
    push = pushforward_morphism(cover)
    left, right = _defining_pair(cover)
    g = gcd(left, right)
    if isinstance(cover, ThetaCover):
        wq = Matrix([[left // g, -(right // g)]])
    else:
        wq = Matrix([[left // g, right // g]])
    w = _kernel_direction(cover)
    w1, w2 = w[0, 0], w[1, 0]
    _, a, b = xgcd(w1, w2)  # a·w1 + b·w2 = 1 since w is primitive
    vq = Matrix([[-b], [a]])  # completes w to a unimodular basis
    l_tilde = abs((wq * push.source.pairing * vq)[0, 0])
    length = target_length(cover)
    a_hash = l_tilde * g / length
    return GammaData(l_tilde, g, a_hash)


def component_count(cover):
    """Number of connected components of the kernel of the pushforward."""
    a_hash = quotient_and_gamma(cover).a_hash
    if Fraction(a_hash).denominator != 1:
        raise InvalidCover("component count of an invalid cover")
    return int(a_hash)


def _divisors(n):
    return [m for m in range(1, n + 1) if n % m == 0]


def pullback_kernel(cover):
    """Kernel of mu^* : Jac(target) -> Jac(source) as torsion divisors.

    A class of order m at position j·l/m lies in the kernel exactly when
    every dilation satisfies d·j ≡ 0 (mod m); all orders divide the degree.
    """
    if isinstance(cover, GeneralCircleCover):
        violations = validate_general_cover(cover)
        if violations:
            raise InvalidCover("; ".join(violations))
    dilations = _all_dilations(cover)
    degree = cover_degree(cover)
    length = target_length(cover)
    found = []
    for m in _divisors(degree):
        for j in range(m):
            if m > 1 and (j == 0 or gcd(j, m) != 1):
                continue
            if all(d * j % m == 0 for d in dilations):
                found.append(TorsionDivisor(Fraction(j, m) * length, m))
    found.sort(key=lambda div: div.position)
    return found


def q_gamma_profile(cover, position):
    """Per-edge slope profile of the connecting function at a target point.

    Returns d_e·t/l for each edge, where t is the position on the target
    circle; the opposite-arc branch differs from this one by the integer
    d_e, so integrality of the profile does not depend on the branch.
    """
    if isinstance(position, float):
        raise ValueError("position must be an exact rational")
    length = target_length(cover)
    t = Fraction(position)
    return tuple(Fraction(d) * t / length for d in _all_dilations(cover))


def is_optimal(cover):
    """Both optimality readings of a cover, never collapsed into one.

    kernel_connected asks that the pushforward kernel be connected;
    the dumbbell gcd criterion asks gcd(d1, d2) = gcd(n1, n2) = 1.  The two
    disagree exactly when the kernel is connected but the cover still
    factors through a dilation (a_sharp > 1); the note records that case.
    """
    gamma = quotient_and_gamma(cover)
    count = component_count(cover)
    kernel_connected = count == 1
    if isinstance(cover, DumbbellCover):
        d1, d2 = cover.dilations
        n1, n2 = cover.windings
        dumbbell_gcd_free = gcd(d1, d2) == 1 and gcd(n1, n2) == 1
    else:
        dumbbell_gcd_free = None
    note = None
    if kernel_connected and gamma.a_sharp > 1:
        note = (
            "kernel is connected, but the cover factors through the "
            f"multiplication-by-{gamma.a_sharp} dilation of the target; the "
            "connectedness and gcd readings of optimality diverge here"
        )
    return OptimalityVerdict(kernel_connected, dumbbell_gcd_free, count, note)


def factor_pushforward(first, second):
    """The circle isogeny through which first's pushforward factors via
    second's, or None when no such factorization exists.

    Both covers must live on the same curve; the candidate multiplicities
    are forced by the gcd and length data and then verified exactly.
    """
    if type(first) is not type(second) or first.curve != second.curve:
        raise SourceMismatch("covers must share the same source curve")
    push1 = pushforward_morphism(first)
    push2 = pushforward_morphism(second)
    if _kernel_direction(first) != _kernel_direction(second):
        return None
    g1 = quotient_and_gamma(first).a_sharp
    g2 = quotient_and_gamma(second).a_sharp
    if g1 % g2 != 0:
        return None
    a_sharp = g1 // g2
    length1 = target_length(first)
    length2 = target_length(second)
    a_hash = Fraction(a_sharp) * length2 / length1
    if a_hash.denominator != 1:
        return None
    a_hash = int(a_hash)
    for sign in (1, -1):
        psi = TorusMorphism(
            circle(length2),
            circle(length1),
            Matrix([[sign * a_sharp]]),
            Matrix([[sign * a_hash]]),
        )
        if compose(psi, push2) == push1:
            return psi
    return None
