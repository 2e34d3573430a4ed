"""Shared fixtures, generators, and independent oracles for the test suite.

Everything here is deterministic: generators take an explicit random.Random
so the same corpus is rebuilt identically on every run.
"""

from fractions import Fraction

from tropjac.exact_lattice import Matrix
from tropjac.torus_category import (
    IntegralTorus,
    TorusMorphism,
    circle,
    compose,
    image,
    quotient_by_subtorus,
)

# The running example: Jacobian of the symmetric theta graph with unit
# lengths, and its push-forward / pull-back to the base circle of length 3.

THETA_PERIOD = Matrix([[2, 1], [1, 2]])


def theta_jacobian():
    return IntegralTorus(2, THETA_PERIOD)


def degree_two_pushforward():
    return TorusMorphism(
        theta_jacobian(), circle(3), Matrix([[2], [-1]]), Matrix([[1, 0]])
    )


def degree_two_pullback():
    return TorusMorphism(
        circle(3), theta_jacobian(), Matrix([[1, 0]]), Matrix([[2], [-1]])
    )


def splitting_phi():
    """The isogeny C(1) x C(3) -> Jac assembled from the kernel inclusion
    and the pull-back; universal cover [[1, 1], [2, 0]]."""
    product = IntegralTorus(2, Matrix.diagonal([1, 3]))
    return TorusMorphism(
        product, theta_jacobian(), Matrix([[1, 2], [1, 0]]), Matrix([[0, 2], [1, -1]])
    )


# -- random generators -----------------------------------------------------


def random_unimodular(rng, n):
    """A unimodular matrix built from random shears and signed swaps."""
    m = Matrix.identity(n)
    for _ in range(2 * n + 2):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        shear = Matrix.identity(n)
        rows = [list(r) for r in shear.entries()]
        rows[i][j] = Fraction(rng.randint(-2, 2))
        m = m * Matrix(rows)
    if rng.random() < 0.5 and n > 1:
        order = list(range(n))
        rng.shuffle(order)
        rows = [[Fraction(1) if c == order[r] else Fraction(0) for c in range(n)] for r in range(n)]
        m = m * Matrix(rows)
    return m


def random_subtorus_sequence(rng, max_rank=3):
    """An (inclusion, projection) pair that is exact by construction.

    Probes the middle torus with a random morphism from a product of unit
    circles, takes its image as the subtorus, and quotients by it.
    """
    n = rng.randint(2, max_rank)
    mid = IntegralTorus(n, Matrix.diagonal([rng.randint(1, 4) for _ in range(n)]))
    j = rng.randint(1, n - 1)
    probe_source = IntegralTorus(j, Matrix.identity(j))
    y = Matrix([[Fraction(rng.randint(-3, 3)) for _ in range(j)] for _ in range(n)])
    probe = TorusMorphism(probe_source, mid, (mid.pairing * y).transpose(), y)
    _, inclusion = image(probe)
    _, projection = quotient_by_subtorus(mid, inclusion)
    return inclusion, projection


def random_covolume_preserving_isogeny(rng, max_rank=3):
    """An isogeny u2 . dilation . u1 between tori of equal covolume."""
    n = rng.randint(1, max_rank)
    base = IntegralTorus(n, Matrix.diagonal([rng.randint(1, 4) for _ in range(n)]))
    factors = [rng.randint(1, 3) for _ in range(n)]
    dilation = TorusMorphism(
        base, base, Matrix.diagonal(factors), Matrix.diagonal(factors)
    )
    a1, b1 = random_unimodular(rng, n), random_unimodular(rng, n)
    source = IntegralTorus(n, a1.transpose().inv() * base.pairing * b1)
    u1 = TorusMorphism(source, base, a1, b1)
    a2, b2 = random_unimodular(rng, n), random_unimodular(rng, n)
    target = IntegralTorus(n, a2.transpose() * base.pairing * b2.inv())
    u2 = TorusMorphism(base, target, a2, b2)
    return compose(u2, compose(dilation, u1))


# -- cover corpus ----------------------------------------------------------

from math import ceil, floor, gcd  # noqa: E402

from tropjac.curves_covers import (  # noqa: E402
    DumbbellCover,
    DumbbellCurve,
    ThetaCover,
    ThetaCurve,
    cover_degree,
    target_length,
    validate_cover,
)

THETA_LENGTH_TRIPLES = [
    (1, 1, 1),
    (1, 1, 2),
    (1, 1, 4),
    (1, 2, 3),
    (2, 1, 1),
    (2, 2, 2),
    (1, 3, 1),
    (3, 1, 2),
    (2, 1, 4),
    (5, 1, 1),
]

DUMBBELL_LOOP_PAIRS = [(1, 1), (1, 2), (2, 1), (2, 2)]


def degree_two_cover():
    return ThetaCover(ThetaCurve(1, 1, 1), (1, 1, 1), (2, 1, 1))


def cover_key(cover):
    """Hashable identity of a cover for membership checks."""
    if isinstance(cover, ThetaCover):
        curve = cover.curve
        return ("theta", curve.l_e, curve.l_e1, curve.l_e2, cover.windings, cover.dilations)
    curve = cover.curve
    return (
        "dumbbell",
        curve.l_loop1,
        curve.l_loop2,
        curve.l_bridge,
        cover.windings,
        cover.dilations,
    )


def named_special_covers():
    """Covers the corpus is required to contain."""
    return [
        degree_two_cover(),
        ThetaCover(ThetaCurve(1, 1, 1), (1, 1, 1), (4, 2, 2)),
        ThetaCover(ThetaCurve(1, 1, 4), (1, 1, 2), (2, 1, 1)),
        DumbbellCover(DumbbellCurve(1, 1, 1), (1, 1), (2, 2)),
        DumbbellCover(DumbbellCurve(1, 1, 1), (2, 2), (1, 1)),
        DumbbellCover(DumbbellCurve(1, 1, 1), (1, 1), (1, 1)),
    ]


_CORPUS = None


def cover_corpus():
    """Every valid cover in a fixed enumeration window, both curve types.

    Windings range over 0..3, dilations over 0..4 (theta dilations subject
    to balancing), arc and target lengths derived; the window is chosen so
    the corpus comfortably exceeds two hundred covers and contains all the
    named special covers.
    """
    global _CORPUS
    if _CORPUS is not None:
        return _CORPUS
    covers = []
    for lengths in THETA_LENGTH_TRIPLES:
        curve = ThetaCurve(*lengths)
        for n in range(4):
            for n1 in range(4):
                for n2 in range(4):
                    for d_e1 in range(5):
                        for d_e2 in range(5):
                            d_e = d_e1 + d_e2
                            if d_e == 0 or d_e > 4:
                                continue
                            cover = ThetaCover(curve, (n, n1, n2), (d_e, d_e1, d_e2))
                            if validate_cover(cover).valid:
                                covers.append(cover)
    for loops in DUMBBELL_LOOP_PAIRS:
        curve = DumbbellCurve(loops[0], loops[1], 1)
        for n1 in range(4):
            for n2 in range(4):
                for d1 in range(5):
                    for d2 in range(5):
                        if d1 == 0 and d2 == 0:
                            continue
                        cover = DumbbellCover(curve, (n1, n2), (d1, d2))
                        if validate_cover(cover).valid:
                            covers.append(cover)
    _CORPUS = covers
    return covers


# -- independent oracles ---------------------------------------------------


def brute_force_lattice_index(a, b):
    """[Z : aZ + bZ] by minimizing |x·a + y·b| over a small window.

    No gcd call: the minimum over |x|, |y| <= 6 is checked to divide both
    generators, which certifies it as the index.
    """
    best = None
    for x in range(-6, 7):
        for y in range(-6, 7):
            value = abs(x * a + y * b)
            if value and (best is None or value < best):
                best = value
    assert best is not None, "zero lattice has no finite index"
    assert a % best == 0 and b % best == 0, "window too small to certify the index"
    return best


def _cover_walks(cover):
    """(start, signed length, dilation) of each edge image walk, in the
    all-positive orientation used by the winding convention."""
    if isinstance(cover, ThetaCover):
        report = validate_cover(cover)
        first_arc = report.arcs[0]
        d_e, d_e1, d_e2 = cover.dilations
        curve = cover.curve
        return [
            (Fraction(0), d_e * curve.l_e, d_e),
            (first_arc, d_e1 * curve.l_e1, d_e1),
            (first_arc, d_e2 * curve.l_e2, d_e2),
        ]
    d1, d2 = cover.dilations
    curve = cover.curve
    return [
        (Fraction(0), d1 * curve.l_loop1, d1),
        (Fraction(0), d2 * curve.l_loop2, d2),
    ]


def _pullback_slopes_integral(cover, position):
    """Literal subdivision oracle: pull the piecewise-affine function with
    divisor P - P0 back along every edge walk and check all slopes."""
    length = target_length(cover)
    if position == 0:
        return True  # the function is constant
    slope_low = (length - position) / length  # on (0, position)
    slope_high = -position / length  # on (position, length)
    for start, signed, dilation in _cover_walks(cover):
        if dilation == 0:
            continue
        a, b = (start, start + signed) if signed > 0 else (start + signed, start)
        breakpoints = {a, b}
        for k in range(floor(a / length) - 1, ceil(b / length) + 2):
            for point in (k * length, position + k * length):
                if a < point < b:
                    breakpoints.add(Fraction(point))
        ordered = sorted(breakpoints)
        for left, right in zip(ordered, ordered[1:]):
            midpoint = (left + right) / 2
            tau = midpoint - floor(midpoint / length) * length
            base_slope = slope_low if tau < position else slope_high
            direction = 1 if signed > 0 else -1
            if (direction * dilation * base_slope).denominator != 1:
                return False
    return True


def walk_slope_kernel(cover):
    """(position, order) pairs in the kernel of the pullback, by brute
    force over all torsion points of order dividing the degree."""
    degree = cover_degree(cover)
    length = target_length(cover)
    found = []
    for order in range(1, degree + 1):
        if degree % order != 0:
            continue
        for j in range(order):
            if order > 1 and (j == 0 or gcd(j, order) != 1):
                continue
            position = Fraction(j, order) * length
            if _pullback_slopes_integral(cover, position):
                found.append((position, order))
    found.sort(key=lambda pair: pair[0])
    return found
