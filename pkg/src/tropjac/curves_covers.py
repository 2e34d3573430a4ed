"""Metric graphs, genus-2 curve models, and their circle covers.

Conventions for the theta graph: the edge e runs from P0 to P1 while e1 and
e2 run from P1 back to P0, so that B1 = e + e2 and B2 = e2 - e1 are cycles.
In that basis the period matrix is
[[l_e + l_e2, l_e2], [l_e2, l_e1 + l_e2]].  The dumbbell uses the two loops
as basis, giving the diagonal period matrix; the bridge separates and never
contributes.

A cover of a circle is described combinatorially by winding numbers (how
often each edge walk wraps the target) and dilation factors (the integer
slope on each edge); the target arc lengths of a theta cover may be given
explicitly or derived from the metric realizability equations.
"""

from fractions import Fraction
from math import gcd

from .errors import InvalidCover, OffsetOutOfRange
from .exact_lattice import Matrix
from .tav import PolarizedVariety, Polarization, reduce_point
from .torus_category import IntegralTorus


def _rational(value, what):
    if isinstance(value, float):
        raise ValueError(f"{what} must be an exact rational, not a float")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{what} must be an exact rational") from exc


def _positive_rational(value, what):
    result = _rational(value, what)
    if result <= 0:
        raise ValueError(f"{what} must be positive")
    return result


def _nonnegative_int(value, what):
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ValueError(f"{what} must be a nonnegative integer")
    return value


class MetricGraph:
    """A connected graph with positive rational edge lengths."""

    __slots__ = ("vertices", "edges")

    def __init__(self, vertices, edges):
        if not vertices:
            raise ValueError("a metric graph needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise ValueError("vertex labels must be distinct")
        self.vertices = list(vertices)
        cleaned = []
        for tail, head, length in edges:
            if tail not in self.vertices or head not in self.vertices:
                raise ValueError(f"edge ({tail!r}, {head!r}) uses unknown vertices")
            cleaned.append((tail, head, _positive_rational(length, "edge length")))
        self.edges = cleaned
        if len(self._reachable(self.vertices[0])) != len(self.vertices):
            raise ValueError("metric graph must be connected")

    def _reachable(self, start):
        seen = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for tail, head, _ in self.edges:
                for a, b in ((tail, head), (head, tail)):
                    if a == v and b not in seen:
                        seen.add(b)
                        frontier.append(b)
        return seen

    @property
    def genus(self):
        return len(self.edges) - len(self.vertices) + 1

    def spanning_tree(self):
        """Deterministic BFS tree: maps each non-root vertex to
        (edge index, +1 if the edge is traversed tail->head to reach it)."""
        root = self.vertices[0]
        parent = {root: None}
        frontier = [root]
        while frontier:
            v = frontier.pop(0)
            for index, (tail, head, _) in enumerate(self.edges):
                if tail == v and head not in parent:
                    parent[head] = (index, 1)
                    frontier.append(head)
                elif head == v and tail not in parent:
                    parent[tail] = (index, -1)
                    frontier.append(tail)
        return parent

    def _path_to_root(self, vertex, parent):
        steps = []
        v = vertex
        while parent[v] is not None:
            index, sign = parent[v]
            tail, head, _ = self.edges[index]
            steps.append((index, -sign))
            v = tail if sign == 1 else head
        return steps  # traversal from `vertex` up to the root

    def tree_path(self, start, end):
        """Edge steps (index, sign) of the tree path from start to end."""
        parent = self.spanning_tree()
        up = self._path_to_root(start, parent)
        down = [(i, -s) for i, s in reversed(self._path_to_root(end, parent))]
        return up + down

    def cycle_basis(self):
        """One fundamental cycle per non-tree edge, as edge-coefficient
        vectors in input edge order."""
        parent = self.spanning_tree()
        tree_edges = {entry[0] for entry in parent.values() if entry is not None}
        cycles = []
        for index, (tail, head, _) in enumerate(self.edges):
            if index in tree_edges:
                continue
            coefficients = [0] * len(self.edges)
            coefficients[index] = 1
            for step_index, sign in self.tree_path(head, tail):
                coefficients[step_index] += sign
            cycles.append(tuple(coefficients))
        return cycles

    def period_matrix(self):
        cycles = self.cycle_basis()
        g = len(cycles)
        rows = [
            [
                sum((ci[e] * cj[e]) * length for e, (_, _, length) in enumerate(self.edges))
                for cj in cycles
            ]
            for ci in cycles
        ]
        return Matrix(rows, ncols=g)


def circle_graph(length):
    """A circle of the given length as a one-vertex, one-loop metric graph."""
    return MetricGraph(["v"], [("v", "v", length)])


class ThetaCurve:
    """Genus-2 theta graph: vertices P0, P1; edge e from P0 to P1 and edges
    e1, e2 from P1 to P0."""

    __slots__ = ("l_e", "l_e1", "l_e2")

    EDGES = ("e", "e1", "e2")
    # coefficients of each edge in the cycles B1 = e + e2, B2 = e2 - e1
    CYCLE_COEFFICIENTS = {"e": (1, 0), "e1": (0, -1), "e2": (1, 1)}
    TAILS = {"e": "P0", "e1": "P1", "e2": "P1"}
    HEADS = {"e": "P1", "e1": "P0", "e2": "P0"}

    def __init__(self, l_e, l_e1, l_e2):
        self.l_e = _positive_rational(l_e, "l_e")
        self.l_e1 = _positive_rational(l_e1, "l_e1")
        self.l_e2 = _positive_rational(l_e2, "l_e2")

    def edge_length(self, edge):
        return {"e": self.l_e, "e1": self.l_e1, "e2": self.l_e2}[edge]

    def period_matrix(self):
        return Matrix(
            [
                [self.l_e + self.l_e2, self.l_e2],
                [self.l_e2, self.l_e1 + self.l_e2],
            ]
        )

    def graph(self):
        return MetricGraph(
            ["P0", "P1"],
            [("P0", "P1", self.l_e), ("P1", "P0", self.l_e1), ("P1", "P0", self.l_e2)],
        )

    def __eq__(self, other):
        if not isinstance(other, ThetaCurve):
            return NotImplemented
        return (self.l_e, self.l_e1, self.l_e2) == (other.l_e, other.l_e1, other.l_e2)

    def __hash__(self):
        return hash((ThetaCurve, self.l_e, self.l_e1, self.l_e2))

    def __repr__(self):
        return f"ThetaCurve({self.l_e}, {self.l_e1}, {self.l_e2})"


class DumbbellCurve:
    """Genus-2 dumbbell: loops at P0 and P1 joined by a bridge."""

    __slots__ = ("l_loop1", "l_loop2", "l_bridge")

    EDGES = ("loop1", "loop2", "bridge")
    # loop basis B1 = loop1, B2 = loop2; the bridge lies in no cycle
    CYCLE_COEFFICIENTS = {"loop1": (1, 0), "loop2": (0, 1), "bridge": (0, 0)}
    TAILS = {"loop1": "P0", "loop2": "P1", "bridge": "P0"}
    HEADS = {"loop1": "P0", "loop2": "P1", "bridge": "P1"}

    def __init__(self, l_loop1, l_loop2, l_bridge):
        self.l_loop1 = _positive_rational(l_loop1, "l_loop1")
        self.l_loop2 = _positive_rational(l_loop2, "l_loop2")
        self.l_bridge = _positive_rational(l_bridge, "l_bridge")

    def edge_length(self, edge):
        return {
            "loop1": self.l_loop1,
            "loop2": self.l_loop2,
            "bridge": self.l_bridge,
        }[edge]

    def period_matrix(self):
        return Matrix.diagonal([self.l_loop1, self.l_loop2])

    def graph(self):
        return MetricGraph(
            ["P0", "P1"],
            [
                ("P0", "P0", self.l_loop1),
                ("P1", "P1", self.l_loop2),
                ("P0", "P1", self.l_bridge),
            ],
        )

    def __eq__(self, other):
        if not isinstance(other, DumbbellCurve):
            return NotImplemented
        return (self.l_loop1, self.l_loop2, self.l_bridge) == (
            other.l_loop1,
            other.l_loop2,
            other.l_bridge,
        )

    def __hash__(self):
        return hash((DumbbellCurve, self.l_loop1, self.l_loop2, self.l_bridge))

    def __repr__(self):
        return f"DumbbellCurve({self.l_loop1}, {self.l_loop2}, {self.l_bridge})"


class ThetaCover:
    """Cover data of a theta curve over a circle: winding numbers
    (n, n1, n2), dilations (d_e, d_e1, d_e2), and optionally the two target
    arc lengths (derived from the realizability equations when omitted)."""

    __slots__ = ("curve", "windings", "dilations", "arcs")

    def __init__(self, curve, windings, dilations, arcs=None):
        if not isinstance(curve, ThetaCurve):
            raise ValueError("ThetaCover requires a ThetaCurve")
        self.curve = curve
        self.windings = tuple(_nonnegative_int(n, "winding") for n in windings)
        self.dilations = tuple(_nonnegative_int(d, "dilation") for d in dilations)
        if len(self.windings) != 3 or len(self.dilations) != 3:
            raise ValueError("theta covers take three windings and three dilations")
        if arcs is None:
            self.arcs = None
        else:
            pair = tuple(_rational(a, "target arc length") for a in arcs)
            if len(pair) != 2:
                raise ValueError("theta covers take two target arc lengths")
            self.arcs = pair

    def __repr__(self):
        return (
            f"ThetaCover({self.curve!r}, windings={self.windings}, "
            f"dilations={self.dilations}, arcs={self.arcs})"
        )


class DumbbellCover:
    """Cover data of a dumbbell over a circle: windings (n1, n2), dilations
    (d1, d2), contracted bridge, and the target circle length (derived from
    the loop equations when omitted)."""

    __slots__ = ("curve", "windings", "dilations", "target_length")

    def __init__(self, curve, windings, dilations, target_length=None):
        if not isinstance(curve, DumbbellCurve):
            raise ValueError("DumbbellCover requires a DumbbellCurve")
        self.curve = curve
        self.windings = tuple(_nonnegative_int(n, "winding") for n in windings)
        self.dilations = tuple(_nonnegative_int(d, "dilation") for d in dilations)
        if len(self.windings) != 2 or len(self.dilations) != 2:
            raise ValueError("dumbbell covers take two windings and two dilations")
        if target_length is None:
            self.target_length = self._derive_target_length()
        else:
            self.target_length = _rational(target_length, "target length")

    def _derive_target_length(self):
        for (n, d, length) in (
            (self.windings[0], self.dilations[0], self.curve.l_loop1),
            (self.windings[1], self.dilations[1], self.curve.l_loop2),
        ):
            if n > 0:
                return Fraction(d) * length / n
        return Fraction(0)

    def __repr__(self):
        return (
            f"DumbbellCover({self.curve!r}, windings={self.windings}, "
            f"dilations={self.dilations}, target_length={self.target_length})"
        )


class GeneralCircleCover:
    """A map from a metric graph to a circle, one affine walk per edge.

    edge_data aligns with graph.edges; each entry is a triple
    (dilation, start position, signed walk length)."""

    __slots__ = ("graph", "target_length", "edge_data")

    def __init__(self, graph, target_length, edge_data):
        self.graph = graph
        self.target_length = _positive_rational(target_length, "target length")
        if len(edge_data) != len(graph.edges):
            raise ValueError("edge_data must align with the graph's edges")
        cleaned = []
        for dilation, start, signed_length in edge_data:
            cleaned.append(
                (
                    _nonnegative_int(dilation, "dilation"),
                    _rational(start, "start position") % self.target_length,
                    _rational(signed_length, "signed walk length"),
                )
            )
        self.edge_data = cleaned

    @property
    def dilations(self):
        return tuple(entry[0] for entry in self.edge_data)


def validate_general_cover(cover):
    """Violated-invariant names for a GeneralCircleCover (empty = valid)."""
    violations = []
    length = cover.target_length
    slopes = []
    for (tail, head, edge_length), (dilation, start, signed) in zip(
        cover.graph.edges, cover.edge_data
    ):
        if abs(signed) != dilation * edge_length:
            violations.append(f"image length on ({tail}, {head}): |walk| = dilation·length")
        slopes.append(signed / edge_length)
        # the walk must land on the image of the head vertex; checked via
        # the harmonicity bookkeeping below when positions are consistent
    positions = {}
    consistent = True
    for (tail, head, _), (dilation, start, signed) in zip(cover.graph.edges, cover.edge_data):
        end = (start + signed) % length
        for vertex, value in ((tail, start), (head, end)):
            if vertex in positions and positions[vertex] != value:
                consistent = False
            positions[vertex] = value
    if not consistent:
        violations.append("walk endpoints: edge images must agree at shared vertices")
    for vertex in cover.graph.vertices:
        balance = Fraction(0)
        for (tail, head, _), slope in zip(cover.graph.edges, slopes):
            if tail == vertex:
                balance += slope
            if head == vertex:
                balance -= slope
        if balance != 0:
            violations.append(f"harmonicity at {vertex}: outgoing slopes must cancel")
    return violations


class ValidationReport:
    """Outcome of validate_cover: violated invariant names, the degree, and
    (for theta covers) the resolved target arc lengths."""

    __slots__ = ("violations", "degree", "arcs")

    def __init__(self, violations, degree, arcs=None):
        self.violations = list(violations)
        self.degree = degree
        self.arcs = arcs

    @property
    def valid(self):
        return not self.violations

    def __repr__(self):
        return (
            f"ValidationReport(valid={self.valid}, degree={self.degree}, "
            f"violations={self.violations})"
        )


def _solve_theta_arcs(cover):
    """Resolve (l~1, l~2) from the three realizability equations.

    Returns (arcs, failure): given arcs are passed through; otherwise the
    equations are solved exactly. failure is a violation name or None.
    """
    n, n1, n2 = cover.windings
    d_e, d_e1, d_e2 = cover.dilations
    curve = cover.curve
    rows = [
        (Fraction(n), Fraction(n - 1), Fraction(d_e) * curve.l_e),
        (Fraction(n1 - 1), Fraction(n1), Fraction(d_e1) * curve.l_e1),
        (Fraction(n2 - 1), Fraction(n2), Fraction(d_e2) * curve.l_e2),
    ]
    if cover.arcs is not None:
        return cover.arcs, None
    # pick two independent equations, then check the third
    for i in range(3):
        for j in range(i + 1, 3):
            a1, b1, c1 = rows[i]
            a2, b2, c2 = rows[j]
            determinant = a1 * b2 - a2 * b1
            if determinant != 0:
                x = (c1 * b2 - c2 * b1) / determinant
                y = (a1 * c2 - a2 * c1) / determinant
                return (x, y), None
    return None, "metric realizability: target arcs underdetermined"


def _theta_violations(cover):
    violations = []
    n, n1, n2 = cover.windings
    d_e, d_e1, d_e2 = cover.dilations
    curve = cover.curve
    if d_e != d_e1 + d_e2:
        violations.append("balancing: d_e = d_e1 + d_e2")
    if gcd(d_e, d_e1) == 0:
        violations.append("surjectivity: gcd(d_e, d_e1) != 0")
    arcs, failure = _solve_theta_arcs(cover)
    if failure is not None:
        violations.append(failure)
        return violations, None, None
    a1, a2 = arcs
    if a1 < 0 or a2 < 0:
        violations.append("nonnegative target arcs")
    if a1 + a2 <= 0:
        violations.append("positive target length: l~1 + l~2 > 0")
    checks = [
        (Fraction(d_e) * curve.l_e, n * a1 + (n - 1) * a2,
         "realizability on e: d_e·l_e = n·l~1 + (n−1)·l~2"),
        (Fraction(d_e1) * curve.l_e1, (n1 - 1) * a1 + n1 * a2,
         "realizability on e1: d_e1·l_e1 = (n1−1)·l~1 + n1·l~2"),
        (Fraction(d_e2) * curve.l_e2, (n2 - 1) * a1 + n2 * a2,
         "realizability on e2: d_e2·l_e2 = (n2−1)·l~1 + n2·l~2"),
    ]
    for left, right, name in checks:
        if left != right:
            violations.append(name)
    degree = n * d_e + (n1 - 1) * d_e1 + (n2 - 1) * d_e2
    return violations, degree, arcs


def _dumbbell_violations(cover):
    violations = []
    n1, n2 = cover.windings
    d1, d2 = cover.dilations
    length = cover.target_length
    if d1 == 0 and d2 == 0:
        violations.append("surjectivity: (d1, d2) != (0, 0)")
    if length <= 0:
        violations.append("positive target length: l > 0")
    if Fraction(d1) * cover.curve.l_loop1 != n1 * length:
        violations.append("realizability on loop1: d1·l_loop1 = n1·l")
    if Fraction(d2) * cover.curve.l_loop2 != n2 * length:
        violations.append("realizability on loop2: d2·l_loop2 = n2·l")
    degree = n1 * d1 + n2 * d2
    return violations, degree


def validate_cover(cover):
    """Check every combinatorial and metric invariant of a cover."""
    if isinstance(cover, ThetaCover):
        violations, degree, arcs = _theta_violations(cover)
        return ValidationReport(violations, degree, arcs)
    if isinstance(cover, DumbbellCover):
        violations, degree = _dumbbell_violations(cover)
        return ValidationReport(violations, degree)
    raise ValueError("validate_cover expects a ThetaCover or DumbbellCover")


def require_valid(cover):
    """ValidationReport of a valid cover, or InvalidCover naming the breaks."""
    report = validate_cover(cover)
    if not report.valid:
        raise InvalidCover("; ".join(report.violations))
    return report


def cover_degree(cover):
    if isinstance(cover, GeneralCircleCover):
        total = sum(
            Fraction(dilation) ** 2 * length
            for (_, _, length), (dilation, _, _) in zip(cover.graph.edges, cover.edge_data)
        )
        degree = total / cover.target_length
        if degree.denominator != 1:
            raise InvalidCover("degree: sum of d_e^2·l_e must be a multiple of l")
        return int(degree)
    return require_valid(cover).degree


def target_length(cover):
    """Target circle length of a valid cover."""
    if isinstance(cover, ThetaCover):
        arcs = require_valid(cover).arcs
        return arcs[0] + arcs[1]
    if isinstance(cover, DumbbellCover):
        require_valid(cover)
        return cover.target_length
    if isinstance(cover, GeneralCircleCover):
        return cover.target_length
    raise ValueError("unsupported cover type")


def _tangents(cover, point):
    """(dilation, direction) pairs at a point; direction +1 when the edge
    walk leaves the point forward, -1 when it arrives, 0 when contracted."""
    if isinstance(cover, ThetaCover):
        d_e, d_e1, d_e2 = cover.dilations
        table = {
            "P0": [(d_e, 1), (d_e1, -1), (d_e2, -1)],
            "P1": [(d_e, -1), (d_e1, 1), (d_e2, 1)],
            "e": [(d_e, 1), (d_e, -1)],
            "e1": [(d_e1, 1), (d_e1, -1)],
            "e2": [(d_e2, 1), (d_e2, -1)],
        }
    else:
        d1, d2 = cover.dilations
        table = {
            "P0": [(d1, 1), (d1, -1), (0, 0)],
            "P1": [(d2, 1), (d2, -1), (0, 0)],
            "loop1": [(d1, 1), (d1, -1)],
            "loop2": [(d2, 1), (d2, -1)],
            "bridge": [(0, 0), (0, 0)],
        }
    if point not in table:
        raise ValueError(f"unknown point {point!r}")
    return [(d, s if d > 0 else 0) for d, s in table[point]]


def ramification_index(cover, point):
    """R_P = 2·d_P − 2 − Σ(d_v − 1) over the tangent directions at P, with
    contracted tangents contributing d_v = 0.  P is a vertex name ("P0",
    "P1") or an edge name for an edge-interior point."""
    require_valid(cover)
    tangents = _tangents(cover, point)
    local_degree = sum(d for d, s in tangents if s > 0)
    return 2 * local_degree - 2 - sum(d - 1 for d, _ in tangents)


def jacobian(obj):
    """Jacobian as a principally polarized variety: rank = genus, pairing =
    the cycle-basis period matrix, polarization = identity."""
    if isinstance(obj, (ThetaCurve, DumbbellCurve)):
        period = obj.period_matrix()
        torus = IntegralTorus(2, period)
        return PolarizedVariety(torus, Polarization(Matrix.identity(2)))
    if isinstance(obj, MetricGraph):
        period = obj.period_matrix()
        genus = obj.genus
        torus = IntegralTorus(genus, period)
        return PolarizedVariety(torus, Polarization(Matrix.identity(genus)))
    raise ValueError("jacobian expects a curve model or a MetricGraph")


def _edge_tables(curve):
    return (
        curve.EDGES,
        curve.CYCLE_COEFFICIENTS,
        curve.TAILS,
        {edge: curve.edge_length(edge) for edge in curve.EDGES},
    )


def _curve_path(curve, start, end):
    """Edge steps (edge name, sign) of a fixed path between P0 and P1."""
    if start == end:
        return []
    if isinstance(curve, ThetaCurve):
        return [("e", 1)] if (start, end) == ("P0", "P1") else [("e", -1)]
    return [("bridge", 1)] if (start, end) == ("P0", "P1") else [("bridge", -1)]


def abel_jacobi(obj, basepoint, point):
    """Class of the path integral from the basepoint to (edge, offset),
    reduced to the canonical fundamental domain of the Jacobian.

    For curve models the basepoint is "P0" or "P1" and the edge one of the
    named edges; for a MetricGraph the basepoint is a vertex label and the
    edge an index.
    """
    edge, offset = point
    if isinstance(obj, (ThetaCurve, DumbbellCurve)):
        edges, coefficients, tails, lengths = _edge_tables(obj)
        if edge not in edges:
            raise ValueError(f"unknown edge {edge!r}")
        if basepoint not in ("P0", "P1"):
            raise ValueError(f"unknown basepoint {basepoint!r}")
        offset = _rational(offset, "offset")
        if offset < 0 or offset > lengths[edge]:
            raise OffsetOutOfRange(
                f"offset {offset} outside [0, {lengths[edge]}] on edge {edge}"
            )
        steps = _curve_path(obj, basepoint, tails[edge])
        coords = [Fraction(0), Fraction(0)]
        for step_edge, sign in steps:
            for i in range(2):
                coords[i] += sign * lengths[step_edge] * coefficients[step_edge][i]
        for i in range(2):
            coords[i] += offset * coefficients[edge][i]
        return reduce_point(jacobian(obj).torus, coords)
    if isinstance(obj, MetricGraph):
        if not isinstance(edge, int) or not 0 <= edge < len(obj.edges):
            raise ValueError("point edge must be an edge index")
        tail, _, length = obj.edges[edge]
        offset = _rational(offset, "offset")
        if offset < 0 or offset > length:
            raise OffsetOutOfRange(f"offset {offset} outside [0, {length}]")
        cycles = obj.cycle_basis()
        genus = obj.genus
        coords = [Fraction(0)] * genus
        for step_index, sign in obj.tree_path(basepoint, tail):
            step_length = obj.edges[step_index][2]
            for i in range(genus):
                coords[i] += sign * step_length * cycles[i][step_index]
        for i in range(genus):
            coords[i] += offset * cycles[i][edge]
        return reduce_point(jacobian(obj).torus, coords)
    raise ValueError("abel_jacobi expects a curve model or a MetricGraph")
