"""Canonical fixture complexes, the type-L verifier, flagification, and a
budgeted search for triangulations matching a target link type.

The registry is generated by code (see fixtures.md for the catalogue).
The type verifier checks the full hypotheses chain: flag, isolated squares,
homology 3-sphere, and the square-link's component count and linking
matrix against the expectation.  Matching linking data is necessary but
not sufficient for matching the link type up to isotopy.
"""

import itertools
from typing import NamedTuple, Optional

from .complexes import (SimplicialComplex, barycentric_subdivision, disjoint_union,
                        find_squares, has_isolated_squares, is_flag, join)
from .coxeter import caprace_criterion
from .homology import is_closed_orientable_3manifold, is_homology_3sphere
from .links import (EdgeCycleLink, LinkingMatrix, PlanarDiagram,
                    diagram_linking_matrix, link_from_squares, linking_matrix)


def _points(k):
    return SimplicialComplex(k, [(i,) for i in range(k)])


def _cycle(k):
    return SimplicialComplex(k, [(i, (i + 1) % k) if i + 1 < k else (0, k - 1)
                                 for i in range(k)])


def _cross_polytope(dim):
    """Join of `dim` two-point complexes; antipodal pairs are (2i, 2i+1)."""
    out = _points(2)
    for _ in range(dim - 1):
        out = join(out, _points(2))
    return out


def _boundary_simplex(n):
    """Boundary of the n-simplex: all n-subsets of n+1 vertices."""
    return SimplicialComplex(n + 1, list(itertools.combinations(range(n + 1), n)))


def _projective_plane_6():
    """Minimal 6-vertex triangulation of the projective plane."""
    facets = [(0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 5), (0, 4, 5),
              (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 3, 4), (3, 4, 5)]
    return SimplicialComplex(6, facets)


def _torus_7():
    """7-vertex triangulation of the torus."""
    facets = []
    for i in range(7):
        facets.append(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        facets.append(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return SimplicialComplex(7, facets)


def product_triangulation(k1, k2):
    """Staircase triangulation of the product of two complexes.

    Vertices are pairs (u, x) numbered u * |V2| + x; each facet pair is
    triangulated by the monotone lattice paths through its vertex grid,
    which glue consistently because every simplex uses the global vertex
    order.
    """
    n2 = k2.vertex_count

    def vid(u, x):
        return u * n2 + x

    facets = set()
    for f in k1.facets:
        for g in k2.facets:
            p, q = len(f) - 1, len(g) - 1
            # lattice paths from (0,0) to (p,q): choose the step positions
            for rises in itertools.combinations(range(p + q), q):
                path = [(0, 0)]
                i = j = 0
                for step in range(p + q):
                    if step in rises:
                        j += 1
                    else:
                        i += 1
                    path.append((i, j))
                facets.add(tuple(sorted(vid(f[i], g[j]) for i, j in path)))
    return SimplicialComplex(k1.vertex_count * n2, sorted(facets))


def _s2_x_s1():
    """Product triangulation of the 2-sphere boundary and a 3-cycle."""
    return product_triangulation(_boundary_simplex(3), _cycle(3))


def _six_hundred_cell():
    """Boundary of the 600-cell: 120 vertices, 600 tetrahedra.

    Exact arithmetic over Z[phi]: a coordinate (a + b*phi)/2 is the pair
    (a, b).  Vertices at inner product phi/2 span an edge; facets are the
    4-cliques.  The result is flag with no empty squares.
    """
    def mul(x, y):
        a, b = x
        c, d = y
        return (a * c + b * d, a * d + b * c + b * d)

    verts = set()
    for i in range(4):
        for s in (2, -2):
            v = [(0, 0)] * 4
            v[i] = (s, 0)
            verts.add(tuple(v))
    for signs in range(16):
        verts.add(tuple(((1 if signs >> i & 1 else -1), 0) for i in range(4)))
    base = [(0, 1), (1, 0), (-1, 1), (0, 0)]  # phi, 1, phi-1, 0 (halved)
    for p in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
        if inversions % 2:
            continue
        for s0 in (1, -1):
            for s1 in (1, -1):
                for s2 in (1, -1):
                    signs = (s0, s1, s2, 1)
                    v = [None] * 4
                    for pos in range(4):
                        a, b = base[pos]
                        v[p[pos]] = (signs[pos] * a, signs[pos] * b)
                    verts.add(tuple(v))
    verts = sorted(verts)
    n = len(verts)
    adj = [set() for _ in range(n)]
    for i in range(n):
        vi = verts[i]
        for j in range(i + 1, n):
            vj = verts[j]
            total = (0, 0)
            for k in range(4):
                prod = mul(vi[k], vj[k])
                total = (total[0] + prod[0], total[1] + prod[1])
            if total == (0, 2):  # inner product phi/2 on the unit sphere
                adj[i].add(j)
                adj[j].add(i)
    facets = []
    for a in range(n):
        upper = sorted(x for x in adj[a] if x > a)
        for bi, b in enumerate(upper):
            for c in upper[bi + 1:]:
                if c not in adj[b]:
                    continue
                for d in upper:
                    if d > c and d in adj[b] and d in adj[c]:
                        facets.append((a, b, c, d))
    return SimplicialComplex(n, facets)


_REGISTRY = {
    "boundary-3-simplex": lambda: _boundary_simplex(3),
    "boundary-4-simplex": lambda: _boundary_simplex(4),
    "c4": lambda: _cycle(4),
    "octahedron": lambda: _cross_polytope(3),
    "boundary-16-cell": lambda: _cross_polytope(4),
    "suspension-3-points": lambda: join(_points(3), _points(2)),
    "suspension-edge-point": lambda: join(
        SimplicialComplex(3, [(0, 1), (2,)]), _points(2)),
    "sd-boundary-4-simplex": lambda: barycentric_subdivision(_boundary_simplex(4)),
    "two-squares-disjoint": lambda: disjoint_union(_cycle(4), _cycle(4)),
    "projective-plane-6": _projective_plane_6,
    "torus-7": _torus_7,
    "s2-x-s1": _s2_x_s1,
    "600-cell": _six_hundred_cell,
    "join-c6-c6": lambda: join(_cycle(6), _cycle(6)),
    "join-c10-c10": lambda: join(_cycle(10), _cycle(10)),
}

_CACHE = {}


def fixture_names():
    return sorted(_REGISTRY)


def fixture(name):
    """A named complex from the registry; unknown names are an error."""
    if name not in _REGISTRY:
        raise KeyError("unknown fixture %r; known: %s" % (name, ", ".join(fixture_names())))
    if name not in _CACHE:
        _CACHE[name] = _REGISTRY[name]()
    return _CACHE[name]


def hopf_pair():
    """The two join-factor squares of the 16-cell boundary: a Hopf pair."""
    ambient = fixture("boundary-16-cell")
    return ambient, EdgeCycleLink(ambient, [(0, 2, 1, 3), (4, 6, 5, 7)])


def split_pair():
    """Two disjoint triangles in the 16-cell, each bounding a face: unlinked."""
    ambient = fixture("boundary-16-cell")
    return ambient, EdgeCycleLink(ambient, [(0, 2, 4), (1, 3, 7)])


def zigzag_cycle(m, n, start_a, start_b, step_a, step_b, steps):
    """An embedded cycle in the join of two polygons, alternating factors.

    Visits a_(start_a + t*step_a) and b_(start_b + t*step_b) for t < steps;
    all consecutive pairs are cross edges of the join.  Vertex b_k of the
    second polygon is numbered m + k.
    """
    out = []
    for t in range(steps):
        out.append((start_a + step_a * t) % m)
        out.append(m + (start_b + step_b * t) % n)
    if len(set(out)) != len(out):
        raise ValueError("zigzag parameters revisit a vertex")
    return tuple(out)


def solomon_pair():
    """Two cycles in the join of two 10-gons with linking number of size 2.

    Both components advance two vertices in the first polygon and four in
    the second per zigzag step; the offset between them produces the
    doubled clasp.  Cross-checked against the Gauss-integral oracle in the
    test suite.
    """
    ambient = fixture("join-c10-c10")
    a = zigzag_cycle(10, 10, 0, 0, 2, 4, 5)
    b = zigzag_cycle(10, 10, 1, 5, 2, 4, 5)
    return ambient, EdgeCycleLink(ambient, [a, b])


class TypeLReport(NamedTuple):
    flags: dict
    square_link: Optional[EdgeCycleLink]
    matrix: Optional[LinkingMatrix]
    verdict: bool
    note: str


def _expected_matrix(expected):
    if isinstance(expected, PlanarDiagram):
        return diagram_linking_matrix(expected)
    if isinstance(expected, LinkingMatrix):
        return expected
    return LinkingMatrix(expected)


def verify_type_l(sigma, expected):
    """Check the type hypotheses of a triangulation against a target link.

    Runs flagness, isolated squares, the homology-3-sphere check, extracts
    the square-link and its linking matrix, and compares component count
    and matrix up to simultaneous permutation and global sign.  A passing
    verdict certifies matching linking data, which is NECESSARY but not
    sufficient for carrying the link type up to isotopy.
    """
    target = _expected_matrix(expected)
    flags = {
        "is_flag": False,
        "has_isolated_squares": False,
        "is_homology_3sphere": False,
        "component_count_matches": False,
        "linking_matrix_matches": False,
    }
    flags["is_flag"] = is_flag(sigma).is_flag
    flags["has_isolated_squares"] = has_isolated_squares(sigma).has_isolated_squares

    sphere_report = None
    try:
        sphere_report = is_homology_3sphere(sigma)
        flags["is_homology_3sphere"] = sphere_report.is_homology_sphere
    except ValueError:
        flags["is_homology_3sphere"] = False

    square_link = None
    matrix = None
    try:
        square_link = link_from_squares(sigma)
        flags["component_count_matches"] = len(square_link) == target.m
    except ValueError:
        flags["component_count_matches"] = False

    if (square_link is not None and flags["component_count_matches"]
            and flags["is_homology_3sphere"]):
        orientation = sphere_report.manifold.orientation
        matrix = linking_matrix(sigma, square_link, orientation=orientation)
        flags["linking_matrix_matches"] = matrix.equivalent_to(target)
    elif square_link is not None and target.m == 0 and len(square_link) == 0:
        matrix = LinkingMatrix([])
        flags["linking_matrix_matches"] = flags["is_homology_3sphere"]

    verdict = all(flags.values())
    return TypeLReport(
        flags, square_link, matrix, verdict,
        "matching linking data is necessary but not sufficient for type L up "
        "to isotopy")


def flagify(complex_):
    """Barycentric subdivision, asserted flag (order complexes always are)."""
    sd = barycentric_subdivision(complex_)
    report = is_flag(sd)
    if not report.is_flag:
        raise AssertionError("subdivision is not flag; witness %r" % (report.witness,))
    return sd


class BuildOutcome(NamedTuple):
    found: bool
    complex: Optional[SimplicialComplex]
    report: Optional[TypeLReport]
    candidates_tried: int
    note: str


def attempt_type_l_build(target, budget=32, seed=0):
    """Best-effort search for a triangulation whose square-link matches.

    Candidates are the registry complexes and their subdivisions, tried in
    a deterministic seeded order within the budget.  Every returned
    complex passed verify_type_l; exhausting the budget is an outcome, not
    an error.
    """
    matrix = _expected_matrix(target)
    candidates = []
    for name in fixture_names():
        candidates.append(("fixture:" + name, lambda n=name: fixture(n)))
    for name in ("boundary-4-simplex", "octahedron", "boundary-16-cell"):
        candidates.append(("sd:" + name,
                           lambda n=name: barycentric_subdivision(fixture(n))))
    # deterministic seeded rotation of the candidate order
    if candidates:
        offset = seed % len(candidates)
        candidates = candidates[offset:] + candidates[:offset]

    tried = 0
    for label, make in candidates:
        if tried >= budget:
            break
        tried += 1
        candidate = make()
        if candidate.dim() != 3:
            continue
        report = verify_type_l(candidate, matrix)
        if report.verdict:
            return BuildOutcome(True, candidate, report, tried,
                                "verified candidate %s" % label)
    return BuildOutcome(False, None, None, tried,
                        "no verified triangulation found within budget %d "
                        "(construction beyond registry search is out of scope)"
                        % budget)


def standard_corpus():
    """The fixture complexes exercised by the property suites."""
    return [(name, fixture(name)) for name in fixture_names()]


def corpus_properties(name):
    """Golden property profile of a fixture, recomputed on demand."""
    k = fixture(name)
    squares = find_squares(k)
    profile = {
        "vertices": k.vertex_count,
        "facets": len(k.facets),
        "dim": k.dim(),
        "is_flag": is_flag(k).is_flag,
        "squares": len(squares),
        "has_isolated_squares": has_isolated_squares(k, squares).has_isolated_squares,
        "caprace_passes": caprace_criterion(k).passes,
    }
    if k.dim() == 3 and k.is_pure(3):
        try:
            manifold = is_closed_orientable_3manifold(k)
            profile["closed_orientable_3manifold"] = manifold.passed
            if manifold.passed:
                profile["homology_3sphere"] = is_homology_3sphere(k).is_homology_sphere
        except ValueError:
            profile["closed_orientable_3manifold"] = False
    return profile
