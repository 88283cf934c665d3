"""Links as edge cycles in a triangulated homology 3-sphere or as signed
planar diagrams; exact pairwise linking numbers by two independent methods;
the obstruction classification over the linking matrix.

The simplicial method is purely homological: pass to the second barycentric
subdivision, remove a neighborhood of one component, and solve for the
class of the other component as a multiple of the meridian in the first
homology of the complement, which is infinite cyclic.
"""

import heapq
from collections import deque
from enum import Enum
from itertools import combinations, permutations
from typing import NamedTuple

from .complexes import SimplicialComplex, barycentric_subdivision, find_squares
from .homology import IntegerMatrix, is_homology_3sphere, smith_normal_form


class EdgeCycleLink:
    """Disjoint oriented edge cycles in an ambient simplicial complex."""

    def __init__(self, ambient, components, orientations=None):
        self.ambient = ambient
        self.components = tuple(tuple(c) for c in components)
        if orientations is None:
            orientations = (1,) * len(self.components)
        self.orientations = tuple(int(o) for o in orientations)
        if len(self.orientations) != len(self.components):
            raise ValueError("one orientation per component required")
        if any(o not in (1, -1) for o in self.orientations):
            raise ValueError("orientations must be +1 or -1")
        seen = set()
        for ci, comp in enumerate(self.components):
            if len(comp) < 3 or len(set(comp)) != len(comp):
                raise ValueError("component %d must have >= 3 distinct vertices" % ci)
            for k in range(len(comp)):
                u, v = comp[k], comp[(k + 1) % len(comp)]
                if not ambient.has_face(tuple(sorted((u, v)))):
                    raise ValueError("component %d uses non-edge (%d,%d)" % (ci, u, v))
            overlap = seen & set(comp)
            if overlap:
                raise ValueError("components share vertex %d" % min(overlap))
            seen |= set(comp)

    def __len__(self):
        return len(self.components)

    def reversed_component(self, index):
        comps = list(self.components)
        oris = list(self.orientations)
        oris[index] = -oris[index]
        return EdgeCycleLink(self.ambient, comps, oris)

    def to_json(self):
        return {"components": [list(c) for c in self.components],
                "orientations": list(self.orientations)}

    @classmethod
    def from_json(cls, ambient, data):
        if "components" not in data:
            raise ValueError("link JSON needs 'components'")
        return cls(ambient, data["components"], data.get("orientations"))


def link_from_squares(sigma):
    """One link component per square of the complex, in canonical cycle order.

    Squares must be pairwise vertex-disjoint; default orientations are the
    canonical (lexicographic) traversals.
    """
    squares = find_squares(sigma)
    seen = {}
    for s in squares:
        for v in s.cycle:
            if v in seen:
                raise ValueError("squares are not disjoint: vertex %d is shared" % v)
            seen[v] = s
    return EdgeCycleLink(sigma, [s.cycle for s in squares])


class PlanarDiagram:
    """Signed crossing data of a link diagram.

    Only what linking numbers need is stored: each crossing records which
    component passes over, which under, and its sign; ``order`` lists each
    component's crossings in traversal order.  Planarity is not certified.
    """

    def __init__(self, m, crossings, order):
        self.m = int(m)
        self.crossings = tuple((int(o), int(u), int(s)) for o, u, s in crossings)
        self.order = tuple(tuple(int(c) for c in comp) for comp in order)
        if self.m < 0:
            raise ValueError("component count must be non-negative")
        for idx, (over, under, sign) in enumerate(self.crossings):
            if not (0 <= over < self.m and 0 <= under < self.m):
                raise ValueError("crossing #%d names a component out of range" % idx)
            if sign not in (1, -1):
                raise ValueError("crossing #%d has sign %r, expected +1/-1" % (idx, sign))
        if len(self.order) != self.m:
            raise ValueError("need a traversal order for each component")
        visits = {}
        for ci, comp in enumerate(self.order):
            for c in comp:
                if not 0 <= c < len(self.crossings):
                    raise ValueError("component %d visits unknown crossing %d" % (ci, c))
                visits.setdefault(c, []).append(ci)
        for idx, (over, under, _) in enumerate(self.crossings):
            if sorted(visits.get(idx, [])) != sorted((over, under)):
                raise ValueError("crossing #%d must be visited once by each strand" % idx)

    def to_json(self):
        return {"m": self.m,
                "crossings": [{"over": o, "under": u, "sign": s}
                              for o, u, s in self.crossings],
                "order": [list(c) for c in self.order]}

    @classmethod
    def from_json(cls, data):
        for key in ("m", "crossings", "order"):
            if key not in data:
                raise ValueError("diagram JSON needs %r" % key)
        crossings = [(c["over"], c["under"], c["sign"]) for c in data["crossings"]]
        return cls(data["m"], crossings, data["order"])


class LinkingMatrix:
    """Symmetric integer matrix of pairwise linking numbers, zero diagonal."""

    def __init__(self, entries):
        self.entries = tuple(tuple(int(x) for x in row) for row in entries)
        self.m = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != self.m:
                raise ValueError("linking matrix must be square")
            if row[i] != 0:
                raise ValueError("diagonal entries are 0 by convention")
            for j in range(self.m):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("linking matrix must be symmetric")

    @classmethod
    def from_pairs(cls, m, pairs):
        data = [[0] * m for _ in range(m)]
        for (i, j), v in pairs.items():
            data[i][j] = v
            data[j][i] = v
        return cls(data)

    def off_diagonal(self):
        return [self.entries[i][j] for i in range(self.m)
                for j in range(i + 1, self.m)]

    def negated(self):
        return LinkingMatrix([[-x for x in row] for row in self.entries])

    def permuted(self, perm):
        return LinkingMatrix([[self.entries[perm[i]][perm[j]] for j in range(self.m)]
                              for i in range(self.m)])

    def equivalent_to(self, other):
        """Equality up to simultaneous component permutation and global sign."""
        if not isinstance(other, LinkingMatrix) or self.m != other.m:
            return False
        for perm in permutations(range(self.m)):
            p = self.permuted(perm)
            if p == other or p.negated() == other:
                return True
        return False

    def to_json(self):
        return {"m": self.m, "entries": [list(r) for r in self.entries]}

    def __eq__(self, other):
        return isinstance(other, LinkingMatrix) and self.entries == other.entries

    def __repr__(self):
        return "LinkingMatrix(%r)" % (list(map(list, self.entries)),)


def diagram_linking_matrix(diagram):
    """Half the signed count of crossings between each pair of components."""
    sums = {}
    for over, under, sign in diagram.crossings:
        if over == under:
            continue
        key = (min(over, under), max(over, under))
        sums[key] = sums.get(key, 0) + sign
    pairs = {}
    for key, total in sums.items():
        if total % 2:
            raise ValueError(
                "inter-component crossing signs for pair %r sum to the odd %d; "
                "malformed diagram" % (key, total))
        pairs[key] = total // 2
    return LinkingMatrix.from_pairs(diagram.m, pairs)


class ObstructionVerdict(Enum):
    LINKING_OBSTRUCTION = "LinkingObstruction"
    ZERO_MATRIX_NEEDS_CERTIFICATE = "ZeroMatrixNeedsCertificate"
    MIXED_NEEDS_ISOTOPY_CHECK = "MixedNeedsIsotopyCheck"
    NO_OBSTRUCTION_DETECTED = "NoObstructionDetected"


class ObstructionReport(NamedTuple):
    verdict: ObstructionVerdict
    explanation: str


def obstruction_report(matrix, nontrivial_certificate=None):
    """Classify a linking matrix against the great-circle constraint.

    Decision table, first match wins: an entry of magnitude >= 2 obstructs
    outright; an all-zero matrix obstructs only with a nontriviality
    certificate; a mix of zeros and units needs an isotopy comparison,
    again settled by the certificate; all-unit matrices are undecided by
    linking numbers alone.
    """
    if not isinstance(matrix, LinkingMatrix):
        matrix = LinkingMatrix(matrix)
    off = matrix.off_diagonal()
    if not off:
        return ObstructionReport(
            ObstructionVerdict.NO_OBSTRUCTION_DETECTED,
            "fewer than two components: pairwise linking analysis is vacuous "
            "(empty matrix)")
    big = [(i, j) for i in range(matrix.m) for j in range(i + 1, matrix.m)
           if abs(matrix.entries[i][j]) >= 2]
    if big:
        i, j = big[0]
        return ObstructionReport(
            ObstructionVerdict.LINKING_OBSTRUCTION,
            "Lk(%d,%d) = %d has magnitude >= 2, impossible for a great circle "
            "link whose pairwise linking numbers are +-1" % (i, j, matrix.entries[i][j]))
    if all(x == 0 for x in off):
        if nontrivial_certificate:
            return ObstructionReport(
                ObstructionVerdict.LINKING_OBSTRUCTION,
                "all pairwise linking numbers are 0 and the link is certified "
                "non-trivial: the components cannot be realized as great circles")
        return ObstructionReport(
            ObstructionVerdict.ZERO_MATRIX_NEEDS_CERTIFICATE,
            "all pairwise linking numbers are 0; obstruction requires a "
            "certificate that the link is non-trivial")
    if any(x == 0 for x in off):
        if nontrivial_certificate:
            return ObstructionReport(
                ObstructionVerdict.LINKING_OBSTRUCTION,
                "linking numbers mix 0 and +-1 and the configuration is "
                "certified not isotopic to a great circle link")
        return ObstructionReport(
            ObstructionVerdict.MIXED_NEEDS_ISOTOPY_CHECK,
            "linking numbers mix 0 and +-1; deciding the obstruction needs an "
            "isotopy-class comparison beyond the matrix")
    return ObstructionReport(
        ObstructionVerdict.NO_OBSTRUCTION_DETECTED,
        "all pairwise linking numbers are +-1, consistent with a great circle "
        "link; linking numbers alone cannot decide")


# -- diagram fixtures ------------------------------------------------------

def hopf_diagram():
    """Two components crossing twice, both positive: linking number 1."""
    return PlanarDiagram(2, [(0, 1, 1), (1, 0, 1)], [[0, 1], [0, 1]])


def solomon_diagram():
    """Four positive inter-component crossings: linking number 2."""
    crossings = [(0, 1, 1), (1, 0, 1), (0, 1, 1), (1, 0, 1)]
    return PlanarDiagram(2, crossings, [[0, 1, 2, 3], [0, 1, 2, 3]])


def whitehead_diagram():
    """The clasped unlink: four cancelling inter-component crossings plus a
    self-crossing in the clasp, linking number 0."""
    crossings = [(0, 1, 1), (1, 0, -1), (0, 1, -1), (1, 0, 1), (1, 1, -1)]
    return PlanarDiagram(2, crossings, [[0, 1, 2, 3], [0, 1, 2, 3, 4, 4]])


def three_chain_133_diagram():
    """Three components with pairwise linking numbers 1, 3 and 3."""
    crossings = []
    order = [[], [], []]

    def clasp(a, b, count):
        for _ in range(count):
            for over, under in ((a, b), (b, a)):
                idx = len(crossings)
                crossings.append((over, under, 1))
                order[a].append(idx)
                order[b].append(idx)

    clasp(0, 1, 1)   # Lk(0,1) = 1
    clasp(0, 2, 3)   # Lk(0,2) = 3
    clasp(1, 2, 3)   # Lk(1,2) = 3
    return PlanarDiagram(3, crossings, order)


def brunnian_diagram(m):
    """Cyclically clasped components with cancelling signs, all pairwise
    linking numbers zero; m = 3 is the Borromean pattern."""
    if m < 3:
        raise ValueError("a Brunnian pattern needs at least 3 components, got %d" % m)
    crossings = []
    order = [[] for _ in range(m)]
    for i in range(m):
        j = (i + 1) % m
        idx = len(crossings)
        crossings.append((i, j, 1))
        crossings.append((j, i, -1))
        order[i] += [idx, idx + 1]
        order[j] += [idx, idx + 1]
    diagram = PlanarDiagram(m, crossings, order)
    matrix = diagram_linking_matrix(diagram)
    if any(matrix.off_diagonal()):
        raise AssertionError("Brunnian pattern has a nonzero pairwise sum")
    return diagram


def whitehead_double_diagram(m, twists):
    """Doubled components of the m-component Brunnian pattern.

    Each inter-component crossing becomes the four crossings of the two
    parallel strands; each component gains a clasp and the given even
    number of twist self-crossings.  All pairwise linking numbers are 0.
    """
    if m < 3:
        raise ValueError("need at least 3 components, got %d" % m)
    if twists % 2:
        raise ValueError("twist count must be even, got %d" % twists)
    base = brunnian_diagram(m)
    crossings = []
    order = [[] for _ in range(m)]
    for (over, under, sign) in base.crossings:
        for _ in range(4):  # two parallel strands on each side
            idx = len(crossings)
            crossings.append((over, under, sign))
            order[over].append(idx)
            order[under].append(idx)
    for i in range(m):
        # the clasp of the double: two cancelling self-crossings
        for s in (1, -1):
            idx = len(crossings)
            crossings.append((i, i, s))
            order[i] += [idx, idx]
        twist_sign = 1 if twists >= 0 else -1
        for _ in range(abs(twists)):
            idx = len(crossings)
            crossings.append((i, i, twist_sign))
            order[i] += [idx, idx]
    diagram = PlanarDiagram(m, crossings, order)
    matrix = diagram_linking_matrix(diagram)
    if any(matrix.off_diagonal()):
        raise AssertionError("doubled pattern has a nonzero pairwise sum")
    return diagram


# -- simplicial linking numbers --------------------------------------------

_PERM4 = []
for _p in permutations(range(4)):
    _par = 1
    for _i in range(4):
        for _j in range(_i + 1, 4):
            if _p[_i] > _p[_j]:
                _par = -_par
    _PERM4.append((_p, _par))


def _sd_oriented(facets_signed):
    """Barycentric subdivision of an oriented facet list.

    Input: list of (sorted vertex 4-tuple, sign).  Output: the subdivided
    oriented facet list over new vertex ids (one per face, numbered by
    (dimension, lex)), plus the face -> id map.
    """
    faces = set()
    for f, _ in facets_signed:
        for size in range(1, 5):
            faces.update(combinations(f, size))
    ordered = sorted(faces, key=lambda t: (len(t), t))
    face_id = {f: i for i, f in enumerate(ordered)}
    out = []
    for f, sign in facets_signed:
        for perm, parity in _PERM4:
            seq = (f[perm[0]], f[perm[1]], f[perm[2]], f[perm[3]])
            out.append((
                (face_id[(seq[0],)],
                 face_id[tuple(sorted(seq[:2]))],
                 face_id[tuple(sorted(seq[:3]))],
                 face_id[tuple(sorted(seq))]),
                sign * parity))
    return out, face_id


def _carry_cycle(cycle, face_id):
    """Push an edge cycle through one subdivision: vertex, midpoint, vertex."""
    out = []
    r = len(cycle)
    for k in range(r):
        u, v = cycle[k], cycle[(k + 1) % r]
        out.append(face_id[(u,)])
        out.append(face_id[tuple(sorted((u, v)))])
    return tuple(out)


def _cycle_chain(cycle, factor=1):
    chain = {}
    r = len(cycle)
    for k in range(r):
        u, v = cycle[k], cycle[(k + 1) % r]
        key = (u, v) if u < v else (v, u)
        sign = factor if u < v else -factor
        chain[key] = chain.get(key, 0) + sign
    return {e: c for e, c in chain.items() if c}


def _edge_link_cycle(facets_signed, a, b):
    """The link circle of the edge (a,b), oriented by the right-hand rule.

    Walk direction is fixed at the lexicographically least tetrahedron T
    around the edge: the ordered tuple (a, b, w0, w1) is positively
    oriented in T, where w0 -> w1 is the first meridian step.
    """
    around = [(f, s) for f, s in facets_signed if a in f and b in f]
    if not around:
        raise ValueError("(%d,%d) is not an edge of the ambient complex" % (a, b))
    adj = {}
    for f, _ in around:
        w1, w2 = (x for x in f if x != a and x != b)
        adj.setdefault(w1, []).append(w2)
        adj.setdefault(w2, []).append(w1)
    if any(len(v) != 2 for v in adj.values()):
        raise ValueError("edge link of (%d,%d) is not a circle" % (a, b))
    t0, s0 = min(around)
    w0, w1 = (x for x in t0 if x != a and x != b)
    par = _tuple_parity((a, b, w0, w1), t0)
    if par * s0 < 0:
        w0, w1 = w1, w0
    cycle = [w0, w1]
    while True:
        prev, cur = cycle[-2], cycle[-1]
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == w0:
            break
        cycle.append(nxt)
    if len(cycle) != len(adj):
        raise ValueError("edge link of (%d,%d) is not a single circle" % (a, b))
    return tuple(cycle)


def _tuple_parity(seq, sorted_ref):
    pos = [sorted_ref.index(x) for x in seq]
    par = 1
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if pos[i] > pos[j]:
                par = -par
    return par


class LinkingInternalError(RuntimeError):
    """An exact solve contradicted the homology-sphere invariants."""


def _class_multiple(edges, triangles, target, generator):
    """Solve [target] = lambda * [generator] in H_1 of a complex.

    ``edges``/``triangles`` describe the complex; target and generator are
    1-cycles as {sorted edge: coefficient}.  Verifies that H_1 is infinite
    cyclic and that the generator generates; anything else aborts loudly.
    Elimination: spanning-forest gauge, then unit-pivot reduction of the
    boundary-image lattice with the two cycles carried through the row
    operations, finishing with a Smith form (with transforms) on the core.
    """
    # spanning forest over the 1-skeleton
    adj = {}
    for (u, v) in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    tree = set()
    visited = set()
    for root in adj:
        if root in visited:
            continue
        visited.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in visited:
                    visited.add(y)
                    tree.add((x, y) if x < y else (y, x))
                    queue.append(y)
    coord = {}
    for e in edges:
        if e not in tree:
            coord[e] = len(coord)
    n_coords = len(coord)

    def project(chain):
        out = {}
        for e, c in chain.items():
            idx = coord.get(e)
            if idx is not None and c:
                out[idx] = c
        return out

    t_vec = project(target)
    g_vec = project(generator)

    rows = {}
    cols = {}
    for cid, tri in enumerate(triangles):
        a, b, c = tri
        col = {}
        for e, s in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
            idx = coord.get(e)
            if idx is not None:
                col[idx] = col.get(idx, 0) + s
        col = {r: v for r, v in col.items() if v}
        if col:
            cols[cid] = col
            for r, v in col.items():
                rows.setdefault(r, {})[cid] = v

    alive = set(range(n_coords))

    def eliminate(i, j):
        s = rows[i][j]
        row_i = rows[i]
        col_j = cols[j]
        for j2, coeff in [(x, c) for x, c in row_i.items() if x != j]:
            factor = coeff * s
            col_j2 = cols[j2]
            for k, vkj in col_j.items():
                if k == i:
                    continue
                new = col_j2.get(k, 0) - factor * vkj
                if new:
                    col_j2[k] = new
                    rows[k][j2] = new
                else:
                    if k in col_j2:
                        del col_j2[k]
                        del rows[k][j2]
            del col_j2[i]
            if not col_j2:
                del cols[j2]
        rows[i] = {j: s}
        for k, vkj in list(col_j.items()):
            if k == i:
                continue
            factor = vkj * s
            if i in t_vec:
                nv = t_vec.get(k, 0) - factor * t_vec[i]
                if nv:
                    t_vec[k] = nv
                else:
                    t_vec.pop(k, None)
            if i in g_vec:
                nv = g_vec.get(k, 0) - factor * g_vec[i]
                if nv:
                    g_vec[k] = nv
                else:
                    g_vec.pop(k, None)
            del rows[k][j]
            if not rows[k]:
                del rows[k]
        del rows[i]
        del cols[j]
        alive.discard(i)
        t_vec.pop(i, None)
        g_vec.pop(i, None)

    # phase 1: queue-driven eliminations of singleton rows/columns
    queue = deque()
    for i in sorted(rows):
        if len(rows[i]) == 1:
            queue.append(("r", i))
    for j in sorted(cols):
        if len(cols[j]) == 1:
            queue.append(("c", j))

    def push_candidates(row_ids, col_ids):
        for k in row_ids:
            if k in rows and len(rows[k]) == 1:
                queue.append(("r", k))
        for c in col_ids:
            if c in cols and len(cols[c]) == 1:
                queue.append(("c", c))

    def run_queue():
        while queue:
            kind, key = queue.popleft()
            if kind == "r":
                if key not in rows or len(rows[key]) != 1:
                    continue
                j = next(iter(rows[key]))
                if rows[key][j] not in (1, -1):
                    continue
                affected_rows = [k for k in cols[j] if k != key]
                eliminate(key, j)
                push_candidates(affected_rows, ())
            else:
                if key not in cols or len(cols[key]) != 1:
                    continue
                i = next(iter(cols[key]))
                if cols[key][i] not in (1, -1):
                    continue
                affected_cols = [x for x in rows[i] if x != key]
                eliminate(i, key)
                push_candidates((), affected_cols)

    run_queue()

    # phase 2: general unit pivots by Markowitz cost until none remain
    while rows:
        heap = []
        for i, row in rows.items():
            ri = len(row) - 1
            for j, val in row.items():
                if val in (1, -1):
                    heap.append((ri * (len(cols[j]) - 1), i, j))
        if not heap:
            break
        heapq.heapify(heap)
        progressed = False
        while heap:
            cost, i, j = heapq.heappop(heap)
            if i not in rows or j not in rows[i] or rows[i][j] not in (1, -1):
                continue
            cur = (len(rows[i]) - 1) * (len(cols[j]) - 1)
            if cur > cost:
                heapq.heappush(heap, (cur, i, j))
                continue
            affected_rows = [k for k in cols[j] if k != i]
            affected_cols = [x for x in rows[i] if x != j]
            eliminate(i, j)
            progressed = True
            push_candidates(affected_rows, affected_cols)
            run_queue()
            for k in affected_rows:
                if k in rows:
                    rk = rows[k]
                    ri = len(rk) - 1
                    for j2, val in rk.items():
                        if val in (1, -1):
                            heapq.heappush(heap, (ri * (len(cols[j2]) - 1), k, j2))
        if not progressed:
            break

    # phase 3: Smith form with transforms on the small core
    live = sorted(alive)
    m_star = len(live)
    ri = {r: k for k, r in enumerate(live)}
    live_cols = sorted(cols)
    core = IntegerMatrix(m_star, len(live_cols))
    for cnum, j in enumerate(live_cols):
        for r, v in cols[j].items():
            core.entries[(ri[r], cnum)] = v
    snf = smith_normal_form(core, want_transforms=True)
    rank = snf.rank()
    if any(d != 1 for d in snf.invariants):
        raise LinkingInternalError(
            "complement H_1 has torsion %r; ambient is not a homology sphere"
            % (snf.invariants,))
    if m_star - rank != 1:
        raise LinkingInternalError(
            "complement H_1 has rank %d, expected 1" % (m_star - rank))

    def transformed(vec, row):
        # row `row` of U applied to the carried vector
        total = 0
        for (i, k), uv in snf.U.entries.items():
            if i == row:
                val = vec.get(live[k], 0)
                if val:
                    total += uv * val
        return total

    free_row = rank  # the single zero row of the diagonal form
    h = transformed(g_vec, free_row)
    if h not in (1, -1):
        raise LinkingInternalError(
            "meridian class is %d times a generator of H_1, expected a unit" % h)
    y = transformed(t_vec, free_row)
    return y * h


class _LinkingContext:
    """Shared state for linking computations over one ambient complex."""

    def __init__(self, sigma, link, orientation=None):
        if link.ambient is not sigma and link.ambient != sigma:
            raise ValueError("link does not reference this ambient complex")
        if orientation is None:
            report = is_homology_3sphere(sigma)
            if not report.is_homology_sphere:
                raise ValueError(
                    "ambient is not a verified homology 3-sphere: %s" % report.note)
            orientation = report.manifold.orientation
        facets_signed = sorted(orientation.items())
        # second barycentric subdivision with the components carried along
        f1, map1 = _sd_oriented(facets_signed)
        carried1 = [_carry_cycle(c, map1) for c in link.components]
        f2, map2 = _sd_oriented(f1)
        self.facets2 = f2
        self.components2 = [_carry_cycle(c, map2) for c in carried1]
        self.orientations = link.orientations
        edge_set = set()
        tri_set = set()
        for f, _ in f2:
            a, b, c, d = f
            edge_set.update(((a, b), (a, c), (a, d), (b, c), (b, d), (c, d)))
            tri_set.update(((a, b, c), (a, b, d), (a, c, d), (b, c, d)))
        self.edges = sorted(edge_set)
        self.triangles = sorted(tri_set)

    def pair(self, i, j):
        """Linking number of components i and j via the complement class."""
        comp_i = self.components2[i]
        comp_j = self.components2[j]
        excluded = set(comp_j)
        if excluded & set(comp_i):
            raise ValueError("components %d and %d are not disjoint" % (i, j))
        edges = [e for e in self.edges
                 if e[0] not in excluded and e[1] not in excluded]
        tris = [t for t in self.triangles
                if t[0] not in excluded and t[1] not in excluded
                and t[2] not in excluded]

        # meridian around the first edge of component j
        a, b = comp_j[0], comp_j[1]
        if self.orientations[j] < 0:
            a, b = b, a
        mu_cycle = _edge_link_cycle(self.facets2, a, b)
        if set(mu_cycle) & excluded:
            raise LinkingInternalError("meridian touches the removed component")

        target = _cycle_chain(comp_i, self.orientations[i])
        meridian = _cycle_chain(mu_cycle)
        edge_ok = set(edges)
        for chain in (target, meridian):
            if any(e not in edge_ok for e in chain):
                raise LinkingInternalError("cycle leaves the complement subcomplex")
        return _class_multiple(edges, tris, target, meridian)


def simplicial_linking_number(sigma, link, i, j, orientation=None):
    """Exact linking number of two components of an edge-cycle link.

    The ambient must verify as a homology 3-sphere (or pass a precomputed
    facet orientation to skip re-verification).  The ambient orientation is
    normalized with the lexicographically least facet positive.
    """
    if i == j:
        raise ValueError("need two distinct components")
    ctx = _LinkingContext(sigma, link, orientation=orientation)
    return ctx.pair(i, j)


def linking_matrix(sigma, link, orientation=None, verify_symmetry=False):
    """All pairwise linking numbers of an edge-cycle link."""
    m = len(link.components)
    if m <= 1:
        if orientation is None:
            report = is_homology_3sphere(sigma)
            if not report.is_homology_sphere:
                raise ValueError(
                    "ambient is not a verified homology 3-sphere: %s" % report.note)
        return LinkingMatrix([[0] * m for _ in range(m)])
    ctx = _LinkingContext(sigma, link, orientation=orientation)
    pairs = {}
    for i in range(m):
        for j in range(i + 1, m):
            value = ctx.pair(i, j)
            if verify_symmetry:
                other = ctx.pair(j, i)
                if other != value:
                    raise LinkingInternalError(
                        "linking number asymmetry: Lk(%d,%d)=%d but Lk(%d,%d)=%d"
                        % (i, j, value, j, i, other))
            pairs[(i, j)] = value
    return LinkingMatrix.from_pairs(m, pairs)


def subdivide_link(sigma, link):
    """Carry a link into the barycentric subdivision of its ambient complex."""
    sd, face_map = barycentric_subdivision(sigma, return_face_map=True)
    comps = [_carry_cycle(c, face_map) for c in link.components]
    return sd, EdgeCycleLink(sd, comps, link.orientations)
