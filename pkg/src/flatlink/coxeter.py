"""Right-angled Coxeter groups, ShortLex normal forms and Davis-complex balls.

Generators are the vertices of a complex's 1-skeleton, one involution per
vertex, with commuting relations along edges.  Words are tuples of
generator indices; the normal form is the ShortLex least word for the
element, computed with the piling (heap of pieces) representation.
"""

from itertools import combinations
from typing import NamedTuple

from .complexes import SimplicialComplex, Square


class ResourceLimitError(ValueError):
    """A construction would exceed its configured size bound."""


class Racg:
    """Right-angled Coxeter group on generators 0..n-1."""

    def __init__(self, generators, commuting_pairs):
        self.n = int(generators)
        self.commuting = [set() for _ in range(self.n)]
        for (u, v) in commuting_pairs:
            if u == v:
                raise ValueError("generator %d cannot commute with itself" % u)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError("generator pair (%d,%d) out of range" % (u, v))
            self.commuting[u].add(v)
            self.commuting[v].add(u)
        self.commuting = tuple(frozenset(s) for s in self.commuting)
        self._blockers = tuple(
            frozenset(set(range(self.n)) - self.commuting[g] - {g})
            for g in range(self.n))

    def commutes(self, a, b):
        return b in self.commuting[a]

    def __repr__(self):
        edges = sum(len(s) for s in self.commuting) // 2
        return "Racg(%d generators, %d commuting pairs)" % (self.n, edges)

    # -- word arithmetic -------------------------------------------------

    def normal_form(self, word):
        """ShortLex least word for the group element.

        Piles: each generator keeps a stack holding 1 for its own letters
        and 0 for blockers from non-commuting letters.  A letter cancels
        when its own pile shows an unblocked copy on top; the normal form
        is read off by repeatedly taking the least available generator.
        """
        piles = [[] for _ in range(self.n)]
        count = 0
        for g in word:
            if not 0 <= g < self.n:
                raise ValueError("letter %r is not a generator" % (g,))
            pile = piles[g]
            if pile and pile[-1] == 1:
                pile.pop()
                for j in self._blockers[g]:
                    piles[j].pop()
                count -= 1
            else:
                pile.append(1)
                for j in self._blockers[g]:
                    piles[j].append(0)
                count += 1

        out = []
        positions = [0] * self.n  # read piles bottom-up
        lengths = [len(p) for p in piles]
        for _ in range(count):
            for g in range(self.n):
                if positions[g] < lengths[g] and piles[g][positions[g]] == 1:
                    out.append(g)
                    positions[g] += 1
                    for j in self._blockers[g]:
                        positions[j] += 1
                    break
            else:
                raise AssertionError("piling invariant broken")
        return tuple(out)

    def multiply(self, word_a, word_b):
        return self.normal_form(tuple(word_a) + tuple(word_b))

    def length(self, word):
        return len(self.normal_form(word))

    def ball_sizes(self, radius):
        """Sphere sizes |S_0| .. |S_radius| by breadth-first search."""
        sphere = {()}
        seen = {()}
        sizes = [1]
        for _ in range(radius):
            nxt = set()
            for w in sphere:
                for g in range(self.n):
                    nf = self.normal_form(w + (g,))
                    if nf not in seen and len(nf) == len(w) + 1:
                        nxt.add(nf)
            seen |= nxt
            sizes.append(len(nxt))
            sphere = nxt
        return sizes

    def ball(self, radius):
        """All normal forms of length <= radius."""
        sphere = {()}
        seen = {()}
        for _ in range(radius):
            nxt = set()
            for w in sphere:
                for g in range(self.n):
                    nf = self.normal_form(w + (g,))
                    if nf not in seen and len(nf) == len(w) + 1:
                        nxt.add(nf)
            seen |= nxt
            sphere = nxt
        return seen

    def min_coset_rep(self, word, parabolic):
        """ShortLex least element of word * W_J by greedy descent."""
        cur = self.normal_form(word)
        gens = sorted(parabolic)
        improved = True
        while improved:
            improved = False
            for s in gens:
                cand = self.normal_form(cur + (s,))
                if (len(cand), cand) < (len(cur), cur):
                    cur = cand
                    improved = True
                    break
        return cur


def racg_from_skeleton(complex_):
    """RACG with one generator per vertex and commuting pairs per edge."""
    return Racg(complex_.vertex_count, complex_.faces(1))


def normal_form(group, word):
    return group.normal_form(word)


def ball_sizes(group, radius):
    return group.ball_sizes(radius)


class DavisBall:
    """Finite ball in the Davis complex of a RACG over a complex K.

    Cube cells are (g, J): J a simplex vertex set of K and g the ShortLex
    least representative of the coset g W_J.  A cell is kept when all of
    its vertices lie within word length <= radius.
    """

    def __init__(self, group, complex_, radius, max_vertices=200000):
        self.group = group
        self.base = complex_
        self.radius = int(radius)
        vertices = group.ball(self.radius)
        if len(vertices) > max_vertices:
            raise ResourceLimitError("Davis ball has %d vertices, over the bound %d"
                                     % (len(vertices), max_vertices))
        self.vertices = frozenset(vertices)
        simplices = [tuple(f) for f in complex_.all_faces()]
        cells = set()
        for g in sorted(self.vertices):
            for J in simplices:
                rep = group.min_coset_rep(g, J)
                if (rep, J) in cells:
                    continue
                if all(v in self.vertices for v in self._cell_vertices(rep, J)):
                    cells.add((rep, J))
        self.cells = tuple(sorted(cells, key=lambda c: (len(c[1]), c[1], c[0])))

    def _cell_vertices(self, rep, J):
        verts = [rep]
        for s in J:
            verts += [self.group.normal_form(v + (s,)) for v in verts]
        return verts

    def cells_of_dim(self, d):
        return [c for c in self.cells if len(c[1]) == d]

    def f_vector(self):
        top = max((len(J) for _, J in self.cells), default=0)
        counts = [len(self.vertices)]
        counts += [len(self.cells_of_dim(d)) for d in range(1, top + 1)]
        return tuple(counts)

    def cells_at_vertex(self, g):
        """Cells of the ambient Davis complex containing g, ball membership aside."""
        out = []
        for J in (tuple(f) for f in self.base.all_faces()):
            out.append((self.group.min_coset_rep(g, J), J))
        return out

    def is_interior(self, g):
        """True when the whole star of g in the Davis complex lies in the ball."""
        if g not in self.vertices:
            return False
        for rep, J in self.cells_at_vertex(g):
            if any(v not in self.vertices for v in self._cell_vertices(rep, J)):
                return False
        return True

    def interior_vertices(self):
        return sorted(v for v in self.vertices if self.is_interior(v))

    def vertex_link(self, g):
        """Simplicial complex on the generator set spanned by the cells at g."""
        facets = {}
        for rep, J in self.cells:
            if g in self._cell_vertices(rep, J):
                facets[J] = True
        maximal = []
        for J in sorted(facets, key=len, reverse=True):
            if not any(set(J) <= set(m) for m in maximal):
                maximal.append(J)
        return SimplicialComplex(self.base.vertex_count, sorted(maximal))

    def to_json(self):
        return {
            "ground": self.base.vertex_count,
            "radius": self.radius,
            "vertex_words": sorted(list(w) for w in self.vertices),
            "cells": [{"J": list(J), "coset": list(rep)} for rep, J in self.cells],
        }


def davis_ball(group, complex_, radius, max_vertices=200000):
    if radius < 0:
        raise ValueError("radius must be non-negative")
    return DavisBall(group, complex_, radius, max_vertices=max_vertices)


class FlatSubcomplex(NamedTuple):
    square: Square
    translate: tuple  # ShortLex least representative of g W_square
    cells: tuple      # the (rep, J) cells of the ball inside the flat


def flat_from_square(ball, square, translate=()):
    """Cells of the ball lying in the flat g W_square of a square.

    Every cell type is a subset of the square's vertices (dimension <= 2);
    inside the full Davis complex the flat is a square grid.
    """
    if isinstance(square, Square):
        sq = square
    else:
        sq = Square.canonical(tuple(square))
    sq.validate(ball.base)
    members = set(sq.cycle)
    g0 = ball.group.min_coset_rep(tuple(translate), sorted(members))
    kept = []
    for rep, J in ball.cells:
        if set(J) <= members and ball.group.min_coset_rep(rep, sorted(members)) == g0:
            kept.append((rep, J))
    return FlatSubcomplex(sq, g0, tuple(kept))


class CapraceReport(NamedTuple):
    passes: bool
    witnesses: tuple  # ((sorted 5-vertex tuple, "3-points" | "edge-point"), ...)


def caprace_criterion(complex_):
    """Scan for full subcomplexes forbidden by the relative-hyperbolicity test.

    Forbidden: a full 5-vertex subcomplex isomorphic to the suspension of
    3 points, or of (edge and a point).  The suspension points p, q are a
    non-adjacent pair; the other three vertices are common neighbors, so
    candidates are generated from non-adjacent pairs and their common
    neighborhoods rather than all 5-subsets.
    """
    witnesses = []
    n = complex_.vertex_count
    for p in range(n):
        nbrs_p = complex_.neighbors(p)
        for q in range(p + 1, n):
            if q in nbrs_p:
                continue
            common = sorted(nbrs_p & complex_.neighbors(q))
            for x, y, z in combinations(common, 3):
                edges = [(u, v) for u, v in ((x, y), (x, z), (y, z))
                         if complex_.has_face((u, v))]
                if len(edges) == 0:
                    witnesses.append((tuple(sorted((p, q, x, y, z))), "3-points"))
                elif len(edges) == 1:
                    u, v = edges[0]
                    if (complex_.has_face(tuple(sorted((p, u, v)))) and
                            complex_.has_face(tuple(sorted((q, u, v))))):
                        witnesses.append((tuple(sorted((p, q, x, y, z))), "edge-point"))
    return CapraceReport(not witnesses, tuple(sorted(set(witnesses))))
