"""The explicit linear resolution of the residue field over a flag face ring.

Basis elements in homological degree j are classes of j-letter words in the
vertex letters, modulo: squares of letters vanish, and two adjacent distinct
letters anticommute exactly when they span an edge.  A class is zero iff some
representative has two equal adjacent letters; otherwise its normal form is
the lexicographically smallest representative, with a tracked sign.

The differential sends a class [w] to the signed sum, over the positions
whose letter can travel to the front of w, of (that letter) tensor (w with
the position removed).
"""

from __future__ import annotations

from .complexes import SimplicialComplex, _mask_bits
from .errors import NotFlag


class GKComplex:
    """Lazy degree-by-degree model of the resolution for one flag complex."""

    def __init__(self, sigma: SimplicialComplex):
        if not sigma.is_flag():
            raise NotFlag("the word-class resolution needs a flag complex")
        self.sigma = sigma
        self.letters = [i for i in range(sigma.n) if sigma.has_face_mask(1 << i)]
        self.adj = [0] * sigma.n
        for u in self.letters:
            for v in self.letters:
                if u != v and sigma.has_face_mask((1 << u) | (1 << v)):
                    self.adj[u] |= 1 << v
        self._norm_cache = {}
        self._levels = [self._level_zero()]

    # -- word classes ----------------------------------------------------

    def normalize(self, word: tuple):
        """(is_zero, sign, normal_form) for the class of the word.

        BFS over the allowed adjacent transpositions; every representative
        discovered is cached, so each class is explored once.
        """
        cached = self._norm_cache.get(word)
        if cached is not None:
            return cached
        adj = self.adj
        seen = {word: 1}
        frontier = [word]
        zero = False
        while frontier and not zero:
            nxt = []
            for w in frontier:
                s = seen[w]
                for p in range(len(w) - 1):
                    a, b = w[p], w[p + 1]
                    if a == b:
                        zero = True
                        break
                    if not adj[a] >> b & 1:
                        continue
                    w2 = w[:p] + (b, a) + w[p + 2 :]
                    if w2 not in seen:
                        seen[w2] = -s
                        nxt.append(w2)
                if zero:
                    break
            frontier = nxt
        if zero:
            result = (True, 1, None)
            for w in seen:
                self._norm_cache[w] = result
            return result
        nf = min(seen)
        base = seen[nf]
        for w, s in seen.items():
            self._norm_cache[w] = (False, s * base, nf)
        return self._norm_cache[word]

    def head_positions(self, word: tuple):
        """0-based positions whose letter anticommutes past the whole prefix."""
        adj = self.adj
        out = []
        for p, v in enumerate(word):
            if all(adj[u] >> v & 1 for u in word[:p]):
                out.append(p)
        return out

    # -- levels ------------------------------------------------------------

    def _level_zero(self):
        return {"words": [()], "index": {(): 0}, "diff": [[]], "support": [(0,) * self.sigma.n]}

    def level(self, j: int):
        while len(self._levels) <= j:
            self._build_next_level()
        return self._levels[j]

    def _build_next_level(self):
        prev = self._levels[-1]
        found = set()
        for u in prev["words"]:
            for v in self.letters:
                zero, _, nf = self.normalize(u + (v,))
                if not zero:
                    found.add(nf)
        words = sorted(found)
        index = {w: i for i, w in enumerate(words)}
        below = self._levels[-1]["index"]
        diff = []
        support = []
        n = self.sigma.n
        for w in words:
            terms = {}
            for p in self.head_positions(w):
                residual = w[:p] + w[p + 1 :]
                zero, sign, nf = self.normalize(residual)
                if zero:
                    continue
                coeff = sign if p % 2 == 0 else -sign
                key = (w[p], below[nf])
                terms[key] = terms.get(key, 0) + coeff
            diff.append([(c, v, t) for (v, t), c in sorted(terms.items()) if c])
            e = [0] * n
            for v in w:
                e[v] += 1
            support.append(tuple(e))
        self._levels.append(
            {"words": words, "index": index, "diff": diff, "support": support}
        )

    def dimension(self, j: int) -> int:
        return len(self.level(j)["words"])


def gk_basis(sigma: SimplicialComplex, j: int):
    """Normal-form words of the degree-j basis, as tuples of vertex labels."""
    gk = GKComplex(sigma)
    lvl = gk.level(j)
    return [tuple(sigma.vertices[v] for v in w) for w in lvl["words"]]


def gk_differential(sigma: SimplicialComplex, j: int):
    """Matrix of degree j -> j-1, entries as {vertex label: integer} sums.

    Rows are indexed by the degree-(j-1) basis, columns by the degree-j
    basis, both in their canonical (lexicographic) order.
    """
    gk = GKComplex(sigma)
    lvl = gk.level(j)
    rows = gk_basis(sigma, j - 1)
    cols = gk_basis(sigma, j)
    entries = {}
    for c, terms in enumerate(lvl["diff"]):
        for coeff, v, t in terms:
            cell = entries.setdefault((t, c), {})
            label = sigma.vertices[v]
            cell[label] = cell.get(label, 0) + coeff
    return {"rows": rows, "cols": cols, "entries": entries}


def gk_square_is_zero(sigma: SimplicialComplex, j: int) -> bool:
    """Check d o d = 0 from degree j, multiplying entries in the face ring.

    Products of two letters spanning a nonface vanish in the ring and are
    dropped before summing.
    """
    gk = GKComplex(sigma)
    lvl = gk.level(j)
    below = gk.level(j - 1) if j >= 1 else None
    if j < 2:
        return True
    acc = {}
    for c, terms in enumerate(lvl["diff"]):
        for c1, v1, t1 in terms:
            for c2, v2, t2 in below["diff"][t1]:
                if v1 != v2 and not gk.adj[v1] >> v2 & 1:
                    continue  # z_{v1} z_{v2} lies in the defining ideal
                key = (c, t2, tuple(sorted((v1, v2))))
                acc[key] = acc.get(key, 0) + c1 * c2
    return all(v == 0 for v in acc.values())
