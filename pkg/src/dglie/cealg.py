"""
Chevalley-Eilenberg algebras of dg Lie coalgebras and their twists.

CE(g) is the free graded-commutative algebra on the desuspension s^-1 g
(generator s^-1 e_i in degree |e_i| + 1), with

    d(s^-1 x) = -s^-1(dx) - 1/2 sum_{jk} c_x^{jk} (-1)^{|e_j|} s^-1 e_j . s^-1 e_k

extended by the Leibniz rule.  Monomials are nondecreasing index tuples
(odd generators at most once), weighted by the internal weights of g.
CE(g, M) = CE(g) (x) M with the differential twisted by the canonical MC
element xi = sum_i s^-1 e_i (x) e^i acting through the coaction of M.
"""

from fractions import Fraction

from .gradecore import (BettiTable, StructureError, WeightedComplex,
                        weighted_cohomology)
from .linalg import vaddto


def _sign(n):
    return -1 if n % 2 else 1


HALF = Fraction(1, 2)


class CEAlgebra:
    """CE(g) as a weight-graded (or weight-filtered) dg algebra."""

    def __init__(self, g, weights=None):
        self.g = g
        self.labels = list(g.labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if weights is None:
            weights, graded = g.grading()
        else:
            graded = True
        self.graded = graded
        self.gw = [weights[lab] for lab in self.labels]
        self.gdeg = [g.degree(lab) + 1 for lab in self.labels]
        self.par = [x % 2 for x in self.gdeg]
        self._by_weight = {0: [()]}
        self._dgen = {}
        self._dcache = {}
        for i, lab in enumerate(self.labels):
            self._dgen[i] = self._generator_differential(lab)

    # -- monomials ----------------------------------------------------------

    def degree(self, m):
        return sum(self.gdeg[i] for i in m)

    def weight(self, m):
        return sum(self.gw[i] for i in m)

    def monomials(self, w):
        """Monomials of weight exactly w."""
        if w not in self._by_weight:
            out = []
            n = len(self.labels)

            def rec(start, cur, left):
                if left == 0:
                    out.append(tuple(cur))
                    return
                for i in range(start, n):
                    if self.gw[i] > left:
                        continue
                    cur.append(i)
                    rec(i + 1 if self.par[i] else i, cur, left - self.gw[i])
                    cur.pop()

            rec(0, [], w)
            self._by_weight[w] = out
        return self._by_weight[w]

    def piece(self, n, w):
        return [m for m in self.monomials(w) if self.degree(m) == n]

    def mul(self, u, v):
        """(sign, monomial) for u.v, or (0, None) if it vanishes."""
        s = 1
        for a in u:
            for b in v:
                if b < a and self.par[a] and self.par[b]:
                    s = -s
        m = tuple(sorted(u + v))
        for a, b in zip(m, m[1:]):
            if a == b and self.par[a]:
                return 0, None
        return s, m

    def mulvec(self, x, y):
        out = {}
        for u, a in x.items():
            for v, b in y.items():
                s, m = self.mul(u, v)
                if s:
                    out[m] = out.get(m, 0) + s * a * b
        return {k: c for k, c in out.items() if c}

    # -- differential -------------------------------------------------------

    def _generator_differential(self, lab):
        g = self.g
        out = {}
        for k, c in g.d.get(lab, {}).items():
            m = (self.index[k],)
            out[m] = out.get(m, 0) - c
        for (j, k), c in g.cobracket.get(lab, {}).items():
            s, m = self.mul((self.index[j],), (self.index[k],))
            if s:
                out[m] = out.get(m, 0) - s * HALF * _sign(g.degree(j)) * c
        return {m: c for m, c in out.items() if c}

    def d(self, m):
        if m not in self._dcache:
            out = {}
            sgn = 1
            for p, i in enumerate(m):
                left, right = m[:p], m[p + 1:]
                for mono, c in self._dgen[i].items():
                    s1, lm = self.mul(left, mono)
                    if not s1:
                        continue
                    s2, full = self.mul(lm, right)
                    if not s2:
                        continue
                    out[full] = out.get(full, 0) + sgn * s1 * s2 * c
                sgn *= _sign(self.par[i])
            self._dcache[m] = {k: c for k, c in out.items() if c}
        return self._dcache[m]

    def dvec(self, vec):
        out = {}
        for m, c in vec.items():
            vaddto(out, self.d(m), c)
        return out

    def complex(self):
        return WeightedComplex(self.piece, self.d, self.weight, name="CE(%s)" % self.g.name)

    def generator(self, lab):
        return (self.index[lab],)


def ce_algebra(g, cap=None, window=None):
    """CE(g); when cap and window are given, d^2 = 0 is verified on every
    (degree, weight) piece in the window with weight <= cap."""
    A = CEAlgebra(g)
    if cap is not None and window is not None:
        C = A.complex()
        for n in range(window[0], window[1] + 1):
            bad = C.dd_violations(n, cap)
            if bad:
                raise StructureError("CE differential does not square to zero at %r" % (bad[0],))
    return A


# ---------------------------------------------------------------------------
# the canonical MC element

class MCReport:
    def __init__(self, residual):
        self.residual = residual
        self.ok = not residual

    def __repr__(self):
        return "MCReport(ok=%r)" % self.ok


def canonical_mc(g, env_cap=2, A=None):
    """
    Check d(xi) + xi.xi = 0 for xi = sum_i s^-1 e_i (x) e^i in
    CE(g) (x) U(g*), keeping U-monomials of length <= env_cap.  Elements of
    the product are dicts {(ce_monomial, pbw_word): coeff}.
    """
    from .envelope import PBW
    A = A or CEAlgebra(g)
    P = PBW(g)
    xi = {((i,), (i,)): Fraction(1) for i in range(len(A.labels))}

    def prod(x, y):
        out = {}
        for (a, u), c in x.items():
            for (b, v), e in y.items():
                s, ab = A.mul(a, b)
                if not s:
                    continue
                s *= _sign(P.degree(u) * A.degree(b))
                for w, f in P.mul(u, v).items():
                    out[(ab, w)] = out.get((ab, w), 0) + s * c * e * f
        return out

    def dtot(x):
        out = {}
        for (a, u), c in x.items():
            for b, e in A.d(a).items():
                out[(b, u)] = out.get((b, u), 0) + c * e
            s = _sign(A.degree(a))
            for w, e in P.derivation(u).items():
                out[(a, w)] = out.get((a, w), 0) + s * c * e
        return out

    res = dtot(xi)
    for k, c in prod(xi, xi).items():
        res[k] = res.get(k, 0) + c
    res = {k: c for k, c in res.items() if c and len(k[1]) <= env_cap}
    if res:
        raise StructureError("canonical element fails the MC equation at %r" % (next(iter(res)),))
    return MCReport(res)


# ---------------------------------------------------------------------------
# CE(g, M)

class CEModule:
    """(CE(g) (x) M)^[xi] with labels (monomial, m)."""

    def __init__(self, g, M, A=None):
        self.g = g
        self.M = M
        self.A = A or CEAlgebra(g)
        gw = dict(zip(self.A.labels, self.A.gw))
        mw = M.derive_weights(gw) if self.A.graded else None
        self.graded = self.A.graded and mw is not None
        if mw is None:
            mw = {m: 0 for m in M.labels}
        self.mw = mw
        self._dcache = {}

    def degree(self, lab):
        mono, m = lab
        return self.A.degree(mono) + self.M.degree(m)

    def weight(self, lab):
        mono, m = lab
        return self.A.weight(mono) + self.mw[m]

    def piece(self, n, w):
        out = []
        for m in self.M.labels:
            wm = w - self.mw[m]
            if wm < 0:
                continue
            for mono in self.A.piece(n - self.M.degree(m), wm):
                out.append((mono, m))
        return out

    def d(self, lab):
        if lab in self._dcache:
            return self._dcache[lab]
        A, M = self.A, self.M
        mono, m = lab
        out = {}
        for k, c in A.d(mono).items():
            out[(k, m)] = out.get((k, m), 0) + c
        s = _sign(A.degree(mono))
        for k, c in M.d.get(m, {}).items():
            out[(mono, k)] = out.get((mono, k), 0) + s * c
        for i, e in enumerate(A.labels):
            act = M.act(e, {m: 1})
            if not act:
                continue
            s1, em = A.mul((i,), mono)
            if not s1:
                continue
            # (s^-1 e_i (x) e^i)(omega (x) m), Koszul sign (-1)^{|e^i||omega|}
            s1 *= _sign(self.g.degree(e) * A.degree(mono))
            for k, c in act.items():
                out[(em, k)] = out.get((em, k), 0) + s1 * c
        out = {k: c for k, c in out.items() if c}
        self._dcache[lab] = out
        return out

    def complex(self):
        return WeightedComplex(self.piece, self.d, self.weight,
                               name="CE(%s,%s)" % (self.g.name, self.M.name))


def ce_module(g, M, cap=None, window=None):
    X = CEModule(g, M)
    if cap is not None and window is not None:
        C = X.complex()
        for n in range(window[0], window[1] + 1):
            bad = C.dd_violations(n, cap)
            if bad:
                raise StructureError("twisted differential does not square to zero at %r" % (bad[0],))
    return X


class CECohomology:
    """Betti tables at caps w and w+1 with a per-degree stability verdict."""

    def __init__(self, window, cap, low, high):
        self.window = window
        self.cap = cap
        self.low = low
        self.high = high
        self.stable = {n: low[n] == high[n] for n in range(window[0], window[1] + 1)}

    @property
    def betti(self):
        return self.low

    @property
    def is_stable(self):
        return all(self.stable.values())

    def unstable_degrees(self):
        return [n for n, ok in self.stable.items() if not ok]

    def __repr__(self):
        return "CECohomology(%s, stable=%r)" % (self.low, self.is_stable)


def ce_cohomology(g, M=None, cap=4, window=(0, 3)):
    """
    Cohomology of CE(g, M) (M = None means the trivial comodule) through
    weight <= cap and <= cap + 1.
    """
    if M is None:
        C = CEAlgebra(g).complex()
    else:
        C = CEModule(g, M).complex()
    low = weighted_cohomology(C, window, cap)
    high = weighted_cohomology(C, window, cap + 1)
    return CECohomology(tuple(window), cap, low, high)


def classical_lie_cohomology(L, window, M=None):
    """
    Independent oracle for degree-0 Lie algebras: the cochain complex
    Hom(Lambda^n L, V) built directly from bracket constants, with
    (df)(x_0..x_n) = sum_i (-1)^i x_i.f(..^i..)
                   + sum_{i<j} (-1)^{i+j} f([x_i,x_j], ..^i..^j..).
    ``M`` is an optional dict {basis label: matrix dict {(row, col): c}}
    giving a representation on k^r (r inferred); None means trivial k.
    """
    from itertools import combinations
    from .linalg import rank
    labs = list(L.labels)
    n = len(labs)
    idx = {lab: i for i, lab in enumerate(labs)}
    if M is None:
        r, rep = 1, {}
    else:
        r = 1 + max((max(a, b) for mat in M.values() for (a, b) in mat), default=0)
        rep = M
    br = {}
    for (a, b), vec in L.bracket.items():
        br[(idx[a], idx[b])] = {idx[k]: c for k, c in vec.items()}

    def cochains(p):
        return [(S, v) for S in combinations(range(n), p) for v in range(r)]

    def norm(seq):
        # sort a sequence of distinct indices with sign; None if repeated
        if len(set(seq)) < len(seq):
            return 0, None
        s = 1
        seq = list(seq)
        for i in range(len(seq)):
            for j in range(len(seq) - 1 - i):
                if seq[j] > seq[j + 1]:
                    seq[j], seq[j + 1] = seq[j + 1], seq[j]
                    s = -s
        return s, tuple(seq)

    def dmat(p):
        # columns: basis cochains of degree p (delta functions); image as
        # values on (p+1)-subsets
        cols = []
        for S, v in cochains(p):
            img = {}
            for T in combinations(range(n), p + 1):
                for i in range(p + 1):
                    rest = T[:i] + T[i + 1:]
                    if rest == S:
                        x = labs[T[i]]
                        for (a, b), c in rep.get(x, {}).items():
                            if b == v:
                                key = (T, a)
                                img[key] = img.get(key, 0) + _sign(i) * c
                for i in range(p + 1):
                    for j in range(i + 1, p + 1):
                        rest = T[:i] + T[i + 1:j] + T[j + 1:]
                        for k, c in br.get((T[i], T[j]), {}).items():
                            s, seq = norm((k,) + rest)
                            if s and seq == S:
                                key = (T, v)
                                img[key] = img.get(key, 0) + _sign(i + j) * s * c
            cols.append({k: c for k, c in img.items() if c})
        return cols

    dims = {}
    a, b = window
    ranks = {}
    for p in range(a - 1, b + 1):
        ranks[p] = rank(dmat(p)) if 0 <= p <= n else 0
    for p in range(a, b + 1):
        size = len(cochains(p)) if 0 <= p <= n else 0
        dims[p] = size - ranks[p] - ranks[p - 1]
    return BettiTable((a, b), dims)
