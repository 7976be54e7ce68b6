"""
Bar and cobar constructions, the Harrison Lie coalgebra, and the
quasi-isomorphism certificates Omega(U_con g) -> CE(g) and
Omega(M) -> CE(g, M).

Sign conventions (letters carry their shifted degrees):

  bar, letters s a of degree |a| - 1, eps_i = sum_{j<=i} (|a_j| - 1):
    d[a_1|..|a_n] = sum_i -(-1)^{eps_{i-1}} [..|d a_i|..]
                  + sum_i (-1)^{eps_i} [..|a_i a_{i+1}|..]

  cobar, letters s^-1 c of degree |c| + 1:
    d(s^-1 c) = -s^-1(dc) + sum (-1)^{|c'|} s^-1 c' (x) s^-1 c''
    extended to words as a derivation.
"""

from fractions import Fraction

from .gradecore import (Complex, GradedSpace, LinMap, StructureError,
                        WeightedComplex, chain_map_violations, cohomology,
                        weighted_cohomology, weighted_cone)
from .linalg import vaddto
from .liecoalg import (DgLieAlgebra, ValidationReport, lie_to_coalgebra,
                       trivial_comodule)


def _sign(n):
    return -1 if n % 2 else 1


class NotConilpotentError(StructureError):
    """Refusal: the operation needs conilpotent input."""


# ---------------------------------------------------------------------------
# augmented dg algebras

class AugmentedDgAlgebra:
    """
    A = k.1 (+) A-bar.  ``space`` is a GradedSpace for the augmentation ideal,
    ``product`` maps label pairs to vectors (the ideal is closed under
    products), ``d`` maps labels to vectors.  Optional ``weights`` give an
    internal grading (positive, additive for the product, preserved by d).
    """

    def __init__(self, space, product=None, d=None, weights=None, commutative=False, name=""):
        self.space = space
        self.name = name
        self.commutative = commutative
        self.product = {}
        self.d = {}
        for (a, b), vec in (product or {}).items():
            for lab in (a, b):
                if lab not in space:
                    raise StructureError("product uses unknown label %r" % (lab,))
            vec = {k: Fraction(c) for k, c in vec.items() if c}
            for k in vec:
                if k not in space:
                    raise StructureError("product uses unknown label %r" % (k,))
                if space.degree(k) != space.degree(a) + space.degree(b):
                    raise StructureError("product %r.%r has a term of the wrong degree" % (a, b))
            if vec:
                self.product[(a, b)] = vec
        for a, vec in (d or {}).items():
            vec = {k: Fraction(c) for k, c in vec.items() if c}
            for k in vec:
                if k not in space or space.degree(k) != space.degree(a) + 1:
                    raise StructureError("differential of %r is malformed" % (a,))
            if vec:
                self.d[a] = vec
        self.weights = None
        if weights or not space.labels():
            weights = weights or {}
            w = {lab: int(weights[lab]) for lab in space.labels()}
            if any(x < 1 for x in w.values()):
                raise StructureError("algebra weights must be positive")
            ok = all(w[k] == w[a] + w[b] for (a, b), v in self.product.items() for k in v)
            ok = ok and all(w[k] == w[a] for a, v in self.d.items() for k in v)
            if not ok:
                raise StructureError("algebra weights are not respected by product and differential")
            self.weights = w
        if commutative:
            bad = self.commutativity_violations()
            if bad:
                raise StructureError("algebra flagged commutative but %r.%r is not" % bad[0])

    @property
    def labels(self):
        return self.space.labels()

    def degree(self, a):
        return self.space.degree(a)

    def mul(self, a, b):
        return self.product.get((a, b), {})

    def mulvec(self, x, y):
        out = {}
        for a, c in x.items():
            for b, e in y.items():
                vaddto(out, self.mul(a, b), c * e)
        return out

    def dvec(self, x):
        out = {}
        for a, c in x.items():
            vaddto(out, self.d.get(a, {}), c)
        return out

    def commutativity_violations(self):
        bad = []
        for a in self.labels:
            for b in self.labels:
                s = _sign(self.degree(a) * self.degree(b))
                if self.mul(a, b) != {k: s * c for k, c in self.mul(b, a).items()}:
                    bad.append((a, b))
        return bad

    def validate(self):
        rep = ValidationReport(checked=["d^2", "associativity", "Leibniz"])
        labs = self.labels
        for a in labs:
            if self.dvec(self.d.get(a, {})):
                rep.fail("d^2", a)
        for a in labs:
            for b in labs:
                for c in labs:
                    if self.mulvec(self.mul(a, b), {c: 1}) != self.mulvec({a: 1}, self.mul(b, c)):
                        rep.fail("associativity", (a, b, c))
                lhs = self.dvec(self.mul(a, b))
                rhs = self.mulvec(self.d.get(a, {}), {b: 1})
                vaddto(rhs, self.mulvec({a: 1}, self.d.get(b, {})), _sign(self.degree(a)))
                if lhs != rhs:
                    rep.fail("Leibniz", (a, b))
        if self.commutative:
            rep.checked.append("commutativity")
            for pair in self.commutativity_violations():
                rep.fail("commutativity", pair)
        return rep


def ce_as_algebra(g):
    """CE(g) as an AugmentedDgAlgebra when it is finite-dimensional (all
    generators odd).  Internal weights are kept when g is graded."""
    from .cealg import CEAlgebra
    A = CEAlgebra(g)
    if any(p == 0 for p in A.par):
        raise StructureError("CE(g) is infinite-dimensional (it has even generators)")
    monos = []
    for w in range(1, sum(A.gw) + 1):
        monos += A.monomials(w)
    name = lambda m: "".join("[%s]" % A.labels[i] for i in m)
    space = GradedSpace.from_pairs([(name(m), A.degree(m)) for m in monos])
    prod, d = {}, {}
    for u in monos:
        for v in monos:
            s, m = A.mul(u, v)
            if s:
                prod[(name(u), name(v))] = {name(m): s}
        d[name(u)] = {name(k): c for k, c in A.d(u).items()}
    weights = {name(m): A.weight(m) for m in monos} if A.graded else None
    return AugmentedDgAlgebra(space, prod, d, weights=weights, commutative=True,
                              name="CE(%s)" % g.name)


# ---------------------------------------------------------------------------
# bar construction

class BarConstruction:
    """B(A) = T(s A-bar) with the bar differential.  Words are tuples of
    labels of A-bar."""

    def __init__(self, A):
        self.A = A
        self.graded = A.weights is not None
        self._w = A.weights or {a: 1 for a in A.labels}
        self._dcache = {}

    def letter_degree(self, a):
        return self.A.degree(a) - 1

    def degree(self, word):
        return sum(self.A.degree(a) - 1 for a in word)

    def weight(self, word):
        return sum(self._w[a] for a in word)

    def words(self, w):
        """Words of weight exactly w."""
        out = []
        labs = self.A.labels

        def rec(cur, left):
            if left == 0:
                out.append(tuple(cur))
                return
            for a in labs:
                if self._w[a] <= left:
                    cur.append(a)
                    rec(cur, left - self._w[a])
                    cur.pop()

        rec([], w)
        return out

    def piece(self, n, w):
        return [x for x in self.words(w) if self.degree(x) == n]

    def d(self, word):
        if word in self._dcache:
            return self._dcache[word]
        A = self.A
        out = {}
        eps = 0
        for i, a in enumerate(word):
            s = -_sign(eps)
            for k, c in A.d.get(a, {}).items():
                w = word[:i] + (k,) + word[i + 1:]
                out[w] = out.get(w, 0) + s * c
            eps += A.degree(a) - 1
            if i + 1 < len(word):
                for k, c in A.mul(a, word[i + 1]).items():
                    w = word[:i] + (k,) + word[i + 2:]
                    out[w] = out.get(w, 0) + _sign(eps) * c
        out = {k: c for k, c in out.items() if c}
        self._dcache[word] = out
        return out

    def coproduct(self, word):
        return {(word[:i], word[i:]): 1 for i in range(len(word) + 1)}

    def coderivation_violations(self, words):
        bad = []
        for x in words:
            lhs = {}
            for y, c in self.d(x).items():
                vaddto(lhs, self.coproduct(y), c)
            rhs = {}
            for (u, v), c in self.coproduct(x).items():
                for y, e in self.d(u).items():
                    rhs[(y, v)] = rhs.get((y, v), 0) + c * e
                s = _sign(self.degree(u))
                for y, e in self.d(v).items():
                    rhs[(u, y)] = rhs.get((u, y), 0) + s * c * e
            if lhs != {k: c for k, c in rhs.items() if c}:
                bad.append(x)
        return bad

    def complex(self):
        """The weight-graded complex when A is internally graded; otherwise
        use ``truncated``."""
        if not self.graded:
            raise StructureError("bar complex of an ungraded algebra: use truncated(cap)")
        return WeightedComplex(self.piece, self.d, self.weight, name="B(%s)" % self.A.name)

    def truncated(self, cap):
        """Finite subcomplex of words of length <= cap (closed under d)."""
        labs = self.A.labels
        words = [()]
        layer = [()]
        for _ in range(cap):
            layer = [w + (a,) for w in layer for a in labs]
            words += layer
        space = GradedSpace.from_pairs([(w, self.degree(w)) for w in words])
        return Complex(space, LinMap(space, space, {w: self.d(w) for w in words}, 1))


def bar(A, cap, window=None):
    """B(A) with the d_B^2 = 0 self-check on every piece of weight <= cap."""
    B = BarConstruction(A)
    if B.graded:
        C = B.complex()
        degs = range(window[0], window[1] + 1) if window else None
        for w in range(cap + 1):
            for x in B.words(w):
                if degs is not None and B.degree(x) not in degs:
                    continue
                if C.apply(B.d(x)):
                    raise StructureError("bar differential does not square to zero at %r" % (x,))
    else:
        B.truncated(cap)      # Complex construction verifies d^2 = 0
    return B


def bar_betti_by_weight(B, cap, window):
    """Betti tables of the weight-w pieces for w = 0..cap."""
    C = B.complex()
    out = {}
    for w in range(cap + 1):
        labels = [x for n in range(window[0] - 1, window[1] + 2) for x in C.piece(n, w)]
        space = GradedSpace.from_pairs([(x, B.degree(x)) for x in labels])
        images = {x: {k: c for k, c in C.diff(x).items() if k in space} for x in labels}
        out[w] = cohomology(Complex(space, LinMap(space, space, images, 1), check=False), window)
    return out


# ---------------------------------------------------------------------------
# cobar construction

class ReducedCoalgebra:
    """
    A coaugmented conilpotent dg coalgebra given by its reduced part:
    ``space`` (GradedSpace of C-bar), reduced coproduct {c: {(a, b): coeff}},
    differential, and positive weights with the coproduct weight-additive
    and d weight-nondecreasing.
    """

    def __init__(self, space, coproduct=None, d=None, weights=None, name=""):
        self.space = space
        self.name = name
        self.coproduct = {k: {p: Fraction(c) for p, c in v.items() if c}
                          for k, v in (coproduct or {}).items()}
        self.d = {k: {j: Fraction(c) for j, c in v.items() if c} for k, v in (d or {}).items()}
        self.weights = dict(weights) if weights else {c: 1 for c in space.labels()}

    @property
    def labels(self):
        return self.space.labels()

    def degree(self, c):
        return self.space.degree(c)

    @classmethod
    def from_envelope(cls, env):
        labs = [m for m in env.basis if m]
        space = GradedSpace.from_pairs([(m, env.degree(m)) for m in labs])
        cop = {m: env.reduced_coproduct(m) for m in labs}
        d = {m: v for m, v in env.d.items() if m}
        return cls(space, cop, d, {m: env.weight(m) for m in labs}, name="Ucon(%s)" % env.g.name)


class CobarConstruction:
    """Omega(C) = T(s^-1 C-bar); words are tuples of labels of C-bar."""

    def __init__(self, C):
        self.C = C
        self._dcache = {}
        self._by_weight = {}
        for c in C.labels:
            self._by_weight.setdefault(C.weights[c], []).append(c)

    def letter_degree(self, c):
        return self.C.degree(c) + 1

    def degree(self, word):
        return sum(self.C.degree(c) + 1 for c in word)

    def weight(self, word):
        return sum(self.C.weights[c] for c in word)

    def words(self, w, n=None):
        out = []
        wts = sorted(self._by_weight)

        def rec(cur, left):
            if left == 0:
                out.append(tuple(cur))
                return
            for wt in wts:
                if wt > left:
                    break
                for c in self._by_weight[wt]:
                    cur.append(c)
                    rec(cur, left - wt)
                    cur.pop()

        rec([], w)
        if n is not None:
            out = [x for x in out if self.degree(x) == n]
        return out

    def piece(self, n, w):
        return self.words(w, n)

    def letter_d(self, c):
        C = self.C
        out = {}
        for k, a in C.d.get(c, {}).items():
            out[(k,)] = out.get((k,), 0) - a
        for (x, y), a in C.coproduct.get(c, {}).items():
            out[(x, y)] = out.get((x, y), 0) + _sign(C.degree(x)) * a
        return out

    def d(self, word):
        if word in self._dcache:
            return self._dcache[word]
        out = {}
        s = 1
        for i, c in enumerate(word):
            for repl, a in self.letter_d(c).items():
                w = word[:i] + repl + word[i + 1:]
                out[w] = out.get(w, 0) + s * a
            s *= _sign(self.letter_degree(c))
        out = {k: v for k, v in out.items() if v}
        self._dcache[word] = out
        return out

    def complex(self):
        return WeightedComplex(self.piece, self.d, self.weight, name="Omega(%s)" % self.C.name)


def cobar(C, cap, window):
    """Omega(C) with the d^2 = 0 self-check on pieces of weight <= cap."""
    if not isinstance(C, ReducedCoalgebra):
        C = ReducedCoalgebra.from_envelope(C)
    Om = CobarConstruction(C)
    X = Om.complex()
    for n in range(window[0], window[1] + 1):
        bad = X.dd_violations(n, cap)
        if bad:
            raise StructureError("cobar differential does not square to zero at %r" % (bad[0],))
    return Om


# ---------------------------------------------------------------------------
# Harrison Lie coalgebra

class HarrisonReport:
    def __init__(self, coalgebra, dims, free):
        self.coalgebra = coalgebra
        self.dims = dims
        self.free = free


def harrison(A, cap, window=None):
    """
    Harr(A) through weight (word length) <= cap: the free Lie algebra on
    the dual of s A-bar inside the dual bar construction, with the
    differential D(f) = -(-1)^{|f|} f o d_B restricted to it (this is where
    commutativity of A is used; failure to preserve the Lie subalgebra is a
    hard error), dualized back to a Lie coalgebra.
    """
    from .freelie import FreeLie, fdegree
    if not A.commutative:
        raise StructureError("Harrison construction needs a commutative algebra")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    letters = [(a, A.degree(a) - 1) for a in A.labels]
    if not letters:
        g = lie_to_coalgebra(DgLieAlgebra(GradedSpace({}), {}, {}), name="Harr(%s)" % A.name)
        return HarrisonReport(g, [0] * cap, None)
    B = BarConstruction(A)
    F = FreeLie(letters, cap + 1)
    pre1, pre2 = {}, {}
    for a, vec in A.d.items():
        for k in vec:
            pre1.setdefault(k, set()).add(a)
    for (a, b), vec in A.product.items():
        for k in vec:
            pre2.setdefault(k, set()).add((a, b))

    def compose_dB(f):
        cands = set()
        for w in f:
            for i, k in enumerate(w):
                for a in pre1.get(k, ()):
                    cands.add(w[:i] + (a,) + w[i + 1:])
                for a, b in pre2.get(k, ()):
                    cands.add(w[:i] + (a, b) + w[i + 1:])
        out = {}
        for w in cands:
            c = sum(f.get(y, 0) * e for y, e in B.d(w).items())
            if c:
                out[w] = c
        return out

    keep = [k for k in F.basis if F.weight[k] <= cap]
    Ld = {}
    for k in keep:
        f = F.element[k]
        Df = {w: -_sign(fdegree(f, F.degree)) * c for w, c in compose_dB(f).items()}
        coords = F.express(Df)
        if coords is None:
            raise StructureError("bar differential does not preserve the primitive elements")
        coords = {j: c for j, c in coords.items() if F.weight[j] <= cap}
        if coords:
            Ld[k] = coords
    keepset = set(keep)
    bracket = {}
    for (a, b), vec in F.bracket_table(cap).items():
        if a in keepset and b in keepset:
            v = {k: c for k, c in vec.items() if k in keepset}
            if v:
                bracket[(a, b)] = v
    space = GradedSpace.from_pairs([(k, F.lie_degree[k]) for k in keep])
    L = DgLieAlgebra(space, Ld, bracket)
    g = lie_to_coalgebra(L, name="Harr(%s)" % A.name)
    g.length = {k: F.weight[k] for k in keep}
    if A.weights is not None:
        iw = {k: sum(A.weights[a] for a in k[1]) * (2 if k[0] == "S" else 1) for k in keep}
        g.set_weights(iw)
    dims = [sum(1 for k in keep if F.weight[k] == w) for w in range(1, cap + 1)]
    return HarrisonReport(g, dims, F)


def modified_bar(A, cap):
    """U_con(Harr(A)) truncated at word length <= cap; returns the envelope
    and its dims per length-weight next to those of B(A)."""
    from .envelope import TruncatedEnvelope
    H = harrison(A, cap).coalgebra
    env = TruncatedEnvelope(H, cap, mode="weight", weights=getattr(H, "length", None) or {})
    dims = {}
    for m in env.basis:
        dims[env.weight(m)] = dims.get(env.weight(m), 0) + 1
    n = len(A.labels)
    bar_dims = {w: n ** w for w in range(cap + 1)}
    return env, [dims.get(w, 0) for w in range(cap + 1)], [bar_dims[w] for w in range(cap + 1)]


# ---------------------------------------------------------------------------
# certificates

class QuasiIsoCertificate:
    """Cone Betti tables at caps (w, w+1) with a verdict per degree."""

    def __init__(self, name, window, caps, low, high, extra=None):
        self.name = name
        self.window = window
        self.caps = caps
        self.low = low
        self.high = high
        self.verdicts = {}
        for n in range(window[0], window[1] + 1):
            if low[n] == 0 and high[n] == 0:
                self.verdicts[n] = "quasi-iso"
            elif low[n] == high[n]:
                self.verdicts[n] = "fails"
            else:
                self.verdicts[n] = "unstable"
        self.extra = extra or {}

    @property
    def quasi_iso(self):
        return all(v == "quasi-iso" for v in self.verdicts.values()) and all(
            c.quasi_iso for c in self.extra.get("gr", []))

    def __repr__(self):
        return "QuasiIsoCertificate(%s, %s, caps=%s, %s)" % (
            self.name, self.window, self.caps, self.verdicts)


def _require_conilpotent(g):
    if not g.is_conilpotent():
        raise NotConilpotentError(
            "%s is not conilpotent: its dual Lie algebra is not nilpotent" % (g.name or "g"))
    w, graded = g.grading()
    if not graded:
        raise NotConilpotentError("%s has no internal grading adapted to its conilpotency filtration"
                                  % (g.name or "g"))


def _certify(name, src, tgt, f, window, cap, extra=None):
    degs = range(window[0] - 1, window[1] + 2)
    bad = chain_map_violations(f, src, tgt, degs, cap + 1)
    if bad:
        raise StructureError("%s: not a chain map at %r" % (name, bad[0]))
    K = weighted_cone(f, src, tgt)
    low = weighted_cohomology(K, window, cap)
    high = weighted_cohomology(K, window, cap + 1)
    extra = dict(extra or {})
    extra["source"] = weighted_cohomology(src, window, cap)
    extra["target"] = weighted_cohomology(tgt, window, cap)
    return QuasiIsoCertificate(name, tuple(window), (cap, cap + 1), low, high, extra)


class CobarToCE:
    """The algebra map Omega(U_con g) -> CE(g): a length-one letter
    s^-1 (e^i)* goes to -s^-1 e_i, longer PBW letters go to zero."""

    def __init__(self, g, cap):
        from .cealg import CEAlgebra
        from .envelope import u_con
        self.g = g
        self.env = u_con(g, cap, mode="weight")
        self.Om = CobarConstruction(ReducedCoalgebra.from_envelope(self.env))
        self.A = CEAlgebra(g)

    def image(self, word):
        A = self.A
        cur = {(): Fraction(1)}
        for c in word:
            if len(c) != 1:
                return {}
            cur = A.mulvec(cur, {(c[0],): -1})
            if not cur:
                return {}
        return cur


def cobar_to_ce(g, cap=4, window=(0, 3), env_cap=None):
    """Certificate for Omega(U_con g) -> CE(g) at caps (cap, cap + 1); the
    envelope is truncated at env_cap (at least cap + 1)."""
    _require_conilpotent(g)
    F = CobarToCE(g, max(env_cap or 0, cap + 1))
    return _certify("cobar-ce", F.Om.complex(), F.A.complex(), F.image, window, cap)


class CobarModule:
    """Omega(M) = (Omega(U_con g) (x) M)^[xi]: labels (word, m)."""

    def __init__(self, g, M, cap):
        from .envelope import PBW
        self.F = CobarToCE(g, cap)
        self.M = M
        self.P = PBW(g)
        gw = dict(zip(self.F.A.labels, self.F.A.gw))
        mw = M.derive_weights(gw)
        if mw is None:
            raise NotConilpotentError("comodule %s has no weight grading compatible with g"
                                      % (M.name or "M"))
        self.mw = mw
        self._dcache = {}
        self._act = {}

    def act(self, u, m):
        """Action of the PBW monomial u on m (rightmost letter first)."""
        key = (u, m)
        if key not in self._act:
            vec = {m: Fraction(1)}
            labs = self.P.labels
            for i in reversed(u):
                vec = self.M.act(labs[i], vec)
                if not vec:
                    break
            self._act[key] = vec
        return self._act[key]

    def degree(self, lab):
        return self.F.Om.degree(lab[0]) + self.M.degree(lab[1])

    def weight(self, lab):
        return self.F.Om.weight(lab[0]) + self.mw[lab[1]]

    def piece(self, n, w):
        out = []
        for m in self.M.labels:
            wm = w - self.mw[m]
            if wm >= 0:
                out += [(x, m) for x in self.F.Om.words(wm, n - self.M.degree(m))]
        return out

    def d(self, lab):
        if lab in self._dcache:
            return self._dcache[lab]
        Om, M = self.F.Om, self.M
        word, m = lab
        out = {}
        for k, c in Om.d(word).items():
            out[(k, m)] = out.get((k, m), 0) + c
        s = _sign(Om.degree(word))
        for k, c in M.d.get(m, {}).items():
            out[(word, k)] = out.get((word, k), 0) + s * c
        for u in Om.C.labels:
            act = self.act(u, m)
            if not act:
                continue
            # -(s^-1 u* (x) u)(word (x) m), Koszul sign (-1)^{|u||word|}
            s1 = -_sign(self.P.degree(u) * Om.degree(word))
            for k, c in act.items():
                key = ((u,) + word, k)
                out[key] = out.get(key, 0) + s1 * c
        out = {k: c for k, c in out.items() if c}
        self._dcache[lab] = out
        return out

    def complex(self):
        return WeightedComplex(self.piece, self.d, self.weight, name="Omega(M)")

    def image(self, lab):
        word, m = lab
        return {(k, m): c for k, c in self.F.image(word).items()}


def cobar_module_to_ce_module(g, M, cap=4, window=(0, 3), gr=True):
    from .cealg import CEModule
    _require_conilpotent(g)
    if not M.is_conilpotent():
        raise NotConilpotentError("comodule %s is not conilpotent" % (M.name or "M"))
    X = CobarModule(g, M, cap + 1)
    Y = CEModule(g, M, X.F.A)
    Y.mw = X.mw
    extra = {}
    if gr:
        pieces = []
        for k, layer in enumerate(M.filtration_spaces()):
            for n, dim in sorted(layer.items()):
                for _ in range(dim):
                    pieces.append(cobar_module_to_ce_module(
                        g, trivial_comodule(g, n), cap, window, gr=False))
        extra["gr"] = pieces
        extra["gr_dims"] = [sum(layer.values()) for layer in M.filtration_spaces()]
    return _certify("cobar-module-ce", X.complex(), Y.complex(), X.image, window, cap, extra)


def koszul_unit(g, M=None, cap=3, window=(0, 3)):
    """
    Unit of the adjunction at truncation: M -> CE(g, U_con (x) M), the
    U_con-coaction m -> sum_u u* (x) u.m, where U_con carries its coregular
    coaction.  CE(g, U_con (x) M) models B_con(CE(g, M)); the cone should be
    acyclic in the stable weights.
    """
    from .cealg import CEModule
    from .envelope import PBW, coregular_comodule, u_con
    from .liecoalg import tensor_comodule
    _require_conilpotent(g)
    if M is None:
        M = trivial_comodule(g)
    if not M.is_conilpotent():
        raise NotConilpotentError("comodule %s is not conilpotent" % (M.name or "M"))
    env = u_con(g, cap + 1, mode="weight")
    P = env.pbw
    gw = dict(zip(P.labels, env.gweights))
    mw = M.derive_weights(gw)
    if mw is None:
        raise NotConilpotentError("comodule %s has no weight grading compatible with g"
                                  % (M.name or "M"))
    T = tensor_comodule(coregular_comodule(env), M)
    T.weights = {(u, m): env.weight(u) + mw[m] for u in env.basis for m in M.labels}
    Y = CEModule(g, T)
    src = WeightedComplex(
        lambda n, w: [m for m in M.labels if M.degree(m) == n and mw[m] == w],
        lambda m: M.d.get(m, {}), lambda m: mw[m], name=M.name or "M")

    def act(u, m):
        vec = {m: Fraction(1)}
        for i in reversed(u):
            vec = M.act(P.labels[i], vec)
            if not vec:
                break
        return vec

    def unit(m):
        out = {}
        for u in env.basis:
            for k, c in act(u, m).items():
                key = ((), (u, k))
                out[key] = out.get(key, 0) + c
        return out

    return _certify("koszul-unit", src, Y.complex(), unit, window, cap)
