"""
dg Lie coalgebras, their dual Lie algebras, and dg comodules.

A dg Lie coalgebra has a basis e_i of degree |e_i|, a differential
d(e_i) = sum_j d_{ji} e_j of degree +1, and a cobracket

    delta(e_i) = sum_{j,k} c_i^{jk} e_j (x) e_k        (degree 0).

The dual Lie algebra L = g* uses the same labels (the dual basis e^i has
degree -|e_i|) with

    [e^i, e^j] = (-1)^{|e_i||e_j|} sum_k c_k^{ij} e^k,
    D(e^j) = -(-1)^{|e_j|} sum_i d_{ji} e^i.

A comodule M has coaction rho(m) = sum_i e_i (x) a_i(m).
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .gradecore import GradedSpace, StructureError
from .linalg import Echelon, Subspace, kernel, vaddto, vmap


def _sign(n):
    return -1 if n % 2 else 1


def _clean(vec):
    return {k: Fraction(x) for k, x in vec.items() if x}


@dataclass
class ValidationReport:
    """Outcome of an axiom check: ``failures`` lists (axiom, where) pairs."""
    checked: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, axiom, where):
        self.failures.append((axiom, where))

    def failed_axioms(self):
        seen = []
        for a, _ in self.failures:
            if a not in seen:
                seen.append(a)
        return seen

    def __str__(self):
        if self.ok:
            return "ok (%s)" % ", ".join(self.checked)
        return "; ".join("%s fails at %r" % f for f in self.failures[:5])


# ---------------------------------------------------------------------------

class DgLieCoalgebra:
    """
    Finite-dimensional dg Lie coalgebra.

    ``space`` is a GradedSpace; ``d`` maps labels to image vectors;
    ``cobracket`` maps labels to vectors over label pairs.  Optional
    ``weights`` give a positive internal grading preserved by d and
    additive for the cobracket.
    """

    def __init__(self, space, d=None, cobracket=None, weights=None, name=""):
        self.space = space
        self.name = name
        self.d = {}
        self.cobracket = {}
        for lab, vec in (d or {}).items():
            self._check_label(lab)
            vec = _clean(vec)
            for k in vec:
                self._check_label(k)
                if space.degree(k) != space.degree(lab) + 1:
                    raise StructureError("d(%r) has a term %r of the wrong degree" % (lab, k))
            if vec:
                self.d[lab] = vec
        for lab, vec in (cobracket or {}).items():
            self._check_label(lab)
            vec = _clean(vec)
            for pair in vec:
                if len(pair) != 2:
                    raise StructureError("cobracket term %r is not a pair" % (pair,))
                j, k = pair
                self._check_label(j)
                self._check_label(k)
                if space.degree(j) + space.degree(k) != space.degree(lab):
                    raise StructureError(
                        "cobracket of %r has a term %r of the wrong degree" % (lab, pair))
            if vec:
                self.cobracket[lab] = vec
        self.weights = None
        if weights is not None:
            self.set_weights(weights)

    def _check_label(self, lab):
        if lab not in self.space:
            raise StructureError("unknown basis label %r" % (lab,))

    @property
    def labels(self):
        return self.space.labels()

    def degree(self, lab):
        return self.space.degree(lab)

    def dim(self):
        return self.space.dim()

    def set_weights(self, weights):
        w = {lab: int(weights[lab]) for lab in self.labels}
        if any(x < 1 for x in w.values()):
            raise StructureError("internal weights must be positive")
        for lab, vec in self.d.items():
            if any(w[k] != w[lab] for k in vec):
                raise StructureError("differential does not preserve the weights at %r" % (lab,))
        for lab, vec in self.cobracket.items():
            if any(w[j] + w[k] != w[lab] for j, k in vec):
                raise StructureError("cobracket is not weight additive at %r" % (lab,))
        self.weights = w

    # -- linear helpers -----------------------------------------------------

    def dvec(self, vec):
        return vmap(vec, lambda lab: self.d.get(lab, {}))

    def delta_vec(self, vec):
        return vmap(vec, lambda lab: self.cobracket.get(lab, {}))

    def _d_tensor(self, tvec, pos):
        """Apply d at position pos of tensor words, with Koszul signs."""
        out = {}
        for word, c in tvec.items():
            s = _sign(sum(self.degree(x) for x in word[:pos]))
            for k, a in self.d.get(word[pos], {}).items():
                w = word[:pos] + (k,) + word[pos + 1:]
                out[w] = out.get(w, 0) + s * c * a
        return _clean(out)

    def _delta_at(self, tvec, pos):
        out = {}
        for word, c in tvec.items():
            for (j, k), a in self.cobracket.get(word[pos], {}).items():
                w = word[:pos] + (j, k) + word[pos + 1:]
                out[w] = out.get(w, 0) + c * a
        return _clean(out)

    def _cyclic(self, tvec):
        """tau(a (x) b (x) c) = (-1)^{|c|(|a|+|b|)} c (x) a (x) b."""
        out = {}
        for (a, b, c), x in tvec.items():
            s = _sign(self.degree(c) * (self.degree(a) + self.degree(b)))
            out[(c, a, b)] = out.get((c, a, b), 0) + s * x
        return out

    # -- axioms -------------------------------------------------------------

    def validate(self):
        rep = ValidationReport(checked=["d^2", "coanticommutativity", "co-Jacobi", "co-Leibniz"])
        for lab in self.labels:
            if self.dvec(self.d.get(lab, {})):
                rep.fail("d^2", lab)
        for lab, vec in self.cobracket.items():
            for (j, k), c in vec.items():
                other = vec.get((k, j), 0)
                if c != -_sign(self.degree(j) * self.degree(k)) * other:
                    rep.fail("coanticommutativity", lab)
                    break
        for lab in self.labels:
            t = self._delta_at(self.cobracket.get(lab, {}), 0)
            t = {k: v for k, v in t.items()}
            total = dict(t)
            t1 = self._cyclic(t)
            vaddto(total, t1)
            vaddto(total, self._cyclic(t1))
            if _clean(total):
                rep.fail("co-Jacobi", lab)
        for lab in self.labels:
            lhs = self.delta_vec(self.d.get(lab, {}))
            db = self.cobracket.get(lab, {})
            rhs = self._d_tensor(db, 0)
            vaddto(rhs, self._d_tensor(db, 1))
            if _clean(lhs) != _clean(rhs):
                rep.fail("co-Leibniz", lab)
        return rep

    def is_abelian(self):
        return not self.cobracket

    # -- duality and conilpotency --------------------------------------------

    def dual_lie(self):
        return dualize_lie(self)

    def lower_central_series(self, max_steps=None):
        """Spans of L^1 = L, L^{k+1} = [L, L^k] in the dual Lie algebra, as
        lists of vectors.  Stops at zero or when the series stabilises."""
        L = self.dual_lie()
        series = [[{lab: Fraction(1)} for lab in self.labels]]
        limit = max_steps if max_steps is not None else self.dim() + 1
        for _ in range(limit):
            e = Echelon()
            vecs = []
            for x in self.labels:
                for v in series[-1]:
                    b = L.bracket_vec({x: Fraction(1)}, v)
                    if b and e.add(b):
                        vecs.append(b)
            if len(vecs) == len(series[-1]) or not vecs:
                series.append(vecs)
                break
            series.append(vecs)
        return series

    def conilpotency_filtration(self):
        """
        Subspaces g_0 ⊂ g_1 ⊂ ... with g_k the annihilator of L^{k+2}.
        Returns (layers, conilpotent) where layers are lists of vectors in g.
        """
        series = self.lower_central_series()
        labels = self.labels
        layers = []
        for k in range(1, len(series)):
            S = series[k]
            cols = [{t: s.get(lab, 0) for t, s in enumerate(S) if s.get(lab, 0)} for lab in labels]
            ker = kernel(cols)
            layers.append([{labels[i]: c for i, c in v.items()} for v in ker])
        conil = bool(series) and not series[-1]
        return layers, conil

    def is_conilpotent(self):
        return self.conilpotency_filtration()[1]

    def derive_weights(self):
        """
        Internal weights read off the conilpotency filtration when the basis
        is adapted to it (weight = layer index + 1), checked for
        homogeneity.  Returns None when no such grading is available.
        """
        layers, conil = self.conilpotency_filtration()
        if not conil:
            return None
        w = {}
        for k, layer in enumerate(layers):
            e = Echelon()
            for v in layer:
                e.add(v)
            inside = [lab for lab in self.labels if e.contains({lab: Fraction(1)})]
            if len(inside) != len(layer):
                return None
            for lab in inside:
                w.setdefault(lab, k + 1)
        if len(w) != self.dim():
            return None
        for lab, vec in self.d.items():
            if any(w[k] != w[lab] for k in vec):
                return None
        for lab, vec in self.cobracket.items():
            if any(w[j] + w[k] != w[lab] for j, k in vec):
                return None
        return w

    def grading(self):
        """(weights, graded): explicit or derived internal weights, or the
        all-ones fallback (symmetric length) which is only a filtration."""
        if self.weights is not None:
            return dict(self.weights), True
        w = self.derive_weights()
        if w is not None:
            return w, True
        return {lab: 1 for lab in self.labels}, self.is_abelian()

    def __repr__(self):
        return "DgLieCoalgebra(%s, dim=%d)" % (self.name or "?", self.dim())


class DgLieAlgebra:
    """Finite-dimensional dg Lie algebra: bracket {(a, b): vec}, d {a: vec}."""

    def __init__(self, space, d=None, bracket=None, name=""):
        self.space = space
        self.name = name
        self.d = {k: _clean(v) for k, v in (d or {}).items() if _clean(v)}
        self.bracket = {k: _clean(v) for k, v in (bracket or {}).items() if _clean(v)}

    @property
    def labels(self):
        return self.space.labels()

    def degree(self, lab):
        return self.space.degree(lab)

    def br(self, a, b):
        return self.bracket.get((a, b), {})

    def bracket_vec(self, u, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                vaddto(out, self.br(a, b), x * y)
        return out

    def dvec(self, vec):
        return vmap(vec, lambda lab: self.d.get(lab, {}))

    def validate(self):
        rep = ValidationReport(checked=["d^2", "antisymmetry", "Jacobi", "Leibniz"])
        labs = self.labels
        deg = self.degree
        for a in labs:
            if self.dvec(self.d.get(a, {})):
                rep.fail("d^2", a)
        for a in labs:
            for b in labs:
                lhs = self.br(a, b)
                rhs = {k: -_sign(deg(a) * deg(b)) * c for k, c in self.br(b, a).items()}
                if lhs != rhs:
                    rep.fail("antisymmetry", (a, b))
        for a in labs:
            for b in labs:
                for c in labs:
                    lhs = self.bracket_vec({a: 1}, self.br(b, c))
                    rhs = self.bracket_vec(self.br(a, b), {c: 1})
                    vaddto(rhs, self.bracket_vec({b: 1}, self.br(a, c)), _sign(deg(a) * deg(b)))
                    if lhs != rhs:
                        rep.fail("Jacobi", (a, b, c))
        for a in labs:
            for b in labs:
                lhs = self.dvec(self.br(a, b))
                rhs = self.bracket_vec(self.d.get(a, {}), {b: 1})
                vaddto(rhs, self.bracket_vec({a: 1}, self.d.get(b, {})), _sign(deg(a)))
                if lhs != rhs:
                    rep.fail("Leibniz", (a, b))
        return rep


def dualize_lie(g):
    """The dual dg Lie algebra g* on the same labels (degrees negated)."""
    space = GradedSpace.from_pairs([(lab, -g.degree(lab)) for lab in g.labels])
    bracket = {}
    for k, vec in g.cobracket.items():
        for (i, j), c in vec.items():
            s = _sign(g.degree(i) * g.degree(j))
            v = bracket.setdefault((i, j), {})
            v[k] = v.get(k, 0) + s * c
    d = {}
    for i, vec in g.d.items():
        for j, c in vec.items():
            # d_{ji} = c ; D(e^j) gets -(-1)^{|e_j|} c e^i
            v = d.setdefault(j, {})
            v[i] = v.get(i, 0) - _sign(g.degree(j)) * c
    return DgLieAlgebra(space, d, bracket, name=(g.name + "*") if g.name else "")


def lie_to_coalgebra(L, weights=None, name=""):
    """Inverse of dualize_lie: the dual dg Lie coalgebra of a finite dg Lie
    algebra, on the same labels."""
    space = GradedSpace.from_pairs([(lab, -L.degree(lab)) for lab in L.labels])
    cob = {}
    for (i, j), vec in L.bracket.items():
        s = _sign(L.degree(i) * L.degree(j))
        for k, c in vec.items():
            v = cob.setdefault(k, {})
            v[(i, j)] = v.get((i, j), 0) + s * c
    d = {}
    for j, vec in L.d.items():
        for i, c in vec.items():
            # D_{ij} = c  ->  d_{ji} = -(-1)^{|e_j|} c
            v = d.setdefault(i, {})
            v[j] = v.get(j, 0) - _sign(space.degree(j)) * c
    return DgLieCoalgebra(space, d, cob, weights=weights, name=name)


def cofree_conilpotent_lie(letters, cap, d=None, name="Lcon"):
    """
    The weight <= cap part of the cofree conilpotent Lie coalgebra on a
    graded space V given as [(label, degree), ...].  Basis labels are the
    keys of the dual free Lie basis; weights are word lengths.

    ``d`` optionally gives a differential on V (dict label -> vec); it is
    extended to the free Lie algebra as a coderivation.
    """
    from .freelie import FreeLie
    F = FreeLie(letters, cap)
    space = GradedSpace.from_pairs([(k, -F.lie_degree[k]) for k in F.basis])
    L = DgLieAlgebra(GradedSpace.from_pairs([(k, F.lie_degree[k]) for k in F.basis]),
                     {}, F.bracket_table())
    if d:
        L.d = _free_lie_differential(F, d)
    return lie_to_coalgebra(L, weights=dict(F.weight), name=name)


def _free_lie_differential(F, d):
    """Derivation of the dual free Lie algebra induced by a differential on
    V: D(f) = -(-1)^{|f|} f o d on the tensor coalgebra."""
    from .freelie import fdegree
    out = {}
    for k in F.basis:
        f = F.element[k]
        img = _pullback(f, d, F.degree)
        s = -_sign(fdegree(f, F.degree))
        img = {w: s * c for w, c in img.items()}
        coords = F.express(img)
        if coords is None:
            raise StructureError("differential does not preserve the free Lie algebra")
        if coords:
            out[k] = coords
    return out


def _pullback(f, d, degree):
    """The functional f o d_T, where d_T is the coderivation of T(V)
    extending d: d_T(v1..vn) = sum (-1)^{|v1..v_{i-1}|} v1..dv_i..vn."""
    out = {}
    # (f o d_T)(w') = sum over words w in f: coefficient of w in d_T(w').
    # d_T(w') has the term w where one letter u of w' is replaced by a
    # letter of d(u).  Invert: for each position of w, each u with
    # d(u) containing w[pos].
    preimage = {}
    for u, vec in d.items():
        for v, c in vec.items():
            preimage.setdefault(v, []).append((u, c))
    for w, a in f.items():
        for pos, v in enumerate(w):
            for u, c in preimage.get(v, ()):
                w2 = w[:pos] + (u,) + w[pos + 1:]
                s = _sign(sum(degree[x] for x in w[:pos]))
                out[w2] = out.get(w2, 0) + s * c * a
    return _clean(out)


# ---------------------------------------------------------------------------

class DgComodule:
    """
    A dg comodule over a dg Lie coalgebra g: a graded space M, a
    differential, and coaction {m: {(e_i, m'): coeff}} of degree 0.
    """

    def __init__(self, g, space, d=None, coaction=None, weights=None, name=""):
        self.g = g
        self.space = space
        self.name = name
        self.d = {}
        self.coaction = {}
        for lab, vec in (d or {}).items():
            if lab not in space:
                raise StructureError("unknown module label %r" % (lab,))
            vec = _clean(vec)
            for k in vec:
                if k not in space:
                    raise StructureError("unknown module label %r" % (k,))
                if space.degree(k) != space.degree(lab) + 1:
                    raise StructureError("d_M(%r) has a term of the wrong degree" % (lab,))
            if vec:
                self.d[lab] = vec
        for lab, vec in (coaction or {}).items():
            if lab not in space:
                raise StructureError("unknown module label %r" % (lab,))
            vec = _clean(vec)
            for pair in vec:
                e, m = pair
                if e not in g.space:
                    raise StructureError("coaction uses unknown coalgebra label %r" % (e,))
                if m not in space:
                    raise StructureError("coaction uses unknown module label %r" % (m,))
                if g.degree(e) + space.degree(m) != space.degree(lab):
                    raise StructureError("coaction of %r has a term of the wrong degree" % (lab,))
            if vec:
                self.coaction[lab] = vec
        self.ops = {}
        for m, vec in self.coaction.items():
            for (e, m2), c in vec.items():
                self.ops.setdefault(e, {}).setdefault(m, {})[m2] = c
        self.weights = None
        if weights is not None:
            self.weights = {lab: int(weights[lab]) for lab in space.labels()}

    @property
    def labels(self):
        return self.space.labels()

    def degree(self, lab):
        return self.space.degree(lab)

    def dim(self):
        return self.space.dim()

    def a(self, e, vec):
        """The operator a_e with rho(m) = sum_e e (x) a_e(m)."""
        op = self.ops.get(e, {})
        return vmap(vec, lambda m: op.get(m, {}))

    def act(self, e, vec):
        """Left action of the dual basis element e^* on M, making M a dg
        module over the dual Lie algebra: e^* . m = -a_e(m)."""
        out = self.a(e, vec)
        return {k: -c for k, c in out.items()}

    def dM(self, vec):
        return vmap(vec, lambda lab: self.d.get(lab, {}))

    def validate(self):
        g = self.g
        rep = ValidationReport(checked=["d_M^2", "compatibility", "coaction"])
        for m in self.labels:
            if self.dM(self.d.get(m, {})):
                rep.fail("d_M^2", m)
        for m in self.labels:
            lhs = {}
            for m2, c in self.d.get(m, {}).items():
                vaddto(lhs, self.coaction.get(m2, {}), c)
            rhs = {}
            for (e, m2), c in self.coaction.get(m, {}).items():
                for e2, a in g.d.get(e, {}).items():
                    rhs[(e2, m2)] = rhs.get((e2, m2), 0) + c * a
                s = _sign(g.degree(e))
                for m3, a in self.d.get(m2, {}).items():
                    rhs[(e, m3)] = rhs.get((e, m3), 0) + s * c * a
            if _clean(lhs) != _clean(rhs):
                rep.fail("compatibility", m)
        labs = g.labels
        for m in self.labels:
            for i in labs:
                for j in labs:
                    lhs = {}
                    for k in labs:
                        c = g.cobracket.get(k, {}).get((i, j), 0)
                        if c:
                            vaddto(lhs, self.a(k, {m: 1}), c)
                    rhs = self.a(j, self.a(i, {m: 1}))
                    vaddto(rhs, self.a(i, self.a(j, {m: 1})), -_sign(g.degree(i) * g.degree(j)))
                    if _clean(lhs) != _clean(rhs):
                        rep.fail("coaction", (m, i, j))
        return rep

    # -- conilpotency -------------------------------------------------------

    def filtration(self):
        """M_0 = ker rho, M_k = {m : rho(m) in g (x) M_{k-1}}; returns the
        list of dimensions until it stabilises."""
        labels = self.labels
        prev = None
        dims = []
        # represent M_{k-1} by an echelon; M_{-1} = 0
        e_prev = Subspace()
        while True:
            # m in M_k iff a_i(m) in M_{k-1} for all i, i.e. in the kernel of
            # the composite M -> sum_i M / M_{k-1}
            cols = []
            for m in labels:
                col = {}
                for i in self.g.labels:
                    v = self.a(i, {m: 1})
                    r = e_prev.remainder(v)
                    for k, c in r.items():
                        col[(i, k)] = c
                cols.append(col)
            ker = kernel(cols)
            dim = len(ker)
            dims.append(dim)
            if prev is not None and dim == prev:
                return dims[:-1], dim == len(labels)
            prev = dim
            e_prev = Subspace()
            for v in ker:
                e_prev.add({labels[i]: c for i, c in v.items()})
            if dim == len(labels):
                return dims, True

    def filtration_spaces(self):
        """Graded pieces of the conilpotency filtration: a list with, for
        each k, {degree: dim M_k^n - dim M_{k-1}^n}."""
        degs = sorted({self.degree(m) for m in self.labels})
        e_prev = Subspace()
        prev = {n: 0 for n in degs}
        out = []
        while True:
            e_new = Subspace()
            cur = {}
            for n in degs:
                labs = [m for m in self.labels if self.degree(m) == n]
                cols = []
                for m in labs:
                    col = {}
                    for i in self.g.labels:
                        for k, c in e_prev.remainder(self.a(i, {m: 1})).items():
                            col[(i, k)] = c
                    cols.append(col)
                ker = kernel(cols)
                cur[n] = len(ker)
                for v in ker:
                    e_new.add({labs[i]: c for i, c in v.items()})
            layer = {n: cur[n] - prev[n] for n in degs if cur[n] - prev[n]}
            if not layer:
                return out
            out.append(layer)
            prev, e_prev = cur, e_new

    def nilpotency_witness(self):
        """None if the operators a_i generate a nilpotent algebra;
        otherwise a word (e_1, ..., e_n) with a_{e_n}...a_{e_1} != 0 for
        n = dim M."""
        n = self.dim()
        gens = [e for e in self.g.labels if self.ops.get(e)]
        # span of products of length k, each with a witness word
        layer = []
        e = Echelon()
        for g in gens:
            mat = self._matrix((g,))
            if mat and e.add(mat):
                layer.append(((g,), mat))
        for _ in range(n - 1):
            if not layer:
                return None
            e = Echelon()
            new = []
            for word, _mat in layer:
                for g in gens:
                    w = word + (g,)
                    mat = self._matrix(w)
                    if mat and e.add(mat):
                        new.append((w, mat))
            layer = new
        return layer[0][0] if layer else None

    def _matrix(self, word):
        out = {}
        for m in self.labels:
            v = {m: Fraction(1)}
            for g in word:
                v = self.a(g, v)
                if not v:
                    break
            for k, c in v.items():
                out[(m, k)] = c
        return out

    def is_conilpotent(self):
        return self.nilpotency_witness() is None

    def derive_weights(self, gweights):
        """
        Module weights with wt(a_i m) = wt(m) - wt(e_i) and d_M weight
        preserving, found by propagation along nonzero entries; each
        connected component is shifted to start at 0.  None on conflict or
        when a weight would go negative.
        """
        if self.weights is not None:
            return dict(self.weights)
        edges = {m: [] for m in self.labels}
        for m, vec in self.coaction.items():
            for (e, m2), _ in vec.items():
                edges[m].append((m2, -gweights[e]))
                edges[m2].append((m, gweights[e]))
        for m, vec in self.d.items():
            for m2 in vec:
                edges[m].append((m2, 0))
                edges[m2].append((m, 0))
        w = {}
        for start in self.labels:
            if start in w:
                continue
            comp = {start: 0}
            q = deque([start])
            while q:
                x = q.popleft()
                for y, off in edges[x]:
                    if y in comp:
                        if comp[y] != comp[x] + off:
                            return None
                    else:
                        comp[y] = comp[x] + off
                        q.append(y)
            low = min(comp.values())
            for x, v in comp.items():
                w[x] = v - low
        return w


def coadjoint(g):
    """g as a comodule over itself, with coaction given by the cobracket."""
    coaction = {lab: dict(vec) for lab, vec in g.cobracket.items()}
    return DgComodule(g, g.space, dict(g.d), coaction, name="coadjoint")


def trivial_comodule(g, degree=0, label="1"):
    return DgComodule(g, GradedSpace({degree: [label]}), {}, {}, name="trivial")


def tensor_comodule(M, N):
    """M (x) N with rho(m (x) n) = rho(m) (x) n + (-1)^{|e||m|} e (x) m (x) rho(n)."""
    g = M.g
    pairs = [((m, n), M.degree(m) + N.degree(n)) for m in M.labels for n in N.labels]
    space = GradedSpace.from_pairs(pairs)
    d, co = {}, {}
    for m in M.labels:
        for n in N.labels:
            v = {}
            for k, c in M.d.get(m, {}).items():
                v[(k, n)] = v.get((k, n), 0) + c
            s = _sign(M.degree(m))
            for k, c in N.d.get(n, {}).items():
                v[(m, k)] = v.get((m, k), 0) + s * c
            d[(m, n)] = v
            r = {}
            for (e, m2), c in M.coaction.get(m, {}).items():
                r[(e, (m2, n))] = r.get((e, (m2, n)), 0) + c
            for (e, n2), c in N.coaction.get(n, {}).items():
                s = _sign(g.degree(e) * M.degree(m))
                r[(e, (m, n2))] = r.get((e, (m, n2)), 0) + s * c
            co[(m, n)] = r
    return DgComodule(g, space, d, co, name="tensor")


def dual_comodule(M):
    """M* with x.phi = -(-1)^{|x||phi|} phi o x and the dual differential."""
    g = M.g
    lab = lambda m: ("*", m)
    space = GradedSpace.from_pairs([(lab(m), -M.degree(m)) for m in M.labels])
    d = {}
    for n, vec in M.d.items():
        for m, c in vec.items():
            v = d.setdefault(lab(m), {})
            v[lab(n)] = v.get(lab(n), 0) - _sign(M.degree(m)) * c
    co = {}
    for n in M.labels:
        for e in g.labels:
            for m, c in M.act(e, {n: 1}).items():
                # x.m* has coefficient -(-1)^{|x||m|} c on n*; a = -action
                s = _sign(g.degree(e) * M.degree(m))
                v = co.setdefault(lab(m), {})
                v[(e, lab(n))] = v.get((e, lab(n)), 0) + s * c
    return DgComodule(g, space, d, co, name="dual(%s)" % M.name)


def hom_comodule(M, N):
    """Hom(M, N) = M* (x) N."""
    H = tensor_comodule(dual_comodule(M), N)
    H.name = "hom(%s,%s)" % (M.name, N.name)
    return H


def character(g, coeffs, degree=0, label="m", name=""):
    """One-dimensional comodule rho(m) = sum_e coeffs[e] e (x) m (needs
    degree-0 coalgebra elements)."""
    co = {label: {(e, label): c for e, c in coeffs.items()}}
    return DgComodule(g, GradedSpace({degree: [label]}), {}, co, name=name)
