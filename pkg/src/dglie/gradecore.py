"""
Graded vector spaces, chain complexes and their cohomology over Q.

Two kinds of complexes live here.  ``Complex`` is finite-dimensional and
fully materialised.  ``WeightedComplex`` describes an infinite complex by
finite (degree, weight) pieces and a differential that never lowers the
weight; its cohomology is computed on a weight cap with an explicit
look-ahead, and the caller decides stability by comparing two caps.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import rank, vmap


class StructureError(ValueError):
    """Raised when an object violates a structural axiom (e.g. d^2 != 0)."""


class GradedSpace:
    """A finite graded vector space with a labelled basis in each degree."""

    def __init__(self, basis):
        # basis: mapping degree -> iterable of labels
        self._basis = {}
        self._deg = {}
        for n in sorted(basis):
            labels = tuple(basis[n])
            if not labels:
                continue
            for lab in labels:
                if lab in self._deg:
                    raise StructureError("duplicate basis label %r" % (lab,))
                self._deg[lab] = n
            self._basis[n] = labels

    @classmethod
    def from_pairs(cls, pairs):
        """Build from an ordered iterable of (label, degree)."""
        basis = {}
        for lab, n in pairs:
            basis.setdefault(n, []).append(lab)
        return cls(basis)

    def degree(self, label):
        return self._deg[label]

    def basis(self, n):
        return self._basis.get(n, ())

    def dim(self, n=None):
        if n is None:
            return len(self._deg)
        return len(self._basis.get(n, ()))

    @property
    def degrees(self):
        return tuple(self._basis)

    def labels(self):
        out = []
        for n in self._basis:
            out.extend(self._basis[n])
        return out

    def __contains__(self, label):
        return label in self._deg

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self._basis == other._basis

    def __hash__(self):
        return hash(tuple(self._basis.items()))

    def __repr__(self):
        dims = ", ".join("%d:%d" % (n, len(b)) for n, b in self._basis.items())
        return "GradedSpace({%s})" % dims


class LinMap:
    """A linear map of fixed degree shift, stored by images of basis labels."""

    def __init__(self, source, target, images, shift=0):
        self.source = source
        self.target = target
        self.shift = shift
        self.images = {}
        for lab, vec in images.items():
            if lab not in source:
                raise StructureError("map defined on unknown label %r" % (lab,))
            vec = {k: Fraction(x) for k, x in vec.items() if x}
            for k in vec:
                if k not in target:
                    raise StructureError("image uses unknown label %r" % (k,))
                if target.degree(k) != source.degree(lab) + shift:
                    raise StructureError(
                        "image of %r has wrong degree (label %r)" % (lab, k))
            if vec:
                self.images[lab] = vec

    def image(self, label):
        return self.images.get(label, {})

    def __call__(self, vec):
        return vmap(vec, self.image)

    def block(self, n):
        """Dense matrix of the degree-n block (rows: target n+shift)."""
        src = self.source.basis(n)
        tgt = self.target.basis(n + self.shift)
        idx = {lab: i for i, lab in enumerate(tgt)}
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for j, lab in enumerate(src):
            for k, x in self.image(lab).items():
                rows[idx[k]][j] = x
        return rows

    def compose(self, other):
        """self o other."""
        images = {lab: self(other.image(lab)) for lab in other.source.labels()}
        return LinMap(other.source, self.target, images, self.shift + other.shift)

    def is_zero(self):
        return not self.images


class Complex:
    """A finite cochain complex: a graded space with a degree +1 differential."""

    def __init__(self, space, d, check=True):
        if isinstance(d, dict):
            d = LinMap(space, space, d, shift=1)
        if d.shift != 1 or d.source is not space and d.source != space:
            raise StructureError("differential must have degree +1 on the space")
        self.space = space
        self.d = d
        if check:
            bad = self.dd_violations()
            if bad:
                raise StructureError("d^2 != 0 on %r" % (bad[0],))

    def dd_violations(self):
        out = []
        for lab in self.space.labels():
            if self.d(self.d.image(lab)):
                out.append(lab)
        return out

    def degree(self, label):
        return self.space.degree(label)

    def rank_d(self, n):
        return rank(self.d.image(lab) for lab in self.space.basis(n))

    def __repr__(self):
        return "Complex(%r)" % (self.space,)


@dataclass(frozen=True)
class BettiTable:
    window: tuple
    dims: dict = field(hash=False)

    def as_list(self):
        a, b = self.window
        return [self.dims[n] for n in range(a, b + 1)]

    def is_zero(self):
        return not any(self.dims.values())

    def euler(self):
        return sum((-1) ** (n % 2) * x for n, x in self.dims.items())

    def __getitem__(self, n):
        return self.dims[n]

    def __str__(self):
        return " ".join("H^%d=%d" % (n, self.dims[n]) for n in sorted(self.dims))


def _window(window):
    a, b = window
    if a > b:
        raise ValueError("empty degree window %r" % (window,))
    return int(a), int(b)


def cohomology(c, window):
    """Betti numbers dim ker d^n - rank d^(n-1) for n in the window."""
    a, b = _window(window)
    bad = c.dd_violations()
    if bad:
        raise StructureError("d^2 != 0 on %r" % (bad[0],))
    ranks = {}
    for n in range(a - 1, b + 1):
        ranks[n] = c.rank_d(n)
    dims = {n: c.space.dim(n) - ranks[n] - ranks[n - 1] for n in range(a, b + 1)}
    return BettiTable((a, b), dims)


def is_chain_map(f, src, tgt):
    for lab in src.space.labels():
        if tgt.d(f.image(lab)) != f(src.d.image(lab)):
            return False
    return True


def cone(f, src, tgt):
    """
    Mapping cone with cone^n = src^{n+1} + tgt^n and
    d(s, t) = (-d s, f(s) + d t).  Labels are ('s', x) and ('t', y).
    """
    if f.shift != 0:
        raise StructureError("cone needs a degree-0 map")
    if not is_chain_map(f, src, tgt):
        raise StructureError("cone: map does not commute with differentials")
    pairs = [(("s", x), src.degree(x) - 1) for x in src.space.labels()]
    pairs += [(("t", y), tgt.degree(y)) for y in tgt.space.labels()]
    space = GradedSpace.from_pairs(pairs)
    images = {}
    for x in src.space.labels():
        v = {("s", k): -c for k, c in src.d.image(x).items()}
        for k, c in f.image(x).items():
            v[("t", k)] = c
        images[("s", x)] = v
    for y in tgt.space.labels():
        images[("t", y)] = {("t", k): c for k, c in tgt.d.image(y).items()}
    return Complex(space, LinMap(space, space, images, 1))


def tensor(a, b):
    """Graded tensor product with d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy."""
    pairs = []
    for x in a.space.labels():
        for y in b.space.labels():
            pairs.append(((x, y), a.degree(x) + b.degree(y)))
    space = GradedSpace.from_pairs(pairs)
    images = {}
    for x in a.space.labels():
        sx = -1 if a.degree(x) % 2 else 1
        dx = a.d.image(x)
        for y in b.space.labels():
            v = {}
            for k, c in dx.items():
                v[(k, y)] = v.get((k, y), 0) + c
            for k, c in b.d.image(y).items():
                v[(x, k)] = v.get((x, k), 0) + sx * c
            images[(x, y)] = {k: c for k, c in v.items() if c}
    return Complex(space, LinMap(space, space, images, 1))


def dual_label(label):
    return ("*", label)


def dualize(c):
    """
    Linear dual: (V*)^n = (V^{-n})*, with d*(phi) = -(-1)^{|phi|} phi o d.
    """
    pairs = [(dual_label(x), -c.degree(x)) for x in c.space.labels()]
    space = GradedSpace.from_pairs(pairs)
    images = {}
    for x in c.space.labels():
        for k, coef in c.d.image(x).items():
            # phi = k*, |phi| = -|k|; (phi o d)(x) = coef
            sign = 1 if c.degree(k) % 2 else -1
            v = images.setdefault(dual_label(k), {})
            v[dual_label(x)] = v.get(dual_label(x), 0) + sign * coef
    return Complex(space, LinMap(space, space, images, 1))


def direct_sum(*complexes):
    pairs = []
    images = {}
    for i, c in enumerate(complexes):
        for x in c.space.labels():
            pairs.append(((i, x), c.degree(x)))
            images[(i, x)] = {(i, k): v for k, v in c.d.image(x).items()}
    space = GradedSpace.from_pairs(pairs)
    return Complex(space, LinMap(space, space, images, 1))


# ---------------------------------------------------------------------------
# weight-filtered infinite complexes

class WeightedComplex:
    """
    A complex sum_{n,w} C^{n}_{w} with finite pieces and a differential
    that maps weight w into weights >= w.

    ``pieces(n, w)`` lists the basis labels of degree n and weight exactly
    w; ``diff(label)`` returns the image as a sparse vector;
    ``weight(label)`` returns the weight of a basis label.  Weights are
    non-negative integers.
    """

    def __init__(self, pieces, diff, weight, name=""):
        self._pieces = pieces
        self._diff = diff
        self._weight = weight
        self._cache = {}
        self._dcache = {}
        self.name = name

    def piece(self, n, w):
        key = (n, w)
        if key not in self._cache:
            self._cache[key] = tuple(self._pieces(n, w))
        return self._cache[key]

    def basis(self, n, cap):
        out = []
        for w in range(cap + 1):
            out.extend(self.piece(n, w))
        return out

    def diff(self, label):
        if label not in self._dcache:
            v = {k: Fraction(x) for k, x in self._diff(label).items() if x}
            self._dcache[label] = v
        return self._dcache[label]

    def weight(self, label):
        return self._weight(label)

    def apply(self, vec):
        return vmap(vec, self.diff)

    def check_filtration(self, n, cap):
        """Labels in degree n, weight <= cap whose image lowers the weight."""
        bad = []
        for lab in self.basis(n, cap):
            w = self.weight(lab)
            if any(self.weight(k) < w for k in self.diff(lab)):
                bad.append(lab)
        return bad

    def dd_violations(self, n, cap):
        return [lab for lab in self.basis(n, cap) if self.apply(self.diff(lab))]

    def is_graded(self, degrees, cap):
        for n in degrees:
            for lab in self.basis(n, cap):
                w = self.weight(lab)
                if any(self.weight(k) != w for k in self.diff(lab)):
                    return False
        return True


def weighted_cohomology(wc, window, cap, lookahead=1, check=True):
    """
    Betti numbers of a WeightedComplex seen through weight <= cap.

    H^n = dim{x in C^n_{<=cap} : dx = 0}
          - dim(d(C^{n-1}_{<=cap+lookahead}) intersect C^n_{<=cap}).

    When d preserves weight this is the exact cohomology of the weight
    <= cap summand and the look-ahead is irrelevant.
    """
    a, b = _window(window)
    dims = {}
    for n in range(a, b + 1):
        cn = wc.basis(n, cap)
        if check:
            bad = wc.check_filtration(n, cap)
            if bad:
                raise StructureError("differential lowers weight at %r" % (bad[0],))
            bad = wc.dd_violations(n, cap)
            if bad:
                raise StructureError("d^2 != 0 at %r" % (bad[0],))
        z = len(cn) - rank(wc.diff(lab) for lab in cn)
        prev = wc.basis(n - 1, cap + lookahead)
        imgs = [wc.diff(lab) for lab in prev]
        full = rank(imgs)
        high = rank([{k: x for k, x in v.items() if wc.weight(k) > cap} for v in imgs])
        dims[n] = z - (full - high)
    return BettiTable((a, b), dims)


def truncate(wc, degrees, cap):
    """Materialise the weight <= cap part of a weight-preserving complex."""
    pairs = []
    for n in degrees:
        for lab in wc.basis(n, cap):
            pairs.append((lab, n))
    space = GradedSpace.from_pairs(pairs)
    images = {}
    for lab in space.labels():
        v = {k: x for k, x in wc.diff(lab).items() if k in space}
        images[lab] = v
    return Complex(space, LinMap(space, space, images, 1), check=False)


def weighted_cone(f, src, tgt):
    """
    Cone of a weight-nondecreasing chain map between WeightedComplexes.
    ``f(label)`` gives the image of a source basis label.
    """

    def pieces(n, w):
        return [("s", x) for x in src.piece(n + 1, w)] + [("t", y) for y in tgt.piece(n, w)]

    def diff(lab):
        side, x = lab
        if side == "s":
            v = {("s", k): -c for k, c in src.diff(x).items()}
            for k, c in f(x).items():
                v[("t", k)] = v.get(("t", k), 0) + c
            return v
        return {("t", k): c for k, c in tgt.diff(x).items()}

    def weight(lab):
        side, x = lab
        return src.weight(x) if side == "s" else tgt.weight(x)

    return WeightedComplex(pieces, diff, weight, name="cone")


def chain_map_violations(f, src, tgt, degrees, cap):
    bad = []
    for n in degrees:
        for x in src.basis(n, cap):
            lhs = tgt.apply(f(x))
            rhs = vmap(src.diff(x), f)
            if lhs != rhs:
                bad.append(x)
    return bad


def from_complex(c):
    """View a finite complex as a WeightedComplex concentrated in weight 0."""
    def pieces(n, w):
        return c.space.basis(n) if w == 0 else ()
    return WeightedComplex(pieces, c.d.image, lambda lab: 0)

