"""
Free graded Lie algebras realised inside the dual of a tensor coalgebra.

Elements are linear functionals on words of T_con(V): dicts mapping a word
(a tuple of letters) to a coefficient.  The product is the convolution
dual to deconcatenation with Koszul signs,

    u* . v* = (-1)^{|u||v|} (uv)*,

so the functionals form the completed tensor algebra on V*.  Lie elements
are built from the letter functionals with the graded commutator.
"""

from fractions import Fraction
from functools import lru_cache

from .linalg import Echelon, Solver, vaddto


def word_degree(word, degree):
    return sum(degree[a] for a in word)


def fmul(f, g, degree):
    """Convolution product of two functionals."""
    out = {}
    for u, a in f.items():
        du = word_degree(u, degree)
        for v, b in g.items():
            s = -1 if (du * word_degree(v, degree)) % 2 else 1
            w = u + v
            c = out.get(w, 0) + s * a * b
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def fdegree(f, degree):
    """Degree of a homogeneous functional (minus the word degree)."""
    for w in f:
        return -word_degree(w, degree)
    return 0


def fbracket(f, g, degree):
    df, dg = fdegree(f, degree), fdegree(g, degree)
    s = -1 if (df * dg) % 2 else 1
    out = fmul(f, g, degree)
    vaddto(out, fmul(g, f, degree), -s)
    return out


def is_lyndon(word):
    n = len(word)
    return all(word < word[i:] + word[:i] for i in range(1, n)) and n > 0


def lyndon_words(alphabet, maxlen):
    """All Lyndon words over an ordered alphabet up to length maxlen
    (Duval's algorithm)."""
    k = len(alphabet)
    if k == 0 or maxlen < 1:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(alphabet[i] for i in w))
        m = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    out.sort(key=lambda t: (len(t), [alphabet.index(a) for a in t]))
    return out


def standard_factorization(word, key):
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        v = word[i:]
        if is_lyndon(tuple(key(a) for a in v)):
            return word[:i], v
    raise ValueError("not a Lyndon word of length >= 2: %r" % (word,))


class FreeLie:
    """
    Weight-truncated free graded Lie algebra on generators dual to a graded
    space V.

    ``letters`` is an ordered list of (label, degree) for V; the generator
    dual to a letter of degree n has degree -n.  Basis elements are the
    standard bracketings of Lyndon words, together with [P, P] for every
    odd Lyndon element P (these are nonzero for odd elements).
    """

    def __init__(self, letters, cap):
        if cap < 1:
            raise ValueError("weight cap must be >= 1")
        self.letters = [lab for lab, _ in letters]
        self.degree = {lab: n for lab, n in letters}
        self.cap = cap
        self._pos = {lab: i for i, lab in enumerate(self.letters)}
        self.basis = []          # keys
        self.element = {}        # key -> functional
        self.weight = {}
        self.lie_degree = {}
        self._build()

    def gen(self, a):
        return {(a,): Fraction(1)}

    def _build(self):
        key = lambda a: self._pos[a]
        words = lyndon_words(self.letters, self.cap)
        elem = {}
        for w in words:
            if len(w) == 1:
                p = self.gen(w[0])
            else:
                u, v = standard_factorization(w, key)
                p = fbracket(elem[("L", u)], elem[("L", v)], self.degree)
            elem[("L", w)] = p
        cands = []
        for w in words:
            cands.append(("L", w))
            p = elem[("L", w)]
            if fdegree(p, self.degree) % 2 and 2 * len(w) <= self.cap:
                sq = ("S", w)
                elem[sq] = fbracket(p, p, self.degree)
                cands.append(sq)
        cands.sort(key=lambda k: (self._weight_of(k), k[0] == "S", [key(a) for a in k[1]]))
        for k in cands:
            p = elem[k]
            if not p:
                continue
            self.basis.append(k)
            self.element[k] = p
            self.weight[k] = self._weight_of(k)
            self.lie_degree[k] = fdegree(p, self.degree)
        # sanity: linear independence within each weight
        by_w = {}
        for k in self.basis:
            by_w.setdefault(self.weight[k], []).append(k)
        for w, ks in by_w.items():
            e = Echelon()
            for k in ks:
                if not e.add(self.element[k]):
                    raise AssertionError("dependent free Lie basis in weight %d" % w)
        self._by_weight = by_w
        self._solvers = {}

    @staticmethod
    def _weight_of(k):
        kind, w = k
        return len(w) * (2 if kind == "S" else 1)

    def dims(self):
        """Weight -> number of basis elements, for weights 1..cap."""
        return [len(self._by_weight.get(w, ())) for w in range(1, self.cap + 1)]

    def express(self, f):
        """Coordinates of a Lie functional in the basis (weights <= cap are
        kept; higher weight words are discarded).  Returns None if f is not
        a Lie element."""
        parts = {}
        for word, c in f.items():
            if len(word) <= self.cap:
                parts.setdefault(len(word), {})[word] = c
        out = {}
        for w, vec in parts.items():
            ks = self._by_weight.get(w, [])
            if w not in self._solvers:
                self._solvers[w] = Solver([self.element[k] for k in ks])
            x = self._solvers[w](vec)
            if x is None:
                return None
            for i, c in x.items():
                if c:
                    out[ks[i]] = c
        return out

    def bracket_table(self, cap=None):
        """Structure constants {(a, b): {c: coeff}} with weight(a)+weight(b) <= cap."""
        cap = self.cap if cap is None else cap
        table = {}
        for a in self.basis:
            for b in self.basis:
                if self.weight[a] + self.weight[b] > cap:
                    continue
                br = fbracket(self.element[a], self.element[b], self.degree)
                coords = self.express(br)
                if coords is None:
                    raise AssertionError("bracket left the Lie subalgebra")
                if coords:
                    table[(a, b)] = coords
        return table


# ---------------------------------------------------------------------------
# dimension oracle

def graded_witt_dims(letter_degrees, cap):
    """
    Dimensions of the free graded Lie algebra on generators of the given
    degrees, split by (weight, parity), up to weight cap.

    Uses the PBW identity for Lie superalgebras: the Hilbert series of the
    tensor algebra equals prod (1 - t^w q)^(-e_w) (1 + t^w q')^(o_w), solved
    weight by weight.  Works with parity only, which is all that matters
    for the sign rules.  Returns a list of total dims for weights 1..cap.
    """
    n_even = sum(1 for d in letter_degrees if d % 2 == 0)
    n_odd = len(letter_degrees) - n_even
    # series in t with coefficients (even_part, odd_part) as polynomials in
    # a parity variable p (p^2 = 1): represent as pair (a, b) = a + b p.
    # T(V) = 1 / (1 - t (E + O p)).
    tensor = [(1, 0)]
    for w in range(1, cap + 1):
        a, b = tensor[-1]
        tensor.append((a * n_even + b * n_odd, a * n_odd + b * n_even))

    def mul(x, y):
        out = [(0, 0)] * (cap + 1)
        for i, (a, b) in enumerate(x):
            if not (a or b):
                continue
            for j, (c, d) in enumerate(y):
                if i + j > cap:
                    break
                e, f = out[i + j]
                out[i + j] = (e + a * c + b * d, f + a * d + b * c)
        return out

    def factor(w, parity, mult):
        # even element: 1/(1 - t^w x)^mult ; odd: (1 + t^w x p)^mult
        out = [(0, 0)] * (cap + 1)
        out[0] = (1, 0)
        from math import comb
        k = 1
        while w * k <= cap:
            if parity == 0:
                c = comb(mult + k - 1, k)
                out[w * k] = (c, 0)
            else:
                c = comb(mult, k)
                out[w * k] = (c, 0) if k % 2 == 0 else (0, c)
            k += 1
        return out

    prod = [(1, 0)] + [(0, 0)] * cap
    dims = []
    for w in range(1, cap + 1):
        te, to = tensor[w]
        pe, po = prod[w]
        le, lo = te - pe, to - po
        dims.append(le + lo)
        if le:
            prod = mul(prod, factor(w, 0, le))
        if lo:
            prod = mul(prod, factor(w, 1, lo))
    return dims


def classical_witt(n_gens, w):
    """(1/w) sum_{d | w} mu(d) n^(w/d) for an even free Lie algebra."""
    total = 0
    for d in range(1, w + 1):
        if w % d == 0:
            total += _mobius(d) * n_gens ** (w // d)
    return total // w


@lru_cache(maxsize=None)
def _mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result
