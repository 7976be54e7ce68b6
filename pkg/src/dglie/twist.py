"""
Maurer-Cartan twists of free modules A (x) V, Hom complexes between
twists, the polynomial de Rham computations over k[z, dz] and the
monodromy of S^1 local systems from twists R x over Lambda(x).

Matrix-valued elements of A (x) End(V) are dicts {monomial: matrix}; V is
concentrated in degree 0, so only the degree of the A-monomial enters
signs.  MC convention: d xi + xi xi = 0.  The Hom differential is

    D(T) = dT + xi_W T - (-1)^{|T|} T xi_V,

which over k[z, dz] with xi_V = P dz, xi_W = Q dz reads
D(F) = (F' + QF - FP) dz on degree-0 elements.
"""

from fractions import Fraction
from math import factorial

from .gradecore import BettiTable, StructureError
from .linalg import Q, rank, vaddto


# ---------------------------------------------------------------------------
# small dense matrix helpers

def mat(rows):
    m = [[Q(x) for x in row] for row in rows]
    if any(len(row) != len(m) for row in m):
        raise StructureError("expected a square matrix, got %d rows of lengths %s"
                             % (len(m), sorted({len(r) for r in m})))
    return m


def zeros(n, k=None):
    return [[Fraction(0)] * (n if k is None else k) for _ in range(n)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mmul(a, b):
    if not a or not b:
        return [[Fraction(0)] * (len(b[0]) if b else 0) for _ in a]
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def madd(a, b, c=1):
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mscale(a, c):
    return [[c * x for x in row] for row in a]


def is_zero(a):
    return all(x == 0 for row in a for x in row)


def trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def det(a):
    """Exact determinant by fraction elimination."""
    a = [list(map(Fraction, row)) for row in a]
    n = len(a)
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        out *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return out


# ---------------------------------------------------------------------------
# host algebras

class DeRham:
    """k[z, dz]: monomials (n, e) = z^n dz^e with e in {0, 1}."""

    name = "derham"

    @staticmethod
    def degree(key):
        return key[1]

    @staticmethod
    def mul(a, b):
        if a[1] + b[1] > 1:
            return 0, None
        return 1, (a[0] + b[0], a[1] + b[1])

    @staticmethod
    def d(key):
        n, e = key
        if e or n == 0:
            return {}
        return {(n - 1, 1): Fraction(n)}

    @staticmethod
    def one_form(poly_matrix):
        """P(z) dz from a matrix of coefficient lists [c0, c1, ...]."""
        n = len(poly_matrix)
        if any(len(row) != n for row in poly_matrix):
            raise StructureError("expected a square matrix of polynomials")
        out = {}
        for i, row in enumerate(poly_matrix):
            for j, coeffs in enumerate(row):
                for k, c in enumerate(coeffs):
                    c = Q(c)
                    if c:
                        out.setdefault((k, 1), zeros(n))[i][j] += c
        return _Element(out, n)


class FiniteHost:
    """A finite-dimensional unital dg algebra: ``basis`` {key: degree} with
    the unit key ``unit``, ``table`` {(a, b): {c: coeff}}, ``diff`` {a: vec}."""

    def __init__(self, basis, table, diff=None, unit="1", name=""):
        self.basis = dict(basis)
        self.unit = unit
        self.table = table
        self.diff = diff or {}
        self.name = name

    def degree(self, key):
        return self.basis[key]

    def mulvec(self, a, b):
        if a == self.unit:
            return {b: Fraction(1)}
        if b == self.unit:
            return {a: Fraction(1)}
        return self.table.get((a, b), {})

    def d(self, key):
        return self.diff.get(key, {})


def exterior():
    """Lambda(x) with |x| = 1, the cochain model of S^1."""
    return FiniteHost({"1": 0, "x": 1}, {}, name="exterior")


def _host_mul(host, a, b):
    """Generic product of two monomials as a vector."""
    if isinstance(host, FiniteHost):
        return host.mulvec(a, b)
    s, k = host.mul(a, b)
    return {k: Fraction(s)} if s else {}


class _Element:
    """A matrix-valued element {monomial: n x n matrix}."""

    def __init__(self, terms, n):
        self.terms = {k: v for k, v in terms.items() if not is_zero(v)}
        self.n = n

    def degrees(self, host):
        return {host.degree(k) for k in self.terms}


def element(host, terms, n=None):
    """Build an element of host (x) End(k^n) from {monomial: matrix}."""
    terms = {k: mat(v) for k, v in terms.items()}
    if n is None:
        n = len(next(iter(terms.values()))) if terms else 0
    for k, v in terms.items():
        if len(v) != n:
            raise StructureError("matrix sizes disagree")
        if isinstance(host, FiniteHost) and k not in host.basis:
            raise StructureError("unknown host monomial %r" % (k,))
    return _Element(terms, n)


def _product(host, x, y):
    out = {}
    for a, ma in x.terms.items():
        for b, mb in y.terms.items():
            p = mmul(ma, mb)
            for k, c in _host_mul(host, a, b).items():
                out[k] = madd(out[k], p, c) if k in out else mscale(p, c)
    return out


def _differential(host, x):
    out = {}
    for a, ma in x.terms.items():
        for k, c in host.d(a).items():
            out[k] = madd(out[k], ma, c) if k in out else mscale(ma, c)
    return out


class MCVerdict:
    def __init__(self, residual):
        self.residual = {k: v for k, v in residual.items() if not is_zero(v)}

    @property
    def ok(self):
        return not self.residual

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "MCVerdict(%s)" % ("MC" if self.ok else "residual on %s" % sorted(self.residual))


def check_mc(host, xi):
    """d xi + xi xi == 0 exactly; a non-degree-1 candidate is rejected."""
    degs = xi.degrees(host)
    if degs and degs != {1}:
        raise StructureError("an MC element must have degree 1, got degrees %s" % sorted(degs))
    res = _differential(host, xi)
    for k, v in _product(host, xi, xi).items():
        res[k] = madd(res[k], v) if k in res else v
    return MCVerdict(res)


# ---------------------------------------------------------------------------
# twisted modules and Hom complexes over a finite host

class TwistedModule:
    """(A (x) k^n, d_A (x) 1 + xi.).  For the de Rham host the basis is
    cut off at polynomial degree ``bound``."""

    def __init__(self, host, xi, bound=4):
        self.host = host
        self.xi = xi
        self.n = xi.n
        if isinstance(host, FiniteHost):
            self.keys = list(host.basis)
        else:
            self.keys = [(k, e) for e in (0, 1) for k in range(bound + 1)]

    def basis(self):
        return [(a, i) for a in self.keys for i in range(self.n)]

    def d(self, vec):
        out = {}
        for (a, i), c in vec.items():
            for k, e in self.host.d(a).items():
                vaddto(out, {(k, i): 1}, c * e)
            for b, m in self.xi.terms.items():
                for k, e in _host_mul(self.host, b, a).items():
                    for r in range(self.n):
                        if m[r][i]:
                            vaddto(out, {(k, r): 1}, c * e * m[r][i])
        return out

    def square_zero(self):
        """(d + xi)^2 = 0 on every basis vector; computed independently of
        the MC equation."""
        return all(not self.d(self.d({b: 1})) for b in self.basis())


def hom_differential(host, xi_v, xi_w, T):
    """D(T) = dT + xi_W T - (-1)^{|T|} T xi_V for homogeneous matrix-valued T."""
    degs = T.degrees(host)
    if len(degs) > 1:
        raise StructureError("hom_differential expects a homogeneous element")
    t = degs.pop() if degs else 0
    out = _differential(host, T)
    for k, v in _product(host, xi_w, T).items():
        out[k] = madd(out[k], v) if k in out else v
    sign = -1 if t % 2 == 0 else 1
    for k, v in _product(host, T, xi_v).items():
        out[k] = madd(out[k], v, sign) if k in out else mscale(v, sign)
    return out


def twisted_hom_general(host, xi_v, xi_w, window=(0, 1)):
    """Exact Betti table of Hom(A (x) V, A (x) W) over a finite host."""
    n, m = xi_v.n, xi_w.n
    labels = [(a, i, j) for a in host.basis for i in range(m) for j in range(n)]
    by_deg = {}
    for lab in labels:
        by_deg.setdefault(host.degree(lab[0]), []).append(lab)

    def image(lab):
        a, i, j = lab
        E = zeros(m, n)
        E[i][j] = Fraction(1)
        out = {}
        for k, v in hom_differential(host, xi_v, xi_w, _Element({a: E}, n)).items():
            for r in range(m):
                for s in range(n):
                    if v[r][s]:
                        out[(k, r, s)] = v[r][s]
        return out

    lo, hi = window
    ranks = {}
    for deg in range(lo - 1, hi + 1):
        ranks[deg] = rank([image(lab) for lab in by_deg.get(deg, [])])
    return BettiTable((lo, hi), {d: len(by_deg.get(d, [])) - ranks[d] - ranks[d - 1]
                       for d in range(lo, hi + 1)})


def intertwiners(R, S):
    """dim {T : S T = T R} by direct elimination (oracle)."""
    n, m = len(R), len(S)
    cols = []
    for i in range(m):
        for j in range(n):
            E = zeros(m, n)
            E[i][j] = Fraction(1)
            D = madd(mmul(S, E), mmul(E, R), -1)
            cols.append({(r, s): D[r][s] for r in range(m) for s in range(n) if D[r][s]})
    return n * m - rank(cols)


# ---------------------------------------------------------------------------
# polynomial de Rham: Hom between twists P dz and Q dz

class DeRhamHom:
    """
    Hom between (k[z,dz] (x) k^n, P dz) and (k[z,dz] (x) k^m, Q dz).  On
    degree-0 elements D(F) = (F' + QF - FP) dz; degree-1 elements are
    cycles.  H^0 = polynomial solutions, H^1 = cokernel.
    """

    def __init__(self, P, Q):
        self.P = [[[Fraction(c) for c in e] for e in row] for row in P]
        self.Q = [[[Fraction(c) for c in e] for e in row] for row in Q]
        self.n, self.m = len(P), len(Q)
        self.pdeg = max([len(e) - 1 for row in self.P + self.Q for e in row if any(e)] or [0])

    def L(self, i, j, k):
        """Image of z^k E_ij under F -> F' + QF - FP, as {(r, s, power): c}."""
        out = {}
        if k:
            out[(i, j, k - 1)] = Fraction(k)
        for r in range(self.m):
            for p, c in enumerate(self.Q[r][i]):
                if c:
                    out[(r, j, k + p)] = out.get((r, j, k + p), 0) + c
        for s in range(self.n):
            for p, c in enumerate(self.P[j][s]):
                if c:
                    out[(i, s, k + p)] = out.get((i, s, k + p), 0) - c
        return {key: c for key, c in out.items() if c}

    def _cols(self, bound):
        return [self.L(i, j, k) for i in range(self.m) for j in range(self.n)
                for k in range(bound + 1)]

    def h0(self, bound):
        cols = self._cols(bound)
        return len(cols) - rank(cols)

    def h1(self, bound):
        """dim P_<=bound / (L(P_<=2bound+1) cap P_<=bound)."""
        cols = self._cols(2 * bound + 1 + self.pdeg)
        high = [{k: c for k, c in v.items() if k[2] > bound} for v in cols]
        inside = rank(cols) - rank(high)
        return self.m * self.n * (bound + 1) - inside


class HomCohomology:
    def __init__(self, betti, bounds, stable, values):
        self.betti = betti
        self.bounds = bounds
        self.stable = stable
        self.values = values

    def __repr__(self):
        return "HomCohomology(%s, bounds=%s, stable=%s)" % (self.betti, self.bounds, self.stable)


def twisted_hom_cohomology(P, Q, degree_bound=8):
    """Betti table (degrees 0, 1) of Hom between the de Rham twists P dz
    and Q dz, computed at degree_bound and 2*degree_bound; ``stable`` is
    False when the two disagree."""
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    H = DeRhamHom(P, Q)
    values = {}
    for b in (degree_bound, 2 * degree_bound):
        values[b] = (H.h0(b), H.h1(b))
    lo, hi = values[degree_bound], values[2 * degree_bound]
    betti = BettiTable((0, 1), {0: lo[0], 1: lo[1]})
    return HomCohomology(betti, (degree_bound, 2 * degree_bound), lo == hi, values)


def scalar_form(coeffs):
    """1 x 1 polynomial matrix for the 1-form (sum c_k z^k) dz."""
    return [[list(coeffs)]]


# ---------------------------------------------------------------------------
# S^1 local systems

class MonodromyReport:
    def __init__(self, R):
        self.R = R
        self.n = len(R)
        self.trace = trace(R)
        k, power = 0, identity(self.n)
        terms = []
        while not is_zero(power) and k <= self.n:
            terms.append(mscale(power, Fraction(1, factorial(k))))
            k += 1
            power = mmul(power, R)
        self.nilpotent = is_zero(power)
        self.exp = None
        if self.nilpotent:
            self.exp = identity(self.n)
            for t in terms[1:]:
                self.exp = madd(self.exp, t)
        self.unipotent = self.nilpotent
        # det exp(R) = e^{tr R} > 0 always
        self.det = "e^(%s)" % _fmt(self.trace) if self.trace else "1"
        self.det_positive = True
        self.in_image = True
        self.character = "e^(%s)" % _fmt(R[0][0]) if self.n == 1 else None
        if self.exp is not None and det(self.exp) != 1 and self.trace == 0:
            raise AssertionError("det exp(R) differs from e^tr(R)")

    def series(self, terms):
        """Partial sum of exp(R) with an exact rational error bound on each
        entry: ||R||^N / N! * 3^ceil(||R||), ||.|| the max row sum."""
        norm = max((sum(abs(x) for x in row) for row in self.R), default=Fraction(0))
        total, power = zeros(self.n), identity(self.n)
        for k in range(terms):
            total = madd(total, mscale(power, Fraction(1, factorial(k))))
            power = mmul(power, self.R)
        ceil = -(-norm.numerator // norm.denominator)
        bound = norm ** terms / factorial(terms) * 3 ** ceil
        return total, bound

    def as_dict(self):
        return {
            "trace": _fmt(self.trace),
            "det": self.det,
            "det_positive": self.det_positive,
            "in_image": self.in_image,
            "nilpotent": self.nilpotent,
            "monodromy": [[_fmt(x) for x in row] for row in self.exp] if self.exp else "exp(R)",
            "character": self.character,
        }


def _fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def s1_system(R):
    """Monodromy of the twist R x over Lambda(x)."""
    R = mat(R)
    xi = element(exterior(), {"x": R}) if R else _Element({}, 0)
    if R and not check_mc(exterior(), xi):
        raise AssertionError("R x failed the MC equation")
    return MonodromyReport(R)


def realizable(M):
    """
    Can M be the monodromy exp(R) of a twist?  det M <= 0 rules it out
    (det exp R = e^{tr R} > 0).  A positive scalar is e^{log m}.  For
    larger M with det M > 0 the question is left open: "undetermined".
    """
    M = mat(M)
    dm = det(M)
    if dm <= 0:
        return False
    if len(M) == 1:
        return True
    return "undetermined"
