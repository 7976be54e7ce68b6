"""
Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``{label: Fraction}`` with no zero entries.  Rank
computations use fraction-free row reduction: every row is scaled to a
primitive integer vector and eliminations are done as ``a*r - b*p``
followed by removal of the content, so no denominators ever appear.
"""

from fractions import Fraction
from math import gcd, lcm


def Q(x):
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise ValueError("decimal literals are not exact rationals: %r" % x)
        return Fraction(s)
    raise TypeError("not an exact rational: %r" % (x,))


# ---------------------------------------------------------------------------
# sparse vectors

def vadd(u, v, c=1):
    """Return u + c*v (new dict)."""
    w = dict(u)
    for k, x in v.items():
        y = w.get(k, 0) + c * x
        if y:
            w[k] = y
        else:
            w.pop(k, None)
    return w


def vaddto(w, v, c=1):
    """In-place w += c*v."""
    if not c:
        return w
    for k, x in v.items():
        y = w.get(k, 0) + c * x
        if y:
            w[k] = y
        else:
            del w[k]
    return w


def vscale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vclean(v):
    return {k: Fraction(x) for k, x in v.items() if x}


def vmap(v, f):
    """Apply a linear map given on basis labels by ``f(label) -> vec``."""
    out = {}
    for k, x in v.items():
        vaddto(out, f(k), x)
    return out


def _primitive(row):
    """Scale a rational sparse row to a primitive integer row."""
    den = 1
    for x in row.values():
        den = lcm(den, Fraction(x).denominator)
    ints = {k: int(Fraction(x) * den) for k, x in row.items()}
    g = 0
    for x in ints.values():
        g = gcd(g, x)
    if g > 1:
        ints = {k: x // g for k, x in ints.items()}
    return ints


class Echelon:
    """
    Incremental fraction-free row echelon form.

    Rows are kept as primitive integer dicts keyed by their pivot label.
    Pivot order is the insertion-time minimum under ``key`` (default: the
    order in which labels are first seen), which keeps the reduction
    deterministic for a given input order.
    """

    def __init__(self, key=None):
        self.rows = {}      # pivot label -> primitive integer row
        self._order = {}
        self._key = key

    def _rank_of(self, label):
        if self._key is not None:
            return self._key(label)
        if label not in self._order:
            self._order[label] = len(self._order)
        return self._order[label]

    def _pivot(self, row):
        return min(row, key=self._rank_of)

    def reduce(self, vec):
        """Reduce vec against the stored rows; returns an integer row
        proportional to the remainder (empty if vec is in the span)."""
        row = _primitive(vec) if vec else {}
        for k in list(row):
            self._rank_of(k)
        changed = True
        while row and changed:
            changed = False
            for k in sorted(row, key=self._rank_of):
                p = self.rows.get(k)
                if p is None:
                    continue
                a, b = p[k], row[k]
                g = gcd(a, b)
                a, b = a // g, b // g
                new = {}
                for j, x in row.items():
                    new[j] = a * x
                for j, x in p.items():
                    y = new.get(j, 0) - b * x
                    if y:
                        new[j] = y
                    else:
                        new.pop(j, None)
                row = _primitive(new) if new else {}
                changed = True
                break
        return row

    def add(self, vec):
        """Insert vec; return True if it increased the rank."""
        row = self.reduce(vec)
        if not row:
            return False
        self.rows[self._pivot(row)] = row
        return True

    def __len__(self):
        return len(self.rows)

    def contains(self, vec):
        return not self.reduce(vec)


class Subspace:
    """A subspace in reduced row echelon form; ``remainder`` is the linear
    projection killing the span (coordinates off the pivots)."""

    def __init__(self, vectors=()):
        self.rows = {}
        for v in vectors:
            self.add(v)

    def remainder(self, vec):
        vec = {k: Fraction(c) for k, c in vec.items() if c}
        for p, row in self.rows.items():
            c = vec.get(p)
            if c:
                vaddto(vec, row, -c)
        return vec

    def add(self, vec):
        r = self.remainder(vec)
        if not r:
            return False
        p = min(r, key=repr)
        r = {k: c / r[p] for k, c in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                vaddto(row, r, -c)
        self.rows[p] = r
        return True

    def __len__(self):
        return len(self.rows)


def rank(vectors):
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


# ---------------------------------------------------------------------------
# rational elimination with bookkeeping (kernels, solving)

def _reduce_tracked(pivots, vec, combo):
    """Reduce (vec, combo) against pivots {label: (row, combo)} with
    rational arithmetic; row pivots are normalised to 1."""
    vec = dict(vec)
    combo = dict(combo)
    progress = True
    while progress and vec:
        progress = False
        for k in list(vec):
            if k in pivots:
                prow, pcombo = pivots[k]
                c = vec[k]
                vaddto(vec, prow, -c)
                vaddto(combo, pcombo, -c)
                progress = True
                break
    return vec, combo


def kernel(columns):
    """
    Basis of the kernel of the linear map sending the i-th coordinate to
    ``columns[i]`` (a sparse vector).  Returned vectors are dicts keyed by
    column index.
    """
    pivots = {}
    out = []
    for i, col in enumerate(columns):
        vec, combo = _reduce_tracked(pivots, col, {i: Fraction(1)})
        if not vec:
            out.append(combo)
            continue
        k = next(iter(vec))
        c = vec[k]
        vec = vscale(vec, 1 / Fraction(c))
        combo = vscale(combo, 1 / Fraction(c))
        # keep pivots fully reduced so that _reduce_tracked terminates fast
        for pk, (prow, pcombo) in list(pivots.items()):
            if k in prow:
                a = prow[k]
                pivots[pk] = (vadd(prow, vec, -a), vadd(pcombo, combo, -a))
        pivots[k] = (vec, combo)
    return out


class Solver:
    """Eliminate a list of columns once, then solve for many targets."""

    def __init__(self, columns):
        self.pivots = {}
        for i, col in enumerate(columns):
            vec, combo = _reduce_tracked(self.pivots, col, {i: Fraction(1)})
            if not vec:
                continue
            k = next(iter(vec))
            c = Fraction(vec[k])
            vec = vscale(vec, 1 / c)
            combo = vscale(combo, 1 / c)
            for pk, (prow, pcombo) in list(self.pivots.items()):
                if k in prow:
                    a = prow[k]
                    self.pivots[pk] = (vadd(prow, vec, -a), vadd(pcombo, combo, -a))
            self.pivots[k] = (vec, combo)

    def __call__(self, target):
        """Coefficients x with sum x_i columns[i] == target, or None."""
        rem, combo = _reduce_tracked(self.pivots, target, {})
        if rem:
            return None
        return vscale(combo, -1)


def solve(columns, target):
    """Find coefficients x (dict index -> Fraction) with sum x_i columns[i]
    == target, or None if target is not in the span."""
    return Solver(columns)(target)


def project_out(vectors, keep):
    """Restrict vectors to the coordinates satisfying ``keep(label)``."""
    return [{k: x for k, x in v.items() if keep(k)} for v in vectors]


def matrix_to_vectors(rows):
    """Columns of a dense list-of-rows matrix, as sparse vectors keyed by
    row index."""
    if not rows:
        return []
    ncols = len(rows[0])
    cols = []
    for j in range(ncols):
        cols.append({i: Q(r[j]) for i, r in enumerate(rows) if r[j]})
    return cols
