"""
JSON input documents.

A file holds one document, a JSON array of documents, or one document per
line.  Scalars are integers or "p/q" strings; floats are rejected.

    {"kind": "lie-coalgebra", "name": "heisenberg",
     "basis": [{"label": "x", "degree": 0}, ...],
     "differential": [{"from": "x", "to": "dx", "coeff": "1"}],
     "cobracket": [{"from": "z", "to": ["x", "y"], "coeff": "1"}, ...],
     "weights": {"x": 1, ...}}                          (optional)

    {"kind": "comodule", "name": "std", "coalgebra": "heisenberg",
     "basis": [...], "differential": [...],
     "coaction": [{"from": "v", "to": ["x", "u"], "coeff": "1"}]}

    {"kind": "algebra", "name": "ext2", "commutative": true,
     "basis": [...],                   (basis of the augmentation ideal)
     "differential": [...],
     "product": [{"from": ["x1", "x2"], "to": "x1x2", "coeff": "1"}]}

    {"kind": "mc-twist", "name": "w2", "host": "derham",
     "form": [[["0", "1"]]]}   (matrix of polynomial coefficient lists, P(z) dz)
    {"kind": "mc-twist", "name": "r", "host": "exterior",
     "matrix": [["1"]]}        (R with xi = R x over the exterior algebra)

Comodules refer to their coalgebra by name; names resolve inside the same
file first and then in the built-in catalog.
"""

import json
import os
from fractions import Fraction

from .gradecore import GradedSpace, StructureError
from .linalg import Q

KINDS = ("lie-coalgebra", "comodule", "algebra", "mc-twist")


class InputError(ValueError):
    """Malformed input document (exit status 2 in the command line tool)."""


def scalar(x, where="coefficient"):
    if isinstance(x, float):
        raise InputError("%s: floating point value %r; use an integer or \"p/q\"" % (where, x))
    try:
        return Q(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError("%s: %s" % (where, exc)) from None


def fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


# ---------------------------------------------------------------------------
# reading files

def _no_float(s):
    raise InputError("floating point literal %s; use an integer or \"p/q\"" % s)


def parse_text(text, source="<input>"):
    """Return the list of documents in a JSON / JSON-array / JSON-lines text."""
    stripped = text.strip()
    if not stripped:
        raise InputError("%s: empty input" % source)
    try:
        data = json.loads(stripped, parse_float=_no_float)
        docs = data if isinstance(data, list) else [data]
    except json.JSONDecodeError as first:
        docs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                docs.append(json.loads(line, parse_float=_no_float))
            except json.JSONDecodeError as exc:
                if lineno == 1 and not docs:
                    exc = first
                raise InputError("%s: line %d: invalid JSON (%s)" % (source, exc.lineno if exc is first else lineno, exc.msg)) from None
    for i, doc in enumerate(docs):
        if not isinstance(doc, dict):
            raise InputError("%s: document %d is not an object" % (source, i + 1))
        if doc.get("kind") not in KINDS:
            raise InputError("%s: document %d: field 'kind' must be one of %s"
                             % (source, i + 1, ", ".join(KINDS)))
        if not isinstance(doc.get("name"), str):
            raise InputError("%s: document %d: missing string field 'name'" % (source, i + 1))
    return docs


def read_documents(path):
    if not os.path.exists(path):
        from .catalog import catalog_path
        alt = catalog_path(path)
        if alt is None:
            raise InputError("cannot read %s: no such file or catalog entry" % path)
        path = alt
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None
    return parse_text(text, os.path.basename(path))


class Library:
    """Documents indexed by name, with the catalog as a fallback."""

    def __init__(self, docs=()):
        self.docs = {}
        self.order = []
        for doc in docs:
            self.add(doc)
        self._built = {}

    def add(self, doc):
        name = doc["name"]
        if name in self.docs:
            raise InputError("duplicate document name %r" % name)
        self.docs[name] = doc
        self.order.append(name)

    def find(self, name, kind=None):
        doc = self.docs.get(name)
        if doc is None:
            from .catalog import catalog_document
            doc = catalog_document(name)
        if doc is None:
            raise InputError("reference to unknown document %r" % name)
        if kind is not None and doc["kind"] != kind:
            raise InputError("document %r is a %s, expected %s" % (name, doc["kind"], kind))
        return doc

    def first(self, kind):
        for name in self.order:
            if self.docs[name]["kind"] == kind:
                return self.docs[name]
        raise InputError("no %s document in input" % kind)

    def coalgebra(self, name=None):
        doc = self.first("lie-coalgebra") if name is None else self.find(name, "lie-coalgebra")
        key = ("g", doc["name"])
        if key not in self._built:
            self._built[key] = build_coalgebra(doc)
        return self._built[key]

    def comodule(self, name, g=None):
        from .liecoalg import hom_comodule
        if name.startswith("hom(") and name.endswith(")") and name not in self.docs:
            parts = name[4:-1].split(",")
            if len(parts) != 2:
                raise InputError("malformed module reference %r" % name)
            a = self.comodule(parts[0].strip(), g)
            b = self.comodule(parts[1].strip(), g)
            return hom_comodule(a, b)
        doc = self.find(name, "comodule")
        if g is None:
            g = self.coalgebra(doc.get("coalgebra"))
        return build_comodule(doc, g)

    def algebra(self, name=None):
        doc = self.first("algebra") if name is None else self.find(name, "algebra")
        return build_algebra(doc)


# ---------------------------------------------------------------------------
# building objects

def _ctx(doc, field, i=None):
    where = "document %r, field %s" % (doc.get("name"), field)
    return where if i is None else "%s[%d]" % (where, i)


def _basis(doc):
    items = doc.get("basis")
    if not isinstance(items, list):
        raise InputError("%s: expected a list" % _ctx(doc, "basis"))
    pairs = []
    weights = {}
    for i, it in enumerate(items):
        if not isinstance(it, dict) or "label" not in it or "degree" not in it:
            raise InputError("%s: entries need 'label' and 'degree'" % _ctx(doc, "basis", i))
        deg = it["degree"]
        if not isinstance(deg, int) or isinstance(deg, bool):
            raise InputError("%s: degree must be an integer" % _ctx(doc, "basis", i))
        if not isinstance(it["label"], str):
            raise InputError("%s: label must be a string" % _ctx(doc, "basis", i))
        pairs.append((it["label"], deg))
        if "weight" in it:
            weights[it["label"]] = it["weight"]
    try:
        space = GradedSpace.from_pairs(pairs)
    except StructureError as exc:
        raise InputError("%s: %s" % (_ctx(doc, "basis"), exc)) from None
    return space, weights


def _triplets(doc, field, arity_from, arity_to, known_from, known_to):
    out = {}
    for i, t in enumerate(doc.get(field) or []):
        where = _ctx(doc, field, i)
        if not isinstance(t, dict) or not {"from", "to", "coeff"} <= set(t):
            raise InputError("%s: entries need 'from', 'to' and 'coeff'" % where)
        src, tgt = t["from"], t["to"]
        src = tuple(src) if arity_from == 2 else src
        tgt = tuple(tgt) if arity_to == 2 else tgt
        if arity_from == 2 and (not isinstance(t["from"], list) or len(src) != 2):
            raise InputError("%s: 'from' must be a pair of labels" % where)
        if arity_to == 2 and (not isinstance(t["to"], list) or len(tgt) != 2):
            raise InputError("%s: 'to' must be a pair of labels" % where)
        for lab, known in zip(src if arity_from == 2 else (src,), known_from):
            if lab not in known:
                raise InputError("%s: unknown label %r" % (where, lab))
        for lab, known in zip(tgt if arity_to == 2 else (tgt,), known_to):
            if lab not in known:
                raise InputError("%s: unknown label %r" % (where, lab))
        c = scalar(t["coeff"], where)
        v = out.setdefault(src, {})
        v[tgt] = v.get(tgt, 0) + c
    return out


def build_coalgebra(doc):
    from .liecoalg import DgLieCoalgebra
    space, weights = _basis(doc)
    d = _triplets(doc, "differential", 1, 1, [space], [space])
    cob = _triplets(doc, "cobracket", 1, 2, [space], [space, space])
    weights = doc.get("weights") or weights or None
    if weights is not None:
        missing = [lab for lab in space.labels() if lab not in weights]
        if missing:
            raise InputError("%s: no weight for %r" % (_ctx(doc, "weights"), missing[0]))
    try:
        return DgLieCoalgebra(space, d, cob, weights=weights, name=doc["name"])
    except StructureError as exc:
        raise InputError("document %r: %s" % (doc["name"], exc)) from None


def build_comodule(doc, g):
    from .liecoalg import DgComodule
    space, weights = _basis(doc)
    d = _triplets(doc, "differential", 1, 1, [space], [space])
    co = _triplets(doc, "coaction", 1, 2, [space], [g.space, space])
    try:
        return DgComodule(g, space, d, co, weights=weights or None, name=doc["name"])
    except StructureError as exc:
        raise InputError("document %r: %s" % (doc["name"], exc)) from None


def build_algebra(doc):
    from .barcobar import AugmentedDgAlgebra
    space, weights = _basis(doc)
    d = _triplets(doc, "differential", 1, 1, [space], [space])
    prod = _triplets(doc, "product", 2, 1, [space, space], [space])
    try:
        return AugmentedDgAlgebra(space, prod, d, weights=doc.get("weights") or weights or None,
                                  commutative=bool(doc.get("commutative", False)),
                                  name=doc["name"])
    except StructureError as exc:
        raise InputError("document %r: %s" % (doc["name"], exc)) from None


def build_twist(doc):
    """Return ("derham", P) with P a matrix of coefficient lists, or
    ("exterior", R) with R a rational matrix."""
    host = doc.get("host")
    if host == "derham":
        form = doc.get("form")
        if not _is_matrix(form):
            raise InputError("%s: expected a square matrix of coefficient lists" % _ctx(doc, "form"))
        P = [[[scalar(c, _ctx(doc, "form")) for c in entry] for entry in row] for row in form]
        return "derham", P
    if host == "exterior":
        m = doc.get("matrix")
        if not _is_matrix(m):
            raise InputError("%s: expected a square matrix" % _ctx(doc, "matrix"))
        return "exterior", [[scalar(c, _ctx(doc, "matrix")) for c in row] for row in m]
    raise InputError("%s: host must be 'derham' or 'exterior'" % _ctx(doc, "host"))


def _is_matrix(m):
    return (isinstance(m, list) and m and all(isinstance(r, list) and len(r) == len(m) for r in m))


def parse_matrix(text):
    """Parse a matrix literal such as "[[0,1],[0,0]]" or "[[1/2]]"."""
    try:
        data = json.loads(_quote_rationals(text), parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise InputError("malformed matrix %r: %s" % (text, exc.msg)) from None
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputError("malformed matrix %r" % text)
    n = len(data)
    if any(len(r) != n for r in data):
        raise InputError("matrix %r is not square" % text)
    return [[scalar(c, "matrix entry") for c in r] for r in data]


def _quote_rationals(text):
    import re
    return re.sub(r"(-?\d+/\d+)", r'"\1"', text)


# ---------------------------------------------------------------------------
# writing

def dump_coalgebra(g):
    doc = {"kind": "lie-coalgebra", "name": g.name,
           "basis": [{"label": label_str(lab), "degree": g.degree(lab)} for lab in g.labels]}
    doc["differential"] = [{"from": label_str(k), "to": label_str(j), "coeff": fmt(c)}
                           for k, v in g.d.items() for j, c in v.items()]
    doc["cobracket"] = [{"from": label_str(k), "to": [label_str(a), label_str(b)], "coeff": fmt(c)}
                        for k, v in g.cobracket.items() for (a, b), c in v.items()]
    if g.weights:
        doc["weights"] = {label_str(k): w for k, w in g.weights.items()}
    return doc


def label_str(lab):
    if isinstance(lab, str):
        return lab
    if isinstance(lab, tuple) and len(lab) == 2 and lab[0] in ("L", "S"):
        word = ".".join(str(a) for a in lab[1])
        return word if lab[0] == "L" else "[%s,%s]" % (word, word)
    return str(lab)


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True)
