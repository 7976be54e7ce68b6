"""
Built-in example structures, stored as JSON documents next to this module.

    heisenberg   dual of the 3-dim Heisenberg algebra, comodule "std"
    sl2dual      dual of sl_2 (not conilpotent)
    g1, g2, g3   two-dim acyclic abelian x -> dx with |x| = -1, 0, 1;
                 g1 carries the characters k_a (dx coacts by a)
    odd1         one odd generator in degree 1
    mixed2       abelian, one even and one odd generator
    nilpotent2   x in degree 1, y in degree 2, delta(y) = x (x) x
    affine2      dual of the two-dim non-abelian algebra [x, y] = y
    line         one-dim degree 0, comodules "jordan" and "identity"
    ext1, ext2   exterior algebras on one and two degree-1 generators
    dualnum2     k[u]/(u^2), |u| = 2
    ground       the ground field
    twists       sample MC twists over k[z,dz] and the exterior algebra
"""

import os
from functools import lru_cache

_DIR = os.path.join(os.path.dirname(__file__), "catalog")


def names():
    return sorted(f[:-5] for f in os.listdir(_DIR) if f.endswith(".json"))


def catalog_path(name):
    base = os.path.basename(name)
    if base.endswith(".json"):
        base = base[:-5]
    path = os.path.join(_DIR, base + ".json")
    return path if os.path.exists(path) else None


@lru_cache(maxsize=None)
def _file_docs(base):
    from .io import parse_text
    with open(os.path.join(_DIR, base + ".json")) as fh:
        return tuple(parse_text(fh.read(), base + ".json"))


def library(name):
    from .io import Library
    path = catalog_path(name)
    if path is None:
        raise KeyError("no catalog entry %r" % name)
    return Library(_file_docs(os.path.basename(path)[:-5]))


def catalog_document(name):
    """A catalog document by name: first the file of that name, then a
    unique match anywhere in the catalog."""
    if catalog_path(name):
        for doc in _file_docs(name):
            if doc["name"] == name:
                return doc
    hits = [doc for base in names() for doc in _file_docs(base) if doc["name"] == name]
    return hits[0] if len(hits) == 1 else None


def coalgebra(name):
    return library(name).coalgebra(name)


def comodule(file, name):
    return library(file).comodule(name)


def algebra(name):
    return library(name).algebra(name)


CONILPOTENT = ("heisenberg", "g1", "g2", "g3", "odd1", "mixed2", "nilpotent2", "line")
NOT_CONILPOTENT = ("sl2dual", "affine2")
COALGEBRAS = CONILPOTENT + NOT_CONILPOTENT
ALGEBRAS = ("ext1", "ext2", "dualnum2", "ground")
