"""Bundled example data: builders and the packaged text files for them.

The text files under fixtures/ are generated from the builders by
`format_datum` and kept byte-identical to them; the test suite enforces the
round trip.  Set ROOTFOLD_FIXTURES to a directory to load files from there
instead of the packaged copies.
"""

from __future__ import annotations

import os
from fractions import Fraction
from importlib import resources

from .datum import SymmetricRootDatum, build_doubled, build_split
from .datumio import parse_datum
from .linalg import mat, vec

_A2_GRAM = ((2, -1), (-1, 2))
_A2_ROOTS = ((2, -1), (-1, 2), (1, 1), (-2, 1), (1, -2), (-1, -1))


def _rows(rows) -> tuple:
    return mat([[Fraction(x) for x in row] for row in rows])


def doubled_a1() -> SymmetricRootDatum:
    return build_doubled(_rows([[1]]), (vec([1]), vec([-1])), name="doubled_a1")


def doubled_a2() -> SymmetricRootDatum:
    return build_doubled(_rows(_A2_GRAM), tuple(vec(r) for r in _A2_ROOTS), name="doubled_a2")


def split_a1() -> SymmetricRootDatum:
    return build_split(_rows([[1]]), (vec([1]), vec([-1])), name="split_a1")


def split_bc1() -> SymmetricRootDatum:
    roots = (vec([1]), vec([-1]), vec([2]), vec([-2]))
    mult = {vec([1]): 2, vec([-1]): 2, vec([2]): 1, vec([-2]): 1}
    return build_split(_rows([[1]]), roots, mult=mult, name="split_bc1")


def split_a2_flags() -> SymmetricRootDatum:
    roots = tuple(vec(r) for r in _A2_ROOTS)
    trivial = (vec([2, -1]), vec([-2, 1]))
    return build_split(_rows(_A2_GRAM), roots, st_trivial=trivial, name="split_a2_flags")


_BUILDERS = {
    "doubled_a1": doubled_a1,
    "doubled_a2": doubled_a2,
    "split_a1": split_a1,
    "split_bc1": split_bc1,
    "split_a2_flags": split_a2_flags,
}


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILDERS))


def build_fixture(name: str) -> SymmetricRootDatum:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}") from None


def load_fixture(name: str) -> SymmetricRootDatum:
    """Parse the packaged text file for a fixture (or a file from the
    ROOTFOLD_FIXTURES directory when that variable is set)."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    override = os.environ.get("ROOTFOLD_FIXTURES")
    if override:
        with open(os.path.join(override, f"{name}.datum"), encoding="utf-8") as fh:
            return parse_datum(fh.read())
    text = resources.files("rootfold").joinpath(f"fixtures/{name}.datum").read_text("utf-8")
    return parse_datum(text)
