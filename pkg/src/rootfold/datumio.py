"""Text file format for symmetric root data.

Format, version 1 (rationals written as `p/q` or integers, comments with `#`):

    rootfold-datum 1
    name <identifier>            # optional
    dim <n>
    gram                         # n rows of n rationals
    ...
    sigma                        # n rows of n rationals
    ...
    roots                        # one covector row per root
    ...
    mult                         # whitespace-separated, aligned with roots
    ...
    st_trivial                   # indices into the roots section; may be empty
    ...
    whh_generators               # k x k matrices row by row, k = split rank
    ...

Sections may appear in any order after the header; `roots` must precede
`mult` and `st_trivial`.  The split rank k is derived from `sigma`.
"""

from __future__ import annotations

from pathlib import Path

from .datum import SymmetricRootDatum
from .linalg import format_fraction, parse_fraction, vec

_KEYWORDS = {"name", "dim", "gram", "sigma", "roots", "mult", "st_trivial", "whh_generators"}

HEADER = "rootfold-datum 1"


def parse_datum(text: str) -> SymmetricRootDatum:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != HEADER:
        raise ValueError(f"missing header line {HEADER!r}")
    sections: dict[str, list[str]] = {}
    current: list[str] | None = None
    for line in lines[1:]:
        head = line.split()[0]
        if head in _KEYWORDS:
            if head in sections:
                raise ValueError(f"duplicate section {head!r}")
            current = sections.setdefault(head, [])
            rest = line[len(head) :].strip()
            if rest:
                current.append(rest)
        else:
            if current is None:
                raise ValueError(f"content before any section: {line!r}")
            current.append(line)
    for required in ("dim", "gram", "sigma", "roots", "mult"):
        if required not in sections:
            raise ValueError(f"missing section {required!r}")

    name = sections.get("name", [""])[0] if sections.get("name") else ""
    dim = int(sections["dim"][0])
    gram = _parse_matrix(sections["gram"], dim, dim, "gram")
    sigma = _parse_matrix(sections["sigma"], dim, dim, "sigma")
    roots = [vec(parse_fraction(t) for t in row.split()) for row in sections["roots"]]
    for r in roots:
        if len(r) != dim:
            raise ValueError(f"root of wrong length: {r}")
    mult_values = [int(t) for row in sections["mult"] for t in row.split()]
    if len(mult_values) != len(roots):
        raise ValueError("mult count does not match the number of roots")
    mult = dict(zip(roots, mult_values))
    trivial_idx = [int(t) for row in sections.get("st_trivial", []) for t in row.split()]
    for i in trivial_idx:
        if not 0 <= i < len(roots):
            raise ValueError(f"st_trivial index {i} out of range")
    st_trivial = frozenset(roots[i] for i in trivial_idx)

    datum = SymmetricRootDatum(
        dim=dim,
        gram=gram,
        sigma=sigma,
        roots=tuple(roots),
        mult=mult,
        st_trivial=st_trivial,
        whh_generators=(),
        name=name,
    )
    k = datum.dim_q
    whh_rows = [
        tuple(parse_fraction(t) for t in row.split())
        for row in sections.get("whh_generators", [])
    ]
    if whh_rows:
        if k == 0:
            raise ValueError("whh_generators given but the split part is trivial")
        if len(whh_rows) % k != 0 or any(len(r) != k for r in whh_rows):
            raise ValueError(f"whh_generators rows do not form {k}x{k} matrices")
        datum.whh_generators = tuple(
            tuple(whh_rows[i : i + k]) for i in range(0, len(whh_rows), k)
        )
    return datum


def _parse_matrix(rows: list[str], nrows: int, ncols: int, label: str):
    if len(rows) != nrows:
        raise ValueError(f"{label}: expected {nrows} rows, got {len(rows)}")
    out = []
    for row in rows:
        entries = tuple(parse_fraction(t) for t in row.split())
        if len(entries) != ncols:
            raise ValueError(f"{label}: row of wrong length")
        out.append(entries)
    return tuple(out)


def format_datum(datum: SymmetricRootDatum) -> str:
    out = [HEADER]
    if datum.name:
        out.append(f"name {datum.name}")
    out.append(f"dim {datum.dim}")
    out.append("gram")
    out.extend(_fmt_row(r) for r in datum.gram)
    out.append("sigma")
    out.extend(_fmt_row(r) for r in datum.sigma)
    out.append("roots")
    out.extend(_fmt_row(r) for r in datum.roots)
    out.append("mult")
    out.append(" ".join(str(datum.mult[r]) for r in datum.roots))
    out.append("st_trivial")
    idx = sorted(datum.roots.index(r) for r in datum.st_trivial)
    if idx:
        out.append(" ".join(str(i) for i in idx))
    out.append("whh_generators")
    for g in datum.whh_generators:
        out.extend(_fmt_row(r) for r in g)
    return "\n".join(out) + "\n"


def _fmt_row(row) -> str:
    return " ".join(format_fraction(x) for x in row)


def load_datum(path: str | Path) -> SymmetricRootDatum:
    return parse_datum(Path(path).read_text())


def save_datum(datum: SymmetricRootDatum, path: str | Path) -> None:
    Path(path).write_text(format_datum(datum))
