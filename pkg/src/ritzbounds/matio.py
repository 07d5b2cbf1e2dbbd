"""Plain-text matrix format.

::

    # optional comment lines
    rows cols field          (field is ``real`` or ``complex``)
    a11 a12 ...              (real: one number per entry)
    re im re im ...          (complex: two numbers per entry)

Numbers are written with ``repr`` so a write/read round trip is exact.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import MatrixFormatError


def parse_matrix(text: str) -> np.ndarray:
    header = None
    rows: list[list[float]] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) != 3:
                raise MatrixFormatError("header must be 'rows cols field'", lineno)
            try:
                nr, nc = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise MatrixFormatError(f"bad dimensions {tokens[:2]}", lineno) from None
            field = tokens[2].lower()
            if field not in ("real", "complex"):
                raise MatrixFormatError(f"field must be real or complex, got {tokens[2]!r}", lineno)
            if nr < 1 or nc < 1:
                raise MatrixFormatError("dimensions must be positive", lineno)
            header = (nr, nc, field)
            continue
        nr, nc, field = header
        if len(rows) == nr:
            raise MatrixFormatError(f"more than {nr} data rows", lineno)
        want = nc if field == "real" else 2 * nc
        if len(tokens) != want:
            raise MatrixFormatError(f"expected {want} numbers, got {len(tokens)}", lineno)
        try:
            vals = [float(t) for t in tokens]
        except ValueError as exc:
            raise MatrixFormatError(str(exc), lineno) from None
        if not all(np.isfinite(vals)):
            raise MatrixFormatError("non-finite entry", lineno)
        rows.append(vals)
    if header is None:
        raise MatrixFormatError("missing header", max(lineno, 1))
    nr, nc, field = header
    if len(rows) != nr:
        raise MatrixFormatError(f"expected {nr} data rows, found {len(rows)}", lineno)
    data = np.array(rows, dtype=float)
    if field == "real":
        return data.astype(np.complex128)
    return data[:, 0::2] + 1j * data[:, 1::2]


def format_matrix(m, field: str | None = None, comment: str | None = None) -> str:
    m = np.atleast_2d(np.asarray(m))
    if field is None:
        field = "real" if np.all(np.imag(m) == 0) else "complex"
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{m.shape[0]} {m.shape[1]} {field}")
    for row in m:
        if field == "real":
            out.append(" ".join(repr(float(v.real)) for v in row))
        else:
            out.append(" ".join(f"{float(v.real)!r} {float(v.imag)!r}" for v in row))
    return "\n".join(out) + "\n"


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, m, field=None, comment=None) -> None:
    Path(path).write_text(format_matrix(m, field, comment))
