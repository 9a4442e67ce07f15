"""JSON and CSV encodings.  Exact scalars are always strings such as ``"-3/2"``."""

from __future__ import annotations

import csv
import io
import json

from .combinatorics import ArrangementParams, hyperplane_pairs
from .fox import GroupRingElement, LaurentPoly
from .matrix import Matrix
from .scalars import format_scalar, to_rational


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":")) + "\n"


def matrix_to_json(M: Matrix, n: int, ell: int, q: int) -> dict:
    """Sparse, 0-based; entries in row-major order."""
    return {
        "n": n,
        "ell": ell,
        "q": q,
        "rows": M.nrows,
        "cols": M.ncols,
        "entries": [[r, c, format_scalar(v)] for r, c, v in M.items()],
    }


def matrix_from_json(data) -> tuple[dict, Matrix]:
    if isinstance(data, str):
        data = json.loads(data)
    M = Matrix(data["rows"], data["cols"])
    for r, c, v in data["entries"]:
        M[r, c] = to_rational(v)
    meta = {k: data[k] for k in ("n", "ell", "q")}
    return meta, M


def _poly_terms(p: LaurentPoly) -> list:
    return [[format_scalar(c), list(e)] for e, c in sorted(p.terms.items())]


def _word_terms(x: GroupRingElement) -> list:
    return [[format_scalar(c), [list(l) for l in w]] for w, c in sorted(x.terms.items())]


def symbolic_matrix_to_json(M: Matrix, n: int, ell: int, q: int) -> dict:
    """Laurent entries as ``[coeff, exponents]`` lists, group-ring entries as
    ``[coeff, [[i, j, exp], ...]]`` word lists."""
    out = matrix_to_json(Matrix(M.nrows, M.ncols), n, ell, q)
    entries = []
    for r, c, v in M.items():
        terms = _poly_terms(v) if isinstance(v, LaurentPoly) else _word_terms(v)
        entries.append([r, c, terms])
    out["entries"] = entries
    return out


def group_matrix_from_json(data) -> Matrix:
    if isinstance(data, str):
        data = json.loads(data)
    M = Matrix(data["rows"], data["cols"])
    for r, c, terms in data["entries"]:
        M[r, c] = GroupRingElement(
            {tuple(tuple(l) for l in w): int(to_rational(coeff)) for coeff, w in terms}
        )
    return M


def laurent_matrix_from_json(data, nvars: int) -> Matrix:
    if isinstance(data, str):
        data = json.loads(data)
    M = Matrix(data["rows"], data["cols"])
    for r, c, terms in data["entries"]:
        M[r, c] = LaurentPoly(nvars, {tuple(e): to_rational(coeff) for coeff, e in terms})
    return M


def betti_from_json(data) -> dict:
    if isinstance(data, str):
        data = json.loads(data)
    return {"dims": list(data["dims"]), "betti": list(data["betti"]), "euler": data["euler"], "provenance": data["provenance"]}


def scan_header(params: ArrangementParams) -> list[str]:
    return [f"lambda_{i}_{j}" for i, j in hyperplane_pairs(params)] + ["k", "m", "member", "b_k"]


def scan_to_csv(params: ArrangementParams, k: int, m: int, records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(scan_header(params))
    for rec in records:
        w.writerow([format_scalar(v) for v in rec.lam] + [k, m, "true" if rec.member else "false", rec.betti[k]])
    return buf.getvalue()


def scan_from_csv(text: str) -> tuple[list[str], list[dict]]:
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    nlam = len(header) - 4
    out = []
    for row in body:
        out.append({
            "lambda": [to_rational(v) for v in row[:nlam]],
            "k": int(row[nlam]),
            "m": int(row[nlam + 1]),
            "member": row[nlam + 2] == "true",
            "b_k": int(row[nlam + 3]),
        })
    return header, out
