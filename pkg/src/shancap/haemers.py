"""Rank certificates from matrices whose zeros cover the non-edges.

A matrix fits a graph when every diagonal entry is nonzero and every
off-diagonal entry between NON-adjacent vertices is zero.  The submatrix
indexed by an independent set is then diagonal with nonzero diagonal, so
the matrix rank bounds the independence number from above; ranks multiply
under tensor products, which extends the bound to all strong powers.
The opposite zero-on-adjacent convention does not support this argument,
so the convention in force is stated in every certificate.

Ranks are computed exactly: fraction-free (Bareiss) elimination over the
rationals, straight elimination over GF(p).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

CONVENTION = "zero_on_nonadjacent"


class FittingError(ValueError):
    pass


@dataclass(frozen=True)
class FittingMatrix:
    entries: tuple  # tuple of row tuples; Fraction over Q, int over GF(p)
    field: object = "Q"  # "Q" or a prime int p

    def __post_init__(self):
        n = len(self.entries)
        if n == 0 or any(len(row) != n for row in self.entries):
            raise FittingError("matrix must be square and nonempty")
        if self.field != "Q":
            p = self.field
            if not (isinstance(p, int) and p >= 2):
                raise FittingError("field must be 'Q' or a prime modulus")
            for row in self.entries:
                for x in row:
                    if not isinstance(x, int) or not 0 <= x < p:
                        raise FittingError(f"entry {x!r} not reduced mod {p}")

    @property
    def n(self):
        return len(self.entries)


def fitting_matrix(rows, field="Q"):
    if field == "Q":
        entries = tuple(tuple(Fraction(x) for x in row) for row in rows)
    else:
        p = field
        entries = tuple(tuple(int(x) % p for x in row) for row in rows)
    return FittingMatrix(entries, field)


@dataclass(frozen=True)
class FittingReport:
    fits: bool
    violation: object  # None, or (kind, position)
    convention: str = CONVENTION

    def __bool__(self):
        return self.fits


def verify_fitting(B, G):
    """First violation wins: a zero diagonal entry, or a nonzero entry at a
    non-adjacent off-diagonal position."""
    if B.n != G.n:
        raise FittingError(f"matrix is {B.n}x{B.n} but the graph has {G.n} vertices")
    for i in range(B.n):
        if B.entries[i][i] == 0:
            return FittingReport(False, ("zero_diagonal", i))
        row = G.adj[i]
        for j in range(B.n):
            if j == i:
                continue
            if not row >> j & 1 and B.entries[i][j] != 0:
                return FittingReport(False, ("nonzero_on_nonadjacent", (i, j)))
    return FittingReport(True, None)


def _rank_bareiss(rows):
    """Fraction-free elimination; rows are cleared to integers first (row
    scaling by positive rationals leaves the rank alone)."""
    mat = []
    for row in rows:
        scale = lcm(*(f.denominator for f in row)) if row else 1
        mat.append([int(f * scale) for f in row])
    n = len(mat)
    m = len(mat[0]) if mat else 0
    rank = 0
    prev = 1
    row_i = 0
    for col in range(m):
        pivot = -1
        for r in range(row_i, n):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot < 0:
            continue
        mat[row_i], mat[pivot] = mat[pivot], mat[row_i]
        pv = mat[row_i][col]
        for r in range(row_i + 1, n):
            factor = mat[r][col]
            for c in range(col, m):
                mat[r][c] = (pv * mat[r][c] - factor * mat[row_i][c]) // prev
        prev = pv
        rank += 1
        row_i += 1
        if row_i == n:
            break
    return rank


def _rank_gfp(rows, p):
    mat = [list(row) for row in rows]
    n = len(mat)
    m = len(mat[0]) if mat else 0
    rank = 0
    row_i = 0
    for col in range(m):
        pivot = -1
        for r in range(row_i, n):
            if mat[r][col] % p != 0:
                pivot = r
                break
        if pivot < 0:
            continue
        mat[row_i], mat[pivot] = mat[pivot], mat[row_i]
        inv = pow(mat[row_i][col], -1, p)
        mat[row_i] = [(x * inv) % p for x in mat[row_i]]
        for r in range(row_i + 1, n):
            factor = mat[r][col] % p
            if factor:
                mat[r] = [(x - factor * y) % p
                          for x, y in zip(mat[r], mat[row_i])]
        rank += 1
        row_i += 1
        if row_i == n:
            break
    return rank


def matrix_rank(B):
    if B.field == "Q":
        return _rank_bareiss(B.entries)
    return _rank_gfp(B.entries, B.field)


def haemers_certificate(G, B):
    """Rank of a verified fitting matrix: a sound upper bound on the
    independence number of G, and rank**k bounds the k-th strong power."""
    report = verify_fitting(B, G)
    if not report.fits:
        raise FittingError(f"matrix does not fit the graph: {report.violation}")
    return matrix_rank(B)


def identity_certificate(G, field="Q"):
    n = G.n
    if field == "Q":
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    else:
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
    return FittingMatrix(tuple(tuple(r) for r in rows), field)


def adjacency_certificate(G, field="Q"):
    """Adjacency plus identity: zeros exactly on the non-adjacent pairs."""
    n = G.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            val = 1 if (i == j or G.adj[i] >> j & 1) else 0
            row.append(Fraction(val) if field == "Q" else val % field)
        rows.append(tuple(row))
    return FittingMatrix(tuple(rows), field)


def kron(B, C):
    """Tensor product over a shared field; ranks multiply."""
    if B.field != C.field:
        raise FittingError("tensor factors live over different fields")
    nb, nc = B.n, C.n
    rows = []
    for i in range(nb):
        for k in range(nc):
            row = []
            for j in range(nb):
                for l in range(nc):
                    val = B.entries[i][j] * C.entries[k][l]
                    if B.field != "Q":
                        val %= B.field
                    row.append(val)
            rows.append(tuple(row))
    return FittingMatrix(tuple(rows), B.field)


# -- JSON -------------------------------------------------------------------


def fitting_to_json(B):
    if B.field == "Q":
        doc = {"field": "Q",
               "entries": [[str(x) for x in row] for row in B.entries]}
    else:
        doc = {"field": f"GF({B.field})",
               "entries": [[int(x) for x in row] for row in B.entries]}
    return json.dumps(doc, sort_keys=True)


def fitting_from_json(text):
    doc = json.loads(text)
    try:
        field = doc["field"]
        if field == "Q":
            rows = [[Fraction(x) for x in row] for row in doc["entries"]]
            return FittingMatrix(tuple(tuple(r) for r in rows), "Q")
        if field.startswith("GF(") and field.endswith(")"):
            p = int(field[3:-1])
            rows = [[int(x) % p for x in row] for row in doc["entries"]]
            return FittingMatrix(tuple(tuple(r) for r in rows), p)
    except (KeyError, TypeError, ValueError) as exc:
        raise FittingError(f"malformed matrix JSON: {exc}")
    raise FittingError(f"unknown field {doc.get('field')!r}")
