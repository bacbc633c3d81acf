"""Umbrella certificates: per-vertex states orthogonal across non-edges.

A vector umbrella assigns a unit state to every vertex plus a unit handle;
a density umbrella uses symmetric PSD trace-1 matrices with the
Hilbert-Schmidt inner product instead.  For a verified umbrella the value
1/(smallest handle correlation) is a sound upper bound on the independence
number, and it multiplies under tensor products, so it also bounds the
capacity.  Correlation with the handle means (c.u)^2 for vector states and
tr(C A) for density states: with that pairing the rank-1 embedding of a
vector umbrella keeps the value unchanged.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_ORTHOGONALITY_TOL = 1e-9
DEFAULT_UNIT_TOL = 1e-9
DEFAULT_PSD_FLOOR = 1e-9


class UmbrellaError(ValueError):
    pass


class DensityMatrixError(UmbrellaError):
    pass


@dataclass(frozen=True)
class VectorUmbrella:
    dim: int
    handle: np.ndarray
    states: np.ndarray  # shape (n, dim)

    @property
    def n(self):
        return len(self.states)

    kind = "vector"


@dataclass(frozen=True)
class DensityUmbrella:
    dim: int
    handle: np.ndarray  # (dim, dim)
    states: np.ndarray  # (n, dim, dim)

    @property
    def n(self):
        return len(self.states)

    kind = "density"


@dataclass(frozen=True)
class UmbrellaReport:
    valid: bool
    violations: tuple
    max_orthogonality_residual: float

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class PurifyResult:
    umbrella: DensityUmbrella
    degenerate_states: tuple
    value_before: float
    value_after: float


def _dot(a, b):
    out = 0
    for x, y in zip(a, b):
        out = out + x * y
    return out


def _hs(A, B):
    out = 0
    for ra, rb in zip(A, B):
        out = out + _dot(ra, rb)
    return out


def _trace(A):
    out = 0
    for i, row in enumerate(A):
        out = out + row[i]
    return out


def handle_correlations(u):
    """Correlation of every state with the handle: (c.u)^2 for vectors,
    tr(C A) for densities."""
    if isinstance(u, VectorUmbrella):
        return [_dot(u.handle, s) ** 2 for s in u.states]
    return [_hs(u.handle, s) for s in u.states]


def umbrella_opening(u):
    """Smallest handle correlation over the states."""
    return min(handle_correlations(u))


def umbrella_value(u):
    """Reciprocal opening, scaled by the handle weight ((c.c) for vectors,
    tr C for densities).  Infinite when some state decorrelates from the
    handle, in which case the umbrella certifies nothing."""
    corr = handle_correlations(u)
    m = min(corr)
    if not m > 0:
        return math.inf
    weight = _dot(u.handle, u.handle) if isinstance(u, VectorUmbrella) else _trace(u.handle)
    val = weight / m
    return val.item() if hasattr(val, "item") else val


def odd_cycle_umbrella(n):
    """Optimal umbrella for an odd cycle, value n*cos(pi/n)/(1+cos(pi/n)).

    Built from the circulant optimizer of the dual eigenvalue program: the
    states are Fourier ribs over the non-extremal characters plus one
    constant coordinate, living in dimension n-2 (the familiar 3-d cone for
    n=5).  Orthogonality across non-adjacent pairs holds to machine
    precision by the inverse-DFT identity of the construction.
    """
    if n < 5 or n % 2 == 0:
        raise UmbrellaError("odd cycle umbrellas need odd n >= 5")
    k = (n - 1) // 2
    cos = math.cos(math.pi / n)
    y = n / (2.0 * (1.0 + cos))
    lam = 2.0 * y * cos  # the closed-form value
    ts = [t for t in range(1, k)]  # characters with nonzero weight
    dim = 2 * len(ts) + 1
    states = np.zeros((n, dim))
    for t_idx, t in enumerate(ts):
        q_t = lam + 2.0 * y * math.cos(2.0 * math.pi * t / n)
        amp = math.sqrt(2.0 * q_t / n)
        for i in range(n):
            ang = 2.0 * math.pi * t * i / n
            states[i, 2 * t_idx] = amp * math.cos(ang)
            states[i, 2 * t_idx + 1] = amp * math.sin(ang)
    states[:, -1] = 1.0
    states /= math.sqrt(lam)
    handle = np.zeros(dim)
    handle[-1] = 1.0
    return VectorUmbrella(dim, handle, states)


def trivial_umbrella(n, dim=1):
    """All states equal to the handle: valid for complete graphs, value 1."""
    handle = np.zeros(dim)
    handle[0] = 1.0
    states = np.tile(handle, (n, 1))
    return VectorUmbrella(dim, handle.copy(), states)


def verify_umbrella(u, G, orth_tol=DEFAULT_ORTHOGONALITY_TOL,
                    unit_tol=DEFAULT_UNIT_TOL, psd_floor=DEFAULT_PSD_FLOOR):
    """Check every umbrella invariant against G; lists each violation with
    its residual.  Valid umbrellas are accepted as upper-bound certificates
    by the report assembler."""
    violations = []
    if u.n != G.n:
        return UmbrellaReport(False, (("count", (u.n, G.n), 0.0),), 0.0)
    if isinstance(u, VectorUmbrella):
        if len(u.handle) != u.dim or u.states.shape[1] != u.dim:
            return UmbrellaReport(False, (("dimension", u.dim, 0.0),), 0.0)
        r = abs(_dot(u.handle, u.handle) - 1)
        if r > unit_tol:
            violations.append(("handle_norm", None, float(r)))
        for i, s in enumerate(u.states):
            r = abs(_dot(s, s) - 1)
            if r > unit_tol:
                violations.append(("state_norm", i, float(r)))
        pair = lambda a, b: _dot(u.states[a], u.states[b])
    else:
        if u.handle.shape != (u.dim, u.dim) or u.states.shape[1:] != (u.dim, u.dim):
            return UmbrellaReport(False, (("dimension", u.dim, 0.0),), 0.0)
        for name, A in [("handle", u.handle)] + [(i, s) for i, s in enumerate(u.states)]:
            problem = _density_violation(A, psd_floor, unit_tol)
            if problem:
                violations.append((f"density_{problem}", name, 0.0))
        pair = lambda a, b: _hs(u.states[a], u.states[b])
    max_resid = 0.0
    for a in range(G.n):
        row = G.adj[a]
        for b in range(a + 1, G.n):
            if row >> b & 1:
                continue
            r = abs(pair(a, b))
            max_resid = max(max_resid, float(r))
            if r > orth_tol:
                violations.append(("orthogonality", (a, b), float(r)))
    for i, corr in enumerate(handle_correlations(u)):
        if not corr > 0:
            violations.append(("handle_correlation_zero", i, float(corr)))
    return UmbrellaReport(not violations, tuple(violations), max_resid)


def _density_violation(A, psd_floor, unit_tol):
    A = np.asarray(A, dtype=float)
    if np.max(np.abs(A - A.T)) > unit_tol:
        return "not_symmetric"
    if abs(np.trace(A) - 1.0) > unit_tol:
        return "trace_not_one"
    if float(np.linalg.eigvalsh(A)[0]) < -psd_floor:
        return "not_psd"
    return None


def tensor_umbrella(u, v):
    """Umbrella for the strong product, states U(x) (x) V(y) indexed in
    product order; the value multiplies."""
    if isinstance(u, VectorUmbrella) != isinstance(v, VectorUmbrella):
        u = density_from_vector(u) if isinstance(u, VectorUmbrella) else u
        v = density_from_vector(v) if isinstance(v, VectorUmbrella) else v
    if isinstance(u, VectorUmbrella):
        states = np.stack([np.kron(su, sv) for su in u.states for sv in v.states])
        return VectorUmbrella(u.dim * v.dim, np.kron(u.handle, v.handle), states)
    states = np.stack([np.kron(su, sv) for su in u.states for sv in v.states])
    return DensityUmbrella(u.dim * v.dim, np.kron(u.handle, v.handle), states)


def density_from_vector(u):
    """Rank-1 embedding u -> u u^T; handle correlations and hence the value
    are unchanged."""
    if not isinstance(u, VectorUmbrella):
        raise UmbrellaError("expected a vector umbrella")
    states = np.stack([np.outer(s, s) for s in u.states])
    return DensityUmbrella(u.dim, np.outer(u.handle, u.handle), states)


def purity(A, tol=1e-9):
    """tr(A^2) of a density matrix; 1 exactly for pure (rank-1) states."""
    A = np.asarray(A, dtype=float)
    problem = _density_violation(A, tol, tol)
    if problem:
        raise DensityMatrixError(f"not a density matrix: {problem}")
    return float(np.sum(A * A))


def purify_umbrella(u, tie_tol=1e-9):
    """Replace each state by the projector onto its top eigenvector.

    HS-orthogonal PSD matrices have orthogonal ranges, so the purified
    states stay orthogonal wherever the inputs were.  Degenerate top
    eigenvalues are flagged; ties pick the lowest-index eigenvector.
    """
    if not isinstance(u, DensityUmbrella):
        raise UmbrellaError("expected a density umbrella")
    value_before = umbrella_value(u)
    new_states = []
    degenerate = []
    for i, A in enumerate(u.states):
        w, Q = np.linalg.eigh(np.asarray(A, dtype=float))
        top = w[-1]
        tied = [j for j in range(len(w)) if w[j] >= top - tie_tol]
        if len(tied) > 1:
            degenerate.append(i)
        vec = Q[:, tied[0]]
        new_states.append(np.outer(vec, vec))
    out = DensityUmbrella(u.dim, np.asarray(u.handle, dtype=float),
                          np.stack(new_states))
    return PurifyResult(out, tuple(degenerate), value_before, umbrella_value(out))


# -- JSON -------------------------------------------------------------------


def umbrella_to_json(u):
    """Numbers are stored as shortest round-trip decimal strings; loading
    re-verifies against a graph instead of trusting any stored flags."""
    if isinstance(u, VectorUmbrella):
        doc = {
            "dim": u.dim,
            "kind": "vector",
            "handle": [repr(float(x)) for x in u.handle],
            "states": [[repr(float(x)) for x in s] for s in u.states],
        }
    else:
        doc = {
            "dim": u.dim,
            "kind": "density",
            "handle": [[repr(float(x)) for x in row] for row in u.handle],
            "states": [[[repr(float(x)) for x in row] for row in s] for s in u.states],
        }
    return json.dumps(doc, sort_keys=True)


def umbrella_from_json(text):
    doc = json.loads(text)
    try:
        dim = int(doc["dim"])
        kind = doc["kind"]
        if kind == "vector":
            handle = np.array([float(x) for x in doc["handle"]])
            states = np.array([[float(x) for x in s] for s in doc["states"]])
            return VectorUmbrella(dim, handle, states)
        if kind == "density":
            handle = np.array([[float(x) for x in row] for row in doc["handle"]])
            states = np.array([[[float(x) for x in row] for row in s]
                               for s in doc["states"]])
            return DensityUmbrella(dim, handle, states)
    except (KeyError, TypeError, ValueError) as exc:
        raise UmbrellaError(f"malformed umbrella JSON: {exc}")
    raise UmbrellaError(f"unknown umbrella kind {doc.get('kind')!r}")
