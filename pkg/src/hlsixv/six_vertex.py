"""Stochastic six vertex model in a quadrant, truncated to (possibly jagged)
finite domains: Markovian sampling, height function, exact transfer-matrix
enumeration of outgoing-edge and height observables, and the half-continuous
limit.

Conventions.  Vertices are (x, y), x = column >= 1, y = row >= 1.  Paths enter
occupied on the left of every row and travel up-right.  A vertex with a single
incoming horizontal edge passes straight with probability (1-ab)/(1-t ab) and
turns up otherwise; a single incoming vertical edge continues up with
probability t(1-ab)/(1-t ab) and turns right otherwise (a = a_x, b = b_y).
The height h(x, y) counts paths through or to the right of (x, y); it is pinned
to h(x, y) = y - #{occupied vertical edges (c, y)->(c, y+1), c < x}, the unique
reading with h(1, y) = y that matches the first-column laws of the matched
Hall-Littlewood process.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, partitions as pt
from .distributions import DiscreteDistribution
from .hl_process import SkewDiagram


@dataclass(frozen=True)
class SixVertexParams:
    """Matched-form parameters (t, a_x per column, b_y per row)."""

    t: float
    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        object.__setattr__(self, "b", tuple(float(x) for x in self.b))
        if not 0.0 < self.t < 1.0:
            raise ValueError(f"need 0 < t (=Q) < 1, got {self.t}")
        if any(x < 0 for x in self.a) or any(x < 0 for x in self.b):
            raise ValueError("parameters must be non-negative")
        for i, ax in enumerate(self.a):
            for j, by in enumerate(self.b):
                if ax * by >= 1.0:
                    raise ValueError(f"a_{i+1} b_{j+1} = {ax * by} >= 1")

    @classmethod
    def from_native(cls, Q: float, xi, u) -> "SixVertexParams":
        """Convert (Q, xi_x, u_y) with xi_x u_y > 1/sqrt(Q) to matched form."""
        xi = tuple(float(v) for v in xi)
        u = tuple(float(v) for v in u)
        if not 0.0 < Q < 1.0:
            raise ValueError(f"need 0 < Q < 1, got {Q}")
        for x, xv in enumerate(xi):
            for y, uv in enumerate(u):
                if xv * uv <= 1.0 / math.sqrt(Q):
                    raise ValueError(
                        f"xi_{x+1} u_{y+1} = {xv * uv} <= 1/sqrt(Q) = {1/math.sqrt(Q)}"
                    )
        a = tuple(math.sqrt(Q) / v for v in xi)
        b = tuple(1.0 / (Q * v) for v in u)
        return cls(t=Q, a=a, b=b)

    def to_native(self) -> tuple:
        """(Q, xi, u) with t = Q, xi_x = sqrt(t)/a_x, u_y = 1/(t b_y)."""
        Q = self.t
        xi = tuple(math.sqrt(Q) / ax for ax in self.a)
        u = tuple(1.0 / (Q * by) for by in self.b)
        return Q, xi, u


def vertex_probabilities(params: SixVertexParams, x: int, y: int) -> tuple:
    """(P(horizontal pass), P(turn up), P(vertical pass), P(turn right)) at (x,y)."""
    ab = params.a[x - 1] * params.b[y - 1]
    t = params.t
    d = 1.0 - t * ab
    return ((1.0 - ab) / d, (1.0 - t) * ab / d, t * (1.0 - ab) / d, (1.0 - t) / d)


def native_vertex_probabilities(Q: float, xi_x: float, u_y: float) -> tuple:
    """Same four probabilities straight from the native parameterization."""
    s = xi_x * u_y
    rq = math.sqrt(Q)
    d = 1.0 - s / rq
    return (
        (1.0 / Q - s / rq) / d,
        (1.0 - 1.0 / Q) / d,
        (1.0 - rq * s) / d,
        (Q - 1.0) * (s / rq) / d,
    )


# ---------------------------------------------------------------------------
# domains


@dataclass(frozen=True)
class JaggedDomain:
    """Quadrant truncation below the down-right cut path encoded by S."""

    M: int
    N: int
    S: tuple

    def __post_init__(self):
        object.__setattr__(self, "S", pt.parse_signs(self.S))
        if not pt.in_sign_class(self.S, self.M, self.N, +1):
            raise ValueError(
                f"S = {pt.signs_to_str(self.S)} not in S^+_{{{self.M},{self.N}}}"
            )

    @classmethod
    def rectangular(cls, M: int, N: int) -> "JaggedDomain":
        return cls(M, N, tuple([1] * M + [-1] * N))

    @property
    def mu(self) -> tuple:
        """Excised region mu(S), checked against the string bijection."""
        return pt.partition_from_string(self.S, self.M, self.N)

    def cut_points(self) -> list:
        """(x_i, y_i) for i = 0..M+N: right steps on +, down steps on -."""
        pts = [(0, self.N)]
        x, y = 0, self.N
        for s in self.S:
            if s == 1:
                x += 1
            else:
                y -= 1
            pts.append((x, y))
        return pts

    def column_heights(self) -> list:
        """H_x = top row of column x, for x = 1..M (non-increasing)."""
        H = []
        for i, (x, y) in enumerate(self.cut_points()[1:], start=1):
            if self.S[i - 1] == 1:
                H.append(y)
        return H

    def outgoing_edges(self) -> list:
        """Cut-order outgoing edges: ('up', x, y) or ('right', x, y)."""
        out = []
        pts = self.cut_points()
        for i, s in enumerate(self.S, start=1):
            x, y = pts[i]
            if s == 1:
                out.append(("up", x, y))
            else:
                out.append(("right", x, y + 1))
        return out


# ---------------------------------------------------------------------------
# sampled states


class LatticeState:
    """Full edge configuration on a jagged domain.

    vert[(x, y)] is the edge above vertex (x, y); horiz[(x, y)] the edge to
    its right, for 1 <= y <= H_x.
    """

    def __init__(self, domain: JaggedDomain, params: SixVertexParams, vert, horiz):
        self.domain = domain
        self.params = params
        self.vert = vert
        self.horiz = horiz

    def h_in(self, x, y):
        return True if x == 1 else self.horiz[(x - 1, y)]

    def v_in(self, x, y):
        return False if y == 1 else self.vert[(x, y - 1)]

    def vertex_type(self, x, y) -> str:
        key = (
            self.h_in(x, y),
            self.v_in(x, y),
            self.horiz[(x, y)],
            self.vert[(x, y)],
        )
        return {
            (False, False, False, False): "empty",
            (True, True, True, True): "full-cross",
            (True, False, True, False): "horizontal",
            (True, False, False, True): "turn-up",
            (False, True, False, True): "vertical",
            (False, True, True, False): "turn-right",
        }[key]

    def validate(self):
        """Path conservation and boundary conditions at every vertex."""
        H = self.domain.column_heights()
        for x in range(1, self.domain.M + 1):
            for y in range(1, H[x - 1] + 1):
                inn = int(self.h_in(x, y)) + int(self.v_in(x, y))
                out = int(self.horiz[(x, y)]) + int(self.vert[(x, y)])
                if inn != out:
                    raise AssertionError(f"conservation violated at {(x, y)}")
        T, _ = self.outgoing_string()
        occ = sum(1 for b in T if b == -1)
        if occ != self.domain.N:
            raise AssertionError(f"{occ} occupied outgoing edges, expected N")

    def outgoing_string(self) -> tuple:
        """(T, occupancy bits) in cut order; T(i) = + iff edge i unoccupied."""
        bits = []
        for kind, x, y in self.domain.outgoing_edges():
            bits.append(self.vert[(x, y)] if kind == "up" else self.horiz[(x, y)])
        T = tuple(-1 if b else 1 for b in bits)
        return T, bits


def sample_state(params: SixVertexParams, domain: JaggedDomain, seed) -> LatticeState:
    """Markovian sampling, column by column (equivalent to x+y sweeps)."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    H = domain.column_heights()
    vert, horiz = {}, {}
    for x in range(1, domain.M + 1):
        v = False
        for y in range(1, H[x - 1] + 1):
            h = True if x == 1 else horiz[(x - 1, y)]
            p_pass, _, p_vert, _ = vertex_probabilities(params, x, y)
            if h and v:
                oh, ov = True, True
            elif not h and not v:
                oh, ov = False, False
            elif h:
                oh, ov = (True, False) if rng.random() < p_pass else (False, True)
            else:
                oh, ov = (False, True) if rng.random() < p_vert else (True, False)
            horiz[(x, y)] = oh
            vert[(x, y)] = ov
            v = ov
    return LatticeState(domain, params, vert, horiz)


def height(state: LatticeState, x: int, y: int) -> int:
    """Paths through or to the right of (x, y); needs y within all columns < x."""
    dom = state.domain
    H = dom.column_heights()
    if not (1 <= y <= dom.N and 1 <= x <= dom.M + 1):
        raise ValueError(f"point {(x, y)} outside sampled region")
    if x > 1 and H[x - 2] < y:
        raise ValueError(f"point {(x, y)} above the cut path")
    crossings = sum(
        1 for c in range(1, x) if H[c - 1] >= y and state.vert[(c, y)]
    )
    return y - crossings


def outgoing_partition(state: LatticeState) -> tuple:
    """(T, nu(T)) from the outgoing edges, clockwise from the top-left."""
    T, _ = state.outgoing_string()
    nu = pt.partition_from_string(T, state.domain.M, state.domain.N)
    return T, nu


# ---------------------------------------------------------------------------
# exact transfer-matrix enumeration

_FULL = object()


def _column_outcomes(params, x, hx, hbits):
    """All resolutions of column x: (prob, out_hbits, vert_bits).

    hbits[y-1] is the entering horizontal edge of row y; vert_bits[y-1] the
    vertical edge above (x, y) (the last one is the column's top exit).
    """
    results = []

    def rec(y, v, acc_h, acc_v, prob):
        if y > hx:
            results.append((prob, tuple(acc_h), tuple(acc_v)))
            return
        h = hbits[y - 1]
        p_pass, p_up, p_vert, p_right = vertex_probabilities(params, x, y)
        if h and v:
            branches = [(1.0, True, True)]
        elif not h and not v:
            branches = [(1.0, False, False)]
        elif h:
            branches = [(p_pass, True, False), (p_up, False, True)]
        else:
            branches = [(p_vert, False, True), (p_right, True, False)]
        for w, oh, ov in branches:
            acc_h.append(oh)
            acc_v.append(ov)
            rec(y + 1, ov, acc_h, acc_v, prob * w)
            acc_h.pop()
            acc_v.pop()

    rec(1, False, [], [], 1.0)
    return results


def _sweep(params, domain, update, init):
    """Generic left-to-right DP; `update(tracker, x, vert_bits, out_h)` folds
    per-column information into the hashable tracker state."""
    H = domain.column_heights()
    states = {(tuple([True] * H[0]), init): 1.0}
    for x in range(1, domain.M + 1):
        hx = H[x - 1]
        hnext = H[x] if x < domain.M else 0
        new: dict = {}
        for (hbits, trk), prob in states.items():
            for w, out_h, vert_bits in _column_outcomes(params, x, hx, hbits):
                ntrk = update(trk, x, vert_bits, out_h)
                nh = out_h[:hnext]
                key = (nh, ntrk)
                new[key] = new.get(key, 0.0) + prob * w
        states = new
    out: dict = {}
    for (_, trk), prob in states.items():
        out[trk] = out.get(trk, 0.0) + prob
    return out


def exact_outgoing_distribution(
    params: SixVertexParams, domain: JaggedDomain, max_size: int = 14
) -> DiscreteDistribution:
    """Exact law of the outgoing skew diagram nu(T)/mu(S)."""
    if domain.M + domain.N > max_size:
        raise ValueError("domain too large for exact enumeration")
    H = domain.column_heights()

    def update(trk, x, vert_bits, out_h):
        hx = H[x - 1]
        hnext = H[x] if x < domain.M else 0
        bits = [vert_bits[-1]] + [out_h[y - 1] for y in range(hx, hnext, -1)]
        return trk + tuple(bits)

    raw = _sweep(params, domain, update, ())
    mu = domain.mu
    outcomes: dict = {}
    for bits, prob in raw.items():
        T = tuple(-1 if b else 1 for b in bits)
        key = (pt.partition_from_string(T, domain.M, domain.N), mu)
        outcomes[key] = outcomes.get(key, 0.0) + prob
    dist = DiscreteDistribution(outcomes)
    dist.check_normalized(1e-12)
    return dist


def exact_outgoing_string_distribution(
    params: SixVertexParams, domain: JaggedDomain
) -> DiscreteDistribution:
    """Same law keyed by the sign string T."""
    dist = exact_outgoing_distribution(params, domain)
    return dist.map_keys(
        lambda key: pt.string_from_partition(key[0], domain.M, domain.N)
    )


def exact_joint_height_distribution(
    params: SixVertexParams, domain: JaggedDomain, points
) -> DiscreteDistribution:
    """Exact joint law of (h(x_j, y_j)) at the given points."""
    H = domain.column_heights()
    points = [(int(x), int(y)) for x, y in points]
    for x, y in points:
        if not (1 <= y <= domain.N and 1 <= x <= domain.M + 1):
            raise ValueError(f"point {(x, y)} outside domain")
        if x > 1 and H[x - 2] < y:
            raise ValueError(f"point {(x, y)} above the cut path")

    def update(counters, x, vert_bits, out_h):
        hx = H[x - 1]
        lst = list(counters)
        for j, (px, py) in enumerate(points):
            if x < px and py <= hx and vert_bits[py - 1]:
                lst[j] += 1
        return tuple(lst)

    raw = _sweep(params, domain, update, tuple([0] * len(points)))
    outcomes = {
        tuple(py - c for (px, py), c in zip(points, cnt)): p
        for cnt, p in raw.items()
    }
    dist = DiscreteDistribution(outcomes)
    dist.check_normalized(1e-12)
    return dist


def joint_height_distribution(
    params: SixVertexParams, M: int, N: int, points
) -> DiscreteDistribution:
    """Joint height law on the rectangular M x N domain."""
    return exact_joint_height_distribution(
        params, JaggedDomain.rectangular(M, N), points
    )


def exact_cut_column_distribution(
    params: SixVertexParams, domain: JaggedDomain
) -> DiscreteDistribution:
    """Joint law of (y_i - h(x_i + 1, y_i)) along the cut path, i = 1..M+N-1."""
    pts = domain.cut_points()[1 : domain.M + domain.N]
    dist = exact_joint_height_distribution(
        params, domain, [(x + 1, y) for x, y in pts]
    )
    return dist.map_keys(
        lambda hs: tuple(y - h for (x, y), h in zip(pts, hs))
    )


# ---------------------------------------------------------------------------
# bulk sampling (kernel-backed)


def sample_outgoing_counts(
    params: SixVertexParams, domain: JaggedDomain, n_samples: int, seed: int
) -> dict:
    """Monte Carlo counts of outgoing strings T over n_samples states."""
    H = np.asarray(domain.column_heights(), dtype=np.int64)
    counts = _kernels.six_vertex_tcode_counts(
        np.asarray(params.a), np.asarray(params.b), params.t, H, n_samples, seed
    )
    n_edges = domain.M + domain.N
    out = {}
    for code in np.nonzero(counts)[0]:
        T = tuple(-1 if (int(code) >> i) & 1 else 1 for i in range(n_edges))
        out[T] = int(counts[code])
    return out


# ---------------------------------------------------------------------------
# half-continuous limit


def sample_half_continuous(
    t: float, rates, horizon: float, query_times, seed: int
) -> np.ndarray:
    """Heights h(tau, y) of the half-continuous model at query times x rows.

    Rows start occupied; the path on row y turns up at rate b_y, and the
    vertical excursion crosses occupied rows surely, continuing past an empty
    row with probability t.  Returns an int array [n_times, n_rows].
    """
    rates = np.asarray([float(r) for r in rates])
    if np.any(rates <= 0) or not 0.0 < t < 1.0:
        raise ValueError("need positive rates and 0 < t < 1")
    taus = np.asarray(sorted(float(q) for q in query_times))
    if horizon is not None and taus.size and taus[-1] > horizon:
        raise ValueError("query time beyond horizon")
    out = _kernels.half_continuous_grid_ensemble(rates, t, taus, 1, seed)
    return out[0]


def half_continuous_height_ensemble(
    t: float, rates, query_times, n_runs: int, seed: int
) -> np.ndarray:
    """Independent runs of sample_half_continuous: [n_runs, n_times, n_rows]."""
    rates = np.asarray([float(r) for r in rates])
    taus = np.asarray([float(q) for q in query_times])
    return _kernels.half_continuous_grid_ensemble(rates, t, taus, n_runs, seed)
