"""Hall-Littlewood processes: weights, exact distributions, and samplers.

A process is specified by t, positive parameters a_1..a_M and b_1..b_N, and a
sign string S in S^+_{M,N}.  Step i of the process multiplies in a one-variable
skew factor: P_{next/prev}(a_{p(i)}) on a plus, Q_{prev/next}(b_{N-m(i)+1}) on
a minus, with empty partitions at both ends.

Exact computations run on a cached interlacing lattice (partitions with at
most min(M,N) rows and parts <= row_cap) whose edges carry the skew-factor
structure; parts above row_cap carry total mass below a geometric tail bound,
and the realized truncation deficit is reported against the closed-form
normalization constant.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, partitions as pt
from .distributions import DiscreteDistribution

SkewDiagram = namedtuple("SkewDiagram", ["outer", "inner"])


class TruncationError(ValueError):
    """Requested row cap cannot meet the truncation tolerance."""


@dataclass(frozen=True)
class HLProcessSpec:
    t: float
    a: tuple
    b: tuple
    S: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        object.__setattr__(self, "b", tuple(float(x) for x in self.b))
        object.__setattr__(self, "S", pt.parse_signs(self.S))
        if not 0.0 < self.t < 1.0:
            raise ValueError(f"need 0 < t < 1, got {self.t}")
        if any(x < 0 for x in self.a) or any(x < 0 for x in self.b):
            raise ValueError("parameters a_i, b_j must be non-negative")
        for i, ai in enumerate(self.a):
            for j, bj in enumerate(self.b):
                if ai * bj >= 1.0:
                    raise ValueError(f"a_{i+1} b_{j+1} = {ai * bj} >= 1")
        M, N = len(self.a), len(self.b)
        if not pt.in_sign_class(self.S, M, N, +1):
            raise ValueError(
                f"S = {pt.signs_to_str(self.S)} is not in S^+_{{{M},{N}}}"
            )

    @property
    def M(self) -> int:
        return len(self.a)

    @property
    def N(self) -> int:
        return len(self.b)

    def steps(self):
        """(kind, param) per step i = 1..M+N: kind '+' uses a_{p(i)}, '-' uses b_{N-m(i)+1}."""
        out = []
        p = m = 0
        for s in self.S:
            if s == 1:
                p += 1
                out.append(("+", self.a[p - 1]))
            else:
                m += 1
                out.append(("-", self.b[self.N - m]))
        return out

    def mu(self) -> tuple:
        """The frozen inner partition mu(S)."""
        return pt.partition_from_string(self.S, self.M, self.N)

    @classmethod
    def from_json(cls, d: dict) -> "HLProcessSpec":
        """Load from {"t": ..., "a": [...], "b": [...], "S": "++--"}."""
        return cls(t=d["t"], a=tuple(d["a"]), b=tuple(d["b"]),
                   S=pt.parse_signs(d["S"]))

    def to_json(self) -> dict:
        return {"t": self.t, "a": list(self.a), "b": list(self.b),
                "S": pt.signs_to_str(self.S)}


# ---------------------------------------------------------------------------
# closed-form normalization and truncation control


def normalization_pi(spec: HLProcessSpec) -> float:
    """Pi^S = prod over pairs i<j with (S(i),S(j))=(+,-) of (1-t a b)/(1-a b)."""
    t = spec.t
    pi = 1.0
    p = 0
    m_seen = [0] * (spec.M + spec.N + 1)
    m = 0
    for i, si in enumerate(spec.S):
        m_seen[i] = m
        if si == -1:
            m += 1
    for i, si in enumerate(spec.S):
        if si != 1:
            continue
        p += 1
        ai = spec.a[p - 1]
        for j in range(i + 1, len(spec.S)):
            if spec.S[j] == -1:
                bj = spec.b[spec.N - m_seen[j] - 1]
                pi *= (1.0 - t * ai * bj) / (1.0 - ai * bj)
    return pi


def minimal_row_cap(spec: HLProcessSpec, tol: float = 1e-12, cap_max: int = 400) -> int:
    """Smallest cap R whose geometric tail bound falls below tol.

    Sequences containing a part > R carry unnormalized mass at most
    K rho^{R+1}/(1-rho) with rho = max a_i b_j, K counting the (step, pair)
    combinations; the exact realized deficit is validated downstream against
    Pi^S.
    """
    rho = max((ai * bj for ai in spec.a for bj in spec.b), default=0.0)
    if rho == 0.0:
        return 1
    K = (spec.M + spec.N) * spec.M * spec.N * max(1.0, normalization_pi(spec))
    bound = K / (1.0 - rho)
    cap = 1
    while bound * rho ** (cap + 1) >= tol:
        cap += 1
        if cap > cap_max:
            raise TruncationError(
                f"tail ratio {rho} too close to 1: cap {cap_max} insufficient for tol {tol}"
            )
    return max(cap, 4)


# ---------------------------------------------------------------------------
# interlacing lattice with precomputed skew-factor structure


@dataclass
class _Lattice:
    rows: int
    cap: int
    states: list
    index: dict
    mu_idx: np.ndarray
    lam_idx: np.ndarray
    delta: np.ndarray
    pcode: np.ndarray
    qcode: np.ndarray
    split: int  # edges [0:split] have colinc 0, [split:] have colinc 1
    _ttabs: dict = field(default_factory=dict)

    def factor_tables(self, t: float):
        """code -> prod_e (1 - t^e)^{digit_e(code)} for p and q codes."""
        tabs = self._ttabs.get(t)
        if tabs is None:
            powers = [1.0 - t**e for e in range(1, 5)]
            tab = np.ones(5**4)
            for code in range(5**4):
                c, w = code, 1.0
                for e in range(4):
                    c, dig = divmod(c, 5)
                    if dig:
                        w *= powers[e] ** dig
                tab[code] = w
            tabs = tab
            self._ttabs[t] = tabs
        return tabs

    def _slice(self, colinc):
        if colinc is None:
            return slice(0, len(self.delta))
        return slice(0, self.split) if colinc == 0 else slice(self.split, len(self.delta))

    def apply(self, vec, kind, param, t, colinc=None, backward=False):
        """One process step: kind '+' moves mass up the lattice, '-' down.

        colinc restricts to transitions whose first-column increment matches;
        backward applies the transpose (for backward mass tables).
        """
        sl = self._slice(colinc)
        tab = self.factor_tables(t)
        powtab = float(param) ** np.arange(self.cap * 4 + 1, dtype=np.float64)
        code = self.pcode if kind == "+" else self.qcode
        data = powtab[self.delta[sl].astype(np.intp)] * tab[code[sl].astype(np.intp)]
        if kind == "+":
            src, dst = self.mu_idx[sl], self.lam_idx[sl]
        else:
            src, dst = self.lam_idx[sl], self.mu_idx[sl]
        if backward:
            src, dst = dst, src
        out = np.zeros_like(vec)
        _kernels.scatter_accumulate(src, dst, data, vec, out)
        return out


_LATTICES: dict = {}


def get_lattice(rows: int, cap: int) -> _Lattice:
    if rows > 4:
        raise ValueError("interlacing lattice supports at most 4 rows")
    key = (rows, cap)
    lat = _LATTICES.get(key)
    if lat is not None:
        return lat
    states = sorted(pt.partitions_in_box(rows, cap))
    index = {lam: i for i, lam in enumerate(states)}
    parts = np.zeros((len(states), 4), dtype=np.int64)
    for i, lam in enumerate(states):
        parts[i, : len(lam)] = lam
    base = cap + 1
    id2idx = np.full(base**rows, -1, dtype=np.int32)
    for i in range(len(states)):
        mid = 0
        for r in range(rows):
            mid = mid * base + parts[i, r]
        id2idx[mid] = i
    mu_idx, lam_idx, delta, pcode, qcode, colinc = _kernels.build_interlacing_edges(
        parts, rows, cap, id2idx
    )
    order = np.argsort(colinc, kind="stable")
    split = int(np.searchsorted(colinc[order], 1))
    lat = _Lattice(
        rows=rows,
        cap=cap,
        states=states,
        index=index,
        mu_idx=mu_idx[order],
        lam_idx=lam_idx[order],
        delta=delta[order],
        pcode=pcode[order],
        qcode=qcode[order],
        split=split,
    )
    _LATTICES[key] = lat
    return lat


# ---------------------------------------------------------------------------
# weights and reference (enumeration-based) distributions


def sequence_weight(seq, spec: HLProcessSpec) -> float:
    """Unnormalized weight prod_i W^{(S,i)} of (lam^(1), ..., lam^(M+N-1))."""
    seq = tuple(pt.as_partition(lam) for lam in seq)
    if len(seq) != spec.M + spec.N - 1:
        raise ValueError(
            f"sequence length {len(seq)} != M+N-1 = {spec.M + spec.N - 1}"
        )
    chain = (pt.EMPTY,) + seq + (pt.EMPTY,)
    w = 1.0
    for i, (kind, param) in enumerate(spec.steps()):
        prev, cur = chain[i], chain[i + 1]
        if kind == "+":
            w *= pt.skew_p_one(cur, prev, param, spec.t)
        else:
            w *= pt.skew_q_one(prev, cur, param, spec.t)
        if w == 0.0:
            return 0.0
    return w


def _row_bound(spec: HLProcessSpec, i: int) -> int:
    """lambda'_1(i) <= min(p(i), N - m(i)) for any admissible sequence."""
    p, m = pt.prefix_counts(spec.S, i)
    return min(p, spec.N - m)


def _enumerate_sequences(spec: HLProcessSpec, row_cap: int):
    """All admissible sequences with parts <= row_cap, with their weights."""
    steps = spec.steps()
    n = spec.M + spec.N

    def rec(i, prev, acc, w):
        if i == n:
            if prev == pt.EMPTY:
                yield tuple(acc), w
            return
        kind, param = steps[i]
        bound = _row_bound(spec, i + 1) if i + 1 < n else 0
        if kind == "+":
            for cur in pt.interlacing_above(prev, bound, row_cap):
                w2 = w * pt.skew_p_one(cur, prev, param, spec.t)
                if w2 != 0.0:
                    acc.append(cur)
                    yield from rec(i + 1, cur, acc, w2)
                    acc.pop()
        else:
            for cur in _interlacing_below(prev, bound):
                w2 = w * pt.skew_q_one(prev, cur, param, spec.t)
                if w2 != 0.0:
                    if i + 1 == n:
                        yield from rec(i + 1, cur, acc, w2)
                    else:
                        acc.append(cur)
                        yield from rec(i + 1, cur, acc, w2)
                        acc.pop()

    yield from rec(0, pt.EMPTY, [], 1.0)


def _interlacing_below(lam, max_rows):
    """All mu interlacing below lam with at most max_rows rows."""
    lam = pt.strip_zeros(lam)
    n = len(lam)

    def rec(i, acc):
        if i == n:
            mu = pt.strip_zeros(tuple(acc))
            if pt.num_rows(mu) <= max_rows:
                yield mu
            return
        lo = lam[i + 1] if i + 1 < n else 0
        for v in range(lo, lam[i] + 1):
            acc.append(v)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def exact_sequence_distribution(spec: HLProcessSpec, row_cap: int,
                                max_sequences: int = 2_000_000) -> DiscreteDistribution:
    """Enumerate all sequences with parts <= row_cap; normalize by enumerated mass.

    The deficit of the enumerated mass against Pi^S is reported as
    mass_deficit; the caller's row_cap must keep it below ~1e-12 relative.
    This is the exponential reference enumerator; the support/marginal laws
    go through the lattice DP instead.
    """
    pi = normalization_pi(spec)
    outcomes: dict = {}
    total = 0.0
    for seq, w in _enumerate_sequences(spec, row_cap):
        outcomes[seq] = outcomes.get(seq, 0.0) + w
        total += w
        if len(outcomes) > max_sequences:
            raise ValueError(
                f"more than {max_sequences} sequences; use the DP-backed laws "
                "or lower row_cap"
            )
    if total <= 0:
        raise TruncationError("no admissible sequences under row_cap")
    deficit = 1.0 - total / pi
    return DiscreteDistribution(
        {k: v / total for k, v in outcomes.items()}, mass_deficit=deficit
    )


# ---------------------------------------------------------------------------
# support observable


def support_string(seq, S) -> tuple:
    """The outgoing string T built from first-column increments along seq."""
    S = pt.parse_signs(S)
    seq = tuple(pt.as_partition(lam) for lam in seq)
    chain = (pt.EMPTY,) + seq + (pt.EMPTY,)
    T = []
    for i, si in enumerate(S):
        prev = pt.num_rows(chain[i])
        cur = pt.num_rows(chain[i + 1])
        if si == 1:
            if cur == prev:
                T.append(1)
            elif cur == prev + 1:
                T.append(-1)
            else:
                raise ValueError(f"first-column increment {cur - prev} at step {i+1}")
        else:
            if prev == cur + 1:
                T.append(1)
            elif prev == cur:
                T.append(-1)
            else:
                raise ValueError(f"first-column decrement {prev - cur} at step {i+1}")
    return tuple(T)


def support_of_sequence(seq, S) -> SkewDiagram:
    """The skew diagram nu(T)/mu(S) supporting the sequence."""
    S = pt.parse_signs(S)
    M, N = pt.sign_counts(S)
    T = support_string(seq, S)
    nu = pt.partition_from_string(T, M, N)
    mu = pt.partition_from_string(S, M, N)
    return SkewDiagram(outer=nu, inner=mu)


def first_columns(seq) -> tuple:
    """(lambda^(i)'_1) along the sequence."""
    return tuple(pt.num_rows(pt.as_partition(lam)) for lam in seq)


def first_columns_from_strings(S, T) -> tuple:
    """lambda'_1(i) = (1/2) sum_{j<=i} (S(j) - T(j)), i = 1..M+N-1."""
    S, T = pt.parse_signs(S), pt.parse_signs(T)
    acc, out = 0, []
    for sj, tj in zip(S[:-1], T[:-1]):
        acc += (sj - tj) // 2
        out.append(acc)
    return tuple(out)


def exact_support_distribution(
    spec: HLProcessSpec, row_cap: int
) -> DiscreteDistribution:
    """Exact law of the support nu(T)/mu(S) via per-T constrained DP.

    Walks the binary tree of T-prefixes; at step i only transitions whose
    first-column increment matches T(i) are applied.  Probabilities are
    normalized by the total enumerated mass; the deficit against Pi^S is
    reported.
    """
    lat = get_lattice(min(spec.M, spec.N), row_cap)
    steps = spec.steps()
    t = spec.t
    empty = lat.index[pt.EMPTY]
    mu = spec.mu()
    vec0 = np.zeros(len(lat.states))
    vec0[empty] = 1.0
    masses: dict = {}

    def rec(i, vec, tbits):
        if i == len(steps):
            m = vec[empty]
            if m > 0.0:
                masses[tuple(tbits)] = m
            return
        kind, param = steps[i]
        for tbit in (1, -1):
            if kind == "+":
                inc = 0 if tbit == 1 else 1
                out = lat.apply(vec, "+", param, t, colinc=inc)
            else:
                dec = 1 if tbit == 1 else 0
                out = lat.apply(vec, "-", param, t, colinc=dec)
            if np.any(out):
                tbits.append(tbit)
                rec(i + 1, out, tbits)
                tbits.pop()

    rec(0, vec0, [])
    total = sum(masses.values())
    if total <= 0:
        raise TruncationError("no admissible sequences under row_cap")
    pi = normalization_pi(spec)
    outcomes = {
        (pt.partition_from_string(T, spec.M, spec.N), mu): m / total
        for T, m in masses.items()
    }
    return DiscreteDistribution(outcomes, mass_deficit=1.0 - total / pi)


def exact_support_string_distribution(
    spec: HLProcessSpec, row_cap: int
) -> DiscreteDistribution:
    """Same law keyed by the string T (for pushforwards onto column vectors)."""
    dist = exact_support_distribution(spec, row_cap)
    return dist.map_keys(
        lambda key: pt.string_from_partition(key[0], spec.M, spec.N)
    )


def exact_first_column_distribution(
    spec: HLProcessSpec, row_cap: int
) -> DiscreteDistribution:
    """Joint law of (lambda'_1(1), ..., lambda'_1(M+N-1)).

    Pushforward of the support law under the column/support duality; the
    duality itself is verified pathwise by tests on sampled sequences.
    """
    sdist = exact_support_string_distribution(spec, row_cap)
    return sdist.map_keys(lambda T: first_columns_from_strings(spec.S, T))


def exact_marginal_distribution(
    spec: HLProcessSpec, position: int, row_cap: int
) -> DiscreteDistribution:
    """Exact law of lambda^(position), position in 1..M+N-1."""
    if not 1 <= position <= spec.M + spec.N - 1:
        raise ValueError("position out of range")
    lat = get_lattice(min(spec.M, spec.N), row_cap)
    steps = spec.steps()
    empty = lat.index[pt.EMPTY]
    fwd = np.zeros(len(lat.states))
    fwd[empty] = 1.0
    for kind, param in steps[:position]:
        fwd = lat.apply(fwd, kind, param, spec.t)
    bwd = np.zeros(len(lat.states))
    bwd[empty] = 1.0
    for kind, param in reversed(steps[position:]):
        bwd = lat.apply(bwd, kind, param, spec.t, backward=True)
    mass = fwd * bwd
    total = mass.sum()
    if total <= 0:
        raise TruncationError("no admissible sequences under row_cap")
    pi = normalization_pi(spec)
    outcomes = {
        lat.states[i]: mass[i] / total for i in np.nonzero(mass)[0]
    }
    return DiscreteDistribution(outcomes, mass_deficit=1.0 - total / pi)


# ---------------------------------------------------------------------------
# exact sequential sampling


class SequenceSampler:
    """Samples sequences by exact forward conditionals.

    Backward completion masses come from the lattice DP; per-state conditional
    tables are built lazily as states are visited.
    """

    def __init__(self, spec: HLProcessSpec, row_cap: int, seed: int):
        self.spec = spec
        self.cap = row_cap
        self.rng = np.random.default_rng(seed)
        self.lat = get_lattice(min(spec.M, spec.N), row_cap)
        self.steps = spec.steps()
        n = len(self.steps)
        empty = self.lat.index[pt.EMPTY]
        bwd = np.zeros(len(self.lat.states))
        bwd[empty] = 1.0
        self.bwd = [None] * (n + 1)
        self.bwd[n] = bwd
        for i in range(n - 1, -1, -1):
            kind, param = self.steps[i]
            self.bwd[i] = self.lat.apply(
                self.bwd[i + 1], kind, param, spec.t, backward=True
            )
        if self.bwd[0][empty] <= 0:
            raise TruncationError("no admissible sequences under row_cap")
        self._tables: dict = {}

    def _conditional(self, i, prev):
        key = (i, prev)
        tab = self._tables.get(key)
        if tab is not None:
            return tab
        kind, param = self.steps[i]
        bound = _row_bound(self.spec, i + 1) if i + 1 <= len(self.steps) - 1 else 0
        if i == len(self.steps) - 1:
            cands = [pt.EMPTY]
        elif kind == "+":
            cands = list(pt.interlacing_above(prev, bound, self.cap))
        else:
            cands = list(_interlacing_below(prev, bound))
        weights = []
        for cur in cands:
            if kind == "+":
                w = pt.skew_p_one(cur, prev, param, self.spec.t)
            else:
                w = pt.skew_q_one(prev, cur, param, self.spec.t)
            weights.append(w * self.bwd[i + 1][self.lat.index[cur]])
        weights = np.asarray(weights)
        keep = weights > 0
        cands = [c for c, k in zip(cands, keep) if k]
        cum = np.cumsum(weights[keep])
        cum /= cum[-1]
        tab = (cands, cum)
        self._tables[key] = tab
        return tab

    def sample(self):
        prev = pt.EMPTY
        seq = []
        for i in range(len(self.steps) - 1):
            cands, cum = self._conditional(i, prev)
            j = int(np.searchsorted(cum, self.rng.random(), side="right"))
            prev = cands[min(j, len(cands) - 1)]
            seq.append(prev)
        return tuple(seq)


def sample_sequence(spec: HLProcessSpec, row_cap: int, seed: int):
    """One sequence drawn from the exact (truncated) process law."""
    return SequenceSampler(spec, row_cap, seed).sample()


# ---------------------------------------------------------------------------
# discretized Plancherel approximation


def plancherel_spec(t: float, rates, tau: float, K: int) -> HLProcessSpec:
    """Ascending process approximating the Plancherel specialization.

    K one-variable specializations b = tau/((1-t)K) approximate Plancherel(tau)
    with O(1/K) error: per factor, (1 - t x b)/(1 - x b) -> exp((1-t) b x).
    """
    rates = tuple(float(c) for c in rates)
    M = len(rates)
    b = tau / ((1.0 - t) * K)
    S = tuple([1] * M + [-1] * K)
    return HLProcessSpec(t=t, a=rates, b=(b,) * K, S=S)
