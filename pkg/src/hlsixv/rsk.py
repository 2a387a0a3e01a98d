"""Continuous-time Hall-Littlewood RSK dynamics on interlacing partition
arrays, the equivalent set-valued dynamics, and the t-PushTASEP.

Array dynamics.  Level k holds a partition with exactly k rows (zeros kept),
interlacing with its neighbours; all rows start at zero.  A Poisson signal at
level k increments the smallest free row value of level k (a row is free when
it is strictly below the row up-left of it), and the move propagates upward.
When the incoming value v is still free at the next level the move is forced
onto the first row of its v-cluster (this keeps interlacing after the lower
increment); otherwise a coin with success probability R pushes the first row
of the nearest free value above v, and with probability 1-R the first row of
the v-cluster moves instead.  R = 1-t when the count of v-rows matches the
level below (minus the mover), and (1-t)/(1-t^{E+1}) with E = #v-rows
otherwise.  The propagation is expressed through free-value sets
V_m = {v : col_{v+1}(level m) = col_{v+1}(level m-1)}, which is also the
bridge to the set-valued dynamics below.

Set dynamics.  V_i starts as all of Z>=0; a signal at level k removes
min V_k, and the removed element i scans upward: levels containing i are
crossed unchanged, at levels missing i a coin of probability R inserts i and
removes the next element above (the new removed element continues the scan).
Both dynamics, driven by the same uniforms, produce identical trajectories
under the bijection col_{j}(level m) = col_j(level m-1) + 1{j-1 not in V_m}.

All steppers draw lazily from a `uniform()` callable (one draw per random
branch); coupled runs share draws per event.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels, partitions as pt


# ---------------------------------------------------------------------------
# partition arrays


class PartitionArray:
    """Interlacing triangular array; level k keeps exactly k rows."""

    def __init__(self, n_max: int, levels=None, tau: float = 0.0):
        self.n_max = n_max
        if levels is None:
            self.levels = [[0] * k for k in range(1, n_max + 1)]
        else:
            self.levels = [list(map(int, lv)) for lv in levels]
            if [len(lv) for lv in self.levels] != list(range(1, n_max + 1)):
                raise ValueError("level k must have exactly k rows")
        self.tau = float(tau)

    def level(self, k: int) -> list:
        return self.levels[k - 1]

    def copy(self) -> "PartitionArray":
        return PartitionArray(self.n_max, [list(l) for l in self.levels], self.tau)

    def as_tuples(self) -> tuple:
        return tuple(tuple(lv) for lv in self.levels)

    def first_columns(self) -> tuple:
        """lambda^(k)'_1 for k = 1..n_max."""
        return tuple(sum(1 for v in lv if v > 0) for lv in self.levels)

    def validate(self):
        for k, lv in enumerate(self.levels, start=1):
            if any(lv[i] < lv[i + 1] for i in range(k - 1)):
                raise AssertionError(f"level {k} not sorted: {lv}")
            if k > 1:
                below = self.levels[k - 2]
                for i in range(k - 1):
                    if not (lv[i] >= below[i] >= lv[i + 1]):
                        raise AssertionError(
                            f"interlacing broken between levels {k-1}, {k}"
                        )

    def __eq__(self, other):
        return isinstance(other, PartitionArray) and self.levels == other.levels

    def __repr__(self):
        return f"PartitionArray({self.levels}, tau={self.tau})"


def _col(level: list, j: int) -> int:
    return sum(1 for v in level if v >= j)


def is_blocked(array: PartitionArray, k: int, i: int) -> bool:
    """Row i (1-based) of level k is blocked when equal to row i-1 of level k-1."""
    if i == 1:
        return False
    return array.level(k)[i - 1] == array.level(k - 1)[i - 2]


def nearest_neighbor_index(array: PartitionArray, k: int, i: int):
    """Smallest free row of level k+1 with index <= i (1-based), or None."""
    best = None
    for j in range(1, i + 1):
        if not is_blocked(array, k + 1, j):
            v = array.level(k + 1)[j - 1]
            if best is None or v < array.level(k + 1)[best - 1]:
                best = j
    return best


def rsk_apply_signal(array: PartitionArray, k: int, t: float, uniform,
                     record=None) -> PartitionArray:
    """New array after one signal at level k; uniform() supplies U(0,1) draws.

    When `record` is a list, (level, value) is appended for every row
    increment (the row of that value moved up by one).
    """
    out = array.copy()
    _apply_signal_inplace(out.levels, out.n_max, k, t, _as_uniform(uniform), record)
    return out


def _as_uniform(u):
    if callable(u):
        return u
    return u.random  # numpy Generator


def _apply_signal_inplace(levels, n_max, k, t, uniform, record=None):
    def col(m, j):
        return _col(levels[m - 1], j) if m >= 1 else 0

    def inc_first(m, v):
        lv = levels[m - 1]
        lv[lv.index(v)] += 1

    v = 0
    while col(k, v + 1) != col(k - 1, v + 1):
        v += 1
    inc_first(k, v)
    if record is not None:
        record.append((k, v))
    ival = v
    for m in range(k + 1, n_max + 1):
        # the level below already moved a row from ival to ival+1, so its
        # pre-event column ival+1 is one less than the current count
        if col(m, ival + 1) == col(m - 1, ival + 1) - 1:
            wnew = ival
        else:
            e_rows = sum(1 for x in levels[m - 1] if x == ival)
            if ival >= 1 and col(m, ival) == col(m - 1, ival):
                r_prob = (1.0 - t) / (1.0 - t ** (e_rows + 1))
            else:
                r_prob = 1.0 - t
            if uniform() < r_prob:
                w = ival + 1
                while True:
                    below_w = col(m - 1, w + 1) - (1 if w == ival else 0)
                    if col(m, w + 1) == below_w:
                        break
                    w += 1
                wnew = w
            else:
                wnew = ival
        inc_first(m, wnew)
        if record is not None:
            record.append((m, wnew))
        ival = wnew


def run_rsk(rates, t: float, tau_max: float, seed: int, snapshot_times=(),
            n_max=None, validate: bool = False, events=None) -> list:
    """Event-driven trajectory; returns [(tau, PartitionArray)] at snapshots.

    rates are the level clock intensities c_1..c_n; n_max defaults to their
    count.  validate=True re-checks interlacing after every event.  Passing a
    list as `events` collects (time, level, row, new_value) per row move.
    """
    rates = [float(c) for c in rates]
    if n_max is None:
        n_max = len(rates)
    if len(rates) != n_max or any(c <= 0 for c in rates):
        raise ValueError("need one positive rate per tracked level")
    rng = np.random.default_rng(seed)
    total = sum(rates)
    cum = np.cumsum(rates)
    arr = PartitionArray(n_max)
    snaps = sorted(float(s) for s in snapshot_times)
    if snaps and snaps[-1] > tau_max:
        raise ValueError("snapshot beyond horizon")
    out = []
    time = 0.0
    si = 0
    while True:
        dt = rng.exponential(1.0 / total)
        nxt = time + dt
        while si < len(snaps) and snaps[si] < min(nxt, tau_max):
            snap = arr.copy()
            snap.tau = snaps[si]
            out.append((snaps[si], snap))
            si += 1
        if nxt >= tau_max:
            break
        k = 1 + int(np.searchsorted(cum, rng.random() * total))
        k = min(k, n_max)
        rec = [] if events is not None else None
        _apply_signal_inplace(arr.levels, n_max, k, t, rng.random, rec)
        if rec is not None:
            for m, v in rec:
                # the moved row is the last of the (v+1)-cluster it joined
                row = _col(arr.level(m), v + 1)
                events.append((nxt, m, row, v + 1))
        if validate:
            arr.validate()
        time = nxt
    while si < len(snaps):
        snap = arr.copy()
        snap.tau = snaps[si]
        out.append((snaps[si], snap))
        si += 1
    arr.tau = tau_max
    if not snaps:
        out.append((tau_max, arr))
    return out


def rsk_first_column_ensemble(rates, t, taus, n_runs, seed) -> np.ndarray:
    """Kernel-backed ensemble of first-column vectors: [runs, taus, levels]."""
    rates = np.asarray([float(c) for c in rates])
    taus = np.asarray(sorted(float(x) for x in taus))
    return _kernels.rsk_grid_ensemble(rates, t, taus, len(rates), n_runs, seed)


def rsk_top_level_ensemble(rates, t, tau, n_runs, seed) -> np.ndarray:
    """Kernel-backed ensemble of the top tracked level's partition at tau."""
    rates = np.asarray([float(c) for c in rates])
    return _kernels.rsk_top_level_ensemble(rates, t, float(tau), len(rates), n_runs, seed)


# ---------------------------------------------------------------------------
# set-valued dynamics


@dataclass
class SetSystem:
    """V_1..V_n as complements within Z>=0 (everything present initially)."""

    n_max: int
    complements: list = field(default_factory=list)

    def __post_init__(self):
        if not self.complements:
            self.complements = [set() for _ in range(self.n_max)]
        else:
            self.complements = [set(c) for c in self.complements]

    def copy(self) -> "SetSystem":
        return SetSystem(self.n_max, [set(c) for c in self.complements])

    def contains(self, level: int, x: int) -> bool:
        return x >= 0 and x not in self.complements[level - 1]

    def min_of(self, level: int) -> int:
        v = 0
        comp = self.complements[level - 1]
        while v in comp:
            v += 1
        return v

    def h_count(self, r: int, m: int) -> int:
        """h^(r)(m) = #{l <= m : r in V_l}."""
        return sum(1 for l in range(1, m + 1) if self.contains(l, r))

    def column_counts(self, m: int, j_max: int) -> list:
        """col_j of the corresponding level-m partition, j = 1..j_max."""
        cols = [0] * (j_max + 1)
        for l in range(1, m + 1):
            for j in range(1, j_max + 1):
                if not self.contains(l, j - 1):
                    cols[j] += 1
        return cols[1:]

    def __eq__(self, other):
        return (
            isinstance(other, SetSystem)
            and self.n_max == other.n_max
            and self.complements == other.complements
        )


def sets_apply_signal(sets: SetSystem, k: int, t: float, uniform,
                      record=None) -> SetSystem:
    """New SetSystem after one signal at level k.

    When `record` is a list, (level, value) is appended per level >= k: the
    element removed there, or the incoming element when the level is crossed
    unchanged (mirroring the array-side row increments one for one).
    """
    out = sets.copy()
    _sets_signal_inplace(out, k, t, _as_uniform(uniform), record)
    return out


def _sets_signal_inplace(sets: SetSystem, k: int, t: float, uniform, record=None):
    # rule 4b reads the pre-event counters; track this event's changes as
    # deltas instead of snapshotting the whole state
    changed: dict = {}

    def pre_contains(level, x):
        if x < 0:
            return False
        delta = changed.get(level)
        if delta is not None:
            removed, added = delta
            if x == removed:
                return True
            if x == added:
                return False
        return x not in sets.complements[level - 1]

    i = sets.min_of(k)
    sets.complements[k - 1].add(i)
    changed[k] = (i, None)
    if record is not None:
        record.append((k, i))
    for m in range(k + 1, sets.n_max + 1):
        if sets.contains(m, i):
            if record is not None:
                record.append((m, i))
            continue
        if i >= 1 and sets.contains(m, i - 1):
            d = sum(
                1 for l in range(1, m + 1) if pre_contains(l, i)
            ) - sum(
                1 for l in range(1, m + 1) if pre_contains(l, i - 1)
            )
            r_prob = (1.0 - t) / (1.0 - t ** (d + 1))
        else:
            r_prob = 1.0 - t
        if uniform() < r_prob:
            comp = sets.complements[m - 1]
            comp.discard(i)
            v = i + 1
            while not sets.contains(m, v):
                v += 1
            comp.add(v)
            changed[m] = (v, i)
            if record is not None:
                record.append((m, v))
            i = v
        elif record is not None:
            record.append((m, i))


def run_sets(rates, t: float, tau_max: float, seed: int, n_max=None) -> SetSystem:
    """Event-driven set dynamics to time tau_max."""
    rates = [float(c) for c in rates]
    if n_max is None:
        n_max = len(rates)
    rng = np.random.default_rng(seed)
    total = sum(rates)
    cum = np.cumsum(rates)
    sets = SetSystem(n_max)
    time = 0.0
    while True:
        dt = rng.exponential(1.0 / total)
        if time + dt >= tau_max:
            break
        k = 1 + int(np.searchsorted(cum, rng.random() * total))
        _sets_signal_inplace(sets, min(k, n_max), t, rng.random)
        time += dt
    return sets


# ---------------------------------------------------------------------------
# bijection between the two state spaces


def sets_from_array(array: PartitionArray) -> SetSystem:
    """i in V_m  iff  #rows<=i of level m exceeds that of level m-1 by one."""
    comps = []
    prev: list = []
    for k in range(1, array.n_max + 1):
        lv = array.level(k)
        comp = set()
        top = lv[0] if lv else 0
        for i in range(0, top):
            rows_le_m = sum(1 for x in lv if x <= i)
            rows_le_p = sum(1 for x in prev if x <= i)
            if rows_le_m - rows_le_p != 1:
                comp.add(i)
        comps.append(comp)
        prev = lv
    return SetSystem(array.n_max, comps)


def array_from_sets(sets: SetSystem, n_max=None) -> PartitionArray:
    """Inverse of sets_from_array: col_j(m) = col_j(m-1) + 1{j-1 not in V_m}."""
    if n_max is None:
        n_max = sets.n_max
    j_max = 1 + max((max(c) for c in sets.complements if c), default=-1)
    cols = [0] * (j_max + 1)
    levels = []
    for m in range(1, n_max + 1):
        for j in range(1, j_max + 1):
            if not sets.contains(m, j - 1):
                cols[j] += 1
        lv = [sum(1 for j in range(1, j_max + 1) if cols[j] >= i) for i in range(1, m + 1)]
        levels.append(lv)
    return PartitionArray(n_max, levels)


def counter_partition(sets: SetSystem, m: int) -> tuple:
    """(m - h^(0), m - h^(1), ...): the conjugate of the level-m partition."""
    j_max = 1 + max((max(c) for c in sets.complements if c), default=-1)
    vals = [m - sets.h_count(r, m) for r in range(0, j_max + 1)]
    return pt.strip_zeros(tuple(vals))


# ---------------------------------------------------------------------------
# t-PushTASEP


@dataclass
class PushTASEPState:
    """Occupation on sites 1..n_sites (initially fully packed)."""

    n_sites: int
    occupied: list = field(default_factory=list)

    def __post_init__(self):
        if not self.occupied:
            self.occupied = [True] * self.n_sites

    def copy(self):
        return PushTASEPState(self.n_sites, list(self.occupied))


def pushtasep_apply_clock(state: PushTASEPState, k: int, t: float, uniform):
    """Clock ring at site k (1-based).  Returns (src, dst) or None.

    dst is None when the active particle escapes past the tracked window.
    """
    uniform = _as_uniform(uniform)
    occ = state.occupied
    if not occ[k - 1]:
        return None
    occ[k - 1] = False
    z = k + 1
    while z <= state.n_sites:
        if occ[z - 1]:
            z += 1  # push: the occupant carries on as the active particle
        elif uniform() < 1.0 - t:
            occ[z - 1] = True
            return (k, z)
        else:
            z += 1
    return (k, None)


def run_pushtasep(rates, t: float, horizon: float, seed: int) -> tuple:
    """Event-driven t-PushTASEP from the packed state.

    rates gives one clock rate per tracked site.  Returns (events, state)
    with events = [(time, site_rung, src_or_None, dst_or_None)].
    """
    rates = [float(c) for c in rates]
    n = len(rates)
    rng = np.random.default_rng(seed)
    total = sum(rates)
    cum = np.cumsum(rates)
    state = PushTASEPState(n)
    events = []
    time = 0.0
    while True:
        dt = rng.exponential(1.0 / total)
        if time + dt >= horizon:
            break
        time += dt
        k = 1 + int(np.searchsorted(cum, rng.random() * total))
        k = min(k, n)
        move = pushtasep_apply_clock(state, k, t, rng.random)
        if move is None:
            events.append((time, k, None, None))
        else:
            events.append((time, k, move[0], move[1]))
    return events, state
