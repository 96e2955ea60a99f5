"""Exact matching by reduction to bounded correct parity matching.

Two BCPM calls give perfect matchings ``M``, ``M'`` with
``r(M) <= k <= r(M')`` and the parity of ``k``. Then

* phase 1 brings ``r(M)`` and ``r(M')`` within a bounded gap of each other
  without changing parities (toggling cycles of ``M ^ M'`` or using skips),
* phase 2 moves ``r(M)`` up or ``r(M')`` down by exactly 2 through small
  exchanges, or shrinks ``M ^ M'`` with a zero-weight skip/cycle set,
* phase 3 runs when phase 2 is stuck: a PM with ``k`` red edges, if one
  exists, is then close to ``M`` and is searched for by color coding, with
  exhaustive fallbacks that are reported as such.

Without an oracle, starting from red-minimum and red-maximum PMs gives a
PM with ``k - 1`` or ``k`` red edges on yes-instances.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from itertools import combinations

from .bcpm import solve_bcpm_bipartite, solve_bcpm_bruteforce
from .colorcoding import color_coding_search
from .errors import InputError
from .graph import (
    Color,
    ColoredGraph,
    PerfectMatching,
    _color,
    sym_diff_cycles,
    toggle,
)
from .matching import complete_monochromatic, extremal_red_pm
from .oracles import ENUM_CAP, INDEPENDENCE_CAP, brute_decide, brute_independence, enumerate_pms
from .skips import (
    CyclePath,
    SearchBudget,
    check_biskip,
    check_skip,
    find_signed_skips,
    find_zero_skip_cycle_set,
    use_skip,
    use_skip_cycle_set,
)

__all__ = [
    "SolverConfig",
    "SolverOutcome",
    "TraceEvent",
    "initial_matchings",
    "phase1",
    "find_exchange",
    "phase2",
    "phase3",
    "solve_em",
    "solve_em_approx",
    "check_stuck_conditions",
]

log = logging.getLogger(__name__)

Oracle = Callable[[ColoredGraph, int], "PerfectMatching | None"]


@dataclass(frozen=True)
class SolverConfig:
    """Thresholds of the reduction. ``None`` fields are derived from ``param``.

    ``gap_bound`` defaults to ``16 * 4**param``, ``t`` to ``256 * 4**(2 param)``.
    ``L`` is the phase-3 distance budget, of which color coding handles at
    most ``cc_max_L``; ``xp_max`` bounds the exchange fallback and
    ``brute_cap`` the final enumeration.
    """

    mode: str | None = None  # "alpha" | "beta"; None picks beta on bipartite input
    param: int | None = None
    gap_bound: int | None = None
    t: int | None = None
    L: int = 12
    cc_max_L: int = 8
    cc_trials: int | None = None
    seed: int = 0
    xp_max: int = 4
    brute_cap: int = ENUM_CAP
    node_budget: int = 200_000

    def resolve(self, g: ColoredGraph) -> "SolverConfig":
        mode = self.mode or ("beta" if g.is_bipartite else "alpha")
        if mode not in ("alpha", "beta"):
            raise InputError(f"mode must be alpha or beta, not {mode!r}")
        if mode == "beta" and not g.is_bipartite:
            raise InputError("beta mode needs a bipartite graph")
        param = self.param
        if param is None:
            if g.n > INDEPENDENCE_CAP:
                raise InputError(f"n = {g.n}: give the {mode} parameter explicitly")
            param = brute_independence(g, mode)
        if param < 0:
            raise InputError("the independence parameter is non-negative")
        scale = 4**param
        cfg = replace(
            self,
            mode=mode,
            param=param,
            gap_bound=self.gap_bound if self.gap_bound is not None else 16 * scale,
            t=self.t if self.t is not None else 256 * scale * scale,
        )
        for name in ("gap_bound", "t", "L", "cc_max_L", "xp_max", "node_budget"):
            if getattr(cfg, name) <= 0:
                raise InputError(f"{name} must be positive")
        return cfg

    @property
    def scale(self) -> int:
        return 4 ** (self.param or 0)


@dataclass(frozen=True)
class TraceEvent:
    phase: str
    step: str
    ok: bool
    r_m: int
    r_m2: int
    sd: int

    def line(self) -> str:
        return f"t {self.phase} {self.step} {int(self.ok)} {self.r_m} {self.r_m2} {self.sd}"

    @classmethod
    def parse(cls, line: str) -> "TraceEvent":
        parts = line.split()
        if len(parts) != 7 or parts[0] != "t":
            raise InputError(f"bad trace line {line!r}")
        return cls(parts[1], parts[2], parts[3] == "1", int(parts[4]), int(parts[5]), int(parts[6]))


@dataclass
class SolverOutcome:
    """``status`` is solution, approx, no-instance or budget-exceeded."""

    status: str
    matching: PerfectMatching | None = None
    m: PerfectMatching | None = None
    m2: PerfectMatching | None = None
    phase: str = ""
    method: str = ""
    trace: list[TraceEvent] = field(default_factory=list)

    @property
    def decided(self) -> bool:
        return self.status != "budget-exceeded"


def _event(trace, phase, step, ok, m, m2):
    sd = len(m.edges ^ m2.edges) if m is not None and m2 is not None else 0
    trace.append(TraceEvent(phase, step, bool(ok), m.red if m else -1, m2.red if m2 else -1, sd))


def _default_oracle(g: ColoredGraph) -> Oracle:
    return solve_bcpm_bipartite if g.is_bipartite else solve_bcpm_bruteforce


def initial_matchings(g: ColoredGraph, k: int, oracle: Oracle | None = None):
    """``(M, M')`` with ``r(M) <= k <= r(M')`` of the parity of ``k``, or ``None``."""
    oracle = oracle or _default_oracle(g)
    if k < 0 or 2 * k > g.n:
        return None
    m = oracle(g, k)
    if m is None:
        return None
    swapped = oracle(g.swap_colors(), g.n // 2 - k)
    if swapped is None:
        return None
    m2 = PerfectMatching(g, swapped.edges)
    if not (m.red <= k <= m2.red) or (m.red - k) % 2 or (m2.red - k) % 2:
        raise AssertionError("oracle returned a matching outside its box")  # pragma: no cover
    return m, m2


# ---------------------------------------------------------------------------
# phase 1


def _raise_step(g, k, m, m2, cfg, half, quarter, mode):
    """One raising iteration for ``m``; returns the new ``m`` and a step label, or ``(None, reason)``."""
    cs = sym_diff_cycles(g, m, m2)
    big = [c for c, w in zip(cs.cycles, cs.weights) if w > quarter]
    if not big:
        pos = [(c, w) for c, w in zip(cs.cycles, cs.weights) if w > 0]
        even = [c for c, w in pos if w % 2 == 0]
        if even:
            return toggle(m, even[0]), "cycles"
        if len(pos) >= 2:
            return toggle(m, [pos[0][0], pos[1][0]]), "cycles"
        return None, "no-positive-cycles"
    # skips on the other side: base m2, their use rewrites m
    cs2 = sym_diff_cycles(g, m2, m)
    host = big[0]
    skips = find_signed_skips(g, m2, CyclePath.whole(host), 2, "positive", cfg.scale, mode)
    return _use_skips(m, cs2, skips), "skips"


def _lower_step(g, k, m, m2, cfg, half, quarter, mode):
    cs2 = sym_diff_cycles(g, m2, m)
    big = [c for c, w in zip(cs2.cycles, cs2.weights) if w < -quarter]
    if not big:
        neg = [(c, w) for c, w in zip(cs2.cycles, cs2.weights) if w < 0]
        even = [c for c, w in neg if w % 2 == 0]
        if even:
            return toggle(m2, even[0]), "cycles"
        if len(neg) >= 2:
            return toggle(m2, [neg[0][0], neg[1][0]]), "cycles"
        return None, "no-negative-cycles"
    cs = sym_diff_cycles(g, m, m2)
    skips = find_signed_skips(g, m, CyclePath.whole(big[0]), 2, "negative", cfg.scale, mode)
    return _use_skips(m2, cs, skips), "skips"


def _use_skips(other, cycles, skips):
    even = [s for s in skips if s.weight % 2 == 0]
    if even:
        return use_skip(other, cycles, even[0])[1]
    if len(skips) < 2:
        return None
    cycles, other = use_skip(other, cycles, skips[0])
    return use_skip(other, cycles, skips[1])[1]


def phase1(g: ColoredGraph, k: int, m: PerfectMatching, m2: PerfectMatching, cfg: SolverConfig,
           trace: list | None = None):
    """Shrink ``r(M') - r(M)`` to at most ``cfg.gap_bound`` keeping both parities.

    Each iteration toggles cycles of ``M ^ M'`` or uses one or two skips.
    If the object the existence argument promises is not found (thresholds
    set below the provable ones), the loop stops and records a stall; the
    later phases do not depend on the gap for correctness.
    """
    trace = trace if trace is not None else []
    cfg = cfg.resolve(g) if cfg.param is None or cfg.mode is None else cfg
    if not m.red <= k <= m2.red:
        raise InputError("phase 1 needs r(M) <= k <= r(M')")
    gap = cfg.gap_bound
    half, quarter = gap // 2, gap // 4
    _event(trace, "phase1", "enter", True, m, m2)
    if m2.red - m.red <= gap:
        return m, m2
    while m.red < k - half:
        new, how = _raise_step(g, k, m, m2, cfg, half, quarter, cfg.mode)
        if new is None or not (m.red < new.red <= k) or (new.red - m.red) % 2:
            _event(trace, "phase1", "stall-raise", False, m, m2)
            log.info("phase 1 raise stalled (%s)", how)
            break
        m = new
        _event(trace, "phase1", f"raise-{how}", True, m, m2)
    while m2.red > k + half:
        new, how = _lower_step(g, k, m, m2, cfg, half, quarter, cfg.mode)
        if new is None or not (k <= new.red < m2.red) or (m2.red - new.red) % 2:
            _event(trace, "phase1", "stall-lower", False, m, m2)
            log.info("phase 1 lower stalled (%s)", how)
            break
        m2 = new
        _event(trace, "phase1", f"lower-{how}", True, m, m2)
    return m, m2


# ---------------------------------------------------------------------------
# phase 2


def find_exchange(g: ColoredGraph, m: PerfectMatching, color, L: int, delta: int) -> PerfectMatching | None:
    """A PM ``M1`` with ``r(M1) = r(M) + delta`` whose symmetric difference
    with ``M`` has exactly ``L`` edges of ``color``.

    Guesses the ``color`` edges ``X`` leaving and ``Y`` entering the matching
    and completes ``(color(M) - X) + Y`` with edges of the other color.
    """
    color = _color(color)
    if L < 0:
        raise InputError("L must be non-negative")
    if L == 0:
        return m if delta == 0 else None
    d = delta if color is Color.RED else -delta
    if abs(d) > L or (L + d) % 2:
        return None
    ny = (L + d) // 2
    nx = L - ny
    in_m = sorted(e for e in m.edges if g.colors[e] is color)
    out_m = [e for e in range(g.m) if g.colors[e] is color and e not in m.edges]
    if nx > len(in_m) or ny > len(out_m):
        return None
    for xs in combinations(in_m, nx):
        drop = set(xs)
        keep = [e for e in in_m if e not in drop]
        covered = {v for e in keep for v in g.edges[e]}
        free = [e for e in out_m if g.edges[e][0] not in covered and g.edges[e][1] not in covered]
        for ys in combinations(free, ny):
            ends = [v for e in ys for v in g.edges[e]]
            if len(set(ends)) != len(ends):
                continue
            res = complete_monochromatic(g, keep + list(ys), color.other)
            if res is not None:
                return res
    return None


def _solved(r, k, approx):
    return r == k or (approx and r == k - 1)


def phase2(g: ColoredGraph, k: int, m: PerfectMatching, m2: PerfectMatching, cfg: SolverConfig,
           trace: list | None = None, approx: bool = False):
    """Run steps (i)-(iii) until a solution appears or all three fail.

    Returns ``("solution", pm, m, m2)``, ``("stuck", None, m, m2)`` or
    ``("budget", None, m, m2)``. The last only happens if the iteration cap
    ``n^2 + 1`` is hit or the skip search ran out of nodes while stuck.
    """
    trace = trace if trace is not None else []
    cap = g.n * g.n + 1
    _event(trace, "phase2", "enter", True, m, m2)
    exhausted = False
    for _ in range(cap):
        for x in (m, m2):
            if _solved(x.red, k, approx):
                _event(trace, "phase2", "solution", True, m, m2)
                return "solution", x, m, m2
        progress = False
        m1 = find_exchange(g, m, Color.RED, 2, 2)
        _event(trace, "phase2", "i", m1 is not None, m1 or m, m2)
        if m1 is not None:
            m, progress = m1, True
            if _solved(m.red, k, approx):
                _event(trace, "phase2", "iter", True, m, m2)
                continue
        m1 = find_exchange(g, m2, Color.BLUE, 2, -2)
        _event(trace, "phase2", "ii", m1 is not None, m, m1 or m2)
        if m1 is not None:
            m2, progress = m1, True
            if _solved(m2.red, k, approx):
                _event(trace, "phase2", "iter", True, m, m2)
                continue
        cs = sym_diff_cycles(g, m, m2)
        budget = SearchBudget(cfg.node_budget)
        z = find_zero_skip_cycle_set(g, m, cs, cfg.t, budget, cfg.mode) if cs.cycles else None
        if z is not None:
            _, m2 = use_skip_cycle_set(m2, cs, z)
            progress = True
        exhausted = budget.exhausted and z is None
        _event(trace, "phase2", "iii", z is not None, m, m2)
        _event(trace, "phase2", "iter", progress, m, m2)
        if not progress:
            _event(trace, "phase2", "stuck", True, m, m2)
            return ("budget" if exhausted else "stuck"), None, m, m2
    _event(trace, "phase2", "cap", False, m, m2)
    return "budget", None, m, m2


def check_stuck_conditions(g: ColoredGraph, k: int, m: PerfectMatching, m2: PerfectMatching,
                           cfg: SolverConfig, approx: bool = False) -> dict[str, bool]:
    """Recheck the six conditions a stuck phase 2 guarantees, by enumeration.

    (a) ``r(M) < k - 1`` and ``r(M') > k``; (b) ``|w_M(M ^ M')| <= t``;
    (c) no PM gains 2 red edges with exactly 2 red edges in the difference;
    (d) no PM loses 2 red edges with exactly 2 blue edges in the difference;
    (e) no 0-skip on ``M ^ M'``; (f) the skip/cycle search finds nothing.
    """
    cfg = cfg.resolve(g)
    cs = sym_diff_cycles(g, m, m2)
    out = {
        "a": m.red < k - 1 and m2.red > k,
        "b": abs(cs.weight) <= cfg.t,
    }
    c_ok = d_ok = True
    for x in enumerate_pms(g, ENUM_CAP):
        if x.red == m.red + 2 and sum(1 for e in x.edges ^ m.edges if g.colors[e] is Color.RED) == 2:
            c_ok = False
        if x.red == m2.red - 2 and sum(1 for e in x.edges ^ m2.edges if g.colors[e] is Color.BLUE) == 2:
            d_ok = False
    out["c"], out["d"] = c_ok, d_ok
    check = check_biskip if cfg.mode == "beta" else check_skip
    zero = False
    for c in cs.cycles:
        vs = set(c.vertices)
        chords = [e for e, (u, v) in enumerate(g.edges) if u in vs and v in vs and e not in c.edge_set]
        for e in chords if cfg.mode == "beta" else ():
            for an in (g.edges[e], g.edges[e][::-1]):
                zero |= check(g, m, c, (e,), an) == 0
        for e1, e2 in combinations(chords, 2):
            for a, b in (g.edges[e1], g.edges[e1][::-1]):
                for x, y in (g.edges[e2], g.edges[e2][::-1]):
                    if cfg.mode == "beta":
                        zero |= check(g, m, c, (e1, e2), (a, y, x, b)) == 0
                        zero |= check(g, m, c, (e2, e1), (x, b, a, y)) == 0
                    else:
                        zero |= check(g, m, c, (e1, e2), (a, x, b, y)) == 0
                        zero |= check(g, m, c, (e2, e1), (x, a, y, b)) == 0
    out["e"] = not zero
    out["f"] = find_zero_skip_cycle_set(g, m, cs, cfg.t, SearchBudget(cfg.node_budget), cfg.mode) is None
    return out


# ---------------------------------------------------------------------------
# phase 3


def phase3(g: ColoredGraph, k: int, m: PerfectMatching, cfg: SolverConfig, stats: dict | None = None):
    """Search near ``M`` for ``r = k``: ``(status, pm, method)``.

    Order: color coding with ``L' = min(L, cc_max_L)``; exchanges of up to
    ``xp_max`` edges of one color; enumeration when ``n <= brute_cap``.
    Only enumeration can prove a no-instance here, because ``L`` is far
    below the distance the existence argument needs; otherwise the result
    is budget-exceeded.
    """
    delta = k - m.red
    Lcc = min(cfg.L, cfg.cc_max_L)
    res = color_coding_search(g, m, Lcc, delta, trials=cfg.cc_trials, seed=cfg.seed, stats=stats)
    if res is not None:
        return "solution", res, "color-coding"
    for ell in range(1, cfg.xp_max + 1):
        for color in (Color.RED, Color.BLUE):
            res = find_exchange(g, m, color, ell, delta)
            if res is not None:
                return "solution", res, "exchange"
    if g.n <= cfg.brute_cap:
        res = brute_decide("em", g, k, cfg.brute_cap)
        if res is None:
            return "no-instance", None, "brute-force"
        return "solution", res, "brute-force"
    return "budget-exceeded", None, "none"


# ---------------------------------------------------------------------------
# drivers


def _finish(status, pm, k, approx, **kw):
    if pm is not None:
        pm = PerfectMatching(pm.graph, pm.edges)  # revalidate
        if pm.red == k:
            status = "solution"
        elif approx and pm.red == k - 1:
            status = "approx"
        else:
            raise AssertionError(f"solver produced r = {pm.red} for k = {k}")  # pragma: no cover
    return SolverOutcome(status, pm, **kw)


def _run_phases(g, k, m, m2, cfg, trace, approx):
    for x in (m, m2):
        if _solved(x.red, k, approx):
            _event(trace, "init", "solution", True, m, m2)
            return _finish("solution", x, k, approx, m=m, m2=m2, phase="init", method="initial", trace=trace)
    m, m2 = phase1(g, k, m, m2, cfg, trace)
    status, pm, m, m2 = phase2(g, k, m, m2, cfg, trace, approx)
    if status == "solution":
        return _finish(status, pm, k, approx, m=m, m2=m2, phase="phase2", method="phase2", trace=trace)
    p3_status, pm, method = phase3(g, k, m, cfg)
    _event(trace, "phase3", method, pm is not None, m, m2)
    if p3_status == "solution":
        return _finish("solution", pm, k, approx, m=m, m2=m2, phase="phase3", method=method, trace=trace)
    return SolverOutcome(p3_status, None, m, m2, "phase3", method, trace)


def solve_em(g: ColoredGraph, k: int, cfg: SolverConfig | None = None, oracle: Oracle | None = None) -> SolverOutcome:
    """Exact matching with two BCPM oracle calls; the oracle defaults to the
    polynomial bipartite solver or to enumeration on general graphs."""
    if k < 0:
        raise InputError(f"k = {k} is negative")
    cfg = (cfg or SolverConfig()).resolve(g)
    trace: list[TraceEvent] = []
    init = initial_matchings(g, k, oracle)
    if init is None:
        _event(trace, "init", "oracle", False, None, None)
        return SolverOutcome("no-instance", phase="init", method="oracle", trace=trace)
    m, m2 = init
    _event(trace, "init", "oracle", True, m, m2)
    return _run_phases(g, k, m, m2, cfg, trace, approx=False)


def solve_em_approx(g: ColoredGraph, k: int, cfg: SolverConfig | None = None) -> SolverOutcome:
    """Oracle-free variant: on yes-instances returns a PM with ``k - 1`` or ``k`` red edges."""
    if k < 0:
        raise InputError(f"k = {k} is negative")
    cfg = (cfg or SolverConfig()).resolve(g)
    trace: list[TraceEvent] = []
    m = extremal_red_pm(g, "minimize")
    m2 = extremal_red_pm(g, "maximize")
    if m is None or m2 is None or m.red > k or m2.red < k:
        _event(trace, "init", "extremal", False, m, m2)
        return SolverOutcome("no-instance", None, m, m2, phase="init", method="extremal", trace=trace)
    _event(trace, "init", "extremal", True, m, m2)
    return _run_phases(g, k, m, m2, cfg, trace, approx=True)
