"""Named claims checked per coloring, exhaustively, or on seeded random samples."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

import numpy as np

from ramcover.canon import RAW, VERTEX_COLOR, enumerate_colorings, normalize_mode
from ramcover.colorings import EdgeColoring, partition_coloring, random_coloring
from ramcover.covers import brute_cycle_partition, brute_path_cover, component_cover
from ramcover.errors import Inapplicable, InvariantError
from ramcover.ramsey import (
    cockayne_lorimer_threshold,
    find_missing_color_matching,
    main_threshold,
    max_s_colored_matching,
    sweep_missing_color_perfect_matchings,
)

VERIFIED = "verified"
COUNTEREXAMPLE = "counterexample"
SAMPLED_OK = "sampled-ok"


@dataclass(frozen=True)
class Claim:
    name: str
    k: int | None = None
    p: int | None = None
    s: int | None = None

    def __post_init__(self) -> None:
        rule = CLAIMS.get(self.name)
        if rule is None:
            raise InvariantError(f"unknown claim {self.name!r}; known: {sorted(CLAIMS)}")
        for key in ("k", "p", "s"):
            value = getattr(self, key)
            if key in rule.params:
                if value is None or value < 1:
                    raise InvariantError(f"claim {self.name} needs a parameter {key} >= 1")
            elif value is not None:
                raise InvariantError(f"claim {self.name} takes no parameter {key}")

    @property
    def params(self) -> dict[str, int]:
        return {key: getattr(self, key) for key in ("k", "p", "s") if getattr(self, key) is not None}

    @property
    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({inner})" if inner else self.name

    def kind(self, t: int) -> str:
        """'theorem' when the claim is proved for this t, else 'conjecture'."""
        if self.name in ("ryser", "conncover"):
            return "theorem" if t <= 5 else "conjecture"
        return CLAIMS[self.name].kind


@dataclass(frozen=True)
class ClaimCheck:
    holds: bool
    diagnostic: str = ""


@dataclass(frozen=True)
class _ClaimRule:
    params: tuple[str, ...]
    kind: str
    hypothesis: Callable[[Claim, int, int], str | None]
    check: Callable[[Claim, EdgeColoring], ClaimCheck]
    color_symmetric: bool = True


def _hyp_main(cl: Claim, n: int, t: int) -> str | None:
    if t < 2:
        return "needs t >= 2"
    need = main_threshold(cl.k, t).n_guarantee
    return None if n >= need else f"n={n} is below the threshold {need}"


def _chk_main(cl: Claim, c: EdgeColoring) -> ClaimCheck:
    if find_missing_color_matching(c, cl.k) is not None:
        return ClaimCheck(True)
    best = max_s_colored_matching(c, c.t - 1).size
    return ClaimCheck(False, f"largest {c.t - 1}-colored matching has size {best} < {cl.k}")


def _hyp_missone(cl: Claim, n: int, t: int) -> str | None:
    if t < 2:
        return "needs t >= 2"
    if n % 2 or not 2 <= n <= 2**t - 2:
        return f"needs even n with 2 <= n <= 2^t - 2 = {2**t - 2}, got n={n}"
    return None


def _chk_missone(cl: Claim, c: EdgeColoring) -> ClaimCheck:
    if find_missing_color_matching(c, c.n // 2) is not None:
        return ClaimCheck(True)
    best = max_s_colored_matching(c, c.t - 1).size
    return ClaimCheck(False, f"every perfect matching uses all {c.t} colors; best color-missing matching has size {best}")


def _hyp_cl(cl: Claim, n: int, t: int) -> str | None:
    need = cockayne_lorimer_threshold(cl.p, t)
    return None if n >= need else f"n={n} is below (t+1)p+2 = {need}"


def _chk_cl(cl: Claim, c: EdgeColoring) -> ClaimCheck:
    best = max_s_colored_matching(c, 1).size
    if best >= cl.p + 1:
        return ClaimCheck(True)
    return ClaimCheck(False, f"largest monochromatic matching has size {best} < {cl.p + 1}")


def _hyp_conj42(cl: Claim, n: int, t: int) -> str | None:
    if t != 4:
        return f"needs t = 4, got t={t}"
    need = (8 * cl.k - 2) // 3
    return None if n >= need else f"n={n} is below floor((8k-2)/3) = {need}"


def _chk_conj42(cl: Claim, c: EdgeColoring) -> ClaimCheck:
    best = max_s_colored_matching(c, 2).size
    if best >= cl.k:
        return ClaimCheck(True)
    return ClaimCheck(False, f"largest 2-colored matching has size {best} < {cl.k}")


def _hyp_ryser(cl: Claim, n: int, t: int) -> str | None:
    return None if t >= 2 else "needs t >= 2"


def _chk_ryser(cl: Claim, c: EdgeColoring) -> ClaimCheck:
    covered = component_cover(c, c.t - 1).covered_count
    if covered == c.n:
        return ClaimCheck(True)
    return ClaimCheck(False, f"{c.t - 1} monochromatic components cover only {covered} of {c.n} vertices")


def _hyp_conncover(cl: Claim, n: int, t: int) -> str | None:
    if t < 2 or cl.s > t - 1:
        return f"needs 1 <= s <= t-1, got s={cl.s}, t={t}"
    return None


def _chk_conncover(cl: Claim, c: EdgeColoring) -> ClaimCheck:
    covered = component_cover(c, cl.s).covered_count
    if covered * (c.t - 1) >= c.n * cl.s:
        return ClaimCheck(True)
    return ClaimCheck(False, f"{cl.s} components cover {covered} < ns/(t-1) = {c.n * cl.s / (c.t - 1):.4g}")


def _hyp_conj2(cl: Claim, n: int, t: int) -> str | None:
    return None if t == 3 else f"needs t = 3, got t={t}"


def _chk_conj2(cl: Claim, c: EdgeColoring) -> ClaimCheck:
    covered = brute_path_cover(c, 2).covered_count
    if 7 * covered >= 6 * c.n:
        return ClaimCheck(True)
    return ClaimCheck(False, f"two disjoint monochromatic paths cover {covered} < 6n/7 = {6 * c.n / 7:.4g}")


def _hyp_cyccov(cl: Claim, n: int, t: int) -> str | None:
    return None


def _chk_cyccov(cl: Claim, c: EdgeColoring) -> ClaimCheck:
    pieces = len(brute_cycle_partition(c).pieces)
    if pieces <= c.t:
        return ClaimCheck(True)
    return ClaimCheck(False, f"fewest monochromatic cycles partitioning V is {pieces} > t = {c.t}")


CLAIMS: dict[str, _ClaimRule] = {
    "main": _ClaimRule(("k",), "theorem", _hyp_main, _chk_main),
    "missone": _ClaimRule((), "theorem", _hyp_missone, _chk_missone),
    "cockayne_lorimer": _ClaimRule(("p",), "theorem", _hyp_cl, _chk_cl),
    "conj42": _ClaimRule(("k",), "conjecture", _hyp_conj42, _chk_conj42),
    "ryser": _ClaimRule((), "theorem", _hyp_ryser, _chk_ryser),
    "conncover": _ClaimRule(("s",), "theorem", _hyp_conncover, _chk_conncover),
    "conj2": _ClaimRule((), "conjecture", _hyp_conj2, _chk_conj2),
    "cyccov": _ClaimRule((), "conjecture", _hyp_cyccov, _chk_cyccov),
}


def applicability(claim: Claim, n: int, t: int) -> str | None:
    """Reason the claim's hypothesis fails at (n, t), or None if it applies."""
    return CLAIMS[claim.name].hypothesis(claim, n, t)


def check_claim(c: EdgeColoring, claim: Claim) -> ClaimCheck:
    """Evaluate ``claim`` on one coloring; raises Inapplicable if its hypothesis fails."""
    reason = applicability(claim, c.n, c.t)
    if reason:
        raise Inapplicable(f"{claim.label} does not apply: {reason}")
    return CLAIMS[claim.name].check(claim, c)


@dataclass(frozen=True)
class ClaimReport:
    claim: Claim
    n: int
    t: int
    status: str
    checked: int
    kind: str
    counterexample: EdgeColoring | None = None
    diagnostic: str = ""
    seed: int | None = None
    shard: tuple[int, int] | None = None
    mode: str | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {
            "claim": self.claim.name,
            "params": self.claim.params,
            "n": self.n,
            "t": self.t,
            "kind": self.kind,
            "status": self.status,
            "checked": self.checked,
        }
        if self.mode is not None:
            out["mode"] = self.mode
        if self.seed is not None:
            out["seed"] = self.seed
        if self.shard is not None:
            out["shard"] = list(self.shard)
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
            out["diagnostic"] = self.diagnostic
        out.update(self.extra)
        return out


def _require(claim: Claim, n: int, t: int) -> None:
    reason = applicability(claim, n, t)
    if reason:
        raise Inapplicable(f"{claim.label} does not apply: {reason}")


def _run(claim: Claim, n: int, t: int, colorings: Iterable[EdgeColoring], ok_status: str, **meta) -> ClaimReport:
    checked = 0
    for c in colorings:
        checked += 1
        result = CLAIMS[claim.name].check(claim, c)
        if not result.holds:
            return ClaimReport(claim, n, t, COUNTEREXAMPLE, checked, claim.kind(t), c, result.diagnostic, **meta)
    return ClaimReport(claim, n, t, ok_status, checked, claim.kind(t), **meta)


def exhaustive_verify(
    n: int,
    t: int,
    claim: Claim,
    mode: str = VERTEX_COLOR,
    shard: tuple[int, int] = (0, 1),
    budget: int | None = None,
) -> ClaimReport:
    """Check the claim on one representative of every class (or every coloring in raw mode)."""
    _require(claim, n, t)
    mode = normalize_mode(mode)
    if mode == VERTEX_COLOR and not CLAIMS[claim.name].color_symmetric:
        raise InvariantError(f"{claim.label} refers to specific colors; use vertex-only mode")
    shard_meta = shard if shard != (0, 1) else None
    if claim.name == "missone" and mode == RAW and shard == (0, 1):
        sweep = sweep_missing_color_perfect_matchings(n, t)
        if sweep["first_failure"] is not None:
            cx = sweep["first_failure"]
            return ClaimReport(claim, n, t, COUNTEREXAMPLE, sweep["checked"], claim.kind(t), cx,
                               _chk_missone(claim, cx).diagnostic, mode=mode)
        return ClaimReport(claim, n, t, VERIFIED, sweep["checked"], claim.kind(t), mode=mode)
    colorings = enumerate_colorings(n, t, mode, shard, budget)
    return _run(claim, n, t, colorings, VERIFIED, shard=shard_meta, mode=mode)


def extremal_neighborhood_coloring(n: int, t: int, rng: np.random.Generator, noise: float = 0.1) -> EdgeColoring:
    """Random partition-vector coloring with shuffled colors, then each edge
    recolored uniformly with probability ``noise``."""
    cuts = np.sort(rng.integers(0, n + 1, size=t - 1))
    parts = np.diff(np.concatenate(([0], cuts, [n]))).tolist()
    if sum(parts[:-1]) == 0 and parts[-1] == 0:
        parts[-1] = n
    base = partition_coloring(parts).recolor((rng.permutation(t) + 1).tolist())
    colors = np.frombuffer(base.colors, dtype=np.uint8).copy()
    flip = rng.random(colors.size) < noise
    colors[flip] = rng.integers(1, t + 1, size=int(flip.sum()), dtype=np.uint8)
    perm = (rng.permutation(n) + 1).tolist()
    return EdgeColoring(n, t, colors.tobytes()).relabel(perm)


GENERATORS = {
    "uniform": lambda n, t, rng: random_coloring(n, t, rng),
    "extremal": extremal_neighborhood_coloring,
}


def sample_colorings(n: int, t: int, samples: int, seed: int, streams: int = 1, generator: str = "uniform"):
    """Seeded samples; stream j draws from default_rng([seed, j]) and gets an equal share."""
    try:
        gen = GENERATORS[generator]
    except KeyError:
        raise InvariantError(f"unknown generator {generator!r}; use one of {sorted(GENERATORS)}") from None
    if streams < 1:
        raise InvariantError("streams must be >= 1")
    for j in range(streams):
        rng = np.random.default_rng([seed, j])
        count = samples // streams + (j < samples % streams)
        for _ in range(count):
            yield gen(n, t, rng)


def random_verify(
    n: int,
    t: int,
    claim: Claim,
    samples: int,
    seed: int,
    streams: int = 1,
    generator: str = "uniform",
) -> ClaimReport:
    """Check the claim on seeded random colorings; the first violation is reported."""
    _require(claim, n, t)
    report = _run(claim, n, t, sample_colorings(n, t, samples, seed, streams, generator), SAMPLED_OK, seed=seed)
    if generator != "uniform":
        report = replace(report, extra={"generator": generator})
    return report


def merge_reports(reports: list[ClaimReport]) -> ClaimReport:
    """Combine shard reports: counts add, any counterexample wins (lowest shard first)."""
    if not reports:
        raise InvariantError("nothing to merge")
    head = reports[0]
    for r in reports[1:]:
        if (r.claim, r.n, r.t) != (head.claim, head.n, head.t):
            raise InvariantError("cannot merge reports for different claims or sizes")
    checked = sum(r.checked for r in reports)
    ordered = sorted(reports, key=lambda r: r.shard or (0, 1))
    bad = next((r for r in ordered if r.status == COUNTEREXAMPLE), None)
    if bad is not None:
        return replace(bad, checked=checked, shard=None)
    return replace(head, checked=checked, shard=None)


def revalidate(report: ClaimReport) -> bool:
    """True if the report's counterexample still violates the claim."""
    if report.counterexample is None:
        return False
    return not check_claim(report.counterexample, report.claim).holds


def tabulate_path_cover_minima(n: int, t: int, s_values: Iterable[int], samples: int, seed: int) -> dict:
    """Empirical minimum over sampled colorings of vertices covered by s disjoint
    monochromatic paths. Exploration only: nothing is asserted."""
    rows = {}
    colorings = list(sample_colorings(n, t, samples, seed))
    for s in s_values:
        rows[s] = min(brute_path_cover(c, s).covered_count for c in colorings)
    return {"n": n, "t": t, "samples": samples, "seed": seed, "min_covered": rows}


def completions(base: EdgeColoring) -> Iterable[EdgeColoring]:
    """Every coloring of K_{n+1} that restricts to ``base`` on vertices 1..n."""
    for ext in itertools.product(range(1, base.t + 1), repeat=base.n):
        yield base.extend(ext)

