"""Seeded fuzz campaigns over random (A, X, Y) instances."""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .. import numkern, ritz
from ..bounds import ALL_BOUNDS, BoundCheckReport, check_all, check_bound, parse_bound
from ..errors import ContractError
from ..matio import format_matrix
from ..subspace import perturb_subspace

SPECTRUM_MODELS = ("uniform-interval", "clustered", "integer", "two-point")
ANGLE_MODELS = ("uniform", "graded-powers", "near-zero", "mixed-with-right-angles")
INVARIANCE_MODES = ("invariant-x", "none", "contiguous-extreme", "half-spectrum", "general-invariant")
NEAR_ZERO_FLOOR = 1e-7


def _as_tuple(v, allowed, what):
    vals = (v,) if isinstance(v, str) else tuple(v)
    if not vals:
        raise ContractError(f"{what}: at least one value required")
    for s in vals:
        if s not in allowed:
            raise ContractError(f"unknown {what} {s!r}; choose from {allowed}")
    return vals


@dataclass(frozen=True)
class FuzzConfig:
    """Campaign parameters.

    ``spectrum_model`` and ``angle_model`` may list several models; each trial
    draws one.  Several ``invariance_mode`` values are used round-robin by
    trial index so every mode gets an equal share of trials.
    """

    trials: int = 1000
    n_range: tuple[int, int] = (2, 12)
    k_range: tuple[int, int] = (1, 6)
    spectrum_model: tuple[str, ...] = SPECTRUM_MODELS
    angle_model: tuple[str, ...] = ANGLE_MODELS
    invariance_mode: tuple[str, ...] = ("invariant-x",)
    seed: int = 0
    tolerance: float = 1e-9
    bounds: tuple[str, ...] = tuple(b.value for b in ALL_BOUNDS)
    rhs_scale: float = 1.0
    strict: bool = False
    max_shrink: int = 5

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("spectrum_model", _as_tuple(self.spectrum_model, SPECTRUM_MODELS, "spectrum model"))
        set_("angle_model", _as_tuple(self.angle_model, ANGLE_MODELS, "angle model"))
        set_("invariance_mode", _as_tuple(self.invariance_mode, INVARIANCE_MODES, "invariance mode"))
        set_("bounds", tuple(parse_bound(b).value for b in self.bounds))
        set_("n_range", tuple(int(v) for v in self.n_range))
        set_("k_range", tuple(int(v) for v in self.k_range))
        (n0, n1), (k0, k1) = self.n_range, self.k_range
        if self.trials < 1:
            raise ContractError("trials must be >= 1")
        if not (1 <= n0 <= n1 and 1 <= k0 <= k1 <= n1):
            raise ContractError(f"need 1 <= n_min <= n_max and 1 <= k_min <= k_max <= n_max; got n={self.n_range}, k={self.k_range}")
        if self.seed < 0:
            raise ContractError("seed must be nonnegative")
        if self.tolerance < 0:
            raise ContractError("tolerance must be nonnegative")

    def to_dict(self) -> dict:
        d = asdict(self)
        for key, val in d.items():
            if isinstance(val, tuple):
                d[key] = list(val)
        return d

    @classmethod
    def from_dict(cls, d) -> "FuzzConfig":
        return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in d.items()})


@dataclass
class Instance:
    a: np.ndarray
    x: np.ndarray
    y: np.ndarray
    meta: dict

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        for m in (self.a, self.x, self.y):
            h.update(np.ascontiguousarray(m, dtype=np.complex128).tobytes())
        return h.hexdigest()[:16]


def _spectrum(model, n, rng) -> np.ndarray:
    if model == "uniform-interval":
        lo = rng.uniform(-5.0, 5.0)
        width = np.exp(rng.uniform(np.log(0.1), np.log(10.0)))
        return rng.uniform(lo, lo + width, n)
    if model == "clustered":
        centers = rng.uniform(-1.0, 1.0, rng.integers(1, 4))
        return centers[rng.integers(0, centers.size, n)] + 1e-3 * rng.standard_normal(n)
    if model == "integer":
        return rng.integers(-3, 4, n).astype(float)
    p = int(rng.integers(1, n)) if n > 1 else 1
    return np.concatenate([np.ones(p), -np.ones(n - p)])


def _angles(model, k, rng) -> np.ndarray:
    if model == "uniform":
        th = rng.uniform(0.0, np.pi / 2, k)
    elif model == "graded-powers":
        th = 10.0 ** -rng.uniform(0.0, 7.0, k)
    elif model == "near-zero":
        th = np.exp(rng.uniform(np.log(NEAR_ZERO_FLOOR), np.log(1e-3), k))
        th[rng.uniform(size=k) < 0.2] = NEAR_ZERO_FLOOR
    else:
        u = rng.uniform(size=k)
        th = rng.uniform(0.0, np.pi / 2, k)
        th[u < 0.3] = np.pi / 2
        th[(u >= 0.3) & (u < 0.45)] = 0.0
    return np.minimum(th, np.pi / 2)


def _general_indices(lam, k, rng):
    """Index set straddling the midpoint, neither the top nor the bottom k."""
    n = lam.size
    mid = 0.5 * (lam[0] + lam[-1])
    margin = 1e-6 * (lam[0] - lam[-1])
    upper = np.flatnonzero(lam > mid + margin)
    lower = np.flatnonzero(lam < mid - margin)
    if k < 2 or upper.size == 0 or lower.size == 0:
        return None
    for _ in range(20):
        idx = {int(rng.choice(upper)), int(rng.choice(lower))}
        rest = [i for i in range(n) if i not in idx]
        idx |= {int(i) for i in rng.choice(rest, k - 2, replace=False)}
        sel = np.sort(lam[sorted(idx)])[::-1]
        if np.abs(sel - lam[:k]).max() > margin and np.abs(sel - lam[-k:]).max() > margin:
            return sorted(idx)
    return None


def generate_instance(cfg: FuzzConfig, trial_seed: int) -> Instance:
    """Deterministic instance for ``(cfg.seed, trial_seed)``.

    Raises ``ContractError`` when the configuration cannot produce an instance
    for this trial (the campaign records it as skipped).
    """
    rng = numkern.make_rng([cfg.seed, int(trial_seed)])
    mode = cfg.invariance_mode[int(trial_seed) % len(cfg.invariance_mode)]
    spectrum_model = str(rng.choice(cfg.spectrum_model))
    angle_model = str(rng.choice(cfg.angle_model))
    (n0, n1), (k0, k1) = cfg.n_range, cfg.k_range
    if mode == "general-invariant":
        n0, k0 = max(n0, 3), max(k0, 2)
        if n0 > n1 or k0 > min(k1, n1 - 1):
            raise ContractError("general-invariant mode needs n >= 3 and 2 <= k < n")
    indices = None
    for _ in range(50):
        n = int(rng.integers(max(n0, k0), n1 + 1))
        k_hi = min(k1, n - 1) if mode == "general-invariant" else min(k1, n)
        k = int(rng.integers(k0, k_hi + 1))
        lam = np.sort(_spectrum(spectrum_model, n, rng))[::-1]
        if mode == "none":
            break
        if mode == "invariant-x":
            indices = sorted(int(i) for i in rng.choice(n, k, replace=False))
        elif mode == "contiguous-extreme":
            indices = list(range(k)) if rng.uniform() < 0.5 else list(range(n - k, n))
        elif mode == "half-spectrum":
            mid = 0.5 * (lam[0] + lam[-1])
            top, bottom = np.flatnonzero(lam >= mid), np.flatnonzero(lam <= mid)
            side = top if rng.uniform() < 0.5 else bottom
            k = min(k, side.size)
            indices = sorted(int(i) for i in rng.choice(side, k, replace=False))
        else:
            indices = _general_indices(lam, k, rng)
        if indices is not None:
            break
    else:
        raise ContractError(f"could not draw a {mode} index set (n={n}, k={k})")

    q = numkern.random_unitary(n, rng)
    a = numkern.hermitian((q * lam) @ q.conj().T)
    if indices is None:
        x = numkern.random_basis(n, k, rng)
    else:
        # eigenvectors of a are the columns of q; mix them to hide the eigenbasis
        x = q[:, indices] @ numkern.random_unitary(k, rng)

    theta = np.sort(_angles(angle_model, k, rng))[::-1]
    capacity = n - k
    if np.count_nonzero(theta) > capacity:
        theta[capacity:] = 0.0
    y = perturb_subspace(x, theta, rng) @ numkern.random_unitary(k, rng)
    meta = {
        "trial_seed": int(trial_seed),
        "n": n,
        "k": k,
        "mode": mode,
        "spectrum_model": spectrum_model,
        "angle_model": angle_model,
        "indices": indices,
        "target_angles": [float(t) for t in theta],
    }
    return Instance(a, x, y, meta)


def _new_counter():
    return {"applicable": 0, "held": 0, "violated": 0, "inapplicable": 0}


@dataclass
class CampaignReport:
    config: FuzzConfig
    counters: dict
    mode_counters: dict
    worst_slack: dict
    violations: list = field(default_factory=list)
    shrunk: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def bug_count(self) -> int:
        return sum(1 for v in self.violations if v["category"] == "bug")

    @property
    def finding_count(self) -> int:
        return sum(1 for v in self.violations if v["category"] == "finding")

    @property
    def ok(self) -> bool:
        """No theorem-status violations (and no findings in strict mode)."""
        return self.bug_count == 0 and not (self.config.strict and self.finding_count)

    def to_dict(self, timestamp: bool = True) -> dict:
        d = {
            "config": self.config.to_dict(),
            "rng_algorithm": numkern.RNG_ALGORITHM,
            "counters": self.counters,
            "mode_counters": self.mode_counters,
            "worst_slack": self.worst_slack,
            "violations": self.violations,
            "shrunk": self.shrunk,
            "skipped": self.skipped,
            "seeds": {"campaign": self.config.seed, "violating_trials": sorted({v["trial_seed"] for v in self.violations})},
        }
        if timestamp:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, timestamp: bool = True) -> str:
        return json.dumps(self.to_dict(timestamp), indent=2, sort_keys=True)

    def summary_rows(self) -> list[dict]:
        rows = []
        for b, c in self.counters.items():
            rows.append({"bound": b, **c, "worst_slack": self.worst_slack.get(b)})
        return rows


def _trial(cfg: FuzzConfig, t: int):
    try:
        inst = generate_instance(cfg, t)
    except ContractError as exc:
        return t, None, None, str(exc)
    reports = check_all(inst.a, inst.x, inst.y, tol=cfg.tolerance, bounds=cfg.bounds, rhs_scale=cfg.rhs_scale)
    return t, inst, reports, None


def _trial_range(cfg: FuzzConfig, start: int, stop: int):
    out = []
    for t in range(start, stop):
        t, inst, reports, skip = _trial(cfg, t)
        # only violating instances are shipped back whole
        keep = inst if reports and any(r.violated for r in reports) else None
        slim = None
        if reports is not None:
            slim = [(r.bound.value, r.applicable, r.holds,
                     r.verdict.min_slack if r.verdict else None,
                     r if r.violated else None) for r in reports]
        meta = inst.meta if inst is not None else None
        out.append((t, meta, keep, slim, skip))
    return out


def run_campaign(cfg: FuzzConfig, jobs: int = 1, findings_dir=None) -> CampaignReport:
    """Run ``cfg.trials`` trials; results do not depend on ``jobs``."""
    from .shrink import shrink

    t0 = time.perf_counter()
    if jobs > 1 and cfg.trials > 1:
        step = -(-cfg.trials // (4 * jobs))
        chunks = [(s, min(s + step, cfg.trials)) for s in range(0, cfg.trials, step)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_trial_range, [cfg] * len(chunks), *zip(*chunks)))
        results = [r for part in parts for r in part]
    else:
        results = _trial_range(cfg, 0, cfg.trials)

    counters = {b: _new_counter() for b in cfg.bounds}
    modes = {m: {b: _new_counter() for b in cfg.bounds} for m in cfg.invariance_mode}
    worst = {b: None for b in cfg.bounds}
    report = CampaignReport(cfg, counters, modes, worst)
    for t, meta, inst, slim, skip in sorted(results, key=lambda r: r[0]):
        if skip is not None:
            report.skipped.append({"trial_seed": t, "reason": skip})
            for b in cfg.bounds:
                counters[b]["inapplicable"] += 1
            continue
        mode_c = modes[meta["mode"]]
        for bname, applicable, holds, min_slack, full in slim:
            for c in (counters[bname], mode_c[bname]):
                if not applicable:
                    c["inapplicable"] += 1
                    continue
                c["applicable"] += 1
                c["held" if holds else "violated"] += 1
            if applicable and (worst[bname] is None or min_slack < worst[bname]):
                worst[bname] = min_slack
            if full is not None:
                report.violations.append(_violation_record(t, inst, full))
    for v in report.violations:
        if len(report.shrunk) < cfg.max_shrink:
            inst = generate_instance(cfg, v["trial_seed"])
            res = shrink(inst.a, inst.x, inst.y, v["report"]["bound"], cfg.tolerance, rhs_scale=cfg.rhs_scale)
            report.shrunk.append({"trial_seed": v["trial_seed"], **res.to_dict()})
    report.wall_time = time.perf_counter() - t0
    if findings_dir is not None and report.violations:
        persist_findings(report, findings_dir)
    return report


def _violation_record(t, inst: Instance, r: BoundCheckReport) -> dict:
    return {
        "trial_seed": t,
        "digest": inst.digest,
        "category": "bug" if r.theorem_status else "finding",
        "meta": inst.meta,
        "report": r.to_dict(),
    }


def replay(cfg: FuzzConfig, trial_seed: int, bound) -> BoundCheckReport:
    """Regenerate trial ``trial_seed`` of ``cfg`` and re-check one bound."""
    inst = generate_instance(cfg, trial_seed)
    return check_bound(bound, inst.a, inst.x, inst.y, cfg.tolerance, rhs_scale=cfg.rhs_scale)


def persist_findings(report: CampaignReport, directory) -> list[Path]:
    """Write one JSON file per violation, with the instance in matrix text format."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for v in report.violations:
        inst = generate_instance(report.config, v["trial_seed"])
        rec = dict(v)
        rec["config"] = report.config.to_dict()
        rec["matrices"] = {name: format_matrix(m) for name, m in (("A", inst.a), ("X", inst.x), ("Y", inst.y))}
        p = out / f"{v['category']}-{v['report']['bound']}-seed{report.config.seed}-trial{v['trial_seed']}.json"
        p.write_text(json.dumps(rec, indent=2, sort_keys=True))
        paths.append(p)
    return paths


def classify_generated(inst: Instance, tol=numkern.DEFAULT_TOLERANCES.inv) -> ritz.InvariantClass:
    return ritz.classify_invariant(inst.a, inst.x, tol)
