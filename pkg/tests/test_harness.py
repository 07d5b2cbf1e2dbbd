import json
import time

import numpy as np
import pytest

from ritzbounds import ritz
from ritzbounds.bounds import BoundId, check_bound
from ritzbounds.errors import ContractError, ReproductionError
from ritzbounds.harness import (
    FuzzConfig,
    generate_instance,
    property_suites,
    replay,
    repro_intermediate_counterexample,
    repro_sharp,
    run_campaign,
    sharp_instance,
    shrink,
)


def test_config_validation():
    with pytest.raises(ContractError):
        FuzzConfig(trials=0)
    with pytest.raises(ContractError):
        FuzzConfig(n_range=(4, 3))
    with pytest.raises(ContractError):
        FuzzConfig(invariance_mode="sideways")
    with pytest.raises(ContractError):
        FuzzConfig(bounds=("NOPE",))
    cfg = FuzzConfig(trials=5, invariance_mode=("none", "half-spectrum"), seed=3)
    assert FuzzConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg


def test_generate_is_deterministic():
    cfg = FuzzConfig(seed=7, invariance_mode=("invariant-x", "none", "general-invariant"))
    for t in range(6):
        i1, i2 = generate_instance(cfg, t), generate_instance(cfg, t)
        assert i1.digest == i2.digest and i1.meta == i2.meta
    assert generate_instance(cfg, 0).digest != generate_instance(cfg, 3).digest


def test_generated_modes_classify_as_requested():
    modes = ("invariant-x", "none", "contiguous-extreme", "half-spectrum", "general-invariant")
    cfg = FuzzConfig(seed=1, invariance_mode=modes)
    for t in range(100):
        inst = generate_instance(cfg, t)
        cls = ritz.classify_invariant(inst.a, inst.x)
        mode = inst.meta["mode"]
        if mode == "none" and inst.meta["k"] < inst.meta["n"]:
            assert cls.tag == ritz.NOT_INVARIANT
        else:
            assert cls.invariant
        if mode == "contiguous-extreme":
            assert cls.contiguous
        if mode == "half-spectrum":
            assert cls.contiguous or cls.half
        if mode == "general-invariant":
            assert cls.tag == ritz.GENERAL


def test_two_point_spectrum_gives_equality_family():
    cfg = FuzzConfig(seed=5, spectrum_model="two-point", angle_model="uniform",
                     invariance_mode="contiguous-extreme")
    seen = 0
    for t in range(60):
        inst = generate_instance(cfg, t)
        lam = np.linalg.eigvalsh(inst.a)
        ones = int(np.sum(lam > 0))
        if inst.meta["indices"] != list(range(ones)):
            continue
        seen += 1
        r = check_bound(BoundId.CONJECTURE_SIN2, inst.a, inst.x, inst.y)
        assert np.allclose(r.lhs, r.rhs, atol=1e-10)
    assert seen >= 5


def test_angle_capacity_is_respected():
    cfg = FuzzConfig(seed=2, n_range=(3, 4), k_range=(3, 3), angle_model="uniform")
    for t in range(10):
        inst = generate_instance(cfg, t)
        assert np.count_nonzero(inst.meta["target_angles"]) <= inst.meta["n"] - inst.meta["k"]


def test_campaign_small():
    cfg = FuzzConfig(trials=100, seed=4, invariance_mode=("invariant-x", "contiguous-extreme"))
    rep = run_campaign(cfg)
    assert rep.ok and not rep.violations and not rep.skipped
    assert rep.counters["THM_ECOS"]["violated"] == 0
    assert rep.mode_counters["contiguous-extreme"]["CONJECTURE_SIN2"]["violated"] == 0
    for c in rep.counters.values():
        assert c["applicable"] + c["inapplicable"] == 100
        assert c["held"] + c["violated"] == c["applicable"]


def test_campaign_deterministic_and_jobs_invariant():
    cfg = FuzzConfig(trials=40, seed=9, invariance_mode=("invariant-x", "none"), rhs_scale=0.7)
    one = run_campaign(cfg).to_json(timestamp=False)
    assert one == run_campaign(cfg).to_json(timestamp=False)
    assert one == run_campaign(cfg, jobs=2).to_json(timestamp=False)
    single = FuzzConfig(trials=1, seed=9)
    assert run_campaign(single).to_json(timestamp=False) == run_campaign(single).to_json(timestamp=False)


def test_falsified_bound_is_reported_and_replayable(tmp_path):
    cfg = FuzzConfig(trials=30, seed=1, rhs_scale=0.4, bounds=("CONJECTURE_SIN2",), max_shrink=2)
    rep = run_campaign(cfg, findings_dir=tmp_path)
    assert rep.violations and rep.finding_count + rep.bug_count == len(rep.violations)
    files = sorted(tmp_path.iterdir())
    assert len(files) == len(rep.violations)
    rec = json.loads(files[0].read_text())
    assert set(rec["matrices"]) == {"A", "X", "Y"}
    for v in rep.violations:
        assert replay(cfg, v["trial_seed"], v["report"]["bound"]).violated
    assert len(rep.shrunk) == 2
    assert all(s["report"]["holds"] is False for s in rep.shrunk)


def test_strict_mode_fails_on_findings():
    cfg = FuzzConfig(trials=30, seed=1, rhs_scale=0.4, bounds=("CONJECTURE_SIN2",),
                     invariance_mode="general-invariant", max_shrink=0)
    assert run_campaign(cfg).ok
    assert not run_campaign(FuzzConfig(**{**cfg.to_dict(), "strict": True})).ok


def test_shrink_falsified_sharp_example():
    a, x, y, _ = sharp_instance([1.1, 0.8, 0.5, 0.3])
    res = shrink(a, x, y, BoundId.CONJECTURE_SIN2, rhs_scale=0.4)
    assert res.changed and res.a.shape[0] <= 4
    assert check_bound(BoundId.CONJECTURE_SIN2, res.a, res.x, res.y, rhs_scale=0.4).violated


def test_shrink_campaign_instance():
    cfg = FuzzConfig(trials=20, seed=1, rhs_scale=0.4, bounds=("CONJECTURE_SIN2",), max_shrink=0)
    rep = run_campaign(cfg)
    v = rep.violations[0]
    inst = generate_instance(cfg, v["trial_seed"])
    res = shrink(inst.a, inst.x, inst.y, "CONJECTURE_SIN2", rhs_scale=0.4)
    assert res.a.shape[0] <= 4
    assert check_bound("CONJECTURE_SIN2", res.a, res.x, res.y, rhs_scale=0.4).violated


def test_shrink_minimal_instance_unchanged():
    a, x, y, _ = sharp_instance([np.pi / 3])
    res = shrink(a, x, y, BoundId.CONJECTURE_SIN2, rhs_scale=0.4)
    assert not res.changed
    assert res.a is a and res.x is x and res.y is y


def test_shrink_requires_violation():
    a, x, y, _ = sharp_instance([0.5])
    with pytest.raises(ContractError):
        shrink(a, x, y, BoundId.CONJECTURE_SIN2)


def test_repro_sharp():
    r = repro_sharp(2, [np.pi / 3, np.pi / 6])
    assert np.allclose(r.lhs, [1.5, 0.5], atol=1e-12) and np.allclose(r.rhs, [1.5, 0.5], atol=1e-12)
    assert r.spread == 2
    z = repro_sharp(3, [0, 0, 0])
    assert np.array_equal(z.lhs, np.zeros(3)) and np.array_equal(z.rhs, np.zeros(3))
    with pytest.raises(ReproductionError):
        repro_sharp(2, [0.1])
    with pytest.raises(ReproductionError):
        repro_sharp(1, [2.0])


def test_repro_intermediate():
    rec = repro_intermediate_counterexample()
    assert rec["intermediate_vector"] == [1.0, -2.0]
    assert rec["failed_prefix"] == 2 and rec["failed_slack"] == -1.0
    assert rec["spread"] == 2.0 and rec["sin2_bound_holds"]


def test_property_suites_small():
    res = property_suites(seed=0, trials=50)
    assert set(res) >= {"lidskii", "singular_product", "evsv", "combination"}
    assert all(r["failed"] == 0 and r["passed"] == 50 for r in res.values())
    assert property_suites(seed=0, trials=20) == property_suites(seed=0, trials=20)
