import json

import pytest

from dgglue.scenarios import (
    ScenarioConfig,
    ScenarioError,
    parse_point,
    parse_points,
    report_dict,
    report_text,
    run_scenario,
    same_point,
    skyscraper,
    torsion_object,
)
from dgglue.twcx import hom_cohomology, k0_class


def test_points():
    assert parse_point("1:2") == (1, 2)
    assert parse_points("1:0, 0:1") == [(1, 0), (0, 1)]
    assert same_point((1, 2), (2, 4)) and not same_point((1, 2), (2, 1))
    with pytest.raises(ValueError):
        parse_point("0:0")
    with pytest.raises(ValueError):
        parse_point("1")


def test_skyscrapers(kronecker):
    p, q = skyscraper((1, 0)), skyscraper((0, 1))
    assert hom_cohomology(p, p) == {0: 1, 1: 1}
    assert hom_cohomology(p, q) == {} == hom_cohomology(q, p)
    assert hom_cohomology(p, skyscraper((2, 0))) == {0: 1, 1: 1}
    T = torsion_object([(1, 0), (1, 1), (1, 0)])
    assert k0_class(T) == (-3, 3)


def test_config_validation():
    with pytest.raises(ValueError):
        ScenarioConfig([(1, 0)], [(2, 0)])
    with pytest.raises(ValueError):
        ScenarioConfig([], [(1, 0)])
    with pytest.raises(ValueError):
        ScenarioConfig([(1, 0)], [(0, 1)], report="xml")
    assert ScenarioConfig([(1, 0), (1, 1)], [(0, 1)]).t == -1


def test_overlap_stops_at_condition():
    cfg = ScenarioConfig([(1, 0)], [(1, 0)], allow_overlap=True)
    with pytest.raises(ScenarioError) as err:
        run_scenario(cfg)
    assert err.value.stage == "check_condition"
    assert err.value.report.failures()


def test_single_points_report():
    rep = run_scenario(ScenarioConfig([(1, 0)], [(0, 1)]))
    assert rep.passed
    d = report_dict(rep)
    assert d["t"] == 0 and d["chi_A"] == [[1, 2], [0, 1]]
    assert d["verdicts"]["chi_A_vs_standard"]["kind"] == "Equivalent"
    assert d["verdicts"]["chi_A_vs_partner"]["kind"] == "Inequivalent"
    assert json.loads(json.dumps(d)) == d
    assert "result:                 PASS" in report_text(rep)


def test_depth_cap_in_scenario():
    from dgglue.sod import ResolutionDepthExceeded

    with pytest.raises((ScenarioError, ResolutionDepthExceeded)):
        run_scenario(ScenarioConfig([(1, 0)], [(0, 1)], depth_cap=0))


def test_repeated_points_pass():
    rep = run_scenario(ScenarioConfig([(1, 0), (1, 0)], [(0, 1), (1, 1)]))
    assert rep.passed and rep.config.t == -3
    assert rep.verdicts["cones_vs_target"].kind == "Equivalent"
