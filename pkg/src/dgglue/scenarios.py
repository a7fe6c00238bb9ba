"""The projective line as the Kronecker quiver, skyscrapers, and the
two-point gluing pipeline.

Torsion sheaves of length ``l`` are modelled as direct sums of ``l``
skyscrapers (points may repeat); they have the same length and K0 class as
any other torsion sheaf on the same support.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dgcore import FinDGCategory, path_category, validate_category
from .euler import (
    EquivalenceVerdict,
    GramForm,
    chi_t,
    exceptionality_check,
    form_equivalence,
    gram,
    lattice_basis_subset,
    orthogonal_gram,
    representable_euler_matrix,
)
from .exactlin import format_scalar, parse_scalar
from .glue import (
    BimoduleMorphism,
    GluedCategory,
    point_bimodule,
    upper_triangular,
    validate_bimodule_morphism,
    widetilde,
)
from .sod import (
    ConditionReport,
    FullFaithfulReport,
    KSPartner,
    PerfectnessReport,
    check_condition,
    check_perfectness,
    ks_partner,
    verify_fully_faithful,
)
from .twcx import (
    TwistedComplex,
    TwMorphism,
    cone,
    direct_sum,
    k0_class,
    projection,
    representable,
    zero_complex,
)

_KRONECKER = None


def build_kronecker() -> FinDGCategory:
    """Objects ``v0``, ``v1`` with ``Hom(v0, v1)`` spanned by ``x``, ``y``."""
    global _KRONECKER
    if _KRONECKER is None:
        _KRONECKER = validate_category(
            path_category(["v0", "v1"], [("x", "v0", "v1"), ("y", "v0", "v1")], name="Kronecker"))
    return _KRONECKER


Point = tuple  # (a, b) homogeneous coordinates


def parse_point(text: str) -> Point:
    parts = str(text).split(":")
    if len(parts) != 2:
        raise ValueError(f"point {text!r} is not of the form a:b")
    a, b = (parse_scalar(p) for p in parts)
    if a == 0 and b == 0:
        raise ValueError("[0:0] is not a point")
    return a, b


def parse_points(text: str) -> list[Point]:
    return [parse_point(p) for p in text.split(",") if p.strip()]


def same_point(p: Point, q: Point) -> bool:
    return p[0] * q[1] - p[1] * q[0] == 0


def format_point(p: Point) -> str:
    return f"{format_scalar(p[0])}:{format_scalar(p[1])}"


def skyscraper(p: Point, K: FinDGCategory | None = None) -> TwistedComplex:
    """``cone(b x - a y: h^v0 -> h^v1)`` for the point ``[a:b]``."""
    K = K or build_kronecker()
    a, b = parse_scalar(p[0]), parse_scalar(p[1])
    if a == 0 and b == 0:
        raise ValueError("[0:0] is not a point")
    f = TwMorphism(representable(K, "v0"), representable(K, "v1"), 0, {(0, 0): {0: b, 1: -a}})
    return cone(f)


def torsion_object(points, K: FinDGCategory | None = None) -> TwistedComplex:
    K = K or build_kronecker()
    points = list(points)
    if not points:
        return zero_complex(K)
    return direct_sum(*(skyscraper(p, K) for p in points))


@dataclass
class ScenarioConfig:
    points1: list
    points2: list
    search_bound: int | None = None
    depth_cap: int = 8
    report: str = "text"
    allow_overlap: bool = False  # lets the pipeline itself reject meeting supports

    def __post_init__(self):
        self.points1 = [tuple(parse_scalar(x) for x in p) for p in self.points1]
        self.points2 = [tuple(parse_scalar(x) for x in p) for p in self.points2]
        if not self.points1 or not self.points2:
            raise ValueError("both point lists need at least one point")
        for p in self.points1 + self.points2:
            if p[0] == 0 and p[1] == 0:
                raise ValueError("[0:0] is not a point")
        for p in self.points1:
            for q in self.points2 if not self.allow_overlap else ():
                if same_point(p, q):
                    raise ValueError(f"supports meet at [{format_point(p)}]")
        if self.report not in ("text", "json"):
            raise ValueError("report must be 'text' or 'json'")

    @property
    def lengths(self) -> tuple[int, int]:
        return len(self.points1), len(self.points2)

    @property
    def t(self) -> int:
        l1, l2 = self.lengths
        return 1 - l1 * l2


class ScenarioError(RuntimeError):
    def __init__(self, stage: str, report):
        self.stage = stage
        self.report = report
        super().__init__(f"scenario stopped at stage {stage}")


@dataclass
class ScenarioReport:
    config: ScenarioConfig
    condition: ConditionReport
    fully_faithful: FullFaithfulReport
    perfectness: PerfectnessReport
    chi_A: GramForm
    chi_glued: GramForm
    exceptional_order: list
    partner: KSPartner
    gram_cones: GramForm
    gram_orthogonal: GramForm
    target: GramForm
    verdicts: dict = field(default_factory=dict)
    k0_rank_partner: int = 0
    k0_rank_A: int = 0
    glued: GluedCategory | None = None

    @property
    def passed(self) -> bool:
        v = self.verdicts
        return (self.condition.passed and self.fully_faithful.passed and self.perfectness.passed
                and v["cones_vs_target"].kind == "Equivalent"
                and v["orthogonal_vs_target"].kind == "Equivalent"
                and v["cones_vs_orthogonal"].kind == "Equivalent"
                and self.partner.orthogonal
                and self.k0_rank_partner == self.k0_rank_A)


def _partner_gram(partner: KSPartner) -> GramForm:
    idx = lattice_basis_subset(partner.classes)
    if idx is None:
        raise ScenarioError("ks_partner", "no subset of partner generators is a basis of their K0 span")
    g = [[partner.gram[i][j] for j in idx] for i in idx]
    return gram(g, [f"E({partner.sources[i]})" for i in idx])


def run_scenario(cfg: ScenarioConfig) -> ScenarioReport:
    K = build_kronecker()
    P1 = torsion_object(cfg.points1, K)
    P2 = torsion_object(cfg.points2, K)
    S = point_bimodule(K, direct_sum(P1, P2), name="S")
    T = point_bimodule(K, P2, name="T")
    phi = validate_bimodule_morphism(BimoduleMorphism(S, T, {"*": projection([P1, P2], 1)}))
    C = upper_triangular(K, S.source, S, name="P1xpt")
    cond = check_condition(S, T, phi)
    if not cond.passed:
        raise ScenarioError("check_condition", cond)
    W = widetilde(C, T, phi)
    ff = verify_fully_faithful(C, W)
    if not ff.passed:
        raise ScenarioError("verify_fully_faithful", ff)
    perf = check_perfectness(C, W, cfg.depth_cap)
    if not perf.passed:
        raise ScenarioError("check_perfectness", perf)
    exc = exceptionality_check(C)
    if not exc.passed:
        raise ScenarioError("exceptionality_check", exc)
    partner = ks_partner(C, W, cfg.depth_cap, perf)
    chi_A = representable_euler_matrix(K)
    chi_C = representable_euler_matrix(C)
    g_cones = _partner_gram(partner)
    left = [list(k0_class(W(y))) for y in C.B.objects]
    g_orth, _ = orthogonal_gram(chi_C, left)
    target = gram(chi_t(cfg.t), ["e0", "e1"])
    b = cfg.search_bound
    verdicts: dict[str, EquivalenceVerdict] = {
        "chi_A_vs_standard": form_equivalence(chi_A, chi_t(1), b),
        "cones_vs_target": form_equivalence(g_cones, target, b),
        "orthogonal_vs_target": form_equivalence(g_orth, target, b),
        "cones_vs_orthogonal": form_equivalence(g_cones, g_orth, b),
        "chi_A_vs_partner": form_equivalence(chi_A, g_cones, b),
    }
    return ScenarioReport(cfg, cond, ff, perf, chi_A, chi_C, exc.order, partner, g_cones, g_orth, target,
                          verdicts, partner.k0_rank, len(K.objects), C)


def report_dict(rep: ScenarioReport) -> dict:
    cfg = rep.config
    return {
        "scenario": "p1-two-points",
        "points1": [format_point(p) for p in cfg.points1],
        "points2": [format_point(p) for p in cfg.points2],
        "lengths": list(cfg.lengths),
        "t": cfg.t,
        "torsion_model": "direct sums of skyscrapers",
        "decomposition_convention": "no morphisms from the second component to the first",
        "condition": {"passed": rep.condition.passed, "note": rep.condition.note,
                      "table": {f"{j}->{k}": _dims(v) for (j, k), v in rep.condition.table.items()}},
        "fully_faithful": {"passed": rep.fully_faithful.passed,
                           "glued": {f"{j}->{k}": _dims(v) for (j, k), v in rep.fully_faithful.glued.items()},
                           "original": {f"{j}->{k}": _dims(v)
                                        for (j, k), v in rep.fully_faithful.original.items()}},
        "perfectness": {"status": rep.perfectness.status, "note": rep.perfectness.note,
                        "rounds": {g: r.rounds for g, r in rep.perfectness.resolutions.items()}},
        "exceptional_order": list(rep.exceptional_order),
        "chi_A": rep.chi_A.rows(),
        "chi_glued": rep.chi_glued.rows(),
        "partner": {"sources": list(rep.partner.sources), "dropped": list(rep.partner.dropped),
                    "k0_classes": rep.partner.classes, "gram_all": rep.partner.gram,
                    "right_orthogonal": rep.partner.orthogonal},
        "gram_cones": rep.gram_cones.rows(),
        "gram_cones_basis": list(rep.gram_cones.labels),
        "gram_orthogonal": rep.gram_orthogonal.rows(),
        "target": rep.target.rows(),
        "verdicts": {k: v.to_dict() for k, v in rep.verdicts.items()},
        "k0_rank_partner": rep.k0_rank_partner,
        "k0_rank_A": rep.k0_rank_A,
        "passed": rep.passed,
    }


def _dims(h) -> dict:
    return {str(n): d for n, d in sorted(h.items())}


def report_text(rep: ScenarioReport) -> str:
    d = report_dict(rep)
    v = rep.verdicts
    lines = [
        f"P1 with two point sets: l1={d['lengths'][0]} l2={d['lengths'][1]} t={d['t']}",
        f"  condition on cone(phi): {'pass' if rep.condition.passed else 'FAIL'}",
        f"  fully faithful:         {'pass' if rep.fully_faithful.passed else 'FAIL'}",
        f"  perfectness:            {rep.perfectness.status}",
        f"  exceptional order:      {', '.join(rep.exceptional_order)}",
        f"  chi_A:                  {d['chi_A']}  vs [[1,1],[-1,0]]: {v['chi_A_vs_standard'].kind}",
        f"  glued Euler matrix:     {d['chi_glued']}",
        f"  partner generators:     {', '.join('E(%s)' % s for s in rep.partner.sources)}"
        f" (dropped: {', '.join(rep.partner.dropped) or 'none'})",
        f"  Gram (counit cones):    {d['gram_cones']}  vs target: {v['cones_vs_target'].kind}",
        f"  Gram (orthogonal):      {d['gram_orthogonal']}  vs target: {v['orthogonal_vs_target'].kind}",
        f"  cones vs orthogonal:    {v['cones_vs_orthogonal'].kind}",
        f"  chi_A vs partner Gram:  {v['chi_A_vs_partner'].kind}"
        + (f" ({v['chi_A_vs_partner'].invariant})" if v['chi_A_vs_partner'].invariant else ""),
        f"  K0 rank partner / A:    {rep.k0_rank_partner} / {rep.k0_rank_A}",
        f"  result:                 {'PASS' if rep.passed else 'FAIL'}",
    ]
    return "\n".join(lines)
