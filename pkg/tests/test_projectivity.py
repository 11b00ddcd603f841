from fractions import Fraction

import pytest

from dnvflops.core import projectivity
from dnvflops.core.anticanonical_pairs import REFERENCE_CERTIFICATES, build_Y2, build_Y4
from dnvflops.core.degeneration import apply_type_II, available_type_II, build_YT
from dnvflops.core.enumeration import bfs, lp_cache
from dnvflops.core.projectivity import (
    AmpleCertificate, CombinedOracle, CriterionOracle, LPOracle, class_degrees, component_ample,
    component_degrees, create_oracle, criterion_P, criterion_T, glue_certificates, is_ample_on, leg_problems,
    lp_feasible, projectivity_pattern, remark_condition, spans_lattice
)
from dnvflops.utils.validation import ValidationError


class TestComponentLevel:

    def test_prescribed_boundary_degrees(self):
        pair = build_Y2()
        f = component_ample(pair, {"D1": 10, "D2": 10})
        assert f is not None
        assert is_ample_on(pair, f)
        degrees = component_degrees(pair, f)
        assert degrees["D1"] == degrees["D2"] == 10

    def test_proportional_degrees(self):
        pair = build_Y4()
        f = component_ample(pair, {"D1": 1, "D2": 1, "D3": 1, "D4": 1}, proportional=True)
        assert f is not None
        degrees = component_degrees(pair, f)
        assert len({degrees[s] for s in pair.side_names}) == 1

    def test_degree_too_small(self):
        # every coefficient is at least one, so the degree on a side cannot drop below its anchor
        assert component_ample(build_Y2(), {"D1": Fraction(1, 2)}) is None

    def test_coefficients_increase_along_legs(self):
        pair = build_Y2()
        assert leg_problems(pair, component_ample(pair, {"D1": 10, "D2": 10})) == []
        flat = {v: 1 for v in pair.curve_names}
        problems = leg_problems(pair, flat)
        assert len(problems) == 2
        assert problems[0].startswith("leg of e1")


class TestCriteria:

    def test_reference_pattern(self, yp):
        assert projectivity_pattern(yp) == {"nondegenerate": [1, 2, 3], "nonregular": [],
                                            "regular_degenerate": []}
        assert criterion_P(yp)
        assert remark_condition(yp)

    def test_class_t_criterion(self, yt):
        assert criterion_T(yt)
        with pytest.raises(ValidationError):
            criterion_P(yt)

    def test_class_p_criterion_rejects_t(self, yp):
        with pytest.raises(ValidationError):
            criterion_T(yp)


class TestCertificates:

    @pytest.mark.parametrize("fixture", ["yp", "yt"])
    def test_lp_certificate(self, fixture, request):
        state = request.getfixturevalue(fixture)
        certificate = lp_feasible(state)
        assert certificate is not None
        assert certificate.source == "lp"
        assert certificate.problems(state) == []

    @pytest.mark.parametrize("base_degree", [16, 64])
    def test_glued_certificate(self, yp, base_degree):
        certificate = glue_certificates(yp, base_degree=base_degree)
        assert certificate is not None
        assert certificate.is_valid(yp)

    def test_glued_certificate_for_t(self, yt):
        certificate = glue_certificates(yt)
        assert certificate is not None
        assert certificate.is_valid(yt)

    def test_invalid_certificate_is_reported(self, yp):
        zero = AmpleCertificate(coefficients=tuple({v: 0 for v in c.curve_names} for c in yp.components))
        assert not zero.is_valid(yp)
        assert any("coefficient" in p for p in zero.problems(yp))

    def test_after_type_II_flop(self, yp):
        state = apply_type_II(yp, available_type_II(yp)[0])
        assert not spans_lattice(state.component(state.special))
        assert criterion_T(state)
        certificate = lp_feasible(state)
        assert certificate is not None
        assert certificate.class_of(state.special - 1) is not None
        assert certificate.problems(state) == []
        assert glue_certificates(state) is not None

    @pytest.mark.parametrize("index", [0, 1, 2])
    def test_every_type_II_image_has_a_certificate(self, yp, index):
        state = apply_type_II(yp, available_type_II(yp)[index])
        certificate = lp_feasible(state)
        assert certificate is not None
        assert certificate.is_valid(state)

    def test_class_degrees_match_coefficient_degrees(self):
        pair = build_Y2()
        f = REFERENCE_CERTIFICATES["Y2"]
        x = pair.combination(f).coeffs
        assert spans_lattice(pair)
        assert class_degrees(pair, x) == component_degrees(pair, f)


class TestOracles:

    @pytest.mark.parametrize("method, cls", [
        ("criterion", CriterionOracle), ("lp", LPOracle), ("both", CombinedOracle)
    ])
    def test_factory(self, method, cls):
        assert isinstance(create_oracle(method), cls)

    def test_unknown_method(self):
        with pytest.raises(ValidationError):
            create_oracle("guess")

    def test_reference_states_are_projective(self, yp, yt):
        for method in ("criterion", "lp", "both"):
            oracle = create_oracle(method)
            assert oracle.is_projective(yp)
            assert oracle.is_projective(yt)

    def test_criterion_agrees_with_lp_near_the_references(self):
        oracle = CombinedOracle()
        for state in bfs("both", projective_only=False, max_depth=2).values():
            verdict = oracle.decide(state)
            assert verdict.agrees, verdict.notes


class TestVerdictCache:

    def test_lp_runs_once_per_class(self, monkeypatch):
        calls = []

        def counting(state):
            calls.append(state)
            return None

        monkeypatch.setattr(projectivity, "lp_feasible", counting)
        cache = lp_cache()
        assert cache.lp(build_YT(1)) is False
        assert cache.lp(build_YT(2)) is False
        assert len(calls) == 1
        assert cache.hits == 1
        assert len(cache) == 1

    def test_oracles_share_a_cache(self, yp, yt):
        cache = lp_cache()
        assert create_oracle("lp", cache=cache).is_projective(yp)
        assert create_oracle("both", cache=cache).decide(yp).lp
        assert create_oracle("lp", cache=cache).is_projective(yt)
        assert len(cache) == 2
        assert cache.hits == 1
