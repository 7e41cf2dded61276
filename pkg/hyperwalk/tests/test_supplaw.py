"""
Tests for the bosonic and fermionic suppression laws.

Tests cover:
- Predictor verdicts on hand-checked states
- Soundness: predicted-suppressed states have vanishing probability
- Suppression ratios, exact and approximate
- Generalized hypercubes with random subgraph unitaries
- Structural relations between the bosonic and fermionic laws
"""
from fractions import Fraction
from math import factorial

import numpy as np
from django.test import SimpleTestCase, override_settings
from scipy.stats import unitary_group

from hyperwalk.fock import ModeOccupation, ResourceBoundError, enumerate_boson_finals, enumerate_fermion_finals
from hyperwalk.interference import Statistics, TransitionProblem, full_distribution, probability
from hyperwalk.supplaw import (
    UNSUPPRESSED,
    Verdict,
    check_law_statistics,
    classify,
    fermion_ratio_exact,
    fermion_ratio_limit,
    predict_boson,
    predict_fermion,
    ratio_approx,
    ratio_exact,
    verify,
)
from hyperwalk.symmetry import SymmetrySet, all_symmetry_sets, invariance_group
from hyperwalk.unitary import HypercubeSpec, build_hc_tensor, build_unitary, random_subunitary

TOL = 1e-10

R_A = ModeOccupation((3, 0, 1, 0, 0, 3, 0, 1))
R_B = ModeOccupation((0, 0, 2, 2, 0, 0, 2, 2))
R_C = ModeOccupation((1, 1, 1, 1, 1, 1, 1, 1))
HC3 = HypercubeSpec(3)


def occ(*counts):
    return ModeOccupation(counts)


class PredictorTests(SimpleTestCase):

    def test_boson_examples(self):
        self.assertEqual(predict_boson(SymmetrySet.of(2, 8), occ(1, 1, 1, 2, 2, 0, 0, 1)), Verdict.SUPPRESSED)
        self.assertEqual(predict_boson(SymmetrySet.of(4), occ(2, 0, 2, 0, 2, 1, 0, 1)), Verdict.SUPPRESSED)
        self.assertEqual(predict_boson(SymmetrySet.of(2, 8), occ(8, 0, 0, 0, 0, 0, 0, 0)), Verdict.ALLOWED)

    def test_boson_generalized(self):
        verdict = predict_boson(SymmetrySet.of(2), occ(3, 0, 0, 0, 1, 0), n=6, d=1, m=3)
        self.assertEqual(verdict, Verdict.SUPPRESSED)
        with self.assertRaises(ValueError):
            predict_boson(SymmetrySet.of(4), occ(3, 0, 0, 0, 1, 0), n=6, d=1, m=3)

    def test_fermion_examples(self):
        self.assertEqual(predict_fermion(SymmetrySet.of(2, 4), occ(1, 0, 0, 1)), Verdict.SUPPRESSED)
        self.assertEqual(predict_fermion(SymmetrySet.of(2, 4), occ(1, 1, 0, 0)), Verdict.ALLOWED)
        self.assertEqual(predict_fermion(SymmetrySet.of(2), occ(1, 1)), Verdict.ALLOWED)

    def test_fermion_rejects_bunched(self):
        with self.assertRaises(ValueError):
            predict_fermion(SymmetrySet.of(2), occ(2, 0))

    def test_size_mismatch(self):
        with self.assertRaises(ValueError):
            predict_boson(SymmetrySet.of(2), occ(1, 1), n=4)


class ClassifyTests(SimpleTestCase):

    def test_verdicts_only_for_invariances(self):
        records = list(classify(R_A, HC3, Statistics.BOSON))
        self.assertEqual(len(records), 6435)
        self.assertTrue(all(set(rec.verdicts) == {SymmetrySet.of(2, 8)} for rec in records))
        by_final = {rec.final: rec for rec in records}
        self.assertTrue(by_final[occ(1, 1, 1, 2, 2, 0, 0, 1)].any_suppressed)
        self.assertEqual(by_final[occ(1, 1, 1, 2, 2, 0, 0, 1)].classification, "2,8")

    def test_no_invariance_gives_empty_verdicts(self):
        records = list(classify(occ(1, 0, 0, 0, 0, 0, 0, 0), HC3, Statistics.BOSON))
        self.assertEqual(len(records), 8)
        self.assertTrue(all(rec.verdicts == {} and rec.classification == UNSUPPRESSED for rec in records))

    def test_refinement_is_monotone(self):
        suppressed_a = {rec.final for rec in classify(R_A, HC3, Statistics.BOSON) if rec.any_suppressed}
        suppressed_b = {rec.final for rec in classify(R_B, HC3, Statistics.BOSON) if rec.any_suppressed}
        suppressed_c = {rec.final for rec in classify(R_C, HC3, Statistics.BOSON) if rec.any_suppressed}
        self.assertLessEqual(suppressed_a, suppressed_b)
        self.assertLessEqual(suppressed_b, suppressed_c)

    def test_classification_is_first_suppressing_set(self):
        for rec in classify(R_C, HC3, Statistics.BOSON):
            if rec.any_suppressed:
                self.assertEqual(rec.classification, str(rec.suppressing_sets[0]))

    def test_distinguishable_rejected(self):
        with self.assertRaises(ValueError):
            list(classify(R_C, HC3, Statistics.DISTINGUISHABLE))

    def test_named_symmetry_restricts_verdicts(self):
        restricted = list(classify(R_B, HC3, Statistics.BOSON, [SymmetrySet.of(8)]))
        full = list(classify(R_B, HC3, Statistics.BOSON))
        self.assertEqual(len(restricted), 6435)
        for rec, whole in zip(restricted, full):
            self.assertEqual(set(rec.verdicts), {SymmetrySet.of(8)})
            self.assertEqual(rec.verdicts[SymmetrySet.of(8)], whole.verdicts[SymmetrySet.of(8)])

    def test_named_symmetry_must_leave_initial_invariant(self):
        with self.assertRaisesMessage(ValueError, "not invariant"):
            list(classify(R_A, HC3, Statistics.BOSON, [SymmetrySet.of(2)]))

    def test_pauli_violation_rejected_without_symmetry(self):
        with self.assertRaisesMessage(ValueError, "Pauli"):
            check_law_statistics(occ(2, 0, 0, 0), Statistics.FERMION)


class SoundnessTests(SimpleTestCase):
    """Predicted-suppressed final states carry no probability."""

    def _assert_sound(self, unitary, initial, spec, statistics):
        records = classify(initial, spec, statistics)
        for rec, (final, prob) in zip(records, full_distribution(unitary, initial, statistics, workers=1)):
            self.assertEqual(rec.final, final)
            if rec.any_suppressed:
                self.assertLess(prob, TOL, f"{statistics} {initial} -> {final}")

    def test_figure_states(self):
        unitary = build_hc_tensor(3)
        for initial in (R_A, R_B, R_C):
            report = verify(initial, HC3, Statistics.BOSON, TOL, workers=1, unitary=unitary)
            self.assertTrue(report.passed, initial)
            self.assertEqual(report.total_finals, 6435)

    def test_exhaustive_bosons(self):
        for d in (1, 2, 3):
            n = 2 ** d
            spec = HypercubeSpec(d)
            unitary = build_unitary(spec)
            for particles in range(1, 7):
                for initial in enumerate_boson_finals(n, particles):
                    if invariance_group(initial, d):
                        self._assert_sound(unitary, initial, spec, Statistics.BOSON)

    def test_exhaustive_fermions(self):
        for d in (1, 2, 3):
            n = 2 ** d
            spec = HypercubeSpec(d)
            unitary = build_unitary(spec)
            for particles in range(1, min(n, 4) + 1):
                for initial in enumerate_fermion_finals(n, particles):
                    if invariance_group(initial, d):
                        self._assert_sound(unitary, initial, spec, Statistics.FERMION)

    def test_fermion_walsh_balance_is_exact(self):
        unitary = build_hc_tensor(2)
        report = verify(occ(1, 0, 0, 1), HypercubeSpec(2), Statistics.FERMION, TOL, workers=1)
        self.assertTrue(report.passed)
        self.assertEqual(report.predicted_suppressed_count, 2)
        self.assertEqual(report.extra_zero_count, 0)
        total = 0.0
        for final in enumerate_fermion_finals(4, 2):
            prob = probability(TransitionProblem(unitary, occ(1, 0, 0, 1), final, Statistics.FERMION))
            unbalanced = predict_fermion(SymmetrySet.of(2, 4), final) == Verdict.SUPPRESSED
            self.assertEqual(prob < TOL, unbalanced, final)
            total += prob
        self.assertAlmostEqual(total, 1.0, delta=1e-10)

    def test_named_representatives(self):
        unitary = build_hc_tensor(3)

        def prob(initial, final):
            return probability(TransitionProblem(unitary, initial, final, Statistics.BOSON))

        def predicted(initial, final):
            return any(predict_boson(p, final) == Verdict.SUPPRESSED for p in invariance_group(initial, 3))

        s1 = occ(1, 1, 1, 2, 2, 0, 0, 1)
        s2 = occ(1, 2, 0, 2, 2, 0, 0, 1)
        s3 = occ(2, 0, 2, 0, 2, 1, 0, 1)
        s4 = occ(0, 1, 1, 2, 3, 0, 0, 1)
        self.assertTrue(predicted(R_A, s1))
        self.assertLess(prob(R_A, s1), TOL)
        self.assertTrue(predicted(R_B, s2))
        self.assertFalse(predicted(R_A, s2))
        self.assertLess(prob(R_B, s2), TOL)
        self.assertTrue(predicted(R_C, s3))
        self.assertLess(prob(R_C, s3), TOL)
        for initial in (R_A, R_B, R_C):
            self.assertFalse(predicted(initial, s4))
            self.assertGreater(prob(initial, s4), TOL)


class RatioTests(SimpleTestCase):

    def test_boson_formula(self):
        self.assertEqual(ratio_approx(1, Statistics.BOSON), 0.5)
        self.assertEqual(ratio_approx(2, Statistics.BOSON), 0.75)
        self.assertEqual(ratio_approx(3, Statistics.BOSON), 0.875)

    def test_fermion_forms(self):
        self.assertEqual(fermion_ratio_exact(2, 4, 8), Fraction(27, 35))
        self.assertAlmostEqual(ratio_approx(2, Statistics.FERMION, 4), 0.90625)
        self.assertAlmostEqual(ratio_approx(2, Statistics.FERMION, 4, 8), 27 / 35)
        for eta in (1, 2, 3):
            particles = 2 ** eta
            self.assertAlmostEqual(fermion_ratio_limit(eta, particles), 1 - factorial(particles) / particles ** particles)

    def test_divisibility(self):
        with self.assertRaisesMessage(ValueError, "not a multiple"):
            ratio_approx(2, Statistics.FERMION, 6)
        with self.assertRaises(ValueError):
            ratio_approx(-1, Statistics.BOSON)

    def test_exact_boson_counts(self):
        expected = {R_A: (3200, 1, 0.5), R_B: (4800, 2, 0.75), R_C: (5600, 3, 0.875)}
        for initial, (count, eta, approx) in expected.items():
            report = ratio_exact(initial, HC3, Statistics.BOSON)
            self.assertEqual(report.exact_total, 6435)
            self.assertEqual(report.exact_suppressed, count)
            self.assertEqual(report.eta, eta)
            self.assertEqual(report.approx_ratio, approx)
            self.assertLess(abs(float(report.exact_ratio) - approx), 0.02)

    def test_exact_fermion_ratio(self):
        report = ratio_exact(occ(1, 0, 1, 0, 1, 0, 1, 0), HC3, Statistics.FERMION)
        self.assertEqual(report.eta, 2)
        self.assertEqual(report.exact_total, 70)
        self.assertEqual(report.exact_ratio, Fraction(27, 35))
        self.assertAlmostEqual(report.approx_ratio, 27 / 35)
        self.assertAlmostEqual(report.approx_limit, 0.90625)

    def test_exact_counting_ignores_permanent_bound(self):
        # 22 bosons exceed HYPERWALK_MAX_N, but only 23 final states need a parity count
        report = ratio_exact(occ(11, 11), HypercubeSpec(1), Statistics.BOSON)
        self.assertEqual(report.exact_total, 23)
        self.assertEqual(report.exact_suppressed, 11)
        self.assertEqual(report.eta, 1)

    @override_settings(HYPERWALK_MAX_FINALS=100)
    def test_exact_counting_respects_enumeration_bound(self):
        with self.assertRaises(ResourceBoundError):
            ratio_exact(R_A, HC3, Statistics.BOSON)


class GeneralizedLawTests(SimpleTestCase):
    """d=1 hypercube of 3-mode subgraphs with Haar-random subunitaries."""

    ODD_STATES = (occ(3, 0, 0, 0, 1, 0), occ(1, 1, 1, 0, 1, 0))

    def test_subgraph_parity(self):
        invariant = occ(2, 0, 0, 2, 0, 0)
        broken = occ(2, 0, 0, 1, 1, 0)
        for seed in range(20):
            spec = HypercubeSpec(1, 3, random_subunitary(3, seed=seed))
            unitary = build_unitary(spec)
            total = 0.0
            for final, prob in full_distribution(unitary, invariant, Statistics.BOSON, workers=1):
                total += prob
                if sum(final.counts[:3]) % 2:
                    self.assertLess(prob, TOL, f"seed {seed}: {final}")
            self.assertAlmostEqual(total, 1.0, delta=1e-8)
            for final in self.ODD_STATES:
                prob = probability(TransitionProblem(unitary, broken, final, Statistics.BOSON))
                self.assertGreater(prob, 1e-6, f"seed {seed}: {final}")

    def test_verify_reports_inapplicable(self):
        spec = HypercubeSpec(1, 3, random_subunitary(3, seed=1))
        report = verify(occ(2, 0, 0, 1, 1, 0), spec, Statistics.BOSON, TOL, workers=1)
        self.assertFalse(report.law_applicable)
        self.assertTrue(report.passed)
        self.assertEqual(report.predicted_suppressed_count, 0)
        self.assertIsNone(report.max_predicted_probability)

    def test_verdict_depends_on_subgraph_totals_only(self):
        rng = np.random.default_rng(6)
        p = SymmetrySet.of(2)
        for final in enumerate_boson_finals(6, 4):
            counts = list(final.counts)
            shuffled = list(rng.permutation(counts[:3])) + list(rng.permutation(counts[3:]))
            self.assertEqual(
                predict_boson(p, final, d=1, m=3),
                predict_boson(p, ModeOccupation(tuple(shuffled)), d=1, m=3),
            )


class StatisticsRelationTests(SimpleTestCase):
    """Bosonic vs fermionic verdicts on 0/1 final states of the 3-cube."""

    def test_mod4_relations(self):
        for particles in (2, 4, 6, 8):
            for p in all_symmetry_sets(3):
                for final in enumerate_fermion_finals(8, particles):
                    boson = predict_boson(p, final) == Verdict.SUPPRESSED
                    fermion = predict_fermion(p, final) == Verdict.SUPPRESSED
                    if particles % 4 == 0:
                        # odd occupation of P(p) is suppressed for both
                        self.assertTrue(fermion or not boson, final)
                    else:
                        # complementary: every fermion-allowed state is boson-suppressed
                        self.assertTrue(fermion or boson, final)


class VerificationReportTests(SimpleTestCase):

    def test_schema(self):
        report = verify(occ(1, 0, 0, 1), HypercubeSpec(2), Statistics.FERMION, TOL, workers=1)
        payload = report.to_dict()
        self.assertEqual(set(payload), {
            "initial", "eta", "symmetry_sets", "predicted_suppressed_count", "total_finals",
            "max_predicted_probability", "pass", "extra_zero_count",
        })
        self.assertEqual(payload["initial"], [1, 0, 0, 1])
        self.assertEqual(payload["symmetry_sets"], [[2, 4]])
        self.assertEqual(payload["total_finals"], 6)
        self.assertTrue(payload["pass"])

    def test_failure_is_reported(self):
        # a wrong unitary breaks the symmetry the law relies on
        rng = np.random.default_rng(0)
        unitary = unitary_group.rvs(4, random_state=rng)
        report = verify(occ(1, 0, 0, 1), HypercubeSpec(2), Statistics.FERMION, TOL, workers=1, unitary=unitary)
        self.assertFalse(report.passed)
        self.assertFalse(report.to_dict()["pass"])
        self.assertGreater(report.max_predicted_probability, TOL)

    def test_named_symmetry_report(self):
        report = verify(R_B, HC3, Statistics.BOSON, TOL, workers=1, symmetries=[SymmetrySet.of(8)])
        self.assertTrue(report.passed)
        self.assertEqual(report.to_dict()["symmetry_sets"], [[8]])
        self.assertEqual(report.eta, 2)
        self.assertGreater(report.predicted_suppressed_count, 0)
        self.assertLess(report.predicted_suppressed_count, 4800)
