"""
Tests smpleak/transforms.py

Testing objective:
    Every rewrite keeps its contract, measured exactly on the result:
    compression simulates the protocol exactly within the length bound, truncation
    costs at most delta in error, Newman and the Alice derandomization stay within
    their error targets and message lengths.

Testing ideas:
    Equality fixtures with known error, seeded random channels and protocols, and a
    full pipeline from a verbatim protocol down to the private coin model.
"""
import math
import unittest

import numpy as np

from smpleak import fixtures, transforms
from smpleak.bounds import cc_av_from_ic, cc_sh_from_ccav
from smpleak.errors import SearchFailure, ValidationError
from smpleak.infotheory import Alphabet, Channel
from smpleak.leakage import ic_worst
from smpleak.smp import ABORT, FunctionTable, Model, costs, make_equality, output_matrix, worst_error

TOL = 1e-9


def random_function(p, rng):
    table = rng.integers(0, 2, size=(p.inputs_x.size, p.inputs_y.size))
    return FunctionTable(p.inputs_x, p.inputs_y, p.outputs, table)


class CompressionTest(unittest.TestCase):
    def test_constant_channel(self):
        ch = Channel(Alphabet.range(3), Alphabet.range(2), [[0.3, 0.7]] * 3)
        p, report = transforms.hjmr_compress(ch)
        self.assertAlmostEqual(report.capacity, 0.0, places=9)
        self.assertTrue(report.passed())
        self.assertLessEqual(max(report.expected_length_per_input.values()), 10.0)
        self.assertEqual(p.model, Model.AVERAGE)

    def test_identity_channel(self):
        ch = Channel(Alphabet.range(4), Alphabet.range(4), np.eye(4))
        p, report = transforms.hjmr_compress(ch)
        self.assertAlmostEqual(report.capacity, 2.0, places=8)
        self.assertTrue(report.passed())
        self.assertLessEqual(max(report.expected_length_per_input.values()), 13.0)
        np.testing.assert_allclose(output_matrix(p)[:, 0, :], np.eye(4), atol=1e-12)

    def test_random_channels(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            ch = fixtures.random_channel(rng, 3, 3)
            p, report = transforms.hjmr_compress(ch)
            self.assertTrue(report.passed())
            self.assertLessEqual(max(report.tv_distance_per_input.values()), TOL)

    def test_ic_to_ccav_is_exact(self):
        rng = np.random.default_rng(4)
        for i in range(10):
            p = fixtures.random_protocol(rng, (Model.SHARED, Model.PRIVATE)[i % 2], max_size=3)
            q = transforms.ic_to_ccav(p)
            self.assertEqual(q.model, Model.AVERAGE)
            np.testing.assert_allclose(output_matrix(q), output_matrix(p), atol=1e-9)
            self.assertLessEqual(costs(q).cc_av, cc_av_from_ic(ic_worst(p).ic))

    def test_requirements(self):
        q = transforms.ic_to_ccav(fixtures.verbatim_equality(1))
        with self.assertRaises(ValidationError):
            transforms.ic_to_ccav(q)
        with self.assertRaises(ValidationError):
            transforms.compress_sender(q.alice)


class TruncationTest(unittest.TestCase):
    def test_two_length_protocol(self):
        f = make_equality(2)
        p = fixtures.two_length_protocol(n=2, p_long=0.3, short=1, long=5)
        before = costs(p, f)
        for delta in (0.1, 0.25, 0.5):
            q = transforms.markov_truncate(p, delta)
            after = costs(q, f)
            self.assertEqual(q.model, Model.SHARED)
            self.assertLessEqual(after.worst_error, before.worst_error + delta + TOL)
            self.assertLessEqual(after.cc_sh, cc_sh_from_ccav(before.cc_av, delta))
        # at delta = 1/2 the long codewords exceed twice the mean and abort
        q = transforms.markov_truncate(p, 0.5)
        self.assertIn(ABORT, q.alice.messages.symbols)
        self.assertAlmostEqual(q.alice.message_law[0, -1], 0.3)
        self.assertAlmostEqual(worst_error(q, f), 0.5)

    def test_random_average_protocols(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            p = fixtures.random_protocol(rng, Model.AVERAGE, max_size=3)
            f = random_function(p, rng)
            before = costs(p, f)
            q = transforms.markov_truncate(p, 0.25)
            after = costs(q, f)
            self.assertLessEqual(after.worst_error, before.worst_error + 0.25 + TOL)
            self.assertLessEqual(after.cc_sh, cc_sh_from_ccav(before.cc_av, 0.25))

    def test_stream_protocol(self):
        f = make_equality(1)
        p = transforms.ic_to_ccav(fixtures.verbatim_equality(1))
        q = transforms.markov_truncate(p, 0.25)
        self.assertLessEqual(worst_error(q, f), 0.25 + TOL)
        self.assertLessEqual(costs(q).cc_sh, cc_sh_from_ccav(costs(p).cc_av, 0.25))

    def test_bad_delta(self):
        p = fixtures.two_length_protocol()
        for delta in (0.0, 0.6, -1.0):
            with self.assertRaises(ValidationError):
                transforms.markov_truncate(p, delta)
        with self.assertRaises(ValidationError):
            transforms.markov_truncate(fixtures.verbatim_equality(1), 0.25)


class NewmanTest(unittest.TestCase):
    def test_sample_counts(self):
        self.assertEqual(transforms.newman_sample_count(2, 2, 0.5), 23)
        self.assertEqual(transforms.newman_sample_count(2, 2, 0.25), 89)
        self.assertEqual(transforms.hoeffding_sample_count(2, 0.3), 16)
        with self.assertRaises(ValidationError):
            transforms.newman_sample_count(2, 2, 0)

    def test_shared_hash(self):
        f = make_equality(2)
        p = fixtures.shared_hash_equality(2, k=3)
        q, report = transforms.newman_derandomize(p, f, 0.25, rng=np.random.default_rng(0))
        self.assertEqual(q.model, Model.PRIVATE)
        self.assertAlmostEqual(report.target_error, 0.125 + 0.25)
        self.assertLessEqual(report.achieved_error, report.target_error + TOL)
        self.assertAlmostEqual(worst_error(q, f), report.achieved_error)
        self.assertIn(q.metadata['newman_t'][0], (1, 89))
        self.assertEqual(q.metadata['newman_t'][1], 1)
        self.assertLessEqual(costs(q).cc_priv, costs(p).cc_sh + 2 * math.ceil(math.log2(89)))

    def test_private_protocol_is_kept(self):
        f = make_equality(2)
        p = fixtures.verbatim_equality(2)
        q, report = transforms.newman_derandomize(p, f, 0.25)
        self.assertIs(q.alice, p.alice)
        self.assertEqual(report.achieved_error, 0.0)
        self.assertEqual(report.restarts_used, 0)

    def test_mixture_sender(self):
        rng = np.random.default_rng(1)
        sender = fixtures.shared_hash_equality(2, 1).alice
        realizations = [sender.realize(rng) for _ in range(5)]
        mixture = transforms.mixture_sender(realizations)
        self.assertEqual(mixture.shared.size, 1)
        self.assertEqual(mixture.messages.size, 5 * sender.messages.size)
        expected = np.mean([r.view_law for r in realizations], axis=0)
        np.testing.assert_allclose(mixture.view_law, expected, atol=1e-12)

    def test_search_failure(self):
        # a single fixed parity key always has a nonzero kernel vector, so error 1
        f = make_equality(2)
        p = fixtures.shared_hash_equality(2, k=1)
        with self.assertRaises(SearchFailure):
            transforms.newman_derandomize(p, f, 0.25, restarts=0, rng=np.random.default_rng(3))


class AliceDerandomizationTest(unittest.TestCase):
    def test_private_hash(self):
        f = make_equality(2)
        p = fixtures.private_hash_equality(2, k=3)
        q, report = transforms.bk_derandomize_alice(p, f, 0.3, rng=np.random.default_rng(5))
        self.assertEqual(report.t, 16)
        self.assertEqual(report.message_length, 16 * 9)
        self.assertTrue(q.alice.is_deterministic())
        self.assertLessEqual(report.achieved_error, 0.125 + 0.3 + TOL)
        self.assertAlmostEqual(worst_error(q, f), report.achieved_error)
        self.assertLessEqual(costs(q).cc_priv, report.message_length + 2)
        self.assertEqual(q.referee.randomness.size, 16)

    def test_uniform_bit(self):
        f = make_equality(2)
        p = fixtures.uniform_bit_alice(2)
        q, report = transforms.bk_derandomize_alice(p, f, 0.3, rng=np.random.default_rng(6))
        self.assertTrue(q.alice.is_deterministic())
        ones = output_matrix(q)[:, :, 1]
        self.assertLess(np.abs(ones - 0.5).max(), 0.3)

    def test_explicit_tuple_length(self):
        f = make_equality(2)
        p = fixtures.uniform_bit_alice(2)
        q, report = transforms.bk_derandomize_alice(p, f, 0.45, t=4, rng=np.random.default_rng(2))
        self.assertEqual(report.t, 4)
        self.assertEqual(q.metadata['bk_t'], 4)

    def test_deterministic_alice_is_kept(self):
        p = fixtures.verbatim_equality(2)
        q, report = transforms.bk_derandomize_alice(p, make_equality(2), 0.3)
        self.assertIs(q, p)
        self.assertEqual(report.t, 1)

    def test_requires_private_model(self):
        with self.assertRaises(ValidationError):
            transforms.bk_derandomize_alice(fixtures.shared_hash_equality(2, 1), make_equality(2), 0.3)


class PipelineTest(unittest.TestCase):
    def test_parse_stage(self):
        self.assertEqual(transforms.parse_stage('bk:0.3,16'), transforms.Stage('bk', 0.3, 16))
        self.assertEqual(str(transforms.parse_stage(' truncate:0.25 ')), 'truncate:0.25')
        self.assertEqual(str(transforms.parse_stage('compress')), 'compress')
        for text in ('warp', 'compress:1', 'truncate', 'newman:-1', 'truncate:0.1,2', 'bk:x', 'bk:0.3,0'):
            with self.assertRaises(ValidationError):
                transforms.parse_stage(text)

    def test_full_pipeline(self):
        f = make_equality(1)
        p = fixtures.verbatim_equality(1)
        stages = ['compress', 'truncate:0.25', 'newman:0.25', 'bk:0.3']
        q, reports = transforms.compose_pipeline(p, f, stages, np.random.default_rng(0))
        self.assertEqual([r.name for r in reports], stages)
        self.assertTrue(all(r.passed for r in reports), [r.as_dict() for r in reports])
        self.assertEqual(q.model, Model.PRIVATE)
        self.assertLessEqual(worst_error(q, f), 0.5)

    def test_shared_hash_pipeline(self):
        f = make_equality(2)
        stages = ['compress', 'truncate:0.25', 'newman:0.25']
        for k in (1, 3):
            p = fixtures.shared_hash_equality(2, k)
            q, reports = transforms.compose_pipeline(p, f, stages, np.random.default_rng(k))
            self.assertTrue(all(r.passed for r in reports), [r.as_dict() for r in reports])
            self.assertEqual(q.model, Model.PRIVATE)
            self.assertLessEqual(worst_error(q, f), 2.0 ** -k + 0.5 + TOL)

    def test_repeated_truncation(self):
        f = make_equality(1)
        stages = ['compress', 'truncate:0.25', 'newman:0.25', 'compress', 'truncate:0.25']
        q, reports = transforms.compose_pipeline(fixtures.verbatim_equality(1), f, stages,
                                                 np.random.default_rng(0))
        self.assertEqual(len(reports), 5)
        self.assertEqual(q.model, Model.SHARED)
        views = q.alice.views.symbols
        self.assertEqual(views[-1], (ABORT, 1))
        self.assertIn(ABORT, views)
        self.assertLessEqual(reports[-1].measured['error'], reports[-1].claimed['error'] + TOL)

    def test_stage_order_is_checked(self):
        with self.assertRaises(ValidationError):
            transforms.compose_pipeline(fixtures.verbatim_equality(1), make_equality(1), ['truncate:0.25'])


if __name__ == '__main__':
    unittest.main()
