"""
Tests smpleak/smp.py

Testing objective:
    Exact evaluation of protocols: output laws are distributions, transcripts marginalize
    to them, errors and costs match hand-computed values on the fixtures, and a
    Monte-Carlo run agrees with the exact output law.

Testing ideas:
    Fixtures with known error and cost, then seeded random protocols in every model.
"""
import unittest

import numpy as np

from smpleak import fixtures, smp
from smpleak.errors import EnumerationLimitExceeded, ValidationError
from smpleak.infotheory import Alphabet, Channel, Dist
from tests.fixtures import monte_carlo_outputs


class ProtocolTest(unittest.TestCase):
    def test_verbatim_equality(self):
        p = fixtures.verbatim_equality(2)
        f = smp.make_equality(2)
        self.assertEqual(smp.worst_error(p, f), 0.0)
        report = smp.costs(p, f)
        self.assertEqual((report.cc_priv, report.cc_sh, report.cc_av), (4, 4, 4.0))
        self.assertTrue(p.alice.is_deterministic())

    def test_constant_protocol(self):
        p = fixtures.constant_protocol(2)
        f = smp.make_equality(2)
        np.testing.assert_allclose(smp.error_matrix(p, f), 0.5)
        report = smp.costs(p)
        self.assertEqual(report.cc_priv, 0)
        self.assertEqual(report.cc_av, 0.0)
        self.assertIsNone(report.worst_error)

    def test_shared_hash_error(self):
        for k in (1, 2, 3):
            p = fixtures.shared_hash_equality(2, k)
            errors = smp.error_matrix(p, smp.make_equality(2))
            expected = (1.0 - np.eye(4)) * 2.0 ** -k
            np.testing.assert_allclose(errors, expected, atol=1e-12)
            self.assertEqual(smp.costs(p).cc_sh, k + 2)

    def test_private_hash_error(self):
        p = fixtures.private_hash_equality(2, k=3)
        self.assertAlmostEqual(smp.worst_error(p, smp.make_equality(2)), 0.125)
        self.assertFalse(p.alice.is_deterministic())

    def test_two_length_costs(self):
        p = fixtures.two_length_protocol(n=2, p_long=0.3, short=1, long=3)
        f = smp.make_equality(2)
        report = smp.costs(p, f)
        self.assertAlmostEqual(report.worst_error, 0.35)
        self.assertAlmostEqual(report.cc_av, 0.7 * 1 + 0.3 * 3 + 2)
        self.assertEqual(report.cc_priv, 3 + 2)
        self.assertEqual(len(report.as_dict()['per_input_error']), 16)
        self.assertAlmostEqual(p.alice.expected_lengths()[0], 1.6)

    def test_output_dist_and_error(self):
        p = fixtures.shared_hash_equality(2, 1)
        f = smp.make_equality(2)
        d = smp.output_dist(p, '01', '10')
        self.assertAlmostEqual(d.prob(1), 0.5)
        self.assertAlmostEqual(smp.error(p, f, '01', '01'), 0.0)

    def test_monte_carlo_matches_exact(self):
        rng = np.random.default_rng(7)
        p = fixtures.shared_hash_equality(2, 1)
        for x, y in (('00', '00'), ('01', '11'), ('10', '11')):
            empirical = monte_carlo_outputs(p, x, y, 20000, rng)
            exact = smp.output_dist(p, x, y).probs
            self.assertLess(np.abs(empirical - exact).max(), 0.02)

    def test_random_protocols_chain(self):
        rng = np.random.default_rng(2024)
        for i in range(50):
            model = list(smp.Model)[i % 3]
            p = fixtures.random_protocol(rng, model)
            outputs = smp.output_matrix(p)
            np.testing.assert_allclose(outputs.sum(axis=2), 1.0, atol=1e-9)
            np.testing.assert_allclose(p.alice.message_law.sum(axis=1), 1.0, atol=1e-9)
            np.testing.assert_allclose(p.bob.view_law, p.bob.joint().sum(axis=1), atol=1e-12)
            x, y = p.inputs_x.symbols[-1], p.inputs_y.symbols[0]
            transcript = smp.joint_transcript(p, x, y)
            np.testing.assert_allclose(transcript.marginal(['Z']).probs, smp.output_dist(p, x, y).probs,
                                       atol=1e-12)
            np.testing.assert_allclose(transcript.marginal(['M_A']).probs,
                                       p.alice.message_law[p.inputs_x.index(x)], atol=1e-12)
            report = smp.costs(p)
            self.assertLessEqual(report.cc_av, p.alice.lengths.max() + p.bob.lengths.max())


class ValidationTest(unittest.TestCase):
    def test_make_equality(self):
        f = smp.make_equality(3)
        self.assertEqual(f.table.shape, (8, 8))
        self.assertEqual(f.value('101', '101'), 1)
        self.assertEqual(f.value('101', '100'), 0)
        for n in (0, 13):
            with self.assertRaises(ValidationError):
                smp.make_equality(n)

    def test_function_from_callable(self):
        inputs = Alphabet.range(3)
        f = smp.FunctionTable.from_callable(inputs, inputs, smp.BOOLEAN, lambda x, y: int(x <= y))
        self.assertEqual(f.value(2, 1), 0)
        self.assertEqual(f.value(1, 2), 1)

    def test_lengths_must_satisfy_kraft(self):
        with self.assertRaises(ValidationError):
            smp.LengthFunction(np.array([1, 1, 1]))
        with self.assertRaises(ValidationError):
            smp.LengthFunction(np.array([1.5, 2]))
        self.assertTrue(smp.LengthFunction.uniform(5).is_uniform())

    def test_model_requirements(self):
        p = fixtures.two_length_protocol()
        with self.assertRaises(ValidationError):
            smp.SmpProtocol(smp.Model.SHARED, p.alice, p.bob, p.referee)
        q = fixtures.shared_hash_equality(2, 1)
        with self.assertRaises(ValidationError) as raised:
            smp.SmpProtocol(smp.Model.PRIVATE, q.alice, q.bob, q.referee)
        self.assertEqual(raised.exception.field, 'alice.shared')
        with self.assertRaises(ValidationError):
            smp.SmpProtocol(smp.Model.SHARED, q.alice, q.bob, p.referee)

    def test_function_mismatch(self):
        with self.assertRaises(ValidationError):
            smp.worst_error(fixtures.verbatim_equality(2), smp.make_equality(3))

    def test_cell_cap(self):
        p = fixtures.shared_hash_equality(3, 2)
        with self.assertRaises(EnumerationLimitExceeded):
            smp.output_matrix(p, cell_cap=10)

    def test_cell_cap_counts_every_register(self):
        p = fixtures.random_protocol(np.random.default_rng(5), smp.Model.SHARED)
        alice, bob = p.alice, p.bob
        full = (p.inputs_x.size * p.inputs_y.size * alice.private.size * bob.private.size
                * alice.shared.size * bob.shared.size * p.referee.randomness.size)
        self.assertEqual(p.cells(), full)
        cap = max(full, p.referee.cells())
        self.assertEqual(smp.output_matrix(p, cell_cap=cap).shape[:2], (p.inputs_x.size, p.inputs_y.size))
        with self.assertRaises(EnumerationLimitExceeded):
            smp.output_matrix(p, cell_cap=full - 1)


class SenderTest(unittest.TestCase):
    def test_truncate_finite_sender(self):
        p = fixtures.two_length_protocol(n=2, p_long=0.3, short=1, long=5)
        truncated = smp.truncate_sender(p.alice, np.ones(4))
        self.assertEqual(truncated.messages.symbols, ('skip', smp.ABORT))
        self.assertEqual(truncated.views.symbols[-1], smp.ABORT)
        np.testing.assert_allclose(truncated.message_law, [[0.7, 0.3]] * 4)
        self.assertTrue(truncated.lengths.is_uniform())
        again = smp.truncate_sender(truncated, np.ones(4))
        self.assertEqual(again.views.symbols[-2:], (smp.ABORT, (smp.ABORT, 1)))
        self.assertEqual(again.messages.symbols[-1], (smp.ABORT, 1))
        np.testing.assert_allclose(again.message_law[:, :2], truncated.message_law)

    def test_abort_label(self):
        self.assertEqual(smp.abort_label((0, 1)), smp.ABORT)
        self.assertEqual(smp.abort_label((0, smp.ABORT)), (smp.ABORT, 1))
        self.assertEqual(smp.abort_label((smp.ABORT, (smp.ABORT, 1))), (smp.ABORT, 2))

    def test_truncate_keeps_short_enough_messages(self):
        p = fixtures.two_length_protocol(n=2, p_long=0.3, short=1, long=5)
        limits = np.array([5, 1, 1, 5])
        truncated = smp.truncate_sender(p.alice, limits)
        law = truncated.message_law
        self.assertAlmostEqual(law[0, truncated.messages.index('00')], 0.3)
        self.assertAlmostEqual(law[1, -1], 0.3)
        np.testing.assert_allclose(law.sum(axis=1), 1.0)

    def test_stream_sender_is_exact(self):
        rng = np.random.default_rng(3)
        channel = fixtures.random_channel(rng, 3, 4)
        proposal = Dist(channel.output, np.full(4, 0.25))
        for cap in (1, 4, None):
            sender = smp.StreamSender(channel, proposal, cap=cap)
            np.testing.assert_allclose(sender.view_law, channel.matrix, atol=1e-12)
            np.testing.assert_allclose(sender.joint().sum(axis=1), channel.matrix, atol=1e-12)
            self.assertFalse(sender.enumerable)

    def test_stream_realization(self):
        rng = np.random.default_rng(11)
        channel = Channel(Alphabet.range(3), Alphabet.range(3), np.eye(3))
        sender = smp.StreamSender(channel, Dist.uniform(channel.output))
        realized = sender.realize(rng)
        self.assertTrue(realized.enumerable)
        np.testing.assert_allclose(realized.kernel.sum(axis=2), 1.0, atol=1e-9)
        average = np.mean([sender.realize(rng).view_law for _ in range(300)], axis=0)
        self.assertLess(np.abs(average - channel.matrix).max(), 0.15)

    def test_truncated_stream(self):
        channel = Channel(Alphabet.range(2), Alphabet.range(2), [[0.9, 0.1], [0.2, 0.8]])
        sender = smp.StreamSender(channel, Dist.uniform(channel.output))
        truncated = smp.truncate_sender(sender, np.full(2, 4.0))
        self.assertIsInstance(truncated, smp.TruncatedSender)
        joint = truncated.joint()
        np.testing.assert_allclose(joint.sum(axis=(1, 2)), 1.0, atol=1e-12)
        kept_lengths = sender.lengths.lengths[truncated.kept]
        self.assertTrue(np.all(kept_lengths <= 4))


if __name__ == '__main__':
    unittest.main()
