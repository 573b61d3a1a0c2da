"""
Small protocols with known behaviour, and seeded random protocols.

Every fixture computes equality on n-bit strings unless said otherwise, with Bob
sending y verbatim so that only Alice's side changes between fixtures.
"""
import numpy as np

from smpleak.errors import ValidationError
from smpleak.infotheory import Alphabet, Channel, Dist, JointDist
from smpleak.smp import BOOLEAN, LengthFunction, MapSender, Model, Referee, SmpProtocol
from smpleak.codes import fixed_length

SINGLETON = Dist.singleton()


def _deterministic(inputs, messages, table):
    return MapSender(inputs, SINGLETON, SINGLETON, messages, np.asarray(table).reshape(inputs.size, 1, 1))


def verbatim_sender(inputs):
    return _deterministic(inputs, inputs, np.arange(inputs.size))


def _parity(a, x):
    return bin(int(a, 2) & int(x, 2)).count('1') % 2


def _hash(keys, x):
    return ''.join(str(_parity(a, x)) for a in keys)


def verbatim_equality(n):
    """
    Both parties send their input, the referee compares.
    """
    inputs = Alphabet.bits(n)
    alice, bob = verbatim_sender(inputs), verbatim_sender(inputs)
    table = np.eye(inputs.size, dtype=np.int64).reshape(inputs.size, inputs.size, 1, 1, 1)
    referee = Referee.from_map(alice, bob, SINGLETON, BOOLEAN, table)
    return SmpProtocol(Model.PRIVATE, alice, bob, referee, {'fixture': 'verbatim', 'n': n})


def constant_protocol(n):
    """
    Constant messages; the referee answers with a fresh uniform bit.
    """
    inputs = Alphabet.bits(n)
    silent = Alphabet(('',))
    alice = _deterministic(inputs, silent, np.zeros(inputs.size))
    bob = _deterministic(inputs, silent, np.zeros(inputs.size))
    coin = Dist.uniform(Alphabet.range(2))
    table = np.arange(2).reshape(1, 1, 2, 1, 1)
    referee = Referee.from_map(alice, bob, coin, BOOLEAN, table)
    return SmpProtocol(Model.PRIVATE, alice, bob, referee, {'fixture': 'constant', 'n': n})


def shared_hash_equality(n, k=1):
    """
    Alice sends k parity bits <a_j, x> for keys a_1..a_k she shares with the referee;
    the referee recomputes them on Bob's y. Errs with probability 2^-k when x != y.
    """
    if k < 1:
        raise ValidationError("at least one hash bit is needed")
    inputs = Alphabet.bits(n)
    keys = Alphabet.product(*[Alphabet.bits(n)] * k)
    digests = Alphabet.bits(k)
    shared = Dist.uniform(keys)
    table = np.array([[[digests.index(_hash(key, x)) for key in keys]] for x in inputs])
    alice = MapSender(inputs, SINGLETON, shared, digests, table)
    bob = verbatim_sender(inputs)
    referee_table = np.zeros((digests.size, inputs.size, 1, keys.size, 1), dtype=np.int64)
    for r, key in enumerate(keys):
        for j, y in enumerate(inputs):
            referee_table[digests.index(_hash(key, y)), j, 0, r, 0] = 1
    referee = Referee.from_map(alice, bob, SINGLETON, BOOLEAN, referee_table)
    return SmpProtocol(Model.SHARED, alice, bob, referee, {'fixture': 'shared-hash', 'n': n, 'k': k})


def private_hash_equality(n, k=3):
    """
    Private coin version: Alice draws the keys herself and sends them along with the digest.
    """
    inputs = Alphabet.bits(n)
    keys = Alphabet.product(*[Alphabet.bits(n)] * k)
    digests = Alphabet.bits(k)
    messages = Alphabet.product(keys, digests)
    table = np.array([[[r * digests.size + digests.index(_hash(key, x))]
                       for r, key in enumerate(keys)] for x in inputs])
    alice = MapSender(inputs, Dist.uniform(keys), SINGLETON, messages, table)
    bob = verbatim_sender(inputs)
    referee_table = np.zeros((messages.size, inputs.size, 1, 1, 1), dtype=np.int64)
    for m, (key, digest) in enumerate(messages):
        for j, y in enumerate(inputs):
            referee_table[m, j, 0, 0, 0] = int(_hash(key, y) == digest)
    referee = Referee.from_map(alice, bob, SINGLETON, BOOLEAN, referee_table)
    return SmpProtocol(Model.PRIVATE, alice, bob, referee, {'fixture': 'private-hash', 'n': n, 'k': k})


def uniform_bit_alice(n):
    """
    Alice sends a private uniform bit whatever x is, and the referee outputs it.
    """
    inputs = Alphabet.bits(n)
    coin = Dist.uniform(Alphabet.bits(1))
    table = np.tile(np.arange(2), (inputs.size, 1)).reshape(inputs.size, 2, 1)
    alice = MapSender(inputs, coin, SINGLETON, coin.alphabet, table)
    bob = verbatim_sender(inputs)
    referee_table = np.broadcast_to(np.arange(2).reshape(2, 1, 1, 1, 1), (2, inputs.size, 1, 1, 1))
    referee = Referee.from_map(alice, bob, SINGLETON, BOOLEAN, referee_table)
    return SmpProtocol(Model.PRIVATE, alice, bob, referee, {'fixture': 'uniform-bit', 'n': n})


def two_length_protocol(n=2, p_long=0.3, short=1, long=5):
    """
    Average length protocol: with probability p_long Alice sends x with a long
    codeword, otherwise a short 'skip' codeword after which the referee guesses.
    """
    inputs = Alphabet.bits(n)
    coin = Dist(Alphabet(('short', 'long')), [1.0 - p_long, p_long])
    messages = Alphabet(('skip',) + inputs.symbols)
    table = np.zeros((inputs.size, 2, 1), dtype=np.int64)
    table[:, 1, 0] = 1 + np.arange(inputs.size)
    lengths = LengthFunction(np.array([short] + [long] * inputs.size))
    alice = MapSender(inputs, coin, SINGLETON, messages, table, lengths)
    bob = verbatim_sender(inputs)
    guess = Dist.uniform(Alphabet.range(2))
    referee_table = np.zeros((messages.size, inputs.size, 2, 1, 1), dtype=np.int64)
    referee_table[0, :, :, 0, 0] = np.arange(2)[None, :]
    referee_table[1:, :, :, 0, 0] = np.eye(inputs.size, dtype=np.int64)[:, :, None]
    referee = Referee.from_map(alice, bob, guess, BOOLEAN, referee_table)
    return SmpProtocol(Model.AVERAGE, alice, bob, referee,
                       {'fixture': 'two-length', 'n': n, 'p_long': p_long, 'lengths': [short, long]})


FIXTURES = {
    'verbatim': verbatim_equality,
    'constant': constant_protocol,
    'shared-hash': shared_hash_equality,
    'private-hash': private_hash_equality,
    'uniform-bit': uniform_bit_alice,
    'two-length': two_length_protocol,
}


def _sizes(rng, low, high):
    return int(rng.integers(low, high + 1))


def random_dist(rng, alphabet):
    return Dist(alphabet, rng.dirichlet(np.ones(alphabet.size)))


def _random_sender(rng, inputs, private_model, max_size):
    private = random_dist(rng, Alphabet.range(_sizes(rng, 1, max_size)))
    shared = SINGLETON if private_model else random_dist(rng, Alphabet.range(_sizes(rng, 1, max_size)))
    messages = Alphabet.range(_sizes(rng, 1, max_size))
    table = rng.integers(0, messages.size, size=(inputs.size, private.size, shared.size))
    return private, shared, messages, table


def random_protocol(rng, model=Model.SHARED, max_size=4):
    """
    Random protocol with every alphabet and randomness register of size at most max_size.

    :param rng: numpy Generator
    :param model: Model; average model protocols get random prefix-free lengths
    """
    model = Model(model)
    private_model = model is Model.PRIVATE
    inputs_x = Alphabet.range(_sizes(rng, 2, max_size))
    inputs_y = Alphabet.range(_sizes(rng, 2, max_size))
    senders = []
    for inputs in (inputs_x, inputs_y):
        private, shared, messages, table = _random_sender(rng, inputs, private_model, max_size)
        lengths = None
        if model is Model.AVERAGE:
            base = fixed_length(messages.size)
            lengths = LengthFunction(base + rng.integers(0, 4, size=messages.size))
        senders.append(MapSender(inputs, private, shared, messages, table, lengths))
    alice, bob = senders
    coins = random_dist(rng, Alphabet.range(_sizes(rng, 1, max_size)))
    shape = (alice.messages.size, bob.messages.size, coins.size, alice.shared.size, bob.shared.size)
    referee = Referee.from_map(alice, bob, coins, BOOLEAN, rng.integers(0, 2, size=shape))
    return SmpProtocol(model, alice, bob, referee, {'fixture': 'random'})


def random_channel(rng, n_inputs, n_outputs):
    return Channel(Alphabet.range(n_inputs), Alphabet.range(n_outputs),
                   rng.dirichlet(np.ones(n_outputs), size=n_inputs))


def random_prior(rng, p):
    """
    Random joint input distribution over X x Y of the protocol.
    """
    probs = rng.dirichlet(np.ones(p.inputs_x.size * p.inputs_y.size))
    return JointDist((('X', p.inputs_x), ('Y', p.inputs_y)), probs.reshape(p.inputs_x.size, p.inputs_y.size))
