"""
File formats: the JSON protocol description, function tables and input priors,
plus number formatting for the CSV output.

A protocol file looks like

    {"schema": 1, "model": "shared", "metadata": {...},
     "alice": {"kind": "map", "inputs": [...], "private": {"symbols": [...], "probs": [...]},
               "shared": {...}, "messages": [...], "lengths": [...], "table": [...]},
     "bob": {...},
     "referee": {"randomness": {...}, "outputs": [0, 1], "table": [...]}}

Tables are flat arrays in C order. Labels may be strings, integers or (nested)
lists; lists come back as tuples. Writing is canonical, so a file written by
dump_protocol is reproduced byte for byte by load + dump.
"""
import json
import logging

import numpy as np

from smpleak import config as conf
from smpleak.errors import ValidationError
from smpleak.infotheory import Alphabet, Channel, Dist, JointDist
from smpleak.smp import (FunctionTable, KernelSender, LengthFunction, MapSender, Model, Referee, SmpProtocol,
                         StreamSender, TruncatedSender, make_equality)

log = logging.getLogger(__name__)


def format_number(value):
    """
    12 significant digits, the CSV number format.
    """
    return '{:.12g}'.format(value)


def log_spaced(n_min, n_max, steps):
    """
    steps integers from n_min to n_max, evenly spaced in log scale.
    """
    if steps < 1 or n_min < 1 or n_max < n_min:
        raise ValidationError("need 1 <= n_min <= n_max and at least one step")
    if steps == 1:
        return [float(round(n_min))]
    values = np.round(np.logspace(np.log10(n_min), np.log10(n_max), steps))
    return [float(v) for v in values]


def _label_out(label):
    if isinstance(label, tuple):
        return [_label_out(part) for part in label]
    if isinstance(label, np.integer):
        return int(label)
    return label


def _label_in(label):
    if isinstance(label, list):
        return tuple(_label_in(part) for part in label)
    return label


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return list(value)
    raise TypeError("{!r} is not JSON serializable".format(value))


def dumps(obj):
    return json.dumps(obj, sort_keys=True, default=_json_default) + '\n'


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as error:
        raise ValidationError("malformed JSON: {}".format(error.msg), line=error.lineno, column=error.colno)


def _get(obj, key, path):
    if not isinstance(obj, dict):
        raise ValidationError("expected an object", field=path)
    if key not in obj:
        raise ValidationError("missing field", field='{}.{}'.format(path, key) if path else key)
    return obj[key]


def _alphabet_out(alphabet):
    return [_label_out(s) for s in alphabet.symbols]


def _alphabet_in(obj, path):
    if not isinstance(obj, list):
        raise ValidationError("expected a list of labels", field=path)
    try:
        return Alphabet(tuple(_label_in(s) for s in obj))
    except TypeError:
        raise ValidationError("labels must be strings, numbers or lists", field=path)


def _dist_out(dist):
    return {'symbols': _alphabet_out(dist.alphabet), 'probs': dist.probs.tolist()}


def _dist_in(obj, path):
    alphabet = _alphabet_in(_get(obj, 'symbols', path), path + '.symbols')
    return Dist(alphabet, _array(_get(obj, 'probs', path), path + '.probs'))


def _array(obj, path, dtype=float, shape=None):
    try:
        array = np.asarray(obj, dtype=dtype)
    except (TypeError, ValueError):
        raise ValidationError("expected an array of numbers", field=path)
    if dtype is not float and not np.array_equal(array, np.asarray(obj, dtype=float)):
        raise ValidationError("expected integers", field=path)
    if shape is not None:
        if array.size != int(np.prod(shape)):
            raise ValidationError("expected {} entries, got {}".format(int(np.prod(shape)), array.size), field=path)
        array = array.reshape(shape)
    return array


def _has_default_views(sender):
    views = Alphabet.product(sender.shared.alphabet, sender.messages)
    return sender.views == views and np.array_equal(sender.decode.ravel(), np.arange(views.size))


def _sender_out(sender):
    if isinstance(sender, MapSender):
        obj = {'kind': 'map', 'inputs': _alphabet_out(sender.inputs), 'messages': _alphabet_out(sender.messages),
               'lengths': sender.lengths.lengths.tolist(), 'private': _dist_out(sender.private),
               'shared': _dist_out(sender.shared), 'table': sender.table.ravel().tolist()}
        if not _has_default_views(sender):
            obj['views'] = _alphabet_out(sender.views)
            obj['decode'] = sender.decode.ravel().tolist()
        return obj
    if isinstance(sender, KernelSender):
        return {'kind': 'kernel', 'inputs': _alphabet_out(sender.inputs), 'messages': _alphabet_out(sender.messages),
                'views': _alphabet_out(sender.views), 'lengths': sender.lengths.lengths.tolist(),
                'shared': _dist_out(sender.shared), 'kernel': sender.kernel.ravel().tolist(),
                'decode': sender.decode.ravel().tolist()}
    if isinstance(sender, StreamSender):
        return {'kind': 'stream', 'inputs': _alphabet_out(sender.inputs), 'views': _alphabet_out(sender.views),
                'rows': sender.channel.matrix.ravel().tolist(), 'proposal': sender.proposal.probs.tolist(),
                'cap': sender.cap, 'floor': sender.floor}
    if isinstance(sender, TruncatedSender):
        return {'kind': 'truncated', 'inner': _sender_out(sender.inner), 'limits': sender.limits.tolist()}
    raise ValidationError("cannot serialize a {} sender".format(sender.kind))


def _lengths_in(obj, path, size):
    if 'lengths' not in obj:
        return None
    return LengthFunction(_array(obj['lengths'], path + '.lengths', dtype=np.int64, shape=(size,)))


def _sender_in(obj, path):
    try:
        return _decode_sender(obj, path)
    except ValidationError as error:
        if error.field is None and error.line is None:
            raise ValidationError(str(error), field=path) from error
        raise


def _decode_sender(obj, path):
    kind = _get(obj, 'kind', path)
    if kind == 'truncated':
        inner = _sender_in(_get(obj, 'inner', path), path + '.inner')
        limits = _array(_get(obj, 'limits', path), path + '.limits', float, (inner.inputs.size,))
        return TruncatedSender(inner, limits)
    inputs = _alphabet_in(_get(obj, 'inputs', path), path + '.inputs')
    if kind == 'map':
        messages = _alphabet_in(_get(obj, 'messages', path), path + '.messages')
        private = _dist_in(_get(obj, 'private', path), path + '.private')
        shared = _dist_in(_get(obj, 'shared', path), path + '.shared')
        table = _array(_get(obj, 'table', path), path + '.table', np.int64,
                       (inputs.size, private.size, shared.size))
        views = decode = None
        if 'views' in obj:
            views = _alphabet_in(obj['views'], path + '.views')
            decode = _array(_get(obj, 'decode', path), path + '.decode', np.int64, (shared.size, messages.size))
        return MapSender(inputs, private, shared, messages, table,
                         _lengths_in(obj, path, messages.size), views, decode)
    if kind == 'kernel':
        messages = _alphabet_in(_get(obj, 'messages', path), path + '.messages')
        views = _alphabet_in(_get(obj, 'views', path), path + '.views')
        shared = _dist_in(_get(obj, 'shared', path), path + '.shared')
        kernel = _array(_get(obj, 'kernel', path), path + '.kernel', float,
                        (inputs.size, shared.size, messages.size))
        decode = _array(_get(obj, 'decode', path), path + '.decode', np.int64, (shared.size, messages.size))
        return KernelSender(inputs, messages, views, shared, kernel, decode, _lengths_in(obj, path, messages.size))
    if kind == 'stream':
        views = _alphabet_in(_get(obj, 'views', path), path + '.views')
        rows = _array(_get(obj, 'rows', path), path + '.rows', float, (inputs.size, views.size))
        proposal = Dist(views, _array(_get(obj, 'proposal', path), path + '.proposal'))
        return StreamSender(Channel(inputs, views, rows), proposal,
                            _get(obj, 'cap', path), _get(obj, 'floor', path))
    raise ValidationError("unknown sender kind {!r}".format(kind), field=path + '.kind')


def protocol_to_dict(p):
    referee = p.referee
    return {
        'schema': conf.config().SCHEMA_VERSION,
        'model': p.model.value,
        'metadata': p.metadata,
        'alice': _sender_out(p.alice),
        'bob': _sender_out(p.bob),
        'referee': {'randomness': _dist_out(referee.randomness), 'outputs': _alphabet_out(referee.outputs),
                    'table': referee.table.ravel().tolist()},
    }


def _check_schema(obj):
    schema = _get(obj, 'schema', '')
    if schema != conf.config().SCHEMA_VERSION:
        raise ValidationError("unsupported schema version {!r}".format(schema), field='schema')


def protocol_from_dict(obj):
    _check_schema(obj)
    try:
        model = Model(_get(obj, 'model', ''))
    except ValueError:
        raise ValidationError("unknown model", field='model')
    alice = _sender_in(_get(obj, 'alice', ''), 'alice')
    bob = _sender_in(_get(obj, 'bob', ''), 'bob')
    section = _get(obj, 'referee', '')
    try:
        randomness = _dist_in(_get(section, 'randomness', 'referee'), 'referee.randomness')
        outputs = _alphabet_in(_get(section, 'outputs', 'referee'), 'referee.outputs')
        table = _array(_get(section, 'table', 'referee'), 'referee.table', np.int64,
                       (alice.views.size, bob.views.size, randomness.size))
        referee = Referee(alice.views, bob.views, randomness, outputs, table)
    except ValidationError as error:
        if error.field is None:
            raise ValidationError(str(error), field='referee') from error
        raise
    metadata = obj.get('metadata') or {}
    if not isinstance(metadata, dict):
        raise ValidationError("metadata must be an object", field='metadata')
    return SmpProtocol(model, alice, bob, referee, metadata)


def dump_protocol(p):
    return dumps(protocol_to_dict(p))


def load_protocol(text):
    return protocol_from_dict(loads(text))


def read_protocol(path):
    with open(path, mode='r', encoding='utf-8') as file:
        return load_protocol(file.read())


def write_text(path, text):
    with open(path, mode='w', encoding='utf-8', newline='\n') as file:
        file.write(text)


def write_protocol(p, path):
    write_text(path, dump_protocol(p))


def function_to_dict(f):
    return {'schema': conf.config().SCHEMA_VERSION, 'inputs_x': _alphabet_out(f.inputs_x),
            'inputs_y': _alphabet_out(f.inputs_y), 'outputs': _alphabet_out(f.outputs),
            'table': f.table.ravel().tolist()}


def function_from_dict(obj):
    _check_schema(obj)
    inputs_x = _alphabet_in(_get(obj, 'inputs_x', ''), 'inputs_x')
    inputs_y = _alphabet_in(_get(obj, 'inputs_y', ''), 'inputs_y')
    outputs = _alphabet_in(_get(obj, 'outputs', ''), 'outputs')
    table = _array(_get(obj, 'table', ''), 'table', np.int64, (inputs_x.size, inputs_y.size))
    return FunctionTable(inputs_x, inputs_y, outputs, table)


def read_function(spec, p=None):
    """
    :param spec: 'eq' (equality on the protocol's inputs), 'eq:<n>', or a path to a function file
    """
    if spec == 'eq':
        if p is None or p.inputs_x != p.inputs_y:
            raise ValidationError("'eq' needs a protocol with identical input alphabets", field='function')
        return FunctionTable(p.inputs_x, p.inputs_y, p.outputs, np.eye(p.inputs_x.size, dtype=np.int64))
    if spec.startswith('eq:'):
        try:
            n = int(spec[3:])
        except ValueError:
            raise ValidationError("malformed function {!r}".format(spec), field='function')
        return make_equality(n)
    with open(spec, mode='r', encoding='utf-8') as file:
        return function_from_dict(loads(file.read()))


def prior_from_dict(obj, p):
    """
    Input prior over X x Y of p, given as {"schema": 1, "probs": [[...], ...]} (rows are x).
    """
    _check_schema(obj)
    probs = _array(_get(obj, 'probs', ''), 'probs', float, (p.inputs_x.size, p.inputs_y.size))
    return JointDist((('X', p.inputs_x), ('Y', p.inputs_y)), probs)


def read_prior(path, p):
    with open(path, mode='r', encoding='utf-8') as file:
        return prior_from_dict(loads(file.read()), p)
