"""
Prefix-free integer codes and the Kraft inequality.

Message lengths of the average length model are only meaningful when some
prefix-free code realizes them, which is exactly the Kraft inequality
sum 2^-l(m) <= 1. The channel simulator sends stream indices with the Elias
delta code, whose length is log i + O(log log i).
"""
import math

import numpy as np

from smpleak.errors import ValidationError


def kraft_sum(lengths):
    """
    :param lengths: iterable of nonnegative integer code lengths
    :return: sum of 2^-l over the lengths
    """
    lengths = np.asarray(list(lengths), dtype=float)
    if lengths.size and lengths.min() < 0:
        raise ValidationError("code lengths must be nonnegative")
    return float(np.sum(np.exp2(-lengths)))


def is_prefix_realizable(lengths, tol=1e-12):
    return kraft_sum(lengths) <= 1.0 + tol


def fixed_length(size):
    """
    Bits of a fixed-length code for an alphabet of the given size (0 for a singleton).
    """
    if size < 1:
        raise ValidationError("alphabet size must be positive")
    return int(math.ceil(math.log2(size))) if size > 1 else 0


def _check_positive(i):
    if int(i) != i or i <= 0:
        raise ValidationError("Elias codes only support positive integers, got {!r}".format(i))


def elias_gamma_length(i):
    _check_positive(i)
    return 2 * (int(i).bit_length() - 1) + 1


def elias_delta_length(i):
    _check_positive(i)
    n_bits = int(i).bit_length()
    return (n_bits - 1) + elias_gamma_length(n_bits)


def elias_gamma_encode(i):
    """
    :param i: positive integer
    :return: the codeword as a string of '0' and '1'
    """
    _check_positive(i)
    binary = bin(int(i))[2:]
    return '0' * (len(binary) - 1) + binary


def elias_delta_encode(i):
    _check_positive(i)
    binary = bin(int(i))[2:]
    return elias_gamma_encode(len(binary)) + binary[1:]


def elias_delta_decode(bits, index=0):
    """
    Decodes one Elias delta codeword.

    :param bits: string of '0'/'1'
    :param index: where the codeword starts
    :return: (decoded integer, index just past the codeword)
    """
    try:
        zeros = 0
        while bits[index + zeros] == '0':
            zeros += 1
        index += zeros
        n_bits = int(bits[index:index + zeros + 1], 2)
        index += zeros + 1
        if len(bits) < index + n_bits - 1:
            raise IndexError
        value = int('1' + bits[index:index + n_bits - 1], 2)
    except (IndexError, ValueError):
        raise ValidationError("truncated or malformed Elias delta codeword")
    return value, index + n_bits - 1
