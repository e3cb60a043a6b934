"""Random generators shared by the tests."""

import numpy as np

from sepface import PartyShape, check_general_position, flatten, orthonormalize


def crandn(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_product(rng, dims):
    return flatten([crandn(rng, d) for d in dims], PartyShape(tuple(dims)))


def random_gp_set(rng, dims, k):
    while True:
        vs = [random_product(rng, dims) for _ in range(k)]
        if check_general_position(vs).is_gp:
            return vs


def random_subspace(rng, d, dim):
    return orthonormalize(crandn(rng, d, dim))


def random_unitary(rng, d):
    return orthonormalize(crandn(rng, d, d))


def random_hermitian(rng, d):
    a = crandn(rng, d, d)
    return (a + a.conj().T) / 2
