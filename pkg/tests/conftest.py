import numpy as np
import pytest

import cosetalg as ca


@pytest.fixture(scope="session")
def s3():
    return ca.builtin_catalog("symmetric", 3)


@pytest.fixture(scope="session")
def s3_h12(s3):
    return ca.subgroup_from_tokens(s3, ["(12)"])


@pytest.fixture(scope="session")
def s3_q(s3, s3_h12):
    return ca.build_coset_space(s3, s3_h12)


@pytest.fixture(scope="session")
def s3_a3(s3):
    return ca.subgroup_from_tokens(s3, ["(123)"])


@pytest.fixture(scope="session")
def d4():
    return ca.builtin_catalog("dihedral", 4)


@pytest.fixture(scope="session")
def q8():
    return ca.builtin_catalog("quaternion8")


def rng(seed=0):
    return np.random.Generator(np.random.PCG64(seed))


def random_weights(generator, size):
    return generator.random(size) + 1j * generator.random(size)
