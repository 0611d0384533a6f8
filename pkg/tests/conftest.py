import pytest

from pvext import chevalley, construct

_REPS = {}
_PIPELINES = {}


def get_rep(type_label, rank):
    key = (type_label, rank)
    if key not in _REPS:
        _REPS[key] = chevalley.build_rep(type_label, rank)
    return _REPS[key]


def get_pipeline(type_label, rank, with_liouville=True):
    key = (type_label, rank, with_liouville)
    if key not in _PIPELINES:
        _PIPELINES[key] = construct.run_pipeline(
            type_label, rank, with_liouville=with_liouville
        )
    return _PIPELINES[key]


@pytest.fixture(scope="session")
def rep_a1():
    return get_rep("A", 1)


@pytest.fixture(scope="session")
def rep_a2():
    return get_rep("A", 2)


@pytest.fixture(scope="session")
def rep_a3():
    return get_rep("A", 3)


@pytest.fixture(scope="session")
def rep_g2():
    return get_rep("G2", 2)


@pytest.fixture(scope="session")
def sl4_result():
    return get_pipeline("A", 3)


@pytest.fixture(scope="session")
def g2_result():
    return get_pipeline("G2", 2)
