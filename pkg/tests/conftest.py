import pytest

from oscpairs.verify import catalog_run


@pytest.fixture(scope="session")
def run_constant():
    return catalog_run("constant")


@pytest.fixture(scope="session")
def run_genairy():
    return catalog_run("gen-airy")


@pytest.fixture(scope="session")
def run_inversex():
    return catalog_run("inverse-x")


@pytest.fixture(scope="session")
def run_ce():
    return catalog_run("cauchy-euler")


@pytest.fixture(scope="session")
def run_ce_long():
    return catalog_run("cauchy-euler-long")
