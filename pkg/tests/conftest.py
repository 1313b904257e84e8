from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from freecat import (
    Amalgam,
    ConcreteAmalgam,
    cyclic_category,
    s3_category,
    tlj_spec,
)


@pytest.fixture(scope="session")
def z2():
    return cyclic_category(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_category(3)


@pytest.fixture(scope="session")
def s3():
    return s3_category()


@pytest.fixture(scope="session")
def am_z2z2(z2):
    return Amalgam({1: z2.spec, 2: z2.spec}, shared={"pt": {1: "x", 2: "x"}}, name="z2*z2")


@pytest.fixture(scope="session")
def am_s3z2(s3, z2):
    return Amalgam({1: s3.spec, 2: z2.spec}, shared={"pt": {1: "x", 2: "x"}}, name="s3*z2")


@pytest.fixture(scope="session")
def am_tljtlj():
    return Amalgam({1: tlj_spec(2.5), 2: tlj_spec(3.0)},
                   shared={"pt": {1: "x", 2: "x"}}, name="tlj*tlj")


@pytest.fixture(scope="session")
def ca_s3z2(s3, z2):
    return ConcreteAmalgam({1: s3, 2: z2}, name="rep(S3)*rep(Z2)")


@pytest.fixture(scope="session")
def ca_z3z2(z3, z2):
    return ConcreteAmalgam({1: z3, 2: z2}, name="rep(Z3)*rep(Z2)")


@pytest.fixture(scope="session")
def ca_z2z2(z2):
    return ConcreteAmalgam({1: z2, 2: z2}, name="rep(Z2)*rep(Z2)")


@pytest.fixture(scope="session")
def suite_s3z2(ca_s3z2):
    from freecat import verify_suite

    return verify_suite(ca_s3z2, depth=3)


@pytest.fixture(scope="session")
def suite_z3z2(ca_z3z2):
    from freecat import verify_suite

    return verify_suite(ca_z3z2, depth=3)
