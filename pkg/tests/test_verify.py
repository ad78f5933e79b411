import pytest

from ringcoprime import verify


@pytest.mark.parametrize("name", ["identities", "psi", "mobius-count", "zeta-consistency"])
def test_suite_passes(name):
    checks = verify.run(name)
    assert checks and all(c.passed for c in checks), [c.line() for c in checks]


def test_rho_suite_small():
    checks = verify.rho_suite(samples=2000)
    assert all(c.passed for c in checks)


def test_check_line():
    assert verify.Check("x", False, "bad").line() == "FAIL x: bad"
