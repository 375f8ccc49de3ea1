import pytest
from hypothesis import HealthCheck, settings

# fixed seed and 10^3 samples for every property test
settings.register_profile(
    "exact",
    max_examples=1000,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def catalog():
    from g2forms.catalog import load_catalog
    return load_catalog()


@pytest.fixture(scope="session")
def entries(catalog):
    from g2forms.catalog import by_id
    return by_id(catalog)


@pytest.fixture(scope="session")
def verification(catalog):
    from g2forms.catalog.verify import verify_catalog
    return verify_catalog(catalog)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
