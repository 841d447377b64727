import pytest
from hypothesis import HealthCheck, settings

from symshift.core import Alphabet
from symshift.presentations import sft_from_forbidden, shift_from_regex

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden():
    return sft_from_forbidden("01", ["11"], name="golden")


@pytest.fixture(scope="session")
def full2():
    return sft_from_forbidden("01", [], name="full2")


@pytest.fixture(scope="session")
def full3():
    return sft_from_forbidden("012", [], name="full3")


@pytest.fixture(scope="session")
def even():
    return shift_from_regex(Alphabet.of("01"), "(1(00)*)*", name="even")


@pytest.fixture(scope="session")
def run_flip():
    return shift_from_regex(Alphabet.of("0123"), "((0*+1*)2(0*+1*)3)*", name="run_flip")


@pytest.fixture(scope="session")
def alternating():
    return shift_from_regex(Alphabet.of("012"), "(2(01)*)*", name="alternating")


SFT_FIXTURES = {
    "golden": ("01", ["11"]),
    "full2": ("01", []),
    "full3": ("012", []),
    "no_010": ("01", ["010"]),
    "run_limit": ("01", ["111", "000"]),
    "three_colour": ("012", ["00", "11", "22"]),
}


@pytest.fixture(scope="session")
def sft_fixtures():
    return {
        name: sft_from_forbidden(alphabet, forbidden, name=name)
        for name, (alphabet, forbidden) in SFT_FIXTURES.items()
    }


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
