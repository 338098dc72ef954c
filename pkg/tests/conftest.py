import functools
import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("repo", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def scenario(name):
    from strata.catalog import catalog_scenario

    return catalog_scenario(name)


@pytest.fixture(scope="session")
def scn():
    return scenario


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
