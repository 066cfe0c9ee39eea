import sys

from hypothesis import settings

# fixed example sequence so that every run exercises the same inputs
settings.register_profile("repro", derandomize=True)
settings.load_profile("repro")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
