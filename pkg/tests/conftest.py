from hypothesis import strategies as st

from rdimcert.core import GradedDimension


def graded_dimensions(max_degree: int = 4, max_mult: int = 4):
    return st.dictionaries(
        st.integers(-max_degree, max_degree), st.integers(0, max_mult), max_size=4
    ).map(GradedDimension)


# one PASS/FAIL line per acceptance criterion in the terminal summary
_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed:
        _ACCEPTANCE[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  {name}")
