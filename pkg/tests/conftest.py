import pytest

from selfverify.lstar import learn_from
from selfverify.numeration import by_name
from selfverify.sequences import builtin
from selfverify.teachers import AdderTeacher, EqFacTeacher, EqRevFacTeacher, PeriodTeacher
from selfverify.teachers.partial_sum import PartialSumTeacher, synchronized

_TEACHERS = {
    "eqfac": lambda name: EqFacTeacher(builtin(name)),
    "eqrevfac": lambda name: EqRevFacTeacher(builtin(name)),
    "period": lambda name: PeriodTeacher(builtin(name)),
    "adder": lambda name: AdderTeacher(by_name(name)),
    "partial-sum": lambda name: PartialSumTeacher(synchronized(name)),
}


class LearnedCache:
    """Learned automata shared across the session; learning is the slow part."""

    def __init__(self):
        self._runs = {}

    def teacher(self, predicate, name):
        return _TEACHERS[predicate](name)

    def __call__(self, predicate, name):
        key = (predicate, name)
        if key not in self._runs:
            teacher = self.teacher(predicate, name)
            dfa, stats = learn_from(teacher)
            self._runs[key] = (dfa, stats, teacher)
        return self._runs[key]


@pytest.fixture(scope="session")
def learned():
    return LearnedCache()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, 11):
        if num in results:
            ok, detail = results[num]
            terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {num}: FAIL  (did not run to completion)")
