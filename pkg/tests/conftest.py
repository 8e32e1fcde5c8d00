import hypothesis
import pytest

from unimod import constructors as C

hypothesis.settings.register_profile("ci", derandomize=True, deadline=None, max_examples=200)
hypothesis.settings.load_profile("ci")


@pytest.fixture(scope="session")
def G42():
    return C.g42()


@pytest.fixture(scope="session")
def W3():
    return C.iterated_wreath_dl(3)


def small_groups():
    """Constructor-produced groups of order <= 10^4 used by exhaustive and property tests."""
    out = [C.cyclic(n) for n in (1, 2, 3, 5, 6, 7, 12)]
    out += [C.direct_product(C.cyclic(2), C.cyclic(2)), C.direct_product(C.cyclic(3), C.cyclic(3))]
    out += [C.g42(r) for r in (1, 2, 3, 5, 6)]
    out += [C.metacyclic(13, 6, 4), C.metacyclic(9, 6, 2)]
    out += [C.remark_group(n) for n in (2, 3, 4, 5)]
    out += [C.iterated_wreath_dl(k) for k in (0, 1, 2, 3)]
    out += [C.wreath(C.cyclic(3, "b"), C.cyclic(2, "a")).enumerate(),
            C.wreath(C.cyclic(2, "b"), C.cyclic(3, "a")).enumerate(),
            C.wreath(C.cyclic(2, "b"), C.cyclic(4, "a")).enumerate()]
    return out


# criterion number -> (passed, summary); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {text}")
