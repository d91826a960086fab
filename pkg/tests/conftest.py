import pytest

from halfspace_msr import load_preset


@pytest.fixture(scope="session")
def p41():
    return load_preset("p41_permittivity")


@pytest.fixture(scope="session")
def single_scene(p41):
    """One permittivity inclusion at (0, -2) in the p41 medium, noiseless."""
    from halfspace_msr import Inhomogeneity

    return p41.with_(scatterers=(Inhomogeneity((0.0, -2.0), 0.1, eps=2.0, mu=1.0),), snr_db=None)


_ACCEPTANCE = []


@pytest.fixture
def record():
    """Log one acceptance line; the summary is reprinted at the end of the run."""

    def _record(criterion, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: float(s.split("criterion ")[1].split(":")[0].rstrip("ab"))
                           + (0.5 if s.split(":")[0].endswith("b") else 0)):
            terminalreporter.write_line(line)
