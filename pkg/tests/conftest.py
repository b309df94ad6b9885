"""Shared fixtures plus the acceptance-line reporter.

The acceptance tests append one (label, passed, detail) triple per criterion
to ACCEPTANCE_RESULTS; the terminal-summary hook prints them after the run so
the pass/fail lines survive pytest's output capture.
"""
import numpy as np

ACCEPTANCE_RESULTS: list = []


def record_acceptance(label: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((label, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        line = f"{status}: {label}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


def random_pmf(rng: np.random.Generator, k: int) -> np.ndarray:
    """Interior probability vector: K uniforms divided by their sum."""
    u = rng.random(k)
    return u / u.sum()


def random_interior_table(rng: np.random.Generator, k: int) -> np.ndarray:
    """Joint k x k probability table with every cell strictly positive."""
    cells = rng.random((k, k)) + 1e-3
    return cells / cells.sum()
