"""Shared pytest plumbing.

The acceptance tests register one summary line per criterion; the terminal
summary prints them all so the pass/fail verdicts are visible even though
pytest captures stdout."""

ACCEPTANCE_LINES = []


def record_acceptance(number, name, ok, detail=""):
    verdict = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {number} ({name}): {verdict}"
    if detail:
        line += f" -- {detail}"
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
