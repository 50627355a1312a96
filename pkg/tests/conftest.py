"""Shared test configuration.

Prints one PASS/FAIL line per acceptance criterion at the end of a run so
the acceptance suite reads as a checklist.
"""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for status, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and getattr(rep, "when", None) == "call":
                rows.append((nodeid.split("::")[-1], label))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, label in sorted(rows):
            terminalreporter.write_line(f"{label}  {name}")
