def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(CRITERIA):
        result = RESULTS.get(criterion)
        if result is None:
            terminalreporter.write_line(f"criterion {criterion}: NOT RUN  {CRITERIA[criterion]}")
            continue
        ok = result.passed and result.elapsed <= result.budget
        worst = max((c.value / c.tolerance if c.tolerance else 0.0) for c in result.checks)
        terminalreporter.write_line(
            f"criterion {criterion} ({result.suite}): {'PASS' if ok else 'FAIL'}  "
            f"checks={len(result.checks)} worst value/tolerance={worst:.2g}  "
            f"{result.elapsed:.2f}s / {result.budget:.0f}s  {CRITERIA[criterion]}")
