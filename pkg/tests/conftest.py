from suite import RESULTS


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=int):
        title, ok, detail = RESULTS[key]
        line = f"[{'PASS' if ok else 'FAIL'}] {key}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
