def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when != "call":
                continue
            lines.extend(v for k, v in rep.user_properties if k == "acceptance")
    if not lines:
        return
    terminalreporter.section("acceptance")
    for line in sorted(lines, key=_order):
        terminalreporter.write_line(line)


def _order(line):
    num = int(line.split()[1])
    return num, line
