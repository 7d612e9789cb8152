import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("SATKIT_HYPOTHESIS", "default"))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, (title, ok, detail) in sorted(RESULTS.items()):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num}. {title} ({detail})")
