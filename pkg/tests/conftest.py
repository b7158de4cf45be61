import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    log = getattr(mod, "ACCEPTANCE_LOG", None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(log, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
