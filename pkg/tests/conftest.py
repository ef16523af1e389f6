from hypothesis import settings

settings.register_profile("segcalc", deadline=None, max_examples=80)
settings.load_profile("segcalc")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
