import sys

from hypothesis import HealthCheck, settings, strategies as st

from ppfn.partitions import Partition

settings.register_profile("ppfn", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ppfn")


@st.composite
def partitions(draw, max_size=6, max_len=None, max_part=None):
    n = draw(st.integers(0, max_size))
    parts = []
    left = n
    cap = max_part or n
    while left > 0 and (max_len is None or len(parts) < max_len):
        x = draw(st.integers(1, min(left, cap)))
        parts.append(x)
        left -= x
        cap = x
    return Partition(parts)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
