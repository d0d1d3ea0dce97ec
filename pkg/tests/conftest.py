import sys
from pathlib import Path

import pytest

from aksaratok import PhonologyConfig, build_vocabulary, census, load_bpe
from aksaratok.cli import demo_wordlist_path
from aksaratok.corpus import read_wordlist
from aksaratok.vocab import ASCII_BASE_SYMBOLS

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


def pytest_configure(config):
    config._acceptance = []


def pytest_runtest_logreport(report):
    item_marker = getattr(report, "_acceptance", None)
    if item_marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = report.outcome
        if outcome == "skipped":
            outcome = "SKIP"
        else:
            outcome = "PASS" if outcome == "passed" else "FAIL"
        _CONFIG._acceptance.append((item_marker[0], item_marker[1], outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result()._acceptance = marker.args


_CONFIG = None


def pytest_sessionstart(session):
    global _CONFIG
    _CONFIG = session.config


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = getattr(config, "_acceptance", [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(rows, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number:>2} {outcome:<4} {title}")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def cfg():
    return PhonologyConfig.default()


@pytest.fixture(scope="session")
def gpt2():
    return load_bpe(DATA / "gpt2" / "vocab.json", DATA / "gpt2" / "merges.txt")


@pytest.fixture(scope="session")
def demo_words():
    return read_wordlist(demo_wordlist_path())


@pytest.fixture(scope="session")
def demo_vocab(demo_words, cfg):
    return build_vocabulary(census(demo_words, cfg), demo_words, 2843, cfg, extra_symbols=ASCII_BASE_SYMBOLS)
