from io import StringIO

import humanize
import pytest
from rich.console import Console
from rich.progress import BarColumn, TaskProgressColumn, TextColumn
from rich.progress import Progress as RichProgress

from meyer_signature.progress import PrefixedMofNCompleteColumn, SweepProgress


def test_suite_not_completed():
    with SweepProgress(1) as sweep:
        # While in a suite, the total reflects the expected size of the suite
        with sweep.add_suite("foo", 10):
            assert sweep.checks_expected == 10
            assert isinstance(sweep.checks_expected, int)

        # A finished suite that ran no checks expects none
        assert sweep.checks_expected == 0


def test_suite_completed():
    with SweepProgress(1) as sweep:
        with sweep.add_suite("foo", 10) as suite:
            for _ in range(5):
                suite.record(True)

        assert sweep.checks_expected == 5
        assert sweep.checks_completed == 5
        assert sweep.failures == {}


def test_extrapolation():
    with SweepProgress(4) as sweep:
        with sweep.add_suite("a", 10) as suite:
            for _ in range(10):
                suite.record(True)
        with sweep.add_suite("b", 30):
            # two suites of known size, four in total
            assert sweep.checks_expected == (10 + 30) * 4 // 2


def test_suite_cancel():
    with SweepProgress(1) as sweep:
        with sweep.add_suite("foo", 10) as suite:
            suite.record(True)
            suite.cancel()

        # A cancelled suite contributes neither expected nor completed checks
        assert sweep.n_suites_completed == 0
        assert sweep.n_suites_cancelled == 1
        assert sweep.checks_expected is None
        assert sweep.checks_completed == 0


def test_suite_expect():
    with SweepProgress(1) as sweep:
        with sweep.add_suite("foo", 10) as suite:
            suite.expect(20)
            assert sweep.checks_expected == 20


def test_no_suites():
    with SweepProgress() as sweep:
        assert sweep.checks_expected is None
        assert sweep.checks_completed == 0


def test_failures_are_collected():
    with SweepProgress(1) as sweep:
        with sweep.add_suite("foo") as suite:
            assert suite.record(True)
            assert not suite.record(False, "broken")
            assert not suite.record(False)

    assert not suite.passed
    assert sweep.failures == {"foo": ["broken", "check #3 failed"]}


def test_exception_is_a_failed_check():
    with SweepProgress(2) as sweep:
        with sweep.add_suite("foo") as suite:
            suite.record(True)
            raise ZeroDivisionError("boom")

        assert suite.checks_done == 2
        assert sweep.failures == {"foo": ["ZeroDivisionError: boom"]}


def test_keyboard_interrupt_propagates():
    with pytest.raises(KeyboardInterrupt):
        with SweepProgress(1) as sweep:
            with sweep.add_suite("foo"):
                raise KeyboardInterrupt


def test_prefixed_column():
    progress = RichProgress(console=Console(file=StringIO()), auto_refresh=False)
    task_id = progress.add_task("checks", total=1500, completed=1200)
    task = progress._tasks[task_id]

    text = PrefixedMofNCompleteColumn().render(task).plain
    assert text.endswith(f"/{humanize.metric(1500)}")
    assert humanize.metric(1200) in text


@pytest.mark.parametrize("transient_suites", [True, False])
def test_overall_progress_bar(transient_suites: bool):
    n_suites = 5
    string_io = StringIO()
    console = Console(file=string_io)

    with SweepProgress(
        n_suites,
        overall_description="Checks (total)",
        progress_bar=RichProgress(
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            PrefixedMofNCompleteColumn(),
            TaskProgressColumn(),
            console=console,
            auto_refresh=False,
        ),
    ) as sweep:
        assert sweep._progress_bar is not None

        for i in range(n_suites):
            with sweep.add_suite(f"suite{i}", 10, transient=transient_suites) as suite:
                for _ in range(10):
                    suite.record(True)
                assert suite.progress_bar_task_id in sweep._progress_bar.task_ids

    output = string_io.getvalue()
    assert "Checks (total)" in output
    for i in range(n_suites):
        if transient_suites:
            assert f"suite{i}" not in output
        else:
            assert f"suite{i}" in output
