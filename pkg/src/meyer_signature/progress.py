from __future__ import annotations

import threading

import humanize
import rich.progress
import rich.text


class PrefixedMofNCompleteColumn(rich.progress.MofNCompleteColumn):
    def render(self, task) -> rich.text.Text:
        """Show checks done/expected."""
        total = humanize.metric(task.total) if task.total is not None else "?"
        total_width = len(str(total))
        completed = humanize.metric(task.completed)
        return rich.text.Text(
            f"{completed:>{total_width}}{self.separator}{total}",
            style="progress.download",
        )


def default_progress_bar(console=None) -> rich.progress.Progress:
    return rich.progress.Progress(
        rich.progress.TextColumn("[progress.description]{task.description}"),
        rich.progress.BarColumn(),
        PrefixedMofNCompleteColumn(),
        rich.progress.TaskProgressColumn(),
        rich.progress.TimeElapsedColumn(),
        console=console,
        transient=True,
    )


class Suite:
    """One family of checks within a sweep."""

    def __init__(
        self,
        sweep: SweepProgress,
        name: str,
        checks_expected: int | None,
        progress_bar_task_id: rich.progress.TaskID | None,
        transient: bool,
    ):
        self.sweep = sweep
        self.name = name
        self.checks_expected = checks_expected
        self.progress_bar_task_id = progress_bar_task_id
        self.transient = transient

        self.checks_done = 0
        self.failures: list[str] = []

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        # An error inside a suite is one more failed check, not the end of the sweep
        crashed = exc_type is not None and issubclass(exc_type, Exception)
        if crashed:
            self.record(False, f"{exc_type.__name__}: {exc_value}")
        self.stop(cancelled=False)
        return crashed

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, passed: bool, detail: str = "") -> bool:
        """Count one check; failed checks keep their detail message."""
        self.checks_done += 1
        if not passed:
            self.failures.append(detail or f"check #{self.checks_done} failed")
        self.sweep._update_progress_bar(self)
        return passed

    def expect(self, checks_expected: int):
        """Revise the expected number of checks."""
        self.checks_expected = checks_expected
        self.sweep._update_progress_bar(self)

    def start(self):
        self.sweep._start_suite(self)

    def cancel(self):
        self.stop(cancelled=True)

    def stop(self, cancelled: bool = False):
        self.sweep._stop_suite(self, cancelled, self.transient)


class SweepProgress:
    """
    Track suites of checks, aggregating them into an overall bar.

    The number of suites may be known in advance while their sizes are only
    revealed as each one starts.
    """

    def __init__(
        self,
        n_suites: int | None = None,
        *,
        progress_bar: rich.progress.Progress | None = None,
        overall_description: str | None = None,
    ):
        self.n_suites_completed = 0
        self.n_suites_cancelled = 0
        self.active_suites: list[Suite] = []
        self.finished_suites: list[Suite] = []
        self.checks_completed = 0

        self.n_suites = n_suites
        self._progress_bar = progress_bar

        if self._progress_bar is not None and overall_description is not None:
            self._overall_progress_id = self._progress_bar.add_task(
                overall_description, total=None
            )
        else:
            self._overall_progress_id = None

        self._lock = threading.RLock()

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.stop()

    def start(self):
        if self._progress_bar is not None:
            self._progress_bar.start()

    def stop(self):
        with self._lock:
            for suite in list(self.active_suites):  # pragma: no cover
                suite.cancel()

            if self._progress_bar is not None:
                self._progress_bar.stop()

    def add_suite(
        self,
        name: str,
        checks_expected: int | None = None,
        *,
        transient: bool = True,
    ) -> Suite:
        with self._lock:
            if self._progress_bar is not None:
                progress_bar_task_id = self._progress_bar.add_task(
                    name, total=checks_expected
                )
            else:
                progress_bar_task_id = None

            suite = Suite(self, name, checks_expected, progress_bar_task_id, transient)
            self.active_suites.append(suite)

            self._update_progress_bar()

            return suite

    @property
    def failures(self) -> dict[str, list[str]]:
        with self._lock:
            return {s.name: list(s.failures) for s in self.finished_suites if s.failures}

    def _start_suite(self, suite: Suite):
        with self._lock:
            if self._progress_bar is not None and suite.progress_bar_task_id is not None:
                self._progress_bar.start_task(suite.progress_bar_task_id)

    def _stop_suite(self, suite: Suite, cancelled: bool, transient: bool):
        with self._lock:
            try:
                self.active_suites.remove(suite)
            except ValueError:
                # Suite was already stopped
                return

            if cancelled:
                self.n_suites_cancelled += 1
            else:
                self.n_suites_completed += 1
                self.checks_completed += suite.checks_done
                self.finished_suites.append(suite)

            if self._progress_bar is not None and suite.progress_bar_task_id is not None:
                if transient:
                    self._progress_bar.remove_task(suite.progress_bar_task_id)
                else:
                    self._progress_bar.stop_task(suite.progress_bar_task_id)

            self._update_progress_bar()

    def _update_progress_bar(self, suite: Suite | None = None):
        with self._lock:
            if self._progress_bar is None:
                return

            if suite is not None and suite.progress_bar_task_id is not None:
                self._progress_bar.update(
                    suite.progress_bar_task_id,
                    completed=suite.checks_done,
                    total=suite.checks_expected,
                )

            if self._overall_progress_id is not None:
                self._progress_bar.update(
                    self._overall_progress_id,
                    completed=self.checks_completed
                    + sum(s.checks_done for s in self.active_suites),
                    total=self.checks_expected,
                )

    @property
    def checks_expected(self) -> int | None:
        """Expected total number of checks, extrapolated from suites of known size."""
        with self._lock:
            n_suites = self.n_suites

            if n_suites is None:
                return None

            # Cancelled suites no longer contribute
            n_suites -= self.n_suites_cancelled

            n_known = self.n_suites_completed + sum(
                1 for s in self.active_suites if s.checks_expected is not None
            )

            if n_known == 0:
                return None

            n_suites = max(n_suites, n_known)

            total = self.checks_completed + sum(
                s.checks_expected for s in self.active_suites if s.checks_expected is not None
            )

            return total * n_suites // n_known
