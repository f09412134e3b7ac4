"""
Key/value and free-text logging for long exact computations.

Diagnostics of one step (a degree of the commutant solver, a weight of the relation search)
are collected with ``logkv`` and written as one row by ``dumpkvs``; free text goes through
``log``, ``info``, ``warn`` and ``error``.

Formats: ``stderr`` (default), ``stdout``, ``log`` (log.txt), ``json`` (progress.jsonl) and
``csv`` (progress.csv). ``LIECOMM_LOGDIR`` and ``LIECOMM_LOG_FORMAT`` override the defaults.
"""

import os
import os.path as osp
import sys
import time
from collections import defaultdict
from contextlib import contextmanager

import jsonlines

INFO = 20
WARN = 30
ERROR = 40
DISABLED = 50

FILE_FORMATS = ("log", "json", "csv")
MAX_CELL = 40


class Writer:
    """A sink for rows (dicts of diagnostics) and, optionally, free-text lines."""

    takes_text = False

    def write_row(self, row):
        pass

    def write_text(self, words):
        pass

    def close(self):
        pass


class TableWriter(Writer):
    takes_text = True

    def __init__(self, target):
        self.owned = isinstance(target, str)
        self.stream = open(target, "wt") if self.owned else target

    @staticmethod
    def _cell(value):
        text = "%-8.3g" % value if isinstance(value, float) else str(value)
        return text if len(text) <= MAX_CELL else text[: MAX_CELL - 3] + "..."

    def write_row(self, row):
        cells = [(self._cell(k), self._cell(v)) for k, v in sorted(row.items())]
        if not cells:
            return
        kw = max(len(k) for k, _ in cells)
        vw = max(len(v) for _, v in cells)
        rule = "-" * (kw + vw + 7)
        body = [f"| {k.ljust(kw)} | {v.ljust(vw)} |" for k, v in cells]
        self.stream.write("\n".join([rule, *body, rule]) + "\n")
        self.stream.flush()

    def write_text(self, words):
        self.stream.write(" ".join(words) + "\n")
        self.stream.flush()

    def close(self):
        if self.owned:
            self.stream.close()


class JsonlWriter(Writer):
    def __init__(self, path):
        self.writer = jsonlines.open(path, mode="w", flush=True)

    def write_row(self, row):
        self.writer.write({k: v if isinstance(v, (bool, int, float, str)) else str(v) for k, v in row.items()})

    def close(self):
        self.writer.close()


class CsvWriter(Writer):
    def __init__(self, path):
        self.stream = open(path, "w+t")
        self.columns = []

    def write_row(self, row):
        missing = sorted(set(row) - set(self.columns))
        if missing:
            # widen the header and pad the rows written so far
            self.stream.seek(0)
            previous = self.stream.readlines()[1:]
            self.columns.extend(missing)
            self.stream.seek(0)
            self.stream.truncate()
            self.stream.write(",".join(self.columns) + "\n")
            for line in previous:
                self.stream.write(line.rstrip("\n") + "," * len(missing) + "\n")
        values = ("" if row.get(c) is None else str(row[c]) for c in self.columns)
        self.stream.write(",".join(values) + "\n")
        self.stream.flush()

    def close(self):
        self.stream.close()


_FILES = {
    "log": (TableWriter, "log{}.txt"),
    "json": (JsonlWriter, "progress{}.jsonl"),
    "csv": (CsvWriter, "progress{}.csv"),
}


def make_writer(fmt, directory, suffix=""):
    if fmt == "stderr":
        return TableWriter(sys.stderr)
    if fmt == "stdout":
        return TableWriter(sys.stdout)
    if fmt not in _FILES:
        raise ValueError(f"unknown log format {fmt!r}")
    cls, pattern = _FILES[fmt]
    os.makedirs(directory, exist_ok=True)
    return cls(osp.join(directory, pattern.format(suffix)))


class Logger:
    CURRENT = None
    DEFAULT = None

    def __init__(self, directory, writers):
        self.directory = directory
        self.writers = writers
        self.level = INFO
        self.row = defaultdict(float)
        self.counts = defaultdict(int)

    def logkv(self, key, value):
        self.row[key] = value

    def logkv_mean(self, key, value):
        n = self.counts[key]
        self.row[key] = (self.row[key] * n + value) / (n + 1)
        self.counts[key] = n + 1

    def dumpkvs(self):
        row = dict(self.row)
        for writer in self.writers:
            writer.write_row(row)
        self.row.clear()
        self.counts.clear()
        return row

    def log(self, *args, level=INFO):
        if level < self.level:
            return
        for writer in self.writers:
            if writer.takes_text:
                writer.write_text([str(a) for a in args])

    def close(self):
        for writer in self.writers:
            writer.close()


def get_current():
    if Logger.CURRENT is None:
        configure()
        Logger.DEFAULT = Logger.CURRENT
    return Logger.CURRENT


def logkv(key, value):
    get_current().logkv(key, value)


def logkv_mean(key, value):
    get_current().logkv_mean(key, value)


def dumpkvs():
    return get_current().dumpkvs()


def getkvs():
    return get_current().row


def log(*args, level=INFO):
    get_current().log(*args, level=level)


def info(*args):
    log(*args, level=INFO)


def warn(*args):
    log(*args, level=WARN)


def error(*args):
    log(*args, level=ERROR)


def set_level(level):
    get_current().level = level


@contextmanager
def profile_kv(name):
    """Add the wall time of the block to ``time_<name>`` in the current row."""
    start = time.time()
    try:
        yield
    finally:
        get_current().row["time_" + name] += time.time() - start


def configure(dir=None, format_strs=None, log_suffix=""):
    """
    Point the module-level logger at ``dir`` with the given formats. File formats without a
    directory fall back to ./liecomm-logs.
    """
    if dir is None:
        dir = os.getenv("LIECOMM_LOGDIR") or None
    if format_strs is None:
        format_strs = os.getenv("LIECOMM_LOG_FORMAT", "stderr").split(",")
    format_strs = [f for f in format_strs if f]
    if dir is None and any(f in FILE_FORMATS for f in format_strs):
        dir = osp.join(os.getcwd(), "liecomm-logs")
    if dir is not None:
        dir = osp.expanduser(dir)
    if Logger.CURRENT is not None and Logger.CURRENT is not Logger.DEFAULT:
        Logger.CURRENT.close()
    Logger.CURRENT = Logger(dir, [make_writer(f, dir, log_suffix) for f in format_strs])
    if dir is not None and any(f in FILE_FORMATS for f in format_strs):
        log(f"Logging to {dir}")


@contextmanager
def scoped_configure(dir=None, format_strs=None):
    previous = Logger.CURRENT
    Logger.CURRENT = None
    configure(dir=dir, format_strs=format_strs)
    try:
        yield
    finally:
        Logger.CURRENT.close()
        Logger.CURRENT = previous
