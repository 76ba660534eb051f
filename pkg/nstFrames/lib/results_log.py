import csv
import json
import logging
import math
from pathlib import Path
import numpy as np

from ..utils.constants import float_digits

log = logging.getLogger(__name__)

# Notice: the column names come from the first row written unless they are
# given up front.  The csv writer needs them when the file is opened, so a
# key that first appears in a later row is an error rather than a silently
# dropped column.

def format_value(val, digits=float_digits):
    if isinstance(val, (bool, np.bool_)):
        return int(val)
    if isinstance(val, (float, np.floating)):
        return "%.*g" % (digits, float(val))
    if isinstance(val, np.integer):
        return int(val)
    return val

class ResultsLog():
    def __init__(self, path, fieldnames=None, flush_every=50):
        self.path = Path(path)
        self.fieldnames = list(fieldnames) if fieldnames else None
        self.flush_every = flush_every
        self.csvfile = None
        self.writer = None
        self.counter = 0

    def setup(self, row):
        if self.fieldnames is None:
            self.fieldnames = list(row.keys())
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.csvfile = open(self.path, "w", newline="")
        self.writer = csv.DictWriter(self.csvfile, fieldnames=self.fieldnames, lineterminator="\n")
        self.writer.writeheader()
        self.counter = 0
        log.debug("results log %s columns %s", self.path, self.fieldnames)

    def update(self, row):
        if self.writer is None:
            self.setup(row)
        extra = set(row) - set(self.fieldnames)
        if extra:
            raise ValueError("%s: unknown columns %s" % (self.path, sorted(extra)))
        self.writer.writerow({name: format_value(val) for name, val in row.items()})

        self.counter += 1
        if self.counter % self.flush_every == 0:
            self.csvfile.flush()

    def write_rows(self, rows):
        for row in rows:
            self.update(row)
        return self

    def close(self):
        if self.writer is None and self.fieldnames:
            # header only, so an empty result set still yields a readable file
            self.setup({})
        if self.csvfile is not None:
            self.csvfile.close()
            self.csvfile = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False

def write_csv(path, rows, fieldnames=None):
    with ResultsLog(path, fieldnames) as results:
        results.write_rows(rows)
    return Path(path)

def read_csv(path):
    with open(path, "r", newline="") as f:
        return list(csv.DictReader(f))

def to_plain(val):
    """numpy scalars, arrays and tuples to plain json types; non-finite floats to strings."""
    if isinstance(val, dict):
        return {str(k): to_plain(v) for k, v in val.items()}
    if isinstance(val, (list, tuple)):
        return [to_plain(v) for v in val]
    if isinstance(val, np.ndarray):
        return to_plain(val.tolist())
    if isinstance(val, (bool, np.bool_)):
        return bool(val)
    if isinstance(val, np.integer):
        return int(val)
    if isinstance(val, (float, np.floating)):
        val = float(val)
        if not math.isfinite(val):
            return repr(val)
        return float("%.*g" % (float_digits, val))
    return val

def write_json(path, data):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(to_plain(data), f, indent=2, sort_keys=True)
        f.write("\n")
    return path
