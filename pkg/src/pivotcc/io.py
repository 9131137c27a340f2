"""Text formats for label matrices, graphs, clusterings and run reports.

Label-matrix files start with a line ``n k`` followed by ``n`` lines of
``k`` space-separated non-negative integers. Edge lists hold one ``u v``
pair per line. Clusterings are one label per line. Run reports are JSON
objects with a fixed key order.
"""

import csv
import io as _io
import json
from dataclasses import dataclass, field

import numpy as np

from .core import Clustering, LabelMatrix
from .errors import InvalidArgumentError, ParseError
from .similarity import GraphAdjacency


def _factorize(values):
    index = {}
    return [index.setdefault(v, len(index)) for v in values]


def ingest_categorical(csv_text, drop_columns=(), has_header=False):
    """Turn a categorical table into one input clustering per kept column.

    Items sharing a value in a column share a cluster; values map to dense
    integers in first-appearance order. Empty strings and ``?`` are ordinary
    values.
    """
    rows = list(csv.reader(_io.StringIO(csv_text)))
    while rows and not rows[-1]:
        rows.pop()
    first = 1 if has_header else 0
    body = rows[first:]
    if not body:
        raise ParseError("no data rows")
    width = len(body[0])
    for i, row in enumerate(body):
        if len(row) != width:
            raise ParseError(f"expected {width} fields, found {len(row)}", line=i + first + 1)
    drop = set(drop_columns)
    keep = [j for j in range(width) if j not in drop]
    if not keep:
        raise InvalidArgumentError("every column was dropped")
    cols = [_factorize(row[j] for row in body) for j in keep]
    return LabelMatrix(np.array(cols, dtype=np.int64).T)


def _ints(tokens, line):
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {' '.join(tokens)!r}", line=line) from None
    if any(v < 0 for v in vals):
        raise ParseError("negative label", line=line)
    return vals


def read_label_matrix(text):
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty label-matrix file", line=1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("header must be 'n k'", line=1)
    n, k = _ints(head, 1)
    if n < 1 or k < 1:
        raise ParseError("n and k must be positive", line=1)
    body = [ln for ln in lines[1:]]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise ParseError(f"declared {n} rows, found {len(body)}", line=len(body) + 2)
    out = np.empty((n, k), dtype=np.int64)
    for i, ln in enumerate(body):
        tokens = ln.split()
        if len(tokens) != k:
            raise ParseError(f"row {i} has {len(tokens)} labels, expected {k}", line=i + 2)
        out[i] = _ints(tokens, i + 2)
    return LabelMatrix(out)


def write_label_matrix(m):
    buf = _io.StringIO()
    buf.write(f"{m.n} {m.k}\n")
    np.savetxt(buf, m.labels, fmt="%d", delimiter=" ")
    return buf.getvalue()


def read_edge_list(text, n=None):
    """Undirected graph from ``u v`` lines; ``n`` defaults to max id + 1.

    Blank lines and lines starting with ``#`` are skipped. Duplicate edges
    in either direction collapse; self-loops are rejected.
    """
    edges = []
    for i, ln in enumerate(text.splitlines(), start=1):
        s = ln.strip()
        if not s or s.startswith("#"):
            continue
        tokens = s.replace(",", " ").split()
        if len(tokens) != 2:
            raise ParseError("expected two node ids", line=i)
        u, v = _ints(tokens, i)
        if u == v:
            raise ParseError(f"self-loop on node {u}", line=i)
        if n is not None and (u >= n or v >= n):
            raise ParseError(f"node id out of range for n={n}", line=i)
        edges.append((u, v))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=0)
    return GraphAdjacency(n, edges)


def write_clustering(c):
    return "".join(f"{x}\n" for x in c.labels.tolist())


def read_clustering(text):
    labels = []
    for i, ln in enumerate(text.splitlines(), start=1):
        if ln.strip():
            labels.extend(_ints(ln.split(), i))
    if not labels:
        raise ParseError("empty clustering file", line=1)
    return Clustering(labels)


@dataclass
class RunReport:
    """Outcome of ``runs`` executions of one algorithm at sample size ``R``."""

    algorithm: str
    R: int
    seed: int
    runs: int
    disagreements: list = field(default_factory=list)
    wall_ms: list = field(default_factory=list)
    ratio_to_full: float = None

    def __post_init__(self):
        if len(self.disagreements) != self.runs or len(self.wall_ms) != self.runs:
            raise InvalidArgumentError("per-run sequences must have length runs")
        if any(d < 0 for d in self.disagreements):
            raise InvalidArgumentError("disagreements must be non-negative")


_REPORT_KEYS = ("algorithm", "R", "seed", "runs", "disagreements", "wall_ms", "ratio_to_full")


def write_report(r: RunReport):
    obj = {
        "algorithm": r.algorithm,
        "R": int(r.R),
        "seed": int(r.seed),
        "runs": int(r.runs),
        "disagreements": [int(d) for d in r.disagreements],
        "wall_ms": [round(float(t), 3) for t in r.wall_ms],
    }
    if r.ratio_to_full is not None:
        obj["ratio_to_full"] = float(r.ratio_to_full)
    return json.dumps(obj, indent=2) + "\n"


def read_report(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    extra = set(obj) - set(_REPORT_KEYS)
    if extra:
        raise ParseError(f"unknown report keys {sorted(extra)}")
    try:
        return RunReport(**obj)
    except TypeError as exc:
        raise ParseError(str(exc)) from None
