"""Result records and their JSON / CSV / text-table serializations.

Serialization is deterministic: JSON keys are sorted, counts are decimal
integers and field elements are lowercase ``0x`` hex strings.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union


class PropId(str, Enum):
    P1a = "P1a"
    P1b = "P1b"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P7 = "P7"
    THM2_CONGRUENCE = "THM2_CONGRUENCE"
    SPECTRUM_OMEGA1 = "SPECTRUM_OMEGA1"
    EQ418_SPECTRUM = "EQ418_SPECTRUM"
    CATALOG = "CATALOG"
    APCN = "APCN"
    ALPHA_PARAM = "ALPHA_PARAM"
    ALPHA_QUADRATIC = "ALPHA_QUADRATIC"


def hexstr(v: int) -> str:
    return f"{int(v):#x}"


def _degree_of(modulus_hex: str) -> int:
    return int(modulus_hex, 16).bit_length() - 1


@dataclass(frozen=True)
class SpectrumRecord:
    """c-differential spectrum of ``x^d`` at ``c`` along the ``a = 1`` row.

    ``omega[i]`` is the number of ``b`` hit by exactly ``i`` solutions and
    ``delta`` the largest such ``i``.
    """

    c: int
    d: int
    delta: int
    omega: tuple[int, ...]
    modulus: str
    elapsed_ms: int = 0

    @property
    def degree(self) -> int:
        return _degree_of(self.modulus)

    @property
    def n(self) -> int | None:
        m = self.degree
        return m // 4 if m % 4 == 0 else None

    def check_invariants(self) -> bool:
        size = 1 << self.degree
        return (sum(self.omega) == size
                and sum(i * w for i, w in enumerate(self.omega)) == size
                and len(self.omega) == self.delta + 1
                and self.omega[self.delta] > 0)

    def to_dict(self) -> dict:
        return {
            "c": hexstr(self.c),
            "d": self.d,
            "delta": self.delta,
            "omega": list(self.omega),
            "modulus": self.modulus,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> SpectrumRecord:
        return cls(c=int(d["c"], 16), d=int(d["d"]), delta=int(d["delta"]),
                   omega=tuple(int(w) for w in d["omega"]),
                   modulus=d["modulus"], elapsed_ms=int(d["elapsed_ms"]))


@dataclass(frozen=True)
class PropositionReport:
    """Outcome of one exhaustive (or explicitly sampled) check."""

    prop_id: str
    n: int
    modulus: str
    cases_total: int
    cases_checked: int
    counterexamples: tuple[dict, ...] = ()
    elapsed_ms: int = 0
    c_hex: str | None = None
    sampled: bool = False
    mode: str | None = None

    def __post_init__(self):
        PropId(self.prop_id)
        ordered = sorted(self.counterexamples,
                         key=lambda x: json.dumps(x, sort_keys=True))
        object.__setattr__(self, "counterexamples", tuple(ordered))

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @property
    def exhaustive(self) -> bool:
        return not self.sampled and self.cases_checked == self.cases_total

    def to_dict(self) -> dict:
        out = {
            "prop_id": self.prop_id,
            "n": self.n,
            "modulus": self.modulus,
            "cases_total": self.cases_total,
            "cases_checked": self.cases_checked,
            "sampled": self.sampled,
            "counterexamples": [dict(x) for x in self.counterexamples],
            "elapsed_ms": self.elapsed_ms,
        }
        if self.c_hex is not None:
            out["c_hex"] = self.c_hex
        if self.mode is not None:
            out["mode"] = self.mode
        return out

    @classmethod
    def from_dict(cls, d: dict) -> PropositionReport:
        return cls(prop_id=d["prop_id"], n=int(d["n"]), modulus=d["modulus"],
                   cases_total=int(d["cases_total"]),
                   cases_checked=int(d["cases_checked"]),
                   counterexamples=tuple(d["counterexamples"]),
                   elapsed_ms=int(d["elapsed_ms"]), c_hex=d.get("c_hex"),
                   sampled=bool(d["sampled"]), mode=d.get("mode"))


def merge_reports(reports: Sequence[PropositionReport],
                  mode: str | None = None) -> PropositionReport:
    """Fold per-c reports of one check into a single report."""
    if not reports:
        raise ValueError("nothing to merge")
    first = reports[0]
    cex = []
    for r in reports:
        for x in r.counterexamples:
            cex.append({**({"c": r.c_hex} if r.c_hex else {}), **x})
    return PropositionReport(
        prop_id=first.prop_id, n=first.n, modulus=first.modulus,
        cases_total=sum(r.cases_total for r in reports),
        cases_checked=sum(r.cases_checked for r in reports),
        counterexamples=tuple(cex),
        elapsed_ms=sum(r.elapsed_ms for r in reports),
        sampled=any(r.sampled for r in reports),
        mode=mode if mode is not None else first.mode,
    )


Record = Union[SpectrumRecord, PropositionReport]

SPECTRUM_CSV_HEAD = ["modulus_hex", "n", "d", "c_hex", "delta"]
REPORT_CSV_HEAD = ["prop_id", "n", "modulus", "c_hex", "mode", "cases_total",
                   "cases_checked", "sampled", "counterexamples", "elapsed_ms"]


def _as_list(obj) -> list:
    if isinstance(obj, (SpectrumRecord, PropositionReport)):
        return [obj]
    return list(obj)


def to_jsonable(obj):
    if isinstance(obj, (SpectrumRecord, PropositionReport)):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return [to_jsonable(x) for x in obj]


def spectrum_row(rec: SpectrumRecord, width: int | None = None) -> list[str]:
    width = len(rec.omega) if width is None else width
    omega = list(rec.omega) + [0] * (width - len(rec.omega))
    n = rec.n
    return ([rec.modulus, "" if n is None else str(n), str(rec.d),
             hexstr(rec.c), str(rec.delta)]
            + [str(w) for w in omega] + [str(rec.elapsed_ms)])


def _report_row(r: PropositionReport) -> list[str]:
    return [r.prop_id, str(r.n), r.modulus, r.c_hex or "", r.mode or "",
            str(r.cases_total), str(r.cases_checked),
            "true" if r.sampled else "false", str(len(r.counterexamples)),
            str(r.elapsed_ms)]


def _rows(items: list) -> tuple[list[str], list[list[str]]]:
    if all(isinstance(x, SpectrumRecord) for x in items):
        width = max((len(x.omega) for x in items), default=3)
        width = max(width, 3)
        head = (SPECTRUM_CSV_HEAD + [f"omega{i}" for i in range(width)]
                + ["elapsed_ms"])
        return head, [spectrum_row(x, width) for x in items]
    if all(isinstance(x, PropositionReport) for x in items):
        return REPORT_CSV_HEAD, [_report_row(x) for x in items]
    raise TypeError("cannot tabulate a mixture of record types")


def emit_report(obj: Record | Iterable[Record] | dict, fmt: str = "json") -> bytes:
    """Serialize a record, a list of records, or a dict of lists."""
    if fmt == "json":
        text = json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"
        return text.encode()
    if isinstance(obj, dict):
        obj = [x for v in obj.values() for x in _as_list(v)]
    head, rows = _rows(_as_list(obj))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(rows)
        return buf.getvalue().encode()
    if fmt in ("table", "text-table"):
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(head)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(head, widths)).rstrip()]
        lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()
                  for r in rows]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data: bytes | str):
    """Inverse of ``emit_report(..., "json")``."""
    raw = json.loads(data)

    def one(d):
        return PropositionReport.from_dict(d) if "prop_id" in d \
            else SpectrumRecord.from_dict(d)

    if isinstance(raw, list):
        return [one(d) for d in raw]
    if "prop_id" in raw or "omega" in raw:
        return one(raw)
    return {k: [one(d) for d in v] if isinstance(v, list) else one(v)
            for k, v in raw.items()}
