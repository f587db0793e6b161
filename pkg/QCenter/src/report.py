# File: report.py
# Description: ReportDocument (JSON/text rendering, round trip) and pandas summary tables

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd

from config import QCenterConfig
from forms import BinaryForm, rational_to_string

SET_ORDER = tuple(f"M{j}" for j in range(1, 20))


def _value(value):
    if isinstance(value, BinaryForm):
        return value.to_strings()
    if isinstance(value, Fraction):
        return rational_to_string(value)
    return value


def invariant_table_to_dict(table, checks=None):
    data = {
        "A": [rational_to_string(a) for a in table.A],
        "C": {k: rational_to_string(v) for k, v in table.C.items()},
        "I": {k: rational_to_string(v) for k, v in table.I.items()},
        "J1": rational_to_string(table.J1),
        "J2": rational_to_string(table.J2),
        "K1": table.K1.to_strings(),
        "comitants": {k: _value(v) for k, v in table.comitants.items()},
    }
    if checks is not None:
        data["identities"] = dict(checks)
    return data


def make_entry(record_id, system, family=None, classification=None, table=None, verdict=None, error=None):
    """One JSON-ready report entry; agreement is None when there is nothing to compare"""
    entry = {
        "id": record_id,
        "family": family,
        "system": system.to_strings() if system is not None else None,
        "classification": classification.to_dict() if classification is not None else None,
        "invariants": table,
        "oracle": verdict.to_dict() if verdict is not None else None,
        "agreement": None,
        "error": error,
    }
    if classification is not None and verdict is not None:
        if verdict.center_count != "indeterminate" and classification.set_index != "M19":
            entry["agreement"] = verdict.center_count == classification.center_count
    return entry


@dataclass
class ReportDocument:
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    schema_version: int = QCenterConfig.SCHEMA_VERSION

    def to_json(self):
        return json.dumps({"schema_version": self.schema_version, "records": self.records,
                           "summary": self.summary}, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        version = data.get("schema_version")
        if version != QCenterConfig.SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema version {version}")
        return cls(records=data.get("records", []), summary=data.get("summary", {}), schema_version=version)

    def to_text(self):
        lines = []
        for entry in self.records:
            lines.extend(_entry_text(entry))
            lines.append("")
        if self.summary:
            lines.append(summary_text(self.summary, self.records))
        return "\n".join(lines).rstrip() + "\n"

    def frame(self):
        return entries_frame(self.records)

    @property
    def disagreements(self):
        return self.summary.get("disagreements", [])


def _entry_text(entry):
    lines = [f"[{entry['id']}]"]
    if entry.get("error"):
        lines.append(f"  error: {entry['error']}")
        return lines
    c = entry.get("classification")
    if c:
        pattern = c["pattern"] or "-"
        lines.append(f"  set {c['set_index']}  m_f = {c['m_f']}  multiplicities {pattern}")
        lines.append(f"  centers {c['center_count']}  rule {c['fired_rule']}")
        for note in c.get("diagnostics", []):
            lines.append(f"  note: {note}")
    oracle = entry.get("oracle")
    if oracle:
        lines.append(f"  oracle ({oracle['mode']}): {oracle['center_count']} centers, "
                     f"{len(oracle['points'])} finite singular points")
        for p in oracle["points"]:
            lines.append(f"    ({p['x']}, {p['y']})  x{p['multiplicity']}  {p['kind']}"
                         + ("  center" if p["center"] else ""))
        if entry.get("agreement") is False:
            lines.append("  DISAGREEMENT between classifier and oracle")
    table = entry.get("invariants")
    if table:
        lines.append("  A = " + ", ".join(table["A"]))
        lines.extend(f"  {k} = {v}" for k, v in table["C"].items())
        lines.extend(f"  {k} = {v}" for k, v in table["I"].items())
        lines.append(f"  J1 = {table['J1']}  J2 = {table['J2']}  K1 = {table['K1']}")
        for name, value in table.get("identities", {}).items():
            lines.append(f"  {'ok ' if value else 'BAD'} {name}")
    return lines


def entries_frame(entries):
    rows = []
    for entry in entries:
        c = entry.get("classification") or {}
        oracle = entry.get("oracle") or {}
        rows.append({
            "id": entry["id"],
            "family": entry.get("family") or "-",
            "set": c.get("set_index", "error"),
            "centers": str(c.get("center_count", "-")),
            "rule": c.get("fired_rule", "-"),
            "oracle": str(oracle.get("center_count", "-")),
            "agreement": entry.get("agreement"),
        })
    return pd.DataFrame(rows, columns=["id", "family", "set", "centers", "rule", "oracle", "agreement"])


def summary_frame(entries):
    """Systems per set and center count, one row per set that occurs"""
    frame = entries_frame(entries)
    if frame.empty:
        return pd.DataFrame()
    table = pd.crosstab(frame["set"], frame["centers"])
    order = [s for s in SET_ORDER if s in table.index] + [s for s in table.index if s not in SET_ORDER]
    table = table.reindex(order)
    table["total"] = table.sum(axis=1)
    return table


def family_frame(entries):
    """Agreement counts per family"""
    frame = entries_frame(entries)
    if frame.empty:
        return pd.DataFrame()
    return frame.groupby("family").agg(
        systems=("id", "count"),
        agreed=("agreement", lambda s: int((s == True).sum())),      # noqa: E712
        disagreed=("agreement", lambda s: int((s == False).sum())),  # noqa: E712
        not_compared=("agreement", lambda s: int(s.isna().sum())),
    )


def build_summary(entries, regressions=None, identity_failures=None):
    sets = Counter(e["classification"]["set_index"] for e in entries if e.get("classification"))
    centers = Counter(str(e["classification"]["center_count"]) for e in entries if e.get("classification"))
    summary = {
        "systems": len(entries),
        "sets": {s: sets[s] for s in SET_ORDER if sets[s]},
        "center_counts": dict(sorted(centers.items())),
        "disagreements": [e["id"] for e in entries if e.get("agreement") is False],
        "indeterminate": [e["id"] for e in entries
                          if e.get("oracle") and e["oracle"]["center_count"] == "indeterminate"],
        "errors": [e["id"] for e in entries if e.get("error")],
    }
    if regressions is not None:
        summary["regressions"] = [r.to_dict() for r in regressions]
    if identity_failures is not None:
        summary["identity_failures"] = list(identity_failures)
    return summary


def summary_text(summary, entries=()):
    lines = [f"Systems: {summary.get('systems', 0)}"]
    table = summary_frame(list(entries))
    if not table.empty:
        lines.append(table.to_string())
    families = family_frame(list(entries))
    if not families.empty and (families.index != "-").any():
        lines.append(families.to_string())
    for key in ("disagreements", "indeterminate", "errors", "identity_failures"):
        if summary.get(key):
            lines.append(f"{key}: {', '.join(map(str, summary[key]))}")
    regressions = summary.get("regressions")
    if regressions:
        failed = [r for r in regressions if not r["passed"]]
        lines.append(f"Closed forms: {len(regressions) - len(failed)}/{len(regressions)} hold")
        for r in failed:
            lines.append(f"  {r['system']} {r['identity']}: {r['detail']}")
    return "\n".join(lines)


def write_summary_csv(entries, path):
    summary_frame(entries).to_csv(path, sep=";")
    return path
