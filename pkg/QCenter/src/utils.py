# File: utils.py
# Description: File handling utilities (record files and the error file)

import json
import os
from dataclasses import dataclass
from datetime import datetime

from errors import RecordParseError
from system import COEFFICIENT_NAMES, QuadSystem, parse_coefficients, parse_rational


@dataclass
class SystemRecord:
    id: str
    system: QuadSystem

    @classmethod
    def from_dict(cls, data, line=None):
        if isinstance(data, list):
            data = {"coefficients": data}
        if not isinstance(data, dict) or "coefficients" not in data:
            raise RecordParseError("a record needs a 'coefficients' list", line)
        values = data["coefficients"]
        if not isinstance(values, list):
            raise RecordParseError(f"'coefficients' must be a list, got {type(values).__name__}", line)
        if len(values) != len(COEFFICIENT_NAMES):
            raise RecordParseError(f"expected 12 coefficients, found {len(values)}", line)
        coefficients = [parse_rational(str(v), line, k + 1) for k, v in enumerate(values)]
        return cls(str(data.get("id", f"record-{line}")), QuadSystem.from_coefficients(coefficients))


class FileHandler:
    @staticmethod
    def parse_records(text):
        """Records from a JSON array or from comma-separated lines; returns (records, errors)"""
        records, errors = [], []
        if text.lstrip().startswith("["):
            try:
                items = json.loads(text)
            except json.JSONDecodeError as e:
                return [], [RecordParseError(f"invalid JSON: {e.msg}", e.lineno, e.colno)]
            for k, item in enumerate(items, start=1):
                try:
                    records.append(SystemRecord.from_dict(item, k))
                except RecordParseError as e:
                    errors.append(e)
            return records, errors

        for number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                records.append(SystemRecord(f"line-{number}", parse_coefficients(stripped, number)))
            except RecordParseError as e:
                errors.append(e)
        return records, errors

    @staticmethod
    def read_records(path):
        with open(path, "r", encoding="utf-8") as handle:
            return FileHandler.parse_records(handle.read())

    @staticmethod
    def write_error_file(erro, directory="."):
        """Write error messages to qcenter_error_<timestamp>.err"""
        stamp = datetime.now().strftime("%d-%m-%Y_%H-%M-%S")
        erro_file = os.path.join(directory, "qcenter_error_" + stamp + ".err")
        with open(erro_file, "w", encoding="utf-8") as erro_out:
            erro_out.write("QCenter " + stamp + "\n")
            erro_out.write("The following lines contain the errors from the last run.\nPlease, check them carefully.\n")
            for message in erro:
                erro_out.write(message.rstrip("\n") + "\n")
        return erro_file
