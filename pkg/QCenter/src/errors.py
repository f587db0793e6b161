# File: errors.py
# Description: Exception hierarchy shared by every QCenter module


class QCenterError(RuntimeError):
    """Base class for all QCenter failures"""


class FormDegreeError(QCenterError, ValueError):
    """Binary-form operation applied to incompatible degrees"""


class ContractionError(QCenterError, ValueError):
    """Tensor contraction with a malformed index structure"""


class RecordParseError(QCenterError, ValueError):
    """Coefficient record that cannot be read as 12 exact rationals"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.reason = message


class PreconditionError(QCenterError, ValueError):
    """Operation called outside of its documented domain"""


class ClassificationError(QCenterError):
    """Partition walk or theorem dispatch produced an impossible answer"""


class DegenerateSystemError(QCenterError):
    """P and Q share a non-constant factor, so singular points are not isolated"""

    def __init__(self, message, common_factor=None):
        super().__init__(message)
        self.common_factor = common_factor


class OracleError(QCenterError):
    """Singular-point oracle broke one of its own invariants"""
