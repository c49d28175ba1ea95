"""
Shared exceptions for the qtrace forensics toolkit.

Every error carries an HTTP status code for the API surface and an exit code
for the command line.
"""
from typing import Optional


class ForensicsError(Exception):
    """Base exception for all qtrace errors."""
    def __init__(self, message: str = "An error occurred", status_code: int = 500, exit_code: int = 2):
        self.message = message
        self.status_code = status_code
        self.exit_code = exit_code
        super().__init__(self.message)


class InputError(ForensicsError):
    """Base exception for malformed or inconsistent input files."""
    def __init__(self, message: str = "Invalid input", status_code: int = 400):
        super().__init__(message, status_code=status_code, exit_code=2)


class QasmParseError(InputError):
    """Exception raised when OpenQASM text cannot be parsed."""
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class LayoutError(InputError):
    """Exception raised when a logical-to-physical layout is malformed."""
    pass


class GateDefinitionError(InputError):
    """Exception raised when a custom gate cannot be inlined."""
    pass


class GraphFormatError(InputError):
    """Exception raised when a coupling graph file is malformed."""
    pass


class RegistryError(InputError):
    """Exception raised when a backend registry is malformed or empty."""
    pass


class LabelError(InputError):
    """Exception raised when ground-truth labels reference unknown circuits."""
    pass


class UnitaryError(ForensicsError):
    """Exception raised when a matrix contract is violated."""
    def __init__(self, message: str):
        super().__init__(message, status_code=422, exit_code=2)


class SynthesisError(ForensicsError):
    """Exception raised when a synthetic circuit cannot be generated."""
    def __init__(self, message: str):
        super().__init__(message, status_code=400, exit_code=2)


class EmitError(ForensicsError):
    """Exception raised when a circuit cannot be written as OpenQASM."""
    def __init__(self, message: str):
        super().__init__(message, status_code=422, exit_code=2)


class ValidationError(ForensicsError):
    """Exception raised when data validation fails."""
    def __init__(self, message: str):
        super().__init__(message, status_code=422, exit_code=2)


class ForensicAnomaly(ForensicsError):
    """Exception raised when an audit finds something it was told to reject."""
    def __init__(self, message: str):
        super().__init__(message, status_code=409, exit_code=1)
