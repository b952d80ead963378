from typing import Optional


class SplineError(RuntimeError):
    """Base error; `category` is the machine-readable tag printed by the CLI."""

    category = "error"

    def __init__(self, message: str, *, category: Optional[str] = None):
        super().__init__(message)
        if category:
            self.category = category


class MeshSyntaxError(SplineError):
    category = "syntax"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MeshValidationError(SplineError):
    category = "mesh"


class GeometryError(SplineError):
    category = "geometry"


class InvalidArgumentError(SplineError):
    category = "invalid_argument"


class ConfigError(SplineError):
    category = "config"


class UnknownExampleError(SplineError):
    category = "unknown_example"
