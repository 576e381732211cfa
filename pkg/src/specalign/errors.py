"""Exception types shared across the package."""


class SpecAlignError(Exception):
    """Base class for all errors raised by this package."""


class ModelSyntaxError(SpecAlignError):
    """The model document is not well-formed (bad JSON or bad shape).

    ``location`` is a human-readable position, either "line L column C"
    for JSON errors or a path like "relationships[2]" for shape errors.
    """

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ModelReferenceError(SpecAlignError):
    """A relationship or attribute names a class that does not exist."""


class MultiplicityError(SpecAlignError):
    """A multiplicity string could not be parsed."""


class ModelValidationError(SpecAlignError):
    """A structural invariant is violated (cycles, duplicate names, ...)."""


class ElementLookupError(SpecAlignError):
    """An element id does not belong to the model being processed."""


class BackendError(SpecAlignError):
    """A completion backend failed after exhausting its retry policy."""


class CassetteMissError(BackendError):
    """Strict replay saw a prompt that was never recorded."""

    def __init__(self, fingerprint: str):
        self.fingerprint = fingerprint
        super().__init__(f"no recorded completion for fingerprint {fingerprint}")


class UniverseMismatchError(SpecAlignError):
    """A report and a ground truth disagree on the set of element ids."""
