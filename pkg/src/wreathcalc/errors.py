"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input errors exit 2, resource errors
exit 3, structural and verification failures exit 1.
"""


class WreathError(Exception):
    """Base class for all library errors."""


class InputError(WreathError, ValueError):
    """Malformed or inconsistent input (bad literal, colour mismatch, ...)."""


class ResourceError(WreathError):
    """A configured size cap or bound was hit."""


class StructuralError(WreathError):
    """A computation produced data violating an expected structure."""


class VerificationError(WreathError):
    """A checked identity failed on a concrete instance."""
