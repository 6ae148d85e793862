"""Error types shared across the package.

Semantic violations (bad orders, mismatched curves, inconsistent covers)
raise plain ``ValueError`` with a message; ``SchemaError`` is reserved for
malformed input documents so the command line can distinguish parse
failures (exit 2) from invariant violations (exit 3).
"""


class SchemaError(Exception):
    """An input document does not match the expected JSON shape."""
