"""Run the Python smoke tests, or exit 77 (skip) when the extension is not installed."""

import sys

try:
    import levyid  # noqa: F401
    import pytest
except ImportError as e:
    print(f"skipping: {e}")
    sys.exit(77)

sys.exit(pytest.main(["-q", "-p", "no:cacheprovider", sys.argv[1]]))
