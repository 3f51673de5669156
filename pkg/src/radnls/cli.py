"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 instability.
"""

from __future__ import annotations

import sys

from .errors import ConfigurationError
from .harness import parse_config, run_experiment


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_config(argv)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    result = run_experiment(config)
    if result.status != 0:
        print(f"instability: {result.error}", file=sys.stderr)
        return 3
    print(f"wrote outputs to {result.out_dir}")
    return 0


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
