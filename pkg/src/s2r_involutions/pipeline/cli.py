"""Command line: ``s2r-involutions classify --format csv --out results``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from ..fpgroup import ParseError
from .catalog import CatalogValidationError, load_catalog
from .classify import run_classification
from .report import FORMATS, emit_reports


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="s2r-involutions")
    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", help="classify free involutions and their Z/2-index")
    c.add_argument("--catalog", help="catalog file (default: the bundled one)")
    c.add_argument("--format", choices=FORMATS, default="csv")
    c.add_argument("--out", required=True, help="output directory")
    c.add_argument("--cross-check", action="store_true",
                   help="add the cube rule cross-check")
    c.add_argument("--manifold", action="append",
                   help="restrict to this base manifold (repeatable)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        catalog = load_catalog(args.catalog)
        report = run_classification(catalog, args.manifold, with_cross_check=args.cross_check)
        paths = emit_reports(report, args.format, args.out, cross_check=args.cross_check)
    except (ParseError, CatalogValidationError) as e:
        print(f"catalog error: {e}", file=sys.stderr)
        return 2
    except KeyError as e:
        print(f"error: {e.args[0]}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    for p in paths:
        print(p)
    return 0


if __name__ == "__main__":
    sys.exit(main())
