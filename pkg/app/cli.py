"""Command-line front door: ``python -m app.cli <suite> [action] [options]``.

The action, when given, must follow the suite directly, e.g.
``python -m app.cli nichols series --tag M1`` or
``python -m app.cli lift verify --family 14 --params p.json``.

Exit codes: 0 when no record fails, 1 on a failed check (including a
computation recorded as ``aborted``), 2 on usage errors (unknown suite,
action, tag or family, a missing option, a malformed parameter or
witness file).
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from app.core.config import get_settings
from app.core.errors import UsageError
from app.services.suites import ACTION_NAMES, FAIL, SUITE_NAMES, SuiteOptions, build_report, run_suite

logger = logging.getLogger(__name__)
settings = get_settings()


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="python -m app.cli",
        description="Run exact verification suites for H, D(H^cop), Nichols algebras and liftings.",
    )
    parser.add_argument("suite", choices=SUITE_NAMES, help="Suite to run")
    parser.add_argument("action", nargs="?", choices=ACTION_NAMES, default=None,
                        help="Single operation of the suite (yd: verify, braiding; nichols: series, relations, "
                             "factorization; lift: build, verify, degeneration, iso)")
    parser.add_argument("--out", type=Path, default=None, help="Write the JSON report here (default: stdout)")
    parser.add_argument("--max-degree", type=int, default=None, help="Nichols degree bound")
    parser.add_argument("--cap", type=int, default=None, help=f"Symmetrizer size cap (default: {settings.symmetrizer_cap})")
    parser.add_argument("--params", type=Path, default=None, help="JSON file with lifting multiplicities, parameters and witness")
    parser.add_argument("--witness", type=Path, default=None, help="JSON file with an isomorphism witness (tau, images, target)")
    parser.add_argument("--tag", default=None, help="Module tag, e.g. M1, V3, W(1,1,0,1) or Omega25")
    parser.add_argument("--left", default=None, help="First module of a factorization pair")
    parser.add_argument("--right", default=None, help="Second module of a factorization pair")
    parser.add_argument("--all", dest="all_modules", action="store_true", help="Every catalog module (yd verify)")
    parser.add_argument("--family", default=None, help="Lifting family, e.g. 14 or Omega25")
    parser.add_argument("--log-level", default=settings.log_level, help=f"Logging level (default: {settings.log_level})")
    return parser.parse_args(argv)


def load_params(path: Optional[Path]) -> dict:
    if path is None:
        return {}
    data = json.loads(path.read_text())
    if not isinstance(data, dict):
        raise ValueError(f"{path} must hold a JSON object")
    return data


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0

    logging.basicConfig(
        level=args.log_level.upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    try:
        params = load_params(args.params)
        witness = load_params(args.witness) if args.witness is not None else None
    except (ValueError, OSError) as e:
        logger.error(f"❌ cannot read input file: {e}")
        return 2

    options = SuiteOptions(
        max_degree=args.max_degree,
        cap=args.cap,
        params=params,
        tag=args.tag,
        family=args.family,
        action=args.action,
        left=args.left,
        right=args.right,
        witness=witness,
        all_modules=args.all_modules,
    )
    try:
        records = run_suite(args.suite, options)
    except UsageError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return 2

    report = build_report(args.suite if args.action is None else f"{args.suite} {args.action}", records)
    text = json.dumps(report, indent=settings.report_indent)
    if args.out is None:
        print(text)
    else:
        args.out.write_text(text + "\n")
        logger.info(f"✅ report written to {args.out}")
    return 1 if report["summary"][FAIL] else 0


if __name__ == "__main__":
    sys.exit(main())
