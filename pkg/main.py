import sys

from core import logger
from handlers import build_parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return e.code if isinstance(e.code, int) else 2

    logger.debug("Running command %s", args.command)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
