#!/usr/bin/env python3

import sys

from hamsat.cli.interface import CLIInterface
from hamsat.logging_config import setup_logging


def main(argv=None):
    """Главная функция приложения"""
    setup_logging()
    cli = CLIInterface()
    sys.exit(cli.run(argv))


if __name__ == "__main__":
    main()
