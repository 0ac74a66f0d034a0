import logging
import multiprocessing
import sys

from src.cli import run


def exception_hook(exctype, value, tb):
    logging.error("Uncaught exception", exc_info=(exctype, value, tb))
    sys.__excepthook__(exctype, value, tb)


sys.excepthook = exception_hook


def main():
    return run(sys.argv[1:])


if __name__ == "__main__":
    multiprocessing.freeze_support()  # sweep/certify workers in the frozen binary
    sys.exit(main())
