"""Certify and compute positive solutions of perturbed Hammerstein equations."""

import json
from pathlib import Path

from ._core import HcertError, __version__, config_hash, normalize_config
from ._core import run as _run

EXIT_CERTIFICATE = 0
EXIT_ERROR = 2
EXIT_NONE = 3

__all__ = [
    "HcertError",
    "Result",
    "__version__",
    "certify",
    "check_index",
    "config_hash",
    "constants",
    "normalize_config",
    "report",
    "solve",
]


class Result:
    """A command document plus the exit code the CLI would return."""

    def __init__(self, document, exit_code, csv_files):
        self.document = document
        self.exit_code = exit_code
        self.csv_files = list(csv_files)

    def __repr__(self):
        return f"Result(command={self.document.get('command')!r}, exit_code={self.exit_code})"


def _text(config):
    path = Path(config)
    if "\n" not in str(config) and path.is_file():
        return path.read_text(), str(path)
    return str(config), "<string>"


def _call(command, config, rho=None, csv_dir=None, timestamp=False):
    text, origin = _text(config)
    rho = None if rho is None else [float(r) for r in rho]
    doc, code, files = _run(command, text, origin, rho, str(csv_dir or ""), timestamp)
    return Result(json.loads(doc), code, files)


def constants(config):
    return _call("constants", config)


def check_index(config, rho):
    return _call("check-index", config, rho=rho)


def certify(config, rho=None):
    return _call("certify", config, rho=rho)


def solve(config, rho=None, csv_dir=None):
    return _call("solve", config, rho=rho, csv_dir=csv_dir)


def report(config, rho=None, csv_dir=None):
    return _call("report", config, rho=rho, csv_dir=csv_dir)
