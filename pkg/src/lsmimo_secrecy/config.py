"""Line-oriented ``key = value`` scenario files.

Keys are the CLI long-option names without the leading dashes (``nr``,
``snr-s``, ``alpha-re``, ...). Blank lines and ``#`` comments are ignored.
Values stay strings here; the CLI converts them with the same parsers it
uses for flags, so a file and the command line accept exactly the same text.
"""

from .errors import ParameterError


def parse_config(text, source="<config>"):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError("config", f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ParameterError("config", f"{source}:{lineno}: empty key or value in {raw!r}")
        key = key.lstrip("-").replace("_", "-").lower()
        if key in values:
            raise ParameterError("config", f"{source}:{lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def read_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), source=str(path))
