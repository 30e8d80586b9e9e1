"""Readers and writers for the text file formats.

Function files::

    # comment
    n=5 m=5 modulus=0x25
    poly:
    1 3
    2 5

where each poly line is <coeff-hex> <exponent>, or inline as
``poly: x^3 + 0x2*x^5``, or::

    n=3 m=1
    tt: 0 1 1 0 1 0 0 1

Catalog files hold one function per ``[entry <label>]`` block with an
optional ``tags:`` line; a header line before the first block applies to
every entry. Matrix files start with ``<rows> <cols>`` followed by 0/1
rows. Certificate files start with ``n=.. k=.. t=.. m=..`` followed by
``<basis-hex,...> <color-hex>`` lines.
"""

import re
import sys
from pathlib import Path
from typing import Iterable, Optional, Union

from sumfree_cli.bitmatrix import BitMatrix
from sumfree_cli.errors import FormatError, SumfreeError
from sumfree_cli.flats import Subspace
from sumfree_cli.gf2n import FieldContext
from sumfree_cli.grassmann import ColoringCertificate, GrassmannParams
from sumfree_cli.search import CatalogEntry, FunctionCatalog
from sumfree_cli.vecfun import VectorialFunction, from_univariate

PathLike = Union[str, Path]

HEX_KEYS = frozenset({"modulus"})
_TERM = re.compile(r"^(?:(?P<coef>0x[0-9a-fA-F]+|\d+)\s*\*?\s*)?(?P<x>x(?:\^(?P<exp>\d+))?)?$")


def read_text(path: PathLike) -> str:
    """Read a file, or stdin when path is ``-``."""
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise FormatError(f"file not found: {path}") from None


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _parse_int(token: str, line: int) -> int:
    try:
        return int(token, 0)
    except ValueError:
        raise FormatError(f"not an integer: {token!r}", line)


def _parse_hex(token: str, line: int) -> int:
    """Hex with or without the 0x prefix."""
    try:
        return int(token, 16)
    except ValueError:
        raise FormatError(f"not a hex value: {token!r}", line)


def parse_header(line: str, number: int, required: Iterable[str]) -> dict[str, int]:
    """Parse ``key=value`` tokens; every value is an integer, ``modulus`` is hex."""
    fields = {}
    for token in line.split():
        if "=" not in token:
            raise FormatError(f"expected key=value, got {token!r}", number)
        key, value = token.split("=", 1)
        parse = _parse_hex if key in HEX_KEYS else _parse_int
        fields[key] = parse(value, number)
    missing = [k for k in required if k not in fields]
    if missing:
        raise FormatError(f"header is missing {', '.join(missing)}", number)
    return fields


def parse_poly(text: str, number: int) -> list[tuple[int, int]]:
    """``c*x^e + ...`` into (coefficient, exponent) pairs."""
    terms = []
    for raw in text.split("+"):
        term = raw.strip().replace(" ", "")
        match = _TERM.match(term)
        if not term or not match or (match["coef"] is None and match["x"] is None):
            raise FormatError(f"cannot parse term {raw.strip()!r}", number)
        coef = int(match["coef"], 0) if match["coef"] else 1
        if match["x"] is None:
            exponent = 0
        else:
            exponent = int(match["exp"]) if match["exp"] else 1
        terms.append((coef, exponent))
    return terms


class _FunctionSpec:
    """Accumulates one function block while parsing."""

    def __init__(self, header: Optional[dict[str, int]], line: int):
        self.header = header
        self.line = line
        self.poly: Optional[list[tuple[int, int]]] = None
        self.values: Optional[list[int]] = None

    def build(self) -> VectorialFunction:
        if self.header is None:
            raise FormatError("missing n=.. m=.. header", self.line)
        n, m = self.header["n"], self.header["m"]
        try:
            if self.poly is not None:
                if n != m:
                    raise FormatError("poly: needs n = m", self.line)
                ctx = FieldContext.create(n, self.header.get("modulus"))
                return from_univariate(ctx, self.poly)
            if self.values is not None:
                return VectorialFunction(n, m, self.values)
        except SumfreeError as e:
            if isinstance(e, FormatError):
                raise
            raise FormatError(str(e), self.line)
        raise FormatError("function has neither poly: nor tt:", self.line)


def _feed(spec: _FunctionSpec, line: str, number: int) -> bool:
    """Consume a body line; False when the line is not part of a function."""
    if line.startswith("poly:"):
        rest = line[5:].strip()
        spec.poly = parse_poly(rest, number) if rest else []
        spec.values = None
        return True
    if line.startswith("tt:"):
        spec.values = [_parse_hex(t, number) for t in line[3:].split()]
        spec.poly = None
        return True
    if ":" in line or "=" in line:
        return False
    tokens = line.split()
    if spec.values is not None:
        spec.values.extend(_parse_hex(t, number) for t in tokens)
        return True
    if spec.poly is not None:
        if len(tokens) != 2:
            raise FormatError("expected '<coeff-hex> <exponent>'", number)
        spec.poly.append((_parse_hex(tokens[0], number), _parse_int(tokens[1], number)))
        return True
    return False


def parse_function(text: str, modulus: Optional[int] = None) -> VectorialFunction:
    """Parse a function file; ``modulus`` applies when the header has none."""
    spec: Optional[_FunctionSpec] = None
    for number, line in _lines(text):
        if spec is None:
            header = parse_header(line, number, ("n", "m"))
            if modulus is not None:
                header.setdefault("modulus", modulus)
            spec = _FunctionSpec(header, number)
        elif not _feed(spec, line, number):
            raise FormatError(f"unexpected line {line!r}", number)
    if spec is None:
        raise FormatError("empty function file")
    return spec.build()


def read_function(path: PathLike, modulus: Optional[int] = None) -> VectorialFunction:
    return parse_function(read_text(path), modulus)


def format_function(F: VectorialFunction, modulus: Optional[int] = None) -> str:
    header = f"n={F.n} m={F.m}"
    if modulus is not None:
        header += f" modulus={modulus:#x}"
    values = "\n".join(f"{v:#x}" for v in F.values())
    return f"{header}\ntt:\n{values}\n"


def write_function(F: VectorialFunction, path: PathLike, modulus: Optional[int] = None) -> None:
    Path(path).write_text(format_function(F, modulus))


def parse_catalog(text: str, source: str = "") -> FunctionCatalog:
    shared: Optional[dict[str, int]] = None
    entries: list[CatalogEntry] = []
    label: Optional[str] = None
    tags: tuple[str, ...] = ()
    spec: Optional[_FunctionSpec] = None

    def close():
        if label is not None:
            entries.append(CatalogEntry(label, spec.build(), tags))

    for number, line in _lines(text):
        if line.startswith("[entry") and line.endswith("]"):
            close()
            label = line[len("[entry") : -1].strip()
            if not label:
                raise FormatError("entry without a label", number)
            tags = ()
            spec = _FunctionSpec(shared, number)
        elif label is None:
            if shared is not None:
                raise FormatError(f"unexpected line {line!r}", number)
            shared = parse_header(line, number, ("n", "m"))
        elif line.startswith("tags:"):
            tags = tuple(t.strip() for t in line[5:].split(",") if t.strip())
        elif "=" in line and ":" not in line:
            spec.header = parse_header(line, number, ("n", "m"))
        elif not _feed(spec, line, number):
            raise FormatError(f"unexpected line {line!r}", number)
    close()
    try:
        return FunctionCatalog(entries, source, (shared or {}).get("modulus"))
    except SumfreeError as e:
        raise FormatError(str(e))


def read_catalog(path: PathLike) -> FunctionCatalog:
    return parse_catalog(read_text(path), str(path))


def parse_matrix(text: str) -> BitMatrix:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty matrix file")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError("expected '<rows> <cols>'", number)
    rows, cols = (_parse_int(p, number) for p in parts)
    body = lines[1:]
    if len(body) != rows:
        raise FormatError(f"expected {rows} rows, found {len(body)}")
    packed = []
    for number, line in body:
        if len(line) != cols or set(line) - {"0", "1"}:
            raise FormatError(f"row must be {cols} characters of 0/1", number)
        packed.append(sum(1 << j for j, c in enumerate(line) if c == "1"))
    return BitMatrix(tuple(packed), cols)


def read_matrix(path: PathLike) -> BitMatrix:
    return parse_matrix(read_text(path))


def format_matrix(matrix: BitMatrix) -> str:
    lines = [f"{matrix.num_rows} {matrix.cols}"]
    lines.extend("".join(str(b) for b in matrix.row_bits(i)) for i in range(matrix.num_rows))
    return "\n".join(lines) + "\n"


def write_matrix(matrix: BitMatrix, path: PathLike) -> None:
    Path(path).write_text(format_matrix(matrix))


def parse_certificate(text: str) -> ColoringCertificate:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty certificate file")
    number, header = lines[0]
    producer = "external"
    tokens = []
    for token in header.split():
        if token.startswith("producer="):
            producer = token.split("=", 1)[1]
        else:
            tokens.append(token)
    fields = parse_header(" ".join(tokens), number, ("n", "k", "t", "m"))
    if producer not in ("witness", "extended", "external"):
        raise FormatError(f"unknown producer {producer!r}", number)
    try:
        params = GrassmannParams(fields["n"], fields["k"], fields["t"])
    except SumfreeError as e:
        raise FormatError(str(e), number)
    assignment: dict[tuple[int, ...], int] = {}
    for number, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError("expected '<basis> <color>'", number)
        vectors = [_parse_hex(v, number) for v in parts[0].split(",") if v]
        try:
            basis = Subspace.from_vectors(params.n, vectors).basis
        except SumfreeError as e:
            raise FormatError(str(e), number)
        if basis in assignment:
            raise FormatError("subspace listed twice", number)
        assignment[basis] = _parse_hex(parts[1], number)
    return ColoringCertificate(params, fields["m"], assignment, producer)


def read_certificate(path: PathLike) -> ColoringCertificate:
    return parse_certificate(read_text(path))


def format_certificate(cert: ColoringCertificate) -> str:
    p = cert.params
    lines = [f"n={p.n} k={p.k} t={p.t} m={cert.m} producer={cert.producer}"]
    for basis in sorted(cert.assignment, reverse=True):
        lines.append(f"{','.join(f'{v:#x}' for v in basis)} {cert.assignment[basis]:#x}")
    return "\n".join(lines) + "\n"


def write_certificate(cert: ColoringCertificate, path: PathLike) -> None:
    Path(path).write_text(format_certificate(cert))
