"""Read and write the text formats for lattices, Laurent matrices, simplicial sets and cochains.

All formats are line based. Blank lines and lines starting with "#" are ignored.
Parsing failures raise ParseError with the line and column of the offending token;
validation failures of the parsed data come from the owning modules unchanged.
"""

import logging
import re
from pathlib import Path

from .config import parse_header
from .dimtorsor import AbelianGroup
from .errors import InvalidReferenceError, ParseError
from .exactlin import Field
from .simptors import MAX_DIM_CAP, Cochain, SimplexRef, validate_simplicial_set
from .tate import LaurentMatrix, LaurentPoly, TateSpace, lattice_normalize

log = logging.getLogger(__name__)


def _lines(text):
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, line


def _tokens(line):
    """Return (column, token) pairs of the whitespace separated tokens of a line."""
    return [(m.start() + 1, m[0]) for m in re.finditer(r"\S+", line)]


def _header(lines, keyword, required):
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError('Missing "%s" header.' % keyword, 1, 1)
    header = parse_header(line)
    if header["tags"][:1] != [keyword]:
        raise ParseError('Expected a "%s" header.' % keyword, number, 1)
    for key in required:
        if key not in header:
            raise ParseError('Header lacks "%s".' % key, number, 1)
    return number, line, header


def _field(header, number, line):
    try:
        return Field.parse(str(header["field"]))
    except ValueError as e:
        raise ParseError(str(e), number, line.find("field=") + 1)


def _int(header, key, number, line):
    value = header[key]
    if not isinstance(value, int):
        raise ParseError('Value of "%s" is not an integer.' % key, number, line.find(key + "=") + 1)
    return value


def parse_lattice(text):
    """Parse a .lat document into a normalized Lattice."""
    lines = _lines(text)
    number, line, header = _header(lines, "tate", ("rank", "field"))
    rank = _int(header, "rank", number, line)
    if rank < 0:
        raise ParseError("Negative rank.", number, line.find("rank=") + 1)
    space = TateSpace(rank, _field(header, number, line))
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError('Missing "bounds" line.', number + 1, 1)
    bounds = parse_header(line)
    if bounds["tags"] != ["bounds"] or "lo" not in bounds or "hi" not in bounds:
        raise ParseError('Expected "bounds lo=<int> hi=<int>".', number, 1)
    lo = _int(bounds, "lo", number, line)
    hi = _int(bounds, "hi", number, line)
    size = (hi - lo) * rank
    rows = []
    for number, line in lines:
        row = []
        column = len(line) - len(line.lstrip()) + 1
        for token in line.strip().split(","):
            try:
                row.append(space.field.parse_scalar(token))
            except (ValueError, ZeroDivisionError):
                raise ParseError('Invalid scalar "%s".' % token.strip(), number, column)
            column += len(token) + 1
        if len(row) != size:
            raise ParseError(
                "Basis row of length %d, expected %d." % (len(row), size), number, 1
            )
        rows.append(row)
    lattice = lattice_normalize(space, lo, hi, rows)
    log.debug("parsed %s", lattice)
    return lattice


def format_lattice(lattice):
    lines = [
        "tate rank=%d field=%s" % (lattice.space.rank, lattice.field.name),
        "bounds lo=%d hi=%d" % (lattice.lo, lattice.hi),
    ]
    for row in lattice.sub.basis:
        lines.append(",".join(lattice.field.format(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_laurent_matrix(text):
    """Parse a .lmx document; the rows x cols entries follow the header row-major."""
    lines = _lines(text)
    number, line, header = _header(lines, "lmx", ("rows", "cols", "field"))
    rows = _int(header, "rows", number, line)
    cols = _int(header, "cols", number, line)
    if rows < 0 or cols < 0:
        raise ParseError("Negative matrix shape.", number, 1)
    field = _field(header, number, line)
    entries = []
    for number, line in lines:
        for column, token in _tokens(line):
            try:
                entries.append(LaurentPoly.parse(field, token))
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(str(e), number, column)
    if len(entries) != rows * cols:
        raise ParseError(
            "Found %d entries for a %dx%d matrix." % (len(entries), rows, cols), number + 1, 1
        )
    grid = [entries[r * cols : (r + 1) * cols] for r in range(rows)]
    return LaurentMatrix.from_rows(field, grid, cols)


def format_laurent_matrix(matrix):
    lines = ["lmx rows=%d cols=%d field=%s" % (matrix.rows, matrix.cols, matrix.field.name)]
    if matrix.rows and matrix.cols:
        lines.append(matrix.format())
    return "\n".join(lines) + "\n"


def parse_simplicial_set(text, dim_cap=MAX_DIM_CAP):
    """Parse a .sset document and validate it with validate_simplicial_set."""
    simplices = []
    faces = {}
    for number, line in _lines(text):
        tokens = _tokens(line)
        words = [t for _, t in tokens]
        if words[0] != "simplex" or len(words) < 3:
            raise ParseError('Expected "simplex <dim> <id> faces ...".', number, tokens[0][0])
        if not re.fullmatch(r"\d+", words[1]):
            raise ParseError('Invalid dimension "%s".' % words[1], number, tokens[1][0])
        dim = int(words[1])
        simplex_id = words[2]
        while len(simplices) <= dim:
            simplices.append([])
        simplices[dim].append(simplex_id)
        if dim == 0:
            if len(words) != 3:
                raise ParseError("A vertex has no faces clause.", number, tokens[3][0])
            continue
        if len(words) < 4 or words[3] != "faces":
            column = tokens[3][0] if len(words) > 3 else len(line) + 1
            raise ParseError('Expected "faces".', number, column)
        refs = []
        for column, token in tokens[4:]:
            try:
                refs.append(SimplexRef.parse(token))
            except ValueError as e:
                raise ParseError(str(e), number, column)
        if len(refs) != dim + 1:
            raise ParseError(
                "A %d-simplex needs %d faces, found %d." % (dim, dim + 1, len(refs)),
                number,
                tokens[3][0],
            )
        faces[simplex_id] = refs
    return validate_simplicial_set(simplices, faces, dim_cap)


def format_simplicial_set(complex_):
    lines = []
    for dim, ids in enumerate(complex_.simplices):
        for simplex_id in ids:
            if dim == 0:
                lines.append("simplex 0 %s" % simplex_id)
            else:
                faces = " ".join(str(ref) for ref in complex_.faces[simplex_id])
                lines.append("simplex %d %s faces %s" % (dim, simplex_id, faces))
    return "\n".join(lines) + "\n"


def parse_cochain(text, complex_, degree=None):
    """Parse a .coch document over the given simplicial set.

    The degree comes from an optional "degree <n>" line, from the argument, or from
    the dimension of the listed simplices, in that order. Unlisted simplices are zero.
    """
    lines = _lines(text)
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError('Missing "group" header.', 1, 1)
    words = line.split(None, 1)
    if words[0] != "group" or len(words) != 2:
        raise ParseError('Expected "group <presentation>".', number, 1)
    try:
        group = AbelianGroup.parse(words[1])
    except ValueError as e:
        raise ParseError(str(e), number, line.find(words[1]) + 1)
    coords = {}
    for number, line in lines:
        tokens = _tokens(line)
        if tokens[0][1] == "degree" and len(tokens) == 2 and re.fullmatch(r"\d+", tokens[1][1]):
            degree = int(tokens[1][1])
            continue
        if tokens[0][1] != "value" or len(tokens) not in (2, 3):
            raise ParseError('Expected "value <simplex-id> <coords>".', number, tokens[0][0])
        simplex_id = tokens[1][1]
        try:
            dim = complex_.dim_of(simplex_id)
        except InvalidReferenceError:
            raise ParseError('Unknown simplex "%s".' % simplex_id, number, tokens[1][0])
        if degree is None:
            degree = dim
        elif dim != degree:
            raise ParseError(
                'Simplex "%s" has dimension %d, not %d.' % (simplex_id, dim, degree),
                number,
                tokens[1][0],
            )
        raw = tokens[2][1].split(",") if len(tokens) == 3 else []
        if len(raw) != len(group.factors) or not all(re.fullmatch(r"-?\d+", x) for x in raw):
            column = tokens[2][0] if len(tokens) == 3 else len(line) + 1
            raise ParseError(
                "Expected %d integer coordinates." % len(group.factors), number, column
            )
        coords[simplex_id] = [int(x) for x in raw]
    if degree is None:
        raise ParseError("Cannot determine the cochain degree.", number, 1)
    return Cochain.from_coords(complex_, degree, group, coords)


def format_cochain(cochain):
    lines = ["group %s" % cochain.group.name, "degree %d" % cochain.degree]
    for simplex_id in cochain.complex.nondegenerate(cochain.degree):
        value = cochain.values[simplex_id]
        lines.append(("value %s %s" % (simplex_id, value.format())).rstrip())
    return "\n".join(lines) + "\n"


_PARSERS = {
    ".lat": parse_lattice,
    ".lmx": parse_laurent_matrix,
    ".sset": parse_simplicial_set,
}


def read_file(path, **kwargs):
    """Parse a file, choosing the format by its suffix (.lat, .lmx, .sset, .coch)."""
    path = Path(path)
    with path.open(mode="r", encoding="utf-8") as f:
        text = f.read()
    if path.suffix == ".coch":
        return parse_cochain(text, **kwargs)
    if path.suffix not in _PARSERS:
        raise ParseError('Unknown file format "%s".' % path.suffix)
    return _PARSERS[path.suffix](text, **kwargs)


def write_file(path, text):
    with Path(path).open(mode="w", encoding="utf-8") as f:
        f.write(text)
