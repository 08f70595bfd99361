import unittest
from pathlib import Path
import shutil

from tatetors.dimtorsor import AbelianGroup
from tatetors.errors import InvalidReferenceError, ParseError, SimplicialIdentityError
from tatetors.exactlin import Field
from tatetors.fileformats import (
    format_cochain,
    format_lattice,
    format_laurent_matrix,
    format_simplicial_set,
    parse_cochain,
    parse_lattice,
    parse_laurent_matrix,
    parse_simplicial_set,
    read_file,
    write_file,
)
from tatetors.simptors import Cochain, minimal_torus, projective_plane, simplex_boundary
from tatetors.tate import LaurentMatrix, TateSpace, diagonal_lattice, lattice_normalize, standard_lattice

data_path = Path(__file__).parent / "data"
output_dir = "temp/test_fileformats"

F3 = Field(3)
K2 = TateSpace(2, F3)


class TestReadFiles(unittest.TestCase):
    def test_should_read_lattices(self):
        self.assertEqual(diagonal_lattice(K2, [-1, 0]), read_file(data_path / "a.lat"))
        self.assertEqual(standard_lattice(K2), read_file(data_path / "b.lat"))

    def test_should_read_laurent_matrices(self):
        self.assertEqual(LaurentMatrix.from_rows(F3, [[1], [0]]), read_file(data_path / "mono.lmx"))
        self.assertEqual(LaurentMatrix.from_rows(F3, [[0, 1]]), read_file(data_path / "epi.lmx"))

    def test_should_read_simplicial_sets(self):
        self.assertEqual(minimal_torus(), read_file(data_path / "torus.sset"))
        self.assertEqual(projective_plane(), read_file(data_path / "rp2.sset"))
        self.assertEqual(simplex_boundary(2), read_file(data_path / "circle.sset"))

    def test_should_read_cochain_over_complex(self):
        complex_ = minimal_torus()
        cochain = read_file(data_path / "torus_upper.coch", complex_=complex_)
        expected = Cochain.from_coords(complex_, 2, AbelianGroup.integers(), {"U": [1]})
        self.assertEqual(expected, cochain)

    def test_should_reject_unknown_suffix(self):
        with self.assertRaises(ParseError):
            read_file(Path(__file__).parent / "__init__.py")


class TestWriteFiles(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        p = Path(output_dir)
        if p.exists():
            print("removing " + output_dir)
            shutil.rmtree(output_dir)
        p.mkdir(parents=True)

    def test_should_write_what_it_reads(self):
        lattice = lattice_normalize(K2, -2, 1, [(0, 0, 1, 2, 0, 0)])
        path = Path(output_dir, "written.lat")
        write_file(path, format_lattice(lattice))
        self.assertEqual(lattice, read_file(path))

    def test_should_format_torus(self):
        text = format_simplicial_set(minimal_torus())
        self.assertIn("simplex 0 v\n", text)
        self.assertIn("simplex 2 U faces b c a\n", text)
        self.assertEqual(minimal_torus(), parse_simplicial_set(text))

    def test_should_format_laurent_matrix(self):
        matrix = LaurentMatrix.from_rows(F3, [[1, 0]])
        self.assertEqual("lmx rows=1 cols=2 field=F3\n1*t^0 0\n", format_laurent_matrix(matrix))

    def test_should_write_degree_line(self):
        complex_ = simplex_boundary(2)
        text = format_cochain(Cochain.zero(complex_, 0, AbelianGroup.cyclic(2)))
        self.assertTrue(text.startswith("group Z/2\ndegree 0\n"))
        self.assertEqual(Cochain.zero(complex_, 0, AbelianGroup.cyclic(2)), parse_cochain(text, complex_))


class TestParseErrors(unittest.TestCase):
    def test_should_locate_bad_scalar(self):
        text = "tate rank=1 field=F3\nbounds lo=-1 hi=0\nx\n"
        with self.assertRaises(ParseError) as context:
            parse_lattice(text)
        self.assertEqual((3, 1), (context.exception.line, context.exception.column))

    def test_should_reject_short_basis_row(self):
        with self.assertRaises(ParseError):
            parse_lattice("tate rank=2 field=F3\nbounds lo=-1 hi=0\n1\n")

    def test_should_require_header(self):
        with self.assertRaises(ParseError):
            parse_lattice("bounds lo=0 hi=0\n")
        with self.assertRaises(ParseError):
            parse_laurent_matrix("lmx rows=1 field=F3\n1\n")

    def test_should_count_matrix_entries(self):
        with self.assertRaises(ParseError):
            parse_laurent_matrix("lmx rows=2 cols=2 field=F3\n1 0\n0\n")

    def test_should_locate_bad_laurent_term(self):
        with self.assertRaises(ParseError) as context:
            parse_laurent_matrix("lmx rows=1 cols=2 field=F3\n1  2*x\n")
        self.assertEqual((2, 4), (context.exception.line, context.exception.column))

    def test_should_require_faces_clause(self):
        with self.assertRaises(ParseError):
            parse_simplicial_set("simplex 0 v\nsimplex 1 a v v\n")
        with self.assertRaises(ParseError):
            parse_simplicial_set("simplex 0 v\nsimplex 1 a faces v\n")

    def test_should_pass_validation_errors_through(self):
        with self.assertRaises(InvalidReferenceError):
            parse_simplicial_set("simplex 0 v\nsimplex 1 a faces v w\n")
        text = "\n".join(
            [
                "simplex 0 0",
                "simplex 0 1",
                "simplex 0 2",
                "simplex 1 01 faces 1 0",
                "simplex 1 02 faces 2 0",
                "simplex 1 12 faces 2 1",
                "simplex 2 012 faces 12 02 02",
            ]
        )
        with self.assertRaises(SimplicialIdentityError):
            parse_simplicial_set(text)

    def test_should_check_cochain_degree_and_coordinates(self):
        complex_ = minimal_torus()
        with self.assertRaises(ParseError):
            parse_cochain("group Z\ndegree 2\nvalue a 1\n", complex_)
        with self.assertRaises(ParseError):
            parse_cochain("group Z\nvalue U 1,2\n", complex_)
        with self.assertRaises(ParseError) as context:
            parse_cochain("group Z\nvalue X 1\n", complex_)
        self.assertEqual((2, 7), (context.exception.line, context.exception.column))
