"""Level structures on curves: nilpotent quotients, Dehn twists and dual graphs."""

from . import errors, freenil, graphs, lattice, magnus, nilpotent, surface, words
from .graphs import enumerate_stable_graphs, is_smooth_point, stabilizer_lattice, theorem_glad_check
from .nilpotent import NilpotentElement, eval_word, is_member
from .surface import check_twist, make_twist
from .words import parse_word

__version__ = "0.1.0"

__all__ = [
    "errors", "freenil", "graphs", "lattice", "magnus", "nilpotent", "surface", "words",
    "NilpotentElement", "eval_word", "is_member", "parse_word",
    "make_twist", "check_twist",
    "enumerate_stable_graphs", "is_smooth_point", "stabilizer_lattice", "theorem_glad_check",
]
