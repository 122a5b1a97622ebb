"""m-Tamari lattices on m-Dyck sequences: construction, EL-labelling, Möbius function."""

from .errors import CapExceeded, EmptyIntervalError, InvariantViolation, NotACover, UsageError
from .lattice import (IntervalView, Lattice, build_lattice, cover_move, covers,
                      interval_elements, iter_intervals, join, leq, meet)
from .paths import (Params, enumerate_paths, fuss_catalan, iter_paths, primitive_subsequence,
                    to_step_word, validate_sequence)

__version__ = "0.1.0"
