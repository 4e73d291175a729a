"""The algebra package: matrix values, ring operations and the matrix file format."""

from .codec import complex_from_json as complex_from_json
from .codec import complex_to_json as complex_to_json
from .codec import get_optional as get_optional
from .codec import get_required as get_required
from .codec import matrix_from_dict as matrix_from_dict
from .codec import matrix_to_dict as matrix_to_dict
from .codec import read_matrix as read_matrix
from .codec import write_matrix as write_matrix
from .matrix import Array as Array
from .matrix import Letter as Letter
from .matrix import Matrix as Matrix
from .matrix import Word as Word
from .matrix import approx_zero as approx_zero
from .matrix import block_diag as block_diag
from .matrix import format_word as format_word
from .matrix import mat_from_blocks2 as mat_from_blocks2
from .matrix import mat_power as mat_power
from .matrix import parse_word as parse_word
from .matrix import relative_residual as relative_residual
from .matrix import word_product as word_product
