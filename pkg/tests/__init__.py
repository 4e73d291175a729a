# pylint: disable=missing-docstring

from .common import ClassifyCase as ClassifyCase
from .common import max_entry as max_entry
from .common import similar as similar
from .common import random_matrix as random_matrix
