"""The conditions package: word conditions on pairs and generators that plant them."""

from .generators import FOREIGN_VALUES as FOREIGN_VALUES
from .generators import GENERATORS as GENERATORS
from .generators import PoolKind as PoolKind
from .generators import SpectrumSpec as SpectrumSpec
from .generators import ab_ba_zero_from_blocks as ab_ba_zero_from_blocks
from .generators import annihilates as annihilates
from .generators import gen_ab_ba_zero as gen_ab_ba_zero
from .generators import gen_ab_zero as gen_ab_zero
from .generators import gen_ab_zero_planted as gen_ab_zero_planted
from .generators import gen_anti_triangular as gen_anti_triangular
from .generators import gen_k_ast as gen_k_ast
from .generators import gen_k_star as gen_k_star
from .generators import gen_planted_spectrum as gen_planted_spectrum
from .generators import gen_product_pair as gen_product_pair
from .generators import matches_pool as matches_pool
from .generators import polynomial_in as polynomial_in
from .generators import random_kind as random_kind
from .generators import random_pool as random_pool
from .generators import random_similarity as random_similarity
from .generators import unity_root as unity_root
from .words import ConditionReport as ConditionReport
from .words import WordPattern as WordPattern
from .words import check_word_condition as check_word_condition
