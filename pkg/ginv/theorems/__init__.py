"""The theorems package: verifiers, golden fixtures and the seeded suite."""

from .common import Ledger as Ledger
from .common import SuiteReport as SuiteReport
from .common import TheoremSummary as TheoremSummary
from .common import TrialReport as TrialReport
from .common import digest as digest
from .fixtures import FIXTURES as FIXTURES
from .fixtures import run_fixtures as run_fixtures
from .report import render as render
from .report import render_json as render_json
from .report import render_markdown as render_markdown
from .suite import THEOREMS as THEOREMS
from .suite import Theorem as Theorem
from .suite import replay_trial as replay_trial
from .suite import run_suite as run_suite
from .suite import run_trial as run_trial
from .verifiers import verify_additive_kstar as verify_additive_kstar
from .verifiers import verify_anti_triangular as verify_anti_triangular
from .verifiers import verify_block_triangular as verify_block_triangular
from .verifiers import verify_drazin_additive as verify_drazin_additive
from .verifiers import verify_drazin_engine as verify_drazin_engine
from .verifiers import verify_existence_equivalences as verify_existence_equivalences
from .verifiers import verify_k_ast_properties as verify_k_ast_properties
from .verifiers import verify_product_swap as verify_product_swap
from .verifiers import verify_qnil_lemmas as verify_qnil_lemmas
