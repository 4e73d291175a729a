"""The inverse package: Drazin-type inverses and the spectral classifier."""

from .classes import classify as classify
from .classes import g_hirano as g_hirano
from .classes import g_pi_hirano as g_pi_hirano
from .classes import g_pi_hirano_oracle as g_pi_hirano_oracle
from .classes import g_pi_hirano_pairwise_oracle as g_pi_hirano_pairwise_oracle
from .classes import gs_drazin as gs_drazin
from .classes import invert as invert
from .common import ClassificationReport as ClassificationReport
from .common import InverseKind as InverseKind
from .common import InverseWitness as InverseWitness
from .common import Residuals as Residuals
from .common import WitnessOverflow as WitnessOverflow
from .drazin import defining_residuals as defining_residuals
from .drazin import drazin as drazin
from .drazin import drazin_by_pinv as drazin_by_pinv
from .drazin import group_inverse as group_inverse
from .drazin import pinv as pinv
