"""shiftlab: singularity witnesses and Fredholm indices of shift-polynomial operators.

A monic polynomial p over the matrix algebra M_d(C) always has a complex z
where p(z) is singular; this package finds those witnesses constructively,
computes the Fredholm index of the attached shift-polynomial operator by two
independent routes (winding number of the determinant symbol, inside-root
count), and packages the finite-section experiments that exhibit the index
on truncations.
"""

__version__ = "0.1.0"

from .algebra import (
    MonicPolynomial,
    NonMonicPencil,
    algebra_norm,
    evaluate,
    from_roots,
    is_invertible,
    load_matrix,
    load_polynomial,
    save_polynomial,
    scalar_poly,
    scale_transform,
    shift_poly,
    sigma_min,
)
from .errors import (
    NonConvergence,
    NonConvergent,
    NotFredholm,
    RootOnCircle,
    RoundingAmbiguous,
    ShiftlabError,
    TheoremViolation,
    VanishingSymbol,
)
from .fredholm import (
    IndexReport,
    count_roots_in_disc,
    fredholm_index,
    symbol_det,
    winding_number,
)
from .sections import (
    DecayProfile,
    IndexHistogram,
    SamplerConfig,
    SweepResult,
    adjoint_kernel_basis,
    decay_profile,
    epsilon_sweep,
    subspace_index_sample,
)
from .shiftops import (
    FiniteSequence,
    TruncationMatrix,
    apply_operator,
    apply_shift,
    assemble_truncation,
    injectivity_certificate,
)
from .witness import (
    ScanResult,
    WitnessReport,
    companion_linearize,
    eigenvalues,
    find_witnesses,
    nonmonic_scan,
)

__all__ = [
    "MonicPolynomial",
    "NonMonicPencil",
    "algebra_norm",
    "evaluate",
    "from_roots",
    "is_invertible",
    "load_matrix",
    "load_polynomial",
    "save_polynomial",
    "scalar_poly",
    "scale_transform",
    "shift_poly",
    "sigma_min",
    "ShiftlabError",
    "VanishingSymbol",
    "NonConvergent",
    "RoundingAmbiguous",
    "NonConvergence",
    "TheoremViolation",
    "RootOnCircle",
    "NotFredholm",
    "IndexReport",
    "count_roots_in_disc",
    "fredholm_index",
    "symbol_det",
    "winding_number",
    "DecayProfile",
    "IndexHistogram",
    "SamplerConfig",
    "SweepResult",
    "adjoint_kernel_basis",
    "decay_profile",
    "epsilon_sweep",
    "subspace_index_sample",
    "FiniteSequence",
    "TruncationMatrix",
    "apply_operator",
    "apply_shift",
    "assemble_truncation",
    "injectivity_certificate",
    "ScanResult",
    "WitnessReport",
    "companion_linearize",
    "eigenvalues",
    "find_witnesses",
    "nonmonic_scan",
]
