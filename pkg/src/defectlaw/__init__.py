"""defectlaw: token-level information content and defect-equilibration analysis.

Pipeline: lex source files into per-component token streams, measure token
count t and unique-alphabet size a per component (information content
t*ln a), join externally recorded defect counts, bin by defect count, and
test linearity of defects against mean information content. A constrained
ensemble simulator generates synthetic systems for end-to-end checks.
"""

from .analysis import (
    EQUILIBRATED,
    INSUFFICIENT_DATA,
    NOT_EQUILIBRATED,
    MaturityReport,
    PowerLawFit,
    defect_law_regression,
    maturity_assess,
    powerlaw_check,
)
from .defects import (
    DefectBin,
    DefectRecord,
    JoinedComponent,
    bin_by_defects,
    coverage_cutoff,
    join,
    load_defects,
)
from .lexer import Component, LexError, Token, scan_tree, split_components, tokenize
from .metrics import (
    ComponentMetrics,
    SystemSummary,
    information_content,
    measure,
    summarize,
)
from .simulator import (
    EnsembleSample,
    EnsembleSpec,
    inject_defects,
    make_sample,
    metropolis_equilibrate,
    partition_function,
    sample_powerlaw,
)
from .stats import (
    RegressionSummary,
    adjusted_r2,
    f_pvalue,
    ols_fit,
    reg_inc_beta,
    t_pvalue_two_sided,
)

__version__ = "0.1.0"

__all__ = [
    "Component",
    "ComponentMetrics",
    "DefectBin",
    "DefectRecord",
    "EnsembleSample",
    "EnsembleSpec",
    "EQUILIBRATED",
    "INSUFFICIENT_DATA",
    "JoinedComponent",
    "LexError",
    "MaturityReport",
    "NOT_EQUILIBRATED",
    "PowerLawFit",
    "RegressionSummary",
    "SystemSummary",
    "Token",
    "adjusted_r2",
    "bin_by_defects",
    "coverage_cutoff",
    "defect_law_regression",
    "f_pvalue",
    "information_content",
    "inject_defects",
    "join",
    "load_defects",
    "make_sample",
    "maturity_assess",
    "measure",
    "metropolis_equilibrate",
    "ols_fit",
    "partition_function",
    "powerlaw_check",
    "reg_inc_beta",
    "sample_powerlaw",
    "scan_tree",
    "split_components",
    "summarize",
    "t_pvalue_two_sided",
    "tokenize",
]
