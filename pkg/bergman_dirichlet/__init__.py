from bergman_dirichlet.asymptotics import (
    ConvergenceRecord,
    DensityRecord,
    LimitRecord,
    hypergeometric_limit_check,
    kernel_convergence_table,
    measure_density_convergence,
    uniform_error_table,
)
from bergman_dirichlet.common import (
    CoefficientSeries,
    DiskSpaceParams,
    Divergent,
    DomainError,
    NormOverflow,
    NotConverged,
    PlaneSpaceParams,
    SplitSeries,
    derivative,
    evaluate,
    gram_matrix,
    min_eigenvalue,
    split,
)
from bergman_dirichlet.disk import (
    contains,
    embedding_constant,
    embedding_ratios,
    evaluation_bound,
    inner_product,
    kernel,
    kernel_section,
    log_monomial_norm_sq,
    log_monomial_norms_sq,
    monomial_norm_sq,
    norm_sq,
    norm_terms,
)
from bergman_dirichlet.plane import (
    contains_plane,
    embedding_constant_plane,
    embedding_ratios_plane,
    evaluation_bound_plane,
    inner_product_plane,
    kernel_plane,
    kernel_section_plane,
    log_monomial_norm_sq_plane,
    log_monomial_norms_sq_plane,
    monomial_norm_sq_plane,
    norm_sq_plane,
    norm_terms_plane,
)
from bergman_dirichlet.quadrature import (
    QuadratureRule,
    build_disk_rule,
    build_plane_rule,
    disk_rule_for_degree,
    oracle_inner_product,
    oracle_modified_inner_product,
    plane_rule_for_degree,
)
from bergman_dirichlet.special import (
    HypergeometricSpec,
    SeriesSumResult,
    euler_beta,
    hypergeometric_sum,
    hypergeometric_value,
    log_pochhammer,
    pochhammer,
)
from bergman_dirichlet.verify import (
    CheckResult,
    iter_invariant_suite,
    run_invariant_suite,
)
