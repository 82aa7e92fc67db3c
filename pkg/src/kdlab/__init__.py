"""Deciders and verification suites for k-d-critical, GFC_k and GBC_k graphs."""

from kdlab.graph import (
    ComponentStats,
    Graph,
    complement,
    component_stats,
    disjoint_union,
    induced_delete,
    join,
    min_degree,
    parse_graph6,
    write_graph6,
)
from kdlab.canon import canonical_key, enumerate_connected, is_isomorphic
from kdlab.deficiency import (
    CriticalityVerdict,
    DeficiencyReport,
    classify_gfc_gbc,
    deficiency_k,
    is_kd_critical_deficiency,
    k_barriers,
)
from kdlab.kmatching import (
    KMatching,
    constrained_matching,
    is_kd_critical_witness,
    mu_k,
    verify_matching,
)
from kdlab.spectral import (
    QuotientMatrix,
    SpectralResult,
    charpoly_fs,
    charpoly_tilde,
    claim_polynomials,
    largest_root,
    quotient_matrix,
    spectral_radius,
)
from kdlab.extremal import (
    ComparisonVerdict,
    build_Gs,
    edge_count_Gs,
    half_join,
    lemma4_lemma5_check,
    lemma8_compare,
    lemma9_compare,
)

__version__ = "0.1.0"
