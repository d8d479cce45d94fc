"""qlk: construction, certification, encoding and syndrome-decoding
toolkit for the QL_k family of CSS stabilizer quantum codes."""

from .classical import (
    ClassicalCode,
    build_gk,
    build_lk,
    build_lk_plus,
    dual_code,
    dual_distance,
    enumerate_codewords,
    is_sub_exceeding,
    min_distance,
)
from .css import (
    CssCode,
    DistanceResult,
    HgpParameters,
    Provenance,
    build_qlk,
    check_css,
    css_distance,
    generalized_shor,
    hgp_parameters,
    hypergraph_product,
    logical_operator_witness,
)
from .decoder import (
    DecodingTable,
    McSummary,
    Syndrome,
    build_lookup,
    decode,
    run_exhaustive,
    run_monte_carlo,
    sample_depolarizing,
    syndrome_of,
)
from .encoder import (
    Circuit,
    RegisterLayout,
    export_circuit,
    hx_support,
    parse_circuit,
    prescribed_fanout_circuit,
    standard_form_encoder,
)
from .gf2 import BitMatrix, CapacityError
from .pauli import PauliOperator, phi, phi_inverse, symplectic_product
from .tableau import (
    EncodingReport,
    Tableau,
    apply_circuit,
    apply_gate,
    is_stabilized,
    tableau_zero_state,
    verify_encoding,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
