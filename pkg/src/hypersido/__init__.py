"""Exact certificates that specific r-uniform hypergraphs are not Sidorenko
(and sometimes not common), with the census polynomials, witness kernels and
homomorphism-density evaluators behind them.
"""

__version__ = "0.1.0"

from .errors import HypersidoError, Inconclusive, InvalidInput, ResourceLimit
from .hypergraph import (
    Hypergraph,
    berge_girth,
    build_family,
    catalog,
    levi_graph,
    make_grid,
    make_half_octahedron,
    make_loose_cycle,
    make_loose_triangle,
    make_single_edge,
    make_tight_cycle,
    make_tight_cycle_minus_edge,
    skeleton,
)
from .kappa import (
    KappaPolynomial,
    best_negative_point,
    eval_poly,
    find_negative_point,
    kappa_poly,
    kappa_poly_bruteforce,
    kappa_tight_cycle_dp,
)
from .density import (
    BipartiteKernel,
    SymmetricKernel,
    TensorKernel,
    blow_up,
    estimate_density,
    sample_hypergraph,
    t_density,
    tensor_power,
)
from .witness import (
    auto_witness_tight_cycle,
    certify_non_sidorenko,
    deletion_bound,
    h_kernel,
    linear_girth_kernel,
    scan_tight_cycles,
    verify_certificate,
)
from .common import check_noncommon, classify_even_subgraphs, common_deficit, levi_transfer
