"""Zero-error SDP quantities of quantum channels: quantum Lovasz number, NS-assisted
capacity and simulation cost, and the quantum fractional packing number."""
from .channels import (QuantumChannel, choi, classical_channel, depolarizing_channel,
                       family_nalpha, identity_channel, make_channel, tensor_channel)
from .graphs import OperatorSubspace, complement, contains, ncbigraph, ncgraph, span_of
from .quantities import (QuantityResult, aram, closed_form_nalpha, fractional_packing,
                         separation_report, sigma, theta, upsilon)
from .sdp import Block, ConicProblem, SolveReport, solve, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "QuantumChannel", "choi", "classical_channel", "depolarizing_channel", "family_nalpha",
    "identity_channel", "make_channel", "tensor_channel",
    "OperatorSubspace", "complement", "contains", "ncbigraph", "ncgraph", "span_of",
    "QuantityResult", "aram", "closed_form_nalpha", "fractional_packing", "separation_report",
    "sigma", "theta", "upsilon",
    "Block", "ConicProblem", "SolveReport", "solve", "verify_certificate",
]
