"""Exact computations for hyperbolic-decay time series.

Covers fractionally differenced noise, FARMA(p,q,d) and fractional Gaussian
noise: autocovariances, ψ/π weights, spectral densities, duals, aggregation,
Durbin–Levinson prediction, generalized variances, exact likelihood and exact
simulation.
"""

from ._kernels import BACKEND
from .acvf import (
    AcvfSeq,
    AsymptoticFit,
    Exactness,
    acvf,
    acvf_farma,
    acvf_fgn,
    acvf_fracnoise,
    aggregate_acvf,
    asymptotic_constant,
    fit_decay,
    innovation_variance,
)
from .duality import dual, dual_alpha, spectral_reciprocity_check
from .models import DecayClass, ModelKind, ModelSpec, Persistence, decay_class, validate
from .prediction import (
    DlResult,
    GvarCurve,
    a_k_diagnostic,
    durbin_levinson,
    exact_loglik,
    gvar_fracnoise,
    gvar_general,
    pacf_fracnoise,
    predict_one_step,
    sigma2_fracnoise,
)
from .simulation import SimConfig, SimMethod, sample_acvf, simulate, simulate_replicates
from .spectrum import SpectrumEval, acvf_constant_from_sdf, acvf_from_sdf, origin_constant, sdf
from .weights import (
    WeightKind,
    WeightSeq,
    check_rate,
    duality_weight_identity,
    pi_weights,
    psi_weights,
)

__version__ = "0.1.0"
