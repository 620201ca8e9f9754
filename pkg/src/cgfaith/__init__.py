"""Gaussian chain graphs: separation, parameterization, faithfulness and equivalence."""
from .equivalence import enumerate_cgs, equivalent, partition_classes
from .faithfulness import check_sample, random_cg, run_harness
from .gaussian import Gaussian, LinearConditional, build_joint, compose, condition, marginal
from .graph import ChainGraph, Complex, components, complexes, moral_graph, validate
from .independence import ci_test, ci_test_sets
from .parameterization import NdParameters, SamplerConfig, dimension, recover, sample
from .separation import separated

__all__ = [
    "ChainGraph", "Complex", "Gaussian", "LinearConditional", "NdParameters",
    "SamplerConfig", "build_joint", "check_sample", "ci_test", "ci_test_sets",
    "complexes", "components", "compose", "condition", "dimension",
    "enumerate_cgs", "equivalent", "marginal", "moral_graph", "partition_classes",
    "random_cg", "recover", "run_harness", "sample", "separated", "validate",
]
