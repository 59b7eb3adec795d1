"""Seeded generators, file formats, pipelines and the command line."""

from .generators import GENERATORS, GeneratorSpec, generate
from .pipeline import PipelineReport, PipelineSpec, default_solver, run_pipeline, solve
from .prng import PRNG_VERSION, SplitMix64

__all__ = [
    "GENERATORS", "GeneratorSpec", "generate", "PipelineReport", "PipelineSpec",
    "default_solver", "run_pipeline", "solve", "PRNG_VERSION", "SplitMix64",
]
