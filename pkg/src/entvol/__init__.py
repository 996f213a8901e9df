"""Uniform sampling of bipartite quantum states and volume ratios of
entanglement detection criteria.

The state body is coordinatized by orthonormal Hermitian generator bases
(`entvol.basis`), walked with a hit-and-run Markov chain (`entvol.sampler`),
and classified by PPT, reduction, majorization and Renyi-entropy criteria
(`entvol.criteria`).  `entvol.estimator` turns per-sample verdicts into
volume-ratio estimates with per-chain standard errors, and `entvol.cli`
exposes the whole pipeline as a command line tool.
"""

__version__ = "0.1.0"
