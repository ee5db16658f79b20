"""Exact computations with skew-symmetric cluster algebras.

Quiver and seed mutation, covering pairs, the Banff algorithm with verifiable
cover certificates, exchange matrix ranks and the local acyclicity classifier
for marked surfaces.
"""

# Future
from __future__ import annotations

# Package
from clusterscope.banff import (  # noqa: F401
    BanffSearch,
    FailureReport,
    isolated_refinement,
    run_banff,
    run_banff_reduced,
)
from clusterscope.canonical import canonical_form, is_isomorphic  # noqa: F401
from clusterscope.catalog import catalog_quiver, catalog_seed  # noqa: F401
from clusterscope.certificate import (  # noqa: F401
    BanffCertificate,
    Verification,
    format_certificate,
    parse_certificate,
    verify_certificate,
)
from clusterscope.config import SearchBudget, Strategy  # noqa: F401
from clusterscope.const import StopPredicate, Verdict  # noqa: F401
from clusterscope.explore import (  # noqa: F401
    find_acyclic_seed,
    find_covering_pair_seed,
    mutation_class,
)
from clusterscope.log import logger
from clusterscope.quiver import (  # noqa: F401
    IceQuiver,
    QuiverError,
    freeze,
    from_arrows,
    mutate_quiver,
)
from clusterscope.seed import Seed, initial_seed, mutate_seed  # noqa: F401
from clusterscope.structure import covering_pairs, is_acyclic  # noqa: F401

__version__ = "0.1.0.dev1"

logger.debug(f"clusterscope v{__version__}")
