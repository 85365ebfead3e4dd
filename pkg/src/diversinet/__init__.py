"""diversinet: simulate vulnerability-aware topology adaptation and measure
its resilience against epidemic attacks."""

from .adaptation import (
    AdaptBudget,
    EdgeCandidate,
    RemovedEdgeLedger,
    apply_candidates,
    diversity_adaptation,
    edge_budgets,
    least_common_shuffle,
    no_adaptation,
    random_adaptation,
    rank_addition_candidates,
    rank_removal_candidates,
    remove_same_package_edges,
)
from .epidemic import EpidemicOutcome, run_epidemic
from .experiment import (
    AggregateRow,
    ConfigError,
    ExperimentConfig,
    NetworkSource,
    ResultRow,
    run_batch,
    run_once,
    run_sweep,
)
from .graph import (
    Graph,
    ReachMask,
    derive_degree_rank_subgraph,
    generate_er,
    giant_component,
    khop_neighborhood,
    load_edge_list,
    reach_mask,
    serialize_edge_list,
)
from .metrics import MetricReport, metric_dc, metric_pc, metric_sg
from .paths import (
    AttackPath,
    diversity_vector,
    enumerate_disjoint_paths,
    max_path_vulnerabilities,
    mean_software_diversity,
    path_vulnerability,
    software_diversity,
)
from .software import (
    DEFAULT_SV,
    NodeState,
    SoftwareCatalog,
    assign_packages,
    build_states,
    default_catalog,
    hop_vulnerability,
    seed_attackers,
)

__version__ = "0.1.0"
