"""Associative classification toolkit.

From-scratch class-association-rule mining with exact rational support and
confidence, two rule-based classifier builders (coverage-built ranked rules
and tree-arbitrated rules), an information-gain decision tree, a reproducible
cross-validation/benchmark harness, an HTTP service, and a CLI client.
"""

__version__ = "0.1.0"

from .dataset import (  # noqa: E402,F401
    Dataset,
    FoldAssignment,
    Row,
    Schema,
    discretize,
    dump_csv,
    load_csv,
    majority_class,
    parse_csv,
    stratified_shuffle_partition,
    write_csv,
)
from .errors import CbakitError, InputError, ModelFormatError  # noqa: F401
from .mining import (  # noqa: F401
    ClassAssociationRule,
    FrequentSets,
    Item,
    MiningConfig,
    RuleItem,
    candidate_gen,
    count_ruleitem,
    extract_cars,
    generate_frequent_ruleitems,
    rule_line,
)
from .classifier import (  # noqa: F401
    Classifier,
    build_classifier,
    error_rate,
    predict,
    prune_general,
    rank_rules,
)
from .tree import (  # noqa: F401
    DecisionTree,
    TreeRule,
    TreeSettings,
    build_tree,
    dump_tree,
    entropy,
    info_gain,
    tree_to_rules,
)
from .merge import MergeReport, match_fraction, merge  # noqa: F401
from .evaluation import (  # noqa: F401
    DEFAULT_SCENARIOS,
    CVReport,
    DatasetMeta,
    ModelConfig,
    ScenarioReport,
    cross_validate,
    group_report,
    run_scenarios,
    train_model,
)
from .model_io import dump_model, load_model, read_model, write_model  # noqa: F401
