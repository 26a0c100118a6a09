"""Team formation for collaborative mobile crowdsourcing.

Synthetic worker populations on small-world social graphs, three recruiter
knowledge models (platform, leader, hybrid), an exact solver plus GA/PSO
heuristics, and a Monte Carlo harness for comparing them.
"""
__version__ = "0.1.0"

from .metrics import MetricsReport, fitness, pairwise_strength
from .model import (
    FitnessWeights,
    Instance,
    LeaderVariant,
    Project,
    SocialGraph,
    Team,
    Worker,
    validate_instance,
    validate_team,
)
from .netgen import NetGenParams, RosterParams, generate_instance, watts_strogatz
from .solvers import GaParams, PsoParams, solve_exact, solve_ga, solve_pso
from .strategies import (
    KnowledgeView,
    LeaderPolicy,
    NoiseParams,
    recruit_hybrid,
    recruit_leader,
    recruit_platform,
)
