"""The Linking-Unlinking Game on two-component link shadows.

Two players alternately resolve the crossings of a shadow; once every
crossing is resolved, the Unlinker has won if the diagram is splittable
and the Linker if it is unsplittable.  This package provides the
rational pseudotangle calculus, a general planar-diagram core, an
exhaustive perfect-play solver (with a compiled kernel and a pure-Python
fallback), executable winning strategies with a verification harness,
a CLI, and an HTTP service for interactive play.
"""

from .diagram import (
    CrossingState,
    ShadowDiagram,
    canonical_orientation,
    checkerboard,
    classify_crossing,
    crossing_sign,
    parse_pd,
    pseudo_linking_number,
    render_pd,
    twist_regions,
)
from .construct import (
    build_rational_shadow,
    hopf_shadow,
    two_component_shadow,
    whitehead_shadow,
)
from .game import (
    GameConfig,
    GameOutcome,
    GameState,
    Move,
    Role,
    apply_move,
    game_outcome,
    legal_moves,
    new_game,
    replay,
)
from .simplify import decide_splittability, simplify
from .solver import SolveResult, solve_diagram, solve_rational, verify_strategy
from .strategies import (
    StrategyId,
    anti_r2_response,
    applicable_strategies,
    choose_move,
    r2_response,
)
from .verdict import Split, Verdict
from .words import (
    ClosureKind,
    EndpointPairing,
    PseudoTangleWord,
    Syllable,
    classify_syllables,
    closure_components,
    count_intersections,
    decompose_word,
    parse_word,
    rational_splittability,
    reduce_word,
    render_word,
    shadow_word,
    tangle_fraction,
    word,
)

__version__ = "0.1.0"
