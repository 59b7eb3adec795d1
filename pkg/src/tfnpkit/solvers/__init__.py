from .bruteforce import iter_certificates, solve_bruteforce
from .budget import Meter, SolveBudget
from .choice import (
    ChoiceWalkState,
    long_choice_walk,
    short_choice_walk,
    solve_long_choice_majority,
    solve_short_choice_minority,
)
from .ramsey import (
    check_width,
    extract_clique,
    forward_colors,
    required_width,
    solve_ramsey,
    solve_ramsey_sequence,
    subsample,
)
