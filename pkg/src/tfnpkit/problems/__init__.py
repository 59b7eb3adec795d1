from .certificates import *  # noqa: F401,F403
from .certificates import ADMISSIBLE, CERTIFICATE_TYPES, Certificate, certificate_from_data
from .instances import *  # noqa: F401,F403
from .instances import INSTANCE_TYPES
from .verify import (
    MAX_SCAN_N,
    Reason,
    VerifyReport,
    edge_color2,
    first_extension,
    first_preimage,
    konig_walk,
    set_distance,
    verify,
    verify_empty,
    verify_konig,
    verify_long_choice,
    verify_short_choice,
)
