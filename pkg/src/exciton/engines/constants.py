"""Constants shared across sweep engines."""

COULOMB = "coulomb"
VARIATIONAL = "variational"
ORACLE = "oracle"

ENGINE_NAMES = (COULOMB, VARIATIONAL, ORACLE)

# Column prefixes, one per engine and output flavour
SPECTRUM_PREFIX = "E_"
MODEL_PREFIX = "E_model_"
VARIATIONAL_PREFIX = "E_var_"
ALPHA_PREFIX = "alpha_"
ORACLE_ODD_COLUMN = "E_fd_odd"
ORACLE_EVEN_COLUMN = "E_fd_even"

# States the variational trials exist for
VARIATIONAL_STATES = ("1s", "2p")

DEFAULT_SPECTRUM_STATES = ("1s", "2p", "2s", "3p")
COMPARE_MODEL_STATES = ("1s", "2p", "2s")

# Column layout of the comparison table
COMPARE_COLUMN_ORDER = (
    "E_model_1s",
    "E_var_1s",
    "E_model_2p",
    "E_var_2p",
    "E_model_2s",
    ORACLE_ODD_COLUMN,
    ORACLE_EVEN_COLUMN,
)
