# --- Exit Codes ---

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_CAP_EXCEEDED = 2
EXIT_VERIFICATION_FAILED = 3

# --- Search Limits ---

DEFAULT_NODE_CAP = 10000
DEFAULT_LENGTH_CAP = 64
DECOMPOSITION_BUDGET = 1000
# Coefficient range for integer combinations of endomorphisms.
CANDIDATE_COEFFICIENTS = (1, -1, 2, -2)

# --- Caches ---

HOM_CACHE_SIZE = 4096
END_CACHE_SIZE = 1024
TAU_CACHE_SIZE = 1024
SAMPLE_CACHE_SIZE = 64

# --- Logging ---

DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_LOG_TZ = "UTC"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# --- Reports ---

INDETERMINATE_DIVISION_ALGEBRA = "indeterminate-division-algebra"
CERTIFICATE_LENGTH = 16
DIRECT_SUM_SEPARATOR = " ⊕ "
ZERO_MODULE = "0"

STT_CSV_COLUMNS = ["id", "module", "projectives", "dims", "semibrick"]
GLUE_CSV_COLUMNS = ["stau-tilt(A/<e>)", "stau-tilt(A)", "stau-tilt(eAe)", "semibrick"]
SEMIBRICK_CSV_COLUMNS = ["left", "right", "semibrick"]

# --- Module Literals ---

MODULE_LITERAL_KINDS = {
    "P": "projective",
    "S": "simple",
    "I": "injective",
}

# --- Finiteness Probe ---

FINITE_YES = "yes"
FINITE_UNKNOWN = "unknown"
