from typing import Dict, List

from utils.validators import ConfigError

# ===============================
# NORMALIZATION FUNCTION
# ===============================
def normalize(key: str) -> str:
    """
    Normalize a config key or flag name
    - Strip whitespace and leading dashes
    - Lowercase
    - '-' and ' ' become '_'
    """
    return (
        str(key)
        .strip()
        .lstrip("-")
        .lower()
        .replace("-", "_")
        .replace(" ", "_")
    )


# ===============================
# MASTER CONFIG KEY DICTIONARY
# ===============================
# Maps: normalized_input_key -> canonical RunConfig field
CONFIG_KEY_MAP = {
    # Flow selection
    "flow": "flow",
    "kind": "flow",
    "flow_kind": "flow",

    # Initial state
    "xi": "xi",
    "initial": "xi",
    "xi_a": "xi_a",
    "xi_b": "xi_b",
    "lam": "lam",
    "lambda": "lam",

    # Flow parameters
    "e": "e",
    "direction": "e",
    "g": "g",
    "rate": "g",

    # Grids
    "t": "t",
    "times": "t",
    "phi": "phi",
    "phis": "phi",
    "angles": "phi",
    "degrees": "degrees",

    # Certification
    "samples": "samples",
    "seed": "seed",
    "tol": "tol",
    "tolerance": "tol",

    # Gisin
    "weighting": "weighting",
    "weights": "weighting",

    # Integrator
    "rk4": "rk4",
    "steps": "steps",

    # Output
    "format": "format",
    "output": "output",
    "out": "output",
    "ledger": "ledger",
    "verbose": "verbose",
}

CANONICAL_KEYS = sorted(set(CONFIG_KEY_MAP.values()))


def canonical_key(key: str) -> str:
    """Canonical RunConfig field for a key, ConfigError when unknown"""
    norm = normalize(key)
    if norm not in CONFIG_KEY_MAP:
        raise ConfigError(f"Unknown config key '{key}'")
    return CONFIG_KEY_MAP[norm]


def standardize_keys(raw: Dict[str, str]) -> Dict[str, str]:
    """
    Rename every key to its canonical field

    Two spellings of the same field in one source is an error.
    """
    standardized = {}
    for key, value in raw.items():
        canon = canonical_key(key)
        if canon in standardized:
            raise ConfigError(f"Config key '{key}' duplicates '{canon}'")
        standardized[canon] = value
    return standardized


# ===============================
# OUTPUT SCHEMAS
# ===============================
EVOLVE_COLUMNS: List[str] = ["t", "gt", "n_x", "n_y", "n_z", "norm", "entropy"]
EVOLVE_RK4_COLUMNS: List[str] = ["rk4_n_x", "rk4_n_y", "rk4_n_z", "mismatch"]

GISIN_COLUMNS: List[str] = ["phi1", "phi2", "gt", "weighting", "distance"]

COMPARE_COLUMNS: List[str] = [
    "t",
    "gt",
    "boost_n_x",
    "boost_n_y",
    "boost_n_z",
    "boost_lambda",
    "boost_residual",
    "weinberg_n_x",
    "weinberg_n_y",
    "weinberg_n_z",
    "weinberg_lambda",
    "weinberg_residual",
]

CERTIFY_KEYS: List[str] = [
    "flow",
    "samples",
    "t_grid",
    "tol",
    "max_residual",
    "max_lambda_gap",
    "violations",
    "worst_case",
]


def get_schema(command: str, rk4: bool = False) -> List[str]:
    """Documented column list for a command's CSV output"""
    if command == "evolve":
        return EVOLVE_COLUMNS + (EVOLVE_RK4_COLUMNS if rk4 else [])
    if command == "gisin":
        return list(GISIN_COLUMNS)
    if command == "compare":
        return list(COMPARE_COLUMNS)
    if command == "certify":
        return list(CERTIFY_KEYS)
    raise ConfigError(f"Unknown command '{command}'")
