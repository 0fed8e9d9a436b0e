# Ranges of the reference table of p_{-k}(n).
TABLE_K_RANGE = (2, 10)
TABLE_N_RANGE = (1, 11)

# Exception parameters as stated alongside each inequality.
# Scans attach the in-range subset of these to their report and flag any
# difference; they never decide what counts as an exception.
CLAIMED_EXCEPTIONS = {
    "theorem2": [
        {"a": 1, "b": 1, "k": 2},
        {"a": 2, "b": 1, "k": 2},
        {"a": 3, "b": 1, "k": 2},
        {"a": 1, "b": 1, "k": 3},
    ],
    "bo": [],
    "lemma-key": [
        {"c": 1, "d": 1, "k": 2},
    ],
    "lemma-g": [
        {"a": 1, "k": 2},
        {"a": 1, "k": 3},
    ],
    "lemma-ab": [
        {"a": 1, "b": 1, "k": 2},
        {"a": 1, "b": 1, "k": 3},
    ],
    "conjecture": [
        {"k": 2, "n": 6, "m": 4},
    ],
    "logconcave": [],
    "two-step": [],
    "doubling": [],
    "halving": [],
}

# Equal instances named for the product inequality.
CLAIMED_EQUALITIES = {
    "theorem2": [
        {"a": 2, "b": 1, "k": 2},
        {"a": 3, "b": 1, "k": 2},
        {"a": 1, "b": 1, "k": 3},
    ],
}

SCAN_NAMES = [
    "theorem2",
    "bo",
    "lemma-key",
    "lemma-g",
    "lemma-ab",
    "conjecture",
    "logconcave",
    "logconcave-colored",
    "two-step",
    "doubling",
    "halving",
]

MAP_NAMES = ["f", "g"]
OUTPUT_FORMATS = ["text", "csv", "json"]

# Default ranges per scan (used when a flag is omitted).
SCAN_DEFAULTS = {
    "theorem2": {"k_max": 8, "sum_max": 60},
    "bo": {"sum_max": 100},
    "lemma-key": {"k_max": 4, "sum_max": 14},
    "lemma-g": {"k_max": 4, "a_max": 12},
    "lemma-ab": {"k_max": 4, "sum_max": 14},
    "conjecture": {"k_max": 10, "n_max": 40},
    "logconcave": {"n_max": 2000},
    "logconcave-strong": {"n_max": 400},
    "logconcave-colored": {"k_max": 10, "n_max": 40},
    "two-step": {"n_max": 1000},
    "doubling": {"n_max": 1000},
    "halving": {"k_max": 6, "s_max": 20},
}

CONVOLUTION_DEFAULTS = {"k_min": 2, "k_max": 6, "n_max": 50}
BASE_IDENTITY_K_RANGE = (2, 10)

# Smallest useful value of each scan bound; below it the grid is empty.
SCAN_MINIMUMS = {"k_max": 2, "sum_max": 2, "a_max": 1, "n_max": 2, "s_max": 4, "m_max": 2}
