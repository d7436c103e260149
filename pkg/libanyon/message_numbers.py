# -------------------------------
# -- CLI Exit Codes -------------
# -------------------------------

EXIT_OK = 0  # Analysis ran; a contextual verdict is data, not a failure
EXIT_CHECK_FAILED = 1  # A check failed or the analysis could not proceed
EXIT_INPUT_ERROR = 2  # Usage error, malformed file, unknown builtin, parse error

# --------------------------------------
# -- Contextuality Classes -------------
# --------------------------------------

NONCONTEXTUAL = "noncontextual"
CONTEXTUAL = "contextual"  # No global distribution reproduces the tables
LOGICALLY_CONTEXTUAL = "logically_contextual"  # Some support event has no consistent extension
STRONGLY_CONTEXTUAL = "strongly_contextual"  # No global assignment is consistent with the support

# Ordered from weakest to strongest
VERDICT_ORDER = [NONCONTEXTUAL, CONTEXTUAL, LOGICALLY_CONTEXTUAL, STRONGLY_CONTEXTUAL]

verdict_strings = {
    NONCONTEXTUAL: "A global distribution over assignments reproduces every context",
    CONTEXTUAL: "LP infeasible: no global distribution reproduces the tables",
    LOGICALLY_CONTEXTUAL: "A possible local outcome extends to no consistent global assignment",
    STRONGLY_CONTEXTUAL: "No global assignment is consistent with the support",
}

# --------------------------------------
# -- Markov Trace Normalizations -------
# --------------------------------------

NORM_UNKNOT = "unknot"  # Divide by d_leaf so the unknot evaluates to 1
NORM_MARKOV = "markov"  # Divide by d_leaf ** n_strands
NORM_GLOBAL = "global"  # Divide by the sum of squared quantum dimensions
NORM_NONE = "none"

TRACE_NORMALIZATIONS = [NORM_UNKNOT, NORM_MARKOV, NORM_GLOBAL, NORM_NONE]
