from .config import OracleConfig
from .enumerate import decode_completion, enumerate_completions, required_coefficients
from .properties import SUITES, PropertyOutcome, random_matrix, random_sweep, run_suites
from .result import OracleResult, Witness, project
from .targets import bounded_partitions, candidate_targets
from .verify import Mismatch, MismatchKind, SweepReport, Verification, sweep, verify_predicate
