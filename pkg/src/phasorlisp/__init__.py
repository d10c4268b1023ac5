"""Vector-symbolic Lisp: every value is a complex phasor hypervector.

The package layers four pieces: a phasor algebra (bind, unbind,
superpose, similarity), residue-coded integers with carry-free modular
arithmetic and resonator decoding, a cleanup memory holding symbols and
role-filler chunks, and a small Lisp evaluated entirely over vectors.
A benchmark module compares addition cost against nested-list numerals.
"""

from .bench import (
    BenchResult,
    flatness_ratio,
    growth_exponent,
    list_add,
    list_decode,
    list_encode,
    run_benchmark,
    write_csv,
    write_plot_data,
)
from .errors import (
    ArityError,
    ConfigError,
    DanglingPointerError,
    DecodeError,
    DimensionError,
    EvalError,
    InvalidModuliError,
    LispTypeError,
    MemoryEmptyError,
    NoInverseError,
    NoMatchError,
    NotApplicableError,
    ParseError,
    PhasorError,
    SessionIOError,
    UnboundSymbolError,
)
from .fhrr import (
    bind,
    identity,
    new_rng,
    normalize,
    phase_angles,
    random_symbol,
    similarity,
    superpose,
    unbind,
)
from .lisp import Config, EncodedValue, Resolved, Session
from .memory import CleanupMemory, Environment, RecallResult
from .reader import (
    Atom,
    IntLiteral,
    ListExpr,
    SExpr,
    Token,
    parse_one,
    parse_program,
    tokenize,
)
from .residue import (
    ModuliSet,
    ResidueCodebook,
    add_bind,
    crt_reconstruct,
    decode_residue,
    encode_residue,
    load_codebook,
    make_codebook,
    mod_inverse,
    mul_bind,
    negate,
    save_codebook,
)
from .resonator import FactorCodebook, ResonatorState, cleanup, factorize

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Config",
    "Session",
    "EncodedValue",
    "Resolved",
    "CleanupMemory",
    "Environment",
    "RecallResult",
    "ModuliSet",
    "ResidueCodebook",
    "FactorCodebook",
    "ResonatorState",
    "BenchResult",
    "SExpr",
    "Atom",
    "IntLiteral",
    "ListExpr",
    "Token",
    "parse_one",
    "parse_program",
    "tokenize",
    "bind",
    "unbind",
    "superpose",
    "normalize",
    "similarity",
    "random_symbol",
    "identity",
    "phase_angles",
    "new_rng",
    "make_codebook",
    "encode_residue",
    "decode_residue",
    "add_bind",
    "mul_bind",
    "negate",
    "mod_inverse",
    "crt_reconstruct",
    "save_codebook",
    "load_codebook",
    "cleanup",
    "factorize",
    "list_encode",
    "list_decode",
    "list_add",
    "run_benchmark",
    "write_csv",
    "write_plot_data",
    "growth_exponent",
    "flatness_ratio",
    "PhasorError",
    "DimensionError",
    "InvalidModuliError",
    "DecodeError",
    "NoInverseError",
    "MemoryEmptyError",
    "NoMatchError",
    "DanglingPointerError",
    "ParseError",
    "EvalError",
    "UnboundSymbolError",
    "NotApplicableError",
    "ArityError",
    "LispTypeError",
    "ConfigError",
    "SessionIOError",
]
