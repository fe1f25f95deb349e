"""Horn MaxSAT toolkit: dual-rail encodings, MaxSAT solvers and PHP certificates."""

from ._hornmax import (
    Cnf,
    Encoding,
    Error,
    NoWitness,
    NotHorn,
    ParseError,
    Wcnf,
    bench_csv,
    certify_core_guided,
    certify_mxres,
    decide,
    encode,
    gen_comb,
    gen_php,
    gen_urq,
    horn_solve,
    loglog_slope,
    min_hitting_set,
    parse_cnf,
    parse_wcnf,
    restore_p,
    solve_maxsat,
)

__all__ = [
    "Cnf",
    "Encoding",
    "Error",
    "NoWitness",
    "NotHorn",
    "ParseError",
    "Wcnf",
    "bench_csv",
    "certify_core_guided",
    "certify_mxres",
    "decide",
    "encode",
    "gen_comb",
    "gen_php",
    "gen_urq",
    "horn_solve",
    "loglog_slope",
    "min_hitting_set",
    "parse_cnf",
    "parse_wcnf",
    "restore_p",
    "solve_maxsat",
]
