"""3-SAT -> Max 2-SAT -> QUBO/Ising toolkit (python bindings)."""

import json as _json

from ._core import (
    CnfFormula,
    Max2SatFormula,
    QuboModel,
    IsingModel,
    SatqError,
    ParseError,
    LengthMismatch,
    NotStrict3Sat,
    Infeasible,
    InvalidParam,
    parse_dimacs,
    parse_dimacs_file,
    write_dimacs,
    write_max2sat,
    generate_random_3sat,
    evaluate_cnf,
    gadget_convert,
    count_violated,
    build_qubo,
    build_ising,
    with_optimal_ancillas,
    direct_counts,
    retrieve_counts_d0,
    retrieve_counts_d1,
    retrieve_counts_mixed,
    preset_names,
)
from ._core import bench as _bench
from ._core import solve as _solve

__version__ = "0.1.0"


def solve(formula, timing=False, **params):
    """Solve a converted formula; keyword args are SolverParams fields
    (method, seed, iteration_budget, ...). Returns the report as a dict."""
    return _json.loads(_solve(formula, _json.dumps(params), timing))


def bench(spec):
    """Run an experiment spec (dict). Returns (rows_csv, summary) where
    summary is a dict {set: {solver: {min, q1, median, q3, max}}}."""
    rows_csv, summary_json = _bench(_json.dumps(spec))
    return rows_csv, _json.loads(summary_json)


__all__ = [
    "CnfFormula",
    "Max2SatFormula",
    "QuboModel",
    "IsingModel",
    "SatqError",
    "ParseError",
    "LengthMismatch",
    "NotStrict3Sat",
    "Infeasible",
    "InvalidParam",
    "parse_dimacs",
    "parse_dimacs_file",
    "write_dimacs",
    "write_max2sat",
    "generate_random_3sat",
    "evaluate_cnf",
    "gadget_convert",
    "count_violated",
    "build_qubo",
    "build_ising",
    "with_optimal_ancillas",
    "direct_counts",
    "retrieve_counts_d0",
    "retrieve_counts_d1",
    "retrieve_counts_mixed",
    "preset_names",
    "solve",
    "bench",
]
