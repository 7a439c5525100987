import pytest

import satqubo as sq


def test_pipeline_roundtrip():
    f = sq.generate_random_3sat(10, 20, seed=1)
    assert f.num_vars == 10
    assert f.num_clauses == 20
    assert f.strict_3sat

    g = sq.gadget_convert(f)
    assert g.num_vars == 30
    assert g.num_clauses == 200
    assert g.num_original_clauses == 20

    q = sq.build_qubo(g)
    h = sq.build_ising(g)
    x = [0] * g.num_vars
    assert q.objective(x) == 2 * sq.count_violated(g, x)
    assert h.energy([-1] * g.num_vars) == sq.count_violated(g, x)

    text = sq.write_dimacs(f)
    assert sq.parse_dimacs(text).num_clauses == 20
    assert "c max2sat orig_vars=10 orig_clauses=20" in sq.write_max2sat(g)


def test_solve_report_and_determinism():
    g = sq.gadget_convert(sq.parse_dimacs("p cnf 4 2\n1 2 3 0\n2 3 4 0\n"))
    rep = sq.solve(g, method="ga_ls", seed=1, iteration_budget=1000)
    assert rep["original_violated"] == 0
    assert rep["objective"] == 2 * rep["max2sat_violated"]
    assert rep["retrieval"]["agrees"] is True
    assert "wall_ms" not in rep
    assert rep == sq.solve(g, method="ga_ls", seed=1, iteration_budget=1000)
    assert "wall_ms" in sq.solve(g, timing=True, method="sa", iteration_budget=100)


def test_retrieval_theorems():
    exact = sq.retrieve_counts_d0(35, 5)
    assert exact["exact"]
    assert exact["candidates"] == [(0, 5)]

    amb = sq.retrieve_counts_d1(18, 3)
    assert not amb["exact"]
    assert amb["candidates"] == [(0, 3), (1, 2)]

    fixed = sq.retrieve_counts_d1(18, 3, case1=1)
    assert fixed["exact"]
    assert fixed["candidates"] == [(1, 2)]

    mixed = sq.retrieve_counts_mixed(13, 2, 0, 0)
    assert mixed["exact"]
    assert mixed["candidates"] == [(1, 1)]


def test_oracle_and_ancillas():
    g = sq.gadget_convert(sq.parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n"))
    x = sq.with_optimal_ancillas(g, [1, 1, 0])
    counts = sq.direct_counts(g, x)
    assert counts["violated"] == 0
    assert counts["satisfied"] == 2
    assert counts["observation"]["groups_d0"] + counts["observation"]["groups_d1"] == 2


def test_errors():
    with pytest.raises(sq.ParseError):
        sq.parse_dimacs("p cnf x\n")
    with pytest.raises(sq.Infeasible):
        sq.retrieve_counts_d0(29, 5)
    with pytest.raises(sq.NotStrict3Sat):
        sq.gadget_convert(sq.parse_dimacs("p cnf 3 1\n1 2 0\n", strict=False))
    with pytest.raises(sq.InvalidParam):
        sq.solve(sq.gadget_convert(sq.generate_random_3sat(5, 5, seed=1)), method="nope")
    assert issubclass(sq.Infeasible, sq.SatqError)


def test_bench_spec():
    rows_csv, summary = sq.bench(
        {
            "name": "smoke",
            "generator": {"n": 6, "rho_grid": [1.0], "instances_per_point": 2, "seed": 1},
            "solvers": [{"method": "tabu", "iteration_budget": 30}],
            "trials_per_instance": 1,
        }
    )
    lines = rows_csv.strip().splitlines()
    assert lines[0].startswith("instance,n_vars,n_clauses,density,solver")
    assert len(lines) == 3
    assert summary["smoke"]["tabu"]["min"] >= 0
    assert sorted(summary["smoke"]["tabu"]) == ["max", "median", "min", "q1", "q3"]


def test_preset_names():
    assert "paper-bsb" in sq.preset_names()
