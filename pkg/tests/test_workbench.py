import csv
import io as stdio
import itertools
import json
import random

import pytest

from srgames import io
from srgames.bench import COLUMNS, NONDETERMINISTIC, bench, make_net, make_srg, nlogn_slope, write_csv
from srgames.cli import EXIT_ERROR, EXIT_FAIL, EXIT_OK, main
from srgames.core import Owner, Srg
from srgames.errors import InfeasibleParameters, ParseError, SchemaError
from srgames.generators import (
    batcher_comparator_count,
    batcher_comparators,
    gen_random_network,
    gen_random_srg,
    gen_sorting_network_srg,
)
from srgames.oracle import enumerate_values
from srgames.retrograde import sorting_method

from support import cycle_trap_game, weak_not_strong_game

# ---------------------------------------------------------------- generators


def test_srg_generator_is_deterministic():
    a = gen_random_srg(5, 4, 6, (1, 3), seed=11)
    b = gen_random_srg(5, 4, 6, (1, 3), seed=11)
    assert io.game_to_dict(a) == io.game_to_dict(b)
    assert io.game_to_dict(a) != io.game_to_dict(gen_random_srg(5, 4, 6, (1, 3), seed=12))


def test_srg_generator_moves_and_payoffs():
    for seed in range(20):
        g = gen_random_srg(6, 6, 8, (1, 3), (-20, 20), seed=seed)
        for v, o in g.owner.items():
            if o is not Owner.TERMINAL:
                assert 1 <= len(g.out_arcs(v))
        pays = list(g.payoff.values())
        assert len(set(pays)) == len(pays)


def test_srg_generator_cover_and_acyclic():
    g = gen_random_srg(30, 20, 60, (1, 4), (1, 1000), seed=3, acyclic=True, cover_terminals=True)
    assert len(g.payoff) == 60
    order = {v: i for i, v in enumerate(g.owner)}
    assert all(order[a] < order[b] for a, b in g.arcs)


def test_srg_generator_infeasible():
    with pytest.raises(InfeasibleParameters):
        gen_random_srg(0, 0, 3)
    with pytest.raises(InfeasibleParameters):
        gen_random_srg(2, 2, 10, payoff_range=(0, 3))
    with pytest.raises(InfeasibleParameters):
        gen_random_srg(1, 0, 5, (1, 1), (0, 100), cover_terminals=True)


def test_network_generator():
    n = gen_random_network(10, 30, (0, 2), seed=4)
    assert n == gen_random_network(10, 30, (0, 2), seed=4)
    assert sorted(c for _, _, c in n.arcs) == list(range(1, 31))
    assert all(a != b and a != n.sink for a, b, _ in n.arcs)
    assert all(0 <= n.k(v) <= 2 for v in n.vertices)


def test_network_generator_infeasible():
    with pytest.raises(InfeasibleParameters):
        gen_random_network(10, 5)
    assert gen_random_network(10, 5, allow_small=True).m == 5
    with pytest.raises(InfeasibleParameters):
        gen_random_network(4, 8, (2, 1))


@pytest.mark.parametrize("n,count", [(2, 1), (4, 5), (8, 19), (16, 63), (32, 191)])
def test_batcher_comparator_count(n, count):
    assert len(batcher_comparators(n)) == count == batcher_comparator_count(n)


@pytest.mark.parametrize("n", [2, 3, 5, 6, 7, 8])
def test_batcher_sorts_every_zero_one_input(n):
    comps = batcher_comparators(n)
    for bits in itertools.product((0, 1), repeat=n):
        xs = list(bits)
        for i, j in comps:
            if xs[i] > xs[j]:
                xs[i], xs[j] = xs[j], xs[i]
        assert xs == sorted(bits)


def test_sorting_network_game_two_wires():
    g, wires = gen_sorting_network_srg(2, [9, 4])
    vals = sorting_method(g).value
    assert [vals[w] for w in wires] == [4, 9]


@pytest.mark.parametrize("n", [4, 8])
def test_sorting_network_game_shape_and_output(n):
    pays = random.Random(n).sample(range(100), n)
    g, wires = gen_sorting_network_srg(n, pays)
    assert len(g.owner) == 2 * len(batcher_comparators(n)) + n
    if n == 4:
        assert [enumerate_values(g)[w] for w in wires] == sorted(pays)
    assert [sorting_method(g).value[w] for w in wires] == sorted(pays)


# ---------------------------------------------------------------------- io


def test_game_round_trip():
    for g in (cycle_trap_game(), weak_not_strong_game(), gen_random_srg(4, 3, 5, seed=2)):
        back = io.loads(io.dumps(g))
        assert isinstance(back, Srg)
        assert io.game_to_dict(back) == io.game_to_dict(g)


def test_network_round_trip(tmp_path):
    n = gen_random_network(6, 12, (0, 2), seed=9)
    path = tmp_path / "net.json"
    io.save(n, path)
    assert io.load_network(path) == n


def test_schema_error_names_the_field():
    doc = json.loads(io.dumps(cycle_trap_game()))
    doc["vertices"][0]["colour"] = "red"
    with pytest.raises(SchemaError) as exc:
        io.loads(json.dumps(doc))
    assert exc.value.field == "vertices[0].colour"
    with pytest.raises(SchemaError) as exc:
        io.loads(json.dumps({"vertices": []}))
    assert exc.value.field == "document.arcs"


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        io.loads('{\n  "vertices": [,]\n}')
    assert exc.value.line == 2 and exc.value.column > 1


def test_solution_round_trip():
    g = weak_not_strong_game()
    sol = sorting_method(g)
    back = io.solution_from_dict(json.loads(json.dumps(io.solution_to_dict(sol))), g)
    assert back.value == sol.value
    assert back.max_choice == sol.max_choice and back.min_choice == sol.min_choice


def test_dot_output_parses():
    pydot = pytest.importorskip("pydot")
    (graph,) = pydot.graph_from_dot_data(io.to_dot(cycle_trap_game()))
    shapes = {n.get_name().strip('"'): n.get_attributes()["shape"] for n in graph.get_nodes()}
    assert shapes == {"A": "box", "B": "box", "t": "circle"}
    assert len(graph.get_edges()) == len(cycle_trap_game().arcs)
    (graph,) = pydot.graph_from_dot_data(io.to_dot(gen_random_network(4, 6, seed=1)))
    assert len(graph.get_edges()) == 6


# ------------------------------------------------------------------- bench


def test_bench_csv_columns_and_determinism():
    suite = {"kind": "srg", "sizes": [64, 128], "seeds": [0, 1]}
    rows = bench(suite)
    assert len(rows) == 2 * 2 * 5
    buf = stdio.StringIO()
    write_csv(rows, buf)
    reader = csv.DictReader(stdio.StringIO(buf.getvalue()))
    assert tuple(reader.fieldnames) == COLUMNS
    strip = lambda rs: [{k: v for k, v in r.items() if k not in NONDETERMINISTIC} for r in rs]
    assert strip(rows) == strip(bench(suite))
    assert all(r["comparisons"] == 0 for r in rows if r["algo"] == "sorted")


def test_bench_networks():
    rows = bench({"kind": "net", "sizes": [256], "seeds": [0]})
    assert {r["algo"] for r in rows} == {"strong", "sorted", "loglog", "logstar"}
    assert all(r["m"] == 256 for r in rows)


def test_bench_rejects_unknown_algorithm():
    with pytest.raises(ValueError):
        bench({"kind": "srg", "sizes": [8], "algorithms": ["bogo"]})


def test_sort_comparisons_scale_as_n_log_n():
    rows = bench({"kind": "srg", "sizes": [2**10, 2**12, 2**14], "algorithms": ["sort"]})
    assert 0.95 <= nlogn_slope(rows) <= 1.1


def test_bench_loglog_linear():
    rows = bench({"kind": "srg", "sizes": [2**12], "seeds": [0, 1], "algorithms": ["loglog"]})
    assert all(r["comparisons"] <= 30 * r["n"] for r in rows)


def test_bench_instances_are_deterministic():
    assert io.game_to_dict(make_srg(100, 5)) == io.game_to_dict(make_srg(100, 5))
    assert make_net(100, 5) == make_net(100, 5)


# --------------------------------------------------------------------- cli


def write(path, obj):
    io.save(obj, path)
    return str(path)


def test_cli_solve_and_verify(tmp_path, capsys):
    game = write(tmp_path / "g.json", gen_random_srg(3, 3, 4, seed=5))
    sol = str(tmp_path / "s.json")
    assert main(["solve-srg", game, "--ledger", "-o", sol]) == EXIT_OK
    assert "comparisons" in json.loads(open(sol).read())
    assert main(["verify", game, sol]) == EXIT_OK
    out = capsys.readouterr().out
    assert json.loads(out)["ok"] is True


def test_cli_verify_failure_exit_code(tmp_path, capsys):
    g = cycle_trap_game()
    game = write(tmp_path / "g.json", g)
    bad = {"values": [{"id": "A", "value": 1}, {"id": "B", "value": 1}, {"id": "t", "value": 1}],
           "choices": [{"id": "A", "arc": 0}, {"id": "B", "arc": 2}]}
    sol = tmp_path / "bad.json"
    sol.write_text(json.dumps(bad))
    assert main(["verify", game, str(sol)]) == EXIT_FAIL
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["ok"] is False and verdict["witness"]["vertex"] == "A"


def test_cli_weak_solvers(tmp_path, capsys):
    g = gen_random_srg(20, 10, 30, (1, 3), (-100, 100), seed=2, cover_terminals=True)
    game = write(tmp_path / "g.json", g)
    truth = sorting_method(g).value[g.start]
    for algo in ("sort", "paterson", "loglog", "logstar"):
        assert main(["solve-srg", game, "--mode", "weak", "--algo", algo]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["value"] == truth


def test_cli_errors(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    assert main(["solve-srg", str(broken)]) == EXIT_ERROR
    assert main(["solve-srg", str(tmp_path / "missing.json")]) == EXIT_ERROR
    assert "line 1" in capsys.readouterr().err


def test_cli_gen_reduce_net_oracle(tmp_path, capsys):
    game = str(tmp_path / "g.json")
    assert main(["gen", "--kind", "srg", "--payoffs", "1", "20", "--seed", "3", "-o", game]) == EXIT_OK
    net = str(tmp_path / "n.json")
    assert main(["reduce", game, "-o", net]) == EXIT_OK
    assert main(["solve-net", net, "--mode", "weak", "--algo", "loglog"]) == EXIT_OK
    assert main(["oracle", net]) == EXIT_OK
    assert main(["dot", game]) == EXIT_OK
    assert "digraph" in capsys.readouterr().out


def test_cli_bench(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--sizes", "64", "--algos", "sort", "loglog", "-o", str(out)]) == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert [r["algo"] for r in rows] == ["sort", "loglog"]
