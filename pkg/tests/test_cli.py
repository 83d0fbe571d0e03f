"""CLI surface: subcommands, formats, exit codes."""

import csv
import io

import pytest

from atsep.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main
from atsep.fileformat import format_graph, load_graph, save_graph
from atsep.graph import build_graph

from conftest import cycle, path


def write(tmp_path, name, G):
    p = tmp_path / name
    save_graph(G, p)
    return str(p)


def test_gen_round_trip(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen", "--n", "8", "--r", "1", "--seed", "7", "--out", str(out)]) == EXIT_OK
    G = load_graph(out)
    assert G.n == 8 and G.m == 9


def test_gen_deterministic(tmp_path, capsys):
    main(["gen", "--n", "15", "--r", "2", "--seed", "4"])
    first = capsys.readouterr().out
    main(["gen", "--n", "15", "--r", "2", "--seed", "4"])
    assert capsys.readouterr().out == first


def test_gen_seed_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ATS_SEED", "4")
    # parser defaults are bound at build time, so rebuild under the env var
    from atsep.cli import build_parser

    args = build_parser().parse_args(["gen", "--n", "15", "--r", "2"])
    assert args.seed == 4


def test_separate_tree_prints_centroid(tmp_path, capsys):
    f = write(tmp_path, "t.txt", path(9))
    assert main(["separate", f]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "5"  # 1-based centroid of a 9-path
    assert out[1] == "size 1"


def test_separate_c6(tmp_path, capsys):
    f = write(tmp_path, "c6.txt", cycle(6))
    assert main(["separate", f]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[1].startswith("size ")
    assert int(out[1].split()[1]) >= 2


def test_separate_disconnected_is_input_error(tmp_path, capsys):
    f = write(tmp_path, "d.txt", build_graph(4, [(0, 1), (2, 3)]))
    assert main(["separate", f]) == EXIT_INPUT


def test_separate_trace(tmp_path):
    f = write(tmp_path, "c6.txt", cycle(6))
    trace = tmp_path / "trace.txt"
    assert main(["separate", f, "--trace", str(trace)]) == EXIT_OK
    text = trace.read_text()
    assert text.startswith("stage input\n")
    assert "stage separator\n" in text


def test_separate_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("p 2 1\ne 1 5\n")
    assert main(["separate", str(bad)]) == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_verify_pass_and_fail(tmp_path, capsys):
    f = write(tmp_path, "c6.txt", cycle(6))
    assert main(["verify", f, "1 4"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("PASS")
    assert main(["verify", f, "1"]) == EXIT_VERIFY
    assert capsys.readouterr().out.startswith("FAIL")


def test_verify_separator_file(tmp_path, capsys):
    f = write(tmp_path, "c6.txt", cycle(6))
    sep = tmp_path / "sep.txt"
    sep.write_text("1 4\n")
    assert main(["verify", f, "--separator-file", str(sep)]) == EXIT_OK


def test_oracle_c6(tmp_path, capsys):
    f = write(tmp_path, "c6.txt", cycle(6))
    assert main(["oracle", f]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2: 1 2"


def test_lt_grid(tmp_path, capsys):
    from atsep.gen import grid_graph

    f = write(tmp_path, "grid.txt", grid_graph(4, 4))
    assert main(["lt", f]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[1].startswith("size ")


def test_bench_csv(tmp_path, capsys):
    assert (
        main(["bench", "--n", "30", "--r", "0,2", "--seeds", "2", "--seed-base", "5"])
        == EXIT_OK
    )
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["n", "r", "seed", "sep_size", "max_frac", "repairs", "wall_ns"]
    assert len(rows) == 1 + 4
    assert [r[:3] for r in rows[1:]] == sorted(r[:3] for r in rows[1:])


def test_bench_deterministic_sizes(tmp_path, capsys):
    args = ["bench", "--n", "40", "--r", "3", "--seeds", "2"]
    main(args)
    first = [r.split(",")[3] for r in capsys.readouterr().out.splitlines()[1:]]
    main(args)
    second = [r.split(",")[3] for r in capsys.readouterr().out.splitlines()[1:]]
    assert first == second


def test_unknown_subcommand_is_input_error(capsys):
    assert main(["frobnicate"]) == EXIT_INPUT
