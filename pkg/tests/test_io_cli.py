from __future__ import annotations

import io
import json
import re
import subprocess
import sys

import pytest

from outerdraw.errors import InvalidInput
from outerdraw.generators import gen_nested_family, gen_random_maximal_outerplanar
from outerdraw.io_cli import (
    cli_main,
    drawing_from_data,
    drawing_to_data,
    dumps,
    fragment_from_data,
    graph_from_data,
    graph_to_data,
    nested_from_data,
    parse_graph_text,
    render_svg,
)
from outerdraw.layout import draw, naive_nested_draw
from outerdraw.validation import check_strip_certificate

from fragments import faults


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = cli_main(argv, io.StringIO(stdin), out, err)
    return code, out.getvalue(), err.getvalue()


def test_json_round_trip_is_exact():
    d = draw(gen_random_maximal_outerplanar(12, 3).graph)
    back = drawing_from_data(json.loads(dumps(drawing_to_data(d))))
    assert back.positions == d.positions
    assert set(back.edges) == set(d.edges)
    assert dumps(drawing_to_data(back)) == dumps(drawing_to_data(d))


def test_graph_formats_agree():
    g = graph_from_data(parse_graph_text("4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n"))
    g2 = graph_from_data(parse_graph_text(dumps(graph_to_data(g))))
    assert g.vertex_count == g2.vertex_count and set(g.edges) == set(g2.edges)


@pytest.mark.parametrize("text", ["", "3", "2 2\n0 1\n", "{bad", '{"n": 2}', "x y"])
def test_bad_graph_text(text):
    with pytest.raises(InvalidInput):
        parse_graph_text(text)


def test_nested_round_trip():
    eg = gen_nested_family(2)
    data = json.loads(dumps(graph_to_data(eg.graph, eg)))
    back = nested_from_data(data, graph_from_data(data))
    assert back.face_assignment == eg.face_assignment


def test_svg_rhombus(rhombus):
    svg = render_svg(rhombus)
    assert svg.count("<line") == 4 and svg.count("<circle") == 4
    assert svg == render_svg(rhombus)
    assert re.search(r'viewBox="[-0-9. ]+"', svg)


def test_fragment_round_trip():
    d = draw(gen_random_maximal_outerplanar(9, 2).graph)
    for fr in d.fragments:
        back = fragment_from_data(json.loads(dumps(fr.to_json())))
        assert check_strip_certificate(back).ok
        assert back.positions == fr.positions
    fr, _ = faults()["iv"]
    assert check_strip_certificate(fragment_from_data(json.loads(dumps(fr.to_json())))).failed() == ["iv"]


def test_cli_pipeline(tmp_path):
    g, dj, fj, svg = (tmp_path / x for x in ("g.json", "d.json", "f.json", "d.svg"))
    assert run(["generate", "--family", "random", "--n", "10", "--seed", "1", "-o", str(g)])[0] == 0
    code, _, err = run(["draw", str(g), "-o", str(dj), "--fragments", str(fj)])
    assert code == 0 and "crossings 0" in err
    code, out, _ = run(["validate", "--drawing", str(dj), "--strip-cert", str(fj)])
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(["ratio", "--drawing", str(dj)])
    assert code == 0 and 1 <= float(out) < 2
    assert run(["draw", str(g), "--format", "svg", "-o", str(svg)])[0] == 0
    assert "<svg" in svg.read_text() and svg.read_text().rstrip().endswith("</svg>")
    code, out, _ = run(["decompose", str(g)])
    assert code == 0 and json.loads(out)


def test_cli_stdin_text_format():
    code, out, _ = run(["draw", "--no-check"], "3 3\n0 1\n1 2\n0 2\n")
    assert code == 0 and len(json.loads(out)["vertices"]) == 3


def test_cli_exit_codes(tmp_path):
    k4 = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
    assert run(["draw"], k4)[0] == 2
    assert run(["draw"], "nonsense")[0] == 1
    assert run(["nosuchcommand"])[0] == 1
    assert run(["draw", "--root", "0", "1"], "4 4\n0 1\n1 2\n2 3\n3 0\n")[0] == 0
    assert run(["draw", "--root", "0", "2"], "4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n")[0] == 1
    bowtie = {"vertices": [{"id": i, "x": x, "y": y} for i, (x, y) in enumerate([(0, 0), (1, 1), (1, 0), (0, 1)])],
              "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]}
    code, _, err = run(["ratio"], json.dumps(bowtie))
    assert code == 3 and "crossing" in err
    assert run(["validate"], json.dumps(bowtie))[0] == 3
    frs = tmp_path / "bad.json"
    frs.write_text(dumps([faults()["iii"][0].to_json()]))
    ok = tmp_path / "ok.json"
    ok.write_text(dumps(drawing_to_data(draw(gen_random_maximal_outerplanar(6, 0).graph))))
    assert run(["validate", "--drawing", str(ok), "--strip-cert", str(frs)])[0] == 3


def test_cli_infeasible_exit_code(tmp_path):
    g = tmp_path / "fan.json"
    run(["generate", "--family", "fan-pendant", "--k", "8", "-o", str(g)])
    fj = tmp_path / "f.json"
    code, _, err = run(["draw", str(g), "--fragments", str(fj)])
    assert code == 4 and "error" in err
    assert all(check_strip_certificate(fragment_from_data(x)).ok for x in json.loads(fj.read_text()))


def test_cli_audit(tmp_path):
    g, dj = tmp_path / "n.json", tmp_path / "d.json"
    run(["generate", "--family", "nested", "--n", "3", "-o", str(g)])
    assert run(["draw", str(g), "--nested", "-o", str(dj)])[0] == 0
    code, out, err = run(["audit", "--drawing", str(dj), "--graph", str(g)])
    rep = json.loads(out)
    assert code == 0 and len(rep["steps"]) >= 1 and "steps" in err
    code, out, _ = run(["validate", "--drawing", str(dj), "--embedding", str(g)])
    assert code == 0
    g2, outer = tmp_path / "n2.json", tmp_path / "o.json"
    run(["generate", "--family", "nested", "--n", "2", "-o", str(g2)])
    assert run(["draw", str(g2), "-o", str(outer)])[0] == 0
    assert run(["audit", "--drawing", str(outer), "--graph", str(g2)])[0] == 3


def test_cli_deterministic_bytes(tmp_path):
    outs = []
    for _ in range(2):
        code, out, _ = run(["draw", "--format", "svg"], dumps(graph_to_data(gen_random_maximal_outerplanar(15, 4).graph)))
        outs.append(out)
    assert outs[0] == outs[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "outerdraw", "draw", "--no-check"], input="3 3\n0 1\n1 2\n0 2\n",
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and '"vertices"' in r.stdout
