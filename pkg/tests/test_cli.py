import json

import pytest

from bandlink import load_cmap, parse_trace, validate
from bandlink.cli import main
from helpers import FIXTURES

TRIANGLE = str(FIXTURES / "triangle.cmap")
CURL = str(FIXTURES / "curl.cmap")
TORUS = str(FIXTURES / "torus.cmap")
CHAIN3 = str(FIXTURES / "chain3.json")
CURLBAND = str(FIXTURES / "curlband.json")


@pytest.fixture()
def built(tmp_path):
    """Build the 3-chain once per test: (map path, provenance path)."""
    out = tmp_path / "dl.cmap"
    prov = tmp_path / "dl.prov.json"
    code = main(["build-band", CHAIN3, "-o", str(out), "--provenance", str(prov)])
    assert code == 0
    return str(out), str(prov)


class TestValidate:
    def test_triangle(self, capsys):
        assert main(["validate", TRIANGLE]) == 0
        assert capsys.readouterr().out == "V=3 E=3 F=2 g=0\n"

    def test_band_spec_shows_components(self, capsys):
        assert main(["validate", CHAIN3]) == 0
        assert capsys.readouterr().out == "V=6 E=12 F=8 g=0 n=3\n"

    def test_torus(self, capsys):
        assert main(["validate", TORUS]) == 0
        assert capsys.readouterr().out == "V=1 E=2 F=1 g=1\n"

    def test_missing_file(self, capsys):
        assert main(["validate", "no-such.cmap"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_corrupt_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.cmap"
        bad.write_text("cmap v1\ndarts 2\nalpha 2 1\nsigma 2 2\n")
        assert main(["validate", str(bad)]) == 2
        assert "sigma" in capsys.readouterr().err


class TestFacesAndStrands:
    def test_faces(self, capsys):
        assert main(["faces", TRIANGLE]) == 0
        assert capsys.readouterr().out == (
            "face 1: darts 1 3 2 vertices 1 3 2\n"
            "face 2: darts 4 6 5 vertices 1 2 3\n"
        )

    def test_faces_with_provenance(self, built, capsys):
        path, prov = built
        assert main(["faces", path, "--provenance", prov]) == 0
        out = capsys.readouterr().out
        assert out.count("origin=") == 2

    def test_strands(self, capsys):
        assert main(["strands", CURL]) == 0
        assert capsys.readouterr().out == "strand 1: 1 2 4 3\n"


class TestBuildBand:
    def test_reports_counts(self, built, capsys):
        assert main(["build-band", CHAIN3]) == 0
        assert capsys.readouterr().out == "n=3 crossings=6\n"

    def test_written_map_revalidates(self, built, capsys):
        path, prov = built
        m = load_cmap(path)
        assert validate(m).ok
        doc = json.loads(open(prov).read())
        assert doc["format"] == "bandlink-provenance v1"
        assert doc["n"] == 3

    def test_bad_spec(self, tmp_path, capsys):
        spec = tmp_path / "bad.json"
        spec.write_text("{}")
        assert main(["build-band", str(spec)]) == 2


class TestPercolate:
    def test_full_closure(self, built, capsys):
        path, _ = built
        assert main(["percolate", path, "--manual", "1,3"]) == 0
        assert capsys.readouterr().out == "percolates=true colored=6/6\n"

    def test_partial_closure_exits_three(self, built, capsys):
        path, _ = built
        assert main(["percolate", path]) == 3
        assert capsys.readouterr().out == "percolates=false colored=0/6\n"

    def test_unknown_vertex(self, capsys):
        assert main(["percolate", TRIANGLE, "--manual", "9"]) == 2

    def test_trace_files(self, built, tmp_path, capsys):
        path, _ = built
        text_path = tmp_path / "trace.txt"
        json_path = tmp_path / "trace.json"
        assert main(["percolate", path, "--manual", "1 3", "--trace", str(text_path)]) == 0
        assert main(["percolate", path, "--manual", "1 3", "--trace", str(json_path)]) == 0
        text_trace = parse_trace(text_path.read_text())
        json_trace = parse_trace(json_path.read_text())
        assert text_trace == json_trace
        assert text_trace.manual == (1, 3)


class TestHull:
    def test_exact_default(self, built, capsys):
        path, _ = built
        assert main(["hull", path]) == 0
        assert capsys.readouterr().out == "h=2 method=exact witness=1 3\n"

    def test_constructive_via_provenance(self, built, capsys):
        path, prov = built
        assert main(["hull", path, "--constructive", "--provenance", prov]) == 0
        assert capsys.readouterr().out == "h=2 method=constructive witness=1 3\n"

    def test_constructive_via_spec(self, capsys):
        assert main(["hull", CURLBAND, "--constructive"]) == 0
        assert capsys.readouterr().out == "h=1 method=constructive witness=2\n"

    def test_constructive_needs_band_context(self, built, capsys):
        path, _ = built
        assert main(["hull", path, "--constructive"]) == 2
        assert "provenance" in capsys.readouterr().err

    def test_empty_witness_prints_dash(self, capsys):
        assert main(["hull", CURL]) == 0
        assert capsys.readouterr().out == "h=0 method=exact witness=-\n"

    def test_budget_exit(self, built, capsys):
        path, _ = built
        assert main(["hull", path, "--budget", "3"]) == 4
        assert "budget" in capsys.readouterr().err

    def test_flags_are_exclusive(self, built, capsys):
        path, _ = built
        assert main(["hull", path, "--exact", "--constructive"]) == 1


class TestReport:
    def test_conclusive(self, built, capsys):
        path, prov = built
        assert main(["report", path, "--provenance", prov]) == 0
        assert capsys.readouterr().out == (
            "n=3\n"
            "lower=2 upper=2 witness=1 3 method=constructive\n"
            "tunnel=2 genus=3 rank=3\n"
        )

    def test_exact_flag(self, built, capsys):
        path, prov = built
        assert main(["report", path, "--provenance", prov, "--exact"]) == 0
        assert "method=exact" in capsys.readouterr().out

    def test_gap_exits_three(self, capsys):
        assert main(["report", TRIANGLE]) == 3
        out = capsys.readouterr().out
        assert out.endswith("gap=2 no conclusion\n")

    def test_json_output(self, built, capsys):
        path, prov = built
        assert main(["report", path, "--provenance", prov, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["conclusion"] == {"t": 2, "genus": 3, "rank": 3}


class TestRender:
    def test_stdout_svg(self, capsys):
        assert main(["render", TRIANGLE]) == 0
        assert capsys.readouterr().out.startswith("<svg")

    def test_file_output_with_trace(self, built, tmp_path, capsys):
        path, prov = built
        trace = tmp_path / "t.json"
        assert main(["percolate", path, "--manual", "1 3", "--trace", str(trace)]) == 0
        svg = tmp_path / "out.svg"
        assert (
            main(
                ["render", path, "--provenance", prov, "--trace", str(trace), "-o", str(svg)]
            )
            == 0
        )
        body = svg.read_text()
        assert body.count("#f4a261") == 2
        assert "#c0392b" in body

    def test_torus_rejected(self, capsys):
        assert main(["render", TORUS]) == 2
        assert "genus" in capsys.readouterr().err


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 1

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_unknown_flag(self, capsys):
        assert main(["validate", TRIANGLE, "--frob"]) == 1


class TestDeterminism:
    COMMANDS = [
        ["validate", TRIANGLE],
        ["faces", TRIANGLE],
        ["strands", TRIANGLE],
        ["build-band", CHAIN3],
        ["hull", CHAIN3],
        ["hull", CHAIN3, "--constructive"],
        ["report", CHAIN3, "--json"],
        ["render", TRIANGLE],
    ]

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
    def test_repeat_runs_match(self, argv, capsys):
        assert main(list(argv)) in (0, 3)
        first = capsys.readouterr()
        assert main(list(argv)) in (0, 3)
        second = capsys.readouterr()
        assert first.out == second.out
