"""CLI surface: every subcommand, file formats, exit codes."""

import json
import math
from fractions import Fraction

import pytest

from zarank.cli import main
from zarank.geometry import PointConfig, SphereConfig
from zarank.hypergraph import KPartiteHypergraph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBounds:
    def test_full_check_run(self, capsys):
        code, out, _ = run(capsys, "bounds", "--dims", "2,2,3",
                           "--sizes", "100,100,100", "--eps", "1/100",
                           "--check", "matrix,scaling,monotonicity,dominance")
        assert code == 0
        doc = json.loads(out)
        assert doc["alphas"] == ["7/9", "7/9", "8/9"]
        assert doc["checks"]["matrix"]["ok"]
        assert all(row["ok"] for row in doc["checks"]["scaling"])

    def test_exact_strings_and_floats(self, capsys):
        code, out, _ = run(capsys, "bounds", "--dims", "2,2",
                           "--sizes", "8,8")
        doc = json.loads(out)
        assert doc["E"]["terms"] == [[["8", "2/3"], ["8", "2/3"]]]
        assert doc["E"]["float"] == pytest.approx(16.0)
        assert doc["F"]["float"] == pytest.approx(32.0)


class TestBuildDetect:
    def test_minors_pipeline(self, tmp_path, capsys):
        pts = tmp_path / "pts.txt"
        pts.write_text(PointConfig(
            2, ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
                (Fraction(1), Fraction(1)))).to_text())
        hg = tmp_path / "h.txt"
        code, _, _ = run(capsys, "build", "--kind", "minors", "--points",
                         str(pts), "--out", str(hg),
                         "--target", "plus-minus-one")
        assert code == 0
        H = KPartiteHypergraph.from_text(hg.read_text())
        assert H.num_edges == 6  # three unit pairs, both orders

        code, out, _ = run(capsys, "detect", "--hypergraph", str(hg),
                           "--pattern", "1,2")
        assert code == 0
        doc = json.loads(out)
        assert doc["found"] is True

    def test_detect_budget_exit_code(self, tmp_path, capsys):
        edges = [(i, j) for i in range(6) for j in range(6) if i != j]
        hg = tmp_path / "h.txt"
        hg.write_text(KPartiteHypergraph.build((6, 6), edges).to_text())
        code, out, _ = run(capsys, "detect", "--hypergraph", str(hg),
                           "--pattern", "3,4", "--budget", "2")
        assert code == 3
        assert "error" in json.loads(out)

    def test_st_config_with_hypergraph(self, tmp_path, capsys):
        out_pts = tmp_path / "cfg.txt"
        out_hg = tmp_path / "hg.txt"
        code, _, _ = run(capsys, "build", "--kind", "st-config", "--d", "2",
                         "--scale", "2", "--out", str(out_pts),
                         "--hypergraph", str(out_hg))
        assert code == 0
        cfg = PointConfig.from_text(out_pts.read_text())
        assert cfg.n == 24
        H = KPartiteHypergraph.from_text(out_hg.read_text())
        assert H.num_edges > 0

    def test_k1uu_build(self, tmp_path, capsys):
        out_pts = tmp_path / "cfg.txt"
        code, _, _ = run(capsys, "build", "--kind", "k1uu", "--d", "3",
                         "--u", "2", "--out", str(out_pts))
        assert code == 0
        assert PointConfig.from_text(out_pts.read_text()).n == 5

    def test_triangles_build(self, tmp_path, capsys):
        pts = tmp_path / "pts.txt"
        pts.write_text("2 3\n0 0\n2 0\n0 1\n")
        code, out, _ = run(capsys, "build", "--kind", "triangles",
                           "--points", str(pts))
        assert code == 0
        H = KPartiteHypergraph.from_text(out)
        assert H.num_edges == 6

    def test_spheres_build(self, tmp_path, capsys):
        sp = tmp_path / "s.txt"
        sp.write_text("2 3\n0 0 1\n2 0 1\n9 9 1\n")
        code, out, _ = run(capsys, "build", "--kind", "spheres",
                           "--spheres", str(sp))
        assert code == 0
        H = KPartiteHypergraph.from_text(out)
        assert H.edges == frozenset({(0, 1), (1, 0)})


class TestShatter:
    def test_exhaustive(self, tmp_path, capsys):
        edges = [(p, q) for p in range(4) for q in range(4) if q <= p]
        hg = tmp_path / "h.txt"
        hg.write_text(KPartiteHypergraph.build((4, 4), edges).to_text())
        code, out, _ = run(capsys, "shatter", "--hypergraph", str(hg),
                           "--ground-part", "1", "--z", "2")
        assert code == 0
        doc = json.loads(out)
        # neighborhoods are nested prefixes: traces on 2 points total 3
        assert doc["value"] == 3

    def test_budget_exit(self, tmp_path, capsys):
        edges = [(p, q) for p in range(3) for q in range(20) if (p + q) % 3]
        hg = tmp_path / "h.txt"
        hg.write_text(KPartiteHypergraph.build((3, 20), edges).to_text())
        code, out, _ = run(capsys, "shatter", "--hypergraph", str(hg),
                           "--ground-part", "1", "--z", "10",
                           "--budget", "10")
        assert code == 3
        assert "sampled" in json.loads(out)["error"]


class TestPartitionCmd:
    def test_partition_json(self, tmp_path, capsys):
        import random
        rng = random.Random(5)
        pts = set()
        while len(pts) < 64:
            pts.add((Fraction(rng.randint(-500, 500)),
                     Fraction(rng.randint(-500, 500))))
        f = tmp_path / "p.txt"
        f.write_text(PointConfig(2, tuple(sorted(pts))).to_text())
        code, out, _ = run(capsys, "partition", "--points", str(f),
                           "--r", "4", "--seed", "7", "--slack", "1")
        assert code == 0
        doc = json.loads(out)
        assert doc["n"] == 64
        assert len(doc["factors"]) == 2
        assert doc["max_cell"] <= doc["cell_bound"]
        assert sum(doc["cells"].values()) + doc["boundary"] == 64
        assert doc["c_part"] > 0


class TestExperimentCmd:
    def test_experiment_files(self, tmp_path, capsys):
        spec = {"kind": "st-config", "d": 2, "sizes": [2, 3, 4], "seed": 1}
        sf = tmp_path / "spec.json"
        sf.write_text(json.dumps(spec))
        out_json = tmp_path / "report.json"
        out_csv = tmp_path / "report.csv"
        out_svg = tmp_path / "report.svg"
        code, _, err = run(capsys, "experiment", "--spec", str(sf),
                           "--out", str(out_json), "--csv", str(out_csv),
                           "--svg", str(out_svg))
        assert code == 0
        doc = json.loads(out_json.read_text())
        assert doc["verdict"] == "pass"
        assert out_csv.read_text().startswith("size,n,count")
        assert out_svg.read_text().startswith("<svg")
        assert "verdict=pass" in err


class TestVerifyCmd:
    def test_lemmas_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "lemmas",
                           "--count", "20", "--seed", "3")
        assert code == 0
        assert out.count("PASS") == 4

    def test_erdos_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "erdos",
                           "--count", "30")
        assert code == 0
        assert "PASS" in out

    def test_minor_free_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "minor-free",
                           "--count", "15")
        assert code == 0
        assert "PASS" in out
