import json

from finstream import directed_circle, directed_interval, tuple_point
from finstream.cli import main
from finstream.formats import canonical_dumps, load, serialize_space, serialize_stream


def write(path, obj):
    path.write_text(canonical_dumps(obj), encoding="utf-8")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuild:
    def test_builder_circle(self, tmp_path, capsys):
        spec = tmp_path / "spec.json"
        out = tmp_path / "circle.json"
        spec.write_text(json.dumps({"builder": "directed_circle", "args": {"n": 2}}))
        code, _, _ = run(capsys, "build", "--input", str(spec), "--output", str(out))
        assert code == 0
        assert load(str(out)) == directed_circle(2)

    def test_explicit_sierpinski(self, tmp_path, capsys):
        spec = tmp_path / "spec.json"
        out = tmp_path / "s.json"
        spec.write_text(
            json.dumps(
                {
                    "points": ["a", "b"],
                    "min_open": {"a": ["a", "b"], "b": ["b"]},
                    "gen": {
                        "a": [["a", "a"], ["a", "b"], ["b", "b"]],
                        "b": [["b", "b"]],
                    },
                }
            )
        )
        code, _, _ = run(capsys, "build", "--input", str(spec), "--output", str(out))
        assert code == 0
        stream = load(str(out))
        assert stream.underlying().has("a", "b")

    def test_malformed_min_open_exits_2(self, tmp_path, capsys):
        spec = tmp_path / "spec.json"
        spec.write_text(
            json.dumps(
                {
                    "points": ["a", "b", "c"],
                    "min_open": {"a": ["a", "b"], "b": ["b", "c"], "c": ["c"]},
                    "gen": {"a": [], "b": [], "c": []},
                }
            )
        )
        code, _, err = run(capsys, "build", "--input", str(spec))
        assert code == 2
        assert "min_open" in err

    def test_parse_error_exits_2(self, tmp_path, capsys):
        spec = tmp_path / "spec.json"
        spec.write_text("{not json")
        code, _, err = run(capsys, "build", "--input", str(spec))
        assert code == 2
        assert "line" in err

    def test_atlas_build(self, tmp_path, capsys):
        circle = directed_circle(2)
        arc1 = sorted(circle.space.min_open("v0"))
        arc2 = sorted(circle.space.min_open("v1"))
        spec = tmp_path / "atlas.json"
        out = tmp_path / "out.json"
        spec.write_text(
            json.dumps(
                {
                    "atlas": {
                        "space": serialize_space(circle.space),
                        "charts": [
                            {
                                "points": arc1,
                                "order": [list(p) for p in circle.value(arc1).pairs()],
                            },
                            {
                                "points": arc2,
                                "order": [list(p) for p in circle.value(arc2).pairs()],
                            },
                        ],
                    }
                }
            )
        )
        code, _, _ = run(capsys, "build", "--input", str(spec), "--output", str(out))
        assert code == 0
        assert load(str(out)) == circle


class TestCheck:
    def circle_file(self, tmp_path):
        path = tmp_path / "circle.json"
        write(path, serialize_stream(directed_circle(2)))
        return path

    def test_all_pass(self, tmp_path, capsys):
        path = self.circle_file(tmp_path)
        code, out, _ = run(capsys, "check", "--input", str(path), "--which", "circulation")
        assert code == 0
        report = json.loads(out)
        assert report["ok"]

    def test_antisymmetry_fails_on_circle(self, tmp_path, capsys):
        path = self.circle_file(tmp_path)
        code, out, _ = run(capsys, "check", "--input", str(path), "--which", "antisymmetry")
        assert code == 1
        assert not json.loads(out)["ok"]

    def test_pathology_precirculation_fails_with_witness(self, tmp_path, capsys):
        from finstream.formats import serialize_precirculation
        from finstream.models import pathology_fixture

        path = tmp_path / "pulled.json"
        write(path, serialize_precirculation(pathology_fixture().pulled))
        code, out, _ = run(
            capsys, "check", "--input", str(path), "--which", "circulation",
            "--mode", "exhaustive",
        )
        assert code == 1
        report = json.loads(out)
        witness = report["checks"][0]["witness"]
        assert witness["pair"] == [tuple_point("v0", "v0"), tuple_point("v1", "v1")]

    def test_empty_stream_passes_vacuously(self, tmp_path, capsys):
        from finstream import empty_stream

        path = tmp_path / "empty.json"
        write(path, serialize_stream(empty_stream()))
        code, out, _ = run(capsys, "check", "--input", str(path), "--which", "all")
        assert code == 0


class TestQuery:
    def test_global_loop(self, tmp_path, capsys):
        path = tmp_path / "circle.json"
        write(path, serialize_stream(directed_circle(2)))
        code, out, _ = run(
            capsys, "query", "--input", str(path), "--open", "global", "e1", "e1",
            "--witness",
        )
        assert code == 0
        report = json.loads(out)
        assert report["related"] and report["witness"] == []

    def test_star_orientation(self, tmp_path, capsys):
        path = tmp_path / "circle.json"
        write(path, serialize_stream(directed_circle(2)))
        star = ",".join(sorted(directed_circle(2).space.min_open("v0")))
        code, out, _ = run(capsys, "query", "--input", str(path), "--open", star, "e2", "e1")
        assert code == 0 and json.loads(out)["related"]
        code, out, _ = run(capsys, "query", "--input", str(path), "--open", star, "e1", "e2")
        assert code == 1 and not json.loads(out)["related"]

    def test_witness_chain(self, tmp_path, capsys):
        path = tmp_path / "interval.json"
        write(path, serialize_stream(directed_interval(2)))
        code, out, _ = run(
            capsys, "query", "--input", str(path), "--open", "global", "v0", "v2",
            "--witness",
        )
        assert code == 0
        steps = json.loads(out)["witness"]
        assert steps[0]["from"] == "v0" and steps[-1]["to"] == "v2"


class TestCombine:
    def test_product_then_quotient(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        write(a, serialize_stream(directed_interval(1)))
        prod = tmp_path / "prod.json"
        code, _, _ = run(
            capsys, "combine", "product", "--input", str(a), "--input", str(a),
            "--output", str(prod), "--check-universal",
        )
        assert code == 0
        stream = load(str(prod))
        assert stream.space.n == 9

    def test_quotient_interval_to_circle(self, tmp_path, capsys):
        a = tmp_path / "i2.json"
        write(a, serialize_stream(directed_interval(2)))
        out = tmp_path / "circle.json"
        code, _, _ = run(
            capsys, "combine", "quotient", "--input", str(a),
            "--partition", json.dumps([["v0", "v2"], ["v1"], ["e1"], ["e2"]]),
            "--output", str(out),
        )
        assert code == 0
        assert load(str(out)) == directed_circle(2)

    def test_substream_error_path(self, tmp_path, capsys):
        a = tmp_path / "i1.json"
        write(a, serialize_stream(directed_interval(1)))
        code, _, err = run(
            capsys, "combine", "substream", "--input", str(a),
            "--points", json.dumps(["v0", "nope"]),
        )
        assert code == 2
        assert "nope" in err

    def test_pushforward(self, tmp_path, capsys):
        a = tmp_path / "i2.json"
        write(a, serialize_stream(directed_interval(2)))
        space_file = tmp_path / "circle_space.json"
        write(space_file, serialize_space(directed_circle(2).space))
        out = tmp_path / "out.json"
        mapping = {"v0": "v0", "v2": "v0", "v1": "v1", "e1": "e1", "e2": "e2"}
        code, _, _ = run(
            capsys, "combine", "pushforward", "--input", str(a),
            "--space", str(space_file), "--map", json.dumps(mapping),
            "--output", str(out),
        )
        assert code == 0
        assert load(str(out)) == directed_circle(2)

    def test_limit_diagram(self, tmp_path, capsys):
        circle = directed_circle(2)
        rot = {"v0": "v1", "v1": "v0", "e1": "e2", "e2": "e1"}
        diagram = tmp_path / "diagram.json"
        diagram.write_text(
            json.dumps(
                {
                    "objects": {
                        "A": serialize_stream(circle),
                        "B": serialize_stream(circle),
                    },
                    "arrows": {
                        "f": {"source": "A", "target": "B", "map": rot},
                        "g": {
                            "source": "A",
                            "target": "B",
                            "map": {p: p for p in circle.space.points},
                        },
                    },
                }
            )
        )
        out = tmp_path / "lim.json"
        code, _, _ = run(
            capsys, "combine", "limit", "--diagram", str(diagram), "--output", str(out)
        )
        assert code == 0
        assert load(str(out)).space.points == ()


class TestExport:
    def test_json_round_trip_bytes(self, tmp_path, capsys):
        path = tmp_path / "circle.json"
        write(path, serialize_stream(directed_circle(2)))
        out = tmp_path / "exported.json"
        code, _, _ = run(
            capsys, "export", "--input", str(path), "--fmt", "json", "--output", str(out)
        )
        assert code == 0
        assert out.read_bytes() == path.read_bytes()

    def test_dot(self, tmp_path, capsys):
        path = tmp_path / "circle.json"
        write(path, serialize_stream(directed_circle(2)))
        code, out, _ = run(capsys, "export", "--input", str(path), "--fmt", "dot")
        assert code == 0
        assert out.startswith("digraph")

    def test_unknown_format_rejected(self, tmp_path, capsys):
        path = tmp_path / "circle.json"
        write(path, serialize_stream(directed_circle(2)))
        code, _, _ = run(capsys, "export", "--input", str(path), "--fmt", "json",
                         "--output", None if False else str(tmp_path / "x.json"))
        assert code == 0
