import json

import pytest
from pydantic import ValidationError

from hombound.algebra import cyclic_group
from hombound.cli import main, run
from hombound.config import Caps, Settings
from hombound.errors import ExitCode, InputError
from hombound.graph_core import complete_graph, petersen_graph
from hombound.graph_io import (
    dumps_dimacs,
    dumps_json,
    named_eng,
    named_graph,
    parse_dimacs,
    parse_graph,
    parse_json_graph,
)
from hombound.router import RunConfig
from hombound.schemas import ColoringSchema, ComplexSchema, GPosetSchema
from hombound.topology import build_EnG, order_complex

from conftest import edge_set


class TestParseGraph:
    def test_dimacs_triangle(self):
        g = parse_dimacs("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
        assert g.vertex_count == 3
        assert edge_set(g) == edge_set(complete_graph(3))

    def test_json_k2(self):
        g = parse_json_graph('{"n": 2, "edges": [[0, 1]]}')
        assert edge_set(g) == {(0, 1)}

    def test_self_loop_warns(self):
        warnings = []
        g = parse_dimacs("p edge 2 2\ne 1 1\ne 1 2\n", warnings)
        assert g.has_loops
        assert any("self-loop" in w for w in warnings)

    def test_duplicate_edge_warns(self):
        warnings = []
        g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n", warnings)
        assert g.edge_count == 1
        assert any("duplicate" in w for w in warnings)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("e 1 2\n", 1),
            ("p edge 3 1\ne 1 4\n", 2),
            ("p edge 3 1\ne 1\n", 2),
            ("p edge three 1\n", 1),
            ("p edge 2 0\nq 1 2\n", 2),
        ],
    )
    def test_malformed_lines(self, text, line):
        with pytest.raises(InputError) as info:
            parse_dimacs(text)
        assert info.value.line == line
        assert info.value.detail.startswith(f"line {line}:")

    def test_missing_problem_line(self):
        with pytest.raises(InputError):
            parse_dimacs("c nothing here\n")

    def test_json_endpoint_out_of_range(self):
        with pytest.raises(InputError):
            parse_json_graph('{"n": 2, "edges": [[0, 2]]}')

    @pytest.mark.parametrize("suffix", [".col", ".json"])
    def test_round_trip(self, tmp_path, suffix):
        g = petersen_graph()
        path = tmp_path / f"petersen{suffix}"
        path.write_text(dumps_json(g) if suffix == ".json" else dumps_dimacs(g))
        again = parse_graph(path)
        assert again.vertex_count == g.vertex_count
        assert again.edges == g.edges

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            parse_graph(tmp_path / "absent.col")


class TestNamedInstances:
    def test_graphs(self):
        assert named_graph("K5").edge_count == 10
        assert named_graph("C6").vertex_count == 6
        assert named_graph("petersen").edge_count == 15
        assert named_graph("kneser:7:2").vertex_count == 21
        assert named_graph("K5.col") is None

    def test_eng(self):
        p = named_eng("eng:3:2")
        assert p.element_count == 9 and p.group.order == 3
        assert named_eng("K3") is None


class TestRun:
    def test_bound_chain(self):
        report = run(RunConfig(command="bound", T="K2", H="K3"))
        assert report.exit_code == 0 and report.error is None
        payload = report.payload
        assert (payload["lower_bound"], payload["chi_cp"], payload["chi_h"]) == (3, 3, 3)
        assert payload["holds"]
        assert {"parse", "build-hom", "certificate"} <= set(report.timings_ms)
        assert all(isinstance(ms, int) for ms in report.timings_ms.values())

    def test_chi_from_file(self, tmp_path):
        path = tmp_path / "petersen.col"
        path.write_text(dumps_dimacs(petersen_graph()))
        report = run(RunConfig(command="chi", input=str(path)))
        assert report.payload["chi"] == 3
        assert len(report.payload["colors"]) == 10

    def test_homology_of_a_complex_file(self, tmp_path):
        path = tmp_path / "eng_z2_2.json"
        k = order_complex(build_EnG(cyclic_group(2), 2))
        path.write_text(ComplexSchema.from_domain(k).model_dump_json())
        report = run(RunConfig(command="homology", complex=path))
        betti = report.payload["connectivity"]["betti"]
        assert [b["betti"] for b in betti] == [[0, 0, 1], [0, 0, 1]]
        assert report.payload["connectivity"]["value"] == 1
        assert report.payload["euler_consistent"]

    def test_homology_of_a_poset(self):
        report = run(RunConfig(command="homology", poset="eng:2:3"))
        assert report.payload["index"] == {"lower": 3, "upper": 3, "group_order": 2}

    def test_gposet_file(self, tmp_path):
        path = tmp_path / "eng.json"
        path.write_text(GPosetSchema.from_domain(build_EnG(cyclic_group(2), 1)).model_dump_json())
        report = run(RunConfig(command="compat", poset=str(path)))
        assert report.payload["free"] and report.payload["loop_free"]
        assert len(report.payload["graph"]["edges"]) == 6

    def test_compat_as_dimacs(self):
        report = run(RunConfig(command="compat", T="K2", H="K3", format="dimacs-col"))
        assert report.payload["dimacs"].startswith("p edge 12 ")

    def test_build_hom(self):
        report = run(RunConfig(command="build-hom", T="K3", H="K4"))
        assert report.payload["count"] == 60
        assert report.payload["action"] == {"group_order": 3, "free": True, "orbits": 20}

    def test_verify_lambda_with_a_broken_coloring(self, tmp_path):
        path = tmp_path / "coloring.json"
        path.write_text(ColoringSchema(chi=2, colors=[1, 2, 2, 1]).model_dump_json())
        report = run(RunConfig(command="verify-lambda", poset="eng:2:1", coloring=path))
        assert report.exit_code == 0
        assert not report.payload["proper"]
        violations = report.payload["verification"]["simpliciality"]
        assert [tuple(v) for v in violations] == [(0, 2), (1, 3)]
        assert any("not a proper coloring" in w for w in report.warnings)

    def test_test_graph(self):
        report = run(RunConfig(command="test-graph", T="C4", H="K3"))
        assert report.payload["holds"]
        assert report.payload["chi_t"] == 2

    def test_deterministic_payload(self):
        first = run(RunConfig(command="bound", T="K2", H="K4"))
        second = run(RunConfig(command="bound", T="K2", H="K4"))
        assert json.dumps(first.payload, sort_keys=True) == json.dumps(second.payload, sort_keys=True)

    def test_resource_error(self):
        config = RunConfig(command="build-hom", T="K3", H="K5", caps={"max_elements": 10})
        report = run(config)
        assert report.exit_code == ExitCode.RESOURCE
        assert report.error.category == "resource"

    def test_missing_inputs(self):
        report = run(RunConfig(command="test-graph", T="K2"))
        assert report.exit_code == ExitCode.INPUT
        assert report.error.category == "invalid-argument"


class TestMain:
    def test_bound(self, capsys):
        assert main(["bound", "--T", "K2", "--H", "K3"]) == 0
        out, err = capsys.readouterr()
        assert json.loads(out)["payload"]["lower_bound"] == 3
        assert "chi(C_P) >= 3" in err

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        assert main(["chi", "--input", "C5", "--out", str(path), "-q"]) == 0
        assert json.loads(path.read_text())["payload"]["chi"] == 3
        assert capsys.readouterr().out == ""

    def test_input_error_exit_code(self, tmp_path, capsys):
        assert main(["chi", "--input", str(tmp_path / "absent.col")]) == ExitCode.INPUT
        assert json.loads(capsys.readouterr().out)["error"]["category"] == "input"

    def test_bad_primes(self, capsys):
        assert main(["homology", "--poset", "eng:2:1", "--primes", "2,4"]) == ExitCode.INPUT
        assert "not prime" in json.loads(capsys.readouterr().out)["error"]["detail"]

    @pytest.mark.parametrize(
        "field, table",
        [("action", [[0, 1], [1]]), ("mult", [[0, 1], [1]])],
    )
    def test_ragged_gposet_tables(self, tmp_path, capsys, field, table):
        doc = json.loads(GPosetSchema.from_domain(build_EnG(cyclic_group(2), 0)).model_dump_json())
        if field == "action":
            doc["action"] = table
        else:
            doc["group"]["mult"] = table
        path = tmp_path / "ragged.json"
        path.write_text(json.dumps(doc))
        assert main(["compat", "--poset", str(path)]) == ExitCode.INPUT
        assert json.loads(capsys.readouterr().out)["error"]["category"] == "input"

    def test_caps_override(self, capsys):
        code = main(["build-hom", "--T", "K3", "--H", "K5", "--caps", '{"max_backtrack_nodes": 5}'])
        assert code == ExitCode.RESOURCE


class TestSettings:
    def test_caps_from_environment(self, monkeypatch):
        monkeypatch.setenv("HOMBOUND_CAPS", '{"max_elements": 7}')
        caps = Settings().caps
        assert caps.max_elements == 7
        assert caps.max_chains == Caps().max_chains

    def test_environment_cap_reaches_a_run(self, monkeypatch):
        monkeypatch.setenv("HOMBOUND_CAPS", '{"max_elements": 10}')
        monkeypatch.setattr("hombound.router.settings", Settings())
        report = run(RunConfig(command="build-hom", T="K3", H="K5"))
        assert report.exit_code == ExitCode.RESOURCE
        assert "max_elements=10" in report.error.detail

    def test_primes_from_environment_must_be_prime(self, monkeypatch):
        monkeypatch.setenv("HOMBOUND_PRIMES", "[2, 9]")
        with pytest.raises(ValidationError, match="not prime"):
            Settings()

    @pytest.mark.parametrize("primes", [[], [4], [2, 15]])
    def test_run_config_shares_the_prime_check(self, primes):
        with pytest.raises(ValidationError):
            RunConfig(command="homology", poset="eng:2:1", primes=primes)
