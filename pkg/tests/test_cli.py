import io
import json
import math

import pytest

from hytet.cli import run

ONES = "l12=1,l13=1,l14=1,l23=1,l24=1,l34=1"


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(argv):
    code, out, err = invoke(argv)
    return code, json.loads(out) if out.strip() else None, err


class TestCheck:
    def test_all_ones_exists(self):
        code, doc, _ = invoke_json(["check", "--edges", ONES])
        assert code == 0
        assert doc["existence"]["exists"] is True
        assert doc["existence"]["bounds"]["l2"] == pytest.approx(1.6680504579626612)

    def test_triangle_violation_exits_2_and_names_condition(self):
        code, doc, _ = invoke_json(
            ["check", "--edges", "l12=3,l13=1,l14=1,l23=1,l24=1,l34=1"]
        )
        assert code == 2
        assert doc["existence"]["exists"] is False
        assert doc["existence"]["tri_123_ok"] is False
        assert any("tri_123" in name for name in doc["existence"]["failed"])

    def test_out_of_range_l34(self):
        code, doc, _ = invoke_json(
            ["check", "--edges", "l12=1,l13=1,l14=1,l23=1,l24=1,l34=2"]
        )
        assert code == 2
        assert "l34_upper" in doc["existence"]["failed"]


class TestVolume:
    def test_degenerate_fold_is_zero_volume(self):
        code, doc, _ = invoke_json(
            ["volume", "--edges", "l12=1,l13=1,l14=1,l23=1,l24=1,l34=0"]
        )
        assert code == 0
        block = doc["volume"]["edge_integral"]
        assert block["value"] == 0.0
        assert block["diagnostics"]["degenerate"] is True

    def test_all_ones_value(self):
        code, doc, _ = invoke_json(["volume", "--edges", ONES])
        assert code == 0
        assert doc["volume"]["edge_integral"]["value"] == pytest.approx(
            0.0905979253777242, abs=1e-9
        )

    def test_validate_adds_cross_checks(self):
        code, doc, _ = invoke_json(
            ["volume", "--validate", "--mc-samples", "20000", "--edges", ONES]
        )
        assert code == 0
        assert "sforza" in doc["volume"] and "monte_carlo" in doc["volume"]
        assert doc["agreement"]["edge_vs_sforza"]["pass"] is True
        assert doc["agreement"]["monte_carlo_z"]["pass"] is True

    def test_validate_deterministic_output(self):
        argv = ["volume", "--validate", "--mc-samples", "50000",
                "--seed", "7", "--edges", ONES]
        _, first, _ = invoke(argv)
        _, second, _ = invoke(argv)
        assert first == second

    def test_nonexistent_exits_2(self):
        code, out, err = invoke(
            ["volume", "--edges", "l12=1,l13=1,l14=1,l23=1,l24=1,l34=2"]
        )
        assert code == 2
        assert "l34_upper" in err or "l34_upper" in out


class TestInput:
    def test_json_document(self, tmp_path):
        doc = {"edges": {k: "1.0" for k in
                         ("l12", "l13", "l14", "l23", "l24", "l34")}}
        path = tmp_path / "input.json"
        path.write_text(json.dumps(doc))
        code, parsed, _ = invoke_json(["check", str(path)])
        assert code == 0
        assert parsed["existence"]["exists"] is True

    def test_output_reusable_as_input(self, tmp_path):
        code, out, _ = invoke(["volume", "--edges", ONES])
        assert code == 0
        path = tmp_path / "roundtrip.json"
        path.write_text(out)
        code2, out2, _ = invoke(["volume", str(path)])
        assert code2 == 0
        assert out2 == out

    def test_missing_edge_is_usage_error(self):
        code, _, err = invoke(["check", "--edges", "l12=1,l13=1"])
        assert code == 64
        assert "missing" in err

    def test_malformed_number_is_usage_error(self):
        code, _, err = invoke(
            ["check", "--edges", "l12=x,l13=1,l14=1,l23=1,l24=1,l34=1"]
        )
        assert code == 64

    def test_negative_length_is_usage_error(self):
        code, _, _ = invoke(
            ["check", "--edges", "l12=-1,l13=1,l14=1,l23=1,l24=1,l34=1"]
        )
        assert code == 64

    def test_unknown_subcommand(self):
        code, _, _ = invoke(["frobnicate"])
        assert code == 64

    def test_env_seed_respected_and_flag_wins(self, monkeypatch):
        monkeypatch.setenv("HYTET_SEED", "11")
        argv = ["volume", "--validate", "--mc-samples", "20000", "--edges", ONES]
        _, from_env, _ = invoke_json(argv)
        assert from_env["volume"]["monte_carlo"]["diagnostics"]["seed"] == 11
        _, from_flag, _ = invoke_json(argv + ["--seed", "5"])
        assert from_flag["volume"]["monte_carlo"]["diagnostics"]["seed"] == 5

    def test_seventeen_significant_digits(self):
        code, out, _ = invoke(["check", "--edges", ONES])
        # l2 = arccosh((4c^2 - c - 1)/(c + 1)) at c = cosh 1, full precision
        assert "1.6680504579626612" in out


class TestSweep:
    def test_csv_shape_and_flat_endpoints(self):
        code, out, _ = invoke(["sweep", "--samples", "9", "--edges", ONES])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,dVdt,V"
        assert len(lines) == 10
        first = lines[1].split(",")
        last = lines[-1].split(",")
        assert abs(float(first[2])) < 1e-6
        assert abs(float(last[2])) < 1e-6
        assert first[1] == "inf" and last[1] == "-inf"
        # interior rows have finite increasing t and positive early slope
        t_vals = [float(row.split(",")[0]) for row in lines[1:]]
        assert all(u < v for u, v in zip(t_vals, t_vals[1:]))
        assert float(lines[2].split(",")[1]) > 0

    def test_cumulative_volume_matches_direct(self):
        code, out, _ = invoke(["sweep", "--samples", "9", "--edges", ONES])
        rows = [line.split(",") for line in out.strip().splitlines()[1:]]
        from hytet import EdgeLengths, volume_edges

        for t, _, v in rows[1:-1]:
            direct = volume_edges(
                EdgeLengths(1, 1, 1, 1, 1, float(t))
            ).value
            assert float(v) == pytest.approx(direct, abs=1e-8)

    def test_json_format(self):
        code, doc, _ = invoke_json(
            ["sweep", "--samples", "5", "--format", "json", "--edges", ONES]
        )
        assert code == 0
        assert len(doc["rows"]) == 5
        assert doc["rows"][0]["dVdt"] == "inf"


class TestAngles:
    def test_radians_and_degrees(self):
        code, doc, _ = invoke_json(["angles", "--edges", ONES])
        assert code == 0
        rad = doc["angles"]["radians"]["th12"]
        deg = doc["angles"]["degrees"]["th12"]
        assert rad == pytest.approx(1.1835546602180564, abs=1e-12)
        assert deg == pytest.approx(math.degrees(rad), abs=1e-9)
        assert doc["diagnostics"]["delta"] < 0
        assert all(c > 0 for c in doc["diagnostics"]["cofactor_diagonal"])

    def test_degenerate_fold_exits_2(self):
        code, _, err = invoke(
            ["angles", "--edges", "l12=1,l13=1,l14=1,l23=1,l24=1,l34=0"]
        )
        assert code == 2


class TestValidate:
    def test_all_ones_passes(self):
        code, doc, _ = invoke_json(
            ["validate", "--mc-samples", "50000", "--edges", ONES]
        )
        assert code == 0
        assert doc["pass"] is True
        assert all(block["pass"] for block in doc["checks"].values())
        assert "schlafli_residual" in doc["checks"]

    def test_nonexistent_exits_2(self):
        code, _, _ = invoke(
            ["validate", "--edges", "l12=3,l13=1,l14=1,l23=1,l24=1,l34=1"]
        )
        assert code == 2
