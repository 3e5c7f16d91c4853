import json


from convexoid.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_outputs(capsys):
    assert run(capsys, "classify", "--oracle", "arch") == (0, '{"classification":"arch_disk"}\n', "")
    code, out, _ = run(capsys, "classify", "--oracle", "Zp:5")
    assert code == 0 and json.loads(out) == {"classification": "finite_odd", "p": 5}


def test_embed_image(capsys):
    assert run(capsys, "embed", "image", "--place", "3", "--d", "2")[:2] == (0, '{"prime":[3]}\n')
    code, out, _ = run(capsys, "embed", "image", "--place", "inf", "--d", "2")
    assert json.loads(out) == {"prime": [1, 2, 3]}


def test_r0_member_and_witness(capsys):
    code, out, _ = run(capsys, "r0", "member", "--poly", "3g^2")
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run(capsys, "r0", "member", "--poly", "3g")
    assert code == 0 and json.loads(out)["member"] is False
    code, out, _ = run(capsys, "r0", "witness", "--q", "3/4")
    assert json.loads(out)["poly"] == "3g^2"


def test_r0_enum(capsys):
    code, out, _ = run(capsys, "r0", "enum", "--max-degree", "2", "--max-height", "4")
    polys = [e["poly"] for e in json.loads(out)]
    assert code == 0 and "3g^2" in polys and "0" in polys


def test_spec_command(capsys):
    assert json.loads(run(capsys, "spec", "--ideal", "3")[1]) == {"result": "place", "place": 3}
    assert json.loads(run(capsys, "spec", "--ideal", "3/4")[1])["result"] == "not_prime"


def test_zr_commands(capsys):
    out = json.loads(run(capsys, "zr", "sections", "--exclude", "inf", "--q", "3")[1])
    assert out["section"] is True
    out = json.loads(run(capsys, "zr", "support", "--gens", "3", "--exclude", "inf")[1])
    assert out["excluded"] == [3, "inf"]
    out = json.loads(run(capsys, "zr", "dominate", "--ring", "trivial")[1])
    assert out["place"] == "generic" and out["flagged"] is True
    code, out, _ = run(capsys, "zr", "stalk", "inf")
    assert code == 0 and json.loads(out)["stalk"] == "ArchDisk"


def test_proj_commands(capsys):
    out = json.loads(run(capsys, "proj", "sections", "--exclude", "inf")[1])
    assert out["sections"] == "Z"
    code, out, _ = run(capsys, "proj", "atlas", "--samples", "20")
    assert code == 0 and [c["iso_target"] for c in json.loads(out)["charts"]] == ["Z", "DZhalf"]


def test_axioms_command(capsys):
    code, out, _ = run(capsys, "axioms", "--structure", "DQ", "--samples", "50")
    assert code == 0 and json.loads(out)["passed"] is True


def test_domain_error_exit_one(capsys):
    code, out, _ = run(capsys, "r0", "witness", "--q", "3/2")
    assert code == 1
    assert json.loads(out)["error"] == "PreconditionError"


def test_usage_errors_exit_two(capsys):
    for argv in (["r0", "member", "--poly", "zz"], ["nonsense"], ["embed", "image", "--place", "x"]):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == "" and "usage:" in err


def test_out_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "embed", "simplex", "--n", "2", "--json", "--out", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert len(data["points"]) == 7 and len(data["covers"]) == 9


def test_dot_output(capsys, tmp_path):
    target = tmp_path / "s.dot"
    assert run(capsys, "embed", "simplex", "--n", "2", "--dot", str(target))[0] == 0
    first = target.read_text()
    assert first.startswith("digraph simplex {")
    code, out, _ = run(capsys, "embed", "simplex", "--n", "2", "--dot")
    assert out == first


def test_outputs_are_byte_deterministic(capsys):
    argv = ["embed", "product", "--D", "3"]
    assert run(capsys, *argv) == run(capsys, *argv)
    argv = ["axioms", "--structure", "DZhalf", "--samples", "100", "--seed", "7"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_selftest_tight_budget(capsys):
    code, out, err = run(capsys, "selftest", "--max-degree", "1", "--only", "1,2")
    assert code == 0
    assert "criterion  1 r0-graded-parts: SKIPPED" in err
    assert "criterion  2 degree-one-part: PASS" in err
