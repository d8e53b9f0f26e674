import json

from gatesearch.cli import main


def test_schedule(capsys):
    assert main(["schedule", "--n", "1024", "--k", "4", "--r", "3"]) == 0
    out = capsys.readouterr().out
    assert "1\t20\n2\t26\n3\t1024" in out


def test_schedule_json(capsys):
    assert main(["schedule", "--n", "1024", "--k", "4", "--r", "2", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [w["n_i"] for w in data["widths"]] == [26, 1024]
    assert all(c["holds"] == "yes" for c in data["checks"])


def test_simulate_c1(capsys):
    assert main(["simulate", "--c1", "--n", "4", "--k", "4", "--solution", "9"]) == 0
    out = capsys.readouterr().out
    assert "measured\t0.25" in out


def test_simulate_pipeline(capsys):
    assert main(["simulate", "--pipeline", "--n-seq", "4,8", "--k", "4", "--solution", "37", "--boost"]) == 0
    cap = capsys.readouterr()
    assert "measured\t1" in cap.out and "queries\t22" in cap.out
    assert "warning" in cap.err


def test_resource_and_config_errors(capsys):
    assert main(["simulate", "--c1", "--n", "30", "--k", "4"]) == 3
    assert main(["estimate", "--main-eps", "--n", "1024", "--epsilon", "1"]) == 2
    assert main(["schedule", "--n", "1024", "--k", "6", "--r", "2"]) == 2
    assert main(["estimate", "--main-r", "--n", "1024", "--r", "2", "--k", "4", "--n-seq", "20,1024"]) == 2
    err = capsys.readouterr().err
    assert "error" in err


def test_estimate_grover02(capsys):
    assert main(["estimate", "--grover02", "--n", "64"]) == 0
    out = capsys.readouterr().out
    assert "4655372152" in out and "\tNO\t" not in out


def test_export(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    assert main(["export", "--c1", "--n", "4", "--k", "4", "--output", str(path)]) == 0
    assert path.read_text().startswith('{"wires":5')


def test_verify_and_fault(capsys):
    assert main(["verify", "--only", "counts", "--seed", "3"]) == 0
    assert main(["verify", "--only", "counts", "--inject-fault"]) == 1


def test_json_output_parses(capsys):
    assert main(["estimate", "--grover02", "--n", "64", "--format", "json"]) == 0
    cap = capsys.readouterr()
    rows = json.loads(cap.out)
    assert rows[-1]["Q_i"] == "4655372152"
    assert cap.err.startswith("# k = log log N = 6")
