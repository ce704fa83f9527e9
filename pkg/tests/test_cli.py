import json

import pytest

from src.main import EXIT_INPUT_ERROR, EXIT_NEGATIVE, EXIT_OK, main


@pytest.fixture
def write_json(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding='utf-8')
        return str(path)
    return write


@pytest.fixture
def sys_a_file(write_json):
    return write_json("sysA.json", {"states": 3, "phi": [1, 0, 2]})


@pytest.fixture
def sys_c_file(write_json):
    return write_json("sysC.json", {"states": 7, "phi": [1, 2, 3, 0, 5, 4, 0]})


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


def test_analyze(capsys, sys_c_file):
    code, report = run_json(capsys, ["analyze", "--system", sys_c_file])
    assert code == EXIT_OK
    assert [a['length'] for a in report['attractors']] == [4, 2]


def test_convert_fixed_point_into_cycle(capsys, sys_a_file):
    code, report = run_json(capsys, ["convert", "--system", sys_a_file, "--from", "2", "--to", "0"])
    assert code == EXIT_OK
    assert report['convertible'] is False
    assert report['failed'] == ["LengthNotDivisor"]

    code, _ = run(capsys, ["convert", "--system", sys_a_file, "--from", "2", "--to", "0", "--strict"])
    assert code == EXIT_NEGATIVE


def test_convert_stochastic(capsys, sys_a_file):
    code, report = run_json(capsys, [
        "convert", "--system", sys_a_file, "--from", "2", "--to", "0", "--stochastic",
        "--source-vec", '["0","0","1"]', "--target-vec", '["1/2","1/2","0"]',
    ])
    assert code == EXIT_OK
    assert report['feasible'] is True
    assert len(report['witness']) == 3

    code, report = run_json(capsys, [
        "convert", "--system", sys_a_file, "--from", "2", "--to", "0", "--stochastic", "--strict",
    ])
    assert code == EXIT_NEGATIVE
    assert report['feasible'] is False


def test_convert_with_oracle(capsys, sys_a_file):
    code, report = run_json(capsys, ["convert", "--system", sys_a_file, "--from", "0", "--to", "1", "--oracle"])
    assert code == EXIT_OK
    assert report['convertible'] is True and report['oracle'] is True


def test_cross_system_convert(capsys, sys_c_file, write_json):
    tailed = write_json("tailed.json", {"phi": [1, 2, 3, 0, 0]})
    code, report = run_json(capsys, [
        "witness", "--system", tailed, "--target-system", sys_c_file, "--from", "4", "--to", "6",
    ])
    assert code == EXIT_OK
    assert report['witness'] == [0, 1, 2, 3, 6]


def test_witness_not_convertible(capsys, sys_a_file):
    code, payload = run_json(capsys, ["witness", "--system", sys_a_file, "--from", "2", "--to", "0"])
    assert code == EXIT_NEGATIVE
    assert payload['error'] == "NotConvertible"


def test_transition(capsys, sys_c_file):
    code, report = run_json(capsys, ["transition", "--system", sys_c_file, "--from", "4", "--to", "6"])
    assert code == EXIT_OK
    assert report['verdict'] == "Forbidden"
    assert "ProgenyIncrease" in report['reasons']

    code, _ = run(capsys, ["transition", "--system", sys_c_file, "--from", "4", "--to", "6", "--strict"])
    assert code == EXIT_NEGATIVE


def test_free_states(capsys, sys_a_file):
    code, report = run_json(capsys, ["free-states", "--system", sys_a_file])
    assert code == EXIT_OK
    assert report['fixed_points'] == [2]


def test_rbn_expand(capsys, write_json):
    network = write_json("net.json", {
        "n": 2, "nodes": [{"parents": [1], "tt": [0, 1]}, {"parents": [0], "tt": [0, 1]}],
    })
    code, report = run_json(capsys, ["rbn-expand", "--network", network, "--analyze"])
    assert code == EXIT_OK
    assert report['phi'] == [0, 2, 1, 3]
    assert report['attractor_lengths'] == [1, 1, 2]

    code, payload = run_json(capsys, ["rbn-expand", "--network", network, "--max-genes", "1"])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "NetworkTooLarge"


def test_logistic(capsys):
    code, report = run_json(capsys, [
        "logistic", "--check", "verify", "--assignment", '{"a": "-r", "b": "r", "c": "0"}',
    ])
    assert code == EXIT_OK
    assert report['covariant'] is True

    code, report = run_json(capsys, ["logistic", "--check", "range", "--r", "3/2", "1"])
    assert [item['verdict'] for item in report['results']] == ["Escapes", "WellPosed"]

    code, payload = run_json(capsys, ["logistic", "--check", "verify", "--assignment", "[1]"])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "SchemaError"


def test_export_dot_to_file(capsys, sys_a_file, tmp_path):
    target = tmp_path / "graph.dot"
    code, out = run(capsys, ["export-dot", "--system", sys_a_file, "--labels", '["1/2","1/2","0"]', "--output", str(target)])
    assert code == EXIT_OK
    assert out == ""
    text = target.read_text(encoding='utf-8')
    assert "digraph" in text and "1/2" in text


def test_out_of_range_state(capsys, sys_a_file):
    code, payload = run_json(capsys, ["convert", "--system", sys_a_file, "--from", "7", "--to", "0"])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "OutOfRangeState"


def test_bad_documents(capsys, write_json, tmp_path):
    broken = write_json("broken.json", "{not json")
    code, payload = run_json(capsys, ["analyze", "--system", broken])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "SchemaError"

    code, payload = run_json(capsys, ["analyze", "--system", str(tmp_path / "missing.json")])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "SchemaError"

    bad_phi = write_json("bad.json", {"phi": [1, 5]})
    code, payload = run_json(capsys, ["analyze", "--system", bad_phi])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "OutOfRangeSuccessor"


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["convert"])
    assert info.value.code == EXIT_INPUT_ERROR
    assert json.loads(capsys.readouterr().out)['error'] == "UsageError"


@pytest.mark.parametrize("flag, value", [
    ("--source-vec", "5"),
    ("--target-vec", '{"0": 1}'),
])
def test_vector_arguments_must_be_arrays(capsys, sys_a_file, flag, value):
    code, payload = run_json(capsys, [
        "convert", "--system", sys_a_file, "--from", "2", "--to", "0", "--stochastic", flag, value,
    ])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "SchemaError"


def test_labels_must_be_probabilities(capsys, sys_a_file):
    code, payload = run_json(capsys, ["export-dot", "--system", sys_a_file, "--labels", "5"])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "SchemaError"

    code, payload = run_json(capsys, ["export-dot", "--system", sys_a_file, "--labels", '["3/2","-1/2","0"]'])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "InvalidProbability"


def test_unwritable_output(capsys, sys_a_file, tmp_path):
    target = tmp_path / "missing-dir" / "report.json"
    code, payload = run_json(capsys, ["analyze", "--system", sys_a_file, "--output", str(target)])
    assert code == EXIT_INPUT_ERROR
    assert payload['error'] == "OutputError"
    assert not target.exists()
