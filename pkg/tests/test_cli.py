"""The command-line surface: payloads, determinism, exit codes."""

from __future__ import annotations

import json

from easyqg.cli import EXIT_NONSTABLE, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_partition_compose(capsys):
    # the cup stacked above the cap closes into a loop
    payload = run_json(
        capsys,
        "partition", "compose", "P(0,2;;ww;{{1,2}})", "P(2,0;ww;;{{1,2}})",
    )
    assert payload == {"result": "P(0,0;;;{})", "removed_blocks": 1}


def test_partition_kparam(capsys):
    payload = run_json(
        capsys, "partition", "kparam", "--family", "O+", "--max-points", "8"
    )
    assert payload["k"] == 2 and payload["saturated"] is True


def test_partition_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "partition", "involute", "P(1,1;w;w;{1,2})")
    assert code == EXIT_PARSE
    assert "error" in err


def test_partition_precondition_exit_3(capsys):
    code, _, _ = run(
        capsys,
        "partition", "compose", "P(0,2;;wb;{{1,2}})", "P(2,0;ww;;{{1,2}})",
    )
    assert code == EXIT_PRECONDITION


def test_fusion_decompose(capsys):
    payload = run_json(
        capsys, "fusion", "decompose", "--family", "H+", "--s", "2",
        "r[1]", "r[1]",
    )
    assert payload == {"r[1,1]@2": 1, "r[2]@2": 1, "r[]@2": 1}


def test_fusion_chaingroup(capsys):
    payload = run_json(
        capsys, "fusion", "chaingroup", "--family", "H+", "--s", "4"
    )
    assert payload == {"order": 4}


def test_fusion_degree(capsys):
    payload = run_json(
        capsys, "fusion", "degree", "--family", "H+", "--s", "3", "r[1,2,1]"
    )
    assert payload == {"degree": 4}


def test_fusion_missing_s_exit_2(capsys):
    code, _, _ = run(capsys, "fusion", "degree", "--family", "H+", "r[1]")
    assert code == EXIT_PARSE


def test_fusion_bad_label_exit_2(capsys):
    code, _, _ = run(
        capsys, "fusion", "degree", "--family", "H+", "--s", "3", "r[7]"
    )
    assert code == EXIT_PARSE


def test_fusion_modulus_mismatch_exit_3(capsys):
    code, _, _ = run(
        capsys, "fusion", "degree", "--family", "H+", "--s", "3", "r[1]@2"
    )
    assert code == EXIT_PRECONDITION


def test_conditions_u_plus(capsys):
    payload = run_json(capsys, "conditions", "--family", "U+")
    assert payload["C1"]["status"] == "fails"
    assert payload["C2"]["status"] == "fails"
    assert payload["CP1"]["status"] == "fails"
    assert payload["CP2"]["status"] == "fails"


def test_ktheory_o_plus(capsys):
    payload = run_json(capsys, "ktheory", "--family", "O+", "--L", "8")
    assert payload["K0"] == {"rank": 1, "torsion": []}
    assert payload["K0_stabilized"] is True
    assert payload["K1"] == 0
    assert payload["unit_class"] == 1


def test_ktheory_h_family(capsys):
    payload = run_json(
        capsys, "ktheory", "--family", "H+", "--s", "2", "--L", "5"
    )
    assert payload["K1"] == 0
    assert payload["K0_stabilized"] is False
    ranks = [
        level["coker"]["rank"]
        for level in payload["levels"]
        if level["coker"] is not None
    ]
    assert ranks == sorted(ranks) and len(set(ranks)) == len(ranks)
    assert all(
        level["coker"]["torsion"] == []
        for level in payload["levels"]
        if level["coker"] is not None
    )


def test_ktheory_strict_exit_4(capsys):
    code, _, _ = run(
        capsys, "ktheory", "--family", "H+", "--s", "2", "--L", "3", "--strict"
    )
    assert code == EXIT_NONSTABLE


def test_intertwiners(capsys):
    payload = run_json(
        capsys,
        "intertwiners", "--family", "O+", "--k", "0", "--l", "4", "--n", "2",
    )
    assert payload["dim"] == 2
    assert len(payload["basis"]) == 2


def test_category_generators(capsys):
    payload = run_json(
        capsys,
        "category", "--generators", "--max-points", "4", "--list-members",
    )
    assert payload["k"] == 0
    assert payload["saturated"] is True
    assert "P(1,1;w;w;{{1,2}})" in payload["members"]


def test_category_family(capsys):
    payload = run_json(
        capsys, "category", "--family", "H+", "--s", "2", "--max-points", "4"
    )
    assert payload["k"] == 2
    assert payload["member_count"] > 0


def test_json_output_byte_identical(capsys):
    code, first, _ = run(capsys, "conditions", "--family", "H+", "--s", "3")
    assert code == EXIT_OK
    code, second, _ = run(capsys, "conditions", "--family", "H+", "--s", "3")
    assert code == EXIT_OK
    assert first == second


def test_console_script_installed():
    import shutil
    import subprocess

    exe = shutil.which("easyqg")
    assert exe is not None
    proc = subprocess.run(
        [exe, "fusion", "chaingroup", "--family", "H+", "--s", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"order": 3}


def test_text_format(capsys):
    code, out, _ = run(
        capsys,
        "fusion", "degree", "--family", "H+", "--s", "3", "r[1,2,1]",
        "--format", "text",
    )
    assert code == EXIT_OK
    assert out.strip() == "degree: 4"
