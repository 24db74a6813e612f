import json
import subprocess
import sys

import pytest

from weakapprox.cli import main
from weakapprox.documents import context_to_yaml
from weakapprox.catalog import example


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def klein_file(tmp_path):
    p = tmp_path / "klein.yaml"
    p.write_text(context_to_yaml(example("klein-augmentation")))
    return str(p)


def test_cohomology(capsys, klein_file):
    assert run(capsys, "cohomology", "--input", klein_file, "--degree", "1")[:2] == (0, "Z/4\n")
    assert run(capsys, "sha-omega", "--input", klein_file, "--degree", "1")[:2] == (0, "Z/2\n")


def test_permutation_and_trivial_documents(capsys, tmp_path):
    perm = tmp_path / "perm.yaml"
    perm.write_text("group: {degree: 3, generators: ['(0 1)', '(0 1 2)']}\n"
                    "lattice: {construct: permutation, arguments: {subgroup: [a]}}\n")
    assert run(capsys, "cohomology", "--input", str(perm), "--degree", "1")[:2] == (0, "0\n")
    triv = tmp_path / "triv.yaml"
    triv.write_text("group: {degree: 1, generators: []}\nlattice: {construct: trivial}\n")
    assert run(capsys, "cohomology", "--input", str(triv), "--degree", "0")[:2] == (0, "0\n")


def test_sha_omega_metacyclic_and_cyclic(capsys):
    for ex in ("s3-norm-one", "d5-augmentation", "cyclic-4"):
        for d in ("-1", "0", "1", "2"):
            assert run(capsys, "sha-omega", "--example", ex, "--degree", d)[:2] == (0, "0\n")


def test_verdict(capsys):
    code, out, _ = run(capsys, "verdict", "--example", "klein-augmentation", "--S", "v0")
    assert code == 0 and out.splitlines()[-1] == "fails; defect C_S ≅ Z/2"
    code, out, _ = run(capsys, "verdict", "--example", "klein-augmentation", "--S", "")
    assert code == 0 and "C_S: 0" in out and out.splitlines()[-1] == "weak approximation holds for S"
    code, out, _ = run(capsys, "verdict", "--example", "klein-norm-one", "--S", "inf")
    assert code == 0 and "note: real approximation" in out and "holds" in out


def test_machine_output_is_stable(capsys):
    outs = [run(capsys, "verdict", "--example", "klein-augmentation", "--S", "v0", "--format", "machine")[1]
            for _ in range(2)]
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert data["C_S"] == [2] and data["C_S_dual_path"] == [2] and data["wa_verdict"] is False
    assert outs[0] == ('{"C_S": [2], "C_S_dual_path": [2], "S": ["v0"], "S0": ["v0"], "command": "verdict", '
                       '"notes": [], "shortcut_used": "none", "wa_verdict": false}\n')
    code, out, _ = run(capsys, "cohomology", "--example", "klein-norm-one", "--degree", "1", "--format", "machine")
    assert json.loads(out)["invariant_factors"] == [2, 2]


def test_defect_command(capsys):
    code, out, _ = run(capsys, "defect", "--example", "klein-augmentation", "--S", "v0")
    assert code == 0 and out == "C_S: Z/2\nC_S (dual path): Z/2\n"


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "verdict", "--example", "klein-augmentation", "--S", "zz")[0] == 1
    assert run(capsys, "cohomology", "--example", "klein-augmentation", "--degree", "3")[0] == 1
    assert run(capsys, "cohomology", "--degree", "1")[0] == 1
    assert run(capsys, "cohomology", "--example", "nope", "--degree", "1")[0] == 1
    bad = tmp_path / "bad.yaml"
    bad.write_text("group: {degree: 2, generators: ['(0 1)']}\nlattice: {rank: 1, action_on_generators: [[[2]]]}\n")
    code, _, err = run(capsys, "cohomology", "--input", str(bad), "--degree", "1")
    assert code == 1 and "lattice" in err
    assert run(capsys, "cohomology", "--input", str(tmp_path / "missing.yaml"), "--degree", "1")[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1


def test_consistency_failure_exit_code(capsys, monkeypatch):
    from weakapprox import cli
    from weakapprox.abelian import FiniteAbelianGroup
    monkeypatch.setattr(cli, "defect_dual", lambda ctx, S: FiniteAbelianGroup((3,)))
    assert run(capsys, "defect", "--example", "klein-augmentation", "--S", "v0")[0] == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "machine")
    names = [e["name"] for e in json.loads(out)["examples"]]
    assert code == 0 and len(names) >= 8
    for n in ("cyclic-2", "cyclic-6", "klein-augmentation", "klein-norm-one", "klein-regular",
              "s3-norm-one", "d5-augmentation", "f20-norm-one"):
        assert n in names


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and out.splitlines()[-1].endswith("0 failed")
    code, out, _ = run(capsys, "selftest", "--corrupt-action")
    assert code == 2 and "FAIL" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "weakapprox", "cohomology", "--example", "klein-augmentation",
                          "--degree", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "Z/4\n"
