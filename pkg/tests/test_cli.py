import json

import numpy as np
import pytest

from carlitz_sbox.cli import main, orbit_representatives, sweep
from carlitz_sbox.gf2n import get_field


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "4", "6", "8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,count_bu6,count_du4_bu6,orbits,elapsed_ms"
    rows = [l.split(",") for l in lines[1:]]
    assert [r[:3] for r in rows] == [["4", "4", "0"], ["6", "6", "6"], ["8", "16", "8"]]


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "10", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert (row["count_bu6"], row["count_du4_bu6"]) == (80, 50)
    assert row["elapsed_ms"] >= 0


def test_sweep_stable_across_jobs(capsys):
    outs = []
    for jobs in ("1", "2"):
        code, out, _ = run(capsys, "sweep", "--n", "6", "8", "--jobs", jobs, "--no-timing")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_sweep_to_file(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "sweep", "--n", "6", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("n,count_bu6")


def test_sweep_deep_guard(capsys):
    code, _, err = run(capsys, "sweep", "--n", "14")
    assert code == 1 and "--deep" in err


def test_sweep_odd_note(capsys):
    code, out, err = run(capsys, "sweep", "--n", "5")
    assert code == 0 and "odd" in err


def test_orbit_weights_cover_field():
    for n in (4, 6, 7, 9):
        F = get_field(n)
        reps = orbit_representatives(F)
        f4 = 4 if n % 2 == 0 else 2
        assert sum(size for _, size in reps) == F.order - f4
        assert all(r == min(F.pow(r, 2 ** k) for k in range(n)) for r, _ in reps)


def test_sweep_row_fields():
    r = sweep(6)
    assert (r.n, r.count_bu6, r.count_du4_bu6) == (6, 6, 6)


def test_analyze_closed_form_with_oracle(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "8", "--beta", "53", "--oracle")
    d = json.loads(out)
    assert code == 0
    assert d["du"] == 6 and d["bu_is_six"] is False
    assert d["witness"]["status"] == "validated"
    assert d["agreement"] is True and d["oracle"]["delta"] == 6


def test_analyze_power_notation(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "8", "--beta", "g^8")
    assert code == 0 and json.loads(out)["beta"] == "1d"


def test_analyze_degenerate(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "6", "--beta", "1", "--oracle")
    d = json.loads(out)
    assert code == 0
    assert d["du"] == "DEGENERATE" and d["agreement"] is True


def test_analyze_f4_routed_to_oracle(capsys):
    F = get_field(10)
    w = next(b for b in range(2, F.order) if F.is_in_f4(b))
    code, out, _ = run(capsys, "analyze", "--n", "10", "--beta", format(w, "x"))
    d = json.loads(out)
    assert code == 0 and d["method"] == "oracle"
    assert (d["oracle"]["delta"], d["oracle"]["boomerang"]) == (4, 6)


def test_analyze_large_n_unvalidated(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "20", "--beta", "g^5")
    d = json.loads(out)
    assert code == 0
    if d["witness"] is not None:
        assert d["witness"]["status"] == "derived, unvalidated"


@pytest.mark.parametrize("argv", [
    ["analyze", "--n", "8", "--beta", "0"],
    ["analyze", "--n", "8", "--beta", "zz"],
    ["analyze", "--n", "30", "--beta", "3"],
    ["analyze", "--n", "20", "--beta", "3", "--oracle"],
    ["brute", "--n", "8", "--chain", "0,0,1,x"],
    ["brute", "--n", "16", "--chain", "0,1,3,x"],
    ["sweep", "--n", "8", "--jobs", "0"],
    ["analyze", "--n", "4", "--beta", "3", "--modulus", "15"],
    ["nosuch"],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as e:
        code = main(argv)
        raise SystemExit(code)
    assert e.value.code == 1


def test_brute_json(capsys, tmp_path):
    prefix = str(tmp_path / "t")
    code, out, _ = run(capsys, "brute", "--n", "6", "--chain", "0,1,9,x", "--full-tables", prefix)
    d = json.loads(out)
    assert code == 0
    assert {"delta", "boomerang", "du_witness", "bu_witness", "algebraic_degree", "chain"} <= set(d)
    ddt = np.loadtxt(prefix + "_ddt.csv", delimiter=",", dtype=int)
    bct = np.loadtxt(prefix + "_bct.csv", delimiter=",", dtype=int)
    assert ddt.shape == bct.shape == (64, 64)
    assert ddt[1:, :].max() == d["delta"]
    assert bct[1:, 1:].max() == d["boomerang"]


def test_involution(capsys):
    code, out, _ = run(capsys, "involution", "--n", "6", "--beta", "9", "--gamma", "5", "--oracle")
    d = json.loads(out)
    assert code == 0
    assert d["is_involution"] is True
    assert d["agreement"] is True


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--quick", "--only", "field_axioms", "bracket_reversal")
    assert code == 0
    assert out.count("PASS") == 2


def test_no_witness_flag(capsys):
    code, out, _ = run(capsys, "analyze", "--n", "8", "--beta", "53", "--no-witness")
    assert code == 0 and json.loads(out)["witness"] is None
    code, out, _ = run(capsys, "analyze", "--n", "8", "--beta", "53", "--witness")
    assert json.loads(out)["witness"] is not None


def test_oracle_agreement_every_beta_n8():
    from carlitz_sbox.cli import RunConfig, analyze
    F = get_field(8)
    cfg = RunConfig([8])
    for beta in range(1, 256):
        out, code = analyze(F, beta, cfg, oracle=True, witness=False)
        assert code == 0
        assert out.get("agreement", True) is True, beta


def test_involution_bu6_beta(capsys):
    from carlitz_sbox.rank3 import Rank3Params, bu_is_six
    F = get_field(6)
    beta = next(b for b in range(2, 64) if not F.is_in_f4(b) and bu_is_six(Rank3Params(b, F)))
    code, out, _ = run(capsys, "involution", "--n", "6", "--beta", format(beta, "x"), "--oracle")
    d = json.loads(out)
    assert code == 0 and d["oracle"]["boomerang"] == 6
    assert d["equivalent_rank3"]["bu_is_six"] is True


def test_orbit_members_share_verdict():
    from carlitz_sbox.rank3 import Rank3Params
    from carlitz_sbox.uniformity import bu_max, ddt_max
    for n in (6, 8):
        F = get_field(n)
        for rep, size in orbit_representatives(F)[:3]:
            members = {F.pow(rep, 2 ** k) for k in range(n)}
            assert len(members) == size
            got = {(ddt_max(P.table())[0], bu_max(P.table())[0]) for P in (Rank3Params(b, F) for b in members)}
            assert len(got) == 1
