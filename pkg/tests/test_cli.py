"""Command-line front end."""

from __future__ import annotations

import json

import pytest

from tlbsw.cli import _normalize_argv, main, parse_ells


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text, ells", [("-1..3", [-1, 0, 1, 2, 3]), ("0,2", [0, 2]), ("1", [1])])
def test_parse_ells(text, ells):
    assert parse_ells(text) == ells


def test_negative_range_argv():
    assert _normalize_argv(["scan", "--ell", "-1..3"]) == ["scan", "--ell=-1..3"]


@pytest.mark.parametrize("r, s, lines", [(0, 4, 6), (1, 1, 2), (2, 2, 6), (0, 0, 1)])
def test_enumerate_counts(capsys, r, s, lines):
    code, out, _ = run(capsys, "enumerate", str(r), str(s), "--format", "text")
    assert code == 0
    assert len(out.splitlines()) == lines


def test_enumerate_frozen(capsys):
    _, out, _ = run(capsys, "enumerate", "1", "1", "--format", "text")
    assert out == "1->1 : b1-t1\n1->1 : b1-t1*\n"


def test_enumerate_parity_error(capsys):
    code, _, err = run(capsys, "enumerate", "1", "2")
    assert code == 2 and "parity" in err


@pytest.mark.parametrize("n", [0, 1, 2])
def test_mult_table_deterministic(capsys, n):
    a = run(capsys, "mult-table", str(n), "--format", "csv")[1]
    b = run(capsys, "mult-table", str(n), "--format", "csv")[1]
    assert a == b and a


def test_mult_table_frozen(capsys):
    _, out, _ = run(capsys, "mult-table", "1", "--format", "text")
    assert "(-Q - Q^-1)*[1]" in out


def test_gram_json(capsys):
    code, out, _ = run(capsys, "gram", "2", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["det"] == "(s^4 + Q^2 + Q^-2 + s^-4)"
    assert len(data["matrix"]) == 2


def test_gram_specialized(capsys):
    _, out, _ = run(capsys, "gram", "1", "-1", "--Q", "i", "--format", "json")
    assert json.loads(out)["det"] == "(0)"


def test_gram_bad_label(capsys):
    code, _, _ = run(capsys, "gram", "3", "0")
    assert code == 2


def test_scan_json(capsys):
    code, out, _ = run(capsys, "scan", "--ell", "-1..1", "--rmax", "3", "--format", "json", "--no-timing")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass" and data["elapsed_ms"] == 0
    assert len(data["witness"]["rows"]) == 9


def test_verify_duality(capsys):
    code, out, _ = run(capsys, "verify-duality", "--ell", "0", "--r", "2", "--no-timing")
    data = json.loads(out)
    assert code == 0 and data["witness"]["dimension"] == 6


def test_check_relations_csv(capsys, tmp_path):
    dest = tmp_path / "rel.csv"
    code, out, _ = run(capsys, "check-relations", "--ell", "0,1", "--r", "2", "--format", "csv", "--out", str(dest))
    assert code == 0 and out == ""
    rows = dest.read_text().splitlines()
    assert rows[0].startswith("check,ell,r,D,Q,status")
    assert len(rows) == 1 + 2 * 3
    assert all(",pass," in row for row in rows[1:])


def test_depth_too_small(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify-duality", "--ell", "0", "--r", "3", "--depth", "3"])
    assert exc.value.code == 2
