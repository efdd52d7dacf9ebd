import pytest

from lenslab.cli import main
from lenslab.tri import parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lst_build(capsys):
    code, out, _ = run(capsys, "lst", "build", "--pq", "2/7")
    assert code == 0
    assert "path 2/7,2/5,2/3,1/2,1/1" in out and "tets 4" in out


def test_lst_build_degenerate(capsys):
    code, out, _ = run(capsys, "lst", "build", "--path", "0/1,1/1")
    assert code == 0 and "degenerate yes" in out


def test_lst_table_lines(capsys):
    code, out, _ = run(capsys, "lst", "table", "--pq", "1/2", "--lines")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3 and all(l.startswith("edge ") for l in lines)


def test_lst_table_aligned(capsys):
    code, out, _ = run(capsys, "lst", "table", "--pq", "2/7")
    assert code == 0 and out.splitlines()[0].split()[:3] == ["edge", "level", "meridian"]


def test_lst_check(capsys):
    _, out, _ = run(capsys, "lst", "check", "--path", "0/1,0/1,1/1")
    assert out.startswith("nearly-minimal no") and "witness edge" in out
    _, out, _ = run(capsys, "lst", "check", "--pq", "3/11")
    assert out.strip() == "nearly-minimal yes"


def test_lens_identify(capsys):
    code, out, _ = run(capsys, "lens", "identify", "{9,7,2}<->{5,3,8}")
    assert code == 0
    assert out.splitlines() == ["L(62,27)", "canonical L(62,23)"]


def test_lens_identify_with_pairing(capsys):
    code, out, _ = run(capsys, "lens", "identify", "{1,1,2}<->{1,1,2}", "--pair", "0:0,1:1,2:2")
    assert code == 0 and out.startswith("L(0,1)")


def test_lens_genus(capsys):
    code, out, _ = run(capsys, "lens", "genus", "30", "7")
    assert code == 0 and out.strip() == "U_3 (h=3)"


def test_lens_build(capsys):
    code, out, _ = run(capsys, "lens", "build", "13", "4")
    assert code == 0 and "canonical L(13,3)" in out


def test_lens_check_efficiency(capsys):
    code, out, _ = run(capsys, "lens", "check", "--path", "0/1,0/1,1/1", "--fold", "2", "--efficiency", "0")
    assert code == 0 and "0-efficient no" in out
    code, out, _ = run(capsys, "lens", "check", "--pq", "2/5", "--fold", "1", "--efficiency", "1")
    assert code == 0 and "1-efficient" in out


def test_lens_check_refuses_s2xs1(capsys):
    code, _, err = run(capsys, "lens", "check", "--path", "1/1,0/1,1/1", "--fold", "2", "--efficiency", "0")
    assert code == 1 and "S^2 x S^1" in err


def test_emit_tri_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "lens", "build", "7", "2", "--emit", "tri")
    assert code == 0
    path = tmp_path / "l72.tri"
    path.write_text(out)
    code, again, _ = run(capsys, "lens", "build", "7", "2", "--emit", "tri")
    assert again == out
    code, h, _ = run(capsys, "tri", "homology", str(path))
    assert h.strip() == "H1 = Z/7"
    code, v, _ = run(capsys, "tri", "validate", str(path))
    assert "manifold yes" in v
    code, iso, _ = run(capsys, "tri", "iso", str(path), str(path))
    assert iso.strip() == "isomorphic"


def test_fill(capsys, tmp_path):
    _, out, _ = run(capsys, "lst", "build", "--pq", "1/2", "--emit", "tri")
    path = tmp_path / "one.tri"
    path.write_text(out)
    code, out, _ = run(capsys, "lens", "fill", "--tri", str(path), "--alpha", "{1,2,3}")
    assert code == 0
    head, body = out.split("\n", 1)
    assert head.startswith("# filled along")
    assert parse(body).tet_count >= 1


def test_normal_enumerate(capsys):
    code, out, err = run(capsys, "normal", "enumerate", "--pq", "1/2", "--bound", "4", "--connected-only")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5
    assert any("class=meridional_disk" in l for l in lines)
    assert "5 surfaces" in err


def test_normal_enumerate_from_file(capsys, tmp_path):
    _, out, _ = run(capsys, "lens", "build", "1", "0", "--emit", "tri")
    path = tmp_path / "s3.tri"
    path.write_text(out)
    code, out, _ = run(capsys, "normal", "enumerate", "--tri", str(path), "--bound", "2", "--octagons")
    assert code == 0 and "class=sphere" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "paper-examples")
    assert code == 0 and out.splitlines()[-1] == "0 failed"


@pytest.mark.parametrize(
    "argv",
    [
        ["lens", "build", "4", "2"],
        ["lst", "build", "--pq", "2/4"],
        ["tri", "homology", "/nonexistent/file.tri"],
        ["lens", "identify", "{2,3,4}<->{1,1,2}"],
    ],
)
def test_refusals_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("lenslab:")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["lst", "build"],
        ["lst", "build", "--pq", "1/2", "--path", "1/2,1/1"],
        ["lens", "identify", "garbage"],
        ["lens", "check", "--pq", "2/7", "--fold", "5"],
        ["lens", "identify", "{1,1,2}<->{1,1,2}", "--pair", "0:0,1:0"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_parse_error_exits_one(capsys, tmp_path):
    path = tmp_path / "bad.tri"
    path.write_text("tets 1\nglue 0 0 0 1 1120\n")
    code, _, err = run(capsys, "tri", "validate", str(path))
    assert code == 1 and "line 2" in err
