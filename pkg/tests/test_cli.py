import numpy as np
import pytest

from fragmark import imgio
from fragmark.cli import main
from conftest import horse_watermark, shrink


@pytest.fixture
def files(tmp_path, camera):
    host = tmp_path / "host.pgm"
    wm = tmp_path / "wm.pbm"
    imgio.save_gray(shrink(camera, 128), host)
    imgio.save_binary(horse_watermark(128), wm)
    return tmp_path, host, wm


KEY = ["--a", "1", "--b", "1", "--k", "20"]


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_embed_verify_round_trip(files, capsys):
    d, host, wm = files
    out = d / "marked.pgm"
    code, stdout, _ = run(["embed", host, "--watermark", wm, "--out", out, *KEY], capsys)
    assert code == 0
    assert stdout.startswith("PSNR: 51.")
    assert stdout.strip().endswith("dB")
    code, stdout, _ = run(
        ["verify", out, "--watermark", wm, "--map-out", d / "map.pgm", "--wext-out", d / "wext.pbm", *KEY],
        capsys,
    )
    assert code == 0
    assert stdout.strip() == "flagged: 0/1024"
    assert not imgio.load_gray(d / "map.pgm").any()
    np.testing.assert_array_equal(imgio.load_binary(d / "wext.pbm"), imgio.load_binary(wm))


def test_attack_then_verify(files, capsys):
    d, host, wm = files
    marked = d / "marked.pgm"
    run(["embed", host, "--watermark", wm, "--out", marked, *KEY], capsys)
    forged = d / "forged.pgm"
    code, _, _ = run(
        ["attack", marked, "--kind", "copy-paste", "--region", "0,0,16,16", "--dst", "64,64", "--out", forged],
        capsys,
    )
    assert code == 0
    assert (d / "forged.pgm.region").read_text().strip() == "64 64 16 16"
    code, stdout, _ = run(["verify", forged, "--watermark", wm, "--map-out", d / "m.pgm", *KEY], capsys)
    assert code == 1
    flagged = int(stdout.split()[1].split("/")[0])
    assert flagged > 0
    tamper = imgio.load_gray(d / "m.pgm")
    assert (tamper[64:80, 64:80] == 255).mean() > 0.9


def test_wrong_k_detected(files, capsys):
    d, host, wm = files
    marked = d / "marked.pgm"
    run(["embed", host, "--watermark", wm, "--out", marked, *KEY], capsys)
    code, stdout, _ = run(["verify", marked, "--watermark", wm, "--a", "1", "--b", "1", "--k", "21"], capsys)
    assert code == 1
    n, total = map(int, stdout.split()[1].split("/"))
    assert n >= 0.95 * total


def test_attack_kinds(files, capsys):
    d, host, _ = files
    img = imgio.load_gray(host)
    code, _, _ = run(["attack", host, "--kind", "fill", "--region", "4,4,0,0", "--out", d / "f.pgm"], capsys)
    assert code == 0
    np.testing.assert_array_equal(imgio.load_gray(d / "f.pgm"), img)

    other = d / "other.pgm"
    imgio.save_gray(255 - img, other)
    code, _, _ = run(
        ["attack", host, "--kind", "splice", "--region", "0,0,128,128", "--src", other, "--out", d / "s.pgm"], capsys
    )
    assert code == 0
    np.testing.assert_array_equal(imgio.load_gray(d / "s.pgm"), 255 - img)

    code, _, _ = run(
        ["attack", host, "--kind", "stamp", "--region", "10,100,100,20", "--text", "COUPLE", "--ink", "255",
         "--out", d / "t.pgm"],
        capsys,
    )
    assert code == 0
    x, y, w, h = map(int, (d / "t.pgm.region").read_text().split())
    assert (x, y) == (10, 100) and w <= 100 and h <= 20
    changed = imgio.load_gray(d / "t.pgm") != img
    assert changed.any() and not changed[:100].any()


def test_attack_bad_region(files, capsys):
    d, host, _ = files
    code, _, err = run(["attack", host, "--kind", "fill", "--region", "120,120,16,16", "--out", d / "x.pgm"], capsys)
    assert code == 2
    assert "bounds" in err


def test_missing_watermark(files, capsys):
    d, host, _ = files
    missing = d / "nowhere.pbm"
    code, _, err = run(["embed", host, "--watermark", missing, "--out", d / "o.pgm", *KEY], capsys)
    assert code == 2
    assert str(missing) in err


def test_non_square_host(tmp_path, capsys):
    host = tmp_path / "h.pgm"
    wm = tmp_path / "w.pbm"
    imgio.save_gray(np.zeros((64, 32), np.uint8), host)
    imgio.save_binary(np.zeros((64, 32), np.uint8), wm)
    code, _, err = run(["embed", host, "--watermark", wm, "--out", tmp_path / "o.pgm", *KEY], capsys)
    assert code == 2
    assert "host must be square" in err


def test_period(capsys):
    assert run(["period", "--a", "1", "--b", "1", "--N", "2"], capsys)[:2] == (0, "T = 3\n")
    assert run(["period", "--a", "1", "--b", "1", "--N", "128"], capsys)[:2] == (0, "T = 96\n")
    assert run(["period", "--a", "1", "--b", "1", "--N", "1"], capsys)[0] == 2


def test_psnr(tmp_path, capsys):
    a = np.zeros((4, 4), np.uint8)
    b = a.copy()
    b[::2] = 1
    imgio.save_gray(a, tmp_path / "a.pgm")
    imgio.save_gray(b, tmp_path / "b.pgm")
    imgio.save_gray(np.zeros((8, 8), np.uint8), tmp_path / "c.pgm")
    assert run(["psnr", tmp_path / "a.pgm", tmp_path / "a.pgm"], capsys)[:2] == (0, "inf\n")
    assert run(["psnr", tmp_path / "a.pgm", tmp_path / "b.pgm"], capsys)[:2] == (0, "51.1411\n")
    assert run(["psnr", tmp_path / "a.pgm", tmp_path / "c.pgm"], capsys)[0] == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["embed"])
    assert exc.value.code == 2
