import json

import pytest

from conftest import LINEAR_DXJ, system
from datadisc import cli
from datadisc.discriminant.types import ShapeFailure
from datadisc.polyring import parse_poly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mldeg(capsys):
    code, out, _ = run(capsys, "mldeg", "linear.model")
    assert code == cli.EXIT_OK and out.strip() == "3"


def test_degree_profile(capsys):
    code, out, _ = run(capsys, "degree", "toy", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["profile"] == "(4; 2,3,3,2)"


def test_disc_reproduces_the_quartic(capsys):
    code, out, _ = run(capsys, "disc", "linear.model", "--strategy", "s2", "--seed", "7",
                       "--json")
    doc = json.loads(out)
    assert code == cli.EXIT_OK and doc["verified"] == "pass"
    reg = system("linear").reg
    assert parse_poly(doc["polynomial"], reg) == parse_poly(LINEAR_DXJ, reg)
    assert doc["degree"] == 4 and doc["terms"] == 35


def test_envelope_is_deterministic_modulo_timings(capsys):
    texts = []
    for threads in ("1", "2"):
        _, out, _ = run(capsys, "disc", "linear", "--strategy", "s1", "--seed", "3",
                        "--threads", threads, "--json")
        doc = json.loads(out)
        doc.pop("timings")
        texts.append(json.dumps(doc))
    assert texts[0] == texts[1]


def test_text_envelope_round_trip(capsys, tmp_path):
    path = tmp_path / "d.txt"
    code, out, _ = run(capsys, "disc", "toy", "--strategy", "elim", "--out", str(path))
    fields = cli.read_envelope(path.read_text())
    assert code == 0 and fields["strategy"] == "elim" and fields["model"] == "toy"
    reg = system("toy").reg
    assert parse_poly(fields["polynomial"], reg).total_degree() == 4


def test_read_envelope_accepts_a_bare_polynomial():
    assert cli.read_envelope("u0^2\n - u1\n") == {"polynomial": "u0^2 - u1"}


def test_probe_csv(capsys, tmp_path):
    disc = tmp_path / "d.json"
    disc.write_text(json.dumps({"polynomial": LINEAR_DXJ}))
    code, out, _ = run(capsys, "probe", "linear.model", "--disc", str(disc),
                       "--data", "3,5,7,11", "--data", "1,4,9,31")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "u0,u1,u2,u3,sign,complex,real,positive,shape_flag"
    assert lines[1] == "3,5,7,11,1,3,3,1,shape"
    assert lines[2].startswith("1,4,9,31,1,3,3,1")


def test_bench_quick_subset(capsys):
    code, out, _ = run(capsys, "bench", "linear,toy")
    assert code == cli.EXIT_OK
    assert out.count("pass") == 2


class TestExitCodes:
    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["disc", "linear"])
        assert err.value.code == cli.EXIT_USAGE
        assert run(capsys, "mldeg", "no-such-model")[0] == cli.EXIT_USAGE

    def test_timeout(self, capsys):
        code, _, err = run(capsys, "disc", "linear", "--strategy", "s1", "--timeout", "1e-9")
        assert code == cli.EXIT_TIMEOUT and "timeout" in err

    def test_verify_failure(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "verify_on_random_line", lambda *a, **k: False)
        code, out, _ = run(capsys, "disc", "linear", "--strategy", "s1")
        assert code == cli.EXIT_VERIFY and "verified: fail" in out

    def test_verification_failure_and_timeout_differ(self):
        assert cli.EXIT_VERIFY != cli.EXIT_TIMEOUT

    def test_shape_failure(self, capsys, monkeypatch):
        def fail(*a, **k):
            raise ShapeFailure("not separating")
        monkeypatch.setitem(cli.STRATEGIES, "s3", fail)
        assert run(capsys, "disc", "linear", "--strategy", "s3")[0] == cli.EXIT_DEGENERATE

    def test_bench_mismatch(self, capsys, monkeypatch):
        monkeypatch.setitem(cli.EXAMPLES, "linear", (3, 5))
        code, out, _ = run(capsys, "bench", "linear")
        assert code == cli.EXIT_MISMATCH and "FAIL" in out


def test_skipped_verification_is_reported(capsys):
    _, out, _ = run(capsys, "disc", "toy", "--strategy", "s1", "--verify", "0")
    assert "verified: skipped" in out
