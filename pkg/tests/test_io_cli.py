"""Canonical documents, the command-line interface and the size benchmark."""

import json

import pytest
from hypothesis import given, strategies as st

from shortmodels import bench
from shortmodels import io as sio
from shortmodels.arith.fields import make_extension
from shortmodels.cli import EXIT_INPUT, EXIT_OK, EXIT_RETRY, EXIT_VERIFY, cli_main


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    """Inputs plus every document the pipelines produce, built once through the CLI."""
    d = tmp_path_factory.mktemp("cli")
    sio.write_document(sio.ff_input_doc(make_extension(7), 2, (1, 0, 0, 0, 0, 1)),
                       str(d / "ff.json"))
    sio.write_document(sio.nf_input_doc([1, 0, 1]), str(d / "nf.json"))
    steps = [("ff", "build", "ff.json", "ff-model.json"),
             ("ff", "cert", "ff-model.json", "ff-cert.json"),
             ("ff", "reconstruct", "ff-cert.json", "ff-rec.json"),
             ("nf", "build", "nf.json", "nf-model.json"),
             ("nf", "cert", "nf-model.json", "nf-cert.json"),
             ("nf", "reconstruct", "nf-cert.json", "nf-rec.json")]
    for fam, action, src, dst in steps:
        code = cli_main([fam, action, "--input", str(d / src), "--output", str(d / dst),
                         "--seed", "1"])
        assert code == EXIT_OK, (fam, action)
    return d


DOCS = ["ff.json", "ff-model.json", "ff-cert.json", "ff-rec.json",
        "nf.json", "nf-model.json", "nf-cert.json", "nf-rec.json"]


@pytest.mark.parametrize("name", DOCS)
def test_serialization_round_trip_is_byte_exact(workdir, name):
    text = (workdir / name).read_text()
    assert sio.dumps(sio.loads(text)) == text


def test_documents_decode_to_equal_objects(workdir):
    cert = sio.ff_cert_from_doc(sio.read_document(str(workdir / "ff-cert.json")))
    assert sio.ff_cert_from_doc(sio.loads(sio.dumps(sio.ff_cert_doc(cert)))) == cert
    ncert, ref = sio.nf_cert_from_doc(sio.read_document(str(workdir / "nf-cert.json")))
    assert ref == [1, 0, 1]
    again, _ = sio.nf_cert_from_doc(sio.loads(sio.dumps(sio.nf_cert_doc(ncert, ref))))
    assert again == ncert


def test_reconstruction_reports(workdir):
    nf = json.loads((workdir / "nf-rec.json").read_text())
    assert nf["verdict"] == "isomorphic" and nf["valid"] is True
    ff = json.loads((workdir / "ff-rec.json").read_text())
    assert ff["valid"] is True


def test_floats_and_bare_integers_are_rejected():
    with pytest.raises(TypeError):
        sio.dumps(sio.document("report", x=1.5))
    with pytest.raises(TypeError):
        sio.dumps(sio.document("report", x=3))


@given(st.recursive(st.text(max_size=5) | st.integers().map(str),
                    lambda c: st.lists(c, max_size=3)
                    | st.dictionaries(st.text(max_size=4), c, max_size=3), max_leaves=10))
def test_dumps_loads_identity_property(payload):
    text = sio.dumps(sio.document("report", payload=payload))
    assert sio.dumps(sio.loads(text)) == text


@pytest.mark.parametrize("text,field", [
    ("[1, 2]", "$"),
    ("{not json", "$"),
    ('{"schema": "1", "kind": "bogus"}', "kind"),
    ('{"schema": "9", "kind": "report"}', "schema"),
])
def test_malformed_documents_name_the_field(text, field):
    with pytest.raises(sio.DocumentError) as exc:
        sio.loads(text)
    assert exc.value.field == field


# --- exit codes -----------------------------------------------------------------------

def test_malformed_input_exits_1(tmp_path, capsys):
    doc = sio.document("nf-input", f=["1", "zero", "1"])
    (tmp_path / "bad.json").write_text(json.dumps(doc))
    assert cli_main(["nf", "build", "--input", str(tmp_path / "bad.json")]) == EXIT_INPUT
    assert "'f" in capsys.readouterr().err


def test_reducible_polynomial_exits_1(tmp_path):
    sio.write_document(sio.nf_input_doc([-1, 0, 1]), str(tmp_path / "red.json"))
    assert cli_main(["nf", "build", "--input", str(tmp_path / "red.json")]) == EXIT_INPUT


def test_wrong_kind_exits_1(workdir, tmp_path):
    assert cli_main(["ff", "cert", "--input", str(workdir / "nf-model.json"),
                     "--output", str(tmp_path / "x.json")]) == EXIT_INPUT


def test_missing_file_exits_1(tmp_path):
    assert cli_main(["verify", "--input", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_retry_exhaustion_exits_3(workdir, tmp_path):
    assert cli_main(["nf", "build", "--input", str(workdir / "nf.json"), "--retries", "0",
                     "--output", str(tmp_path / "x.json")]) == EXIT_RETRY
    assert cli_main(["ff", "build", "--input", str(workdir / "ff.json"), "--retries", "0",
                     "--output", str(tmp_path / "y.json")]) == EXIT_RETRY


@pytest.mark.parametrize("name", ["ff-model.json", "ff-cert.json", "nf-model.json",
                                  "nf-cert.json"])
def test_verify_accepts_pipeline_documents(workdir, tmp_path, name):
    out = tmp_path / "v.json"
    assert cli_main(["verify", "--input", str(workdir / name), "--output", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["valid"] is True


def test_verify_rejects_a_mutated_nf_certificate(workdir, tmp_path):
    doc = sio.read_document(str(workdir / "nf-cert.json"))
    cert, ref = sio.nf_cert_from_doc(doc)
    top = (cert.m - 1) * cert.s
    digits = cert.digits()
    digits[top] = (digits[top] + 1) % cert.p
    bad = type(cert).from_digits(cert.p, cert.s, cert.m, cert.d, cert.H, cert.r, digits, cert.n)
    sio.write_document(sio.nf_cert_doc(bad, ref), str(tmp_path / "bad.json"))
    assert cli_main(["verify", "--input", str(tmp_path / "bad.json"),
                     "--output", str(tmp_path / "v.json")]) == EXIT_VERIFY


def test_verify_rejects_a_mutated_ff_model(workdir, tmp_path):
    doc = sio.read_document(str(workdir / "ff-model.json"))
    o, model = sio.ff_model_from_doc(doc)
    E = model.equations[0]
    K = o.K
    key = min(E.terms)
    E.terms[key] = K.add(E.terms[key], K.one)
    if K.is_zero(E.terms[key]):
        del E.terms[key]
    sio.write_document(sio.ff_model_doc(o, model), str(tmp_path / "bad.json"))
    assert cli_main(["verify", "--input", str(tmp_path / "bad.json"),
                     "--output", str(tmp_path / "v.json")]) == EXIT_VERIFY


def test_build_is_deterministic(workdir, tmp_path):
    out = tmp_path / "again.json"
    assert cli_main(["ff", "build", "--input", str(workdir / "ff.json"), "--output", str(out),
                     "--seed", "1"]) == EXIT_OK
    assert out.read_bytes() == (workdir / "ff-model.json").read_bytes()


def test_toy_certificate_through_the_cli(tmp_path):
    from shortmodels.nf.certificate import NFCertificate
    cert = NFCertificate(p=7, s=1, m=3, d=2, H=3, b=[(108,)], n=2)
    sio.write_document(sio.nf_cert_doc(cert, [-2, 0, 1]), str(tmp_path / "toy.json"))
    out = tmp_path / "rec.json"
    assert cli_main(["nf", "reconstruct", "--input", str(tmp_path / "toy.json"),
                     "--output", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["minimal_polynomial"] == ["-2", "0", "1"]


# --- benchmark --------------------------------------------------------------------------

def test_bench_empty_list():
    assert bench.bench_sizes([]) == []
    assert bench.to_csv([]) == ",".join(bench.COLUMNS) + "\n"


def test_bench_rows_check_payloads():
    fixtures = [f for f in bench.default_fixtures() if f[0] in ("nf-x2+1", "ff-q7-y2-x5+1")]
    rows = bench.bench_sizes(fixtures, seed=0)
    assert [r["id"] for r in rows] == ["ff-q7-y2-x5+1", "nf-x2+1"]
    for row in rows:
        assert row["payload_checked"]
        assert row["cert_bits"] == row["r"] * row["m"] * row["l"] * row["s"] * row["log2q"]
    assert bench.bench_sizes(fixtures, seed=0) == rows
