"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 verification failure,
3 retry exhaustion.
"""

import argparse
import sys

from . import bench
from . import io as sio
from .ff.certificate import CertificateError as FFCertificateError
from .ff.certificate import make_certificate_ff, reconstruct_ff
from .ff.model import RetryExhaustedError as FFRetryError
from .ff.model import build_model, find_coprime_irreducible, model_bounds
from .ff.order import CurveInputError, GenusMismatchError, integral_basis, maroni_reduce
from .nf.certificate import CertificateError as NFCertificateError
from .nf.certificate import make_certificate_nf, reconstruct_nf
from .nf.model import RetryExhaustedError as NFRetryError, build_model_nf, model_bounds_nf
from .nf.order import NumberFieldInputError, maximal_order, small_integer_report, small_integers

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_RETRY = 0, 1, 2, 3


class VerificationFailure(Exception):
    def __init__(self, doc, message):
        super().__init__(message)
        self.doc = doc


def _bool(text):
    t = text.strip().lower()
    if t in ("true", "1", "yes", "on"):
        return True
    if t in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _u64(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _common(p):
    p.add_argument("--input", help="input document (default: stdin)")
    p.add_argument("--output", help="output document (default: stdout)")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--retries", type=int, default=10)
    p.add_argument("--escalate-degree", type=_bool, default=True, dest="escalate")
    p.add_argument("--verify-level", choices=("fast", "certified"), default="certified")


def build_parser():
    ap = argparse.ArgumentParser(prog="shortmodels",
                                 description="Short models of function fields and number fields.")
    sub = ap.add_subparsers(dest="command", required=True)
    for fam in ("ff", "nf"):
        p = sub.add_parser(fam, help=f"{'function' if fam == 'ff' else 'number'} fields")
        s2 = p.add_subparsers(dest="action", required=True)
        for action in ("build", "cert", "reconstruct"):
            _common(s2.add_parser(action))
    _common(sub.add_parser("verify", help="check a model or certificate document"))
    b = sub.add_parser("bench", help="size comparison table")
    _common(b)
    b.add_argument("--csv", help="also write the table as CSV to this path")
    return ap


def _read(args):
    if args.input in (None, "-"):
        return sio.loads(sys.stdin.read())
    try:
        return sio.read_document(args.input)
    except OSError as exc:
        raise sio.DocumentError("--input", str(exc)) from exc


def _expect(doc, *kinds):
    if doc["kind"] not in kinds:
        raise sio.DocumentError("kind", f"expected one of {', '.join(kinds)}, got {doc['kind']}")


# --- function fields ------------------------------------------------------------

def ff_build(doc, args):
    _expect(doc, "ff-input", "ff-order")
    if doc["kind"] == "ff-input":
        c = sio.ff_input_from_doc(doc)
    else:
        from .ff.order import CurveInput
        o0 = sio.ff_order_from_payload(doc, "$")
        c = CurveInput(o0.K, "explicit", o0.n, table=o0.table, genus=o0.genus)
    o = maroni_reduce(integral_basis(c))
    model = build_model(o, args.seed, args.retries, args.escalate)
    return sio.ff_model_doc(o, model, model_bounds(o, model))


def ff_cert(doc, args):
    _expect(doc, "ff-model")
    o, model = sio.ff_model_from_doc(doc)
    F = find_coprime_irreducible(model.psi, o.K)
    return sio.ff_cert_doc(make_certificate_ff(o, model, F, args.seed))


def ff_reconstruct(doc, args):
    _expect(doc, "ff-cert")
    cert = sio.ff_cert_from_doc(doc)
    rec = reconstruct_ff(cert)
    K = cert.K
    rep = sio.report_doc(
        report="ff-reconstruct", valid=rec.valid, reason=rec.reason,
        relations=len(rec.relations), witness=rec.witness,
        equations=[sio.enc_multipoly(lambda c: sio.enc_elem(K, c), E)
                   for E in rec.polynomials(K, cert.r)])
    if not rec.valid:
        raise VerificationFailure(rep, rec.reason)
    return rep


# --- number fields --------------------------------------------------------------

def nf_build(doc, args):
    _expect(doc, "nf-input", "nf-order")
    if doc["kind"] == "nf-input":
        f, basis = sio.nf_input_from_doc(doc)
        o = maximal_order(f, basis)
    else:
        o = sio.nf_order_from_payload(doc, "$")
    o = small_integers(o)
    rep = small_integer_report(o)
    model = build_model_nf(o, args.seed, args.retries, args.escalate)
    return sio.nf_model_doc(o, model, model_bounds_nf(o, model), sio.enc_value(rep))


def nf_cert(doc, args):
    _expect(doc, "nf-model")
    o, model = sio.nf_model_from_doc(doc)
    cert = make_certificate_nf(o, model, seed=args.seed)
    return sio.nf_cert_doc(cert, reference=o.f)


def nf_reconstruct(doc, args):
    _expect(doc, "nf-cert")
    cert, ref = sio.nf_cert_from_doc(doc)
    rec = reconstruct_nf(cert, ref, args.seed)
    rep = sio.report_doc(report="nf-reconstruct", valid=rec.valid, verdict=rec.verdict,
                         reason=rec.reason, relations=len(rec.J), witness=rec.witness,
                         theta=rec.theta, minimal_polynomial=rec.minpoly)
    if not rec.valid or rec.verdict == "not-isomorphic":
        raise VerificationFailure(rep, rec.reason)
    return rep


# --- verify / bench ---------------------------------------------------------------

def verify(doc, args):
    kind = doc["kind"]
    certified = args.verify_level == "certified"
    if kind == "ff-model":
        o, model = sio.ff_model_from_doc(doc)
        bounds = model_bounds(o, model)
        checks = {k: v[2] for k, v in bounds.items()}
        if certified:
            checks["vanishing"] = _ff_vanishing(o, model)
    elif kind == "nf-model":
        o, model = sio.nf_model_from_doc(doc)
        bounds = model_bounds_nf(o, model)
        checks = {k: v[2] for k, v in bounds.items() if k != "height_unslacked"}
        if not certified:
            checks.pop("vanishing", None)
    elif kind == "ff-cert":
        cert = sio.ff_cert_from_doc(doc)
        rec = reconstruct_ff(cert)
        checks = {"reconstruction": rec.valid}
    elif kind == "nf-cert":
        cert, ref = sio.nf_cert_from_doc(doc)
        rec = reconstruct_nf(cert, ref if certified else None, args.seed)
        checks = {"reconstruction": rec.valid}
        if certified and ref is not None:
            checks["isomorphic"] = rec.verdict == "isomorphic"
    else:
        raise sio.DocumentError("kind", f"cannot verify a {kind} document")
    ok = all(checks.values())
    rep = sio.report_doc(report="verify", target=kind, level=args.verify_level,
                         checks=checks, valid=ok)
    if not ok:
        raise VerificationFailure(rep, "verification failed")
    return rep


def _ff_vanishing(o, model):
    from .ff.model import evaluate_at_kappas
    kappas = model.kappas(o)
    return all(o.is_zero(evaluate_at_kappas(o, E, kappas)) for E in model.equations)


def run_bench(args):
    if args.input:
        doc = _read(args)
        _expect(doc, "report")
        fixtures = []
        for i, item in enumerate(sio.dec_list(doc.get("fixtures"), "fixtures")):
            if not isinstance(item, dict) or "id" not in item or "input" not in item:
                raise sio.DocumentError(f"fixtures[{i}]", "expected {id, input}")
            fixtures.append((item["id"], item["input"]))
    else:
        fixtures = bench.default_fixtures()
    rows = bench.bench_sizes(fixtures, args.seed)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(bench.to_csv(rows))
    return bench.to_document(rows, args.seed)


HANDLERS = {
    ("ff", "build"): ff_build, ("ff", "cert"): ff_cert, ("ff", "reconstruct"): ff_reconstruct,
    ("nf", "build"): nf_build, ("nf", "cert"): nf_cert, ("nf", "reconstruct"): nf_reconstruct,
}


def cli_main(argv=None):
    """Run the CLI; returns the exit code."""
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            out = run_bench(args)
        else:
            doc = _read(args)
            if args.command == "verify":
                out = verify(doc, args)
            else:
                out = HANDLERS[(args.command, args.action)](doc, args)
    except VerificationFailure as exc:
        sio.write_document(exc.doc, args.output)
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (FFRetryError, NFRetryError) as exc:
        print(f"retries exhausted: {exc}", file=sys.stderr)
        return EXIT_RETRY
    except (FFCertificateError, NFCertificateError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (sio.DocumentError, CurveInputError, GenusMismatchError, NumberFieldInputError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sio.write_document(out, args.output)
    return EXIT_OK


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
