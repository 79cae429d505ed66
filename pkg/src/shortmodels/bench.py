"""Size comparison: classical defining polynomials vs models vs certificates.

For each fixture the table records the bit size of the classical model
(the defining polynomial), of the incomplete-intersection model and of the
interpolant certificate, whose payload is checked against the serialized
document.
"""

import csv
import io as _io

from . import io as sio
from .arith import poly as P
from .arith.fields import make_extension
from .ff.certificate import make_certificate_ff
from .ff.model import build_model, find_coprime_irreducible
from .ff.order import integral_basis, maroni_reduce
from .nf.certificate import make_certificate_nf
from .nf.model import build_model_nf
from .nf.order import maximal_order, small_integers

COLUMNS = ["id", "kind", "n", "classical_bits", "model_coefficients", "model_bits",
           "r", "m", "l", "s", "log2q", "cert_bits", "payload_checked"]


def default_fixtures():
    """A small desk-scale list of function fields and number fields."""
    ff = [
        ("ff-q7-y2-x5+1", 7, 2, (1, 0, 0, 0, 0, 1)),
        ("ff-q5-y2-x6+x+1", 5, 2, (1, 1, 0, 0, 0, 0, 1)),
        ("ff-q7-y3-x4+2x+1", 7, 3, (1, 2, 0, 0, 1)),
    ]
    nf = [
        ("nf-x2+1", [1, 0, 1]),
        ("nf-x2-5", [-5, 0, 1]),
        ("nf-x3-x-1", [-1, -1, 0, 1]),
        ("nf-x4-2", [-2, 0, 0, 0, 1]),
    ]
    out = []
    for name, q, n, f in ff:
        K = make_extension(q)
        out.append((name, sio.ff_input_doc(K, n, f)))
    for name, f in nf:
        out.append((name, sio.nf_input_doc(f)))
    return out


def log2_ceil(q):
    return (q - 1).bit_length()


def ff_row(name, doc, seed=0):
    c = sio.ff_input_from_doc(doc)
    K = c.K
    o = maroni_reduce(integral_basis(c))
    model = build_model(o, seed)
    F = find_coprime_irreducible(model.psi, K)
    cert = make_certificate_ff(o, model, F, seed)
    bits = log2_ceil(K.order)
    if c.kind == "superelliptic":
        classical = (P.degree(c.f) + 2) * bits
    else:
        classical = sum(len(x) for row in c.table for v in row for x in v) * bits
    cdoc = sio.ff_cert_doc(cert)
    expected = cert.r * cert.m * cert.l * cert.s * bits
    measured = len(cdoc["payload"]) * bits
    return {
        "id": name, "kind": "ff", "n": o.n, "classical_bits": classical,
        "model_coefficients": model.coefficient_count(),
        "model_bits": model.coefficient_count() * bits,
        "r": cert.r, "m": cert.m, "l": cert.l, "s": cert.s, "log2q": bits,
        "cert_bits": expected, "payload_checked": measured == expected == cert.payload_bits(),
    }


def nf_row(name, doc, seed=0):
    f, basis = sio.nf_input_from_doc(doc)
    o = small_integers(maximal_order(f, basis))
    model = build_model_nf(o, seed)
    cert = make_certificate_nf(o, model, seed=seed)
    bits = log2_ceil(cert.p)
    classical = sum(abs(c).bit_length() + 1 for c in f)
    coeffs = [c for E in model.equations for c in E.terms.values()]
    cdoc = sio.nf_cert_doc(cert)
    expected = cert.r * cert.m * cert.s * bits
    measured = len(cdoc["digits"]) * bits
    return {
        "id": name, "kind": "nf", "n": o.n, "classical_bits": classical,
        "model_coefficients": len(coeffs),
        "model_bits": sum(abs(c).bit_length() + 1 for c in coeffs),
        "r": cert.r, "m": cert.m, "l": 1, "s": cert.s, "log2q": bits,
        "cert_bits": expected, "payload_checked": measured == expected == cert.payload_bits(),
    }


def bench_sizes(fixtures, seed=0):
    """Rows (dicts keyed by :data:`COLUMNS`) for ``(name, input document)`` pairs."""
    rows = []
    for name, doc in fixtures:
        kind = doc.get("kind")
        if kind == "ff-input":
            rows.append(ff_row(name, doc, seed))
        elif kind == "nf-input":
            rows.append(nf_row(name, doc, seed))
        else:
            raise sio.DocumentError("fixtures", f"unsupported fixture kind {kind!r}")
    return rows


def to_csv(rows):
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (str(v).lower() if isinstance(v, bool) else v) for k, v in row.items()})
    return buf.getvalue()


def to_document(rows, seed=0):
    return sio.report_doc(report="bench", seed=seed, columns=COLUMNS, rows=rows)
