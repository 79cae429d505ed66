"""Canonical JSON documents for orders, models, certificates and reports.

Every document is a JSON object with ``schema`` and ``kind`` keys.  Numbers
are written as decimal strings (rationals as ``"num/den"``), keys are
sorted, and finite-field elements are coordinate lists over the prime field
in the deterministic tower of extensions.  Serialization is therefore
byte-deterministic and ``dumps(loads(text)) == text``.
"""

import json
from fractions import Fraction

import sympy

from .arith.fields import make_extension
from .arith.multipoly import MultiPoly
from .arith import poly as P

SCHEMA = "1"
KINDS = ("ff-input", "ff-order", "ff-model", "ff-cert",
         "nf-input", "nf-order", "nf-model", "nf-cert", "report")


class DocumentError(ValueError):
    """Malformed input document; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"field '{field}': {message}")
        self.field = field


# --- canonical text ------------------------------------------------------------

def _check_no_floats(obj, path="$"):
    if isinstance(obj, float):
        raise TypeError(f"float at {path}; numbers must be decimal strings")
    if isinstance(obj, dict):
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError(f"non-string key at {path}")
            _check_no_floats(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check_no_floats(v, f"{path}[{i}]")
    elif isinstance(obj, int) and not isinstance(obj, bool):
        raise TypeError(f"bare integer at {path}; numbers must be decimal strings")


def dumps(doc):
    _check_no_floats(doc)
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=True,
                      separators=(",", ": ")) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"not valid JSON ({exc.msg})") from exc
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError("kind", f"unknown kind {kind!r}")
    if doc.get("schema") != SCHEMA:
        raise DocumentError("schema", f"expected schema {SCHEMA!r}")
    return doc


def read_document(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_document(doc, path=None):
    text = dumps(doc)
    if path is None or path == "-":
        import sys
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def document(kind, **payload):
    if kind not in KINDS:
        raise ValueError(kind)
    return {"schema": SCHEMA, "kind": kind, **payload}


# --- scalars -------------------------------------------------------------------

def enc_int(x):
    return str(int(x))


def dec_int(v, field, lo=None):
    if not isinstance(v, str):
        raise DocumentError(field, "expected a decimal string")
    try:
        x = int(v, 10)
    except ValueError as exc:
        raise DocumentError(field, f"not a decimal integer: {v!r}") from exc
    if lo is not None and x < lo:
        raise DocumentError(field, f"must be >= {lo}")
    return x


def enc_rat(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dec_rat(v, field):
    if not isinstance(v, str):
        raise DocumentError(field, "expected a rational as a decimal string")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(field, f"not a rational: {v!r}") from exc


def enc_bool(b):
    return bool(b)


def get(doc, key, field=None):
    field = field or key
    if key not in doc:
        raise DocumentError(field, "missing")
    return doc[key]


def dec_list(v, field, length=None):
    if not isinstance(v, list):
        raise DocumentError(field, "expected a list")
    if length is not None and len(v) != length:
        raise DocumentError(field, f"expected {length} entries, got {len(v)}")
    return v


def enc_ints(xs):
    return [enc_int(x) for x in xs]


def dec_ints(v, field, length=None):
    return [dec_int(x, f"{field}[{i}]") for i, x in enumerate(dec_list(v, field, length))]


# --- finite fields ----------------------------------------------------------------

def field_of_order(q, field="q"):
    if q < 2:
        raise DocumentError(field, "field order must be >= 2")
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise DocumentError(field, f"{q} is not a prime power")
    (p, e), = fac.items()
    return make_extension(int(p), int(e))


def enc_elem(K, a):
    return enc_ints(K.coords(a))


def dec_elem(K, v, field):
    w = K.absolute_degree
    cs = dec_ints(v, field, w)
    if any(not 0 <= c < K.char for c in cs):
        raise DocumentError(field, f"coordinate outside [0, {K.char})")
    return K.from_coords(cs)


def enc_poly(K, f):
    return [enc_elem(K, c) for c in P.normalize(K, f)]


def dec_poly(K, v, field):
    return P.normalize(K, tuple(dec_elem(K, c, f"{field}[{i}]")
                                for i, c in enumerate(dec_list(v, field))))


def enc_multipoly(enc_coeff, E):
    return [[enc_ints(e), enc_coeff(c)] for e, c in sorted(E.terms.items())]


def dec_multipoly(ring, nvars, dec_coeff, v, field):
    terms = {}
    for i, t in enumerate(dec_list(v, field)):
        t = dec_list(t, f"{field}[{i}]", 2)
        e = tuple(dec_ints(t[0], f"{field}[{i}][0]", nvars))
        terms[e] = dec_coeff(t[1], f"{field}[{i}][1]")
    return MultiPoly(ring, nvars, terms)


# --- function fields ------------------------------------------------------------

def ff_order_payload(o):
    K = o.K
    return {
        "q": enc_int(K.order),
        "n": enc_int(o.n),
        "genus": enc_int(o.genus),
        "a": enc_ints(o.a) if o.a is not None else None,
        "table": [[[enc_poly(K, c) for c in v] for v in row] for row in o.table],
    }


def ff_order_from_payload(d, field="order"):
    from .ff.order import FunctionFieldOrder
    K = field_of_order(dec_int(get(d, "q", f"{field}.q"), f"{field}.q"), f"{field}.q")
    n = dec_int(get(d, "n", f"{field}.n"), f"{field}.n", 2)
    g = dec_int(get(d, "genus", f"{field}.genus"), f"{field}.genus", 0)
    a = d.get("a")
    a = dec_ints(a, f"{field}.a", n) if a is not None else None
    tab = dec_list(get(d, "table", f"{field}.table"), f"{field}.table", n)
    table = []
    for i, row in enumerate(tab):
        row = dec_list(row, f"{field}.table[{i}]", n)
        trow = []
        for j, v in enumerate(row):
            v = dec_list(v, f"{field}.table[{i}][{j}]", n)
            trow.append([dec_poly(K, c, f"{field}.table[{i}][{j}][{k}]")
                         for k, c in enumerate(v)])
        table.append(trow)
    return FunctionFieldOrder(K, n, table, g, a)


def ff_input_from_doc(doc):
    """``ff-input`` (a curve) to a :class:`CurveInput`."""
    from .ff.order import CurveInput
    K = field_of_order(dec_int(get(doc, "q"), "q"))
    kind = get(doc, "curve")
    n = dec_int(get(doc, "n"), "n", 2)
    if kind == "superelliptic":
        return CurveInput(K, "superelliptic", n, f=dec_poly(K, get(doc, "f"), "f"),
                          genus=dec_int(doc["genus"], "genus") if "genus" in doc else None)
    if kind == "explicit":
        o = ff_order_from_payload({"q": doc["q"], "n": doc["n"], "genus": get(doc, "genus"),
                                   "table": get(doc, "table")}, "$")
        return CurveInput(K, "explicit", n, table=o.table, genus=o.genus)
    raise DocumentError("curve", "expected 'superelliptic' or 'explicit'")


def ff_input_doc(K, n, f, genus=None):
    d = document("ff-input", q=enc_int(K.order), curve="superelliptic", n=enc_int(n),
                 f=enc_poly(K, f))
    if genus is not None:
        d["genus"] = enc_int(genus)
    return d


def ff_model_doc(o, model, bounds=None):
    K = o.K
    enc_c = lambda c: enc_elem(K, c)
    p = model.params
    payload = {
        "d": enc_int(model.d),
        "d_x": enc_int(model.d_x),
        "d_y": enc_int(model.d_y),
        "rho": enc_int(model.rho),
        "r": enc_int(p.r),
        "h": enc_int(p.h),
        "nu": enc_int(p.nu),
        "recipe": [[enc_poly(K, u) for u in row] for row in model.recipe],
        "equations": [enc_multipoly(enc_c, E) for E in model.equations],
        "profile": enc_ints(model.profile),
        "minor": enc_ints(model.minor),
        "psi": enc_poly(K, model.psi),
        "guard_degree": enc_int(model.guard_degree),
        "seed": enc_int(model.seed),
        "attempts": {str(k): enc_int(v) for k, v in model.attempts.items()},
        "coefficients": enc_int(model.coefficient_count()),
    }
    doc = document("ff-model", order=ff_order_payload(o), model=payload)
    if bounds is not None:
        doc["bounds"] = enc_bounds(bounds)
    return doc


def ff_model_from_doc(doc):
    from .ff.model import FFModel, ff_params
    o = ff_order_from_payload(get(doc, "order"))
    if o.a is None:
        raise DocumentError("order.a", "model documents need the Maroni invariants")
    K = o.K
    m = get(doc, "model")
    f = "model"
    r = dec_int(get(m, "r", f"{f}.r"), f"{f}.r", 1)
    d = dec_int(get(m, "d", f"{f}.d"), f"{f}.d", 1)
    params = ff_params(o.n, o.genus, K.order)
    recipe = [[dec_poly(K, u, f"{f}.recipe[{i}][{j}]")
               for j, u in enumerate(dec_list(row, f"{f}.recipe[{i}]", r))]
              for i, row in enumerate(dec_list(get(m, "recipe", f"{f}.recipe"),
                                               f"{f}.recipe", o.n))]
    dec_c = lambda v, fld: dec_elem(K, v, fld)
    eqs = [dec_multipoly(K, r + 1, dec_c, E, f"{f}.equations[{i}]")
           for i, E in enumerate(dec_list(get(m, "equations", f"{f}.equations"),
                                          f"{f}.equations"))]
    model = FFModel(params, d, recipe, eqs,
                    dec_ints(get(m, "profile", f"{f}.profile"), f"{f}.profile"),
                    dec_ints(get(m, "minor", f"{f}.minor"), f"{f}.minor", r),
                    dec_poly(K, get(m, "psi", f"{f}.psi"), f"{f}.psi"),
                    dec_int(get(m, "guard_degree", f"{f}.guard_degree"), f"{f}.guard_degree"),
                    dec_int(m.get("seed", "0"), f"{f}.seed"),
                    {int(k): dec_int(v, f"{f}.attempts.{k}")
                     for k, v in m.get("attempts", {}).items()})
    return o, model


def ff_cert_doc(cert):
    from .ff.certificate import coords_over
    K, S = cert.K, cert.S
    payload = []
    for bj in cert.b:
        for c in bj:
            payload.extend(enc_elem(K, x) for x in coords_over(S, K, c))
    return document("ff-cert", q=enc_int(K.order), F=enc_poly(K, cert.F), s=enc_int(cert.s),
                    m=enc_int(cert.m), d_x=enc_int(cert.d_x), d_y=enc_int(cert.d_y),
                    r=enc_int(cert.r), n=enc_int(cert.n), rho=enc_int(cert.rho),
                    l=enc_int(cert.l), payload=payload)


def ff_cert_from_doc(doc):
    from .ff.certificate import FFCertificate, from_coords_over, residue_extension, _S_field
    K = field_of_order(dec_int(get(doc, "q"), "q"))
    F = dec_poly(K, get(doc, "F"), "F")
    if P.degree(F) < 1:
        raise DocumentError("F", "must have positive degree")
    if not P.is_irreducible(K, F):
        raise DocumentError("F", "must be irreducible")
    s = dec_int(get(doc, "s"), "s", 1)
    m = dec_int(get(doc, "m"), "m", 1)
    r = dec_int(get(doc, "r"), "r", 1)
    l = P.degree(F)
    S = _S_field(residue_extension(K, F), s)
    flat = dec_list(get(doc, "payload"), "payload", r * m * l * s)
    elems = [dec_elem(K, v, f"payload[{i}]") for i, v in enumerate(flat)]
    b = []
    w = l * s
    for j in range(r):
        bj = []
        for k in range(m):
            off = (j * m + k) * w
            bj.append(from_coords_over(S, K, elems[off:off + w]))
        b.append(tuple(bj))
    return FFCertificate(K, tuple(P.monic(K, F)), s, m, dec_int(get(doc, "d_x"), "d_x", 0),
                         dec_int(get(doc, "d_y"), "d_y", 1), b,
                         dec_int(doc["n"], "n") if "n" in doc else None,
                         dec_int(doc["rho"], "rho") if "rho" in doc else None)


# --- number fields --------------------------------------------------------------

def nf_input_doc(f, basis=None):
    d = document("nf-input", f=enc_ints(f))
    if basis is not None:
        d["basis"] = [[enc_rat(x) for x in row] for row in basis]
    return d


def nf_input_from_doc(doc):
    f = dec_ints(get(doc, "f"), "f")
    if len(f) < 2:
        raise DocumentError("f", "polynomial must have degree >= 1")
    basis = doc.get("basis")
    if basis is not None:
        n = len(f) - 1
        basis = [[dec_rat(x, f"basis[{i}][{j}]") for j, x in enumerate(dec_list(row, f"basis[{i}]", n))]
                 for i, row in enumerate(dec_list(basis, "basis", n))]
    return f, basis


def nf_order_payload(o):
    return {"f": enc_ints(o.f), "den": enc_int(o.den), "basis": [enc_ints(h) for h in o.H],
            "disc": enc_int(o.disc)}


def nf_order_from_payload(d, field="order"):
    from .nf.order import _order_from_rows, NumberFieldInputError
    f = dec_ints(get(d, "f", f"{field}.f"), f"{field}.f")
    n = len(f) - 1
    den = dec_int(get(d, "den", f"{field}.den"), f"{field}.den", 1)
    H = [dec_ints(h, f"{field}.basis[{i}]", n)
         for i, h in enumerate(dec_list(get(d, "basis", f"{field}.basis"), f"{field}.basis", n))]
    try:
        o = _order_from_rows(f, den, H)
    except NumberFieldInputError as exc:
        raise DocumentError(f"{field}.basis", str(exc)) from exc
    if "disc" in d and dec_int(d["disc"], f"{field}.disc") != o.disc:
        raise DocumentError(f"{field}.disc", "does not match the basis")
    return o


def nf_model_doc(o, model, bounds=None, report=None):
    p = model.params
    enc_c = enc_int
    payload = {
        "d": enc_int(model.d),
        "r": enc_int(p.r),
        "H": enc_int(p.H),
        "G": enc_int(p.G),
        "delta_sq": enc_int(p.delta_sq),
        "recipe": [enc_ints(row) for row in model.recipe],
        "equations": [enc_multipoly(enc_c, E) for E in model.equations],
        "lattice": [enc_ints(v) for v in model.vectors],
        "minor": enc_ints(model.minor),
        "phi": enc_ints(model.phi),
        "norm_phi": enc_int(model.norm_phi),
        "guard": enc_int(model.guard),
        "psi": enc_int(model.psi),
        "seed": enc_int(model.seed),
        "attempts": {str(k): enc_int(v) for k, v in model.attempts.items()},
    }
    doc = document("nf-model", order=nf_order_payload(o), model=payload)
    if bounds is not None:
        doc["bounds"] = enc_bounds(bounds)
    if report is not None:
        doc["small_integers"] = report
    return doc


def nf_model_from_doc(doc):
    from .arith.fields import ZZ
    from .arith.multipoly import monomials
    from .nf.model import NFModel, nf_params
    o = nf_order_from_payload(get(doc, "order"))
    m = get(doc, "model")
    f = "model"
    d = dec_int(get(m, "d", f"{f}.d"), f"{f}.d", 1)
    params = nf_params(o.n, abs(o.disc), d)
    r = params.r
    recipe = [dec_ints(row, f"{f}.recipe[{i}]", r)
              for i, row in enumerate(dec_list(get(m, "recipe", f"{f}.recipe"), f"{f}.recipe", o.n))]
    eqs = [dec_multipoly(ZZ, r, lambda v, fld: dec_int(v, fld), E, f"{f}.equations[{i}]")
           for i, E in enumerate(dec_list(get(m, "equations", f"{f}.equations"), f"{f}.equations"))]
    monos = monomials(r, d)
    vecs = [dec_ints(v, f"{f}.lattice[{i}]", len(monos))
            for i, v in enumerate(dec_list(get(m, "lattice", f"{f}.lattice"), f"{f}.lattice"))]
    model = NFModel(params, recipe, eqs, vecs, monos,
                    dec_ints(get(m, "minor", f"{f}.minor"), f"{f}.minor", r),
                    dec_ints(get(m, "phi", f"{f}.phi"), f"{f}.phi", o.n),
                    dec_int(get(m, "norm_phi", f"{f}.norm_phi"), f"{f}.norm_phi"),
                    dec_int(get(m, "guard", f"{f}.guard"), f"{f}.guard"),
                    dec_int(get(m, "psi", f"{f}.psi"), f"{f}.psi"),
                    dec_int(m.get("seed", "0"), f"{f}.seed"),
                    {int(k): dec_int(v, f"{f}.attempts.{k}") for k, v in m.get("attempts", {}).items()})
    if model.psi == 0:
        raise DocumentError(f"{f}.psi", "must be nonzero")
    return o, model


def nf_cert_doc(cert, reference=None):
    doc = document("nf-cert", p=enc_int(cert.p), s=enc_int(cert.s), m=enc_int(cert.m),
                   d=enc_int(cert.d), H=enc_int(cert.H), r=enc_int(cert.r),
                   modulus=enc_ints(cert.modulus), digits=enc_ints(cert.digits()))
    if cert.n is not None:
        doc["n"] = enc_int(cert.n)
    if reference is not None:
        doc["reference"] = enc_ints(reference)
    return doc


def nf_cert_from_doc(doc):
    from .nf.certificate import NFCertificate
    p = dec_int(get(doc, "p"), "p", 2)
    if not sympy.isprime(p):
        raise DocumentError("p", "must be prime")
    s = dec_int(get(doc, "s"), "s", 1)
    m = dec_int(get(doc, "m"), "m", 1)
    r = dec_int(get(doc, "r"), "r", 1)
    digits = dec_ints(get(doc, "digits"), "digits", r * m * s)
    if any(not 0 <= x < p for x in digits):
        raise DocumentError("digits", f"digit outside [0, {p})")
    cert = NFCertificate.from_digits(p, s, m, dec_int(get(doc, "d"), "d", 1),
                                     dec_int(get(doc, "H"), "H", 1), r, digits,
                                     dec_int(doc["n"], "n", 1) if "n" in doc else None)
    if "modulus" in doc and dec_ints(doc["modulus"], "modulus") != cert.modulus:
        raise DocumentError("modulus", "does not match the deterministic residue modulus")
    ref = dec_ints(doc["reference"], "reference") if "reference" in doc else None
    return cert, ref


# --- reports --------------------------------------------------------------------

def enc_value(v):
    """Encode plain Python values (ints, rationals, bools, strings, lists, dicts)."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return enc_int(v)
    if isinstance(v, Fraction):
        return enc_rat(v)
    if isinstance(v, str):
        return v
    if isinstance(v, dict):
        return {str(k): enc_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [enc_value(x) for x in v]
    raise TypeError(f"cannot encode {type(v).__name__}")


def enc_bounds(bounds):
    return {k: {"lhs": enc_value(l), "rhs": enc_value(r), "ok": bool(ok)}
            for k, (l, r, ok) in bounds.items()}


def report_doc(**fields):
    return document("report", **{k: enc_value(v) for k, v in fields.items()})
