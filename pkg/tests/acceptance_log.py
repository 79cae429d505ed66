"""Collects one PASS/FAIL line per acceptance criterion."""

_RESULTS = {}


def record(number, ok, title, detail=""):
    line = f"ACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  [{detail}]"
    _RESULTS[number] = line
    print(line)
    return ok


def lines():
    return [_RESULTS[k] for k in sorted(_RESULTS)]
