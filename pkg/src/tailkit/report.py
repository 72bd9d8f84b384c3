"""Report assembly and deterministic JSON / CSV rendering.

Numbers are written with 12 significant digits. Non-finite values become
the strings "inf", "-inf" and "nan", so the JSON stays standard.
"""
from __future__ import annotations

import csv
import io
import json
import math

CSV_COLUMNS = (
    "p", "t", "regime", "mu", "threshold", "M", "lower_exponent_scale",
    "upper_exponent_scale", "lower_log_prob", "upper_tail_bound", "log_upper_tail_bound",
    "optimal_m", "certificate_source", "exact", "empirical", "ci_low", "ci_high", "verdict",
)


def _log(x):
    return math.log(x) if x > 0 else -math.inf


def _cert(cert):
    """Vertex sets stay as given; graph edge sets become 1-indexed pairs."""
    if cert is None:
        return None
    return [[x[0] + 1, x[1] + 1] if isinstance(x, tuple) else x for x in cert]


def point_report(p, t, regime, env, extra, exact, empirical, checks):
    lower = env.lower_log_prob
    bounds = {
        "mu": env.mu,
        "threshold": t * env.mu,
        "lower_log_prob": -math.inf if lower is None else lower,
        "lower_prob": env.lower_prob,
        "upper_tail_bound": env.upper_tail_bound,
        "log_upper_tail_bound": _log(env.upper_tail_bound),
        "optimal_m": env.optimal_m,
        "lower_exponent_scale": env.lower_exponent_scale,
        "upper_exponent_scale": env.upper_exponent_scale,
        "certificate_source": env.certificate_source,
        "certificate_size": None if env.certificate is None else len(env.certificate),
        "certificate": _cert(env.certificate),
    }
    emp = None
    if empirical is not None:
        emp = {"trials": empirical.trials, "seed": empirical.seed, "hits": empirical.hits,
               "estimate": empirical.estimate, "log_estimate": _log(empirical.estimate),
               "ci_low": empirical.ci_low, "ci_high": empirical.ci_high}
    ex = None if exact is None else {"tail": exact, "log_tail": _log(exact)}
    verdict_checks = [{"against": name, "status": v.label, "side": v.side, "margin": v.margin}
                      for name, v in checks]
    if not checks:
        status = "NONE"
    else:
        status = "FAIL" if any(not v.passed for _, v in checks) else "PASS"
    return {"p": p, "t": t, "counts": extra, "regime": regime, "bounds": bounds,
            "empirical": emp, "exact": ex,
            "verdict": {"status": status, "checks": verdict_checks}}


def document(inputs, counts, points, sweep):
    if sweep:
        return {"inputs": inputs, "counts": counts, "points": points}
    (pt,) = points
    return {"inputs": inputs, "counts": {**counts, **pt["counts"]},
            "regime": pt["regime"], "bounds": pt["bounds"], "empirical": pt["empirical"],
            "exact": pt["exact"], "verdict": pt["verdict"]}


def number(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".12g")


def _json(value, indent):
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_json(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(_json(v, 0) for v in value) + "]"
        items = [inner + _json(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]" if items else "[]"
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    s = number(value)
    return s if s[0].isdigit() or s[0] == "-" and s[1:2].isdigit() else json.dumps(s)


def _rows(doc):
    points = doc["points"] if "points" in doc else [{
        "p": doc["inputs"]["p"], "t": doc["inputs"]["t"][0], "counts": doc["counts"],
        "regime": doc["regime"], "bounds": doc["bounds"], "empirical": doc["empirical"],
        "exact": doc["exact"], "verdict": doc["verdict"]}]
    for pt in points:
        b, emp, ex = pt["bounds"], pt["empirical"] or {}, pt["exact"] or {}
        yield {
            "p": pt["p"], "t": pt["t"], "regime": pt["regime"]["label"],
            "mu": b["mu"], "threshold": b["threshold"], "M": pt["counts"].get("M"),
            "lower_exponent_scale": b["lower_exponent_scale"],
            "upper_exponent_scale": b["upper_exponent_scale"],
            "lower_log_prob": b["lower_log_prob"], "upper_tail_bound": b["upper_tail_bound"],
            "log_upper_tail_bound": b["log_upper_tail_bound"], "optimal_m": b["optimal_m"],
            "certificate_source": b["certificate_source"], "exact": ex.get("tail"),
            "empirical": emp.get("estimate"), "ci_low": emp.get("ci_low"),
            "ci_high": emp.get("ci_high"), "verdict": pt["verdict"]["status"],
        }


def emit(doc, fmt):
    if fmt == "json":
        return _json(doc, 0) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in _rows(doc):
        writer.writerow(["" if row[c] is None else number(row[c]) if not isinstance(row[c], str)
                         else row[c] for c in CSV_COLUMNS])
    return buf.getvalue()
