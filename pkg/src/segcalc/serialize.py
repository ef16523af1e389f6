"""Canonical JSON form of words, virtual sums, sheaf symbols and pages."""
from __future__ import annotations

import json
from importlib import resources

from .groth import UNIT, VirtualRep
from .segments import (
    CuspidalDatum, MalformedWordError, WeightTwist, parse_word,
)
from .sheaves import Kind, SheafSymbol, VirtualSheaf, mgr
from .spectral import (
    Case, Differential, SSPage, TableFunctor, cohomology_table, global_ss, mge_page,
    mle_page, u_table,
)

SCHEMA_VERSION = 1


def word_to_json(w) -> dict:
    if w is UNIT:
        return {"text": "1"}
    return {"text": w.text(), "dual_label": w.base.dual_label, "rank": w.base.rank}


def word_from_json(d: dict):
    if d["text"] == "1":
        return UNIT
    return parse_word(d["text"], d.get("dual_label"), d.get("rank", 1))


def twist_to_json(tw: WeightTwist) -> str:
    return tw.text()


def twist_from_json(s: str) -> WeightTwist:
    return WeightTwist.parse(s)


def rep_to_json(v: VirtualRep) -> list:
    return [{"word": word_to_json(w), "twist": twist_to_json(tw), "coeff": c} for w, tw, c in v]


def rep_from_json(items: list) -> VirtualRep:
    out = VirtualRep()
    for it in items:
        out = out + VirtualRep.of(word_from_json(it["word"]), twist_from_json(it["twist"]), it["coeff"])
    return out


def symbol_to_json(sym: SheafSymbol) -> dict:
    return {
        "kind": sym.kind.name, "g": sym.g, "t": sym.t,
        "base": {"label": sym.base.label, "dual_label": sym.base.dual_label, "rank": sym.base.rank},
        "inducing": word_to_json(sym.inducing), "twist": twist_to_json(sym.twist),
        "ambient_d": sym.ambient_d,
    }


def symbol_from_json(d: dict) -> SheafSymbol:
    b = d["base"]
    return SheafSymbol(Kind[d["kind"]], d["g"], d["t"], CuspidalDatum(b["rank"], b["label"], b["dual_label"]),
                       word_from_json(d["inducing"]), twist_from_json(d["twist"]), d["ambient_d"])


def sheaf_to_json(vs: VirtualSheaf) -> list:
    return [{"symbol": symbol_to_json(sym), "coeff": c} for sym, c in vs]


def sheaf_from_json(items: list) -> VirtualSheaf:
    return VirtualSheaf({symbol_from_json(it["symbol"]): it["coeff"] for it in items})


def _entry_to_json(v):
    if isinstance(v, VirtualSheaf):
        return "sheaf", sheaf_to_json(v), sorted({sym.twist.text() for sym, _ in v})
    return "rep", rep_to_json(v), sorted({tw.text() for _, tw, _ in v})


def _entry_from_json(kind, items):
    return sheaf_from_json(items) if kind == "sheaf" else rep_from_json(items)


def _key_to_json(key, kind):
    if key is None:
        return None
    if kind == "sheaf":
        return symbol_to_json(key)
    w, tw = key
    return {"word": word_to_json(w), "twist": twist_to_json(tw)}


def _key_from_json(d, kind):
    if d is None:
        return None
    if kind == "sheaf":
        return symbol_from_json(d)
    return word_from_json(d["word"]), twist_from_json(d["twist"])


def page_to_json(page: SSPage) -> dict:
    cells = []
    kind = "rep"
    for (i, j) in page.nonzero_cells():
        kind, entry, weight = _entry_to_json(page.cells[(i, j)])
        rec = {"i": i, "j": j, "entry": entry, "weight": weight}
        if (i, j) in page.structure:
            soc, cos = page.structure[(i, j)]
            rec["socle"] = _key_to_json(soc, kind)
            rec["cosocle"] = _key_to_json(cos, kind)
        cells.append(rec)
    diffs = [{"from": list(d.source), "to": list(d.target), "length": d.length,
              "shared_constituent": _key_to_json(d.shared, kind)} for d in page.differentials]
    return {"page": page.page, "frame": page.frame, "entry_type": kind,
            "meta": {k: v for k, v in sorted(page.meta.items())}, "cells": cells, "differentials": diffs}


def page_from_json(d: dict) -> SSPage:
    kind = d.get("entry_type", "rep")
    page = SSPage(d["page"], frame=d.get("frame", ""), meta=dict(d.get("meta", {})))
    for c in d["cells"]:
        pos = (c["i"], c["j"])
        page.cells[pos] = _entry_from_json(kind, c["entry"])
        if "socle" in c:
            page.structure[pos] = (_key_from_json(c["socle"], kind), _key_from_json(c["cosocle"], kind))
    for x in d["differentials"]:
        page.differentials.append(Differential(tuple(x["from"]), tuple(x["to"]), x["length"],
                                               _key_from_json(x["shared_constituent"], kind)))
    return page


# ---------------------------------------------------------------------------
# exportable objects

def export_object(obj: str, s=4, g=1, d=None, t=1, r=1, case="SP", functor="J!*") -> dict:
    """Build the JSON document for one exportable object."""
    if obj == "mle":
        body = page_to_json(mle_page(s, r))
        params = {"s": s, "r": r}
    elif obj == "mge":
        d = d or s * g
        body = page_to_json(mge_page(d, g, r))
        params = {"d": d, "g": g, "r": r}
    elif obj == "mgr":
        body = {"lines": [{"k": k, "terms": [{"t": tt, "twist": twist_to_json(tw)} for tt, tw in mgr(s, k, g)]}
                          for k in range(1 - s, s)]}
        params = {"s": s, "g": g}
    elif obj == "utable":
        d = d or s * g
        body = {"degrees": [{"degree": deg, "word": word_to_json(w), "twist": twist_to_json(tw)}
                            for deg, (w, tw) in sorted(u_table(d, g, s).items())]}
        params = {"d": d, "g": g, "s": s}
    elif obj == "cohtable":
        tab = cohomology_table(case, g, t, s, functor)
        body = {"degrees": [{"degree": i, "expression": e.expr.text(), "xi": {"a": str(e.xi.a), "b": str(e.xi.b)},
                             "entry": rep_to_json(e.rep(g))} for i, e in sorted(tab.items())]}
        params = {"case": Case(case).value, "g": g, "t": t, "s": s, "functor": TableFunctor(functor).value}
    elif obj == "ss":
        d = d or s * g
        ss = global_ss(d, g, case)
        body = {"e2": page_to_json(ss.e2), "connecting_page": ss.connecting_page,
                "multiplicity": ss.multiplicity,
                "abutment": [{"degree": k, "entry": rep_to_json(v)} for k, v in sorted(ss.abutment.items())]}
        params = {"d": d, "g": g, "case": Case(case).value}
    else:
        raise ValueError(f"unknown object {obj!r}")
    return {"schema": SCHEMA_VERSION, "object": obj, "params": params, "data": body}


def import_object(doc: dict):
    """Rebuild Python values from an exported document."""
    obj, data = doc["object"], doc["data"]
    if obj in ("mle", "mge"):
        return page_from_json(data)
    if obj == "mgr":
        return {ln["k"]: [(x["t"], twist_from_json(x["twist"])) for x in ln["terms"]] for ln in data["lines"]}
    if obj == "utable":
        return {x["degree"]: (word_from_json(x["word"]), twist_from_json(x["twist"])) for x in data["degrees"]}
    if obj == "cohtable":
        return {x["degree"]: rep_from_json(x["entry"]) for x in data["degrees"]}
    if obj == "ss":
        return page_from_json(data["e2"]), {x["degree"]: rep_from_json(x["entry"]) for x in data["abutment"]}
    raise MalformedWordError(f"unknown object {obj!r}")


def reexport(doc: dict) -> dict:
    """Serialize the imported values again; equal to ``doc`` for a faithful round trip."""
    val = import_object(doc)
    obj = doc["object"]
    out = dict(doc)
    if obj in ("mle", "mge"):
        out["data"] = page_to_json(val)
    elif obj == "mgr":
        out["data"] = {"lines": [{"k": k, "terms": [{"t": t, "twist": twist_to_json(tw)} for t, tw in v]}
                                 for k, v in val.items()]}
    elif obj == "utable":
        out["data"] = {"degrees": [{"degree": k, "word": word_to_json(w), "twist": twist_to_json(tw)}
                                   for k, (w, tw) in val.items()]}
    elif obj == "cohtable":
        out["data"] = dict(doc["data"], degrees=[dict(x, entry=rep_to_json(val[x["degree"]]))
                                                  for x in doc["data"]["degrees"]])
    elif obj == "ss":
        page, abut = val
        out["data"] = dict(doc["data"], e2=page_to_json(page),
                           abutment=[{"degree": k, "entry": rep_to_json(v)} for k, v in abut.items()])
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=True) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("segcalc").joinpath("schema.json").read_text())


def validate(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, load_schema())
