"""Report assembly, JSON round-trip, and plain-text / TSV rendering."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from itq import linalg
from itq.classify import AlgebraProfile, analyze, order_summary
from itq.equitable import (
    MAX_ENUMERATION,
    coarsest_equitable,
    enumerate_equitable,
    quotient,
    verify_transfer,
)
from itq.quiver import Quiver, subhearts
from itq.syzygy import format_relation, kernel_relations, pd_simple

SCHEMA = "itq.report/1"
INFINITY = "infinity"


def num(x) -> Any:
    """JSON-safe number: infinities become the string "infinity"."""
    if isinstance(x, float) and math.isinf(x):
        return INFINITY
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


@dataclass
class Report:
    quiver: Dict[str, Any]
    profile: Dict[str, Any]
    witness: Optional[Dict[str, Any]] = None
    partitions: Optional[Dict[str, Any]] = None
    oracle: Optional[Dict[str, Any]] = None
    warnings: List[str] = field(default_factory=list)
    schema: str = SCHEMA

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    @property
    def failed_checks(self) -> List[str]:
        bad = [c["name"] for c in self.profile["checks"] if not c["ok"]]
        if self.partitions:
            bad += [f"transfer {p['blocks']}" for p in self.partitions["equitable"] if not p["transfer"]["ok"]]
        if self.witness:
            bad += [k for k, v in self.witness.get("verified", {}).items() if v is False]
        return bad

    @property
    def oracle_ok(self) -> Optional[bool]:
        if not self.oracle or "ok" not in self.oracle:
            return None
        return self.oracle["ok"]

    @property
    def exit_code(self) -> int:
        return 2 if self.failed_checks or self.oracle_ok is False else 0


# -- building --------------------------------------------------------------

def quiver_dict(q: Quiver) -> Dict[str, Any]:
    return {"n": q.n, "labels": [q.label(v) for v in range(q.n)], "matrix": q.matrix()}


def psidim_json(p) -> Any:
    if p.exact:
        return p.lo
    return {"lo": p.lo, "hi": p.hi, "exact": False}


def profile_dict(q: Quiver, p: AlgebraProfile) -> Dict[str, Any]:
    cls = p.classification
    sh = subhearts(q)
    m = p.maximality
    return {
        "selfinjective": p.selfinjective,
        "simples": {
            "projective": q.labelset(sorted(cls.projective)),
            "injective": q.labelset(sorted(cls.injective)),
            "sd": q.labelset(sorted(cls.sd)),
        },
        "heart": q.labelset(sorted(p.heart_member.heart)),
        "member": q.labelset(sorted(p.heart_member.member)),
        "subhearts": {
            "final": [q.labelset(sorted(s)) for s in sh.final],
            "initial": [q.labelset(sorted(s)) for s in sh.initial],
        },
        "member_order": order_summary(q),
        "phi_A0": p.phi_A0,
        "rank_trace": list(p.rank_trace),
        "phidim": p.phidim,
        "phidim_op": p.phidim_op,
        "findim": p.findim,
        "findim_zero": p.findim_zero,
        "gldim": num(p.gldim),
        "pd": {q.label(v): num(pd_simple(q, v)) for v in range(q.n)},
        "psidim": psidim_json(p.psidim),
        "psidim_reason": p.psidim.reason,
        "maximality": {
            "phi_maximal": m.phi_maximal,
            "rank_pattern": m.rank_pattern,
            "psi_maximal": m.psi_maximal,
            "audit": asdict(m.audit),
        },
        "low_class": p.low_class,
        "zero_mult": {
            "algebraic": p.zero_mult.algebraic,
            "geometric": p.zero_mult.geometric,
            "nilpotency_index": p.zero_mult.nilpotency_index,
        },
        "char_poly": linalg.poly_str(linalg.char_poly(q.matrix())),
        "kernel": [format_relation(q, r) for r in kernel_relations(q)],
        "checks": [asdict(c) for c in p.checks],
    }


def _module_dict(w) -> Dict[str, Any]:
    return {
        "summands": w.module.names(),
        "achieved_phi": w.achieved_phi,
        "minimal": w.minimal,
        "note": w.construction_note,
    }


def witness_dict(q: Quiver, p: AlgebraProfile, detailed: bool) -> Optional[Dict[str, Any]]:
    from itq.syzygy import FormalModule
    from itq.witness import (
        WitnessError,
        build_witness,
        gamma_graph,
        gamma_structure_ok,
        indecomposable_witness,
        kernel_audit,
        minimal_witness,
    )

    if p.selfinjective:
        return {"selfinjective": True}
    w = build_witness(q)
    out: Dict[str, Any] = {"construction": _module_dict(w), "verified": {"construction": w.achieved_phi == p.phidim}}
    if not detailed:
        return out
    if p.maximality.phi_maximal:
        mw = minimal_witness(q)
        out["minimal"] = _module_dict(mw)
        out["verified"]["minimal"] = mw.achieved_phi == p.phidim and len(mw.module) == 2
    else:
        try:
            out["minimal"] = _module_dict(minimal_witness(q))
        except WitnessError as exc:
            out["minimal"] = {"unavailable": str(exc)}
    iw = indecomposable_witness(q)
    out["indecomposable"] = _module_dict(iw) if iw else None
    sd = FormalModule.of_simples(q, p.classification.sd)
    g = gamma_graph(q, sd)
    out["gamma_SD"] = {
        "vertices": list(g.vertices),
        "edges": sorted(sorted(e) for e in g.edges),
        "components": g.components(),
        "connected": g.is_connected(),
        "components_complete": g.components_complete(),
    }
    out["verified"]["gamma structure"] = gamma_structure_ok(q, sd, g)
    if p.maximality.phi_maximal:
        out["verified"]["gamma_SD connected"] = g.is_connected()
    out["kernel_audit"] = [
        {
            "relation": format_relation(q, a.relation),
            "positive": q.labelset(a.positive),
            "negative": q.labelset(a.negative),
            "single_cover": a.single_cover,
        }
        for a in kernel_audit(q)
    ]
    return out


def partitions_dict(q: Quiver) -> Dict[str, Any]:
    coarse = coarsest_equitable(q)
    out: Dict[str, Any] = {"coarsest": coarse.labelled(q), "equitable": [], "enumerated": q.n <= MAX_ENUMERATION}
    parts = enumerate_equitable(q) if q.n <= MAX_ENUMERATION else [coarse]
    for part in parts:
        res = quotient(q, part)
        t = verify_transfer(q, part)
        out["equitable"].append({
            "blocks": part.labelled(q),
            "r": part.r,
            "quotient_matrix": res.quotient.matrix(),
            "quotient_phidim": t.quotient_phidim,
            "transfer": {
                "charpoly_divides": t.charpoly_divides,
                "no_member_preserved": t.no_member_preserved,
                "phidim_bound_ok": t.phidim_bound_ok,
                "defect_bound_ok": t.defect_bound_ok,
                "maximality_inherited": t.maximality_inherited,
                "certifies_nonmaximal": t.certifies_nonmaximal,
                "notes": list(t.notes),
                "ok": t.ok,
            },
        })
    return out


def oracle_dict(q: Quiver, cap: Optional[int]) -> Dict[str, Any]:
    from itq.oracle import CapExceeded, run_oracle

    try:
        rep = run_oracle(q, cap)
    except CapExceeded as exc:
        return {"skipped": str(exc)}
    return {
        "ok": rep.ok,
        "comparisons": [{"quantity": k, "engine": a, "oracle": b} for k, a, b in rep.comparisons],
        "mismatches": [k for k, _, _ in rep.mismatches],
    }


def build_report(q: Quiver, *, witness: bool = False, partitions: bool = False,
                 oracle: bool = False, cap: Optional[int] = None) -> Report:
    p = analyze(q)
    rep = Report(quiver_dict(q), profile_dict(q, p))
    rep.witness = witness_dict(q, p, detailed=witness)
    if partitions:
        rep.partitions = partitions_dict(q)
        if not rep.partitions["enumerated"]:
            rep.warnings.append(f"more than {MAX_ENUMERATION} vertices: only the coarsest equitable partition was checked")
    if oracle:
        rep.oracle = oracle_dict(q, cap)
        if "skipped" in rep.oracle:
            rep.warnings.append("oracle skipped: " + rep.oracle["skipped"])
    if p.findim > 0:
        rep.warnings.append("findim above zero uses the derived formula 1 + max finite pd of a non-source simple (oracle-validated)")
    if not p.psidim.exact:
        rep.warnings.append(f"psidim only bounded: [{p.psidim.lo}, {p.psidim.hi}]")
    g = (rep.witness or {}).get("gamma_SD")
    if g and not g["components_complete"]:
        rep.warnings.append("Gamma(S_D) has a component that is not complete: "
                            "summands of finite projective dimension are joined to every summand")
    for c in p.failed:
        rep.warnings.append(f"invariant violated: {c.name} ({c.detail})")
    return rep


# -- rendering -------------------------------------------------------------

def _fmt_set(xs) -> str:
    return "{" + ", ".join(xs) + "}"


def _fmt_psidim(v) -> str:
    if isinstance(v, dict):
        return f"[{v['lo']}, {v['hi']}] (not exact)"
    return str(v)


def render_text(rep: Report) -> str:
    q, p = rep.quiver, rep.profile
    lines = [f"quiver: {q['n']} vertices"]
    width = max(len(l) for l in q["labels"])
    for lab, row in zip(q["labels"], q["matrix"]):
        lines.append(f"  {lab:>{width}} | " + " ".join(str(x) for x in row))
    s = p["simples"]
    lines += [
        f"projective simples: {_fmt_set(s['projective'])}",
        f"injective simples:  {_fmt_set(s['injective'])}",
        f"S_D:                {_fmt_set(s['sd'])}",
        f"heart:  {_fmt_set(p['heart'])}",
        f"member: {_fmt_set(p['member'])}",
        "final subhearts:   " + " ".join(_fmt_set(x) for x in p["subhearts"]["final"]),
        "initial subhearts: " + " ".join(_fmt_set(x) for x in p["subhearts"]["initial"]),
        f"member total order: {p['member_order']['total_order']}, "
        f"longest member path to a sink: {p['member_order']['longest_path_to_sink']}",
        f"selfinjective: {p['selfinjective']}",
        f"phi(A0) = {p['phi_A0']}   rank trace {' '.join(map(str, p['rank_trace']))}",
        f"phidim = {p['phidim']}   (opposite: {p['phidim_op']})",
        f"findim = {p['findim']}   gldim = {p['gldim']}",
        f"psidim = {_fmt_psidim(p['psidim'])}   ({p['psidim_reason']})",
        f"char poly: {p['char_poly']}",
        f"zero eigenvalue: algebraic {p['zero_mult']['algebraic']}, geometric {p['zero_mult']['geometric']}",
    ]
    m = p["maximality"]
    lines.append(f"phi-maximal: {m['phi_maximal']}   psi-maximal: {m['psi_maximal']}")
    if p["low_class"] is not None:
        lines.append(f"low-phidim class: {p['low_class']}")
    for rel in p["kernel"]:
        lines.append(f"kernel of Omega-bar: {rel} -> 0")
    bad = [c for c in p["checks"] if not c["ok"]]
    lines.append(f"theorem checks: {len(p['checks']) - len(bad)}/{len(p['checks'])} hold")
    for c in bad:
        lines.append(f"  FAILED {c['name']}: {c['detail']}")

    w = rep.witness
    if w and not w.get("selfinjective"):
        c = w["construction"]
        lines.append(f"witness: {' + '.join(c['summands'])}  phi = {c['achieved_phi']}  [{c['note']}]")
        mw = w.get("minimal")
        if mw and "summands" in mw:
            lines.append(f"minimal witness: {' + '.join(mw['summands'])}  phi = {mw['achieved_phi']}")
        elif mw:
            lines.append(f"minimal witness: {mw['unavailable']}")
        if w.get("indecomposable"):
            lines.append(f"indecomposable witness: {w['indecomposable']['summands'][0]}")
        if "gamma_SD" in w:
            g = w["gamma_SD"]
            lines.append("Gamma(S_D) components: " + " ".join(_fmt_set(c) for c in g["components"]))
        for a in w.get("kernel_audit", []):
            lines.append(f"kernel audit {a['relation']}: single projective cover possible: {a['single_cover']}")

    if rep.partitions:
        lines.append(f"coarsest equitable partition: {_blocks(rep.partitions['coarsest'])}")
        for e in rep.partitions["equitable"]:
            t = e["transfer"]
            lines.append(
                f"  {_blocks(e['blocks'])}: quotient {e['quotient_matrix']} phidim {e['quotient_phidim']}"
                f"  transfer {'ok' if t['ok'] else 'FAILED'}"
                + ("  certifies non-maximal" if t["certifies_nonmaximal"] else "")
            )
    if rep.oracle:
        if "skipped" in rep.oracle:
            lines.append(f"oracle: skipped ({rep.oracle['skipped']})")
        else:
            lines.append("oracle: " + ("agree" if rep.oracle["ok"] else "MISMATCH " + ", ".join(rep.oracle["mismatches"])))
    for msg in rep.warnings:
        lines.append(f"warning: {msg}")
    return "\n".join(lines)


def _blocks(blocks) -> str:
    return "{" + ", ".join(_fmt_set(b) for b in blocks) + "}"


TSV_COLUMNS = ("name", "n", "arrows", "phi_A0", "phidim", "findim", "gldim", "psidim",
               "phi_maximal", "psi_maximal", "low_class", "checks")


def tsv_row(name: str, rep: Report) -> List[str]:
    p = rep.profile
    pdim = p["psidim"]
    psid = f"{pdim['lo']}..{pdim['hi']}" if isinstance(pdim, dict) else str(pdim)
    arrows = sum(sum(r) for r in rep.quiver["matrix"])
    checks = "ok" if not rep.failed_checks else "FAILED:" + ";".join(rep.failed_checks)
    return [name, str(rep.quiver["n"]), str(arrows), str(p["phi_A0"]), str(p["phidim"]),
            str(p["findim"]), str(p["gldim"]), psid, str(p["maximality"]["phi_maximal"]),
            str(p["maximality"]["psi_maximal"]), str(p["low_class"]), checks]
