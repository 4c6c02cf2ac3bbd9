"""Assembly of the analysis report and its text rendering."""

import json
import time
from collections import Counter
from math import gcd

from . import __version__
from .central import central_generators, central_rank, is_cut
from .errors import IncompletePCI, InvariantError, NotEligible
from .groups import (
    SUBGROUP_BOUND,
    center,
    commutator_subgroup,
    conjugacy_classes,
    cyclic_subgroup_class_count,
    is_nilpotent,
    normalizer,
)
from .idempotents import pci_strongly_monomial
from .predicates import (
    has_exceptional,
    hfa,
    higman_finite_units,
    virtually_free_by_free,
    virtually_free_product_abelian,
)
from .ring import element_hat, idempotent_record
from .units import (
    alternating_unit,
    bass_is_torsion,
    generalized_bicyclic,
    jespers_leal_generators,
    jespers_parmenter_obstruction,
    marciniak_sehgal_pair,
)
from .exact import multiplicative_order
from .wedderburn import decomposition_report, decomposition_text

SECTIONS = ("idempotents", "wedderburn", "units", "central", "predicates")
EXPLICIT_TERMS_BOUND = 16


def _labels(S):
    return [S.parent.label(g) for g in S.members]


def group_summary(G):
    cc = conjugacy_classes(G)
    return {
        "name": G.name,
        "order": G.order,
        "labels": list(G.labels),
        "abelian": G.is_abelian,
        "nilpotent": is_nilpotent(G),
        "exponent": G.exponent,
        "conjugacy_classes": cc.class_count,
        "real_classes": cc.real_closed_count,
        "cyclic_subgroup_classes": cyclic_subgroup_class_count(G),
        "center": _labels(center(G)),
        "derived_subgroup": _labels(commutator_subgroup(G)),
    }


class _Context:
    """Shared intermediate results so each section is computed once."""

    def __init__(self, G, bound, seed):
        self.G, self.bound, self.seed = G, bound, seed
        self._pci = None
        self._entries = None
        self._entries_error = None

    @property
    def pci(self):
        if self._pci is None:
            self._pci = pci_strongly_monomial(self.G, self.bound, self.seed)
        return self._pci

    @property
    def entries(self):
        if self._entries is None and self._entries_error is None:
            try:
                self._entries = decomposition_report(self.G, self.bound, self.seed, self.pci)
            except IncompletePCI as exc:
                self._entries_error = exc
        if self._entries_error is not None:
            raise self._entries_error
        return self._entries


def idempotents_section(ctx):
    G, pci = ctx.G, ctx.pci
    items = []
    for rec in pci.pairs:
        items.append({
            "pair": {"H": _labels(rec.H), "K": _labels(rec.K)},
            "epsilon_terms": rec.epsilon.terms(),
            "e_terms": rec.e_idem.terms(),
            "flags": {"ss1": rec.ss1, "ss2": rec.ss2, "ss3": rec.ss3},
        })
    return {
        "count": len(pci),
        "d": cyclic_subgroup_class_count(G),
        "complete": pci.complete,
        "certified_strongly_monomial": pci.certified_strongly_monomial,
        "idempotents": items,
    }


def wedderburn_section(ctx):
    try:
        entries = ctx.entries
    except IncompletePCI as exc:
        return {"error": type(exc).__name__, "message": str(exc)}
    comps = []
    for e in entries:
        d = e.descriptor.to_json()
        c = e.classification
        d["classification"] = c.to_json()
        d["exceptional"] = c.exceptional
        comps.append(d)
    return {
        "decomposition": decomposition_text(entries),
        "dimension_sum": sum(e.descriptor.dimension for e in entries),
        "components": comps,
    }


def _emit(units, explicit):
    return [u.to_json(terms=explicit) for u in units]


def units_section(ctx):
    G = ctx.G
    explicit = G.order <= EXPLICIT_TERMS_BOUND
    gens = jespers_leal_generators(G)
    bass = []
    for u in gens:
        if u.kind == "BASS":
            params = dict(u.params)
            item = u.to_json(terms=explicit)
            item["torsion"] = bass_is_torsion(G, params["g"], params["k"])
            bass.append(item)

    alternating, seen = [], set()
    for g in G.elements:
        n = G.element_order(g)
        if n % 2 == 0 or n == 1:
            continue
        for k in range(3, 2 * n, 2):
            if gcd(k, 2 * n) != 1:
                continue
            unit = alternating_unit(G, g, k, multiplicative_order(k, 2 * n))
            if unit.is_one or unit.u in seen:
                continue
            seen.add(unit.u)
            alternating.append(unit)

    generalized, seen = [], set()
    for g in G.elements:
        if G.is_normal_in(G.cyclic(g)):
            continue
        rec = idempotent_record(element_hat(G, g))
        for x in G.elements:
            for side in ("left", "right"):
                unit = generalized_bicyclic(rec, x, side)
                if unit.is_one or unit.u in seen:
                    continue
                seen.add(unit.u)
                generalized.append(unit)

    certificates, seen = [], set()
    for g in G.elements:
        for h in G.elements:
            if g in normalizer(G, G.cyclic(h)):
                continue
            u, _, cert = marciniak_sehgal_pair(G, g, h)
            if u.u in seen:
                continue
            seen.add(u.u)
            certificates.append({"unit": u.describe(), "order_h": G.element_order(h),
                                 **cert.to_json()})

    kinds = Counter(u.kind for u in gens)
    kinds["ALTERNATING"] = len(alternating)
    kinds["GEN_BICYCLIC"] = len(generalized)
    return {
        "counts": dict(sorted(kinds.items())),
        "explicit_terms": explicit,
        "bass": bass,
        "bicyclic": _emit([u for u in gens if u.kind != "BASS"], explicit),
        "alternating": _emit(alternating, explicit),
        "generalized_bicyclic": _emit(generalized, explicit),
        "free_pair_certificates": certificates,
        "all_verified": True,
    }


def central_section(ctx):
    G = ctx.G
    rank = central_rank(G)
    out = {"rank": rank.to_json(), "cut": is_cut(G)}
    try:
        gens = central_generators(G, ctx.seed)
        out["eligible"] = True
        out["generators"] = [u.to_json(terms=G.order <= EXPLICIT_TERMS_BOUND) for u in gens.units]
        out["generator_count"] = len(gens.units)
        out["count_at_least_rank"] = gens.count_at_least_rank
    except NotEligible as exc:
        out["eligible"] = False
        out["reason"] = str(exc)
    return out


def predicates_section(ctx):
    G = ctx.G
    out = {
        "higman_finite_units": higman_finite_units(G),
        "cut": is_cut(G),
        "jespers_parmenter": jespers_parmenter_obstruction(G).to_json(),
    }
    try:
        entries = ctx.entries
    except IncompletePCI as exc:
        for key in ("has_exceptional", "hfa", "virtually_free_product_abelian",
                    "virtually_free_by_free"):
            out[key] = {"value": "UNKNOWN", "reason": f"IncompletePCI: {exc}"}
        return out
    out["has_exceptional"] = has_exceptional(G, entries).to_json()
    out["hfa"] = hfa(G, entries).to_json()
    out["virtually_free_product_abelian"] = virtually_free_product_abelian(G, entries).to_json()
    out["virtually_free_by_free"] = virtually_free_by_free(G, entries).to_json()
    return out


_BUILDERS = {
    "idempotents": idempotents_section,
    "wedderburn": wedderburn_section,
    "units": units_section,
    "central": central_section,
    "predicates": predicates_section,
}


def validate_report(report):
    """Self-consistency checks run before a report is emitted."""
    g = report["group"]
    w = report.get("wedderburn")
    if w is not None and "error" not in w and w["dimension_sum"] != g["order"]:
        raise InvariantError("component dimensions do not sum to |G|")
    i = report.get("idempotents")
    if i is not None and i["certified_strongly_monomial"] and i["count"] != g["cyclic_subgroup_classes"]:
        raise InvariantError("certified PCI count differs from d")
    c = report.get("central")
    if c is not None and c["cut"] != (c["rank"]["rank"] == 0):
        raise InvariantError("cut flag disagrees with rank 0")
    if w is not None and i is not None and "error" not in w and len(w["components"]) != i["count"]:
        raise InvariantError("component count differs from the PCI count")


def build_report(G, sections=SECTIONS, seed=0, bound=SUBGROUP_BOUND, input_echo=None,
                 timings=False):
    ctx = _Context(G, bound, seed)
    report = {"tool": "groupring", "version": __version__, "input": input_echo or {},
              "group": group_summary(G)}
    times = {}
    for name in sections:
        start = time.perf_counter()
        report[name] = _BUILDERS[name](ctx)
        times[name] = round(time.perf_counter() - start, 3)
    if timings:
        report["timings"] = times
    validate_report(report)
    return report


def to_json_text(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def _tri(v):
    return v["value"] if isinstance(v, dict) else str(v).lower()


def render_text(report):
    g = report["group"]
    lines = [f"group {g['name'] or '(input)'}: order {g['order']}, "
             f"{g['conjugacy_classes']} classes, d = {g['cyclic_subgroup_classes']}"]
    lines.append(f"  center: {{{', '.join(g['center'])}}}")
    lines.append(f"  derived subgroup: {{{', '.join(g['derived_subgroup'])}}}")
    if "idempotents" in report:
        i = report["idempotents"]
        lines.append(f"idempotents: {i['count']} (complete: {i['complete']}, "
                     f"certified: {i['certified_strongly_monomial']})")
        for item in i["idempotents"]:
            H = ",".join(item["pair"]["H"])
            K = ",".join(item["pair"]["K"])
            lines.append(f"  ({{{H}}}, {{{K}}})")
    if "wedderburn" in report:
        w = report["wedderburn"]
        if "error" in w:
            lines.append(f"wedderburn: unavailable ({w['error']})")
        else:
            lines.append(f"wedderburn: QG = {w['decomposition']}")
            for c in w["components"]:
                lines.append(f"  {c['classification']['label']}: n={c['n']} h={c['h']} "
                             f"|N/H|={c['quotient_order']} dim={c['dimension']} "
                             f"exceptional={c['exceptional']}")
    if "units" in report:
        u = report["units"]
        counts = ", ".join(f"{k}: {v}" for k, v in u["counts"].items())
        lines.append(f"units: {counts}")
        for cert in u["free_pair_certificates"]:
            lines.append(f"  free pair from {cert['unit']}: T(ab) = {cert['trace_value']}")
    if "central" in report:
        c = report["central"]
        r = c["rank"]
        lines.append(f"central: rank {r['rank']} = ({r['c']} + {r['c_prime']})/2 - {r['d']}, "
                     f"cut: {str(c['cut']).lower()}")
        if c.get("eligible"):
            lines.append(f"  averaged Bass units: {c['generator_count']}")
        else:
            lines.append(f"  not eligible: {c.get('reason', '')}")
    if "predicates" in report:
        p = report["predicates"]
        lines.append(f"predicates: higman: {str(p['higman_finite_units']).lower()}, "
                     f"cut: {str(p['cut']).lower()}")
        for key in ("has_exceptional", "hfa", "virtually_free_product_abelian",
                    "virtually_free_by_free"):
            lines.append(f"  {key}: {_tri(p[key])}")
        lines.append(f"  jespers_parmenter: {p['jespers_parmenter']['verdict']}")
    return "\n".join(lines) + "\n"


__all__ = ["build_report", "render_text", "to_json_text", "validate_report", "group_summary",
           "SECTIONS"]
