"""Catalog of table graphs and the verification pipeline run over it.

A catalog file is a JSON array of entries; see ``ENTRY_SCHEMA``.  Each entry carries a
payload (symbol matrix, Frucht spec, bicirculant symbol, named graph, orbital graph of a
catalog action, or a placeholder) and the claims it is expected to satisfy.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from . import graph as G
from .actions import load_actions
from .graphio import SYMBOL_KEYS, bicirculant_from_json, frucht_from_json, symbol_from_json
from .hamilton import (ABSENT, DEFAULT_BUDGET, FOUND, UNKNOWN, HamiltonResult, check_certificate,
                       hamilton_cycle, hamilton_path, jackson_applies)
from .iso import DEFAULT_ISO_BUDGET, is_vertex_transitive
from .lift import LiftError, hamilton_via_lift, quotient_voltage, symbol_rotation
from .orbital import gog, orbital_graphs
from .perm import Permutation

JOBS_ENV = "VT6P_JOBS"
SHIPPED = ("tables_qprim.json", "tables_prim.json", "named.json", "figures.json")
VT_MAX_ORDER = 102

_ZSET = {"type": "array", "items": {"anyOf": [
    {"type": "integer"},
    {"type": "object", "properties": {"pm": {"type": "array", "items": {"type": "integer"}}},
     "required": ["pm"], "additionalProperties": False}]}}

ENTRY_SCHEMA = {
    "type": "object",
    "required": ["id", "source", "kind"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "source": {"type": "string"},
        "kind": {"enum": ["symbol", "frucht", "bicirculant", "named", "gog", "placeholder"]},
        "status": {"type": "string"},
        "p": {"type": "integer", "minimum": 2},
        "expected_order": {"type": "integer", "minimum": 1},
        "expected_valency": {"type": "integer", "minimum": 0},
        "notes": {"type": "array", "items": {"type": "object", "required": ["field"]}},
        "expect": {"type": "object", "properties": {
            "hamilton_cycle": {"enum": [FOUND, ABSENT]},
            "hamilton_path": {"enum": [FOUND, ABSENT]},
            "vertex_transitive": {"type": "boolean"}}, "additionalProperties": False},
        "budget": {"type": "object", "properties": {
            "hamilton": {"type": "integer", "minimum": 1},
            "iso": {"type": "integer", "minimum": 1}}, "additionalProperties": False},
        "symbol": {"type": "object", "required": SYMBOL_KEYS,
                   "properties": {k: _ZSET for k in SYMBOL_KEYS}, "additionalProperties": False},
        "frucht": {"type": "object", "required": ["m", "n", "inner"], "properties": {
            "m": {"type": "integer", "minimum": 1}, "n": {"type": "integer", "minimum": 1},
            "inner": {"type": "array", "items": _ZSET},
            "arcs": {"type": "array", "items": {"type": "array", "prefixItems": [
                {"type": "integer"}, {"type": "integer"}, _ZSET], "minItems": 3, "maxItems": 3}}}},
        "bicirculant": {"type": "object", "required": ["n", "S", "R", "T"], "properties": {
            "n": {"type": "integer", "minimum": 1}, "S": _ZSET, "R": _ZSET, "T": _ZSET}},
        "name": {"type": "string"},
        "gog": {"type": "object", "required": ["action", "suborbits"], "properties": {
            "action": {"type": "string"},
            "suborbits": {"type": "array", "items": {"type": "integer"}, "minItems": 1}}},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": k}}}, "then": {"required": req}}
        for k, req in (("symbol", ["symbol", "p", "expected_order", "expected_valency"]),
                       ("frucht", ["frucht"]), ("bicirculant", ["bicirculant"]),
                       ("named", ["name"]), ("gog", ["gog"]), ("placeholder", ["status"]))
    ],
}
CATALOG_SCHEMA = {"type": "array", "items": ENTRY_SCHEMA}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    source: str
    kind: str
    payload: object  # SymbolMatrix | FruchtSpec | BicirculantSymbol | str | dict | None
    p: int | None = None
    expected_order: int | None = None
    expected_valency: int | None = None
    notes: tuple = ()
    expect: dict = field(default_factory=dict)
    budget: dict = field(default_factory=dict)
    status: str | None = None

    @property
    def placeholder(self) -> bool:
        return self.kind == "placeholder"

    def build(self) -> G.Graph:
        if self.kind == "symbol":
            return G.from_symbol(self.payload)
        if self.kind == "frucht":
            return G.from_frucht(self.payload)
        if self.kind == "bicirculant":
            return G.bicirculant(self.payload)
        if self.kind == "named":
            return G.named(self.payload)
        if self.kind == "gog":
            action = load_actions()[self.payload["action"]].build()
            return gog(orbital_graphs(action), self.payload["suborbits"])
        raise CatalogError(f"{self.id}: placeholder entries have no graph")

    def rotation(self) -> Permutation | None:
        """A semiregular automorphism built into the payload, when there is one."""
        if self.kind == "symbol":
            return symbol_rotation(self.p)
        if self.kind == "frucht":
            return Permutation(G.orbit_rotation(self.payload.m, self.payload.n))
        if self.kind == "bicirculant":
            return Permutation(G.orbit_rotation(2, self.payload.n))
        return None


def _parse_entry(raw: dict) -> CatalogEntry:
    kind = raw["kind"]
    p = raw.get("p")
    if kind == "symbol":
        payload = symbol_from_json(p, raw["symbol"])
    elif kind == "frucht":
        payload = frucht_from_json(raw["frucht"])
    elif kind == "bicirculant":
        payload = bicirculant_from_json(raw["bicirculant"])
    elif kind == "named":
        payload = raw["name"]
        G.named(payload)  # unknown names are load errors
    elif kind == "gog":
        payload = raw["gog"]
        if payload["action"] not in load_actions():
            raise CatalogError(f"unknown action {payload['action']!r}")
    else:
        payload = None
    if kind == "symbol" and raw["expected_order"] != 6 * p:
        raise CatalogError(f"expected_order {raw['expected_order']} != 6p = {6 * p}")
    return CatalogEntry(raw["id"], raw["source"], kind, payload, p, raw.get("expected_order"),
                        raw.get("expected_valency"), tuple(raw.get("notes", ())),
                        dict(raw.get("expect", {})), dict(raw.get("budget", {})),
                        raw.get("status"))


def parse_catalog(data) -> list[CatalogEntry]:
    if data is None or data == {}:
        raise CatalogError("catalog is empty")
    errors = sorted(jsonschema.Draft202012Validator(CATALOG_SCHEMA).iter_errors(data),
                    key=lambda e: [str(x) for x in e.absolute_path])
    if errors:
        e = errors[0]
        path = list(e.absolute_path)
        where = data[path[0]].get("id", f"#{path[0]}") if path and isinstance(data, list) \
            and isinstance(data[path[0]], dict) else "catalog"
        field_path = "/".join(str(x) for x in path[1:]) or "(entry)"
        raise CatalogError(f"{where}: {field_path}: {e.message}")
    out, seen = [], set()
    for raw in data:
        if raw["id"] in seen:
            raise CatalogError(f"{raw['id']}: duplicate id")
        seen.add(raw["id"])
        try:
            out.append(_parse_entry(raw))
        except (ValueError, KeyError) as exc:
            if isinstance(exc, CatalogError) and str(exc).startswith(raw["id"]):
                raise
            raise CatalogError(f"{raw['id']}: {exc}") from exc
    return out


def load_catalog(path: str | Path) -> list[CatalogEntry]:
    text = Path(path).read_text()
    if not text.strip():
        raise CatalogError(f"{path}: empty file")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: not valid JSON ({exc})") from exc
    return parse_catalog(data)


def data_path(name: str) -> Path:
    return Path(str(resources.files("vt6p") / "data" / name))


def resolve_catalog_path(path: str | Path) -> Path:
    """Accept a real path or the bare name of a shipped data file."""
    p = Path(path)
    if not p.exists() and data_path(p.name).exists():
        return data_path(p.name)
    return p


def shipped_catalog() -> list[CatalogEntry]:
    out = []
    for name in SHIPPED:
        out += load_catalog(data_path(name))
    return out


def find_entry(entry_id: str, entries: list[CatalogEntry] | None = None) -> CatalogEntry:
    for e in entries if entries is not None else shipped_catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


# --- verification ------------------------------------------------------------

@dataclass(frozen=True)
class Budgets:
    hamilton: int = DEFAULT_BUDGET
    iso: int = DEFAULT_ISO_BUDGET
    vt_max_order: int = VT_MAX_ORDER


@dataclass
class VerifyReport:
    id: str
    status: str  # verified | discrepancy | unknown | unreconstructable
    order: int | None = None
    order_ok: bool | None = None
    valency_observed: int | None = None
    valency_expected: int | None = None
    connected: bool | None = None
    two_connected: bool | None = None
    jackson: bool | None = None
    vertex_transitive: object = None  # True | False | "unknown" | "skipped"
    hamilton: dict | None = None
    hamilton_path: dict | None = None
    lift_route: bool = False
    acknowledged: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)


def _acknowledged(entry: CatalogEntry, fld: str, observed) -> dict | None:
    for note in entry.notes:
        if note.get("field") == fld and note.get("corrected") == observed:
            return note
    return None


def verify_entry(entry: CatalogEntry, budgets: Budgets = Budgets()) -> VerifyReport:
    t0 = time.perf_counter()
    if entry.placeholder:
        return VerifyReport(entry.id, entry.status or "unreconstructable",
                            acknowledged=list(entry.notes))
    X = entry.build()
    rep = VerifyReport(entry.id, "verified", order=X.n)
    disc = rep.discrepancies

    if entry.expected_order is not None:
        rep.order_ok = X.n == entry.expected_order
        if not rep.order_ok:
            note = _acknowledged(entry, "expected_order", X.n)
            if note:
                rep.acknowledged.append(note)
            else:
                disc.append(f"order {X.n} != expected {entry.expected_order}")
    if entry.kind == "symbol" and X.n != 6 * entry.p:
        disc.append(f"order {X.n} != 6p")
    rep.valency_observed = G.regular_valency(X)
    rep.valency_expected = entry.expected_valency
    if entry.expected_valency is not None and rep.valency_observed != entry.expected_valency:
        note = _acknowledged(entry, "expected_valency", rep.valency_observed)
        if note:
            rep.acknowledged.append(note)
        else:
            disc.append(f"valency {rep.valency_observed} != expected {entry.expected_valency}")
    for note in entry.notes:
        if note not in rep.acknowledged:
            rep.acknowledged.append(note)
    rep.connected = G.is_connected(X)
    rep.two_connected = G.is_two_connected(X)
    rep.jackson = jackson_applies(X)

    if X.n <= budgets.vt_max_order:
        vt = is_vertex_transitive(X, entry.budget.get("iso", budgets.iso))
        rep.vertex_transitive = "unknown" if vt is None else vt
    else:
        rep.vertex_transitive = "skipped"

    hb = entry.budget.get("hamilton", budgets.hamilton)
    res = None
    rho = entry.rotation()
    if rho is not None:
        try:
            cyc = hamilton_via_lift(quotient_voltage(X, rho))
        except LiftError:
            cyc = None
        if cyc is not None:
            res = HamiltonResult(FOUND, cyc, 0, 0)
            rep.lift_route = True
    if res is None:
        res = hamilton_cycle(X, hb)
    if res.found and not check_certificate(X, res.certificate, True):
        raise AssertionError(f"{entry.id}: cycle certificate failed the checker")
    rep.hamilton = res.to_json()
    if not res.found:
        pres = hamilton_path(X, hb)
        if pres.found and not check_certificate(X, pres.certificate, False):
            raise AssertionError(f"{entry.id}: path certificate failed the checker")
        rep.hamilton_path = pres.to_json()

    unknown = res.kind == UNKNOWN or (rep.hamilton_path or {}).get("kind") == UNKNOWN
    exp = entry.expect
    if "hamilton_cycle" in exp and res.kind != UNKNOWN and res.kind != exp["hamilton_cycle"]:
        disc.append(f"hamilton cycle {res.kind}, expected {exp['hamilton_cycle']}")
    if "hamilton_path" in exp:
        got = FOUND if res.found else rep.hamilton_path["kind"]
        if got != UNKNOWN and got != exp["hamilton_path"]:
            disc.append(f"hamilton path {got}, expected {exp['hamilton_path']}")
    if "vertex_transitive" in exp:
        vt = rep.vertex_transitive
        if isinstance(vt, bool) and vt != exp["vertex_transitive"]:
            disc.append(f"vertex_transitive {vt}, expected {exp['vertex_transitive']}")
        unknown = unknown or vt == "unknown"
    if not rep.connected and exp.get("hamilton_cycle") == FOUND:
        disc.append("graph is disconnected")

    rep.status = "discrepancy" if disc else ("unknown" if unknown else "verified")
    rep.wall_time = round(time.perf_counter() - t0, 4)
    return rep


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _verify_star(args):
    return verify_entry(*args)


def summarize(reports: list[VerifyReport]) -> dict:
    out = {"entries": len(reports), "verified": 0, "discrepancy": 0, "unknown": 0,
           "unreconstructable": 0, "cycle_found": 0, "cycle_absent": 0, "cycle_unknown": 0}
    for r in reports:
        out[r.status] = out.get(r.status, 0) + 1
        if r.hamilton:
            key = {FOUND: "cycle_found", ABSENT: "cycle_absent"}.get(r.hamilton["kind"],
                                                                      "cycle_unknown")
            out[key] += 1
    return out


def run_all(entries: list[CatalogEntry], budgets: Budgets = Budgets(),
            jobs: int | None = None) -> tuple[list[VerifyReport], dict]:
    """Verify every entry; results come back in catalog order whatever ``jobs`` is."""
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or len(entries) <= 1:
        reports = [verify_entry(e, budgets) for e in entries]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_star, [(e, budgets) for e in entries]))
    return reports, summarize(reports)


def all_verified(reports: list[VerifyReport]) -> bool:
    return all(r.status in ("verified", "unreconstructable") for r in reports)


def strip_timing(report_json: dict) -> dict:
    return {k: v for k, v in report_json.items() if k != "wall_time"}
