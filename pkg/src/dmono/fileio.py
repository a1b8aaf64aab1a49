"""Function files: JSON documents pairing a lattice descriptor with a payload.

Layout: {"lattice": {"cube": n} | {"file": path}, "repr": kind, "payload": ...}
with an optional "meta" object that generators may attach.  Payloads by kind:
dense is a bit string in element-id order; mdnf is a list of element names;
xor is a list of mdnf payloads; composed is {"F": bit string of 2^d, "g":
[mdnf...]}.  Writers emit minimals in canonical order so outputs are
byte-stable.  A relative lattice file path resolves against the function
file's directory.
"""

from __future__ import annotations

import json
from pathlib import Path

from .boolfn import ComposedTarget, DenseFunction, MonotoneDNF, Representation, XorHypothesis
from .errors import DmonoError, FileFormatError
from .lattice import CubeLattice, ExplicitLattice, Lattice, load_lattice


def lattice_descriptor(lattice: Lattice) -> dict:
    if isinstance(lattice, CubeLattice):
        return {"cube": lattice.n}
    if isinstance(lattice, ExplicitLattice):
        if lattice.source_path is None:
            raise FileFormatError(
                "explicit lattice was built in memory; load it from a file "
                "to make functions over it serializable"
            )
        return {"file": lattice.source_path}
    raise FileFormatError(f"cannot describe lattice {lattice!r}")


def resolve_lattice(desc, base_dir: str | Path = ".") -> Lattice:
    if not isinstance(desc, dict) or len(desc) != 1:
        raise FileFormatError(f"bad lattice descriptor {desc!r}")
    if "cube" in desc:
        n = desc["cube"]
        if not isinstance(n, int) or n < 1:
            raise FileFormatError(f"bad cube dimension {n!r}")
        return CubeLattice(n)
    if "file" in desc:
        path = Path(desc["file"])
        if not path.is_absolute():
            path = Path(base_dir) / path
        return load_lattice(path)
    raise FileFormatError(f"bad lattice descriptor {desc!r}")


def _mdnf_payload(g: MonotoneDNF) -> list[str]:
    return [g.lattice.element_name(a) for a in g.minimals]


def _mdnf_from_payload(lattice: Lattice, payload) -> MonotoneDNF:
    if not isinstance(payload, list):
        raise FileFormatError(f"mdnf payload must be a list, got {payload!r}")
    try:
        elems = tuple(lattice.parse_element(nm) for nm in payload)
        return MonotoneDNF(lattice, elems)
    except (DmonoError, ValueError, TypeError) as exc:
        raise FileFormatError(f"bad mdnf payload: {exc}") from None


def function_to_doc(f: Representation, meta: dict | None = None) -> dict:
    doc: dict = {"lattice": lattice_descriptor(f.lattice)}
    if isinstance(f, DenseFunction):
        doc["repr"] = "dense"
        doc["payload"] = f.bits()
    elif isinstance(f, MonotoneDNF):
        doc["repr"] = "mdnf"
        doc["payload"] = _mdnf_payload(f)
    elif isinstance(f, XorHypothesis):
        doc["repr"] = "xor"
        doc["payload"] = [_mdnf_payload(lv) for lv in f.levels]
    elif isinstance(f, ComposedTarget):
        doc["repr"] = "composed"
        doc["payload"] = {
            "F": "".join("1" if f.outer >> k & 1 else "0" for k in range(1 << f.d)),
            "g": [_mdnf_payload(g) for g in f.inner],
        }
    else:
        raise FileFormatError(f"cannot serialize {f!r}")
    if meta:
        doc["meta"] = meta
    return doc


def doc_to_function(doc, base_dir: str | Path = ".") -> tuple[Representation, dict]:
    if not isinstance(doc, dict):
        raise FileFormatError("function document must be a JSON object")
    for key in ("lattice", "repr", "payload"):
        if key not in doc:
            raise FileFormatError(f"function document is missing {key!r}")
    lattice = resolve_lattice(doc["lattice"], base_dir)
    kind = doc["repr"]
    payload = doc["payload"]
    meta = doc.get("meta") or {}
    if kind == "dense":
        if not isinstance(payload, str):
            raise FileFormatError("dense payload must be a bit string")
        try:
            return DenseFunction.from_bits(lattice, payload), meta
        except ValueError as exc:
            raise FileFormatError(str(exc)) from None
    if kind == "mdnf":
        return _mdnf_from_payload(lattice, payload), meta
    if kind == "xor":
        if not isinstance(payload, list):
            raise FileFormatError("xor payload must be a list of mdnf payloads")
        levels = tuple(_mdnf_from_payload(lattice, lv) for lv in payload)
        return XorHypothesis(lattice, levels), meta
    if kind == "composed":
        if not isinstance(payload, dict) or set(payload) != {"F", "g"}:
            raise FileFormatError('composed payload must be {"F": bits, "g": [mdnf...]}')
        gs = payload["g"]
        if not isinstance(gs, list) or not gs:
            raise FileFormatError("composed payload needs at least one inner function")
        inner = tuple(_mdnf_from_payload(lattice, g) for g in gs)
        table = payload["F"]
        if (
            not isinstance(table, str)
            or len(table) != 1 << len(inner)
            or set(table) - {"0", "1"}
        ):
            raise FileFormatError(
                f"outer table must be a bit string of length {1 << len(inner)}"
            )
        outer = 0
        for k, ch in enumerate(table):
            if ch == "1":
                outer |= 1 << k
        return ComposedTarget(lattice, outer, inner), meta
    raise FileFormatError(f"unknown repr kind {kind!r}")


def dumps_function(f: Representation, meta: dict | None = None) -> str:
    return json.dumps(function_to_doc(f, meta), indent=2) + "\n"


def loads_function(text: str, base_dir: str | Path = ".") -> tuple[Representation, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"not valid JSON: {exc}") from None
    return doc_to_function(doc, base_dir)


def save_function(f: Representation, path: str | Path, meta: dict | None = None) -> None:
    Path(path).write_text(dumps_function(f, meta))


def load_function(path: str | Path) -> tuple[Representation, dict]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from None
    try:
        return loads_function(text, base_dir=path.parent)
    except FileFormatError as exc:
        raise FileFormatError(f"{path}: {exc}") from None
