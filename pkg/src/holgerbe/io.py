"""JSON file formats: matrices, covers, cocycles, bundles and reports.

All writers are deterministic (sorted keys, fixed indentation) so that equal
inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cech import CechCocycle
from .cover import GoodCover, build_s4_cover
from .errors import DataIntegrityError, InputError

SCHEMA_VERSION = 1


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise InputError(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from e


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------


def matrix_to_dict(A) -> dict:
    A = np.asarray(A, dtype=complex)
    return {"n": int(A.shape[0]), "re": A.real.tolist(), "im": A.imag.tolist()}


def matrix_from_dict(d) -> np.ndarray:
    if not isinstance(d, dict) or not {"n", "re", "im"} <= set(d):
        raise InputError("matrix JSON needs keys n, re, im")
    try:
        n = int(d["n"])
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d["im"], dtype=float)
    except (TypeError, ValueError) as e:
        raise InputError(f"matrix entries are not numeric: {e}") from e
    if n < 1 or re.shape != (n, n) or im.shape != (n, n):
        raise InputError(f"matrix JSON declares n={n} but re/im have shapes {re.shape}, {im.shape}")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise InputError("matrix entries must be finite")
    return re + 1j * im


def read_matrices(path) -> list[np.ndarray]:
    """A single matrix object or a list of them."""
    d = read_json(path)
    items = d if isinstance(d, list) else d.get("matrices", [d]) if isinstance(d, dict) else None
    if items is None:
        raise InputError("expected a matrix object or a list of matrix objects")
    return [matrix_from_dict(m) for m in items]


# --------------------------------------------------------------------------
# covers and cocycles
# --------------------------------------------------------------------------


def write_cover(cover: GoodCover, path) -> None:
    write_json({"kind": "cover", "version": SCHEMA_VERSION, **cover.to_dict()}, path)


def read_cover(path) -> GoodCover:
    d = read_json(path)
    try:
        return GoodCover.from_dict(d)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: not a cover file ({e})") from e


def cocycle_document(g: CechCocycle, cover: GoodCover | None = None) -> dict:
    doc = {"kind": "cocycle", "version": SCHEMA_VERSION, **g.to_dict()}
    if cover is not None:
        doc["cover"] = cover.to_dict()
    return doc


def write_cocycle(g: CechCocycle, path, cover: GoodCover | None = None) -> None:
    write_json(cocycle_document(g, cover), path)


def read_cocycle(path) -> tuple[CechCocycle, GoodCover | None]:
    """Cocycle and, when embedded, the cover its samples are aligned with."""
    d = read_json(path)
    try:
        g = CechCocycle.from_dict(d)
        cover = GoodCover.from_dict(d["cover"]) if "cover" in d else None
    except DataIntegrityError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise InputError(f"{path}: not a cocycle file ({e})") from e
    if cover is not None:
        check_alignment(g, cover)
    return g, cover


def check_alignment(g: CechCocycle, cover: GoodCover) -> None:
    """Every value array must match the sample layout of the cover."""
    if set(g.base) != set(cover.faces) or set(g.closure) != set(cover.top):
        raise DataIntegrityError("cocycle simplices do not match the cover nerve")
    for k, pts in cover.paths.items():
        if k not in g.paths or np.asarray(g.paths[k]).shape != (len(pts),):
            raise DataIntegrityError(f"path values for {k} are missing or misaligned")
    for s, pts in cover.closure.items():
        if np.asarray(g.closure[s]).shape != (len(s), len(pts)):
            raise DataIntegrityError(f"closure values for {s} are misaligned")


# --------------------------------------------------------------------------
# bundles
# --------------------------------------------------------------------------


def bundle_document(E, include_samples: bool = True) -> dict:
    """A bundle file names its generator and parameters; the transition samples
    on edge overlaps are included so that a reader can check integrity."""
    doc = {"kind": "bundle", "version": SCHEMA_VERSION, **E.describe(),
           "cover": {"name": E.cover.name, "radius": E.cover.radius}}
    if include_samples:
        key = lambda s: ",".join(map(str, s))
        doc["transitions"] = {key(e): np.stack([M.real, M.imag], axis=-1).tolist()
                              for e, M in E.edge_transition_samples().items()}
    return doc


def write_bundle(E, path, include_samples: bool = True) -> None:
    write_json(bundle_document(E, include_samples), path)


def bundle_from_document(d: dict, cover: GoodCover | None = None):
    from .two_gerbe import instanton_bundle, torus_bundle, trivial_bundle

    if d.get("kind", "bundle") != "bundle":
        raise InputError("not a bundle file")
    try:
        gen = d["generator"]
        params = dict(d.get("params", {}))
        radius = float(d.get("cover", {}).get("radius", 1.43))
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise InputError(f"bundle file lacks generator data ({e})") from e
    cover = cover or build_s4_cover(radius)
    if gen == "trivial":
        E = trivial_bundle(cover, int(params.get("n", d.get("n", 2))))
    elif gen == "instanton":
        E = instanton_bundle(cover)
    elif gen == "torus":
        E = torus_bundle(cover, int(params.get("n", 2)), int(params.get("seed", 0)),
                         float(params.get("amplitude", 0.05)))
    else:
        raise InputError(f"unknown bundle generator {gen!r}")
    if "transitions" in d:
        key = lambda s: ",".join(map(str, s))
        ref = E.edge_transition_samples()
        for e, M in ref.items():
            if key(e) not in d["transitions"]:
                raise DataIntegrityError(f"transition samples for edge {e} missing")
            a = np.asarray(d["transitions"][key(e)], float)
            if a.shape != M.shape + (2,):
                raise DataIntegrityError(f"transition samples for edge {e} have shape {a.shape}")
            if np.max(np.abs(a[..., 0] + 1j * a[..., 1] - M)) > 1e-9:
                raise DataIntegrityError(f"transition samples for edge {e} do not match the generator")
    return E


def read_bundle(path, cover: GoodCover | None = None):
    return bundle_from_document(read_json(path), cover)


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


def case(name: str, passed: bool, residual=None, value=None, **extra) -> dict:
    out = {"name": name, "status": "pass" if passed else "fail",
           "residual": None if residual is None else float(residual), "value": value}
    out.update(extra)
    return out


def report(suite: str, cases: list[dict], config_echo: dict, **extra) -> dict:
    out = {"suite": suite, "cases": cases, "config_echo": config_echo}
    out.update(extra)
    return out


def report_passed(rep: dict) -> bool:
    return all(c["status"] == "pass" for c in rep["cases"])
