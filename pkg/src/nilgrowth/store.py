"""On-disk level store: one JSON file per level plus a manifest.

The manifest carries the schedule hash, field, engine, and per-level case
provenance together with a content hash of each level file, so a reload
detects both configuration mismatches and tampered files. All files are
written with sorted keys and fixed indentation: rebuilding with an identical
configuration reproduces them byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import os
from typing import Optional

from .construction import FOracle, LevelStack, LevelState, build_NM
from .errors import ConfigError, VerificationError
from .linear import Subspace, code_to_word, subspace_from_json, subspace_to_json, word_to_code
from .schedule import Schedule

MANIFEST_NAME = "manifest.json"


def _dump(obj: dict) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode()


def _level_to_json(st: LevelState) -> dict:
    out = {
        "n": st.n,
        "degree": st.degree,
        "field": st.field,
        "case": st.case,
        "m1": code_to_word(st.m1, st.degree) if st.m1 is not None else None,
        "m2": code_to_word(st.m2, st.degree) if st.m2 is not None else None,
        "V": subspace_to_json(st.V),
        "U": subspace_to_json(st.U),
    }
    if st.N is not None:
        out["N"] = subspace_to_json(st.N)
        out["M"] = subspace_to_json(st.M)
    return out


def _level_from_json(obj: dict) -> LevelState:
    degree = int(obj["degree"])
    st = LevelState(
        n=int(obj["n"]),
        field=int(obj["field"]),
        case=int(obj["case"]),
        V=subspace_from_json(obj["V"]),
        U=subspace_from_json(obj["U"]),
        m1=word_to_code(obj["m1"]) if obj.get("m1") else None,
        m2=word_to_code(obj["m2"]) if obj.get("m2") else None,
    )
    if degree != st.degree:
        raise ConfigError(f"level file degree {degree} disagrees with n={st.n}")
    if "N" in obj:
        st.N = subspace_from_json(obj["N"])
        st.M = subspace_from_json(obj["M"])
    return st


def save_stack(stack: LevelStack, directory: str) -> str:
    """Write every level plus the manifest; returns the manifest path."""
    os.makedirs(directory, exist_ok=True)
    entries = []
    for st in stack.levels:
        name = f"level_{st.n:02d}.json"
        blob = _dump(_level_to_json(st))
        with open(os.path.join(directory, name), "wb") as fh:
            fh.write(blob)
        entries.append({
            "n": st.n,
            "case": st.case,
            "dim_V": st.V.dim(),
            "dim_U": st.U.dim(),
            "file": name,
            "sha256": hashlib.sha256(blob).hexdigest(),
        })
    manifest = {
        "schedule_hash": stack.schedule.canonical_hash(),
        "schedule": stack.schedule.to_json(),
        "field": stack.field,
        "engine": stack.engine,
        "levels": entries,
    }
    path = os.path.join(directory, MANIFEST_NAME)
    with open(path, "wb") as fh:
        fh.write(_dump(manifest))
    return path


def load_stack(directory: str, foracle: Optional[FOracle] = None) -> LevelStack:
    """Reload a stored stack, verifying file hashes and the schedule hash."""
    path = os.path.join(directory, MANIFEST_NAME)
    try:
        with open(path, "rb") as fh:
            manifest = json.loads(fh.read())
    except FileNotFoundError as exc:
        raise ConfigError(f"no manifest at {path}") from exc
    schedule = Schedule.from_json(manifest["schedule"], int(manifest["field"]))
    if schedule.canonical_hash() != manifest["schedule_hash"]:
        raise VerificationError(
            "store", "manifest schedule hash disagrees with its schedule body")
    stack = LevelStack(schedule, field=int(manifest["field"]),
                       engine=manifest["engine"], foracle=foracle)
    levels = []
    for rec in manifest["levels"]:
        fpath = os.path.join(directory, rec["file"])
        with open(fpath, "rb") as fh:
            blob = fh.read()
        digest = hashlib.sha256(blob).hexdigest()
        if digest != rec["sha256"]:
            raise VerificationError(
                "store", f"level file {rec['file']} was modified "
                f"(hash {digest[:12]}.. != manifest {rec['sha256'][:12]}..)")
        st = _level_from_json(json.loads(blob))
        if st.n != rec["n"] or st.case != rec["case"]:
            raise VerificationError(
                "store", f"level file {rec['file']} provenance mismatch")
        if st.field != stack.field:
            raise VerificationError(
                "store", f"level file {rec['file']} is over GF({st.field}) "
                f"but the manifest says GF({stack.field})")
        if st.V.dim() != rec["dim_V"] or st.U.dim() != rec["dim_U"]:
            raise VerificationError(
                "store", f"level file {rec['file']} dimension mismatch")
        levels.append(build_NM(st, schedule) if st.N is None else st)
    if [st.n for st in levels] != list(range(len(levels))):
        raise VerificationError("store", "manifest levels are not consecutive")
    stack.levels = levels
    return stack
