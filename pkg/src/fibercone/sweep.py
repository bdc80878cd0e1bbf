"""Resumable grid sweeps over ideal families with a JSONL result store.

Each parameter tuple yields one appended record; reruns skip completed keys,
a torn trailing line is truncated with a warning, and a corrupt interior line
is a hard error.  The conjecture report surfaces depth-0 records and any
violation of "Cohen-Macaulay iff at most 3 defining relations".
"""
from __future__ import annotations

import json
import math
import sys
import time
import zlib
from dataclasses import dataclass
from itertools import product
from multiprocessing import Pool
from typing import Iterable

from .classify import (
    certify,
    classify_ci,
    classify_hypersurface,
    classify_symmetric,
    _stable_kernel,
)
from .depth import (
    InconclusiveDepthError,
    UntrustedTruncationError,
    depth_certificate,
    dimension,
    generators_to_polys,
    trusted_polys,
)
from .monomials import MonomialIdeal

FAMILIES = ("symmetric", "ci", "hypersurface", "general4")


@dataclass(frozen=True)
class SweepSpec:
    family: str
    ranges: dict
    degree_bound: int = 24
    prime: int = 32003
    trials: int = 64
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")

    @staticmethod
    def from_json(data: dict) -> "SweepSpec":
        return SweepSpec(
            family=data["family"],
            ranges=data["ranges"],
            degree_bound=data.get("degree_bound", 24),
            prime=data.get("prime", 32003),
            trials=data.get("trials", 64),
            seed=data.get("seed", 0),
        )

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "ranges": self.ranges,
            "degree_bound": self.degree_bound,
            "prime": self.prime,
            "trials": self.trials,
            "seed": self.seed,
        }


def record_key(family: str, params: dict) -> str:
    if family == "hypersurface":
        return (
            f"hypersurface:{','.join(map(str, params['a']))}"
            f"|{','.join(map(str, params['b']))}"
        )
    order = {"symmetric": "abc", "ci": "abcd", "general4": ("a", "c", "d", "e", "f", "b")}
    return f"{family}:" + ",".join(str(params[k]) for k in order[family])


def enumerate_params(spec: SweepSpec) -> list[dict]:
    """All parameter tuples of the grid, in canonical order."""
    r = spec.ranges
    out: list[dict] = []
    if spec.family == "symmetric":
        c_max = r["c_max"]
        for c in range(3, c_max + 1):
            for b in range(2, c):
                for a in range(1, b):
                    if math.gcd(a, b, c) == 1:
                        out.append({"a": a, "b": b, "c": c})
    elif spec.family == "ci":
        a_max, b_max = r["a_max"], r["b_max"]
        for a in range(2, a_max + 1):
            for b in range(a, b_max + 1):
                for c in range(1, a):
                    if math.gcd(a, c) != 1:
                        continue
                    for d in range(b + 1, 2 * b):
                        if math.gcd(b, d) == 1:
                            out.append({"a": a, "b": b, "c": c, "d": d})
    elif spec.family == "hypersurface":
        n, a_max = r.get("n", 2), r["a_max"]
        for a in product(range(2, a_max + 1), repeat=n):
            for b in product(*(range(1, ai) for ai in a)):
                out.append({"a": list(a), "b": list(b)})
    else:  # general4: (x^a, x^c y^d, x^e y^f, y^b)
        emax = r["max_exponent"]
        for a in range(3, emax + 1):
            for c in range(2, a):
                for e in range(1, c):
                    for b in range(3, emax + 1):
                        for f in range(2, b):
                            for d in range(1, f):
                                out.append(
                                    {"a": a, "c": c, "d": d, "e": e, "f": f, "b": b}
                                )
    return out


def build_ideal(family: str, params: dict) -> MonomialIdeal:
    if family == "symmetric":
        a, b, c = params["a"], params["b"], params["c"]
        return MonomialIdeal(2, ((c, 0), (b, a), (a, b), (0, c)))
    if family == "ci":
        a, b, c, d = params["a"], params["b"], params["c"], params["d"]
        return MonomialIdeal(2, ((2 * a, 0), (a, b), (c, d), (0, 2 * b)))
    if family == "hypersurface":
        from .classify import hypersurface_ideal

        return hypersurface_ideal(params["a"], params["b"])
    return MonomialIdeal(
        2,
        (
            (params["a"], 0),
            (params["c"], params["d"]),
            (params["e"], params["f"]),
            (0, params["b"]),
        ),
    )


def _tuple_seed(key: str, seed: int) -> int:
    return zlib.crc32(key.encode()) ^ seed


def process_tuple(spec: SweepSpec, params: dict) -> dict:
    """Classify, certify, compute the kernel and run diagnostics for one tuple."""
    key = record_key(spec.family, params)
    start = time.monotonic()
    record: dict = {
        "key": key,
        "family": spec.family,
        "params": params,
        "mu_i": None,
        "mu_j": None,
        "case": None,
        "depth": None,
        "cm": None,
        "certification": None,
        "runtime_millis": None,
        "status": "Ok",
    }
    seed = _tuple_seed(key, spec.seed)
    try:
        if spec.family == "general4":
            I = build_ideal(spec.family, params)
            record["mu_i"] = I.mu
            report = _stable_kernel(I, start=10, window=4, cap=spec.degree_bound)
            record["mu_j"] = report.mu
            record["certification"] = f"oracle:{report.degree_bound}"
            polys = trusted_polys(report, spec.prime)
        else:
            if spec.family == "symmetric":
                cl = classify_symmetric(params["a"], params["b"], params["c"])
            elif spec.family == "ci":
                cl = classify_ci(params["a"], params["b"], params["c"], params["d"])
            else:
                cl = classify_hypersurface(params["a"], params["b"])
            record["mu_i"] = cl.ideal.mu
            cl = certify(cl)
            record["case"] = cl.case_tag
            record["mu_j"] = cl.mu_j
            cert = cl.certification
            record["certification"] = (
                f"{cert.status}:{cert.up_to_degree}"
                if cert.up_to_degree is not None
                else cert.status
            )
            if cert.status != "certified":
                # fall back to a stability-gated kernel for honest diagnostics
                report = _stable_kernel(cl.ideal, cap=spec.degree_bound)
                record["mu_j"] = report.mu
                polys = trusted_polys(report, spec.prime)
            else:
                polys = generators_to_polys(
                    cl.predicted_generators, cl.ideal.mu, spec.prime
                )
        cert = depth_certificate(polys, spec.prime, spec.trials, seed)
        record["depth"] = cert.depth
        record["cm"] = cert.depth == dimension(polys, spec.prime)
    except InconclusiveDepthError as exc:
        record["status"] = "Inconclusive"
        record["detail"] = str(exc)
    except (UntrustedTruncationError, ValueError) as exc:
        if "did not stabilize" in str(exc) or isinstance(exc, UntrustedTruncationError):
            record["status"] = "Inconclusive"
        else:
            record["status"] = "Error"
        record["detail"] = str(exc)
    except Exception as exc:  # never abort a sweep on a single tuple
        record["status"] = "Error"
        record["detail"] = f"{type(exc).__name__}: {exc}"
    record["runtime_millis"] = int((time.monotonic() - start) * 1000)
    return record


def _scan_store(path: str) -> tuple[list[dict], int, bool]:
    """Parse a JSONL store; returns (records, valid_byte_length, torn_tail)."""
    records: list[dict] = []
    good = 0
    torn = False
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except FileNotFoundError:
        return records, 0, False
    lines = raw.split(b"\n")
    offset = 0
    for idx, line in enumerate(lines):
        end = offset + len(line) + 1
        if not line.strip():
            offset = end
            continue
        try:
            rec = json.loads(line.decode("utf-8"))
            if not isinstance(rec, dict) or "key" not in rec:
                raise ValueError("record is not an object with a key")
        except (ValueError, UnicodeDecodeError) as exc:
            is_last = all(not l.strip() for l in lines[idx + 1 :])
            if is_last:
                torn = True
                break
            raise ValueError(f"corrupt interior record at line {idx + 1}: {exc}") from exc
        records.append(rec)
        good = min(end, len(raw))
        offset = end
    return records, good, torn


def resume(path: str) -> set[str]:
    """Completed parameter keys in the store; warns about a torn trailing line."""
    records, _, torn = _scan_store(path)
    if torn:
        print(f"warning: ignoring torn trailing line in {path}", file=sys.stderr)
    return {r["key"] for r in records}


def _worker(args: tuple[SweepSpec, dict]) -> dict:
    spec, params = args
    return process_tuple(spec, params)


def run_sweep(
    spec: SweepSpec, store: str, jobs: int = 1, progress: bool = False
) -> dict:
    """Process every grid tuple not already in the store; returns a summary."""
    records, good, torn = _scan_store(store)
    if torn:
        print(f"warning: truncating torn trailing line in {store}", file=sys.stderr)
        with open(store, "rb+") as fh:
            fh.truncate(good)
    done = {r["key"] for r in records}
    todo = [p for p in enumerate_params(spec) if record_key(spec.family, p) not in done]

    new_records: list[dict] = []
    with open(store, "a", encoding="utf-8") as fh:

        def emit(record: dict) -> None:
            fh.write(json.dumps(record) + "\n")
            fh.flush()
            new_records.append(record)
            if progress:
                n = len(new_records)
                if n % 50 == 0 or n == len(todo):
                    print(f"  {n}/{len(todo)} done", file=sys.stderr)

        if jobs <= 1:
            for params in todo:
                emit(process_tuple(spec, params))
        else:
            with Pool(jobs) as pool:
                for record in pool.imap_unordered(
                    _worker, [(spec, p) for p in todo], chunksize=8
                ):
                    emit(record)

    return summarize(records + new_records, skipped=len(done))


def summarize(records: Iterable[dict], skipped: int = 0) -> dict:
    by_status: dict[str, int] = {}
    by_case: dict[str, int] = {}
    by_depth: dict[str, int] = {}
    mismatches = 0
    total = 0
    for r in records:
        total += 1
        by_status[r["status"]] = by_status.get(r["status"], 0) + 1
        case = r.get("case") or "-"
        by_case[case] = by_case.get(case, 0) + 1
        depth = r.get("depth")
        by_depth[str(depth)] = by_depth.get(str(depth), 0) + 1
        cert = r.get("certification") or ""
        if cert.startswith("mismatch"):
            mismatches += 1
    return {
        "total": total,
        "already_done": skipped,
        "by_status": by_status,
        "by_case": by_case,
        "by_depth": by_depth,
        "mismatches": mismatches,
    }


def report_conjecture(store: str) -> dict:
    """Surface depth-0 records, CM/mu(J) inconsistencies, and inconclusive runs.

    A depth-0 record with at most 4 generators is a counterexample to the
    expectation that such fiber cones have positive depth; records with more
    generators are listed for context only.
    """
    records, _, torn = _scan_store(store)
    if torn:
        print(f"warning: ignoring torn trailing line in {store}", file=sys.stderr)
    depth_zero = []
    cm_violations = []
    inconclusive = []
    for r in records:
        if r.get("depth") == 0:
            entry = {
                "key": r["key"],
                "mu_i": r.get("mu_i"),
                "mu_j": r.get("mu_j"),
                "counterexample": bool(r.get("mu_i") is not None and r["mu_i"] <= 4),
            }
            depth_zero.append(entry)
        if r.get("cm") is not None and r.get("mu_j") is not None:
            if bool(r["cm"]) != (r["mu_j"] <= 3):
                cm_violations.append({"key": r["key"], "cm": r["cm"], "mu_j": r["mu_j"]})
        if r.get("status") == "Inconclusive":
            inconclusive.append({"key": r["key"], "detail": r.get("detail")})
    return {
        "depth_zero": depth_zero,
        "counterexamples": [e for e in depth_zero if e["counterexample"]],
        "cm_mu_violations": cm_violations,
        "inconclusive": inconclusive,
    }
