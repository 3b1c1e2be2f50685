"""Command-line frontend tying the library together.

Subcommands map one-to-one onto the computational layers: rational point
counts, Jacobi sums, local zeta factors, Hasse-Weil Dirichlet coefficients,
Jacobi-sum Hecke characters, cyclotomic unit tables, the SU(2) WZW data, and
the zeta-root vs Hecke-value match.  Output goes to stdout (or --out) as
JSON, CSV, or a plain table.  Big integers are serialized as decimal strings
in JSON so values survive any double-precision consumer.

Exit codes: 0 success, 1 validation error (bad flags, bad primes,
inconsistent variety spec), 2 invariant violation, meaning a mathematical
self-check failed mid-run.  The last one is the serious outcome.

Local zeta factors are cached one JSON file per (exponent vector, prime)
under CYARITH_CACHE (default ./cache).  Entries carry a format version and a
content hash and are re-verified against the Riemann hypothesis on load;
anything corrupt is discarded and recomputed with a warning.  Parallelism
across primes is orchestrated here and only here (--jobs / CYARITH_JOBS);
the library itself stays sequential and schedule-free.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from functools import partial
from pathlib import Path

from . import cft
from .charsum import AlphaTuple, full_alpha_set, jacobi_sum
from .counting import DiagonalVariety, class_histogram, count_affine, count_projective
from .cyclo import CycInt, cyclotomic_unit, delta_determinant, hecke_weight, s_element
from .errors import CapacityError, InvariantViolationError, ValidationError
from .ffield import is_prime, make_field
from .hecke import (HeckeCharacter, dirichlet_coefficients, hasse_weil_collection,
                    match_hasse_weil, partial_sum_eval)
from .zeta import (CongruentZeta, LocalFactor, check_functional_equation,
                   check_riemann_hypothesis, local_factor_middle, predicted_count)

CACHE_ENV = "CYARITH_CACHE"
JOBS_ENV = "CYARITH_JOBS"
CACHE_FORMAT_VERSION = 1

IDENTITY_TOL = 1e-9     # accept threshold for the KR / KN residuals


# -- invocation config -----------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters shared by the variety-facing subcommands."""

    subcommand: str
    exponents: tuple[int, ...]
    primes: tuple[int, ...]
    strict_primes: bool     # primes given as an explicit list; bad ones are errors
    extension: int
    cutoff: int | None
    cache_dir: Path
    jobs: int

    def __post_init__(self):
        if any(p < 2 for p in self.primes):
            raise ValidationError("primes must exceed 1")
        if self.cutoff is not None and self.cutoff < 1:
            raise ValidationError("cutoff must be at least 1")
        if self.extension < 1:
            raise ValidationError("extension degree must be at least 1")

    @property
    def variety(self) -> DiagonalVariety:
        return DiagonalVariety(self.exponents)


def _parse_exponents(args) -> tuple[int, ...]:
    """Variety spec from either --exponents or the (degree, dim) pair."""
    raw = getattr(args, "exponents", None)
    degree = getattr(args, "degree", None)
    dim = getattr(args, "dim", None)
    if raw:
        if degree is not None:
            raise ValidationError("give either --exponents or -d/--degree, not both")
        try:
            exps = tuple(int(t) for t in raw.split(","))
        except ValueError:
            raise ValidationError(f"cannot parse exponent vector {raw!r}")
        if dim is not None and len(exps) != dim + 2:
            raise ValidationError(
                f"exponent count {len(exps)} inconsistent with dimension {dim} "
                f"(need n+2 = {dim + 2})")
        return exps
    if degree is None:
        raise ValidationError("variety spec required: -d DEGREE -n DIM or --exponents")
    if dim is None:
        raise ValidationError("-d/--degree needs -n/--dim")
    return (degree,) * (dim + 2)


def _parse_primes(spec: str | None) -> tuple[tuple[int, ...], bool]:
    """Prime list "11,31" (strict) or range "2..50" (non-primes and bad
    primes silently skipped).  Returns (primes, strict)."""
    if not spec:
        raise ValidationError("at least one prime required (-p)")
    if ".." in spec:
        lo_s, _, hi_s = spec.partition("..")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise ValidationError(f"cannot parse prime range {spec!r}")
        if not 2 <= lo <= hi:
            raise ValidationError(f"empty or invalid prime range {spec!r}")
        return tuple(p for p in range(lo, hi + 1) if is_prime(p)), False
    try:
        primes = tuple(int(t) for t in spec.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse prime list {spec!r}")
    for p in primes:
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
    return primes, True


def _resolve_jobs(args) -> int:
    if getattr(args, "jobs", None):
        return max(1, args.jobs)
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValidationError(f"{JOBS_ENV} must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _resolve_cache(args) -> Path:
    return Path(getattr(args, "cache", None) or os.environ.get(CACHE_ENV) or "cache")


def _config(args, need_primes: bool = True) -> RunConfig:
    primes, strict = _parse_primes(args.prime) if need_primes else ((), True)
    return RunConfig(
        subcommand=args.subcommand,
        exponents=_parse_exponents(args),
        primes=primes,
        strict_primes=strict,
        extension=getattr(args, "extension", 1) or 1,
        cutoff=getattr(args, "cutoff", None),
        cache_dir=_resolve_cache(args),
        jobs=_resolve_jobs(args),
    )


# -- output plumbing ---------------------------------------------------------------


def _fmt(args, default: str) -> str:
    chosen = [f for f in ("json", "csv", "table") if getattr(args, f, False)]
    if len(chosen) > 1:
        raise ValidationError("pick at most one of --json / --csv / --table")
    return chosen[0] if chosen else default


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict) -> None:
    if not args.deterministic:
        payload = {**payload,
                   "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _emit_csv(args, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit(args, buf.getvalue())


def _emit_table(args, lines: list[str]) -> None:
    _emit(args, "\n".join(lines) + "\n")


def _coeff_str(x) -> str:
    """Decimal string for rational values, bracketed vector otherwise."""
    if isinstance(x, CycInt):
        if all(c == 0 for c in x.coeffs[1:]):
            return str(x.coeffs[0])
        return "[" + ",".join(str(c) for c in x.coeffs) + "]"
    return str(int(x))


# -- local factor cache --------------------------------------------------------------


def _cache_path(cache_dir: Path, exps: tuple[int, ...], p: int) -> Path:
    tag = "-".join(str(n) for n in exps)
    return cache_dir / f"v{tag}_p{p}.json"


def _record_hash(data: dict) -> str:
    blob = json.dumps(data, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _factor_record(exps: tuple[int, ...], lf: LocalFactor) -> dict:
    data = {
        "exponents": list(exps),
        "p": lf.p,
        "cohomology_degree": lf.cohomology_degree,
        "full_degree": lf.full_degree,
        "orbits": [{"m": j.m, "count": c, "coefficients": [str(x) for x in j.coeffs]}
                   for j, c in lf.orbits],
        "coefficients": [str(x) for x in lf.coeffs],
        "precision": lf.precision,
    }
    return {"format_version": CACHE_FORMAT_VERSION,
            "self_check": _record_hash(data),
            "data": data}


def _write_cache(path: Path, exps: tuple[int, ...], lf: LocalFactor) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(_factor_record(exps, lf), indent=1) + "\n")
    tmp.replace(path)   # atomic swap; concurrent writers of the same entry agree


def _load_cache(path: Path, exps: tuple[int, ...], p: int) -> LocalFactor | None:
    """Load a cached factor, or None.  A corrupt entry (bad version, hash
    mismatch, or a failed Riemann-hypothesis recheck) is deleted."""
    if not path.exists():
        return None
    try:
        rec = json.loads(path.read_text())
        if rec.get("format_version") != CACHE_FORMAT_VERSION:
            raise ValueError(f"format version {rec.get('format_version')}")
        data = rec["data"]
        if rec.get("self_check") != _record_hash(data):
            raise ValueError("self-check hash mismatch")
        if tuple(data["exponents"]) != tuple(exps) or data["p"] != p:
            raise ValueError("entry keyed to a different variety or prime")
        orbits = tuple((CycInt(o["m"], tuple(int(x) for x in o["coefficients"])),
                        int(o["count"]))
                       for o in data["orbits"])
        lf = LocalFactor(p=p,
                         cohomology_degree=int(data["cohomology_degree"]),
                         full_degree=int(data["full_degree"]),
                         orbits=orbits,
                         coeffs=tuple(int(x) for x in data["coefficients"]),
                         precision=data["precision"])
        if not check_riemann_hypothesis(lf).all_pass:
            raise ValueError("Riemann hypothesis recheck failed")
        return lf
    except (ValueError, KeyError, TypeError, IndexError,
            ValidationError, InvariantViolationError) as exc:
        print(f"warning: discarding corrupt cache entry {path}: {exc}", file=sys.stderr)
        try:
            path.unlink()
        except OSError:
            pass
        return None


def _local_factor(v: DiagonalVariety, p: int, cap: int | None,
                  cache_dir: Path, use_cache: bool) -> LocalFactor:
    """Cache-aware factor fetch.  Truncated factors are cheap and never cached."""
    if cap is not None:
        return local_factor_middle(v, p, max_root_field=cap)
    path = _cache_path(cache_dir, v.exponents, p)
    if use_cache:
        lf = _load_cache(path, v.exponents, p)
        if lf is not None:
            return lf
    lf = local_factor_middle(v, p)
    if use_cache:
        _write_cache(path, v.exponents, lf)
    return lf


# -- subcommand: count ---------------------------------------------------------------


def _cmd_count(args) -> None:
    cfg = _config(args)
    v = cfg.variety
    rows, skipped = [], []
    for p in cfg.primes:
        if not v.is_good_prime(p):
            if cfg.strict_primes:
                raise ValidationError(
                    f"p={p} divides an exponent of {v.exponents} (bad reduction)")
            skipped.append(p)
            continue
        f = make_field(p, cfg.extension)
        rows.append({"p": p, "r": cfg.extension, "q": f.q,
                     "projective_points": str(count_projective(v, f)),
                     "affine_points": str(count_affine(v, f))})
    payload = {"exponents": list(v.exponents),
               "dimension": v.complex_dim,
               "calabi_yau": v.is_calabi_yau,
               "skipped_bad_primes": skipped,
               "counts": rows}
    fmt = _fmt(args, "table")
    if fmt == "json":
        _emit_json(args, payload)
    elif fmt == "csv":
        _emit_csv(args, ["p", "r", "q", "projective_points", "affine_points"],
                  [[r["p"], r["r"], r["q"], r["projective_points"], r["affine_points"]]
                   for r in rows])
    else:
        lines = [f"variety {v.exponents}  dim {v.complex_dim}  "
                 f"CY {'yes' if v.is_calabi_yau else 'no'}"]
        lines += [f"  q = {r['q']:<8d} projective {r['projective_points']:>16s}  "
                  f"affine {r['affine_points']}" for r in rows]
        if skipped:
            lines.append(f"  skipped bad primes: {skipped}")
        _emit_table(args, lines)


# -- subcommand: jacobi --------------------------------------------------------------


def _parse_alpha(args, exps: tuple[int, ...]) -> AlphaTuple | None:
    raw = getattr(args, "alpha", None)
    if not raw:
        return None
    den = getattr(args, "den", None) or math.lcm(*exps)
    try:
        nums = tuple(int(t) for t in raw.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse alpha {raw!r}")
    return AlphaTuple(nums, den)


def _cmd_jacobi(args) -> None:
    cfg = _config(args)
    if len(cfg.primes) != 1:
        raise ValidationError("jacobi wants exactly one prime")
    v, p = cfg.variety, cfg.primes[0]
    if not v.is_good_prime(p):
        raise ValidationError(
            f"p={p} divides an exponent of {v.exponents} (bad reduction)")
    single = _parse_alpha(args, v.exponents)
    r = cfg.extension
    if r == 1:
        # characters of conductor m need m | q - 1; lift to the residue degree
        m = math.lcm(*v.exponents, *((single.den,) if single else ()))
        if math.gcd(p, m) != 1:
            raise ValidationError(f"conductor {m} is ramified at p={p}")
        while (p ** r - 1) % m:
            r += 1
    f = make_field(p, r)
    hist = class_histogram(v, f)
    if single is not None:
        alphas = [single]
    else:
        aset = full_alpha_set(v, p)
        alphas = [o[0] for o in aset.orbits] if args.orbits else list(aset.tuples)
    entries = []
    for a in alphas:
        j = jacobi_sum(f, a, hist)
        # Weil bound check: |J|^2 = q^{s-2} for s nonzero entries
        target = CycInt.from_int(j.m, f.q ** (len(a.nums) - 2))
        z = j.embed(1)
        entries.append({"alpha": list(a.nums), "den": a.den,
                        "conductor": a.conductor,
                        "coefficients": [str(c) for c in j.coeffs],
                        "embedding": {"re": z.real, "im": z.imag},
                        "norm_check": bool(j * j.conj() == target)})
    payload = {"exponents": list(v.exponents), "p": p, "q": f.q,
               "orbit_representatives_only": bool(args.orbits),
               "jacobi_sums": entries}
    fmt = _fmt(args, "json")
    if fmt == "csv":
        _emit_csv(args, ["alpha", "den", "re", "im", "norm_check"],
                  [[";".join(str(n) for n in e["alpha"]), e["den"],
                    e["embedding"]["re"], e["embedding"]["im"], e["norm_check"]]
                   for e in entries])
    elif fmt == "table":
        lines = [f"p = {p}, q = {f.q}, {len(entries)} sums"]
        lines += [f"  {tuple(e['alpha'])}/{e['den']}  ~ "
                  f"{e['embedding']['re']:+.6f}{e['embedding']['im']:+.6f}i  "
                  f"norm {'ok' if e['norm_check'] else 'FAIL'}" for e in entries]
        _emit_table(args, lines)
    else:
        _emit_json(args, payload)


# -- subcommand: zeta ---------------------------------------------------------------


def _zeta_result(exps: tuple[int, ...], cap: int | None, predict: int,
                 cache_dir: Path, use_cache: bool, p: int) -> dict:
    """One prime's worth of zeta JSON; module-level so workers can pickle it."""
    v = DiagonalVariety(exps)
    lf = _local_factor(v, p, cap, cache_dir, use_cache)
    rh = check_riemann_hypothesis(lf)
    out = {"p": p,
           "degree": lf.full_degree,
           "coefficients": [str(c) for c in lf.coeffs],
           "rh_pass": bool(rh.all_pass),
           "functional_sign": None,
           "predicted_counts": {}}
    if lf.is_exact:
        sign, _ = check_functional_equation(lf)
        out["functional_sign"] = sign
        z = CongruentZeta(variety=v, p=p, middle=lf)
        out["predicted_counts"] = {str(r): str(predicted_count(z, r))
                                   for r in range(1, predict + 1)}
    else:
        out["precision"] = lf.precision
    return out


def _cmd_zeta(args) -> None:
    cfg = _config(args)
    v = cfg.variety
    good, skipped = [], []
    for p in cfg.primes:
        if v.is_good_prime(p):
            good.append(p)
        elif cfg.strict_primes:
            raise ValidationError(
                f"p={p} divides an exponent of {v.exponents} (bad reduction)")
        else:
            skipped.append(p)
    if not good:
        raise ValidationError("no good primes in the requested set")
    job = partial(_zeta_result, v.exponents, args.max_root_field, args.predict,
                  cfg.cache_dir, not args.no_cache)
    width = min(cfg.jobs, len(good))
    try:
        if width > 1:
            with ProcessPoolExecutor(max_workers=width) as pool:
                results = list(pool.map(job, good))
        else:
            results = [job(p) for p in good]
    except CapacityError as exc:
        raise ValidationError(
            f"{exc}; pass --max-root-field to truncate past large extension fields")
    payload = {"exponents": list(v.exponents),
               "dimension": v.complex_dim,
               "skipped_bad_primes": skipped,
               "results": results}
    fmt = _fmt(args, "table")
    if fmt == "json":
        _emit_json(args, payload)
    elif fmt == "csv":
        _emit_csv(args, ["p", "degree", "rh_pass", "functional_sign", "coefficients"],
                  [[r["p"], r["degree"], r["rh_pass"], r["functional_sign"],
                    ";".join(r["coefficients"])] for r in results])
    else:
        lines = [f"variety {v.exponents}  middle cohomology degree "
                 f"{results[0]['degree']}"]
        for r in results:
            sign = r["functional_sign"]
            lines.append(f"  p = {r['p']:<6d} rh {'pass' if r['rh_pass'] else 'FAIL'}  "
                         f"sign {sign if sign is not None else '?'}  "
                         f"c1 = {r['coefficients'][1] if len(r['coefficients']) > 1 else '-'}")
            for rr, cnt in sorted(r["predicted_counts"].items(), key=lambda kv: int(kv[0])):
                lines.append(f"      N_{rr} = {cnt}")
        if skipped:
            lines.append(f"  skipped bad primes: {skipped}")
        _emit_table(args, lines)


# -- subcommand: lseries --------------------------------------------------------------


def _cmd_lseries(args) -> None:
    cfg = _config(args, need_primes=False)
    if cfg.cutoff is None:
        raise ValidationError("lseries needs --cutoff")
    v = cfg.variety
    coll = hasse_weil_collection(v, cfg.cutoff)
    coeffs = dirichlet_coefficients(coll, cfg.cutoff)
    extra = {}
    if args.eval_at is not None:
        res = partial_sum_eval(coeffs, args.eval_at)
        val = complex(res.value)
        tb = res.tail_bound if math.isfinite(res.tail_bound) else None
        extra["partial_sum"] = {"s": res.s,
                                "value": {"re": val.real, "im": val.imag},
                                "tail_bound": tb}
    fmt = _fmt(args, "csv")
    if fmt == "csv":
        _emit_csv(args, ["n", "a_n"],
                  [[n, _coeff_str(coeffs.a(n))] for n in range(1, cfg.cutoff + 1)])
    elif fmt == "json":
        payload = {"exponents": list(v.exponents),
                   "cutoff": cfg.cutoff,
                   "weight": coeffs.weight,
                   "bad_primes": list(coeffs.bad_primes),
                   "omitted_primes": list(coeffs.omitted_primes),
                   "coefficients": [_coeff_str(coeffs.a(n))
                                    for n in range(1, cfg.cutoff + 1)],
                   **extra}
        _emit_json(args, payload)
    else:
        lines = [f"L-series of {v.exponents}, weight {coeffs.weight}, "
                 f"n <= {cfg.cutoff}, bad primes {list(coeffs.bad_primes)}"]
        lines += [f"  a_{n} = {_coeff_str(coeffs.a(n))}"
                  for n in range(1, cfg.cutoff + 1) if coeffs.a(n)]
        if extra:
            ps = extra["partial_sum"]
            tail = f"{ps['tail_bound']:.3g}" if ps["tail_bound"] is not None else "unbounded"
            lines.append(f"  sum a_n n^-s at s = {ps['s']}: {ps['value']['re']:.6f} "
                         f"(tail <= {tail})")
        _emit_table(args, lines)


# -- subcommand: hecke ---------------------------------------------------------------


def _cmd_hecke(args) -> None:
    if args.cutoff is None:
        raise ValidationError("hecke needs --cutoff")
    try:
        a = tuple(int(t) for t in args.a.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse exponent vector {args.a!r}")
    chi = HeckeCharacter(args.conductor, a)
    coeffs = dirichlet_coefficients(chi, args.cutoff)
    extra = {}
    if args.eval_at is not None:
        res = partial_sum_eval(coeffs, args.eval_at)
        val = complex(res.value)
        tb = res.tail_bound if math.isfinite(res.tail_bound) else None
        extra["partial_sum"] = {"s": res.s,
                                "value": {"re": val.real, "im": val.imag},
                                "tail_bound": tb}
    fmt = _fmt(args, "csv")
    if fmt == "csv":
        _emit_csv(args, ["n", "a_n"],
                  [[n, _coeff_str(coeffs.a(n))] for n in range(1, args.cutoff + 1)])
    elif fmt == "json":
        payload = {"conductor": chi.m,
                   "a": list(chi.a),
                   "weight": chi.weight,
                   "cutoff": args.cutoff,
                   "bad_primes": list(coeffs.bad_primes),
                   "omitted_primes": list(coeffs.omitted_primes),
                   "split_primes": [p for p, _ in coeffs.included_primes],
                   "coefficients": [_coeff_str(coeffs.a(n))
                                    for n in range(1, args.cutoff + 1)],
                   **extra}
        _emit_json(args, payload)
    else:
        lines = [f"Hecke character m = {chi.m}, a = {chi.a}, weight {chi.weight}"]
        lines += [f"  a_{n} = {_coeff_str(coeffs.a(n))}"
                  for n in range(1, args.cutoff + 1) if coeffs.a(n)]
        _emit_table(args, lines)


# -- subcommand: match ---------------------------------------------------------------


def _cmd_match(args) -> None:
    cfg = _config(args)
    v = cfg.variety
    results = []
    for p in cfg.primes:
        lf = _local_factor(v, p, None, cfg.cache_dir, not args.no_cache)
        rep = match_hasse_weil(v, p, lf)
        results.append({"p": rep.p, "m": rep.m, "ideals": rep.ideals,
                        "orbit_reps": rep.orbit_reps,
                        "multiset_size": rep.multiset_size,
                        "matched": rep.matched, "sign": rep.sign})
        if not rep.matched:
            raise InvariantViolationError(
                f"zeta roots and Hecke Jacobi sums disagree as multisets at p={p}")
    payload = {"exponents": list(v.exponents), "results": results}
    fmt = _fmt(args, "table")
    if fmt == "json":
        _emit_json(args, payload)
    else:
        lines = [f"variety {v.exponents}: zeta reciprocal roots vs Hecke values"]
        lines += [f"  p = {r['p']:<6d} {r['ideals']} ideals x {r['orbit_reps']} orbits "
                  f"= {r['multiset_size']} values  matched, sign {r['sign']:+d}"
                  for r in results]
        _emit_table(args, lines)


# -- subcommand: cyclo ---------------------------------------------------------------


def _cmd_cyclo(args) -> None:
    actions = [name for name in ("units", "delta", "s_element") if getattr(args, name)]
    if len(actions) != 1:
        raise ValidationError("pick exactly one of --units / --delta / --s-element")
    action = actions[0]

    if action == "units":
        m = args.conductor
        if m is None:
            raise ValidationError("--units needs -m/--conductor")
        units = []
        for j in range(2, m):
            if math.gcd(j, m) != 1:
                continue
            exact, numeric = cyclotomic_unit(m, j)
            units.append({"j": j,
                          "coefficients": [str(c) for c in exact.coeffs],
                          "modulus": numeric})
        payload = {"conductor": m, "units": units}
        if _fmt(args, "json") == "table":
            lines = [f"cyclotomic units theta_j of conductor {m}"]
            lines += [f"  j = {u['j']:<4d} |theta_j| = {u['modulus']:.12f}"
                      for u in units]
            _emit_table(args, lines)
        else:
            _emit_json(args, payload)
        return

    if action == "delta":
        if args.prime is None:
            raise ValidationError("--delta needs -p")
        primes, _ = _parse_primes(args.prime)
        rows = [{"p": p, "determinant": delta_determinant(p)} for p in primes]
        payload = {"delta_determinants": rows}
        if _fmt(args, "json") == "table":
            _emit_table(args, [f"  p = {r['p']:<6d} |Delta| = {r['determinant']:.12e}"
                               for r in rows])
        else:
            _emit_json(args, payload)
        return

    m = args.conductor
    if m is None or not args.a:
        raise ValidationError("--s-element needs -m/--conductor and --a")
    try:
        a = tuple(int(t) for t in args.a.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse exponent vector {args.a!r}")
    elem = s_element(a, m)
    payload = {"conductor": m, "a": list(a),
               "terms": [{"sigma": ell, "coefficient": c} for ell, c in elem.terms],
               "weight": hecke_weight(a, m)}
    if _fmt(args, "json") == "table":
        lines = [f"S(a) for a = {a} mod {m}, weight {payload['weight']}"]
        lines += [f"  sigma_{t['sigma']}: {t['coefficient']}" for t in payload["terms"]]
        _emit_table(args, lines)
    else:
        _emit_json(args, payload)


# -- subcommand: cft ---------------------------------------------------------------


def _cmd_cft(args) -> None:
    actions = [n for n in ("spectrum", "fusion", "fusion_field", "gepner")
               if getattr(args, n)]
    if args.check:
        actions.append("check")
    if len(actions) != 1:
        raise ValidationError(
            "pick exactly one of --spectrum / --check / --fusion / --fusion-field / --gepner")
    action = actions[0]

    if action == "gepner":
        levels = cft.gepner_levels(target_c=args.central_charge,
                                   max_factors=args.max_factors)
        payload = {"central_charge": args.central_charge,
                   "max_factors": args.max_factors,
                   "count": len(levels),
                   "levels": [list(t) for t in levels]}
        if _fmt(args, "json") == "table":
            lines = [f"{len(levels)} level vectors with c = {args.central_charge}"]
            lines += ["  " + " ".join(str(k) for k in t) for t in levels]
            _emit_table(args, lines)
        else:
            _emit_json(args, payload)
        return

    k = args.level
    if k is None:
        raise ValidationError("cft needs --level for this action")

    if action == "spectrum":
        spec = cft.n2_spectrum(k)
        md = cft.modular_data(k)
        rows = [[e.l, e.q, e.s,
                 e.delta.numerator, e.delta.denominator,
                 e.charge.numerator, e.charge.denominator] for e in spec.entries]
        fmt = _fmt(args, "csv")
        if fmt == "csv":
            _emit_csv(args, ["l", "q", "s", "delta_num", "delta_den",
                             "Q_num", "Q_den"], rows)
        elif fmt == "json":
            payload = {"level": k,
                       "central_charge": {"num": md.c.numerator,
                                          "den": md.c.denominator},
                       "entries": [{"l": r[0], "q": r[1], "s": r[2],
                                    "delta": {"num": r[3], "den": r[4]},
                                    "charge": {"num": r[5], "den": r[6]}}
                                   for r in rows]}
            _emit_json(args, payload)
        else:
            lines = [f"N=2 spectrum at level {k}, c = {md.c}"]
            lines += [f"  l={r[0]:<3d} q={r[1]:<4d} s={r[2]:<3d} "
                      f"Delta={r[3]}/{r[4]}  Q={r[5]}/{r[6]}" for r in rows]
            _emit_table(args, lines)
        return

    if action == "fusion":
        N = cft.verlinde_fusion(k)
        payload = {"level": k, "N": N.tolist()}
        _emit_json(args, payload)
        return

    if action == "fusion_field":
        rep = cft.fusion_field_match(k)
        payload = {"level": rep.k, "conductor": rep.conductor,
                   "all_match": rep.all_match,
                   "entries": [{"l": e.l, "value": e.value,
                                "unit_index": e.unit_index, "abs_err": e.abs_err}
                               for e in rep.entries]}
        if not rep.all_match:
            raise InvariantViolationError(
                f"quantum dimensions at k={k} failed to match cyclotomic units")
        if _fmt(args, "json") == "table":
            lines = [f"level {k}: quantum dimensions vs units of conductor {rep.conductor}"]
            lines += [f"  l = {e['l']:<3d} d = {e['value']:.12f} = theta_"
                      f"{e['unit_index']} (err {e['abs_err']:.2e})"
                      for e in payload["entries"]]
            _emit_table(args, lines)
        else:
            _emit_json(args, payload)
        return

    # identity checks
    if args.check == "kr":
        residual = cft.check_kr_identity(k)
        payload = {"level": k, "identity": "kr", "residual": residual,
                   "pass": residual < IDENTITY_TOL}
        if not payload["pass"]:
            raise InvariantViolationError(
                f"central charge sum rule residual {residual:.3e} at k={k}")
    else:
        if args.m is None:
            raise ValidationError("--check kn needs --m")
        res = cft.check_kn_identity(k, args.m)
        payload = {"level": k, "m": args.m, "identity": "kn",
                   "residual": res.residual,
                   "vanishing": list(res.vanishing),
                   "lhs": res.lhs, "rhs": res.rhs,
                   "pass": None if res.residual is None
                   else res.residual < IDENTITY_TOL}
        if payload["pass"] is False:
            raise InvariantViolationError(
                f"dilogarithm sum rule residual {res.residual:.3e} "
                f"at k={k}, m={args.m}")
    if _fmt(args, "json") == "table":
        tag = payload["identity"] + (f" m = {payload['m']}" if "m" in payload else "")
        if payload["residual"] is None:
            line = f"skipped, Q vanishes at l = {payload['vanishing']}"
        else:
            line = f"residual {payload['residual']:.3e}  pass {payload['pass']}"
        _emit_table(args, [f"level {k} {tag}: {line}"])
    else:
        _emit_json(args, payload)


# -- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse that reports flag problems as ValidationError (exit 1)."""

    def error(self, message):
        raise ValidationError(message)


def _build_parser() -> _Parser:
    top = _Parser(prog="cyarith",
                  description="Arithmetic of diagonal Calabi-Yau hypersurfaces "
                              "and SU(2) WZW data.")
    sub = top.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    common = argparse.ArgumentParser(add_help=False)
    out = common.add_argument_group("output")
    out.add_argument("--json", action="store_true", help="JSON output")
    out.add_argument("--csv", action="store_true", help="CSV output")
    out.add_argument("--table", action="store_true", help="plain table output")
    out.add_argument("--out", metavar="PATH", help="write to a file instead of stdout")
    out.add_argument("--deterministic", action="store_true",
                     help="suppress the timestamp field for byte-identical reruns")
    run = common.add_argument_group("execution")
    run.add_argument("--cache", metavar="DIR",
                     help=f"cache directory (default ${CACHE_ENV} or ./cache)")
    run.add_argument("--no-cache", action="store_true", help="bypass the factor cache")
    run.add_argument("--jobs", type=int, metavar="W",
                     help=f"parallel workers across primes (default ${JOBS_ENV} "
                          "or the CPU count)")

    variety = argparse.ArgumentParser(add_help=False)
    vg = variety.add_argument_group("variety")
    vg.add_argument("-d", "--degree", type=int, help="Fermat degree")
    vg.add_argument("-n", "--dim", type=int, help="complex dimension")
    vg.add_argument("--exponents", metavar="N1,N2,...",
                    help="exponent vector of a diagonal hypersurface")

    prime = argparse.ArgumentParser(add_help=False)
    prime.add_argument("-p", "--prime", metavar="P[,P...] or A..B",
                       help="prime list (strict) or range (bad primes skipped)")

    p_count = sub.add_parser("count", parents=[common, variety, prime],
                             help="rational point counts over F_q")
    p_count.add_argument("-r", "--extension", type=int, default=1,
                         help="field extension degree (default 1)")
    p_count.set_defaults(func=_cmd_count)

    p_jac = sub.add_parser("jacobi", parents=[common, variety, prime],
                           help="Jacobi sums of the degree set")
    p_jac.add_argument("-r", "--extension", type=int, default=1)
    p_jac.add_argument("--alpha", metavar="A1,A2,...",
                       help="single character tuple (numerators over --den)")
    p_jac.add_argument("--den", type=int, help="denominator for --alpha")
    p_jac.add_argument("--orbits", action="store_true",
                       help="emit Frobenius orbit representatives only")
    p_jac.set_defaults(func=_cmd_jacobi)

    p_zeta = sub.add_parser("zeta", parents=[common, variety, prime],
                            help="middle local zeta factors")
    p_zeta.add_argument("--max-root-field", type=int, metavar="Q",
                        help="skip orbits needing fields beyond Q (truncates)")
    p_zeta.add_argument("--predict", type=int, default=3, metavar="R",
                        help="predict point counts over F_{p^r}, r <= R (default 3)")
    p_zeta.set_defaults(func=_cmd_zeta)

    p_ls = sub.add_parser("lseries", parents=[common, variety],
                          help="Hasse-Weil Dirichlet coefficients a_n")
    p_ls.add_argument("--cutoff", type=int, metavar="N", help="largest index n")
    p_ls.add_argument("--eval-at", type=float, metavar="S",
                      help="partial sum of a_n n^-s with a tail bound")
    p_ls.set_defaults(func=_cmd_lseries)

    p_hk = sub.add_parser("hecke", parents=[common],
                          help="Jacobi-sum Hecke character coefficients")
    p_hk.add_argument("-m", "--conductor", type=int, required=True)
    p_hk.add_argument("--a", required=True, metavar="A1,A2,...",
                      help="character exponent vector mod m")
    p_hk.add_argument("--cutoff", type=int, metavar="N")
    p_hk.add_argument("--eval-at", type=float, metavar="S")
    p_hk.set_defaults(func=_cmd_hecke)

    p_cy = sub.add_parser("cyclo", parents=[common],
                          help="cyclotomic units, determinants, S(a) tables")
    p_cy.add_argument("-m", "--conductor", type=int)
    p_cy.add_argument("-p", "--prime", metavar="P[,P...]")
    p_cy.add_argument("--units", action="store_true",
                      help="table of theta_j with numeric moduli")
    p_cy.add_argument("--delta", action="store_true",
                      help="truncated unit determinant at p")
    p_cy.add_argument("--s-element", dest="s_element", action="store_true",
                      help="group-ring element S(a)")
    p_cy.add_argument("--a", metavar="A1,A2,...", help="exponent vector for --s-element")
    p_cy.set_defaults(func=_cmd_cyclo)

    p_cft = sub.add_parser("cft", parents=[common],
                           help="SU(2) WZW spectra, fusion, identities")
    p_cft.add_argument("--level", type=int, help="level k")
    p_cft.add_argument("--spectrum", action="store_true",
                       help="N=2 primary spectrum (l, q, s, Delta, Q)")
    p_cft.add_argument("--check", choices=("kr", "kn"),
                       help="central charge (kr) or dilogarithm (kn) sum rule")
    p_cft.add_argument("--m", type=int, help="row index for --check kn")
    p_cft.add_argument("--fusion", action="store_true",
                       help="Verlinde fusion coefficients")
    p_cft.add_argument("--fusion-field", dest="fusion_field", action="store_true",
                       help="match quantum dimensions against cyclotomic units")
    p_cft.add_argument("--gepner", action="store_true",
                       help="enumerate level vectors with fixed central charge")
    p_cft.add_argument("--central-charge", type=int, default=9,
                       help="target central charge for --gepner (default 9)")
    p_cft.add_argument("--max-factors", type=int, default=9,
                       help="largest tensor length for --gepner (default 9)")
    p_cft.set_defaults(func=_cmd_cft)

    p_match = sub.add_parser("match", parents=[common, variety, prime],
                             help="zeta reciprocal roots vs Hecke Jacobi sums")
    p_match.set_defaults(func=_cmd_match)

    return top


def run(argv=None) -> int:
    """Parse and execute; returns the process exit code."""
    try:
        args = _build_parser().parse_args(argv)
        args.func(args)
        return 0
    except SystemExit as exc:       # --help and friends
        code = exc.code or 0
        return 0 if code == 0 else 1
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2


def console_entry() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    console_entry()
