"""Command-line front end: ``spectral-perturb verify`` and ``spectral-perturb sweep``.

Both commands resolve a list of operator pairs ``(A, K)``, run the requested
checks and write ``reports.csv`` plus ``summary.json`` to the output
directory; ``sweep`` also draws one SVG per pair with the count ``n(s)``
against the bound curves.

Exit codes: 0 no violation, 1 at least one violation, 2 bad input.

CSV columns, in order: ``theorem_id, pair_id, p, q, s, bound, observed,
verdict, wall_ms``.  Floats are written with ``repr``; ``wall_ms`` is left
empty unless ``--timing`` is given, so seeded runs are byte-identical.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import bounds, hilbert
from ._linalg import as_matrix, op_norm
from .gallery import GallerySpec, random_ensemble
from .lorentz import INF
from .matrixio import MatrixParseError, load_matrix
from .spectral import eigen_profile, spectral_radius
from .svgplot import line_plot

SEED_ENV = "SPECTRAL_PERTURB_SEED"
CSV_COLUMNS = ("theorem_id", "pair_id", "p", "q", "s", "bound", "observed", "verdict", "wall_ms")
THEOREMS = ("thm1", "thm2", "thm3", "carl", "cor1", "eq25", "ex2")
KIND_ALIASES = {
    "circulant": "circulant_pair",
    "circulant_pair": "circulant_pair",
    "shift": "jordan_shift",
    "jordan": "jordan_shift",
    "jordan_shift": "jordan_shift",
    "companion": "shift_rank_one",
    "shift_rank_one": "shift_rank_one",
    "volterra": "volterra",
    "ginibre": "random_ginibre",
    "random_ginibre": "random_ginibre",
    "random": "random_lowrank",
    "lowrank": "random_lowrank",
    "random_lowrank": "random_lowrank",
}
SWEEP_GRID_POINTS = 120


class ConfigError(ValueError):
    """Invalid command line or config file; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    theorems: list[str]
    pairs: list[str] = field(default_factory=list)
    A_path: str | None = None
    K_path: str | None = None
    ps: list[float] = field(default_factory=lambda: [1.0])
    qs: list[float] = field(default_factory=lambda: [INF])
    s_values: list[float] | None = None
    s_grid: tuple[float, float, int] | None = None
    N_values: list[int] = field(default_factory=list)
    r_grid: int = 24
    trials: int = 1000
    n_max: int = 8
    m_max: int = 8
    norm: str = "entropy_upper"
    form: str = "simple_16"
    seed: int = 0
    out_dir: str = "spectral_out"
    jobs: int = 1
    timing: bool = False
    log_scale: bool = False
    plot: bool = True

    def validate(self) -> None:
        if not self.theorems:
            raise ConfigError("no theorem selected")
        bad = [t for t in self.theorems if t not in THEOREMS]
        if bad:
            raise ConfigError(f"unknown theorem(s) {bad}; choose from {list(THEOREMS)}")
        if not self.ps:
            raise ConfigError("empty p grid")
        if any(not (p > 0 and math.isfinite(p)) for p in self.ps):
            raise ConfigError("every p must be positive and finite")
        if any(t in self.theorems for t in ("thm3", "eq25")) and any(p <= 1 for p in self.ps):
            raise ConfigError("thm3 and eq25 need p > 1")
        if not self.qs or any(not q > 0 for q in self.qs):
            raise ConfigError("q grid must be nonempty and positive")
        if self.s_values is not None:
            if not self.s_values:
                raise ConfigError("empty s grid")
            if any(not (s >= 0 and math.isfinite(s)) for s in self.s_values):
                raise ConfigError("every s must be finite and nonnegative")
        if self.s_grid is not None:
            lo, hi, n = self.s_grid
            if n < 1 or not hi > lo or lo < 0:
                raise ConfigError(f"empty s grid {lo}:{hi}:{n}")
        if "ex2" in self.theorems:
            if len(self.theorems) > 1:
                raise ConfigError("ex2 cannot be combined with other theorems")
            if not self.N_values:
                raise ConfigError("ex2 needs --N")
            if any(n < 1 for n in self.N_values):
                raise ConfigError("--N values must be >= 1")
            if not self.s_values or any(not 0 < s < 1 for s in self.s_values):
                raise ConfigError("ex2 needs --s values in (0, 1)")
        else:
            if not self.pairs and not (self.A_path and self.K_path):
                raise ConfigError("no input: give --pair or both --A and --K")
            if bool(self.A_path) != bool(self.K_path):
                raise ConfigError("--A and --K must be given together")
        if self.r_grid < 1 or self.trials < 1 or self.n_max < 1 or self.m_max < 1:
            raise ConfigError("--r-grid, --trials, --n-max and --m-max must be >= 1")
        if self.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        if self.norm not in ("entropy_upper", "approx"):
            raise ConfigError(f"unknown --norm {self.norm!r}")
        if self.form not in ("simple_16", "phi_15", "both"):
            raise ConfigError(f"unknown --form {self.form!r}")


# ---------------------------------------------------------------------------
# argument handling


def _floats(tokens) -> list[float]:
    out = []
    for tok in tokens:
        for part in str(tok).replace(",", " ").split():
            try:
                out.append(float(part))
            except ValueError:
                raise ConfigError(f"not a number: {part!r}") from None
    return out


def _ints(tokens) -> list[int]:
    vals = _floats(tokens)
    if any(v != int(v) for v in vals):
        raise ConfigError(f"expected integers, got {vals}")
    return [int(v) for v in vals]


def _s_grid(text: str) -> tuple[float, float, int]:
    m = re.fullmatch(r"\s*([^:]+):([^:]+):([^:]+)\s*", text)
    if not m:
        raise ConfigError(f"--s-grid expects lo:hi:count, got {text!r}")
    lo, hi = _floats([m.group(1), m.group(2)])
    (n,) = _ints([m.group(3)])
    return lo, hi, n


def read_config_file(path) -> list[str]:
    """Turn ``key = value`` lines into flag tokens.

    Keys are flag names without dashes (``s-grid`` or ``s_grid``); values
    are split like a shell would.  ``true`` enables a switch, ``false``
    drops it.  ``#`` starts a comment.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (x.strip() for x in line.split("=", 1))
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_-]*", key):
            raise ConfigError(f"{path}:{lineno}: bad key {key!r}")
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "yes", "on"):
            tokens.append(flag)
        elif value.lower() in ("false", "no", "off"):
            continue
        else:
            tokens.append(flag)
            tokens.extend(shlex.split(value))
    return tokens


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spectral-perturb", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in (("verify", "run checks and report verdicts"),
                           ("sweep", "run checks over pairs x p x s and plot n(s) against the bounds")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--thm", nargs="+",
                       help="theorem ids: " + ", ".join(THEOREMS) + " (comma or space separated)")
        p.add_argument("--pair", nargs="+", default=[],
                       help="gallery:<kind>:<N>[:<rank>[:<seed>]], ensemble:<count>[:<n_max>] or file:<A>,<K>")
        p.add_argument("--A", dest="A_path", help="matrix file for A (.json or Matrix Market)")
        p.add_argument("--K", dest="K_path", help="matrix file for K")
        p.add_argument("--p", nargs="+", default=["1"], help="p grid")
        p.add_argument("--q", nargs="+", default=["inf"], help="q grid (thm3 only)")
        p.add_argument("--s", nargs="+", help="explicit s values")
        p.add_argument("--s-grid", help="lo:hi:count, a uniform s grid")
        p.add_argument("--N", nargs="+", default=[], help="circulant sizes for ex2")
        p.add_argument("--r-grid", type=int, default=24, help="points of the r grid for thm2/eq25")
        p.add_argument("--trials", type=int, default=1000, help="orthonormal trials for the thm3 Pietsch check")
        p.add_argument("--n-max", type=int, default=8, help="largest eigenvalue index for carl")
        p.add_argument("--m-max", type=int, default=8, help="largest entropy index for carl")
        p.add_argument("--norm", default="entropy_upper", choices=("entropy_upper", "approx"))
        p.add_argument("--form", default="simple_16", choices=("simple_16", "phi_15", "both"),
                       help="thm1 bound form")
        p.add_argument("--seed", type=int, help=f"seed for random pairs (default ${SEED_ENV} or 0)")
        p.add_argument("--out", default="spectral_out", help="output directory")
        p.add_argument("--config", help="flat key = value file; flags on the command line win")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--timing", action="store_true", help="fill the wall_ms column")
        p.add_argument("--log-scale", action="store_true", help="log-scale y axis in plots")
        p.add_argument("--no-plot", action="store_true", help="skip SVG output")
    return parser


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"${SEED_ENV} must be an integer, got {raw!r}") from None


def parse_config(argv) -> RunConfig:
    argv = list(argv)
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.config:
        # config tokens go first so that later command-line flags override them
        argv = [argv[0]] + read_config_file(ns.config) + argv[1:]
        ns = parser.parse_args(argv)
    if ns.thm is None and ns.command == "verify":
        # checked here rather than by argparse so that a config file can supply it
        raise ConfigError("verify needs --thm")
    theorems = [t for tok in (ns.thm or ["thm1", "thm2"]) for t in tok.replace(",", " ").split()]
    cfg = RunConfig(
        command=ns.command,
        theorems=theorems,
        pairs=list(ns.pair),
        A_path=ns.A_path,
        K_path=ns.K_path,
        ps=_floats(ns.p),
        qs=_floats(ns.q),
        s_values=_floats(ns.s) if ns.s is not None else None,
        s_grid=_s_grid(ns.s_grid) if ns.s_grid else None,
        N_values=_ints(ns.N),
        r_grid=ns.r_grid,
        trials=ns.trials,
        n_max=ns.n_max,
        m_max=ns.m_max,
        norm=ns.norm,
        form=ns.form,
        seed=ns.seed if ns.seed is not None else _default_seed(),
        out_dir=ns.out,
        jobs=ns.jobs,
        timing=ns.timing,
        log_scale=ns.log_scale,
        plot=not ns.no_plot,
    )
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# pairs


def resolve_pairs(cfg: RunConfig) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Materialise every requested pair as ``(pair_id, A, K)``."""
    out = []
    for spec in cfg.pairs:
        out.extend(_resolve_one(spec, cfg.seed))
    if cfg.A_path:
        out.extend(_resolve_one(f"file:{cfg.A_path},{cfg.K_path}", cfg.seed))
    return out


def _resolve_one(spec: str, seed: int):
    head, _, rest = spec.partition(":")
    if head == "file":
        paths = rest.split(",")
        if len(paths) != 2 or not all(paths):
            raise ConfigError(f"file pair must be file:<A>,<K>, got {spec!r}")
        A, K = (load_matrix(p) for p in paths)
        if A.shape[0] != A.shape[1] or A.shape != K.shape:
            raise ConfigError(f"A and K must be square of equal size, got {A.shape} and {K.shape}")
        return [(f"file:{Path(paths[0]).name},{Path(paths[1]).name}", A, K)]
    if head == "ensemble":
        parts = rest.split(":")
        nums = _ints(parts) if rest else []
        if not 1 <= len(nums) <= 2 or nums[0] < 1:
            raise ConfigError(f"ensemble spec must be ensemble:<count>[:<n_max>], got {spec!r}")
        n_max = nums[1] if len(nums) == 2 else 16
        return random_ensemble(nums[0], seed, n_max=n_max)
    if head == "gallery":
        parts = rest.split(":")
        if len(parts) < 2 or parts[0] not in KIND_ALIASES:
            raise ConfigError(f"gallery pair must be gallery:<kind>:<N>[:<rank>[:<seed>]] with kind in "
                              f"{sorted(KIND_ALIASES)}, got {spec!r}")
        nums = _ints(parts[1:])
        if len(nums) > 3:
            raise ConfigError(f"too many fields in {spec!r}")
        N = nums[0]
        rank = nums[1] if len(nums) > 1 else 1
        pair_seed = nums[2] if len(nums) > 2 else seed
        try:
            gs = GallerySpec(KIND_ALIASES[parts[0]], N, seed=pair_seed, rank=rank)
            A, K = gs.build()
        except ValueError as exc:
            raise ConfigError(f"{spec}: {exc}") from None
        return [(gs.pair_id, A, K)]
    raise ConfigError(f"unknown pair source {spec!r}; expected gallery:, ensemble: or file:")


# ---------------------------------------------------------------------------
# running the checks


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    res = fn(*args, **kwargs)
    ms = (time.perf_counter() - t0) * 1e3
    res = res if isinstance(res, list) else [res]
    return [(r, ms / len(res)) for r in res]


def _s_points(cfg: RunConfig, mods, floor: float, plot_top: float) -> list[float]:
    if cfg.s_values is not None:
        return sorted(set(cfg.s_values))
    if cfg.s_grid is not None:
        lo, hi, n = cfg.s_grid
        return np.linspace(lo, hi, n).tolist()
    if cfg.command == "sweep":
        return np.linspace(0.0, plot_top, SWEEP_GRID_POINTS + 1)[1:].tolist()
    return bounds.midpoint_grid(mods, floor)


def run_pair(cfg: RunConfig, pair_id: str, A, K) -> dict:
    """All checks of ``cfg`` on one pair; returns rows and plot data."""
    A = as_matrix(A, square=True)
    K = as_matrix(K, square=True)
    prof = eigen_profile(A + K)
    mods = prof.moduli
    norm_A = op_norm(A)
    rA = spectral_radius(A)
    top = 1.25 * max(float(mods.max()), norm_A, 1e-12)
    results: list[tuple[bounds.BoundReport, float]] = []
    skipped = 0
    nk_cache: dict = {}
    m_cache: dict = {}

    def nk(p):
        if p not in nk_cache:
            nk_cache[p] = bounds.k_norm_power(K, p, cfg.norm)
        return nk_cache[p]

    for thm in cfg.theorems:
        if thm == "carl":
            results += _timed(bounds.check_carl_grid, A, K, cfg.n_max, cfg.m_max)
            continue
        for p in cfg.ps:
            if thm == "thm1":
                forms = ("simple_16", "phi_15") if cfg.form == "both" else (cfg.form,)
                for s in _s_points(cfg, mods, norm_A, top):
                    if not s > norm_A:
                        skipped += 1
                        continue
                    for form in forms:
                        results += _timed(bounds.thm1_bound, A, K, s, p, form, cfg.norm, profile=prof, n_k=nk(p))
            elif thm == "cor1":
                if norm_A > 0:
                    results += _timed(bounds.cor1_check, A, K, p, cfg.norm, profile=prof, n_k=nk(p))
                else:
                    skipped += 1
            elif thm == "thm2":
                grid = [s for s in _s_points(cfg, mods, rA, top) if s > rA + 1e-9]
                skipped += len(_s_points(cfg, mods, rA, top)) - len(grid)
                r_all = bounds.r_grid_points(rA, max(grid), cfg.r_grid, extra=(norm_A,)) if grid else []
                for s in grid:
                    for form in ("inf_x", "midpoint_y"):
                        results += _timed(bounds.thm2_bound, A, K, s, p, form, cfg.r_grid, cfg.norm, profile=prof,
                                          n_k=nk(p), r_A=rA, r_values=r_all, m_cache=m_cache)
            elif thm == "thm3":
                nr = hilbert.numerical_range(A)
                for q in cfg.qs:
                    results += _timed(hilbert.thm3_check, A, K, p, q, nr=nr)
                results += _timed(hilbert.pietsch_check, K, p, cfg.trials, cfg.seed)
            elif thm == "eq25":
                for s in _s_points(cfg, mods, rA, top):
                    if not s > rA + 1e-9:
                        skipped += 1
                        continue
                    results += _timed(hilbert.hilbert_counting_checks, A, K, p, s, cfg.r_grid)
    rows = [_row(r.with_pair(pair_id), ms, cfg.timing) for r, ms in results]
    plot = None
    if cfg.command == "sweep" and cfg.plot:
        plot = _plot_data(pair_id, mods, top, results)
    return {"pair_id": pair_id, "rows": rows, "skipped": skipped, "plot": plot,
            "ratios": [(r.theorem_id, r.ratio) for r, _ in results if r.verdict != "report_only"]}


def _row(r: bounds.BoundReport, ms: float, timing: bool) -> dict:
    return {
        "theorem_id": r.theorem_id,
        "pair_id": r.pair_id,
        "p": r.p,
        "q": r.q,
        "s": r.s,
        "bound": r.bound_value,
        "observed": r.observed_value,
        "verdict": r.verdict,
        "wall_ms": ms if timing else None,
        "notes": r.notes,
    }


def _plot_data(pair_id, mods, top, results):
    xs = np.linspace(0.0, top, 401)
    brk = mods[(mods > 0) & (mods < top)]
    xs = np.unique(np.concatenate([xs, brk, brk * (1 + 1e-9)]))
    prof_like = np.sort(mods)[::-1]
    counts = [float(np.count_nonzero(prof_like > x * (1 + 1e-12))) for x in xs]
    curves: dict[str, list] = {}
    for r, _ in results:
        if r.theorem_id in ("THM1_16", "THM1_15", "THM2_X", "THM2_Y", "HCOR_NORM", "HCOR_MA") and math.isfinite(r.s):
            curves.setdefault(f"{r.theorem_id} p={r.p:g}", []).append((r.s, r.bound_value))
    return {"pair_id": pair_id, "x": xs.tolist(), "n": counts,
            "curves": {k: sorted(v) for k, v in sorted(curves.items())}}


def _worker(args):
    cfg, pair_id, A, K = args
    return run_pair(cfg, pair_id, A, K)


def run_all(cfg: RunConfig, pairs) -> list[dict]:
    tasks = [(cfg, pid, A, K) for pid, A, K in pairs]
    if cfg.jobs == 1 or len(tasks) <= 1:
        results = [_worker(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(tasks))) as pool:
            results = list(pool.map(_worker, tasks, chunksize=max(1, len(tasks) // (4 * cfg.jobs))))
    return results


# ---------------------------------------------------------------------------
# output


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def sort_rows(rows: list[dict]) -> list[dict]:
    """Deterministic order: by pair, theorem, then the order the checks ran in."""
    return sorted(rows, key=lambda r: (r["pair_id"], r["theorem_id"]))


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def summarize(cfg: RunConfig, rows: list[dict], ratios, skipped: int, exit_code: int) -> dict:
    verdicts: dict[str, dict[str, int]] = {}
    for r in rows:
        d = verdicts.setdefault(r["theorem_id"], {})
        d[r["verdict"]] = d.get(r["verdict"], 0) + 1
    max_ratio: dict[str, float] = {}
    for tid, ratio in ratios:
        if math.isfinite(ratio):
            max_ratio[tid] = max(max_ratio.get(tid, 0.0), ratio)
    violations = [{k: r[k] for k in ("theorem_id", "pair_id", "p", "s", "bound", "observed", "notes")}
                  for r in rows if r["verdict"] == "violated"]
    conf = asdict(cfg)
    return {
        "command": cfg.command,
        "config": conf,
        "rows": len(rows),
        "skipped_out_of_domain": skipped,
        "verdicts": verdicts,
        "max_ratio": max_ratio,
        "violations": violations[:50],
        "exit_code": exit_code,
    }


def _jsonable(obj):
    # strict JSON: non-finite floats become the strings used in the CSV
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else _fmt(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_") or "pair"


def write_plot(path: Path, data: dict, log_y: bool) -> None:
    series = [{"label": "n(s)", "x": data["x"], "y": data["n"], "step": True}]
    for label, pts in data["curves"].items():
        series.append({"label": label, "x": [s for s, _ in pts], "y": [b for _, b in pts]})
    n_top = max(data["n"]) if data["n"] else 1.0
    svg = line_plot(series, title=f"eigenvalue count vs bounds: {data['pair_id']}", xlabel="s",
                    ylabel="count", log_y=log_y, y_max=None if log_y else 3.0 * n_top + 1.0)
    path.write_text(svg, encoding="utf-8")


# ---------------------------------------------------------------------------
# commands


def _run_ex2(cfg: RunConfig) -> tuple[list[dict], list, int]:
    rows, ratios, mismatch = [], [], 0
    for N in cfg.N_values:
        for p in cfg.ps:
            for s in cfg.s_values:
                (rep, ms), = _timed(bounds.ex2_refute_31, N, s, p)
                expected = "violated" if N > rep.extra["threshold"] * (1 + bounds.REL_TOL) else "holds"
                if rep.verdict != expected:
                    mismatch += 1
                rows.append(_row(rep, ms, cfg.timing))
                ratios.append((rep.theorem_id, rep.ratio))
    return rows, ratios, mismatch


def execute(cfg: RunConfig) -> int:
    """Run a validated config and write the outputs; returns the exit code."""
    if cfg.theorems == ["ex2"]:
        rows, ratios, mismatch = _run_ex2(cfg)
        skipped, plots = 0, []
        # the refutation is expected to fail the bound; only a surprise is an error
        code = 1 if mismatch else 0
    else:
        pairs = resolve_pairs(cfg)
        if not pairs:
            raise ConfigError("no pairs to run")
        results = run_all(cfg, pairs)
        rows = sort_rows([row for res in results for row in res["rows"]])
        ratios = [x for res in results for x in res["ratios"]]
        skipped = sum(res["skipped"] for res in results)
        plots = [res["plot"] for res in results if res["plot"] is not None]
        if not rows:
            raise ConfigError("empty grid: no (pair, p, s) point lies in the domain of the selected theorems")
        code = 1 if any(r["verdict"] == "violated" for r in rows) else 0
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "reports.csv").write_text(rows_to_csv(rows), encoding="utf-8")
    summary = summarize(cfg, rows, ratios, skipped, code)
    (out / "summary.json").write_text(json.dumps(_jsonable(summary), indent=2, sort_keys=True) + "\n",
                                      encoding="utf-8")
    if plots:
        pdir = out / "plots"
        pdir.mkdir(exist_ok=True)
        for data in plots:
            write_plot(pdir / f"{_slug(data['pair_id'])}.svg", data, cfg.log_scale)
    n_viol = sum(r["verdict"] == "violated" for r in rows)
    print(f"{len(rows)} reports, {n_viol} violated, written to {out}", file=sys.stderr)
    if skipped:
        print(f"{skipped} grid points outside a theorem's domain were skipped", file=sys.stderr)
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        return execute(cfg)
    except (ConfigError, MatrixParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
