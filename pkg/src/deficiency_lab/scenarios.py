"""Named verification scenarios and their JSON/CSV artifacts.

Each scenario reads every tolerance from its ``params`` object (there are
no hidden defaults), runs the exact pipeline, and returns a self-contained
report whose ``inputs_echo`` is enough to re-run it.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .deficiency import critical_mu_search, estimate_decay_slope, predicted_deficiency, verify_envelope
from .extremal import (
    FIG1,
    ExtremalParams,
    build_extremal,
    envelope_constant,
    lattice_grid,
    log_mgf_closed_form,
    lower_bound_params,
    split_indices,
    theoretical_K2,
    witness_ratio,
)
from .mixture import MixtureDensity, chebyshev_check, convolve, evaluate_log, n_fold, tilt
from .tilting import cf_gamma_integral, min_n_for_bounded, plancherel_check, tilted_nfold_sup

SCENARIOS = (
    "fig1",
    "harmonic",
    "iid",
    "tightness",
    "tilt-bounded",
    "cf-integrability",
    "plancherel",
    "witness",
    "k2-bound",
    "chebyshev",
)

PAPER_CLAIMS = {
    "fig1": "figure of the extremal density: peaks at the lattice points, log-peaks decaying at rate lambda - eps",
    "harmonic": "harmonic-mean law: the deficiency of p*q is 1/(1/eps + 1/delta)",
    "iid": "n-fold self-convolution has deficiency eps/n",
    "tightness": "optimality: the envelope exponent lambda - eps_n cannot be increased",
    "tilt-bounded": "tilting: the t-tilted n-fold convolution is bounded from n_t = ceil((lambda-mu)/(lambda-t))",
    "cf-integrability": "tilted characteristic functions are gamma-integrable from gamma = 2 n_t",
    "plancherel": "Plancherel isometry: integral |f|^2 ds = 2 pi integral p^2 dx",
    "witness": "convolution lower bound p*q >= c2 p_{lambda, eps_tilde, zeta, alpha+beta} via the index split",
    "k2-bound": "explicit envelope constant K2 = D M lambda/delta + C N lambda/eps for the two-fold convolution",
    "chebyshev": "Chebyshev tail inequality P(X >= x) <= E e^{lambda X} e^{-lambda x}",
}


class ConfigError(ValueError):
    """Invalid scenario configuration (a usage error, not a failed check)."""


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    params: dict
    output_dir: str
    seedless: bool = True

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; expected one of {', '.join(SCENARIOS)}")
        if not isinstance(self.params, dict):
            raise ConfigError("params must be a JSON object")
        if self.seedless is not True:
            raise ConfigError("seedless must be true: scenarios use no randomness")

    @classmethod
    def from_dict(cls, d: dict, output_dir: str | None = None) -> "ScenarioConfig":
        if not isinstance(d, dict):
            raise ConfigError("scenario config must be a JSON object")
        unknown = set(d) - {"scenario", "params", "output_dir", "seedless"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "scenario" not in d or "params" not in d:
            raise ConfigError("config needs 'scenario' and 'params'")
        out = output_dir if output_dir is not None else d.get("output_dir")
        if out is None:
            raise ConfigError("config needs 'output_dir'")
        return cls(d["scenario"], d["params"], str(out), d.get("seedless", True))

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "params": self.params,
            "output_dir": self.output_dir,
            "seedless": self.seedless,
        }


@dataclass
class ScenarioReport:
    scenario: str
    paper_claim: str
    inputs_echo: dict
    outputs: dict
    passed: bool
    runtime_ms: int
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "paper_claim": self.paper_claim,
            "inputs_echo": self.inputs_echo,
            "outputs": self.outputs,
            "checks": self.checks,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _jsonable(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isfinite(v):
            return v
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> Path:
    """Write via a temp file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


# ---------------------------------------------------------------- helpers


class _Params:
    """Strict accessor: a missing key is a config error, never a default."""

    def __init__(self, d: dict, where: str):
        self.d, self.where = d, where

    def __getitem__(self, key):
        if key not in self.d:
            raise ConfigError(f"{self.where}: missing required parameter {key!r}")
        return self.d[key]

    def get(self, key, default=None):
        return self.d.get(key, default)

    def extremal(self, key) -> ExtremalParams:
        try:
            return ExtremalParams.from_dict(self[key])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{self.where}: bad extremal params {key!r}: {exc}") from exc


def _mix(params: ExtremalParams) -> MixtureDensity:
    return build_extremal(params)[0]


def _local_maxima(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    i = np.flatnonzero((v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:])) + 1
    return x[i]


# ---------------------------------------------------------------- fig1 export


def fig1_grid(x_lo: float, x_hi: float, h: float) -> np.ndarray:
    """Nodes k*h inside (x_lo, x_hi]; halving h reproduces every node exactly."""
    k_lo = max(math.floor(x_lo / h + 1e-9) + 1, 1) if x_lo >= 0 else math.ceil(x_lo / h - 1e-9)
    k_hi = math.floor(x_hi / h + 1e-9)
    if k_hi <= k_lo:
        raise ValueError(f"empty grid on ({x_lo}, {x_hi}] with h={h}")
    return np.arange(k_lo, k_hi + 1, dtype=float) * h


def fig1_export(
    params: ExtremalParams = FIG1,
    x_lo: float = 0.0,
    x_hi: float = 7.5,
    h: float = 1e-4,
    out_csv: str | os.PathLike = "fig1.csv",
    j_range: tuple[int, int] = (10, 40),
) -> dict:
    """Write x, p(x), log p(x) for the normalised extremal density.

    A companion ``.json`` next to the CSV holds the detected local maxima
    and the polynomially corrected log-peak slope.  Returns that summary.
    """
    mix = _mix(params)
    x = fig1_grid(x_lo, x_hi, h)
    logp = evaluate_log(mix, x)
    p = np.exp(logp)
    lines = ["x,p,logp"]
    lines.extend(f"{a:.17g},{b:.17g},{c:.17g}" for a, b, c in zip(x, p, logp))
    decay = estimate_decay_slope(lambda j: evaluate_log(mix, j), params.lam, params.alpha, *j_range)
    summary = {
        "params": params.to_dict(),
        "x_lo": x_lo,
        "x_hi": x_hi,
        "h": h,
        "n_points": int(x.size),
        "local_maxima": _local_maxima(x, p).tolist(),
        "log_peak_slope": decay.fitted_slope,
        "decay": decay.to_dict(),
    }
    out_csv = Path(out_csv)
    try:
        write_atomic(out_csv, "\n".join(lines) + "\n")
        write_atomic(out_csv.with_suffix(".json"), dumps(summary))
    except OSError as exc:
        raise OSError(f"cannot write fig1 data to {out_csv}: {exc}") from exc
    summary["csv"] = str(out_csv)
    return summary


def _run_fig1(P: _Params, out: Path):
    params = P.extremal("extremal")
    summary = fig1_export(
        params, P["x_lo"], P["x_hi"], P["h"], out / "fig1.csv", tuple(P["j_range"])
    )
    tol = P["maxima_tol"]
    maxima = np.array(summary["local_maxima"])
    nearest = {}
    for k in P["maxima_targets"]:
        d = float(np.min(np.abs(maxima - k))) if maxima.size else math.inf
        nearest[str(k)] = d
    missing = [int(k) for k, d in nearest.items() if not d <= tol]
    slope_err = abs(summary["log_peak_slope"] - P["slope_target"])
    outputs = {**summary, "maxima_distance": nearest, "targets_without_maximum": missing}
    checks = {
        "maxima_near_targets": not missing,
        "log_peak_slope": slope_err <= P["slope_tol"],
    }
    return outputs, checks


# ---------------------------------------------------------------- harmonic law


def _run_harmonic(P: _Params, out: Path):
    p_par, q_par = P.extremal("p"), P.extremal("q")
    if p_par.lam != q_par.lam:
        raise ConfigError("harmonic: p and q must share lambda")
    pq = convolve(_mix(p_par), _mix(q_par))
    pred = predicted_deficiency([p_par.eps, q_par.eps])
    rep = estimate_decay_slope(
        lambda x: evaluate_log(pq, x), p_par.lam, P["poly_alpha"], P["j_lo"], P["j_hi"]
    )
    rel = abs(rep.eps_hat - pred) / pred
    eps_t = lower_bound_params(p_par.eps, q_par.eps, p_par.kappa, q_par.kappa, p_par.alpha, q_par.alpha)[0]
    outputs = {
        "predicted": pred,
        "lower_bound_eps_tilde": eps_t,
        "decay": rep.to_dict(),
        "rel_err": rel,
        "n_components": len(pq),
        "pruned_log_mass": pq.pruned_log_mass,
    }
    return outputs, {"eps_hat_within_rel_tol": rel <= P["rel_tol"], "fit_ok": rep.fit_ok}


def _run_iid(P: _Params, out: Path):
    base = P.extremal("base")
    cases, checks = [], {}
    for c in P["cases"]:
        C = _Params(c, "iid case")
        par = ExtremalParams(base.lam, base.eps, base.kappa, base.alpha, C["trunc_J"])
        n = int(C["n"])
        conv = n_fold(_mix(par), n)
        pred = predicted_deficiency([base.eps] * n)
        rep = estimate_decay_slope(
            lambda x: evaluate_log(conv, x), base.lam, C["poly_alpha"], C["j_lo"], C["j_hi"]
        )
        rel = abs(rep.eps_hat - pred) / pred
        cases.append(
            {"n": n, "predicted": pred, "decay": rep.to_dict(), "rel_err": rel, "n_components": len(conv)}
        )
        checks[f"n{n}_within_rel_tol"] = rel <= P["rel_tol"]
    return {"cases": cases}, checks


def _run_tightness(P: _Params, out: Path):
    par = P.extremal("p")
    n = int(P["n"])
    conv = n_fold(_mix(par), n)
    ev = lambda x: evaluate_log(conv, x)
    eps_n = predicted_deficiency([par.eps] * n)
    mu_ok = par.lam - eps_n
    lo, hi = P["window"]
    kw = dict(n_points=P["n_points"], threshold=P["threshold"], poly_alpha=P["poly_alpha"])
    at = verify_envelope(ev, mu_ok, lo, hi, **kw)
    above = verify_envelope(ev, mu_ok + P["margin"], lo, hi, **kw)
    outputs = {"eps_n": eps_n, "at_mu": at.to_dict(), "above_mu": above.to_dict()}
    crit = P.get("critical_search")
    if crit is not None:
        C = _Params(crit, "tightness critical_search")
        mu_c = critical_mu_search(
            ev, C["mu_lo"], C["mu_hi"], C["tol"], (lo, hi), P["n_points"], P["threshold"], C["poly_alpha"]
        )
        outputs["critical_mu"] = mu_c
        outputs["critical_eps_hat"] = par.lam - mu_c
    checks = {"no_divergence_at_mu": not at.diverges, "divergence_above_mu": above.diverges}
    return outputs, checks


# ---------------------------------------------------------------- tilting


def _run_tilt_bounded(P: _Params, out: Path):
    par = P.extremal("p")
    t, n = P["t"], int(P["n"])
    n_t = min_n_for_bounded(par.lam, par.mu, t)
    rep = tilted_nfold_sup(_mix(par), t, n, tuple(P["window"]), P["h"], par.lam, par.mu)
    outputs = {"n_t": n_t, "report": rep.to_dict()}
    checks = {
        "n_t_matches": n_t == P["expected_n_t"],
        "refinement_stable": rep.refinement_delta < P["refine_tol"],
        "sup_interior": rep.interior,
        "sup_finite": math.isfinite(rep.sup_density),
    }
    return outputs, checks


def _run_cf_integrability(P: _Params, out: Path):
    par = P.extremal("p")
    t = P["t"]
    mix = _mix(par)
    tilted = tilt(mix, t)[0]
    n_t = min_n_for_bounded(par.lam, par.mu, t)
    kw = dict(S=P["S"], n_quad=P["n_quad"], poly_alpha=P["poly_alpha"], fit_margin=P["fit_margin"])
    rtol = P["exponent_rtol"]
    untilted = cf_gamma_integral(mix, 2.0, **kw)
    verdicts, checks = [], {}
    for n in P["n_values"]:
        rep = cf_gamma_integral(tilted, 2.0 * n, **kw)
        verdicts.append({"n": n, "expected": n >= n_t, "report": rep.to_dict()})
        checks[f"verdict_gamma_{2 * n}"] = rep.converges == (n >= n_t)
    tilted_exp = verdicts[0]["report"]["tail_exponent"] if verdicts else cf_gamma_integral(tilted, 2.0, **kw).tail_exponent
    ut, tt = P["untilted_target"], P["tilted_target"]
    checks["untilted_exponent"] = abs(untilted.tail_exponent - ut) <= rtol * abs(ut)
    checks["tilted_exponent"] = abs(tilted_exp - tt) <= rtol * abs(tt)
    outputs = {
        "n_t": n_t,
        "untilted": untilted.to_dict(),
        "tilted_exponent": tilted_exp,
        "empirical_gamma_threshold": par.eps / (par.lam - t),
        "verdicts": verdicts,
    }
    return outputs, checks


def _run_plancherel(P: _Params, out: Path):
    cases, checks = [], {}
    for c in P["cases"]:
        C = _Params(c, "plancherel case")
        kind = C["kind"]
        if kind == "gaussian":
            mix = MixtureDensity.gaussian(C["mean"], C["std"])
        elif kind == "extremal":
            par = ExtremalParams.from_dict(C["extremal"])
            mix = _mix(par)
            if C["t"]:
                mix = tilt(mix, C["t"])[0]
        else:
            raise ConfigError(f"plancherel: unknown case kind {kind!r}")
        res = plancherel_check(mix, C["S"], C["n_quad"], C["poly_alpha"])
        row = {"name": C["name"], **res._asdict()}
        ok = res.rel_err < C["rel_tol"]
        if C.get("expect_sqrt_pi"):
            row["lhs_vs_sqrt_pi"] = abs(res.lhs - math.sqrt(math.pi)) / math.sqrt(math.pi)
            row["rhs_vs_sqrt_pi"] = abs(res.rhs - math.sqrt(math.pi)) / math.sqrt(math.pi)
            ok = ok and max(row["lhs_vs_sqrt_pi"], row["rhs_vs_sqrt_pi"]) < C["rel_tol"]
        cases.append(row)
        checks[C["name"]] = ok
    return {"cases": cases}, checks


# ---------------------------------------------------------------- lower bound and constants


def split_invariants_hold(m: int, eps: float, delta: float) -> bool:
    i, j = split_indices(m, eps, delta)
    if i + j != m:
        return False
    if m < 0:
        return split_indices(-m, eps, delta) == (-i, -j)
    a = m * delta / (eps + delta)
    b = m * eps / (eps + delta)
    slack = 1e-9 * max(1, m)
    return a - 1 - slack <= i <= a + slack and b - slack <= j <= b + 1 + slack


def _run_witness(P: _Params, out: Path):
    m_max = int(P["m_max"])
    grid = list(P["eps_values"])
    bad = [
        (m, e, d)
        for e in grid
        for d in grid
        for m in range(-m_max, m_max + 1)
        if not split_invariants_hold(m, e, d)
    ]
    p_par, q_par = P.extremal("p"), P.extremal("q")
    eps_t, zeta, zeta_t, ab = lower_bound_params(
        p_par.eps, q_par.eps, p_par.kappa, q_par.kappa, p_par.alpha, q_par.alpha
    )
    ref = _mix(ExtremalParams(p_par.lam, eps_t, zeta, ab, P["reference_trunc_J"]))
    p, q = _mix(p_par), _mix(q_par)
    mins = []
    for lo, hi in P["windows"]:
        r, at = witness_ratio(p, q, ref, lattice_grid(lo, hi, P["subdivisions"]))
        mins.append({"window": [lo, hi], "min_log_ratio": r, "argmin": at})
    spread = max(m["min_log_ratio"] for m in mins) - min(m["min_log_ratio"] for m in mins)
    outputs = {
        "split_violations": bad[:20],
        "n_split_violations": len(bad),
        "lower_bound": {"eps_tilde": eps_t, "zeta": zeta, "zeta_tilde": zeta_t, "alpha_sum": ab},
        "windows": mins,
        "min_log_ratio_spread": spread,
    }
    checks = {"split_invariants": not bad, "ratio_stable": spread < P["stability_tol"]}
    return outputs, checks


def _run_k2(P: _Params, out: Path):
    p_par, q_par = P.extremal("p"), P.extremal("q")
    lam = p_par.lam
    C, D = envelope_constant(p_par), envelope_constant(q_par)
    M = math.exp(log_mgf_closed_form(p_par, lam))
    N = math.exp(log_mgf_closed_form(q_par, lam))
    K2 = theoretical_K2(lam, p_par.eps, q_par.eps, M, N, C, D)
    eps2 = predicted_deficiency([p_par.eps, q_par.eps])
    lo, hi = P["x_range"]
    h = P["h"]
    x = lo + h * np.arange(int(round((hi - lo) / h)) + 1)
    pq = convolve(_mix(p_par), _mix(q_par))
    g = evaluate_log(pq, x) + (lam - eps2) * x
    k = int(np.argmax(g))
    sup = float(np.exp(g[k]))
    outputs = {
        "C": C, "D": D, "M": M, "N": N, "K2": K2, "eps2": eps2,
        "sup_weighted_density": sup, "argsup": float(x[k]), "ratio_to_K2": sup / K2,
    }
    return outputs, {"bound_holds": sup <= K2}


def _run_chebyshev(P: _Params, out: Path):
    par = P.extremal("p")
    mix = _mix(par)
    lo, hi, step = P["x_grid"]
    x = lo + step * np.arange(int(round((hi - lo) / step)) + 1)
    rows, ok = [], True
    for lam in P["lambdas"]:
        chk = chebyshev_check(mix, lam, x)
        slack = np.log(chk.chebyshev_bounds) - np.log(np.maximum(chk.tail_probs, 1e-320))
        rows.append({"lambda": lam, "all_satisfied": chk.all_satisfied, "min_log_slack": float(slack.min())})
        ok = ok and chk.all_satisfied
    return {"results": rows, "x_max": float(x[-1])}, {"inequality_holds": ok}


_RUNNERS: dict[str, Callable[[_Params, Path], tuple[dict, dict]]] = {
    "fig1": _run_fig1,
    "harmonic": _run_harmonic,
    "iid": _run_iid,
    "tightness": _run_tightness,
    "tilt-bounded": _run_tilt_bounded,
    "cf-integrability": _run_cf_integrability,
    "plancherel": _run_plancherel,
    "witness": _run_witness,
    "k2-bound": _run_k2,
    "chebyshev": _run_chebyshev,
}


def run_scenario(config: ScenarioConfig, write: bool = True) -> ScenarioReport:
    """Run one scenario; writes ``<output_dir>/<scenario>.json`` atomically."""
    out = Path(config.output_dir)
    t0 = time.perf_counter()
    outputs, checks = _RUNNERS[config.scenario](_Params(config.params, config.scenario), out)
    checks = {k: bool(v) for k, v in checks.items()}
    report = ScenarioReport(
        scenario=config.scenario,
        paper_claim=PAPER_CLAIMS[config.scenario],
        inputs_echo=config.to_dict(),
        outputs=outputs,
        passed=bool(checks) and all(checks.values()),
        runtime_ms=int(round(1000 * (time.perf_counter() - t0))),
        checks=checks,
    )
    if write:
        write_atomic(out / f"{config.scenario}.json", report.to_json())
    return report


@dataclass
class RunSummary:
    rows: list[dict]

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.rows)

    def table(self) -> str:
        lines = [f"{'scenario':<18} {'result':<7} {'ms':>8}  note"]
        for r in self.rows:
            res = "PASS" if r["pass"] else ("ERROR" if r.get("error") else "FAIL")
            note = r.get("error") or ", ".join(k for k, v in r.get("checks", {}).items() if not v)
            lines.append(f"{r['scenario']:<18} {res:<7} {r['runtime_ms']:>8}  {note}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"pass": self.passed, "scenarios": self.rows}


def run_all(manifest: list, out_dir: str | os.PathLike | None = None) -> RunSummary:
    """Run every scenario independently; one failure never stops the rest."""
    rows = []
    for entry in manifest:
        t0 = time.perf_counter()
        name = entry.scenario if isinstance(entry, ScenarioConfig) else str(entry.get("scenario"))
        try:
            cfg = entry if isinstance(entry, ScenarioConfig) else ScenarioConfig.from_dict(
                entry, None if out_dir is None else str(out_dir)
            )
            rep = run_scenario(cfg)
            rows.append({"scenario": name, "pass": rep.passed, "checks": rep.checks, "runtime_ms": rep.runtime_ms})
        except Exception as exc:  # isolation: record and move on
            rows.append({
                "scenario": name,
                "pass": False,
                "error": f"{type(exc).__name__}: {exc}",
                "runtime_ms": int(round(1000 * (time.perf_counter() - t0))),
            })
    summary = RunSummary(rows)
    if out_dir is not None:
        write_atomic(Path(out_dir) / "summary.json", dumps(summary.to_dict()))
    return summary


def _ext(eps, J=None, lam=0.55, kappa=0.9, alpha=0.6) -> dict:
    return ExtremalParams(lam, eps, kappa, alpha, J).to_dict()


DEFAULT_PARAMS: dict[str, dict[str, Any]] = {
    "fig1": {
        "extremal": _ext(0.5),
        "x_lo": 0.0, "x_hi": 7.5, "h": 1e-4,
        "maxima_targets": [1, 2, 3, 4, 5, 6, 7], "maxima_tol": 0.05,
        "j_range": [10, 40], "slope_target": -0.05, "slope_tol": 0.01,
    },
    "harmonic": {
        "p": _ext(0.5, 70), "q": _ext(0.3, 70),
        "poly_alpha": 1.2, "j_lo": 40, "j_hi": 80, "rel_tol": 0.05,
    },
    "iid": {
        "base": _ext(0.5),
        "cases": [
            {"n": 2, "trunc_J": 70, "poly_alpha": 1.2, "j_lo": 40, "j_hi": 80},
            {"n": 3, "trunc_J": 60, "poly_alpha": 1.8, "j_lo": 60, "j_hi": 120},
        ],
        "rel_tol": 0.05,
    },
    "tightness": {
        "p": _ext(0.5, 70), "n": 2, "window": [0.0, 60.0], "margin": 0.1,
        "threshold": 0.01, "n_points": 1024, "poly_alpha": 0.0,
        "critical_search": {"mu_lo": 0.0, "mu_hi": 0.5, "tol": 1e-3, "poly_alpha": 1.2},
    },
    "tilt-bounded": {
        "p": _ext(0.5), "t": 0.3, "n": 2, "expected_n_t": 2,
        "window": [-10.0, 60.0], "h": 0.01, "refine_tol": 0.01,
    },
    "cf-integrability": {
        "p": _ext(0.5), "t": 0.3, "S": 1e4, "n_quad": 2**16, "poly_alpha": 0.6,
        "fit_margin": 0.1, "n_values": [1, 2, 3],
        "untilted_target": -1.1, "tilted_target": -0.5, "exponent_rtol": 0.1,
    },
    "plancherel": {
        "cases": [
            {"name": "standard_normal", "kind": "gaussian", "mean": 0.0, "std": 1.0,
             "S": 50.0, "n_quad": 4096, "poly_alpha": 0.0, "rel_tol": 1e-8, "expect_sqrt_pi": True},
            {"name": "gaussian_tailed_mixture", "kind": "extremal", "extremal": _ext(0.5, 6), "t": 0.0,
             "S": 400.0, "n_quad": 2**15, "poly_alpha": 0.0, "rel_tol": 1e-6},
            {"name": "power_law_untilted", "kind": "extremal", "extremal": _ext(0.5), "t": 0.0,
             "S": 1e4, "n_quad": 2**18, "poly_alpha": 0.6, "rel_tol": 1e-3},
            {"name": "power_law_tilted", "kind": "extremal", "extremal": _ext(0.5), "t": 0.3,
             "S": 1e4, "n_quad": 2**18, "poly_alpha": 0.6, "rel_tol": 1e-3},
        ],
    },
    "witness": {
        "eps_values": [0.2, 0.3, 0.5], "m_max": 200,
        "p": _ext(0.5), "q": _ext(0.5), "reference_trunc_J": 90,
        "windows": [[0.0, 40.0], [0.0, 60.0]], "subdivisions": 8, "stability_tol": 0.5,
    },
    "k2-bound": {
        "p": _ext(0.5), "q": _ext(0.3), "x_range": [-40.0, 60.0], "h": 0.05,
    },
    "chebyshev": {
        "p": _ext(0.5), "lambdas": [0.1, 0.2, 0.3, 0.4, 0.55], "x_grid": [0.0, 40.0, 0.25],
    },
}


def default_manifest(output_dir: str = "reports") -> list[dict]:
    return [
        {"scenario": name, "params": DEFAULT_PARAMS[name], "output_dir": output_dir, "seedless": True}
        for name in SCENARIOS
    ]
