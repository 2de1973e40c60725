"""Command-line interface: bounds, sweeps, phase analysis, verification.

Subcommands

* ``bound``   evaluate a bound family, optionally sweeping one variable
* ``phase``   saddle exponent, estimator curve, magnetization roots, diagram
* ``verify``  Monte Carlo / exact-sum checks and the certification battery
* ``emit-plot``  write a gnuplot script for a CSV produced by this tool

Output is CSV on stdout (or ``--out``): header first, then the effective
configuration echoed as ``#`` comment lines, then data rows.  ``+inf`` is
rendered as the literal ``inf``.  Sweeps use ``start:stop:steps`` syntax,
log-spaced with ``--log``.  A ``--config`` file of ``key = value`` lines
fills in flags that were not given explicitly; explicit flags win.

Exit codes: 0 success, 2 usage error, 3 infeasible domain, 4 verification
failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bayes_bounds, delay_design, nonbayes_bounds, phase_transition, verify
from .core import DomainError, GridDensity, RiskBoundsError, uniform_density

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _parse_sweep(text: str, log: bool = False) -> np.ndarray:
    try:
        start_s, stop_s, steps_s = text.split(":")
        start, stop, steps = float(start_s), float(stop_s), int(steps_s)
    except ValueError as exc:
        raise DomainError(f"bad sweep spec {text!r}, expected start:stop:steps") from exc
    if steps < 2:
        raise DomainError("sweep needs at least 2 steps")
    if log:
        if start <= 0 or stop <= 0:
            raise DomainError("log sweep needs positive endpoints")
        return np.exp(np.linspace(math.log(start), math.log(stop), steps))
    return np.linspace(start, stop, steps)


def _alpha_values(args) -> np.ndarray:
    if getattr(args, "alpha_sweep", None):
        return _parse_sweep(args.alpha_sweep, args.log)
    if getattr(args, "alpha", None) is not None:
        return np.array([args.alpha])
    raise DomainError("supply --alpha or --alpha-sweep")


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"bad config line {raw.rstrip()!r}, expected key = value")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _merge_config(args: argparse.Namespace, hard_defaults: dict) -> None:
    """Fill argparse Nones from the config file; explicit flags keep priority."""
    if not getattr(args, "config", None):
        return
    file_values = _load_config(args.config)
    for key, text in file_values.items():
        if not hasattr(args, key) or getattr(args, key) is not None:
            continue
        default = hard_defaults.get(key)
        if isinstance(default, str):
            value = text
        elif isinstance(default, bool) or text in ("true", "false"):
            value = text == "true"
        else:
            try:
                value = int(text)
            except ValueError:
                try:
                    value = float(text)
                except ValueError:
                    value = text
        setattr(args, key, value)


def _effective_config(args: argparse.Namespace) -> list[str]:
    skip = {"func", "out", "config"}
    items = sorted(
        (k, v) for k, v in vars(args).items()
        if k not in skip and v is not None and not callable(v)
    )
    return [f"# {k} = {_fmt(v)}" for k, v in items]


def _emit(args, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines.extend(_effective_config(args))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    return max(1, int(os.environ.get("RISKBOUNDS_THREADS", "1")))


def _map_indexed(fn, values, n_threads: int) -> list:
    if n_threads <= 1 or len(values) < 4:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=n_threads) as pool:
        return list(pool.map(fn, values))


def _load_prior(args) -> GridDensity:
    text = args.prior
    if text.startswith("gaussian:"):
        parts = text.split(":")[1].split(",")
        sigma2 = float(parts[0])
        span = float(parts[1]) if len(parts) > 1 else 10.0
        n = int(parts[2]) if len(parts) > 2 else 8193
        half = span * math.sqrt(sigma2)
        theta = np.linspace(-half, half, n)
        dens = np.exp(-(theta ** 2) / (2.0 * sigma2))
        return GridDensity(theta, dens / np.trapezoid(dens, theta))
    if text.startswith("uniform:"):
        parts = text.split(":")[1].split(",")
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2]) if len(parts) > 2 else 4097
        return uniform_density(lo, hi, n)
    data = np.loadtxt(text, delimiter=",")
    if data.ndim != 2 or data.shape[1] != 2:
        raise DomainError("prior file must have two columns: theta, density")
    dens = GridDensity(data[:, 0], data[:, 1])
    return dens.normalized()


# ---------------------------------------------------------------- bound ---

def _cmd_bound(args) -> int:
    kind = args.family
    n_threads = _threads(args)

    if kind == "bayes-linear":
        model = bayes_bounds.LinearGaussianModel(args.sigma2, args.es, args.n0)
        header = ["alpha", "bound", "estimator_coef", "alpha_c", "status"]
        def row(a):
            bv = bayes_bounds.linear_gaussian_min_lambda(model, float(a))
            return [float(a), bv.value, bv.argmax["estimator_coef"], bv.argmax["alpha_c"], bv.status]
        rows = _map_indexed(row, _alpha_values(args), n_threads)

    elif kind == "bayes-phase":
        header = ["alpha", "bound", "sigma2_q", "alpha_c", "status"]
        def row(a):
            bv = bayes_bounds.phase_bound_large_sigma(float(a), args.sigma2, args.ex / args.n0)
            return [float(a), bv.value, bv.argmax.get("sigma2_q", math.nan),
                    bv.argmax["alpha_c"], bv.status]
        rows = _map_indexed(row, _alpha_values(args), n_threads)

    elif kind == "bayes-tilted":
        prior = _load_prior(args)
        if args.alpha_c:
            header = ["alpha_c_upper"]
            rows = [[bayes_bounds.alpha_c_upper(prior)]]
        else:
            if args.beta is None:
                raise DomainError("supply --beta for bayes-tilted")
            header = ["alpha", "beta", "bound", "status"]
            def row(a):
                bv = bayes_bounds.tilted_prior_bound(
                    prior, float(a), args.beta, args.es_over_n0, args.corr)
                return [float(a), args.beta, bv.value, bv.status]
            rows = _map_indexed(row, _alpha_values(args), n_threads)

    elif kind == "bayes-delay":
        prior = _load_prior(args)
        header = ["alpha", "bound", "nu", "beta", "status"]
        def row(a):
            if args.nu is not None and args.beta is not None:
                bv = delay_design.nu_bound(prior, float(a), beta=args.beta, nu=args.nu,
                                           omega0=args.omega0, ex=args.ex, n0=args.n0)
            elif args.nu is not None:
                bv = delay_design.nu_bound(prior, float(a), nu=args.nu,
                                           omega0=args.omega0, ex=args.ex, n0=args.n0)
            else:
                bv = delay_design.nu_bound(prior, float(a), omega0=args.omega0,
                                           ex=args.ex, n0=args.n0, optimize=True)
            return [float(a), bv.value, bv.argmax["nu"], bv.argmax["beta"], bv.status]
        rows = _map_indexed(row, _alpha_values(args), n_threads)

    elif kind == "bayes-ww":
        header = ["alpha", "gamma", "tau", "bound", "tau_tilde", "nontrivial", "status"]
        def row(a):
            bv = bayes_bounds.ww_rect_delay_bound(float(a), args.gamma, args.tau)
            return [float(a), args.gamma, args.tau, bv.value,
                    bv.argmax.get("tau_tilde", math.nan),
                    bv.diagnostics.get("nontrivial", False), bv.status]
        rows = _map_indexed(row, _alpha_values(args), n_threads)

    elif kind == "bayes-lpcb":
        snrs = [float(s) for s in str(args.snr).split(",")]
        header = ["alpha", "snr", "bound", "beta_star", "status"]
        alphas = _alpha_values(args)
        rows = []
        for snr in snrs:
            def row(a, snr=snr):
                bv = bayes_bounds.lpcb_bound(
                    float(a), args.beta, sigma2=args.sigma2, ex=snr * args.n0, n0=args.n0,
                    sigma2_q=args.sigma2q, es=args.es, q_const=args.q_const,
                    t_horizon=args.t_horizon)
                return [float(a), snr, bv.value, bv.argmax.get("beta", math.nan), bv.status]
            rows.extend(_map_indexed(row, alphas, n_threads))

    elif kind == "nonbayes-linear":
        header = ["alpha", "bound", "ml_lambda", "alpha_c", "status"]
        def row(a):
            bv = nonbayes_bounds.scalar_linear_bound(float(a), args.es, args.n0)
            ml = nonbayes_bounds.scalar_ml_lambda(float(a), args.es, args.n0)
            return [float(a), bv.value, ml, bv.argmax["alpha_c"], bv.status]
        rows = _map_indexed(row, _alpha_values(args), n_threads)

    elif kind == "nonbayes-vector":
        gamma = np.loadtxt(args.gamma_file, delimiter=",", ndmin=2)
        model = nonbayes_bounds.VectorLinearModel(gamma, args.es, args.n0)
        header = ["scale", "quad_form", "bound", "ml_lambda", "status"]
        vec = np.array([float(v) for v in args.alpha_vec.split(",")])
        if args.scale_sweep:
            scales = _parse_sweep(args.scale_sweep, args.log)
        else:
            scales = np.array([1.0])
        def row(t):
            a = float(t) * vec
            bv = nonbayes_bounds.vector_linear_bound(model, a)
            ml = nonbayes_bounds.vector_ml_lambda(model, a)
            return [float(t), bv.diagnostics["quad_form"], bv.value, ml, bv.status]
        rows = _map_indexed(row, scales, n_threads)

    elif kind == "nonbayes-nonlinear":
        if args.range == "unbounded":
            profile = nonbayes_bounds.CorrelationProfile(
                ex=args.ex, theta_range=(-math.inf, math.inf), unbounded=True,
                rho_fn=lambda t, tt: math.exp(-args.rho_gauss * (t - tt) ** 2))
        else:
            lo, hi = (float(v) for v in args.range.split(","))
            profile = nonbayes_bounds.CorrelationProfile(
                ex=args.ex, theta_range=(lo, hi),
                rho_fn=lambda t, tt: math.exp(-args.rho_gauss * (t - tt) ** 2))
        header = ["alpha", "bound", "theta_tilde", "status"]
        def row(a):
            bv = nonbayes_bounds.nonlinear_bound(profile, float(a), args.theta, args.lnb, args.n0)
            return [float(a), bv.value, bv.argmax.get("theta_tilde", math.nan), bv.status]
        rows = _map_indexed(row, _alpha_values(args), n_threads)

    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown bound family {kind!r}")

    _emit(args, header, rows)
    return EXIT_OK


# ---------------------------------------------------------------- phase ---

def _cmd_phase(args) -> int:
    sub = args.analysis
    if sub == "exponent":
        header = ["a", "exponent"]
        if args.a_sweep:
            a_vals = _parse_sweep(args.a_sweep, args.log)
        else:
            a_vals = np.array([args.a])

        def row(a):
            problem = phase_transition.ExponentProblem(
                float(a), args.q_steps, args.t_steps, args.theta_steps)
            return [float(a), phase_transition.error_exponent(problem)]

        rows = _map_indexed(row, a_vals, _threads(args))
    elif sub == "estimator":
        header = ["q", "theta_hat"]
        _, q_grid, curve = phase_transition.bernoulli_bayes_exponent(
            args.a, n_q=args.q_steps, n_t=args.t_steps, n_theta=args.theta_steps)
        rows = [[float(q), float(t)] for q, t in zip(q_grid, curve)]
    elif sub == "roots":
        header = ["m", "stable", "dominant"]
        roots = phase_transition.magnetization_roots(
            phase_transition.CurieWeissParams(args.mu, args.a))
        rows = [[r.m, r.stable, r.dominant] for r in roots]
    elif sub == "diagram":
        header = ["mu", "a", "label", "dominant_m"]
        mus = _parse_sweep(args.mu_sweep)
        a_vals = _parse_sweep(args.a_sweep)
        rows = []
        for mu in mus:
            for a in a_vals:
                lab = phase_transition.classify_phase(float(mu), float(a))
                name = "multicritical" if lab.multicritical else lab.phase.value
                rows.append([float(mu), float(a), name, lab.dominant_m])
    else:  # pragma: no cover
        raise DomainError(f"unknown phase analysis {sub!r}")
    _emit(args, header, rows)
    return EXIT_OK


# --------------------------------------------------------------- verify ---

def _certify_rows(samples: int, seed: int) -> tuple[list[list], bool]:
    """Bound-versus-truth battery; returns (rows, any_violation)."""
    rows: list[list] = []
    violated = False

    def record(check: str, alpha: float, bound: float, truth: float, slack: float) -> None:
        nonlocal violated
        margin = truth + slack - bound
        ok = bound <= truth + slack or (math.isinf(bound) and math.isinf(truth))
        violated |= not ok
        rows.append([check, alpha, bound, truth, margin, "ok" if ok else "violation"])

    sigma2, es, n0 = 0.5, 1.0, 1.0
    model = bayes_bounds.LinearGaussianModel(sigma2, es, n0)
    ac = model.alpha_c()
    for frac in (0.1, 0.3, 0.5, 0.7):
        alpha = frac * ac
        exact = bayes_bounds.linear_gaussian_min_lambda(model, alpha).value
        jensen = bayes_bounds.generic_bayes_bound(alpha, model.mmse(), 0.0).value
        record("bayes-generic-vs-exact", alpha, jensen, exact, 0.0)
        record("bayes-exact-self", alpha, exact, exact, 1e-12)

    prior_only = bayes_bounds.LinearGaussianModel(sigma2, 0.0, n0)
    for frac in (0.3, 0.5, 0.7):
        alpha = frac / (2.0 * sigma2)
        exact = bayes_bounds.linear_gaussian_min_lambda(prior_only, alpha).value
        run = verify.MCRun("phase-trivial", "zero", alpha=alpha, n_samples=samples,
                           master_seed=seed, sigma2=sigma2)
        mc = verify.mc_lambda(run)
        lp = bayes_bounds.lpcb_bound(alpha, sigma2=sigma2, ex=0.05 * n0, n0=n0)
        record("bayes-lpcb-vs-mc", alpha, lp.value, mc.lambda_hat, 3.0 * mc.se)
        ph = bayes_bounds.phase_bound_large_sigma(alpha, sigma2, 0.05)
        record("bayes-phase-vs-exact", alpha, ph.value, exact, 0.0)

    for frac in (0.2, 0.5, 0.79):
        alpha = frac * es / n0
        run = verify.MCRun("nb-ml", "ml", alpha=alpha, n_samples=samples,
                           master_seed=seed + 1, es=es, n0=n0)
        mc = verify.mc_lambda(run)
        bd = nonbayes_bounds.scalar_linear_bound(alpha, es, n0)
        record("nonbayes-scalar-vs-mc", alpha, bd.value, mc.lambda_hat, 3.0 * mc.se)
        ml = nonbayes_bounds.scalar_ml_lambda(alpha, es, n0)
        record("nonbayes-scalar-vs-ml", alpha, bd.value, ml, 0.0)

    gamma = np.array([[1.0, 0.35], [0.35, 1.0]])
    vec_model = nonbayes_bounds.VectorLinearModel(gamma, es, n0)
    for t in (0.2, 0.5, 0.8):
        a_vec = t * np.array([0.7, 0.4])
        bd = nonbayes_bounds.vector_linear_bound(vec_model, a_vec)
        ml = nonbayes_bounds.vector_ml_lambda(vec_model, a_vec)
        record("nonbayes-vector-vs-ml", t, bd.value, ml, 0.0)

    n_bern, a_bern, theta_bern = 200, 1.0, 0.3
    lam = verify.bernoulli_exact_lambda(
        verify.BernoulliExact(n=n_bern, a=a_bern, theta=theta_bern, estimator=lambda q: q))
    qs = np.linspace(1e-9, 1 - 1e-9, 100001)
    div = qs * np.log(qs / theta_bern) + (1 - qs) * np.log((1 - qs) / (1 - theta_bern))
    exponent = float(np.max(a_bern * (qs - theta_bern) ** 2 - div))
    record("bernoulli-exponent-vs-exact", a_bern,
           exponent - math.log(n_bern + 1) / n_bern, lam / n_bern, 0.0)

    return rows, violated


def _cmd_verify(args) -> int:
    sub = args.check
    if sub == "mc":
        key = (args.model, args.estimator)
        if key not in verify.MODEL_THRESHOLDS:
            raise DomainError(f"unsupported model/estimator pair {key!r}")
        run0 = verify.MCRun(args.model, args.estimator, alpha=1e-9, n_samples=1000,
                            master_seed=0, sigma2=args.sigma2, es=args.es, n0=args.n0)
        threshold = verify.MODEL_THRESHOLDS[key](run0)
        alpha = args.alpha if args.alpha is not None else args.alpha_frac * threshold
        run = verify.MCRun(args.model, args.estimator, alpha=alpha,
                           n_samples=args.samples, master_seed=args.seed,
                           sigma2=args.sigma2, es=args.es, n0=args.n0)
        res = verify.mc_lambda(run, workers=_threads(args))
        header = ["model", "estimator", "alpha", "n_samples", "seed",
                  "lambda_hat", "se", "max_share"]
        rows = [[args.model, args.estimator, alpha, args.samples, args.seed,
                 res.lambda_hat, res.se, res.max_share]]
        _emit(args, header, rows)
        return EXIT_OK
    if sub == "bernoulli-exact":
        est_name = "optimal" if args.estimator == "optimal" else "plugin"
        if est_name == "optimal":
            _, q_grid, curve = phase_transition.bernoulli_bayes_exponent(args.a)
            est = lambda q: float(np.interp(q, q_grid, curve))
        else:
            est = lambda q: q
        lam = verify.bernoulli_exact_lambda(
            verify.BernoulliExact(n=args.n, a=args.a, theta=args.theta, estimator=est))
        header = ["n", "a", "theta", "estimator", "lambda_n", "lambda_per_n"]
        rows = [[args.n, args.a, args.theta, est_name, lam, lam / args.n]]
        _emit(args, header, rows)
        return EXIT_OK
    if sub == "certify":
        rows, violated = _certify_rows(args.samples, args.seed)
        header = ["check", "alpha", "bound", "truth", "margin", "status"]
        _emit(args, header, rows)
        summary = "FAIL: bound violation detected" if violated else "PASS: no bound violations"
        print(summary, file=sys.stderr)
        return EXIT_VERIFY if violated else EXIT_OK
    raise DomainError(f"unknown verify subcommand {sub!r}")  # pragma: no cover


# ------------------------------------------------------------- emit-plot ---

_PLOT_SCHEMAS = {
    ("alpha", "snr", "bound", "beta_star", "status"): "lpcb",
    ("a", "exponent"): "exponent",
    ("q", "theta_hat"): "estimator",
    ("mu", "a", "label", "dominant_m"): "diagram",
}


def _cmd_emit_plot(args) -> int:
    with open(args.csv, "r", encoding="utf-8") as fh:
        header = tuple(fh.readline().strip().split(","))
        body = [line for line in fh if line.strip() and not line.startswith("#")]
    kind = _PLOT_SCHEMAS.get(header)
    if kind is None:
        raise DomainError(f"unknown CSV schema {header!r}")
    lines = [
        "# gnuplot script; run: gnuplot -persist <this file>",
        "set datafile separator ','",
        "set datafile commentschars '#'",
        f"csv = '{args.csv}'",
        "set key left top",
    ]
    if kind == "lpcb":
        snrs = sorted({line.split(",")[1] for line in body})
        colors = ["red", "blue", "green", "orange", "purple"]
        lines += [
            "set xlabel 'alpha'", "set ylabel 'bound [nats]'",
            f"set yrange [0:{args.clip}]",
            "plot " + ", \\\n     ".join(
                f"csv skip 1 using 1:(stringcolumn(2) eq '{snr}' ? $3 : NaN) "
                f"with lines lc rgb '{colors[i % len(colors)]}' title 'SNR {snr}'"
                for i, snr in enumerate(snrs)),
        ]
    elif kind == "exponent":
        lines += ["set xlabel 'a'", "set ylabel 'E(a)'",
                  "plot csv skip 1 using 1:2 with lines title 'exponent'"]
    elif kind == "estimator":
        lines += ["set xlabel 'q'", "set ylabel 'estimate'",
                  "plot csv skip 1 using 1:2 with lines title 'estimator'"]
    else:
        lines += ["set xlabel 'mu'", "set ylabel 'a'",
                  "plot csv skip 1 using 1:($4 > 0 ? $2 : NaN) with points pt 7 title 'positive m', \\",
                  "     csv skip 1 using 1:($4 < 0 ? $2 : NaN) with points pt 5 title 'negative m'"]
    text = "\n".join(lines) + "\n"
    with open(args.out_script, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.out_script}", file=sys.stderr)
    return EXIT_OK


# ----------------------------------------------------------------- main ---

# Hard defaults live outside argparse so a --config file can fill any value
# a flag did not set explicitly; explicit flags always win.
_DEFAULTS = {
    "bound": dict(
        sigma2=1.0, es=0.0, ex=1.0, n0=1.0, snr="0.1", q_const=0.0,
        t_horizon=1.0, gamma=1.0, tau=1.0, prior="gaussian:1.0",
        es_over_n0=0.0, corr=0.0, omega0=2 * math.pi, alpha_vec="1.0",
        theta=0.0, lnb=0.5, rho_gauss=4.0, range="0,1",
    ),
    "phase": dict(a=1.0, mu=0.0, q_steps=201, t_steps=401, theta_steps=401),
    "verify": dict(
        model="lin-gauss", estimator="cond-mean", alpha_frac=0.5, a=1.0,
        samples=100_000, seed=0, sigma2=1.0, es=1.0, n0=1.0, n=200, theta=0.3,
        suite="default",
    ),
    "emit-plot": dict(clip=10.0),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskbounds",
        description="Bounds on exponential moments of quadratic estimation error",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output CSV path (default stdout)")
        p.add_argument("--config", help="key = value config file; flags win")
        p.add_argument("--threads", type=int, help="worker cap for sweeps")
        p.add_argument("--log", action="store_true", default=None,
                       help="log-spaced sweeps")

    pb = sub.add_parser(
        "bound", help="evaluate a lower bound",
        epilog="columns: bayes-linear/bayes-phase -> alpha,bound,...,alpha_c,"
               "status; bayes-tilted -> alpha,beta,bound,status; bayes-delay ->"
               " alpha,bound,nu,beta,status; bayes-ww -> alpha,gamma,tau,bound,"
               "tau_tilde,nontrivial,status; bayes-lpcb -> alpha,snr,bound,"
               "beta_star,status; nonbayes-linear -> alpha,bound,ml_lambda,"
               "alpha_c,status; nonbayes-vector -> scale,quad_form,bound,"
               "ml_lambda,status; nonbayes-nonlinear -> alpha,bound,theta_tilde,"
               "status")
    pb.add_argument("family", choices=[
        "bayes-linear", "bayes-phase", "bayes-tilted", "bayes-delay", "bayes-ww",
        "bayes-lpcb", "nonbayes-linear", "nonbayes-vector", "nonbayes-nonlinear"])
    pb.add_argument("--alpha", type=float)
    pb.add_argument("--alpha-sweep")
    pb.add_argument("--sigma2", type=float)
    pb.add_argument("--sigma2q", type=float)
    pb.add_argument("--es", type=float)
    pb.add_argument("--ex", type=float)
    pb.add_argument("--n0", type=float)
    pb.add_argument("--snr", help="Ex/N0; comma list sweeps curves")
    pb.add_argument("--beta", type=float)
    pb.add_argument("--q-const", type=float)
    pb.add_argument("--t-horizon", type=float)
    pb.add_argument("--gamma", type=float)
    pb.add_argument("--tau", type=float)
    pb.add_argument("--prior", help="gaussian:VAR[,SPAN,N] | uniform:LO,HI[,N] | CSV path")
    pb.add_argument("--es-over-n0", type=float)
    pb.add_argument("--corr", type=float)
    pb.add_argument("--alpha-c", action="store_true", default=None,
                    help="report the tilted-family critical-factor upper bound")
    pb.add_argument("--nu", type=float)
    pb.add_argument("--omega0", type=float)
    pb.add_argument("--gamma-file", help="dense correlation matrix as CSV")
    pb.add_argument("--alpha-vec")
    pb.add_argument("--scale-sweep")
    pb.add_argument("--theta", type=float)
    pb.add_argument("--lnb", type=float)
    pb.add_argument("--rho-gauss", type=float)
    pb.add_argument("--range", help="theta range lo,hi or 'unbounded'")
    common(pb)
    pb.set_defaults(func=_cmd_bound)

    pp = sub.add_parser(
        "phase", help="saddle exponent and spin-model analysis",
        epilog="columns: exponent -> a,exponent; estimator -> q,theta_hat; "
               "roots -> m,stable,dominant; diagram -> mu,a,label,dominant_m")
    pp.add_argument("analysis", choices=["exponent", "estimator", "roots", "diagram"])
    pp.add_argument("--a", type=float)
    pp.add_argument("--a-sweep")
    pp.add_argument("--mu", type=float)
    pp.add_argument("--mu-sweep")
    pp.add_argument("--q-steps", type=int)
    pp.add_argument("--t-steps", type=int)
    pp.add_argument("--theta-steps", type=int)
    common(pp)
    pp.set_defaults(func=_cmd_phase)

    pv = sub.add_parser(
        "verify", help="Monte Carlo and exact verification",
        epilog="columns: mc -> model,estimator,alpha,n_samples,seed,lambda_hat,"
               "se,max_share; bernoulli-exact -> n,a,theta,estimator,lambda_n,"
               "lambda_per_n; certify -> check,alpha,bound,truth,margin,status")
    pv.add_argument("check", choices=["mc", "bernoulli-exact", "certify"])
    pv.add_argument("--suite", choices=["default"],
                    help="certification suite to run (only 'default' exists)")
    pv.add_argument("--model")
    pv.add_argument("--estimator")
    pv.add_argument("--a", type=float, help="risk scale for the exact binomial sum")
    pv.add_argument("--alpha", type=float)
    pv.add_argument("--alpha-frac", type=float,
                    help="alpha as a fraction of the divergence threshold")
    pv.add_argument("--samples", type=int)
    pv.add_argument("--seed", type=int)
    pv.add_argument("--sigma2", type=float)
    pv.add_argument("--es", type=float)
    pv.add_argument("--n0", type=float)
    pv.add_argument("--n", type=int)
    pv.add_argument("--theta", type=float)
    common(pv)
    pv.set_defaults(func=_cmd_verify)

    pe = sub.add_parser("emit-plot", help="write a gnuplot script for a CSV")
    pe.add_argument("--csv", required=True)
    pe.add_argument("--out-script", required=True)
    pe.add_argument("--clip", type=float,
                    help="ceiling for divergent values in the plot")
    common(pe)
    pe.set_defaults(func=_cmd_emit_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    hard = dict(_DEFAULTS.get(args.command, {}))
    try:
        _merge_config(args, hard)
        for key, value in hard.items():
            if getattr(args, key, None) is None:
                setattr(args, key, value)
        if getattr(args, "log", None) is None:
            args.log = False
        if getattr(args, "alpha_c", None) is None and args.command == "bound":
            args.alpha_c = False
        return args.func(args)
    except RiskBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
