"""Command line entry point.

Exit codes: 0 success, 1 usage error (bad flags, malformed step sets or
weights), 2 when a verification report fails.
"""
from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from .intset import IntSet
from .walks import NStepSet, CLASSES, parse_walk, count_by_dp, classify_walk
from .series import RationalSeries, frac_str

DYCK_STEPS = "{-1};{1};{-1,1}"


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def default_order() -> int:
    env = os.environ.get("NWALK_ORDER")
    if env:
        try:
            return int(env)
        except ValueError:
            raise click.UsageError(f"NWALK_ORDER must be an integer, got {env!r}")
    return 64


def _num(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else frac_str(c)
    return c


def _emit(data, fmt, output, text=None, csv=None):
    if fmt == "json":
        out = json.dumps(data)
    elif fmt == "csv":
        out = csv if csv is not None else _to_csv(data)
    else:
        out = text if text is not None else _to_text(data)
    out = out.rstrip("\n") + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(out)
    else:
        click.echo(out, nl=False)


def _to_csv(data):
    if isinstance(data, list):
        return "n,value\n" + "".join(f"{i},{v}\n" for i, v in enumerate(data))
    if isinstance(data, dict):
        return "key,value\n" + "".join(f"{k},{json.dumps(v)}\n" for k, v in data.items())
    return str(data)


def _to_text(data):
    if isinstance(data, list):
        return " ".join(str(v) for v in data)
    if isinstance(data, dict):
        return "\n".join(f"{k}: {v if not isinstance(v, (dict, list)) else json.dumps(v)}"
                         for k, v in data.items())
    return str(data)


def _step_set(steps, weights):
    try:
        return NStepSet.parse(steps, weights)
    except ValueError as e:
        raise click.UsageError(str(e))


def fmt_options(f):
    f = click.option("--output", "--out", "-o", "output", type=click.Path(dir_okay=False), default=None,
                     help="Write to a file instead of stdout.")(f)
    f = click.option("--json", "as_json", is_flag=True, help="Shortcut for --format json.")(f)
    f = click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
                     default="text", show_default=True)(f)
    return f


def _fmt(fmt, as_json):
    return "json" if as_json else fmt


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Nondeterministic lattice walks: counting, series, simulation."""


@cli.command()
@click.option("--steps", default=DYCK_STEPS, show_default=True, help="Semicolon-separated sets.")
@click.option("--weights", default=None, help="Comma-separated rationals, one per step.")
@click.option("--class", "cls", type=click.Choice(CLASSES), default="walk", show_default=True)
@click.option("-n", "n_max", type=click.IntRange(0), required=True, help="Largest length.")
@click.option("--mode", type=click.Choice(["full", "typed"]), default="full", show_default=True)
@fmt_options
def count(steps, weights, cls, n_max, mode, fmt, as_json, output):
    """Weighted counts of walks of lengths 0..n."""
    S = _step_set(steps, weights)
    vals = [_num(c) for c in count_by_dp(S, n_max, cls, state_mode=mode)]
    _emit(vals, _fmt(fmt, as_json), output)


@cli.command()
@click.option("--steps", default=DYCK_STEPS, show_default=True)
@click.option("--weights", default=None)
@click.option("--class", "cls", type=click.Choice(CLASSES), default="walk", show_default=True)
@click.option("--order", type=click.IntRange(1), default=None, help="Truncation order (default 64).")
@fmt_options
def series(steps, weights, cls, order, fmt, as_json, output):
    """Generating function of a class, truncated at t^order."""
    S = _step_set(steps, weights)
    order = order or default_order()
    f = RationalSeries(count_by_dp(S, order - 1, cls, state_mode="typed"), 0, order)
    _emit(f.to_json(), _fmt(fmt, as_json), output, text=str(f))


@cli.command()
@click.option("--walk", "walk_text", required=True, help="e.g. '{2};{-1,1};{-2,0}'")
@fmt_options
def classify(walk_text, fmt, as_json, output):
    """Bridge / meander / excursion membership of one walk."""
    try:
        walk = parse_walk(walk_text)
    except ValueError as e:
        raise click.UsageError(str(e))
    c = classify_walk(walk)
    data = {"bridge": c.is_bridge, "meander": c.is_meander, "excursion": c.is_excursion}
    text = " ".join(f"{k}={str(v).lower()}" for k, v in data.items())
    _emit(data, _fmt(fmt, as_json), output, text=text)


@cli.command()
@click.option("--steps", default=DYCK_STEPS, show_default=True)
@click.option("--weights", required=True, help="Probability weights, one per step.")
@click.option("-n", "length", type=click.IntRange(0), required=True)
@click.option("--runs", type=click.IntRange(1), default=100000, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=0, show_default=True)
@click.option("--stat", type=click.Choice(["class", "returns", "final_max"]), default="class",
              show_default=True)
@click.option("--class", "cls", type=click.Choice(CLASSES), default="excursion", show_default=True)
@click.option("--min-accepted", type=click.IntRange(1), default=None,
              help="Stop once this many excursions were seen (runs is then a budget).")
@fmt_options
def simulate(steps, weights, length, runs, seed, stat, cls, min_accepted, fmt, as_json, output):
    """Monte Carlo estimates and excursion-conditioned histograms."""
    from .montecarlo import SimConfig, estimate_class_probability, statistic_histograms
    S = _step_set(steps, weights)
    try:
        cfg = SimConfig(S, length, runs, seed)
    except ValueError as e:
        raise click.UsageError(str(e))
    fmt = _fmt(fmt, as_json)
    if stat == "class":
        p, se = estimate_class_probability(cfg, cls)
        _emit({"class": cls, "estimate": p, "stderr": se, "runs": runs}, fmt, output)
        return
    statistic = "returns_to_zero" if stat == "returns" else "final_max"
    h = statistic_histograms(cfg, statistic, min_accepted=min_accepted)
    data = {"statistic": statistic, "accepted": h.accepted, "runs": h.runs,
            "counts": [int(c) for c in h.counts]}
    ref = _theory_tv(S, h, length)
    if ref is not None:
        data["theory"] = ref
    if fmt == "text":
        fmt = "csv"
    _emit(data, fmt, output, csv=h.to_csv())
    click.echo(f"accepted {h.accepted} of {h.runs} runs", err=True)


def _theory_tv(S, h, length):
    """TV distance to the limit law when the steps are Dyck-type."""
    from .dyck import DyckWeights, returns_pmf, maxlaw_discrete_pmf
    if not all(s in (IntSet({-1}), IntSet({1}), IntSet({-1, 1})) for s in S.sets):
        return None
    w = DyckWeights(S.weight(IntSet({-1})), S.weight(IntSet({1})), S.weight(IntSet({-1, 1})))
    try:
        if h.statistic == "returns_to_zero":
            return {"law": "returns", "tv": h.tv(returns_pmf(w, 1000))}
        pmf, _ = maxlaw_discrete_pmf(w, 400)
        return {"law": "final_max/2", "tv": h.halved().tv(pmf)}
    except ValueError as e:
        return {"law": None, "note": str(e)}


@cli.command()
@click.option("--steps", default=DYCK_STEPS, show_default=True)
@click.option("--weights", default=None)
@click.option("--variant", type=click.Choice(["walk", "meander"]), default="walk", show_default=True)
@click.option("--max-states", type=click.IntRange(1), default=64, show_default=True)
@fmt_options
def automaton(steps, weights, variant, max_states, fmt, as_json, output):
    """Infer the type automaton and export states, transitions and matrices."""
    from .typelab import build_automaton, InferenceFailure, ClosureError
    S = _step_set(steps, weights)
    try:
        aut = build_automaton(S, max_states=max_states, variant=variant)
    except (InferenceFailure, ClosureError) as e:
        raise VerificationFailed({"error": str(e)})
    data = aut.to_dict()
    fmt = _fmt(fmt, as_json)
    text = None
    if fmt == "text":
        lines = [f"{len(aut.types)} states ({variant}), initial {aut.initial}"]
        for i, st in enumerate(data["states"]):
            lines.append(f"  {i}: g={st['g']} k={st['k']} a={st['a']} b={st['b']} c={st['c']}")
        for name in ("A",):
            lines.append(f"{name} = {data['matrices'][name]}")
        for name in ("B", "C"):
            for ell, M in data["matrices"][name].items():
                lines.append(f"{name}[{ell}] = {M}")
        text = "\n".join(lines)
    _emit(data, fmt, output, text=text)


@cli.command()
@click.option("--family", type=click.Choice(["dyck", "motzkin"]), default="dyck", show_default=True)
@click.option("--class", "cls", type=click.Choice(CLASSES), default="walk", show_default=True)
@click.option("-n", "n", type=click.IntRange(1), required=True)
@click.option("--weights", default=None,
              help="Dyck probability weights p_-1,p_1,p_-1_1: asymptotic excursion probability at length 2n.")
@fmt_options
def asym(family, cls, n, weights, fmt, as_json, output):
    """Asymptotic formulas for the unweighted families."""
    if weights is not None:
        from .dyck import DyckWeights, excursion_prob_asym, excursion_regime
        if family != "dyck" or cls != "excursion":
            raise click.UsageError("--weights applies to --family dyck --class excursion")
        try:
            w = DyckWeights.parse(weights)
            data = {"regime": excursion_regime(w), "value": excursion_prob_asym(w, n)}
        except ValueError as e:
            raise click.UsageError(str(e))
        _emit(data, _fmt(fmt, as_json), output, text=repr(data["value"]))
        return
    if family == "dyck":
        from .dyck import asymptotic_eval as f
    else:
        from .motzkin import motzkin_asymptotics as f
    val = f(cls, n)
    _emit({"family": family, "class": cls, "n": n, "value": val}, _fmt(fmt, as_json), output,
          text=repr(val))


@cli.command()
@click.option("--topology", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--caps", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--path", "path_text", default=None, help="Comma-separated node names.")
@click.option("--kinds", default=None, help="Comma-separated capabilities (Encap,Decap,Both,Passive).")
@fmt_options
def feasible(topology, caps, path_text, kinds, fmt, as_json, output):
    """Whether a path of encapsulating/decapsulating nodes is feasible."""
    from . import netfeas as nf
    try:
        if kinds is not None:
            path = nf.NetworkPath(tuple(k for k in kinds.split(",") if k.strip()))
        elif path_text is not None and caps is not None:
            with open(caps) as fh:
                capmap = nf.load_capabilities(fh.read())
            topo = None
            if topology is not None:
                with open(topology) as fh:
                    topo = nf.load_topology(fh.read())
            path = nf.path_from_nodes([p.strip() for p in path_text.split(",") if p.strip()],
                                      capmap, topo)
        else:
            raise click.UsageError("give --kinds, or --path with --caps (and optionally --topology)")
    except ValueError as e:
        raise click.UsageError(str(e))
    ok = nf.feasibility_check(path)
    walk = ";".join(str(s) for s in nf.path_to_nsteps(path))
    data = {"feasible": ok, "walk": walk,
            "compatible_excursions": nf.compatible_excursions(nf.path_to_nsteps(path))}
    _emit(data, _fmt(fmt, as_json), output, text=f"feasible={str(ok).lower()}")


@cli.command("oracle-check")
@click.option("--row", default=None, help="Weight-pattern row name (default: all rows with a formula).")
@click.option("-n", "n_max", type=click.IntRange(0), default=14, show_default=True)
@fmt_options
def oracle_check_cmd(row, n_max, fmt, as_json, output):
    """Compare printed closed formulas of weight patterns with DP counts."""
    from .appendix import oracle_check
    try:
        rows = oracle_check(row, n_max)
    except KeyError as e:
        raise click.UsageError(str(e.args[0]))
    fmt = _fmt(fmt, as_json)
    text = "\n".join(f"{r['row']:5s} {r['status']}" +
                     (f" (first mismatch at n={r['first_mismatch']})" if r.get("first_mismatch") is not None else "")
                     for r in rows)
    _emit(rows, fmt, output, text=text,
          csv="row,status,first_mismatch\n" + "".join(
              f"{r['row']},{r['status']},{'' if r.get('first_mismatch') is None else r['first_mismatch']}\n"
              for r in rows))
    if any(r["status"] == "fail" for r in rows):
        raise VerificationFailed(None)


@cli.command()
@click.option("--class", "cls", type=click.Choice(CLASSES), default="meander", show_default=True)
@click.option("--weights", default="1,1,1", show_default=True, help="p_-1,p_1,p_-1_1")
@click.option("--order", type=click.IntRange(1), default=None)
@fmt_options
def dyck(cls, weights, order, fmt, as_json, output):
    """Dyck generating functions from the kernel-method closed forms."""
    from . import dyck as dk
    try:
        w = dk.DyckWeights.parse(weights)
    except ValueError as e:
        raise click.UsageError(str(e))
    order = order or default_order()
    if cls == "meander":
        f = dk.meander_gf_series(w, 1, 1, order)
    elif cls == "excursion":
        f = dk.meander_gf_series(w, 0, 1, order)
    elif cls == "walk":
        f = RationalSeries([w.total ** k for k in range(order)], 0, order)
    else:
        f = RationalSeries(count_by_dp(w.step_set(), order - 1, "bridge", state_mode="typed"), 0, order)
    data = {"class": cls, "weights": [frac_str(x) for x in (w.p_m1, w.p_p1, w.p_m1p1)],
            "series": f.to_json()}
    if w.is_probability:
        d = dk.drift_vector(w)
        data["drift"] = [frac_str(d.delta_x), frac_str(d.delta_y)]
        data["excursion_regime"] = dk.excursion_regime(w) if w.p_m1 + w.p_p1 <= 1 else None
    _emit(data, _fmt(fmt, as_json), output, text=str(f))


@cli.command()
@click.option("--check", type=click.Choice(["closed-forms"]), default="closed-forms", show_default=True)
@click.option("--order", type=click.IntRange(15), default=20, show_default=True)
@fmt_options
def motzkin(check, order, fmt, as_json, output):
    """Check the printed Motzkin closed form and quartic against DP series."""
    from .motzkin import closed_form_checks
    report = closed_form_checks(order)
    fmt = _fmt(fmt, as_json)
    text = (f"meander closed form: {'ok' if report['meander_closed_form']['ok'] else 'FAIL'}\n"
            f"excursion quartic:   {'ok' if report['excursion_quartic']['ok'] else 'FAIL'}")
    _emit(report, fmt if fmt != "text" else "text", output, text=text)
    if not report["ok"]:
        raise VerificationFailed(None)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="nwalk", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except VerificationFailed as e:
        if e.payload is not None:
            click.echo(json.dumps(e.payload), err=True)
        return 2
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
