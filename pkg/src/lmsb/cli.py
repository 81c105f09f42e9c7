"""Command-line front end: model registry access, pipeline orchestration,
disk caching and machine-readable output.

All JSON output is deterministic (sorted keys, fixed separators) and all
rational numbers are serialized as "p/q" strings.  Results are cached on
disk keyed by (command, parameters, cache version); corrupt entries fall
back to recomputation.
"""

import hashlib
import json
import os
import sys
from fractions import Fraction

import click

from . import hae, yukawa
from .acceptance import run_all
from .gkz import FrobeniusBasis, pf_operators
from .models import MODEL_NAMES, get_model
from .polytope import LatticePolytope, dual_polytope, integral_points, \
    is_reflexive, lattice_of_relations, normalized_volume

CACHE_VERSION = 1
DEFAULT_ORDER = 8


# -- serialization helpers --------------------------------------------------


def _frac_str(x):
    return str(Fraction(x))


def _series_obj(s):
    """MultiSeries -> {"e1,e2,...": "p/q"} with sorted keys."""
    return {",".join(str(x) for x in e): _frac_str(c)
            for e, c in sorted(s.terms.items()) if c}


def _logseries_obj(ls):
    """LogSeries -> [{"log": [...], "series": {...}}] sorted by log part."""
    return [{"log": list(e), "series": _series_obj(part)}
            for e, part in sorted(ls.components.items())]


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ": "),
                      indent=2) + "\n"


# -- disk cache --------------------------------------------------------------


def _cache_dir(flag_value):
    if flag_value:
        return flag_value
    env = os.environ.get("LMSB_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "lmsb")


def _cache_key(command, params):
    blob = json.dumps({"command": command, "params": params,
                       "version": CACHE_VERSION}, sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def cached_payload(command, params, compute, cache_dir, no_cache):
    """Return the JSON payload text, via the disk cache unless disabled.

    The cache stores the payload verbatim, so a hit is byte-identical to
    a recomputation; unreadable or corrupt entries are recomputed."""
    if no_cache:
        return _dumps(compute())
    path = os.path.join(_cache_dir(cache_dir),
                        _cache_key(command, params) + ".json")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        json.loads(text)
        return text
    except (OSError, ValueError):
        pass
    text = _dumps(compute())
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        pass    # caching is best-effort
    return text


# -- command plumbing --------------------------------------------------------


def _common(fn):
    fn = click.option("--format", "fmt", default="json",
                      type=click.Choice(["json", "text"]),
                      help="Output format.")(fn)
    fn = click.option("--cache-dir", default=None,
                      help="Cache directory (default: LMSB_CACHE_DIR or "
                           "~/.cache/lmsb).")(fn)
    fn = click.option("--no-cache", is_flag=True,
                      help="Neither read nor write the disk cache.")(fn)
    return fn


def _emit(command, params, compute, fmt, cache_dir, no_cache, render_text):
    try:
        text = cached_payload(command, params, compute, cache_dir, no_cache)
    except Exception as exc:
        click.echo(_dumps({"error": {"type": type(exc).__name__,
                                     "message": str(exc)}}), err=True,
                   nl=False)
        sys.exit(2)
    if fmt == "json":
        click.echo(text, nl=False)
    else:
        click.echo(render_text(json.loads(text)))


def _load_polytope(model_name, input_file):
    if input_file:
        with open(input_file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        verts = [tuple(v) for v in data["vertices"]]
        return LatticePolytope(verts), {"input": data["vertices"]}
    model = _model(model_name)
    return model.polytope, {"model": model.name}



def _model(name):
    try:
        return get_model(name)
    except KeyError as exc:
        raise click.ClickException(str(exc))


@click.group()
def main():
    """Exact-arithmetic workbench for local mirror symmetry on reflexive
    polygons: hypergeometric operators, mirror maps, Yukawa couplings and
    low-genus amplitudes."""


@main.command()
@_common
def models(fmt, cache_dir, no_cache):
    """List the built-in models."""
    def compute():
        return [{"name": n, "description": _model(n).description}
                for n in MODEL_NAMES]

    def render(obj):
        return "\n".join("%-4s %s" % (m["name"], m["description"])
                         for m in obj)
    _emit("models", {}, compute, fmt, cache_dir, no_cache, render)


@main.command()
@click.option("--model", "model_name", default=None, help="Built-in model.")
@click.option("--input", "input_file", default=None,
              help="Custom polytope JSON file ({\"vertices\": [[x,y],...]}).")
@_common
def polytope(model_name, input_file, fmt, cache_dir, no_cache):
    """Polytope data: points, duality, reflexivity, volume."""
    P, params = _load_polytope(model_name, input_file)

    def compute():
        return {
            "vertices": [list(v) for v in P.vertices],
            "points": [list(p) for p in integral_points(P)],
            "reflexive": is_reflexive(P),
            "dual_vertices": [list(v) for v in dual_polytope(P).vertices],
            "normalized_volume": normalized_volume(P),
        }

    def render(obj):
        lines = ["vertices:    %s" % obj["vertices"],
                 "points:      %s" % obj["points"],
                 "reflexive:   %s" % obj["reflexive"],
                 "dual:        %s" % obj["dual_vertices"],
                 "norm volume: %s" % obj["normalized_volume"]]
        return "\n".join(lines)
    _emit("polytope", params, compute, fmt, cache_dir, no_cache, render)


@main.command()
@click.option("--model", "model_name", default=None, help="Built-in model.")
@click.option("--input", "input_file", default=None,
              help="Custom polytope JSON file.")
@_common
def relations(model_name, input_file, fmt, cache_dir, no_cache):
    """Basis of the lattice of relations among the lattice points."""
    if input_file:
        P, params = _load_polytope(model_name, input_file)

        def compute():
            return [list(l) for l in lattice_of_relations(P).basis]
    else:
        model = _model(model_name)
        params = {"model": model.name}

        def compute():
            return [list(l) for l in model.relations.basis]

    def render(obj):
        return "\n".join(str(row) for row in obj)
    _emit("relations", params, compute, fmt, cache_dir, no_cache, render)


@main.command(name="pf-ops")
@click.option("--model", "model_name", required=True, help="Built-in model.")
@_common
def pf_ops(model_name, fmt, cache_dir, no_cache):
    """The hypergeometric (Picard-Fuchs) operators."""
    model = _model(model_name)

    def compute():
        return [repr(op) for op in pf_operators(model)]

    def render(obj):
        return "\n".join("L%d = %s" % (i + 1, s) for i, s in enumerate(obj))
    _emit("pf-ops", {"model": model.name}, compute, fmt, cache_dir,
          no_cache, render)


@main.command()
@click.option("--model", "model_name", required=True, help="Built-in model.")
@click.option("--order", default=DEFAULT_ORDER, help="Truncation order.")
@_common
def solutions(model_name, order, fmt, cache_dir, no_cache):
    """Frobenius solution basis: 1, the t_i, and the double-log dSF."""
    model = _model(model_name)

    def compute():
        fb = FrobeniusBasis(model, order)
        return {
            "order": order,
            "t": [_logseries_obj(t) for t in fb.t],
            "dSF": _logseries_obj(fb.dSF),
        }

    def render(obj):
        lines = []
        for i, t in enumerate(obj["t"]):
            lines.append("t%d:" % (i + 1))
            for part in t:
                lines.append("  log^%s * (%s)" % (part["log"],
                                                  part["series"]))
        lines.append("dSF:")
        for part in obj["dSF"]:
            lines.append("  log^%s * (%s)" % (part["log"], part["series"]))
        return "\n".join(lines)
    _emit("solutions", {"model": model.name, "order": order}, compute,
          fmt, cache_dir, no_cache, render)


@main.command(name="mirror-map")
@click.option("--model", "model_name", required=True, help="Built-in model.")
@click.option("--order", default=DEFAULT_ORDER, help="Truncation order.")
@_common
def mirror_map(model_name, order, fmt, cache_dir, no_cache):
    """Inverse mirror map z_i(q) as exact power series."""
    model = _model(model_name)

    def compute():
        fb = FrobeniusBasis(model, order)
        zq = yukawa.mirror_inversion(fb)
        return {"order": order, "z": [_series_obj(s) for s in zq]}

    def render(obj):
        return "\n".join("z%d(q): %s" % (i + 1, s)
                         for i, s in enumerate(obj["z"]))
    _emit("mirror-map", {"model": model.name, "order": order}, compute,
          fmt, cache_dir, no_cache, render)


@main.command(name="yukawa")
@click.option("--model", "model_name", required=True, help="Built-in model.")
@_common
def yukawa_cmd(model_name, fmt, cache_dir, no_cache):
    """Closed-form Yukawa couplings."""
    model = _model(model_name)

    def compute():
        if model.nvars == 1:
            Y = model.yukawa_closed[(1, 1)] * (
                Fraction(1, model.theta0[0]))
            return {"(z,z;z)": Y.to_string()}
        out = {}
        for (i, j), Y in sorted(model.yukawa_closed.items()):
            out["(z%d,z%d;0)" % (i, j)] = Y.to_string()
        return out

    def render(obj):
        return "\n".join("%s = %s" % kv for kv in sorted(obj.items()))
    _emit("yukawa", {"model": model.name}, compute, fmt, cache_dir,
          no_cache, render)


@main.command()
@click.option("--model", "model_name", required=True, help="Built-in model.")
@click.option("--order", default=DEFAULT_ORDER, help="Truncation order.")
@_common
def gw0(model_name, order, fmt, cache_dir, no_cache):
    """Genus-0 invariants N_d and BPS numbers n_d."""
    model = _model(model_name)

    def compute():
        fb = FrobeniusBasis(model, order)
        N = yukawa.gw0_invariants(model, fb)
        n = yukawa.bps_genus0(N)
        key = lambda e: ",".join(str(x) for x in e)
        return {"N": {key(e): _frac_str(v) for e, v in sorted(N.items())},
                "n": {key(e): _frac_str(v) for e, v in sorted(n.items())}}

    def render(obj):
        lines = ["d: N_d, n_d"]
        for k in sorted(obj["N"]):
            lines.append("%s: %s, %s" % (k, obj["N"][k], obj["n"][k]))
        return "\n".join(lines)
    _emit("gw0", {"model": model.name, "order": order}, compute, fmt,
          cache_dir, no_cache, render)


def _amplitude_obj(model, C, sg, qexp_fn, order):
    import sympy as sp
    obj = {"g": C.g, "n": C.n,
           "poly": [["A^%d" % i, sp.sstr(sp.cancel(c))]
                    for i, c in enumerate(C.coeffs)]}
    if model.nvars == 1:
        q = qexp_fn()
        obj["qexp"] = {str(e[0]): _frac_str(v)
                       for e, v in sorted(q.terms.items()) if sum(e)}
    return obj


def _render_amplitude(obj):
    lines = ["genus %d, %d-point amplitude (polynomial in A):" % (
        obj["g"], obj["n"])]
    for name, c in obj["poly"]:
        lines.append("  %s: %s" % (name, c))
    if "qexp" in obj:
        lines.append("free-energy q-expansion:")
        for d in sorted(obj["qexp"], key=int):
            lines.append("  q^%s: %s" % (d, obj["qexp"][d]))
    return "\n".join(lines)


@main.command()
@click.option("--model", "model_name", required=True, help="Built-in model.")
@click.option("--order", default=DEFAULT_ORDER, help="Truncation order.")
@_common
def genus1(model_name, order, fmt, cache_dir, no_cache):
    """Genus-1 amplitude C~^1_1 and (rank 1) its free-energy q-expansion."""
    model = _model(model_name)

    def compute():
        sg = hae.special_geometry(model, order=order)
        C = hae.genus1(model, sg)
        return _amplitude_obj(
            model, C, sg,
            lambda: hae.genus1_free_energy_qseries(model, sg), order)
    _emit("genus1", {"model": model.name, "order": order}, compute, fmt,
          cache_dir, no_cache, _render_amplitude)


@main.command()
@click.option("--model", "model_name", required=True, help="Built-in model.")
@click.option("--order", default=DEFAULT_ORDER, help="Truncation order.")
@click.option("--f2", "f2_text", default=None,
              help="Genus-2 ambiguity as a rational function of z "
                   "(required for models without a stored value).")
@_common
def genus2(model_name, order, f2_text, fmt, cache_dir, no_cache):
    """Genus-2 amplitude C~^0_2 and (rank 1) its free-energy q-expansion."""
    model = _model(model_name)

    def compute():
        from .ratfunc import RationalFunction
        f2 = (RationalFunction.from_string(f2_text, model.nvars)
              if f2_text else None)
        sg = hae.special_geometry(model, order=order)
        C = hae.genus2(model, sg, f2=f2)
        return _amplitude_obj(
            model, C, sg,
            lambda: hae.genus2_free_energy_qseries(model, sg, f2=f2), order)
    _emit("genus2", {"model": model.name, "order": order, "f2": f2_text},
          compute, fmt, cache_dir, no_cache, _render_amplitude)


@main.command()
@click.option("--order", default=10, help="Truncation order for the suite.")
def check(order):
    """Run the acceptance suite and report pass/fail per criterion."""
    results = run_all(order=order)
    failed = 0
    for num, title, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        click.echo("criterion %2d [%s]: %s -- %s"
                   % (num, status, title, detail))
        if not ok:
            failed += 1
    click.echo("%d/%d criteria passed" % (len(results) - failed,
                                          len(results)))
    sys.exit(0 if failed == 0 else 1)


if __name__ == "__main__":
    main()
