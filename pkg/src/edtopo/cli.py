"""edtopo: batch commands over the library.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for usage and input errors.
"""

from __future__ import annotations

import json
import random
import sys

import click

from . import priority, reductions, witnesses
from .enumop import SetSpec, dump_stream
from .ordinals import arens_classify, fmt_roy_label, parse_kb, parse_ord, roy_classify
from .spaces import AmaxPoint, SpecError, nbase, nbase_member, parse_point

# reductions whose source is the name of a point given in a spec file
POINT_REDUCTIONS = {
    "telophase<->telograph": ("telophase", reductions.telophase_telograph),
    "telophase<->sep": ("telophase", reductions.telophase_sep),
    "doubleorigin<->dcodcea": ("double-origin", reductions.doubleorigin_codcea),
    "irrlattice<->codcea": ("irr-lattice", reductions.irrlattice_codcea),
    "arens<->arens-codcea": ("arens", reductions.arens_codcea),
    "roy<->halfgraph": ("roy", reductions.roy_halfgraph),
}


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _emit(ctx_json: bool, report: dict, lines: list) -> None:
    if ctx_json:
        click.echo(json.dumps(report, sort_keys=True, default=str))
    else:
        for ln in lines:
            click.echo(ln)


def _load_point(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_point(fh.read())
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc.strerror}")
    except SpecError as exc:
        raise click.UsageError(f"{path}: {exc}")


json_option = click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Enumeration degrees of points in represented cb0 spaces."""


# ---------------------------------------------------------------------------
# nbase

@main.command("nbase")
@click.argument("specfile")
@click.option("--stages", default=100, show_default=True, type=click.IntRange(min=0))
@click.option("--dump", "mode", flag_value="dump", default=True, help="Print wire symbols.")
@click.option("--check", "mode", flag_value="check", help="Check the stream against the oracle.")
@click.option("--atom-bound", default=0, type=click.IntRange(min=0),
              help="With --check, also require every member atom below this code.")
@json_option
def cmd_nbase(specfile, stages, mode, atom_bound, as_json):
    """Stream the name Nbase(x) of the point in SPECFILE."""
    p = _load_point(specfile)
    syms = nbase(p).take(stages)
    if mode == "dump":
        text = dump_stream(syms)
        _emit(as_json, {"space": p.tag, "stages": stages, "wire": text.split()}, [text])
        return
    bad = sorted({a for a in syms if a is not None and not nbase_member(p, a)})
    got = {a for a in syms if a is not None}
    missing = [a for a in range(atom_bound) if nbase_member(p, a) and a not in got]
    ok = not bad and not missing
    lines = [f"{'PASS' if ok else 'FAIL'} nbase {p.tag}: {len(got)} atoms in {stages} stages"]
    if bad:
        lines.append(f"  unsound atoms: {bad[:10]}")
    if missing:
        lines.append(f"  missing atoms below {atom_bound}: {missing[:10]}")
    _emit(as_json, {"space": p.tag, "stages": stages, "emitted": len(got), "unsound": bad,
                    "missing": missing, "ok": ok}, lines)
    sys.exit(0 if ok else 1)


# ---------------------------------------------------------------------------
# reduce / roundtrip

def _build_pair(name: str, specfile, rng: random.Random):
    if name not in reductions.REDUCTIONS:
        raise click.UsageError(f"unknown reduction {name!r}; choose from {', '.join(sorted(reductions.REDUCTIONS))}")
    if name in POINT_REDUCTIONS and specfile:
        tag, build = POINT_REDUCTIONS[name]
        p = _load_point(specfile)
        if p.tag != tag:
            raise click.UsageError(f"{name} needs a point of space {tag}; {specfile} holds one of {p.tag}")
        return build(p)
    if specfile:
        raise click.UsageError(f"{name} runs on seeded random instances; it takes no spec file")
    return reductions.REDUCTIONS[name](rng)


@main.command("reduce")
@click.argument("name")
@click.argument("specfile", required=False)
@click.option("--stages", default=100, show_default=True, type=click.IntRange(min=0))
@click.option("--direction", type=click.Choice(["forward", "backward"]), default="forward", show_default=True)
@click.option("--budget", default=32, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True)
@json_option
def cmd_reduce(name, specfile, stages, direction, budget, seed, as_json):
    """Run one direction of reduction NAME and print its output stream."""
    pair = _build_pair(name, specfile, random.Random(seed))
    if direction == "forward":
        out = pair.forward.stream(pair.source_stream(), budget)
    else:
        out = pair.backward.stream(pair.target_stream(), budget)
    syms = out.take(stages)
    text = dump_stream(syms)
    _emit(as_json, {"reduction": name, "direction": direction, "stages": stages,
                    "wire": text.split()}, [text])


@main.command("roundtrip")
@click.argument("name")
@click.argument("specfile", required=False)
@click.option("--stages", default=20000, show_default=True, type=click.IntRange(min=0),
              help="Output pulls per direction.")
@click.option("--atom-bound", default=50, show_default=True, type=click.IntRange(min=0))
@click.option("--instances", default=1, show_default=True, type=click.IntRange(min=1),
              help="Random instances (ignored with a spec file).")
@click.option("--budget", default=32, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True)
@json_option
def cmd_roundtrip(name, specfile, stages, atom_bound, instances, budget, seed, as_json):
    """Soundness and completeness of both directions of reduction NAME."""
    rng = random.Random(seed)
    if stages == 0:
        _build_pair(name, specfile, rng)
        click.echo("warning: --stages 0 runs nothing; the check is vacuous", err=True)
        _emit(as_json, {"reduction": name, "ok": True, "vacuous": True, "instances": []},
              [f"PASS {name} (vacuous: 0 stages)"])
        return
    runs = []
    for i in range(1 if specfile else instances):
        pair = _build_pair(name, specfile, rng)
        rt = pair.roundtrip(atom_bound, stages, budget)
        runs.append(rt)
    ok = all(rt.ok for rt in runs)
    lines = [f"{'PASS' if ok else 'FAIL'} {name}: {len(runs)} instance(s), atoms < {atom_bound}, {stages} pulls"]
    rep = []
    for i, rt in enumerate(runs):
        entry = {}
        for dname, d in (("forward", rt.forward), ("backward", rt.backward)):
            entry[dname] = {"pulls": d.pulls, "emitted": d.emitted, "unsound": d.unsound,
                            "missing": d.missing, "ok": d.ok}
            if d.unsound:
                lines.append(f"  instance {i} {dname}: unsound atom {d.unsound[0]} within {d.pulls} pulls")
            if d.missing:
                lines.append(f"  instance {i} {dname}: atom {d.missing[0]} not emitted after {d.pulls} pulls")
        rep.append(entry)
    _emit(as_json, {"reduction": name, "ok": ok, "vacuous": False, "instances": rep}, lines)
    sys.exit(0 if ok else 1)


# ---------------------------------------------------------------------------
# classify

@main.command("classify")
@click.argument("kind", type=click.Choice(["ord", "kb"]))
@click.argument("value")
@json_option
def cmd_classify(kind, value, as_json):
    """Arens label of an ordinal below ω³+1, or Roy label of a KB node."""
    try:
        if kind == "ord":
            labels = sorted(str(x) for x in arens_classify(parse_ord(value)))
        else:
            labels = sorted((fmt_roy_label(x) for x in roy_classify(parse_kb(value))),
                            key=lambda t: (t == "inf", len(t), t))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    names = [f"I_{x}" for x in labels]
    _emit(as_json, {"kind": kind, "value": value, "labels": names}, [" ".join(names)])


# ---------------------------------------------------------------------------
# witness

@main.group("witness")
def cmd_witness():
    """Name surjections, the Golomb and antichain embeddings."""


@cmd_witness.command("surj")
@click.argument("space", type=click.Choice(["telophase", "doubleorigin", "arens", "irrlattice"]))
@click.argument("word")
@click.option("--budget", default=None, type=click.IntRange(min=0), help="Read at most this many symbols.")
@json_option
def cmd_surj(space, word, budget, as_json):
    """Evaluate the surjection on a comma-separated finite WORD."""
    try:
        w = [int(x) for x in word.split(",")] if word.strip() else []
    except ValueError:
        raise click.UsageError(f"word must be comma-separated naturals, got {word!r}")
    v = witnesses.qp_surjection_eval(space, w, budget)
    out = _fmt(v)
    _emit(as_json, {"space": space, "word": w, "value": out}, [out])
    if v is witnesses.DOMAIN_ERROR:
        sys.exit(1)


@cmd_witness.command("preimage")
@click.argument("space", type=click.Choice(["telophase", "doubleorigin"]))
@click.option("--bound", default=20, show_default=True, type=click.IntRange(min=1))
@json_option
def cmd_preimage(space, bound, as_json):
    """Check the displayed preimages of basic open sets below BOUND."""
    r = witnesses.qp_preimage_check(space, bound)
    lines = [f"{'PASS' if r.ok else 'FAIL'} preimages {space} < {bound}: {r.checked} checks, "
             f"{len(r.failures)} failures, {r.literal_mismatches} literal-display mismatches"]
    lines += [f"  {f}" for f in r.failures[:10]]
    _emit(as_json, {"space": space, "bound": bound, "checked": r.checked, "failures": r.failures,
                    "literal_mismatches": r.literal_mismatches, "ok": r.ok}, lines)
    sys.exit(0 if r.ok else 1)


@cmd_witness.group("golomb")
def cmd_golomb():
    """h(b) = 1 + Σ b_i r_i."""


@cmd_golomb.command("encode")
@click.argument("bits")
@json_option
def cmd_golomb_encode(bits, as_json):
    """Print h(BITS) for a bit word such as 110."""
    if any(c not in "01" for c in bits):
        raise click.UsageError("BITS must be a 0/1 word")
    try:
        h = witnesses.golomb_embed([int(c) for c in bits])
    except witnesses.GolombInfeasible as exc:
        click.echo(f"infeasible: {exc}", err=True)
        sys.exit(1)
    _emit(as_json, {"bits": bits, "h": str(h)}, [str(h)])


@cmd_golomb.command("decode")
@click.argument("x", type=click.IntRange(min=1))
@click.option("--length", default=3, show_default=True, type=click.IntRange(min=0))
@json_option
def cmd_golomb_decode(x, length, as_json):
    """Recover the first LENGTH bits from the congruence oracle of X."""
    try:
        bits = witnesses.golomb_decode(witnesses.golomb_oracle(x), length)
    except witnesses.GolombInfeasible as exc:
        click.echo(f"infeasible: {exc}", err=True)
        sys.exit(1)
    except ValueError as exc:
        click.echo(f"not an image: {exc}", err=True)
        sys.exit(1)
    text = "".join(map(str, bits))
    _emit(as_json, {"x": x, "bits": text}, [text])


@cmd_witness.group("amax")
def cmd_amax():
    """Complements of maximal antichains."""


def _scheme(scheme: str, arg: str):
    try:
        if scheme == "len":
            return AmaxPoint(("len", int(arg)))
        sig, _, ell = arg.partition(":")
        return AmaxPoint(("sigma", parse_kb(sig) if sig.startswith("[") else tuple(
            int(x) for x in sig.split(",") if x), int(ell)))
    except ValueError as exc:
        raise click.UsageError(str(exc))


@cmd_amax.command("embed")
@click.argument("n", type=click.IntRange(min=0))
@click.option("--atoms", default=16, show_default=True, type=click.IntRange(min=0))
@json_option
def cmd_amax_embed(n, atoms, as_json):
    """Atoms below --atoms in Nbase of the embedded point for N."""
    p = witnesses.antichain_embed(n)
    got = [a for a in range(atoms) if p.member(a)]
    _emit(as_json, {"n": n, "atoms": got}, [" ".join(map(str, got))])


@cmd_amax.command("check")
@click.argument("scheme", type=click.Choice(["len", "sigma"]))
@click.argument("arg")
@click.option("--bound", default=64, show_default=True, type=click.IntRange(min=0))
@click.option("--stages", default=4000, show_default=True, type=click.IntRange(min=0))
@json_option
def cmd_amax_check(scheme, arg, bound, stages, as_json):
    """Cototality operator output against the oracle.  ARG is n for
    ``len`` and σ:ℓ (e.g. 0,1:3) for ``sigma``."""
    p = _scheme(scheme, arg)
    r = witnesses.amax_check(p, bound, stages)
    line = (f"{'PASS' if r.ok else 'FAIL'} amax {scheme} {arg}: {r.emitted} atoms, "
            f"{len(r.unsound)} unsound, {len(r.missing)} missing below {bound}")
    _emit(as_json, {"scheme": scheme, "arg": arg, "emitted": r.emitted, "unsound": r.unsound,
                    "missing": r.missing, "ok": r.ok}, [line])
    sys.exit(0 if r.ok else 1)


# ---------------------------------------------------------------------------
# construct

@main.command("construct")
@click.argument("name", type=click.Choice(["no-minimal", "proper-sigma2"]))
@click.option("--stages", default=10000, show_default=True, type=click.IntRange(min=0))
@click.option("--x", "xspec", default="(10)", show_default=True, help="X as prefix(period) bits.")
@click.option("--pace", default=priority.DEFAULT_PACE, show_default=True, type=click.IntRange(min=1),
              help="Stages per revealed position of X.")
@click.option("--no-guesses", is_flag=True, help="Approximate X without departures.")
@click.option("--target", "targets", multiple=True,
              help="α_e as q, lim:q or steps:q0,q1,...; repeatable (default: lim:13/64 three times).")
@click.option("--adversaries", default=3, show_default=True, type=click.IntRange(min=0))
@click.option("--out", "out", default=None, help="Write the TSV transcript here.")
@json_option
def cmd_construct(name, stages, xspec, pace, no_guesses, targets, adversaries, out, as_json):
    """Run a priority construction and summarize its invariants."""
    try:
        if name == "no-minimal":
            X = SetSpec.parse(xspec)
            tg = [priority.Target.parse(t) for t in targets] or priority.default_targets()
            tr = priority.run_no_minimal(stages, X, tg, guesses=not no_guesses, pace=pace)
        else:
            tr = priority.run_proper_sigma2(stages, priority.scripted_adversaries(adversaries))
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(str(exc))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(tr.to_tsv())
    bad = tr.failures()
    lines = [f"{'PASS' if tr.ok else 'FAIL'} {name}: {stages} stages, "
             f"{len(bad)} stages with invariant failures"
             + (f", transcript in {out}" if out else "")]
    lines += [f"  stage {s}: {','.join(f)}" for s, f in bad[:10]]
    if not out and not as_json:
        lines = [ln.tsv() for ln in tr.lines] + lines
    _emit(as_json, {"construction": name, "stages": stages, "ok": tr.ok,
                    "failures": [[s, list(f)] for s, f in bad],
                    "digest": tr.lines[-1].digest if tr.lines else None,
                    "summary": tr.summary}, lines)
    sys.exit(0 if tr.ok else 1)


if __name__ == "__main__":
    main()
