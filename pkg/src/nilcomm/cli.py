"""Command-line front end.

Job files are INI documents::

    [job]
    characteristic = 0
    variables = x, y, z
    ideal =
        x^2 + y^2 + z^2
        x^4 + y^4 + z^4
        x*y*z
    analyses = all

    [forms]
    z = z

    [sampling]
    seed = 0
    lambda = 1, 2, 3, 4, 5
    coeff_bound = 2
    samples = 25

Generators are separated by newlines or commas; ``#`` and ``;`` start comments,
also after a value.  ``analyses`` is a comma list
drawn from jordan, commutator, csm, gr, wlp, slp, all.  Forms named ``z`` and
``y`` are used as the distinguished and the deforming form; ``z`` defaults to
the last variable and ``y`` to a sampled form.

Exit status: 0 success, 2 input error, 3 quotient not Artinian, 4 internal
inconsistency (a bug).
"""

import argparse
import configparser
import json
import random
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import __version__
from . import commutator as comm
from . import lefschetz as lef
from .algebra import ArtinianAlgebra
from .errors import InternalInconsistency, NilcommError, NotArtinian, ParseError, PreconditionViolated
from .linalg import GF, QQ, nilpotent_jordan_type, rank
from .partitions import Partition, jordan_first, multiplicity_sequence, numbering_permutation, render_young
from .polyalg import Ideal, PolyRing

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_ARTINIAN = 3
EXIT_INTERNAL = 4

ANALYSES = ("jordan", "commutator", "csm", "gr", "wlp", "slp")


class InputError(Exception):
    """Invalid job description; carries a ready-to-print diagnostic."""


# -- job description ----------------------------------------------------------------

@dataclass
class JobSpec:
    characteristic: int
    variables: tuple
    ideal: tuple
    forms: dict = dc_field(default_factory=dict)
    sampling: lef.SamplingPolicy = lef.DEFAULT_SAMPLING
    analyses: tuple = ANALYSES
    source: str = "<string>"
    raw_lines: tuple = ()
    gorenstein: object = None  # None = detect, True/False = caller's flag

    @property
    def field(self):
        return QQ if self.characteristic == 0 else GF(self.characteristic)

    def locate(self, text):
        """1-based (line, column) of ``text`` in the job file, or None."""
        for number, line in enumerate(self.raw_lines, start=1):
            col = line.find(text)
            if col >= 0 and text:
                return number, col + 1
        return None

    def to_dict(self):
        return {
            "source": self.source,
            "characteristic": self.characteristic,
            "variables": list(self.variables),
            "ideal": list(self.ideal),
            "forms": dict(self.forms),
            "analyses": list(self.analyses),
        }


def _split_list(text):
    return [item.strip() for chunk in text.splitlines() for item in chunk.split(",") if item.strip()]


def _parse_int(value, key):
    try:
        return int(value)
    except ValueError:
        raise InputError(f"{key}: expected an integer, got {value!r}") from None


def parse_job(text, source="<string>"):
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise InputError(f"{source}: {exc}") from None
    if not cp.has_section("job"):
        raise InputError(f"{source}: missing [job] section")
    job = cp["job"]
    for key in ("variables", "ideal"):
        if key not in job:
            hint = " (write 'ideal =' for the zero ideal)" if key == "ideal" else ""
            raise InputError(f"{source}: [job] needs '{key}'{hint}")
    characteristic = _parse_int(job.get("characteristic", "0"), "characteristic")
    variables = tuple(_split_list(job["variables"]))
    if not variables:
        raise InputError(f"{source}: variables must be nonempty")
    ideal = tuple(_split_list(job["ideal"]))
    analyses = tuple(_split_list(job.get("analyses", "all")))
    if "all" in analyses:
        analyses = ANALYSES
    unknown = [a for a in analyses if a not in ANALYSES]
    if unknown:
        raise InputError(f"{source}: unknown analyses {unknown}; choose from {', '.join(ANALYSES)} or all")
    forms = dict(cp["forms"]) if cp.has_section("forms") else {}
    sampling = lef.DEFAULT_SAMPLING
    if cp.has_section("sampling"):
        s = cp["sampling"]
        try:
            sampling = lef.SamplingPolicy(
                seed=_parse_int(s.get("seed", "0"), "sampling.seed"),
                lambdas=tuple(_parse_int(x, "sampling.lambda") for x in _split_list(s.get("lambda", "1,2,3,4,5"))),
                coeff_bound=_parse_int(s.get("coeff_bound", "2"), "sampling.coeff_bound"),
                samples=_parse_int(s.get("samples", "25"), "sampling.samples"),
            )
        except ValueError as exc:
            raise InputError(f"{source}: {exc}") from None
    return JobSpec(characteristic, variables, ideal, forms, sampling, analyses, source,
                   tuple(text.splitlines()))


def load_job(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read job file ({exc.strerror})") from None
    return parse_job(text, str(path))


def _parse_diagnostic(job, text, exc, what):
    loc = job.locate(text)
    where = f"{job.source}:{loc[0]}:{loc[1] + exc.position}" if loc else job.source
    return f"{where}: parse error in {what}: {exc.message}\n{exc.caret()}"


def build_algebra(job):
    try:
        field = job.field
    except ValueError as exc:
        raise InputError(f"{job.source}: characteristic: {exc}") from None
    try:
        ring = PolyRing(job.variables, field)
    except ValueError as exc:
        raise InputError(f"{job.source}: variables: {exc}") from None
    gens = []
    for text in job.ideal:
        try:
            gens.append(ring.parse(text))
        except ParseError as exc:
            raise InputError(_parse_diagnostic(job, text, exc, "ideal generator")) from None
    try:
        ideal = Ideal(ring, tuple(gens))
    except PreconditionViolated as exc:
        raise InputError(f"{job.source}: ideal: {exc}") from None
    return ArtinianAlgebra.from_ideal(ideal)


def resolve_form(job, a, name, spec=None):
    text = spec if spec is not None else job.forms.get(name)
    if text is None:
        return None
    text = job.forms.get(text, text)
    try:
        return a.form(text)
    except ParseError as exc:
        raise InputError(_parse_diagnostic(job, text, exc, f"form {name}")) from None
    except ValueError as exc:
        raise InputError(f"{job.source}: form {name}: {exc}") from None


# -- analyses -------------------------------------------------------------------------

def _render_form(a, f):
    return f.render(a.ring.variables)


def analyze_jordan(a, f, name):
    t, d = lef.jordan_type_of(a, f)
    quotient = a.quotient_by([f])
    if quotient.dim != len(t):
        raise InternalInconsistency("number of Jordan blocks differs from dim A/(f)")
    return {
        "form": _render_form(a, f),
        "name": name,
        "jordan_type": list(t.parts),
        "compact": t.compact(),
        "dual": list(d.parts),
        "rank": a.dim - len(t),
        "quotient_dimension": quotient.dim,
        "quotient_hilbert": list(quotient.hilbert),
        "diagram": render_young(t),
    }


def analyze_commutator(a, z, y):
    frame = lef.JordanFrame.build(a, z)
    t = frame.partition
    pattern = comm.generic_pattern(t)
    ms = multiplicity_sequence(t)
    out = {
        "partition": list(t.parts),
        "parameter_count": pattern.parameter_count,
        "coarse_sizes": list(t.dual().parts),
        "fine_sizes": [m for _, m in ms],
        "multiplicity_sequence": [[f, m] for f, m in ms],
    }
    if y is not None:
        m = frame.in_frame(y)
        g = comm.phi(m, t)
        out["y"] = _render_form(a, y)
        out["phi_block_ranks"] = [rank(b ** f) for b, (f, _) in zip(g, ms)]
        out["y_nilpotent_via_blocks"] = comm.is_nilpotent_via_blocks(m, t)
    return out


def analyze_csm(a, z):
    us, ws = lef.central_simple_modules(a, z)
    return {
        "z": _render_form(a, z),
        "U": [u.summary() for u in us],
        "W": [w.summary() for w in ws],
    }


def analyze_gr(a, z, y, sampling):
    gr = lef.gr_algebra(a, z)
    star_z = gr.star_matrix(z)
    out = {
        "z": _render_form(a, z),
        "layer_dimensions": list(gr.layer_dims),
        "star_z_jordan_type": list(nilpotent_jordan_type(star_z).parts),
        "kernel_dimension_direct": gr.kernel_dimension_direct(),
        "kernel_dimension_by_layers": gr.kernel_dimension_by_layers(),
    }
    if out["kernel_dimension_direct"] != out["kernel_dimension_by_layers"]:
        raise InternalInconsistency("kernel of z* differs between the two computations")
    if out["star_z_jordan_type"] != list(gr.partition.parts):
        raise InternalInconsistency("z* and z have different Jordan types")
    if y is not None:
        out["y"] = _render_form(a, y)
        out["y_filtration_order"] = gr.filtration_order(y)
        if gr.filtration_order(y) == 0:
            same = gr.star_matrix(y) == gr.truncation(y)
            if not same:
                raise InternalInconsistency("y* differs from the coarse-diagonal truncation")
            out["star_y_equals_truncation"] = same
        t = gr.partition
        dep = lef.rank_deformation_check(gr.frame.in_frame(y), jordan_first(t, a.field), t, sampling)
        out["deformation"] = {
            "truncated_ranks": {str(l): r for l, r in dep.truncated_ranks.items()},
            "full_ranks": {str(l): r for l, r in dep.full_ranks.items()},
            "generic_truncated": dep.generic_truncated,
            "generic_full": dep.generic_full,
            "generic_certified": dep.generic_certified,
            "exceptional_lambdas": list(dep.exceptional_lambdas),
            "holds": dep.holds,
        }
    return out


def analyze_wlp(a, z, y, sampling, general=None):
    general = general or lef.general_form_analysis(a, sampling)
    cert = lef.wlp_certificate(a, y, z, sampling)
    verdict = lef.CERTIFIED_YES if lef.CERTIFIED_YES in (general.wlp_verdict, cert.verdict) else general.wlp_verdict
    return {
        "verdict": verdict,
        "general_form": general.to_dict(),
        "certificate": cert.to_dict(a.field),
        "sampling": sampling.to_dict(),
    }


def analyze_slp(a, z, sampling, gorenstein, general=None):
    general = general or lef.general_form_analysis(a, sampling)
    out = {"general_form_verdict": general.slp_verdict, "sampling": sampling.to_dict()}
    try:
        res = lef.csm_slp_implication(a, z, sampling, gorenstein)
        out["central_simple_modules"] = res.to_dict(a.field)
    except PreconditionViolated as exc:
        out["central_simple_modules"] = {"verdict": "not-applicable", "reason": str(exc)}
    verdicts = (general.slp_verdict, out["central_simple_modules"]["verdict"])
    if lef.CERTIFIED_YES in verdicts:
        out["verdict"] = lef.CERTIFIED_YES
    elif lef.CERTIFIED_NO in verdicts:
        out["verdict"] = lef.CERTIFIED_NO
    else:
        out["verdict"] = lef.UNDETERMINED
    warning = lef.slp_warning(a)
    if warning:
        out["warning"] = warning
    return out


GENERIC_NOTE = ("Statements about general linear forms and all-but-finitely-many lambda are established by the "
                "recorded seeded samples only; a certified-yes names a concrete witness, and no "
                "certified-no is ever derived from sampling.")


def run(job):
    """Run a job; returns the report dictionary.  Raises InputError / NilcommError."""
    a = build_algebra(job)
    z = resolve_form(job, a, "z") or a.form(a.ring.variables[-1])
    y = resolve_form(job, a, "y")
    if y is not None:
        lef._require_independent(a, y, z)
    report = {
        "tool": "nilcomm",
        "version": __version__,
        "job": job.to_dict(),
        "algebra": {**a.describe(), "sperner": a.sperner(), "cosperner": a.cosperner(),
                    "gorenstein": a.is_gorenstein(), "socle_dimension": a.socle_dimension()},
        "sampling": job.sampling.to_dict(),
        "notes": [GENERIC_NOTE],
    }
    if "jordan" in job.analyses:
        named = {"z": z, **({"y": y} if y is not None else {})}
        for name in job.forms:
            if name not in named:
                named[name] = resolve_form(job, a, name)
        report["jordan"] = {name: analyze_jordan(a, f, name) for name, f in named.items()}
    if "commutator" in job.analyses:
        report["commutator"] = analyze_commutator(a, z, y)
    if "csm" in job.analyses:
        report["csm"] = analyze_csm(a, z)
    if "gr" in job.analyses:
        report["gr"] = analyze_gr(a, z, y if y is not None else _first_order_zero_sample(a, z, job.sampling),
                                   job.sampling)
    general = None
    if "wlp" in job.analyses or "slp" in job.analyses:
        general = lef.general_form_analysis(a, job.sampling)
    if "wlp" in job.analyses:
        report["wlp"] = analyze_wlp(a, z, y, job.sampling, general)
    if "slp" in job.analyses:
        report["slp"] = analyze_slp(a, z, job.sampling, job.gorenstein, general)
    return report


def _first_order_zero_sample(a, z, sampling):
    gr_candidates = lef._independent_samples(a, z, sampling, "gr")
    return gr_candidates[0] if gr_candidates else None


# -- rendering --------------------------------------------------------------------------

def _table(rows, header):
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    fmt = "  ".join("{:<" + str(w) + "}" for w in widths)
    lines = [fmt.format(*header), fmt.format(*["-" * w for w in widths])]
    lines += [fmt.format(*[str(x) for x in r]) for r in rows]
    return "\n".join(lines)


def render_text(report):
    alg = report["algebra"]
    out = [
        f"nilcomm {report['version']} report for {report['job']['source']}",
        "",
        "Algebra",
        f"  ring       K[{', '.join(alg['variables'])}], characteristic {alg['characteristic']}",
        f"  ideal      ({', '.join(alg['generators'])})",
        f"  groebner   {len(alg['groebner_basis'])} elements, {alg['monomial_order']}",
        f"  hilbert    {tuple(alg['hilbert_function'])}, dimension {alg['dimension']}",
        f"  sperner    {alg['sperner']}    cosperner {alg['cosperner']}",
        f"  socle dim  {alg['socle_dimension']} ({'Gorenstein' if alg['gorenstein'] else 'not Gorenstein'})",
    ]
    s = report["sampling"]
    out.append(f"  sampling   seed {s['seed']}, lambda {s['lambdas']}, coefficients in "
               f"[-{s['coeff_bound']}, {s['coeff_bound']}], {s['samples']} samples")
    for name, j in report.get("jordan", {}).items():
        out += ["", f"Jordan type of multiplication by {j['form']}  ({name})",
                f"  T({','.join(map(str, j['jordan_type']))}) = {j['compact']}",
                f"  dual {tuple(j['dual'])}, rank {j['rank']}, dim A/({name}) = {j['quotient_dimension']} "
                f"with hilbert {tuple(j['quotient_hilbert'])}"]
        out += ["  " + line for line in j["diagram"].splitlines()]
    if "commutator" in report:
        c = report["commutator"]
        out += ["", "Commutator algebra of multiplication by z",
                f"  parameters       {c['parameter_count']}",
                f"  coarse blocks    {tuple(c['coarse_sizes'])}",
                f"  fine blocks (N1) {tuple(c['fine_sizes'])}"]
        if "phi_block_ranks" in c:
            out.append(f"  y = {c['y']}: rank G_i^f_i = {c['phi_block_ranks']}")
    if "csm" in report:
        rows = []
        for u, w in zip(report["csm"]["U"], report["csm"]["W"]):
            rows.append([u["name"], u["f"], u["dimension"], f"{tuple(u['hilbert'])} from degree {u['shift']}",
                         f"{tuple(w['hilbert'])} from degree {w['shift']}"])
        out += ["", f"Central simple modules of multiplication by {report['csm']['z']}",
                *("  " + l for l in _table(rows, ["module", "f", "dim", "U hilbert", "W hilbert"]).splitlines())]
    if "gr" in report:
        g = report["gr"]
        out += ["", f"Associated graded ring along ({g['z']})",
                f"  layer dimensions {tuple(g['layer_dimensions'])}",
                f"  Jordan type of z*  T({','.join(map(str, g['star_z_jordan_type']))})",
                f"  dim ker z*  {g['kernel_dimension_direct']} (direct) = "
                f"{g['kernel_dimension_by_layers']} (by layers)"]
        if "star_y_equals_truncation" in g:
            out.append(f"  y* equals coarse-diagonal truncation for y = {g['y']}: {g['star_y_equals_truncation']}")
        if "deformation" in g:
            d = g["deformation"]
            out.append(f"  generic rank of truncation + lambda z  {d['generic_truncated']} <= "
                       f"{d['generic_full']} of y + lambda z: {d['holds']}"
                       + ("" if d["generic_certified"] else " (generic rank not certified)"))
    if "wlp" in report:
        w = report["wlp"]
        cert = w["certificate"]
        out += ["", f"Weak Lefschetz property: {w['verdict']}",
                f"  general form  {w['general_form']['wlp_verdict']}, Jordan type "
                f"T({','.join(map(str, w['general_form']['jordan_type']))}), rank {w['general_form']['best_rank']}",
                f"  certificate   {cert['breakdown']} vs cosperner {cert['cosperner']}: {cert['verdict']}",
                f"  ranks of y + lambda z: {cert['lambda_ranks']}"]
        if cert["witness"] is not None:
            out.append(f"  witness coefficients {cert['witness']} (lambda = {cert['witness_lambda']})")
        out += ["  note: " + n for n in cert["notes"]]
    if "slp" in report:
        sl = report["slp"]
        csm = sl["central_simple_modules"]
        out += ["", f"Strong Lefschetz property: {sl['verdict']}",
                f"  general form            {sl['general_form_verdict']}",
                f"  central simple modules  {csm['verdict']}" + (f" ({csm['reason']})" if "reason" in csm else "")]
        if "warning" in sl:
            out.append(f"  warning: {sl['warning']}")
    out += ["", *("Note: " + n for n in report["notes"])]
    return "\n".join(out) + "\n"


def dump_json(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# -- subcommands -------------------------------------------------------------------------

def _override_sampling(job, args):
    s = job.sampling
    job.sampling = lef.SamplingPolicy(
        seed=args.seed if args.seed is not None else s.seed,
        lambdas=tuple(args.lambdas) if args.lambdas else s.lambdas,
        coeff_bound=args.coeff_bound if args.coeff_bound is not None else s.coeff_bound,
        samples=args.samples if args.samples is not None else s.samples,
    )
    if getattr(args, "gorenstein", "auto") != "auto":
        job.gorenstein = args.gorenstein == "yes"


def cmd_analyze(args):
    job = load_job(args.file)
    _override_sampling(job, args)
    report = run(job)
    text = render_text(report)
    sys.stdout.write(text)
    out_dir = Path(args.out) if args.out else Path(args.file).parent
    stem = Path(args.file).stem
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"{stem}.report.txt").write_text(text)
    (out_dir / f"{stem}.report.json").write_text(dump_json(report))
    return EXIT_OK


def cmd_jordan(args):
    job = load_job(args.file)
    a = build_algebra(job)
    f = resolve_form(job, a, args.form, args.form)
    info = analyze_jordan(a, f, args.form)
    if args.json:
        sys.stdout.write(dump_json(info))
    else:
        print(f"multiplication by {info['form']}: T({','.join(map(str, info['jordan_type']))}), dual {tuple(info['dual'])}, "
              f"rank {info['rank']}")
        print(info["diagram"])
    return EXIT_OK


def _label(k):
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[k % 26] + ("'" * (k // 26))


def render_pattern(pattern, positions=None):
    n = pattern.size
    cells = [["0"] * n for _ in range(n)]
    for (r, c), k in pattern.entry_classes.items():
        cells[r][c] = _label(k)
    if positions is not None:
        cells = [[cells[positions[r]][positions[c]] for c in range(n)] for r in range(n)]
    width = max(len(x) for row in cells for x in row)
    return "\n".join(" ".join(x.rjust(width) for x in row) for row in cells)


def cmd_commutator(args):
    t = _partition_arg(args.partition)
    pattern = comm.generic_pattern(t)
    print(f"{t}: dim C(J) = {pattern.parameter_count} = sum of min(n_i, n_j) = {comm.commutator_dimension(t)}")
    print(f"coarse block sizes {t.dual().parts}; fine block sizes {tuple(m for _, m in multiplicity_sequence(t))}")
    print("\ngeneric element (horizontal numbering):")
    print(render_pattern(pattern))
    inv = numbering_permutation(t).inverse().pi
    print("\nafter the hat transform (vertical numbering):")
    print(render_pattern(pattern, inv))
    rng = random.Random(args.seed)
    for k in range(args.random):
        m = pattern.random_instance(rng)
        mhat = comm.hat(m, t)
        dec = comm.block_decomposition(mhat, t)
        print(f"\nrandom instance {k + 1} (seed {args.seed}), hat:")
        print(mhat.pretty())
        print("fine blocks of N1: " + "; ".join(str(g.tolist()) for g in dec.G))
        print(f"nilpotent: {comm.is_nilpotent_via_blocks(m, t)}")
    return EXIT_OK


def cmd_diagram(args):
    t = _partition_arg(args.partition)
    print(render_young(t, args.numbering))
    return EXIT_OK


def _partition_arg(text):
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise InputError(f"--partition: {exc}") from None


def build_parser():
    p = argparse.ArgumentParser(prog="nilcomm", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"nilcomm {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the analyses of a job file and write reports")
    an.add_argument("file")
    an.add_argument("--out", help="directory for <stem>.report.txt/.json (default: next to the job file)")
    an.add_argument("--seed", type=int)
    an.add_argument("--lambda", dest="lambdas", type=int, nargs="+")
    an.add_argument("--coeff-bound", type=int)
    an.add_argument("--samples", type=int)
    an.add_argument("--gorenstein", choices=("auto", "yes", "no"), default="auto",
                    help="detect (auto) or assert the Gorenstein property for the SLP implication")
    an.set_defaults(func=cmd_analyze)

    jo = sub.add_parser("jordan", help="Jordan type of multiplication by a linear form")
    jo.add_argument("file")
    jo.add_argument("--form", default="z", help="a name from [forms] or linear text")
    jo.add_argument("--json", action="store_true")
    jo.set_defaults(func=cmd_jordan)

    co = sub.add_parser("commutator", help="generic element of C(J) and random instances")
    co.add_argument("--partition", required=True)
    co.add_argument("--random", type=int, default=0)
    co.add_argument("--seed", type=int, default=0)
    co.set_defaults(func=cmd_commutator)

    di = sub.add_parser("diagram", help="ASCII Young diagram")
    di.add_argument("--partition", required=True)
    di.add_argument("--numbering", choices=("h", "v"))
    di.set_defaults(func=cmd_diagram)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error [parse]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotArtinian as exc:
        print(f"error [not-artinian]: {exc}", file=sys.stderr)
        return EXIT_NOT_ARTINIAN
    except InternalInconsistency as exc:
        print(f"error [internal]: {exc} (this is a bug)", file=sys.stderr)
        return EXIT_INTERNAL
    except PreconditionViolated as exc:
        print(f"error [analysis]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NilcommError as exc:
        print(f"error [analysis]: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
