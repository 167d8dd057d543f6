"""The ``picardium`` command line.

Every command writes one JSON document ``{"manifest", "report"[, "error"]}``
to ``--out`` (or stdout).  Exit status: 0 when every certificate passed, 1 on a
failed certificate or a pipeline error, 2 on unreadable or invalid input.
"""
from __future__ import annotations

import sys
from pathlib import Path

import click

from . import __version__
from .algebra_objects import (
    algebra_from_json,
    algebra_to_json,
    alpha_family,
    build_Q,
    check_algebra,
    check_frobenius_special_symmetric,
    grading_automorphism,
)
from .bimodule_morita import (
    appendix_suite,
    fixed_algebra,
    induced_bimodule,
    psi_A,
    regular_bimodule,
    verify_main_theorem,
    verify_prop_recover_H,
    verify_thm_bijection,
    verify_thm_fixed_is_Q,
)
from .catalog import Catalog
from .cohomology import (
    InconsistentInput,
    SchemaError,
    SubgroupEmbedding,
    UnsupportedDegree,
    coboundary,
    cocycle_defect,
    restrict,
    solve_trivialisations,
    trivialisation_classes,
)
from .inputs import (
    ParseError,
    cochain_from_dict,
    context_from_dict,
    digest,
    group_from_dict,
    load_cochain,
    load_context,
    load_omega,
    load_subgroup,
    read_json,
    read_toml,
)
from .report import Certificate, Report, dumps, jsonable
from .scalars import ONE, RootOfUnity

__all__ = ["main", "cli"]

CONVENTIONS = {
    "bracketing": "left-nested tensor products; coherence isomorphisms inserted on composition",
    "associator": "(L_g L_h) L_k -> L_g (L_h L_k) is psi(g,h,k)^-1 with identity basis maps",
    "duality": "d = 1, b = psi(g,g^-1,g), dt = kappa(g), bt = (psi(g,g^-1,g) kappa(g))^-1",
    "composition": "Psi_A(alpha o beta) = Psi_A(alpha) (x)_A Psi_A(beta)",
}

INPUT_ERRORS = (ParseError, SchemaError, InconsistentInput, UnsupportedDegree)

# descriptive context for pipeline errors, keyed by exception class name
ERROR_ANCHORS = {
    "NotATrivialisation": "trivialisation: d omega = psi restricted to H",
    "NotAdmissible": "admissible subgroup",
    "ZeroDimension": "dim(Q) nonzero",
    "RepsNotClosed": "representatives closed under the tensor product over A",
    "BaseAlgebraUnqualified": "conditions on the base algebra",
    "NotInvertible": "Morita context",
    "NotAGroup": "fixed algebra",
    "NotCoalgebraAutomorphism": "fixed algebra",
    "NoUniqueIsomorphism": "bijection omega <-> alpha",
    "AlgebraNotSymmetricSpecialFrobenius": "tensor product over a symmetric special Frobenius algebra",
    "MissingCoalgebraData": "Frobenius property",
}


class Run:
    """Collects the manifest while a command loads its inputs."""

    def __init__(self, command: str):
        self.command = command
        self.inputs: dict = {}
        self.orders: dict = {}
        self.options: dict = {}
        self.catalog = "off"

    def file(self, role: str, path):
        if path is not None:
            self.inputs[role] = digest(path)
        return path

    def manifest(self) -> dict:
        return {
            "command": self.command,
            "inputs": dict(sorted(self.inputs.items())),
            "options": dict(sorted(self.options.items())),
            "orders": dict(sorted(self.orders.items())),
            "conventions": CONVENTIONS,
            "catalog": self.catalog,
            "toolchain": {"picardium": __version__, "python": "%d.%d" % sys.version_info[:2]},
        }


def _emit(out, doc: dict) -> None:
    text = dumps(doc)
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="ascii")


def _execute(run: Run, out, body) -> int:
    """Run ``body() -> Report`` and write the document; returns the exit status."""
    error = None
    report = Report(run.command)
    try:
        report = body()
        status = 0 if report.passed else 1
    except INPUT_ERRORS as exc:
        error = {"type": type(exc).__name__, "message": str(exc), "paper_anchor": "input validation"}
        status = 2
    except (ValueError, ArithmeticError, KeyError, TypeError) as exc:
        name = type(exc).__name__
        error = {"type": name, "message": str(exc), "paper_anchor": ERROR_ANCHORS.get(name, "pipeline")}
        status = 1
    doc = {"manifest": run.manifest(), "report": report.to_dict()}
    if error is not None:
        doc["error"] = error
    _emit(out, doc)
    if error is not None:
        click.echo(f"picardium {run.command}: {error['type']}: {error['message']}", err=True)
    else:
        n = len(report.failures())
        click.echo(f"picardium {run.command}: {len(report.certificates) - n} passed, {n} failed", err=True)
    return status


def _context_and_subgroup(run: Run, ctx_path, sub_path, role: str = "ctx"):
    ctx = load_context(run.file(role, ctx_path)) if ctx_path else None
    if sub_path is None:
        raise SchemaError("--subgroup is required")
    emb = load_subgroup(run.file("subgroup", sub_path), ctx.group if ctx is not None else None)
    if ctx is None:
        from .pointed_category import CategoryContext

        ctx = CategoryContext(emb.amb)
    run.orders["N"] = ctx.psi.order
    return ctx, emb


def _omega_or_first(run: Run, ctx, emb, omega_path):
    if omega_path is not None:
        w = load_omega(run.file("omega", omega_path), emb)
        if coboundary(w) != restrict(ctx.psi, emb):
            from .algebra_objects import NotATrivialisation

            raise NotATrivialisation("d omega differs from psi restricted to H")
    else:
        sols = solve_trivialisations(ctx.psi, emb).solutions
        if not sols:
            from .bimodule_morita import NotAdmissible

            raise NotAdmissible("psi admits no trivialisation on H")
        w = sols[0]
        run.options["omega"] = "first trivialisation"
    run.orders["N'"] = w.order
    return w


common_out = click.option("--out", type=click.Path(dir_okay=False), default=None,
                          help="Write the JSON report here instead of stdout.")


@click.group()
@click.version_option(__version__, prog_name="picardium")
def cli():
    """Exact checks for algebras in pointed fusion categories and their Picard groups."""


@cli.command("check-cocycle")
@click.argument("file", type=click.Path())
@common_out
def check_cocycle_cmd(file, out):
    """Normalization and the cocycle identity for a cochain file."""
    run = Run("check-cocycle")

    def body():
        c = load_cochain(run.file("cochain", file))
        run.orders["N"] = c.order
        rep = Report("cocycle check")
        rep.data["degree"] = c.degree
        rep.data["group"] = c.group.name
        d = cocycle_defect(c)
        w = None
        if d is not None:
            t, lhs, rhs = d
            w = {"tuple": list(t), "lhs": RootOfUnity(c.order, lhs).to_json(),
                 "rhs": RootOfUnity(c.order, rhs).to_json()}
        rep.add("cocycle identity", "cocycle condition", d is None, w)
        return rep

    return _execute(run, out, body)


@cli.command("trivialise")
@click.option("--psi", "psi_path", required=True, type=click.Path(), help="Context or 3-cochain file.")
@click.option("--subgroup", "sub_path", required=True, type=click.Path())
@click.option("--order", type=int, default=None, help="Solver order N' (default lcm(N, |H|^2)).")
@click.option("--no-cache", is_flag=True, help="Neither read nor write the catalog.")
@common_out
def trivialise_cmd(psi_path, sub_path, order, no_cache, out):
    """All normalized omega on H with d omega = psi|_H, with classes and admissibility."""
    run = Run("trivialise")
    if order is not None:
        run.options["order"] = order

    def body():
        ctx, emb = _context_and_subgroup(run, psi_path, sub_path, role="psi")
        key = {
            "group": [list(r) for r in ctx.group.mul],
            "psi": ctx.psi.to_dict(),
            "pivot": None if ctx.pivot is None else ctx.pivot.to_dict(),
            "subgroup": list(emb.inject),
            "order": order,
        }
        cat = None if no_cache else Catalog()
        hit = cat.get(key) if cat is not None else None
        if hit is not None:
            run.catalog = "hit"
            run.orders.update(hit["orders"])
            rep = Report(hit["title"], data=hit["data"])
            for c in hit["certificates"]:
                rep.certificates.append(Certificate(c["claim"], c["paper_anchor"], c["status"], c["witness"], True))
            return rep
        rep = _trivialise_report(ctx, emb, order, run)
        if cat is not None:
            value = rep.to_dict()
            value["orders"] = {k: v for k, v in run.orders.items() if k != "N"}
            run.catalog = "stored" if cat.put(key, value) else "present"
        return rep

    return _execute(run, out, body)


def _trivialise_report(ctx, emb, order, run: Run) -> Report:
    ts = solve_trivialisations(ctx.psi, emb, order)
    run.orders["N'"] = ts.order
    psi_H = restrict(ctx.psi, emb)
    rep = Report("trivialisations")
    bad = [w.to_dict() for w in ts.solutions if coboundary(w) != psi_H.lift(w.order)]
    rep.add("every solution satisfies d omega = psi|_H", "trivialisation", not bad, {"failures": bad[:3]})
    rep.add("existence stable at twice the order", "order stabilization", ts.stable,
            {"order": ts.order, "count_at_double": ts.count_at_double})
    ncls = 0
    if ts.solutions:
        classes, info = trivialisation_classes(ts.solutions, emb, return_report=True)
        ncls = len(classes)
        run.orders["N''"] = info["order"]
        rep.add("class count stable at twice the order", "torsor over H^2(H, k^x)", info["stable"],
                {"order": info["order"], "count_at_double": info["count_at_double"]})
    dims_one = all(ctx.dims(ctx.simple(g)) == (ONE, ONE) for g in emb.inject)
    rep.data.update({
        "count": len(ts.solutions),
        "classes": ncls,
        "admissible": bool(ts.solutions) and dims_one,
        "dims_one": dims_one,
        "subgroup": [emb.amb.labels[g] for g in emb.inject],
        "solutions": [w.to_dict() for w in ts.solutions],
    })
    return rep


@cli.command("build-q")
@click.option("--subgroup", "sub_path", required=True, type=click.Path())
@click.option("--omega", "omega_path", required=True, type=click.Path())
@click.option("--ctx", "ctx_path", type=click.Path(), default=None, help="Context file (default: psi trivial).")
@click.option("--emit-algebra", type=click.Path(dir_okay=False), default=None,
              help="Also write the algebra file for check-algebra.")
@common_out
def build_q_cmd(sub_path, omega_path, ctx_path, emit_algebra, out):
    """Build Q(H, omega) and certify its Frobenius structure."""
    run = Run("build-q")

    def body():
        ctx, emb = _context_and_subgroup(run, ctx_path, sub_path)
        w = load_omega(run.file("omega", omega_path), emb)
        run.orders["N'"] = w.order
        Q = build_Q(emb, w, ctx)
        rep = Report("Q(H, omega)")
        rep.extend(check_frobenius_special_symmetric(Q))
        rep.data.update({"beta_A": Q.beta_A, "beta_1": Q.beta_1, "symmetric": Q.flags.get("symmetric"),
                         "d_omega_equals_psi": coboundary(w) == restrict(ctx.psi, emb)})
        doc = algebra_to_json(Q)
        from .inputs import context_to_dict

        doc["context"] = context_to_dict(ctx)
        rep.data["algebra"] = doc
        if emit_algebra:
            Path(emit_algebra).write_text(dumps(jsonable(doc)), encoding="ascii")
        return rep

    return _execute(run, out, body)


@cli.command("check-algebra")
@click.argument("file", type=click.Path())
@click.option("--ctx", "ctx_path", type=click.Path(), default=None,
              help="Context file, when the algebra file has no 'context' entry.")
@common_out
def check_algebra_cmd(file, ctx_path, out):
    """Per-axiom report (and beta values) for an algebra file."""
    run = Run("check-algebra")

    def body():
        data = read_json(run.file("algebra", file))
        if not isinstance(data, dict):
            raise SchemaError("algebra file must hold a JSON object")
        if "context" in data:
            ctx = context_from_dict(data["context"])
        elif ctx_path:
            ctx = load_context(run.file("ctx", ctx_path))
        else:
            raise SchemaError("algebra file has no 'context'; pass --ctx")
        run.orders["N"] = ctx.psi.order
        a = algebra_from_json(ctx, data)
        if a.has_coalgebra:
            rep = check_frobenius_special_symmetric(a)
            rep.data["beta_A"], rep.data["beta_1"] = a.beta_A, a.beta_1
        else:
            rep = check_algebra(a)
        rep.title = "algebra check"
        return rep

    return _execute(run, out, body)


@cli.command("fixed-algebra")
@click.option("--ctx", "ctx_path", type=click.Path(), default=None)
@click.option("--subgroup", "sub_path", required=True, type=click.Path())
@click.option("--omega", "omega_path", type=click.Path(), default=None)
@common_out
def fixed_algebra_cmd(ctx_path, sub_path, omega_path, out):
    """The fixed algebra of the alpha family on A(H) = Q (x) Q^v."""
    run = Run("fixed-algebra")

    def body():
        ctx, emb = _context_and_subgroup(run, ctx_path, sub_path)
        w = _omega_or_first(run, ctx, emb, omega_path)
        fam = alpha_family(w, emb, ctx)
        check_frobenius_special_symmetric(fam.A)
        res = fixed_algebra(fam.A, [fam.alpha[h] for h in sorted(fam.alpha)])
        rep = res.report
        rep.data["dim"] = ctx.dim(res.algebra.carrier)
        rep.data["mult"] = list(ctx.mult(res.algebra.carrier))
        rep.data["algebra"] = algebra_to_json(res.algebra)
        return rep

    return _execute(run, out, body)


@cli.command("dims")
@click.option("--ctx", "ctx_path", required=True, type=click.Path())
@click.option("--object", "obj_path", required=True, type=click.Path(), help='JSON {"mult": {"<g>": n}}.')
@common_out
def dims_cmd(ctx_path, obj_path, out):
    """Left and right dimensions of an object."""
    run = Run("dims")

    def body():
        ctx = load_context(run.file("ctx", ctx_path))
        run.orders["N"] = ctx.psi.order
        data = read_json(run.file("object", obj_path))
        if not isinstance(data, dict) or not isinstance(data.get("mult"), dict):
            raise SchemaError("object file needs a 'mult' table")
        X = ctx.obj(data["mult"])
        dl, dr = ctx.dims(X)
        rep = Report("dimensions")
        rep.data.update({"object": X.to_json(), "dim_l": dl.to_json(), "dim_r": dr.to_json(),
                         "spherical": dl == dr})
        return rep

    return _execute(run, out, body)


THEOREMS = ("prop45", "thm413", "thm414", "thm56", "appendix")


@cli.command("verify")
@click.option("--theorem", required=True, type=click.Choice(THEOREMS))
@click.option("--ctx", "ctx_path", required=True, type=click.Path())
@click.option("--subgroup", "sub_path", type=click.Path(), default=None)
@click.option("--omega", "omega_path", type=click.Path(), default=None)
@click.option("--algebra", "alg_path", type=click.Path(), default=None, help="Desk instance file for thm56.")
@click.option("--section", type=click.Choice(["classes", "all", "none"]), default="classes",
              help="thm413: where the section identity is certified.")
@click.option("--limit", type=int, default=None, help="thm413: only the first N trivialisations.")
@click.option("--pentagon", type=int, default=2, help="appendix: bimodules that also get the pentagon.")
@common_out
def verify_cmd(theorem, ctx_path, sub_path, omega_path, alg_path, section, limit, pentagon, out):
    """Run one theorem pipeline and certify every step."""
    run = Run(f"verify {theorem}")
    if theorem == "thm413":
        run.options.update({"section": section, "limit": limit})
    if theorem == "appendix":
        run.options["pentagon"] = pentagon

    def body():
        if theorem == "thm56":
            return _verify_thm56(run, ctx_path, alg_path, omega_path)
        ctx, emb = _context_and_subgroup(run, ctx_path, sub_path)
        if theorem == "thm413":
            rep = verify_thm_bijection(emb, ctx, section=section, limit=limit)
            run.orders["N''"] = rep.data.get("class_order")
            return rep
        w = _omega_or_first(run, ctx, emb, omega_path)
        if theorem == "prop45":
            return verify_prop_recover_H(emb, w, ctx)
        if theorem == "thm414":
            return verify_thm_fixed_is_Q(emb, w, ctx)
        return _appendix(ctx, emb, w, pentagon)

    return _execute(run, out, body)


def _appendix(ctx, emb, w, pentagon: int) -> Report:
    Q = build_Q(emb, w, ctx)
    check_frobenius_special_symmetric(Q)
    fam = alpha_family(w, emb, ctx, pointed=Q.extra["pointed"])
    A = fam.A
    check_frobenius_special_symmetric(A)
    mods = [regular_bimodule(Q), regular_bimodule(A)] + [psi_A(A, fam.alpha[h]) for h in sorted(fam.alpha)]
    return appendix_suite(mods, pentagon=pentagon)


def _verify_thm56(run: Run, ctx_path, alg_path, omega_path) -> Report:
    """Desk file: ``K`` (elements), optional ``[tau]``, ``[H]`` group, ``[[reps]]``.

    Each rep has ``kind`` "regular", "induced" (with ``grade``, an element of
    the ambient group) or "twist" (with a ``[reps.character]`` 1-cochain on K).
    """
    ctx = load_context(run.file("ctx", ctx_path))
    run.orders["N"] = ctx.psi.order
    if alg_path is None:
        raise SchemaError("thm56 needs --algebra")
    data = read_toml(run.file("algebra", alg_path))
    K = data.get("K")
    if not isinstance(K, list) or not all(isinstance(x, int) and 0 <= x < ctx.group.size for x in K):
        raise SchemaError("'K' must list elements of the context's group")
    emb = SubgroupEmbedding.from_elements(ctx.group, K)
    tau = cochain_from_dict(emb.sub, data.get("tau", {}), degree=2)
    if coboundary(tau) != restrict(ctx.psi, emb):
        raise SchemaError("tau does not trivialise psi on K")
    A = build_Q(emb, tau, ctx)
    if "H" not in data:
        raise SchemaError("missing [H] group table")
    H = group_from_dict(data["H"])
    specs = data.get("reps")
    if not isinstance(specs, list) or len(specs) != H.size:
        raise SchemaError(f"need one [[reps]] entry per element of H ({H.size})")
    reps = []
    for k, spec in enumerate(specs):
        kind = spec.get("kind")
        if kind == "regular":
            reps.append(regular_bimodule(A))
        elif kind == "induced":
            g = spec.get("grade")
            if not isinstance(g, int) or not 0 <= g < ctx.group.size:
                raise SchemaError(f"reps[{k}]: 'grade' must be an element of the group")
            reps.append(induced_bimodule(A, g))
        elif kind == "twist":
            chi = cochain_from_dict(emb.sub, spec.get("character", {}), degree=1)
            reps.append(psi_A(A, grading_automorphism(A, chi)))
        else:
            raise SchemaError(f"reps[{k}]: unknown kind {kind!r}")
    omega = None
    if omega_path is not None:
        omega = cochain_from_dict(H, read_toml(run.file("omega", omega_path)), degree=2)
    rep = verify_main_theorem(A, reps, H, omega=omega)
    run.orders["N'"] = rep.data["omega"]["order"]
    return rep


@cli.group("catalog")
def catalog_grp():
    """Inspect the catalog of solved trivialisation problems (PICARDIUM_CACHE)."""


@catalog_grp.command("list")
def catalog_list():
    cat = Catalog()
    rows = []
    for key, entry, ok in cat.entries():
        if not ok:
            rows.append({"key": key, "valid": False})
            continue
        d = entry["value"]["data"]
        rows.append({"key": key, "valid": True, "group_order": len(entry["key"]["group"]),
                     "subgroup": d.get("subgroup"), "count": d.get("count"), "classes": d.get("classes"),
                     "admissible": d.get("admissible")})
    click.echo(dumps({"location": str(cat.root), "entries": rows}), nl=False)
    return 0


@catalog_grp.command("gc")
@click.option("--all", "everything", is_flag=True, help="Remove every entry, not only invalid ones.")
def catalog_gc(everything):
    removed = Catalog().gc(everything)
    click.echo(dumps({"removed": removed}), nl=False)
    return 0


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="picardium", standalone_mode=False)
    except click.exceptions.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except click.exceptions.Exit as exc:
        return exc.exit_code
    return rv if isinstance(rv, int) else 0
