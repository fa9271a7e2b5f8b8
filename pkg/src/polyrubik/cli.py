"""``polyrubik`` command line: JSON on stdout, logs on stderr.

Exit codes: 0 success, 1 I/O or parameter error, 2 validation failure,
3 verification failure, 4 target not in the group.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import builders
from .characterize import hosohedron_order, hypercube_order, polygon_nonrot_order, simplex_order
from .checks import CHECKS, builtin_suite, identify_family, run_check
from .face_lattice import FaceLattice, LatticeError, dual, flags, validate_diamond, validate_prepolytope
from .permgroup import NotMember, Permutation, format_word, invert_word
from .rubik import move_generators, rubik_construction, rubik_group
from .solver import scramble, solve_generic, solve_simplex
from .symmetry import automorphism_group, is_regular, rotation_subgroup, schlafli

log = logging.getLogger("polyrubik")


class CliError(Exception):
    """Raised for I/O and parameter problems; maps to exit code 1."""


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _max_domain() -> int:
    raw = os.environ.get("POLYRUBIK_MAX_DOMAIN", "5000")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"POLYRUBIK_MAX_DOMAIN must be an integer, got {raw!r}") from None


def _read_text(path):
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def _write_text(path, text) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise CliError(f"cannot write {path}: {e.strerror}") from None


def _load(path) -> FaceLattice:
    text = _read_text(path)
    try:
        return FaceLattice.from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise CliError(f"malformed lattice JSON: {e}") from None


def _stickers(L: FaceLattice):
    S = rubik_construction(L)
    cap = _max_domain()
    if len(S) > cap:
        raise CliError(f"sticker domain {len(S)} exceeds POLYRUBIK_MAX_DOMAIN={cap}")
    return S


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise CliError(f"--{name} is required here")
    return v


# -- commands -----------------------------------------------------------------------

def cmd_build(args) -> int:
    fam = args.family
    if fam == "simplex":
        L = builders.simplex(_need(args, "n"))
    elif fam == "hypercube":
        L = builders.hypercube(_need(args, "n"))
    elif fam == "polygon":
        L = builders.polygon(_need(args, "k"))
    elif fam == "hosotope":
        L = builders.hosotope(_load(args.inp))
    elif fam == "ditope":
        L = builders.ditope(_load(args.inp))
    elif fam == "dual":
        L = dual(_load(args.inp))
    else:
        L = _load(args.inp)
    text = L.to_json() + "\n"
    if args.out:
        _write_text(args.out, text)
        log.info("wrote %s (%d faces)", args.out, L.num_faces)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    try:
        L = _load(args.inp)
    except LatticeError as e:
        _emit({"ok": False, "violations": [[type(e).__name__, str(e)]]})
        return 2
    pre = validate_prepolytope(L)
    dia = validate_diamond(L)
    violations = pre.to_dict()["violations"] + dia.to_dict()["violations"]
    _emit({"ok": not violations, "violations": violations})
    return 0 if not violations else 2


def cmd_info(args) -> int:
    L = _load(args.inp)
    out = {"dim": L.dim, "f_vector": L.f_vector(), "flags": len(flags(L))}
    regular = is_regular(L)
    out["regular"] = regular
    if regular:
        out["automorphism_order"] = automorphism_group(L).order
        out["rotation_order"] = rotation_subgroup(L).order
        out["schlafli"] = schlafli(L)
    else:
        out["automorphism_order"] = out["rotation_order"] = out["schlafli"] = None
    family, param = identify_family(L)
    out["family"] = family
    out["parameter"] = param
    _emit(out)
    return 0


def formula_order(L: FaceLattice, rotational: bool) -> int:
    """Closed-form order for the built-in families; CliError if none applies."""
    family, k = identify_family(L)
    if rotational:
        if family == "simplex" and k >= 3:
            return simplex_order(k)
        if family == "hypercube" and k >= 3:
            return hypercube_order(k)
        if family == "polygon":
            return 1
    else:
        if family == "polygon" and k >= 3:
            return polygon_nonrot_order(k)
        if family == "hosohedron" and k >= 3:
            return hosohedron_order(k)
    mode = "rot" if rotational else "nonrot"
    raise CliError(f"no closed-form order for family {family} in mode {mode}")


def cmd_order(args) -> int:
    L = _load(args.inp)
    rotational = args.mode == "rot"
    t = time.perf_counter()
    if args.method == "formula":
        order = formula_order(L, rotational)
    else:
        S = _stickers(L)
        order = rubik_group(S, rotational).order
    log.info("%s order in %.2fs", args.method, time.perf_counter() - t)
    _emit({"mode": args.mode, "method": args.method, "order": order})
    return 0


def cmd_verify(args) -> int:
    if args.check == "all" and args.inp is None:
        results = builtin_suite(args.samples, args.seed)
    else:
        L = _load(args.inp)
        names = CHECKS if args.check == "all" else (args.check,)
        results = []
        for name in names:
            try:
                results.append(run_check(name, L, args.samples, args.seed))
            except ValueError as e:
                if args.check != "all":
                    raise CliError(str(e)) from None
                log.info("skipping %s: %s", name, e)
    for r in results:
        log.info("%s %s %s", "PASS" if r["ok"] else "FAIL", r["check"], r.get("subject", ""))
    ok = all(r["ok"] for r in results)
    _emit({"ok": ok, "results": results})
    return 0 if ok else 3


def cmd_scramble(args) -> int:
    L = _load(args.inp)
    S = _stickers(L)
    G = move_generators(S)
    if not G.names:
        raise CliError("this polytope has no nontrivial moves")
    rec = scramble(G, args.len, args.seed)
    out = rec.to_dict()
    out["state"] = S.state(rec.perm)
    _emit(out)
    return 0


def _scrambled_perm(S, data) -> Permutation:
    if isinstance(data, dict):
        if "perm" in data:
            p = Permutation(data["perm"])
        elif "state" in data:
            p = S.perm_from_state(data["state"])
        else:
            raise CliError("scramble JSON needs a 'perm' or 'state' field")
    elif isinstance(data, list):
        p = S.perm_from_state(data)
    else:
        raise CliError("unrecognized scramble JSON")
    if p.degree != len(S):
        raise CliError(f"state has {p.degree} stickers, puzzle has {len(S)}")
    return p


def cmd_solve(args) -> int:
    L = _load(args.inp)
    S = _stickers(L)
    text = _read_text(args.state)
    try:
        data = json.loads(text)
        p = _scrambled_perm(S, data)
    except (json.JSONDecodeError, ValueError) as e:
        raise CliError(f"bad scramble input: {e}") from None
    target = p.inverse()
    t = time.perf_counter()
    if args.method == "inductive":
        family, _ = identify_family(L)
        if family != "simplex":
            raise CliError("the inductive solver handles simplices only")
        word = solve_simplex(S, target)
    else:
        word = solve_generic(rubik_group(S), target)
    log.info("solved in %.2fs, %d moves", time.perf_counter() - t, len(word))
    G = move_generators(S)
    verified = None
    if args.verify:
        verified = (G.evaluate(word) * p).is_identity()
        if not verified:
            _emit({"ok": False, "length": len(word)})
            return 3
    if args.out:
        _write_text(args.out, format_word(word))
    _emit({"ok": True, "method": args.method, "length": len(word), "verified": verified,
           "word": [[n, bool(i)] for n, i in word],
           "inverse_word": [[n, bool(i)] for n, i in invert_word(word)]})
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    ap = argparse.ArgumentParser(prog="polyrubik", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="emit a lattice as JSON")
    p.add_argument("family", choices=["simplex", "hypercube", "polygon", "hosotope", "ditope", "dual", "file"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--in", dest="inp")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", parents=[common], help="check the polytope axioms")
    p.add_argument("--in", dest="inp")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", parents=[common], help="face counts, flags, symmetry orders")
    p.add_argument("--in", dest="inp")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("order", parents=[common], help="order of the Rubik's group")
    p.add_argument("--in", dest="inp")
    p.add_argument("--mode", choices=["rot", "nonrot"], default="rot")
    p.add_argument("--method", choices=["engine", "formula"], default="engine")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("verify", parents=[common], help="run a named property suite")
    p.add_argument("check", choices=list(CHECKS) + ["all"])
    p.add_argument("--in", dest="inp")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scramble", parents=[common], help="random move word and resulting state")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--len", type=int, default=30)
    p.set_defaults(func=cmd_scramble)

    p = sub.add_parser("solve", parents=[common], help="word returning a scrambled state to the identity")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--state", help="scramble JSON (default: stdin)")
    p.add_argument("--method", choices=["generic", "inductive"], default="generic")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", help="write the solving word here")
    p.set_defaults(func=cmd_solve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except NotMember as e:
        log.error("%s", e)
        _emit({"ok": False, "error": "NotMember", "message": str(e)})
        return 4
    except (CliError, builders.BadParameter, builders.InvalidBase, LatticeError, ValueError) as e:
        log.error("%s", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
