"""Command-line frontend.

Subcommands operate on system files (see sysfile); boolean mode is inferred
from the file header.  Exit status: 0 success/separating, 1 fail outcome,
2 usage, parse, or validation error.
"""

import argparse
import functools
import json
import sys

from .boolring import (
    BOOL_OPTIMIZED,
    BOOL_OPTIMIZED_FIELD,
    BOOL_PLAIN,
    augment_with_indeterminate_products,
    bool_check_separating,
    bool_coherent_tuple,
    bool_find_separating_tuple,
    boolean_ring_of,
    sbox_graph_points,
    squarefree_normalize,
    representative,
    vanishing_ideal_degree_bounded,
)
from .orderings import MatrixOrdering, is_term_ordering_matrix
from .poly import FIELD_F2, PolySystem, Polynomial, format_polynomial, make_ring
from .sepcheck import (
    EXT_DELETED,
    EXT_UNDELETED,
    check_separating,
    check_separating_optimized,
    scan_subsets,
)
from .sepextract import (
    NoRowWithLeadingTerm,
    OptimizedCheckFailed,
    SeparatingTuple,
    coherent_tuple,
    compatible_ordering,
    eliminate,
    find_separating_tuple,
    find_separating_tuple_tracked,
)
from .sysfile import (
    SysFileError,
    format_points,
    format_system,
    load_ordering_matrix,
    load_points,
    load_system,
)


def _weights_line(weights):
    return "W = (" + ", ".join(str(w) for w in weights) + ")"


def _weights_json(weights):
    return None if weights is None else [str(w) for w in weights]


def _parse_z(system, spec):
    names = [nm.strip() for nm in spec.split(",") if nm.strip()]
    if not names:
        raise ValueError("empty Z specification")
    return system.z_indices(names), tuple(names)


def _bool_mode(args):
    if getattr(args, "boolean_field_ideal", False):
        return BOOL_OPTIMIZED_FIELD
    if args.optimized:
        return BOOL_OPTIMIZED
    return BOOL_PLAIN


_EXTENSIONS = {"deleted": EXT_DELETED, "undeleted": EXT_UNDELETED}


def _extension(args):
    return _EXTENSIONS[getattr(args, "extension", "deleted")]


def _check_flags(system, args):
    """Validate flag combinations against the loaded system."""
    if not system.ring.boolean:
        if getattr(args, "boolean_field_ideal", False):
            raise ValueError("--boolean-field-ideal requires a boolean-mode system")
        if getattr(args, "augment_products", False):
            raise ValueError("--augment-products requires a boolean-mode system")
    if getattr(args, "extension", "deleted") != "deleted":
        optimized = args.optimized or getattr(args, "boolean_field_ideal", False)
        if not optimized:
            raise ValueError("--extension requires --optimized or "
                             "--boolean-field-ideal")


def _maybe_augment(system, z, args):
    if getattr(args, "augment_products", False):
        return augment_with_indeterminate_products(system, z)
    return system


def _run_check(system, z, args):
    if system.ring.boolean:
        return bool_check_separating(system, z, mode=_bool_mode(args),
                                     extension=_extension(args))
    if args.optimized:
        return check_separating_optimized(system, z, extension=_extension(args))
    return check_separating(system, z)


def _extract_tuple(system, z, args):
    """Produce a SeparatingTuple along the path selected by the flags."""
    matrix_path = getattr(args, "ordering_matrix", None)
    if matrix_path:
        if args.optimized:
            raise ValueError("--ordering-matrix and --optimized are exclusive")
        rows = load_ordering_matrix(matrix_path, system.ring.nvars)
        if not is_term_ordering_matrix(rows):
            raise ValueError("matrix does not define a term ordering")
        sigma = MatrixOrdering(rows)
        if system.ring.boolean:
            reps = PolySystem(system.ring.plain(),
                              [representative(g) for g in system.gens if g])
            sep = find_separating_tuple(reps, z, sigma)
            bring = boolean_ring_of(system.ring)
            entries = [(k, squarefree_normalize(Polynomial(bring, dict(f.coeffs))))
                       for k, f in sep.entries]
            return SeparatingTuple(entries, sigma)
        return find_separating_tuple(system, z, sigma)
    if system.ring.boolean:
        outcome = _run_check(system, z, args)
        if not outcome.ok:
            return None
        return bool_find_separating_tuple(system, z, outcome,
                                          extension=_extension(args))
    if args.optimized:
        return find_separating_tuple_tracked(system, z,
                                             extension=_extension(args))
    outcome = check_separating(system, z)
    if not outcome.ok:
        return None
    sigma = compatible_ordering(outcome.weights, z)
    sep = find_separating_tuple(system, z, sigma)
    return SeparatingTuple(sep.entries, sigma, weights=outcome.weights)


def _emit(args, doc, human):
    if args.json:
        print(json.dumps(doc))
    elif human:
        print("\n".join(human))


def cmd_check(args):
    system = load_system(args.file)
    _check_flags(system, args)
    z, z_names = _parse_z(system, args.z)
    system = _maybe_augment(system, z, args)
    outcome = _run_check(system, z, args)
    doc = {
        "command": "check",
        "z": list(z_names),
        "mode": outcome.mode,
        "ok": outcome.ok,
        "weights": _weights_json(outcome.weights if outcome.ok else None),
        "reason": outcome.reason or None,
    }
    _emit(args, doc, [_weights_line(outcome.weights) if outcome.ok else "FAIL"])
    return 0 if outcome.ok else 1


def _entry_lines(entries, ring):
    return [f"f({ring.names[k]}) = {format_polynomial(f)}" for k, f in entries]


def _entry_json(entries, ring):
    return [{"z": ring.names[k], "poly": format_polynomial(f)} for k, f in entries]


def cmd_extract(args):
    system = load_system(args.file)
    _check_flags(system, args)
    z, z_names = _parse_z(system, args.z)
    system = _maybe_augment(system, z, args)
    sep = _extract_tuple(system, z, args)
    if sep is None:
        _emit(args, {"command": "extract", "z": list(z_names), "ok": False},
              ["FAIL"])
        return 1
    doc = {
        "command": "extract",
        "z": list(z_names),
        "ok": True,
        "weights": _weights_json(sep.weights),
        "entries": _entry_json(sep.entries, system.ring),
    }
    human = []
    if sep.weights is not None:
        human.append(_weights_line(sep.weights))
    human.extend(_entry_lines(sep.entries, system.ring))
    _emit(args, doc, human)
    return 0


def _coherent_of(system, sep):
    if system.ring.boolean:
        return bool_coherent_tuple(sep)
    return coherent_tuple(sep)


def cmd_coherent(args):
    system = load_system(args.file)
    _check_flags(system, args)
    z, z_names = _parse_z(system, args.z)
    system = _maybe_augment(system, z, args)
    sep = _extract_tuple(system, z, args)
    if sep is None:
        _emit(args, {"command": "coherent", "z": list(z_names), "ok": False},
              ["FAIL"])
        return 1
    coh = _coherent_of(system, sep)
    doc = {
        "command": "coherent",
        "z": list(z_names),
        "ok": True,
        "entries": _entry_json(coh.entries, system.ring),
    }
    _emit(args, doc, _entry_lines(coh.entries, system.ring))
    return 0


def cmd_eliminate(args):
    system = load_system(args.file)
    _check_flags(system, args)
    z, z_names = _parse_z(system, args.z)
    augmented = _maybe_augment(system, z, args)
    sep = _extract_tuple(augmented, z, args)
    if sep is None:
        _emit(args, {"command": "eliminate", "z": list(z_names), "ok": False},
              ["FAIL"])
        return 1
    coh = _coherent_of(augmented, sep)
    result = eliminate(system, coh)
    small = result.system
    doc = {
        "command": "eliminate",
        "z": list(z_names),
        "ok": True,
        "vars": list(small.ring.names),
        "polys": [format_polynomial(g) for g in small.gens],
    }
    _emit(args, doc, [format_system(small).rstrip("\n")])
    return 0


def _bool_scan_check(system, z, mode, augment, extension):
    if augment:
        system = augment_with_indeterminate_products(system, z)
    return bool_check_separating(system, z, mode=mode, extension=extension)


def _plain_scan_check(system, z, optimized, extension):
    if optimized:
        return check_separating_optimized(system, z, extension=extension)
    return check_separating(system, z)


def cmd_scan(args):
    system = load_system(args.file)
    _check_flags(system, args)
    if args.max_size < 0:
        raise ValueError("--max-size must be >= 0")
    if args.jobs < 1:
        raise ValueError("--jobs must be >= 1")
    pool, pool_names = _parse_z(system, args.pool)
    if system.ring.boolean:
        check = functools.partial(_bool_scan_check, mode=_bool_mode(args),
                                  augment=args.augment_products,
                                  extension=_extension(args))
    else:
        check = functools.partial(_plain_scan_check, optimized=args.optimized,
                                  extension=_extension(args))
    results = scan_subsets(system, pool, args.max_size, check=check,
                           jobs=args.jobs)
    names = system.ring.names
    human = []
    rows = []
    successes = 0
    for subset, outcome in results:
        label = ",".join(names[k] for k in subset)
        ok = bool(outcome.ok)
        successes += ok
        human.append(f"{label}: " +
                     (_weights_line(outcome.weights) if ok else "FAIL"))
        rows.append({"z": [names[k] for k in subset], "ok": ok,
                     "weights": _weights_json(outcome.weights if ok else None)})
    human.append(f"successes: {successes}/{len(results)}")
    doc = {
        "command": "scan",
        "pool": list(pool_names),
        "max_size": args.max_size,
        "results": rows,
        "successes": successes,
        "total": len(results),
    }
    _emit(args, doc, human)
    return 0 if successes == len(results) else 1


def cmd_points_ideal(args):
    points = load_points(args.file)
    if args.degree < 0:
        raise ValueError("--degree must be >= 0")
    polys = vanishing_ideal_degree_bounded(points, args.degree)
    if polys:
        ring = polys[0].ring
    else:
        ring = make_ring(len(points[0]), FIELD_F2, boolean=True)
    text = format_system(PolySystem(ring, polys)).rstrip("\n")
    doc = {
        "command": "points-ideal",
        "degree": args.degree,
        "vars": list(ring.names),
        "polys": [format_polynomial(g) for g in polys],
        "count": len(polys),
    }
    _emit(args, doc, [text])
    return 0


def cmd_sbox_points(args):
    points = sbox_graph_points()
    doc = {"command": "sbox-points", "points": list(points)}
    _emit(args, doc, [format_points(points).rstrip("\n")])
    return 0


def _add_common(sub, z_required=True):
    sub.add_argument("file", help="system file")
    if z_required:
        sub.add_argument("--z", required=True,
                         help="comma-separated indeterminate names")
    sub.add_argument("--optimized", action="store_true",
                     help="use the extended checker")
    sub.add_argument("--boolean-field-ideal", action="store_true",
                     help="boolean mode: include the field ideal (implies optimized)")
    sub.add_argument("--extension", choices=sorted(_EXTENSIONS),
                     default="deleted",
                     help="optimized checker: build the degree-capped span from "
                          "the deleted working polynomials (default) or from "
                          "their undeleted companions")
    sub.add_argument("--augment-products", action="store_true",
                     help="boolean mode: append z_i * g_j products first")
    sub.add_argument("--json", action="store_true",
                     help="machine-readable output")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zsep",
        description="Separating-tuple checks and elimination by substitution.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="decide whether Z is separating")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("extract", help="compute a Z-separating tuple")
    _add_common(p)
    p.add_argument("--ordering-matrix", help="explicit term-ordering matrix file")
    p.set_defaults(func=cmd_extract)

    p = subs.add_parser("coherent", help="compute a coherently Z-separating tuple")
    _add_common(p)
    p.add_argument("--ordering-matrix", help="explicit term-ordering matrix file")
    p.set_defaults(func=cmd_coherent)

    p = subs.add_parser("eliminate", help="eliminate Z by substitution")
    _add_common(p)
    p.add_argument("--ordering-matrix", help="explicit term-ordering matrix file")
    p.set_defaults(func=cmd_eliminate)

    p = subs.add_parser("scan", help="check every subset of a pool")
    _add_common(p, z_required=False)
    p.add_argument("--pool", required=True,
                   help="comma-separated candidate indeterminates")
    p.add_argument("--max-size", required=True, type=int,
                   help="largest subset size to try")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel worker processes")
    p.set_defaults(func=cmd_scan)

    p = subs.add_parser("points-ideal",
                        help="vanishing ideal of a point set, degree-bounded")
    p.add_argument("file", help="point-set file (one bit string per line)")
    p.add_argument("--degree", required=True, type=int,
                   help="degree bound for the square-free basis")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_points_ideal)

    p = subs.add_parser("sbox-points",
                        help="print the 256 AES S-box graph points")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sbox_points)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the shutdown flush
        import os
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except (NoRowWithLeadingTerm, OptimizedCheckFailed) as exc:
        print("FAIL" if not args.json
              else json.dumps({"command": args.command, "ok": False,
                               "reason": str(exc)}))
        return 1
    except SysFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
