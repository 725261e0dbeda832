"""Command-line interface: ``bentforge construct|verify|reproduce|pds``.

Reports go to stdout as JSON (sorted keys, so equal inputs give byte-identical
output); human-readable progress goes to stderr. Exit codes: 0 the property
holds, 1 it fails, 2 a resource cap was hit, 3 usage, parse or parameter errors."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .constructions import (
    GammaParams,
    build,
    example2_parameters,
    gamma_partition,
    ternary_family,
)
from .errors import BentforgeError, CapExceeded, ConditionAFailed, OddDimensionOddPrime, ParseError
from .galois import GF
from .partitions import (
    NotFromNormal,
    Partition,
    is_bent_partition,
    normal_size_obstruction,
    partition_from_function,
    satisfies_condition_C,
)
from .pds import PdsParams, expected_params, is_pds, pds_via_characters, theorem6_check
from .semifield import albert_twisted_field, field_presemifield, frobenius_twist
from .spaces import VSpace
from .vectorial import VectorialFunction, check_condition_A
from .walsh import BentKind, PFunction, classify, is_bent

log = logging.getLogger("bentforge")

EXIT_PASS, EXIT_FAIL, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3
DEFAULT_SEED = 0
DEFAULT_CAP = 1 << 24
DEFAULT_ASSIGNMENT_CAP = 2000

SCHEMA_FUNCTION = "bentforge/function@1"
SCHEMA_VECTORIAL = "bentforge/vectorial-function@1"
SCHEMA_PARTITION = "bentforge/partition@1"
SCHEMA_POINTSET = "bentforge/point-set@1"
SCHEMA_REPORT = "bentforge/report@1"
SCHEMA_ERROR = "bentforge/error@1"

BUILDER_KINDS = {"eq24": "F", "eq25": "Fbul", "eq26": "G", "eq27": "Gbul", "eq28": "M", "eq29": "N",
                 "f": "F", "fbul": "Fbul", "g": "G", "gbul": "Gbul", "m": "M", "n": "N"}
PARTITION_NAMES = {"gamma1": "Gamma1", "gamma1bul": "Gamma1bul", "gamma2": "Gamma2",
                   "gamma2bul": "Gamma2bul", "theta1": "Theta1", "theta2": "Theta2"}
TERNARY_KINDS = {"eq20": 20, "eq21": 21, "eq22": 22, "eq23": 23}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- JSON plumbing ----------------------------------------------------------------------------

def _jsonable(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    if hasattr(o, "value"):
        return o.value
    return str(o)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_jsonable)


def _read_json(path: str) -> dict:
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    if isinstance(obj, dict) and "artifact" in obj:
        obj = obj["artifact"]
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return obj


def _check_size(size: int, cap: int):
    if size > cap:
        raise CapExceeded(f"{size} points exceed the enumeration cap {cap} (set BENTFORGE_CAP)")


def load_pfunction(path: str, cap: int) -> PFunction:
    obj = _read_json(path)
    try:
        if "space" in obj:
            space = VSpace.from_json(obj["space"])
            _check_size(space.size, cap)
            return PFunction(space, obj["values"])
        F = load_vectorial_obj(obj, cap)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"{path}: not a function: {e}") from e
    if F.codomain.n != 1:
        raise ParseError(f"{path}: codomain has dimension {F.codomain.n}, need F_p")
    return F.as_pfunction()


def load_vectorial_obj(obj: dict, cap: int) -> VectorialFunction:
    if "space" in obj:
        space = VSpace.from_json(obj["space"])
        _check_size(space.size, cap)
        return VectorialFunction.from_pfunction(PFunction(space, obj["values"]))
    dom = VSpace.from_json(obj["domain"])
    _check_size(dom.size, cap)
    return VectorialFunction(dom, VSpace.from_json(obj["codomain"]), obj["values"])


def load_vectorial(path: str, cap: int) -> VectorialFunction:
    obj = _read_json(path)
    try:
        return load_vectorial_obj(obj, cap)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"{path}: not a vectorial function: {e}") from e


def load_partition(path: str, cap: int) -> Partition:
    obj = _read_json(path)
    try:
        _check_size(VSpace.from_json(obj["space"]).size, cap)
        return Partition.from_json(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"{path}: not a partition: {e}") from e


def load_pointset(path: str, cap: int) -> tuple[VSpace, np.ndarray]:
    obj = _read_json(path)
    try:
        space = VSpace.from_json(obj["space"])
        pts = np.unique(np.asarray(obj["points"], dtype=np.int64))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"{path}: not a point set: {e}") from e
    _check_size(space.size, cap)
    if pts.size and (pts[0] < 0 or pts[-1] >= space.size):
        raise ParseError(f"{path}: points outside the space")
    return space, pts


def function_artifact(f) -> dict:
    if isinstance(f, PFunction):
        return {"schema": SCHEMA_FUNCTION, **f.to_json()}
    return {"schema": SCHEMA_VECTORIAL, **f.to_json()}


def partition_artifact(G: Partition) -> dict:
    return {"schema": SCHEMA_PARTITION, **G.to_json()}


# --- construct --------------------------------------------------------------------------------

def _presemifield(args, p: int, n: int):
    K = GF(p, n)
    if args.presemifield == "field":
        return field_presemifield(K)
    if args.presemifield == "frobenius":
        return frobenius_twist(K, args.twist)
    return albert_twisted_field(K, args.twist)


def _gamma_params(args) -> GammaParams:
    if args.n is None:
        raise UsageError("--n is required")
    p, n, s = args.p, args.n, args.s
    P = _presemifield(args, p, n)
    u = args.u if args.u is not None else p**s + p - 1
    return GammaParams(p, n, s, u, d=args.d, P=P, alpha=args.alpha if args.alpha is not None else 1,
                       i0=args.i0)


def cmd_construct(args) -> tuple[dict, int]:
    kind = args.kind.lower()
    params = {k: getattr(args, k) for k in ("p", "n", "s", "u", "d", "alpha", "i0", "presemifield",
                                             "twist")}
    if kind in TERNARY_KINDS:
        variant = TERNARY_KINDS[kind]
        if args.n is None:
            raise UsageError("--n is required")
        if variant == 23:
            K = GF(3, args.n)
            g = ternary_family(20, args.n, K=K)
            h = ternary_family(22 if args.n % 4 == 0 else 21, args.n, K=K)
            art = function_artifact(ternary_family(23, g=g, h=h, literal_sign=args.literal_sign))
        else:
            art = function_artifact(ternary_family(variant, args.n, alpha=args.alpha))
    elif kind in BUILDER_KINDS:
        gp = _gamma_params(args)
        _check_size(gp.field.q**2, args.cap)
        art = function_artifact(build(BUILDER_KINDS[kind], gp))
        params["u"], params["d"] = gp.u, gp.d
    elif kind in PARTITION_NAMES:
        gp = _gamma_params(args)
        _check_size(gp.field.q**2, args.cap)
        art = partition_artifact(gamma_partition(PARTITION_NAMES[kind], gp))
        params["u"], params["d"] = gp.u, gp.d
    else:
        raise UsageError(f"unknown construction {args.kind!r}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(art) + "\n")
        log.info("wrote %s", args.out)
    return {"construct": kind, "params": params, "artifact": art}, EXIT_PASS


# --- verify -----------------------------------------------------------------------------------

def _parse_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError as e:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from e


def _pds_certificate(space: VSpace, D: np.ndarray, method: str) -> dict:
    brute = is_pds(D, space, method=method)
    out = {"params": brute.to_json(), "method": method, "witnesses": {}}
    if isinstance(brute, PdsParams):
        out["counting_identity"] = brute.counting_identity()
        if not (D.size and D[0] == 0):
            try:
                char = pds_via_characters(D, space)
                out["characters"] = char.to_json()
                out["agree"] = isinstance(char, PdsParams) and char.tuple() == brute.tuple()
            except BentforgeError as e:
                out["characters"] = {"error": type(e).__name__, "message": str(e)}
                out["agree"] = False
    else:
        out["witnesses"] = brute.witness
    out["is_pds"] = isinstance(brute, PdsParams) and out.get("agree", True)
    return out


def _expected_from_args(args) -> PdsParams:
    for k in ("p", "n", "s", "size_i", "eps"):
        if getattr(args, k) is None:
            raise UsageError(f"--{k.replace('_', '-')} is required")
    return expected_params(args.p, args.n, args.s, args.size_i, args.eps, args.contains_zero)


def cmd_verify(args) -> tuple[dict, int]:
    what, cap = args.what, args.cap
    res: dict = {"verify": what}
    if what == "pds":
        if args.input:
            space, D = load_pointset(args.input, cap)
            cert = _pds_certificate(space, D, args.method)
            res.update(cert)
            ok = cert["is_pds"]
            if args.expect:
                ok = ok and tuple(cert["params"][k] for k in ("v", "k", "lambda", "mu")) == _parse_tuple(
                    args.expect)
        else:
            if not args.expect:
                raise UsageError("verify pds needs --input or --expect")
            got = _expected_from_args(args)
            want = _parse_tuple(args.expect)
            res.update({"expected_params": got.to_json(), "claimed": list(want)})
            ok = got.tuple() == want
        res["holds"] = bool(ok)
        return res, EXIT_PASS if ok else EXIT_FAIL
    if not args.input:
        raise UsageError(f"verify {what} needs --input")
    if what == "bent":
        f = load_pfunction(args.input, cap)
        try:
            cl = classify(f)
            res["classification"] = cl.to_json()
            ok = cl.kind != BentKind.NOT_BENT
        except OddDimensionOddPrime:
            ok = is_bent(f)
            res["classification"] = {"kind": "Bent" if ok else "NotBent", "eps": None}
    elif what == "condition-a":
        rep = check_condition_A(load_vectorial(args.input, cap))
        res["report"] = rep.to_json()
        ok = rep.holds
    elif what == "bent-partition":
        rep = is_bent_partition(load_partition(args.input, cap), cap=args.assignment_cap,
                                seed=args.seed)
        res["report"] = rep.to_json()
        ok = rep.is_bent_partition
    elif what == "condition-c":
        rep = satisfies_condition_C(load_partition(args.input, cap), cap=args.assignment_cap,
                                    seed=args.seed)
        res["report"] = rep.to_json()
        ok = rep.holds
    elif what == "theorem6":
        F = load_vectorial(args.input, cap)
        try:
            rep = theorem6_check(F, seed=args.seed)
            res["report"] = rep.to_json()
            ok = rep.holds
        except ConditionAFailed as e:
            res["report"] = {"holds": False, "reason": f"Condition A fails: {e}", "witness": e.witness}
            ok = False
    else:
        raise UsageError(f"unknown verification {what!r}")
    res["holds"] = bool(ok)
    return res, EXIT_PASS if ok else EXIT_FAIL


# --- reproduce --------------------------------------------------------------------------------

EX3_TUPLES = {
    "singleton_nonzero": (dict(sizeI=1, contains_zero=False),
                          (1853020188851841, 22876791923520, 282470988879, 282429005040)),
    "zero_block_minus_zero": (dict(sizeI=1, contains_zero=True), (None, 22876834970240, None, None)),
    "pair_with_zero": (dict(sizeI=2, contains_zero=True),
                       (None, 45753626893760, 1129760129761, 1129719208806)),
}


def reproduce_ex1(seed: int = DEFAULT_SEED) -> dict:
    K = GF(3, 4)
    space = VSpace([K])
    xs = np.arange(K.q)
    f = PFunction(space, K.trace(1, K.mul(xs, xs)))
    cl = classify(f)
    F = VectorialFunction.from_pfunction(f)
    G = partition_from_function(F)
    sizes = G.sizes
    bp = is_bent_partition(G, cap=None, seed=seed)
    obstruction = normal_size_obstruction(G)
    t6 = theorem6_check(F, seed=seed)
    checks = {
        "weakly_regular_not_regular": cl.kind == BentKind.WEAKLY_REGULAR and cl.eps == -1,
        "fibre_sizes": sizes == [21, 30, 30],
        "all_assignments_bent": bp.is_bent_partition and bp.functions_tested == 6,
        "not_from_normal": isinstance(obstruction, NotFromNormal),
        "pds_certificates": t6.holds,
    }
    return {"example": "ex1", "classification": {"kind": cl.kind.value, "eps": cl.eps},
            "fibre_sizes": sizes, "bent_partition": bp.to_json(),
            "normal_obstruction": obstruction.to_json(), "pds": t6.to_json(), "checks": checks,
            "holds": all(checks.values())}


def reproduce_ex2_params() -> dict:
    chk = example2_parameters()
    return {"example": "ex2-params", "checks": chk, "holds": bool(chk["legal"])}


def reproduce_ex3() -> dict:
    rows = {}
    for name, (kw, want) in EX3_TUPLES.items():
        got = expected_params(3, 32, 4, kw["sizeI"], 1, kw["contains_zero"]).tuple()
        match = all(w is None or w == g for w, g in zip(want, got))
        rows[name] = {"expected_params": list(got), "printed": list(want), "match": match}
    return {"example": "ex3", "tuples": rows, "holds": all(r["match"] for r in rows.values())}


def cmd_reproduce(args) -> tuple[dict, int]:
    if args.example == "ex1":
        res = reproduce_ex1(args.seed)
    elif args.example == "ex2-params":
        res = reproduce_ex2_params()
    else:
        res = reproduce_ex3()
    return res, EXIT_PASS if res["holds"] else EXIT_FAIL


# --- pds --------------------------------------------------------------------------------------

def cmd_pds(args) -> tuple[dict, int]:
    if args.action == "check":
        space, D = load_pointset(args.set, args.cap)
        cert = _pds_certificate(space, D, args.method)
        return cert, EXIT_PASS if cert["is_pds"] else EXIT_FAIL
    if args.action == "expect":
        got = _expected_from_args(args)
        res = {"params": got.to_json(), "method": "closed-form", "witnesses": {}}
        if args.params:
            res["claimed"] = list(_parse_tuple(args.params))
            res["holds"] = got.tuple() == tuple(res["claimed"])
            return res, EXIT_PASS if res["holds"] else EXIT_FAIL
        return res, EXIT_PASS
    F = load_vectorial(args.function, args.cap)
    try:
        rep = theorem6_check(F, seed=args.seed)
    except ConditionAFailed as e:
        return {"holds": False, "reason": f"Condition A fails: {e}", "witnesses": e.witness}, EXIT_FAIL
    return rep.to_json(), EXIT_PASS if rep.holds else EXIT_FAIL


# --- parser -----------------------------------------------------------------------------------

def _env_cap() -> int:
    raw = os.environ.get("BENTFORGE_CAP")
    if not raw:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"BENTFORGE_CAP must be an integer, got {raw!r}") from None


def _add_pds_param_flags(sp):
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int, help="dimension of the whole space")
    sp.add_argument("--s", type=int)
    sp.add_argument("--size-i", dest="size_i", type=int, help="number of fibres in the union")
    sp.add_argument("--eps", type=int, choices=(1, -1))
    sp.add_argument("--contains-zero", dest="contains_zero", action="store_true",
                    help="the union contains the fibre of 0")


def build_parser(cap_default: int) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed for sampled checks (default {DEFAULT_SEED})")
    common.add_argument("--threads", type=int, default=1,
                        help="upper bound on worker threads (computations run single-threaded)")
    common.add_argument("--cap", type=int, default=cap_default,
                        help="largest domain to enumerate (default from BENTFORGE_CAP or 2^24)")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = _Parser(prog="bentforge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"bentforge {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a function or partition")
    c.add_argument("kind", help="eq20..eq23 (ternary bent), eq24..eq29 (F, F., G, G., M, N), "
                                "gamma1, gamma1bul, gamma2, gamma2bul, theta1, theta2")
    c.add_argument("--p", type=int, default=3)
    c.add_argument("--n", type=int)
    c.add_argument("--s", type=int, default=1)
    c.add_argument("--u", type=int, help="exponent (default p^s + p - 1)")
    c.add_argument("--d", type=int, help="inverse of u mod p^n - 1 (default computed)")
    c.add_argument("--alpha", type=int, help="field element index")
    c.add_argument("--i0", type=int, default=0)
    c.add_argument("--presemifield", choices=("field", "frobenius", "albert"), default="field")
    c.add_argument("--twist", type=int, default=1, help="Frobenius exponent for twisted products")
    c.add_argument("--literal-sign", dest="literal_sign", action="store_true",
                   help="eq23 with (g - h) z^2 instead of (h - g) z^2")
    c.add_argument("--out", help="also write the artifact JSON to this file")

    v = sub.add_parser("verify", parents=[common], help="check a property of an artifact")
    v.add_argument("what", choices=("bent", "condition-a", "bent-partition", "condition-c", "pds",
                                    "theorem6"))
    v.add_argument("--input", "-i", help="artifact JSON file ('-' for stdin)")
    v.add_argument("--expect", help="claimed PDS parameters v,k,lambda,mu")
    v.add_argument("--method", choices=("auto", "direct", "characters"), default="auto")
    v.add_argument("--assignment-cap", dest="assignment_cap", type=int,
                   default=DEFAULT_ASSIGNMENT_CAP,
                   help="balanced assignments tested before switching to seeded sampling")
    _add_pds_param_flags(v)

    r = sub.add_parser("reproduce", parents=[common], help="rerun a worked example")
    r.add_argument("example", choices=("ex1", "ex2-params", "ex3"))

    pp = sub.add_parser("pds", parents=[common], help="partial difference set tools")
    psub = pp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    pc = psub.add_parser("check", parents=[common])
    pc.add_argument("--set", required=True, help="point-set JSON")
    pc.add_argument("--method", choices=("auto", "direct", "characters"), default="auto")
    pe = psub.add_parser("expect", parents=[common])
    _add_pds_param_flags(pe)
    pe.add_argument("--params", help="claimed v,k,lambda,mu to compare against")
    pt = psub.add_parser("theorem6", parents=[common])
    pt.add_argument("--function", required=True, help="vectorial function JSON")
    return ap


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "reproduce": cmd_reproduce,
            "pds": cmd_pds}


def main(argv=None) -> int:
    try:
        cap_default = _env_cap()
    except UsageError as e:
        print(f"bentforge: {e}", file=sys.stderr)
        return EXIT_USAGE
    args = build_parser(cap_default).parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="bentforge: %(message)s")
    log.info("seed=%d threads=%d cap=%d", args.seed, args.threads, args.cap)
    manifest = {k: v for k, v in sorted(vars(args).items()) if k != "verbose"}
    manifest["version"] = __version__
    try:
        result, code = COMMANDS[args.command](args)
    except CapExceeded as e:
        result, code = {"error": "CapExceeded", "message": str(e)}, EXIT_CAP
    except (UsageError, ParseError) as e:
        result, code = {"error": type(e).__name__, "message": str(e)}, EXIT_USAGE
    except BentforgeError as e:
        result = {"error": type(e).__name__, "message": str(e), "witness": e.witness}
        code = EXIT_USAGE
    schema = SCHEMA_ERROR if "error" in result else SCHEMA_REPORT
    sys.stdout.write(dumps({"schema": schema, "manifest": manifest, "result": result,
                            "exit_code": code}) + "\n")
    log.info("exit %d", code)
    return code


if __name__ == "__main__":
    sys.exit(main())
