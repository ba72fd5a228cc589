"""Command-line driver.

Every command prints one JSON envelope (sorted keys, so repeated runs with the
same flags and seed are byte-identical) and exits with

    0  success, verdict in the payload
    2  usage or input-schema error
    3  resource budget exhausted
    4  inconclusive (a one-directional criterion did not fire)

A ``--config FILE`` JSON object mirrors the flags, e.g.
``{"command": "kappa", "family": "tight-cycle", "ell": 6, "r": 3}``; flags
given on the command line win.  Budgets may also come from the environment
variables HYPERSIDO_FACTOR_CAP and HYPERSIDO_ENUM_EDGES.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__, common, density, kappa, rational, witness
from .density import BipartiteKernel, SymmetricKernel
from .errors import Inconclusive, InvalidInput, ResourceLimit
from .hypergraph import Hypergraph, berge_girth, build_family, catalog, is_two_connected, levi_graph

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INCONCLUSIVE = 0, 2, 3, 4

COMMANDS = (
    "catalog", "kappa", "poly-eval", "negativity", "certify", "auto-witness",
    "scan", "deletion", "common", "levi", "sample", "verify",
)
STOCHASTIC = {"sample"}
FAMILY_KEYS = ("ell", "r", "g", "index")


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    seed: int | None = None
    enum_edges: int | None = None
    factor_cap: int | None = None
    max_iterations: int | None = None
    output: str | None = None
    timestamp: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidInput(f"unknown command {self.command!r}")
        for name in ("enum_edges", "factor_cap", "max_iterations"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise InvalidInput(f"budget {name} must be positive")
        if self.command in STOCHASTIC and self.seed is None:
            raise InvalidInput(f"{self.command} is stochastic and needs --seed")

    def echo(self) -> dict:
        out = {"command": self.command, **{k: v for k, v in self.options.items() if v not in (None, False)}}
        for name in ("seed", "enum_edges", "factor_cap", "max_iterations"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        return out


class _Result:
    def __init__(self, payload, exact: bool = True, status: str = "ok", text: str | None = None):
        self.payload, self.exact, self.status, self.text = payload, exact, status, text


# ---------------------------------------------------------------- inputs


def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InvalidInput(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def _hypergraph(o: dict, required: bool = True) -> Hypergraph | None:
    if o.get("hypergraph"):
        data = _load_json(o["hypergraph"])
        return Hypergraph.from_dict(data.get("H", data))
    if o.get("family"):
        params = {k: o[k] for k in FAMILY_KEYS if o.get(k) is not None}
        if o.get("params"):
            params.update(json.loads(o["params"]) if isinstance(o["params"], str) else o["params"])
        return build_family(o["family"], params)
    if required:
        raise InvalidInput("give --family (with its parameters) or --hypergraph FILE")
    return None


def _family_echo(o: dict) -> dict:
    params = {k: o[k] for k in FAMILY_KEYS if o.get(k) is not None}
    if o.get("params"):
        params.update(json.loads(o["params"]) if isinstance(o["params"], str) else o["params"])
    return params


def _descriptor(o: dict, r: int | None) -> dict | None:
    """Kernel descriptor from --kernel-file or --kernel NAME plus its parameters."""
    if o.get("kernel_file"):
        data = _load_json(o["kernel_file"])
        return data.get("kernel", data)
    name = o.get("kernel")
    if not name:
        return None
    r = o.get("kernel_r") or r
    if r is None:
        raise InvalidInput("kernel arity unknown; pass --kernel-r")
    desc = {"family": name, "r": r}
    needs = {"h": ("eps", "c"), "g": ("eps",), "linear-girth": ("c",), "s-parity": ("s", "c"),
             "constant": ("value",)}
    if name not in needs:
        raise InvalidInput(f"unknown kernel family {name!r}")
    for key in needs[name]:
        if o.get(key) is None:
            raise InvalidInput(f"kernel {name} needs --{key}")
        v = o[key]
        desc[key] = v if key == "s" else rational.fmt(rational.parse(str(v)))
    return desc


def _kernel(o: dict, r: int | None, required: bool = True):
    desc = _descriptor(o, r)
    if desc is None:
        if required:
            raise InvalidInput("give --kernel NAME or --kernel-file FILE")
        return None, None
    if "left_masses" in desc:
        return BipartiteKernel.from_dict(desc), desc
    return witness.kernel_from_descriptor(desc), desc


# ---------------------------------------------------------------- commands


def _cmd_catalog(o, cfg):
    return _Result({"families": catalog()})


def _census(H: Hypergraph, method: str):
    layout = kappa.tight_cycle_layout(H)
    if method == "closed":
        if layout is None:
            raise InvalidInput("closed forms exist for C_3k^(3), C_3k^(3) - e and C_2r^(r) only")
        ell, r, skip = layout
        if r == 3 and ell % 3 == 0 and not skip:
            return kappa.kappa_closed_c3k(ell // 3), "closed"
        if r == 3 and ell % 3 == 0 and len(skip) == 1:
            return kappa.kappa_closed_c3k_minus_e(ell // 3), "closed"
        if ell == 2 * r and not skip:
            return kappa.kappa_closed_c2r(r), "closed"
        raise InvalidInput("no closed form for this hypergraph")
    if method in ("auto", "dp") and layout is not None:
        ell, r, skip = layout
        return kappa.kappa_tight_cycle_dp(ell, r, skip), "dp"
    if method == "dp":
        raise InvalidInput("the DP needs an edge subset of a tight cycle")
    return kappa.kappa_poly_bruteforce(H), "bruteforce"


def _cmd_kappa(o, cfg):
    H = _hypergraph(o)
    P, method = _census(H, o.get("method") or "auto")
    payload = {"family": o.get("family"), "params": _family_echo(o), "kappa": P.as_strings(), "method": method}
    return _Result(payload, text=",".join(P.as_strings()))


def _polynomial(o):
    if o.get("coefficients"):
        return kappa.KappaPolynomial(tuple(int(c) for c in str(o["coefficients"]).split(",")))
    return _census(_hypergraph(o), "auto")[0]


def _cmd_poly_eval(o, cfg):
    if o.get("x") is None:
        raise InvalidInput("poly-eval needs --x (write negative values as --x=-2/3)")
    x = rational.parse(str(o["x"]))
    P = _polynomial(o)
    value = kappa.eval_poly(P, x)
    return _Result({"kappa": P.as_strings(), "x": rational.fmt(x), "value": rational.fmt(value),
                    "sign": (value > 0) - (value < 0)})


def _probes_for(o):
    if o.get("coefficients"):
        return []
    H = _hypergraph(o)
    layout = kappa.tight_cycle_layout(H)
    if layout is None:
        return []
    ell, r, skip = layout
    if not skip:
        return kappa.probe_catalogue(ell, r)
    if len(skip) == 1:
        return kappa.probe_catalogue(ell, r, minus_edge=True)
    return []


def _cmd_negativity(o, cfg):
    P = _polynomial(o)
    grid_n = o.get("grid") or 1000
    pick = kappa.best_negative_point if o.get("best") else kappa.find_negative_point
    cert = pick(P, _probes_for(o), grid_n)
    if cert is None:
        return _Result({"kappa": P.as_strings(), "negative_point": None,
                        "message": "no negative point found (not a proof)"},
                       status="inconclusive", text="no negative point found (not a proof)")
    return _Result({"kappa": P.as_strings(), "negative_point": rational.fmt(cert.point),
                    "value": rational.fmt(cert.value), "probe": cert.provenance})


def _cmd_certify(o, cfg):
    H = _hypergraph(o)
    W, desc = _kernel(o, H.r)
    cert = witness.certify_non_sidorenko(H, W, desc, o.get("strategy") or "auto")
    status = "ok" if cert.verdict == "not_sidorenko" else "inconclusive"
    return _Result(cert.to_dict(), status=status)


def _cmd_auto_witness(o, cfg):
    H = _hypergraph(o)
    halvings = cfg.max_iterations or witness.MAX_HALVINGS
    cert = witness.auto_witness_tight_cycle(H, o.get("grid") or 1000, halvings)
    return _Result(cert.to_dict())


def _scan_table(rows) -> str:
    head = f"{'r':>3} {'k':>3} {'kr':>4}  {'x':>12}  {'probe':<18} {'certificate':<16} P(x)"
    lines = [head, "-" * len(head)]
    for row in rows:
        d = row.to_dict()
        lines.append(
            f"{row.r:>3} {row.k:>3} {row.k * row.r:>4}  {d['x'] or '-':>12}  {d['probe']:<18} "
            f"{d['certificate']:<16} {d['P_x'] or '-'}"
        )
    return "\n".join(lines)


def _cmd_scan(o, cfg):
    rows = witness.scan_tight_cycles(o.get("max_vertices") or 30, bool(o.get("certify")),
                                     o.get("grid") or 1000, o.get("workers") or 1)
    missing = [r for r in rows if r.point is None]
    status = "inconclusive" if missing else "ok"
    return _Result({"rows": [r.to_dict() for r in rows], "all_negative": not missing},
                   status=status, text=_scan_table(rows) if o.get("table") else None)


def _cmd_deletion(o, cfg):
    H = _hypergraph(o)
    if o.get("host_family") or o.get("host_file"):
        host = _hypergraph({"family": o.get("host_family"), "params": o.get("host_params"),
                            "hypergraph": o.get("host_file")})
        report = witness.deletion_bound(H, host)
    else:
        W, _ = _kernel(o, H.r)
        report = witness.deletion_bound(H, W, o.get("sample_n"), cfg.seed)
    return _Result(report.to_dict())


def _cmd_common(o, cfg):
    H = _hypergraph(o)
    classification = common.classify_even_subgraphs(H)
    payload = {"classification": classification.to_dict()}
    if o.get("classify_only"):
        return _Result(payload)
    f, _ = _kernel(o, H.r, required=False)
    if f is None:
        if cfg.seed is None:
            raise InvalidInput("a witness search needs --seed (or pass --kernel-file)")
        if not classification.candidates:
            raise InvalidInput("H has no even subgraph without degree-one vertices")
        target = H.subgraph(classification.candidates[0].edges).support()
        found = common.negativity_search(target, o.get("atoms") or 3, cfg.max_iterations or 10,
                                         cfg.seed, o.get("restarts") or 8)
        if found is None:
            payload["message"] = "no negative witness found by search (not a proof)"
            return _Result(payload, status="inconclusive", text=payload["message"])
        payload["search_witness"] = found.to_dict()
        f = found.kernel
    if not isinstance(f, SymmetricKernel):
        raise InvalidInput("commonness needs a symmetric kernel")
    if o.get("scale") is not None:
        report = common.common_deficit(H, f, rational.parse(str(o["scale"])))
        payload["report"] = report.to_dict()
        return _Result(payload, status="ok" if report.deficit < 0 else "inconclusive")
    if not density.is_zero_averaging(f):
        f = common.zero_averaging_lift(f)
        payload["lifted"] = True
    payload["witness"] = f.to_dict() if not isinstance(f, density.TensorKernel) else None
    report = common.check_noncommon(H, f, classification, cfg.max_iterations or common.MAX_HALVINGS)
    payload["report"] = report.to_dict()
    return _Result(payload)


def _cmd_levi(o, cfg):
    H = _hypergraph(o)
    L = levi_graph(H)
    payload = {"H": H.to_dict(), "levi": L.to_dict(), "vertices": L.n, "edges": L.e,
               "two_connected": is_two_connected(H)}
    try:
        g = berge_girth(H)
        payload["berge_girth"] = g.girth
        payload["shortest_cycles"] = g.shortest_cycle_count
    except InvalidInput as exc:
        payload["berge_girth"] = None
        payload["girth_note"] = str(exc)
    f, _ = _kernel(o, 2, required=False)
    if f is not None:
        h = common.levi_transfer(f, H.r)
        lhs, rhs = density.t_density(H, h), common.levi_density(H, f)
        if lhs != rhs:
            raise AssertionError("Levi transfer identity failed")
        payload["transfer"] = {"t_H(h)": rational.fmt(lhs), "t_L(f)": rational.fmt(rhs)}
    return _Result(payload)


def _cmd_sample(o, cfg):
    H = _hypergraph(o, required=False)
    r = H.r if H is not None else o.get("r")
    W, _ = _kernel(o, r)
    n = o.get("n") or 20
    if H is not None and o.get("trials"):
        est = density.estimate_density(H, W, n, o["trials"], cfg.seed)
        payload = {"mean": repr(est.mean), "stderr": repr(est.stderr), "trials": est.trials, "n": n}
        if o.get("expected") is not None:
            target = float(rational.parse(str(o["expected"])))
            payload["expected"] = o["expected"]
            payload["z"] = repr((est.mean - target) / est.stderr) if est.stderr else None
        return _Result(payload, exact=False)
    G = density.sample_hypergraph(W, n, cfg.seed)
    return _Result({"G": G.to_dict(), "edges": G.e})


def _cmd_verify(o, cfg):
    if not o.get("certificate"):
        raise InvalidInput("verify needs --certificate FILE")
    data = _load_json(o["certificate"])
    data = data.get("payload", data)
    cert = witness.verify_certificate(data)
    return _Result({"verified": True, "verdict": cert.verdict, "margin": rational.fmt(cert.margin)})


HANDLERS = {
    "catalog": _cmd_catalog, "kappa": _cmd_kappa, "poly-eval": _cmd_poly_eval,
    "negativity": _cmd_negativity, "certify": _cmd_certify, "auto-witness": _cmd_auto_witness,
    "scan": _cmd_scan, "deletion": _cmd_deletion, "common": _cmd_common, "levi": _cmd_levi,
    "sample": _cmd_sample, "verify": _cmd_verify,
}


# ---------------------------------------------------------------- driver


def _apply_budgets(cfg: RunConfig):
    env_cap = os.environ.get("HYPERSIDO_FACTOR_CAP")
    env_edges = os.environ.get("HYPERSIDO_ENUM_EDGES")
    try:
        cap = cfg.factor_cap or (int(env_cap) if env_cap else None)
        edges = cfg.enum_edges or (int(env_edges) if env_edges else None)
    except ValueError as exc:
        raise InvalidInput(f"budget environment variable is not an integer: {exc}") from exc
    if cap is not None:
        if cap <= 0:
            raise InvalidInput("factor cap must be positive")
        density.FACTOR_SIZE_CAP = cap
    if edges is not None:
        if edges <= 0:
            raise InvalidInput("enumeration cap must be positive")
        kappa.BRUTEFORCE_MAX_EDGES = edges


def envelope(cfg: RunConfig, result: _Result) -> dict:
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat() if cfg.timestamp else None
    return {
        "tool": "hypersido",
        "version": __version__,
        "command": cfg.echo(),
        "timestamp": stamp,
        "status": result.status,
        "exact": result.exact,
        "payload": result.payload,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    saved = density.FACTOR_SIZE_CAP, kappa.BRUTEFORCE_MAX_EDGES
    try:
        _apply_budgets(cfg)
        result = HANDLERS[cfg.command](cfg.options, cfg)
    except Inconclusive as exc:
        result = _Result({"reason": exc.reason, "message": str(exc)}, status="inconclusive")
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    except (InvalidInput, KeyError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    finally:
        density.FACTOR_SIZE_CAP, kappa.BRUTEFORCE_MAX_EDGES = saved
    text = dumps(envelope(cfg, result))
    if cfg.output:
        Path(cfg.output).write_text(text)
    short = result.text is not None and (cfg.options.get("plain") or cfg.command == "scan")
    stdout.write(result.text + "\n" if short else text)
    if result.status == "inconclusive" and result.text and not short:
        print(result.text, file=stderr)
    return EXIT_INCONCLUSIVE if result.status == "inconclusive" else EXIT_OK


def _parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    g = shared.add_argument_group("common options")
    g.add_argument("--seed", type=int)
    g.add_argument("--enum-edges", type=int, help="edge budget for subset enumeration")
    g.add_argument("--factor-cap", type=int, help="entry budget for dense factors")
    g.add_argument("--max-iterations", type=int, help="epsilon halvings / search sweeps")
    g.add_argument("--output", help="also write the JSON envelope here")
    g.add_argument("--timestamp", action="store_true", help="stamp the envelope with the current time")
    g.add_argument("--plain", action="store_true", help="print the short text form instead of JSON")

    hg = argparse.ArgumentParser(add_help=False)
    h = hg.add_argument_group("hypergraph")
    h.add_argument("--family")
    h.add_argument("--params", help="family parameters as JSON")
    h.add_argument("--hypergraph", help="hypergraph JSON file")
    for key in FAMILY_KEYS:
        h.add_argument(f"--{key}", type=int)

    kern = argparse.ArgumentParser(add_help=False)
    k = kern.add_argument_group("kernel")
    k.add_argument("--kernel", help="h, g, linear-girth, s-parity or constant")
    k.add_argument("--kernel-file")
    k.add_argument("--kernel-r", type=int)
    k.add_argument("--c")
    k.add_argument("--eps")
    k.add_argument("--s", type=int)
    k.add_argument("--value")

    poly = argparse.ArgumentParser(add_help=False)
    poly.add_argument("--coefficients", help="kappa_1..kappa_E, comma separated")

    p = argparse.ArgumentParser(prog="hypersido", allow_abbrev=False, description="Exact non-Sidorenko and non-commonness certificates.")
    p.add_argument("--version", action="version", version=f"hypersido {__version__}")
    p.add_argument("--config", help="JSON file mirroring the flags")
    sub = p.add_subparsers(dest="command")

    sub.add_parser("catalog", parents=[shared], help="list built-in families")
    s = sub.add_parser("kappa", parents=[shared, hg], help="census polynomial")
    s.add_argument("--method", choices=["auto", "dp", "bruteforce", "closed"], default="auto")
    s = sub.add_parser("poly-eval", parents=[shared, hg, poly], help="evaluate P_H exactly")
    s.add_argument("--x")
    s = sub.add_parser("negativity", parents=[shared, hg, poly], help="search for x in (-1, 0) with P_H(x) < 0")
    s.add_argument("--grid", type=int)
    s.add_argument("--best", action="store_true", help="most negative probe instead of the first")
    s = sub.add_parser("certify", parents=[shared, hg, kern], help="exact non-Sidorenko certificate")
    s.add_argument("--strategy", choices=["auto", "bruteforce", "variable_elimination", "band_dp"])
    s = sub.add_parser("auto-witness", parents=[shared, hg], help="certificate for a tight cycle subset")
    s.add_argument("--grid", type=int)
    s = sub.add_parser("scan", parents=[shared], help="negativity table for tight cycles")
    s.add_argument("--max-vertices", type=int)
    s.add_argument("--certify", action="store_true")
    s.add_argument("--grid", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("--table", action="store_true")
    s = sub.add_parser("deletion", parents=[shared, hg, kern], help="deletion-method exponent")
    s.add_argument("--sample-n", type=int)
    s.add_argument("--host-family")
    s.add_argument("--host-params")
    s.add_argument("--host-file")
    s = sub.add_parser("common", parents=[shared, hg, kern], help="non-commonness certificate")
    s.add_argument("--classify-only", action="store_true")
    s.add_argument("--scale", help="only evaluate the deficit of scale * f")
    s.add_argument("--atoms", type=int)
    s.add_argument("--restarts", type=int)
    sub.add_parser("levi", parents=[shared, hg, kern], help="Levi graph, girth and transfer")
    s = sub.add_parser("sample", parents=[shared, hg, kern], help="W-random hypergraphs")
    s.add_argument("--n", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--expected")
    s = sub.add_parser("verify", parents=[shared], help="re-verify a certificate file")
    s.add_argument("--certificate")
    return p


def _config_argv(data: dict) -> list[str]:
    if not isinstance(data, dict) or "command" not in data:
        raise InvalidInput("config must be a JSON object with a 'command' key")
    argv = [data["command"]]
    for key, value in data.items():
        if key == "command" or value is None or value is False:
            continue
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif isinstance(value, (dict, list)):
            argv.append(f"{flag}={json.dumps(value)}")
        else:
            argv.append(f"{flag}={value}")
    return argv


def parse_config(argv: list[str]) -> RunConfig:
    parser = _parser()
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if known.config:
        base = _config_argv(_load_json(known.config))
        if rest and rest[0] in COMMANDS:
            if rest[0] != base[0]:
                raise InvalidInput("command line and config name different commands")
            rest = rest[1:]
        argv = base + rest
    ns = parser.parse_args(argv)
    if ns.command is None:
        parser.print_usage(sys.stderr)
        raise InvalidInput("missing command")
    opts = vars(ns)
    top = {k: opts.pop(k) for k in ("seed", "enum_edges", "factor_cap", "max_iterations", "output", "timestamp")}
    opts.pop("config", None)
    command = opts.pop("command")
    return RunConfig(command, opts, **top)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
