"""Command-line front end.

Every JSON document printed carries an ``"input"`` object holding the
arguments that produced it; ``--from-json FILE`` (``-`` for stdin) replays
such a document.  Exit status: 0 on success, 1 on a domain error (bad element,
violated hypothesis), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import adlv as _adlv
from . import affine as _aff
from . import bnpair as _bn
from . import partial as _pc
from . import pieces as _pieces
from .coxeter import CoxeterError, _as_subset, preset, system_from_json

INPUT_FIELDS = ("type", "matrix", "J", "delta", "word", "word2", "general", "bound", "closure",
                "n", "perm", "trans", "w", "b", "q", "sigma", "kappa", "format")


class UsageError(Exception):
    pass


# -- argument parsing helpers ---------------------------------------------------

def _ints(text) -> list[int]:
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return [int(a) for a in text]
    text = str(text).strip()
    if not text or text in ("e", "[]"):
        return []
    return [int(a) for a in text.strip("[]").split(",") if a.strip()]


def _delta(text):
    if not text:
        return None
    out = {}
    for pair in str(text).split(","):
        a, _, b = pair.partition(":")
        if not b:
            raise UsageError(f"bad --delta entry {pair!r}; expected i:j")
        out[int(a)] = int(b)
    return out


def _system(ns):
    if ns.matrix:
        return system_from_json(ns.matrix)
    return preset(ns.type or "A3")


def _twist(ns):
    W = _system(ns)
    return W, _pc.TwistSetting(W, _ints(ns.J), _delta(ns.delta))


def _word_element(W, text, flag="--word"):
    if text is None:
        raise UsageError(f"{flag} is required")
    return W.from_word(_ints(text))


def _affine(ns):
    if ns.w:
        x = _aff.ExtAffineElement.from_json(ns.w)
    else:
        if ns.perm is None or ns.trans is None:
            raise UsageError("give --w or both --perm and --trans")
        x = _aff.ExtAffineElement(tuple(a - 1 for a in _ints(ns.perm)), tuple(_ints(ns.trans)))
    if ns.n is not None and x.n != int(ns.n):
        raise UsageError(f"--n {ns.n} does not match the element's rank {x.n}")
    return x


def _newton(ns):
    if not ns.b:
        raise UsageError("--b is required")
    return _aff.NewtonDatum.from_json(ns.b)


def _aff_json(x):
    return x.to_json()


# -- subcommands ---------------------------------------------------------------

def cmd_pi(ns):
    W, ts = _twist(ns)
    w = _word_element(W, ns.word)
    target, path = _pc.reduce_to_min(ts, w)
    base = W.min_coset_rep(target, ts.J, "right")
    return {"pi": W.reduced_word(base), "path": path, "target": W.reduced_word(target),
            "iset": sorted(_pc.i_set(ts, base))}


def cmd_iset(ns):
    W, ts = _twist(ns)
    w = _word_element(W, ns.word)
    return {"iset": sorted(_pc.i_set(ts, w))}


def cmd_orbit(ns):
    W, ts = _twist(ns)
    w = _word_element(W, ns.word)
    bound = None if ns.bound is None else int(ns.bound)
    return _pc.orbit(ts, w, bound).to_json()


def cmd_reduce(ns):
    W, ts = _twist(ns)
    w = _word_element(W, ns.word)
    target, path = _pc.reduce_to_min(ts, w)
    return {"target": W.reduced_word(target), "path": path, "length": target.length}


def cmd_leq(ns):
    W, ts = _twist(ns)
    w = _word_element(W, ns.word)
    v = _word_element(W, ns.word2, "--word2")
    return {"leq": _pc.leq_J_delta(ts, w, v, general=True if ns.general else None)}


def cmd_pieces(ns):
    W, ts = _twist(ns)
    if ns.closure:
        return _pieces.group_piece_poset(ts)
    return {"pieces": [r.to_json() for r in _pieces.group_pieces(ts)]}


def cmd_xpieces(ns):
    W = _system(ns)
    if ns.word is not None:
        J = _as_subset(_ints(ns.J))
        w = _word_element(W, ns.word)
        closure = _pieces.compactification_closure(W, J, w)
        rows = sorted(closure, key=lambda p: (sorted(p[0]), W.sort_key(p[1])))
        return {"closure": [_pieces.PieceRecord(_pieces.COMPACTIFICATION, K, v,
                                                v.length + len(W.generators - K)).to_json()
                            for K, v in rows]}
    if ns.closure:
        return _pieces.compactification_poset(W)
    return {"pieces": [r.to_json() for r in _pieces.compactification_pieces(W)]}


def _kappas(ns):
    return None if ns.kappa is None else _ints(ns.kappa)


def cmd_kpieces(ns):
    if ns.n is None:
        raise UsageError("--n is required")
    n = int(ns.n)
    bound = 4 if ns.bound is None else int(ns.bound)
    if ns.closure:
        return _pieces.k_piece_poset(n, bound, _kappas(ns))
    return {"pieces": [r.to_json() for r in _pieces.k_pieces(n, bound, _kappas(ns))]}


def cmd_specialize(ns):
    x = _affine(ns)
    J, y = _pieces.specialize(x)
    rec = _pieces.PieceRecord(_pieces.COMPACTIFICATION, J, y, y.length + len(y.group.generators - J))
    return {"J": sorted(J), "w": y.group.reduced_word(y), "piece": rec.id}


def cmd_good(ns):
    return {"good": _aff.is_good(_affine(ns))}


def cmd_distinguished(ns):
    x = _affine(ns)
    bound = None if ns.bound is None else int(ns.bound)
    mins, paths = _aff.min_set(x, bound)
    order = sorted(mins, key=x.group.sort_key)
    return {"distinguished": _aff.is_distinguished(x, bound),
            "min_length": order[0].length,
            "min_set": [_aff_json(v) for v in order],
            "paths": [paths[v] for v in order]}


def cmd_newton(ns):
    d = _newton(ns)
    out = {"element": _aff_json(_aff.newton_to_element(d)), "kappa": d.kappa,
           "slopes": [str(s) for s in d.slopes], "basic": d.is_basic}
    out["good_rep"] = _aff_json(_aff.good_rep(d))
    out["defect"] = _aff.defect(d) if d.is_basic else None
    return out


def cmd_adlv(ns):
    x = _affine(ns)
    return _adlv.adlv_report(_adlv.AdlvQuery(x, _newton(ns)))


def cmd_bn_verify(ns):
    if ns.n is None or ns.q is None:
        raise UsageError("--n and --q are required")
    sigma = None if not ns.sigma else tuple(a - 1 for a in _ints(ns.sigma))
    rep = _bn.bn_verify(int(ns.n), int(ns.q), _ints(ns.J), sigma)
    for k in ("axioms", "cover", "lemma1"):
        rep[k]["pass"] = bool(rep[k]["pass"])
    return rep


def cmd_count_pieces(ns):
    if ns.n is None:
        raise UsageError("--n is required")
    n = int(ns.n)
    return {"n": n, "pieces": _pc.count_glN_pieces(n), "orbits": _pc.count_glN_orbits(n)}


COMMANDS = {
    "pi": (cmd_pi, "base point pi_{J,delta}(w) with a witness chain"),
    "iset": (cmd_iset, "I(J,w,delta) for w in W^J"),
    "orbit": (cmd_orbit, "W_J-orbit of w under twisted conjugation"),
    "reduce": (cmd_reduce, "length-nonincreasing chain to a minimal element w'x"),
    "leq": (cmd_leq, "the order <=_{J,delta} between --word and --word2"),
    "pieces": (cmd_pieces, "G-stable pieces indexed by W^J"),
    "xpieces": (cmd_xpieces, "pieces X_{J,w} of the wonderful compactification"),
    "kpieces": (cmd_kpieces, "K-stable pieces indexed by W~^S, up to a length bound"),
    "specialize": (cmd_specialize, "the piece X_{J,y} that K_x specializes to"),
    "good": (cmd_good, "whether l(x^k) = k l(x)"),
    "distinguished": (cmd_distinguished, "minimal stratum of the class of x and distinguishedness"),
    "newton": (cmd_newton, "element and good representative of a Newton datum"),
    "adlv": (cmd_adlv, "nonemptiness and dimension of X_w(b) for basic b"),
    "bn-verify": (cmd_bn_verify, "exhaustive BN-pair checks in GL_n(F_q)"),
    "count-pieces": (cmd_count_pieces, "number of G-stable pieces for GL_n over the standard blocks"),
}


# -- output --------------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, list):
        return ",".join(_cell(a) for a in v)
    if isinstance(v, dict):
        return json.dumps(v, separators=(",", ":"))
    return "null" if v is None else str(v).lower() if isinstance(v, bool) else str(v)


def _table(result) -> str:
    if isinstance(result, _pieces.PosetSlice):
        lines = [f"{i}\t{lab}" for i, lab in enumerate(result.labels)]
        lines += [f"{i} < {j}" for i, j in result.covers()]
        return "\n".join(lines) + "\n"
    lines = []
    for k, v in result.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            cols = list(v[0])
            lines.append("\t".join(cols))
            lines += ["\t".join(_cell(row.get(c)) for c in cols) for row in v]
        else:
            lines.append(f"{k}\t{_cell(v)}")
    return "\n".join(lines) + "\n"


def render(result, ns, fmt: str) -> str:
    if fmt == "dot":
        if not isinstance(result, _pieces.PosetSlice):
            raise UsageError("--format dot is only available with --closure")
        return result.to_dot(ns.command)
    if fmt == "table":
        return _table(result)
    body = result.to_json() if isinstance(result, _pieces.PosetSlice) else dict(result)
    body["input"] = {k: getattr(ns, k) for k in INPUT_FIELDS if getattr(ns, k, None) not in (None, False)}
    return json.dumps(body) + "\n"


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partialconj", description="Partial conjugation toolkit.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, (_, help_text) in COMMANDS.items():
        s = sub.add_parser(name, help=help_text, description=help_text)
        s.add_argument("--type", help="named finite type, e.g. A3 (default A3)")
        s.add_argument("--matrix", help='Coxeter matrix JSON {"rank": r, "m": [[...]]}')
        s.add_argument("--J", help="comma-separated subset of generators")
        s.add_argument("--delta", help="twist as i:j pairs, e.g. 1:3,3:1 (default identity)")
        s.add_argument("--word", help="comma-separated generator indices (1-based)")
        s.add_argument("--word2", help="second word for leq")
        s.add_argument("--general", action="store_true", help="leq: compare against --word2 as given")
        s.add_argument("--bound", type=int, help="length bound for enumerations")
        s.add_argument("--closure", action="store_true", help="output the closure poset")
        s.add_argument("--n", type=int, help="rank of GL_n")
        s.add_argument("--perm", help="affine element: finite part as 1-based images")
        s.add_argument("--trans", help="affine element: translation part")
        s.add_argument("--w", help='affine element JSON {"perm": [...], "trans": [...]}')
        s.add_argument("--b", help='Newton datum JSON {"blocks": [[n, k, kp], ...]}')
        s.add_argument("--q", type=int, help="field size for bn-verify (2 or 3)")
        s.add_argument("--sigma", help="bn-verify: permutation matrix for sigma, 1-based images")
        s.add_argument("--kappa", help="kpieces: comma-separated kappa values")
        s.add_argument("--format", choices=("json", "dot", "table"))
        s.add_argument("--from-json", dest="from_json", metavar="FILE",
                       help="replay the \"input\" of a previously emitted document (- for stdin)")
    return p


def _load_replay(ns, parser_for_cmd):
    path = ns.from_json
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    data = json.loads(text)
    data = data.get("input", data)
    unknown = set(data) - set(INPUT_FIELDS)
    if unknown:
        parser_for_cmd.error(f"unknown fields in --from-json input: {sorted(unknown)}")
    for k, v in data.items():
        setattr(ns, k, v)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[ns.command]
    try:
        if ns.from_json:
            _load_replay(ns, sub)
        fmt = ns.format or ("dot" if ns.closure and ns.command in ("pieces", "xpieces", "kpieces")
                            and ns.word is None else "json")
        result = COMMANDS[ns.command][0](ns)
        sys.stdout.write(render(result, ns, fmt))
    except UsageError as exc:
        sub.print_usage(sys.stderr)
        print(f"{sub.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (CoxeterError, _pc.OrbitBoundError, _aff.OrbitBoundErrorAff, ValueError,
            ArithmeticError, AssertionError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
