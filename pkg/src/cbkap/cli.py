"""Command-line front end. Exit codes: 1 usage, 2 parse, 3 protocol failure."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import attack, codec as ser, protocol, wire
from .errors import (CbkapError, EvaluationError, KeygenError, ParseError, ProtocolError,
                     SetupError, SingularMatrixError, UsageError)

EXIT_USAGE, EXIT_PARSE, EXIT_PROTOCOL = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str, kind: type):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    obj = ser.deserialize(data)
    if not isinstance(obj, kind):
        raise UsageError(f"{path} holds a {type(obj).__name__}, expected {kind.__name__}")
    return obj


def _write(path: str, obj):
    Path(path).write_bytes(ser.serialize(obj))


def _host_port(text: str, default_host: str = "127.0.0.1") -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    try:
        return (host if sep else default_host), int(port)
    except ValueError:
        raise UsageError(f"bad address {text!r}, expected HOST:PORT") from None


def cmd_setup(args):
    cfg = protocol.ParamsConfig(n=args.n, p=args.p, mode=args.mode, seed=args.seed)
    _write(args.out, protocol.ttp_setup(cfg))


def cmd_keygen(args):
    params = _load(args.params, protocol.PublicParams)
    _write(args.out, protocol.keygen(params, args.side, args.seed))


def cmd_pubkey(args):
    params = _load(args.params, protocol.PublicParams)
    _write(args.out, protocol.public_key(params, _load(args.key, protocol.PrivateKey)))


def cmd_exchange(args):
    params = _load(args.params, protocol.PublicParams)
    sk = _load(args.key, protocol.PrivateKey)
    pk = _load(args.peer, protocol.PublicKey)
    _write(args.out, protocol.shared_secret(params, sk, pk))


def cmd_attack(args):
    params = _load(args.params, protocol.PublicParams)
    pk = _load(args.peer, protocol.PublicKey)
    truth = _load(args.key, protocol.PrivateKey) if args.key else None
    rec = attack.experiment_record(params, pk, args.seed, args.spurious, truth)
    print(json.dumps(rec))


def sweep_rows(n: int, p: int, seed: int, trials: int, spurious: int):
    for s in range(seed, seed + trials):
        for mode in protocol.MODES:
            params = protocol.ttp_setup(protocol.ParamsConfig(n=n, p=p, mode=mode, seed=s))
            sk = protocol.keygen(params, "bob", s)
            rec = attack.experiment_record(params, protocol.public_key(params, sk), s, spurious, sk)
            yield {"seed": s, "mode": mode, "solutionDim": rec["solutionDim"],
                   "succeeded": rec["succeeded"]}


def cmd_sweep(args):
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=["seed", "mode", "solutionDim", "succeeded"])
        w.writeheader()
        for row in sweep_rows(args.n, args.p, args.seed, args.trials, args.spurious):
            w.writerow(row)
    finally:
        if out is not sys.stdout:
            out.close()


def _report_port(port: int):
    print(f"listening on port {port}", file=sys.stderr, flush=True)


def cmd_serve(args):
    params = _load(args.params, protocol.PublicParams)
    sk = _load(args.key, protocol.PrivateKey)
    host, port = _host_port(args.listen)
    _write(args.out, wire.serve(port, params, sk, host=host, ready=_report_port))


def cmd_connect(args):
    params = _load(args.params, protocol.PublicParams)
    sk = _load(args.key, protocol.PrivateKey)
    host, port = _host_port(args.host)
    _write(args.out, wire.connect(host, port, params, sk))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cbkap", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, *flags):
        sp = sub.add_parser(name)
        sp.set_defaults(func=func)
        for flag in flags:
            flag(sp)
        return sp

    params = lambda sp: sp.add_argument("--params", required=True)
    key = lambda sp: sp.add_argument("--key", required=True)
    peer = lambda sp: sp.add_argument("--peer", required=True)
    out = lambda sp: sp.add_argument("--out", required=True)
    seed = lambda sp: sp.add_argument("--seed", type=int, default=0)
    n = lambda sp: sp.add_argument("--n", type=int, default=8)
    p = lambda sp: sp.add_argument("--p", type=int, default=251)
    spurious = lambda sp: sp.add_argument("--spurious", type=int, default=attack.DEFAULT_SPURIOUS)

    sp = add("setup", cmd_setup, out, seed, n, p)
    sp.add_argument("--mode", choices=protocol.MODES, default="defended")
    sp = add("keygen", cmd_keygen, params, out, seed)
    sp.add_argument("--side", choices=protocol.SIDES, required=True)
    add("pubkey", cmd_pubkey, params, key, out)
    add("exchange", cmd_exchange, params, key, peer, out)
    sp = add("attack", cmd_attack, params, peer, seed, spurious)
    sp.add_argument("--key", help="Bob's private key, for scoring only")
    sp = add("sweep", cmd_sweep, seed, n, p, spurious)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--out")
    sp = add("serve", cmd_serve, params, key, out)
    sp.add_argument("--listen", required=True, help="PORT or HOST:PORT")
    sp = add("connect", cmd_connect, params, key, out)
    sp.add_argument("--host", required=True, help="HOST:PORT")
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or an argparse error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except ParseError as exc:
        print(f"cbkap: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"cbkap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ProtocolError, SetupError, KeygenError, EvaluationError, SingularMatrixError) as exc:
        print(f"cbkap: protocol failure: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except CbkapError as exc:  # pragma: no cover
        print(f"cbkap: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    return 0


if __name__ == "__main__":
    sys.exit(main())
