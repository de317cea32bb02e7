"""Command-line surface for logs, certificates, and reports.

Outputs are files and exit codes: 0 on success or an accepted
certificate, 1 when verification rejects, 2 on usage or data errors.
All commands are deterministic given identical inputs.
"""

from __future__ import annotations

import argparse
import fcntl
import os
import sys
from contextlib import contextmanager
from pathlib import Path

from . import analysis
from .authenticator import (
    LogState,
    build_prefix_cert,
    extract_positional_cert,
    verify_prefix_cert,
)
from .codec import MalformedError, decode_log, decode_prefix_cert, encode_log, encode_prefix_cert
from .paths import canonical_path
from .pools import bounded_pool, bounded_positional_vertices, certificate_pool, positional_vertices
from .skipgraph import Inner, SkipList, commit

DEFAULT_BASE = 3


class CliError(Exception):
    """Data or usage failure; maps to exit code 2."""


@contextmanager
def _locked(path: Path):
    # Hold an exclusive lock for the whole mutating command.
    with open(path, "rb+") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            yield fh
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def _log_path(args) -> Path:
    path = args.log or os.environ.get("SLLS_LOG")
    if not path:
        raise CliError("no log file: pass --log or set SLLS_LOG")
    return Path(path)


def _load_log(path: Path, expected_base: int | None) -> LogState:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        log = decode_log(data)
    except MalformedError as exc:
        raise CliError(f"{path}: {exc}") from exc
    if expected_base is not None and log.scheme != SkipList(expected_base):
        raise CliError(f"{path} uses {log.scheme!r}, not base {expected_base}")
    return log


def _read_item(args) -> bytes:
    if args.item is not None:
        try:
            return Path(args.item).read_bytes()
        except OSError as exc:
            raise CliError(f"cannot read {args.item}: {exc}") from exc
    return sys.stdin.buffer.read()


def _cmd_init(args) -> int:
    path = _log_path(args)
    if path.exists():
        raise CliError(f"{path} already exists")
    log = LogState(SkipList(args.base))
    path.write_bytes(encode_log(log))
    print(f"initialized {path} (base {args.base})")
    return 0


def _cmd_append(args) -> int:
    path = _log_path(args)
    if not path.exists():
        raise CliError(f"{path} does not exist; run init --base <b> first")
    item = _read_item(args)
    with _locked(path) as fh:
        try:
            log = decode_log(fh.read())
        except MalformedError as exc:
            raise CliError(f"{path}: {exc}") from exc
        if args.base is not None and log.scheme != SkipList(args.base):
            raise CliError(f"{path} uses {log.scheme!r}, not base {args.base}")
        digest = log.append(item)
        fh.seek(0)
        fh.truncate()
        fh.write(encode_log(log))
    print(f"{log.length} {digest.hex()}")
    return 0


def _cmd_digest(args) -> int:
    log = _load_log(_log_path(args), args.base)
    at = args.at if args.at is not None else log.length
    if not 1 <= at <= log.length:
        raise CliError(f"position {at} out of range 1..{log.length}")
    print(f"{at} {log.digest(at).hex()}")
    return 0


def _cmd_prove(args) -> int:
    log = _load_log(_log_path(args), args.base)
    try:
        cert = build_prefix_cert(log, args.from_, args.to)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    Path(args.out).write_bytes(encode_prefix_cert(cert))
    print(f"{len(cert.labels)} labels -> {args.out}")
    return 0


def _cmd_verify(args) -> int:
    try:
        data = Path(args.cert).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {args.cert}: {exc}") from exc
    try:
        cert = decode_prefix_cert(data)
        digest_s = bytes.fromhex(args.digest_s)
        digest_t = bytes.fromhex(args.digest_t)
    except (MalformedError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    result = verify_prefix_cert(cert, digest_s, digest_t)
    if result.ok:
        print("OK")
        return 0
    print(f"REJECT: {result.reason}")
    return 1


def _fmt_vertex(v) -> str:
    return repr(v)


def _cmd_pool(args) -> int:
    scheme = SkipList(args.base if args.base is not None else DEFAULT_BASE)
    try:
        if args.round is not None:
            pool = bounded_pool(scheme, args.n, args.round)
            vertices, chained = bounded_positional_vertices(
                scheme, args.n, args.round, args.chained
            )
        else:
            if args.chained:
                raise CliError("--chained requires --round")
            pool = certificate_pool(scheme, args.n)
            vertices = positional_vertices(scheme, args.n)
            chained = False
    except ValueError as exc:
        raise CliError(str(exc)) from exc

    log = None
    if args.labels:
        log = _load_log(Path(args.labels), args.base)

    seen = set()
    for comp in pool.components:
        for v in comp:
            if v not in seen:
                seen.add(v)
                print(_fmt_vertex(v))
    print("out-neighborhood:")
    for v in vertices:
        if log is not None:
            print(f"{_fmt_vertex(v)} {log.label(v).hex()}")
        else:
            print(_fmt_vertex(v))
    if chained:
        print("(chain digest slot)")
    print(f"count {len(vertices) + (1 if chained else 0)}")
    return 0


def _cmd_table(args) -> int:
    if args.max_exp > 33:
        raise CliError("--max-exp is capped at 33")
    rows = analysis.size_table(2**args.max_exp)
    if args.format == "text":
        report = analysis.size_table_text(rows)
    else:
        report = analysis.size_table_csv(rows)
    if args.out:
        Path(args.out).write_text(report)
        print(f"{len(rows)} rows -> {args.out}")
    else:
        sys.stdout.write(report)
    plot = args.plot
    if plot is None and args.out:
        plot = str(Path(args.out).with_suffix(".png"))
    if plot:
        analysis.render_size_figure(rows, plot)
        print(f"figure -> {plot}")
    return 0


def _cmd_stats(args) -> int:
    scheme = SkipList(args.base if args.base is not None else DEFAULT_BASE)
    try:
        stats = analysis.scheme_stats(scheme, args.n)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    print(
        f"vertices={stats['vertex_count']} edges={stats['edge_count']} "
        f"max_out_degree={stats['max_out_degree']}"
    )
    return 0


def _cmd_path(args) -> int:
    scheme = SkipList(args.base if args.base is not None else DEFAULT_BASE)
    try:
        path = canonical_path(scheme, commit(scheme, args.from_), commit(scheme, args.to))
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    for v in path.vertices:
        print(_fmt_vertex(v))
    print(f"edges {path.edge_count}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skiplog",
        description="Append-only log authentication over skip-list linking schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_log_arg(p):
        p.add_argument("--log", help="log file (or set SLLS_LOG)")

    p = sub.add_parser("init", help="create an empty log")
    add_log_arg(p)
    p.add_argument("--base", type=int, default=DEFAULT_BASE)
    p.set_defaults(func=_cmd_init)

    p = sub.add_parser("append", help="append one item (file or stdin)")
    add_log_arg(p)
    p.add_argument("item", nargs="?", help="item file; stdin when omitted")
    p.add_argument("--base", type=int)
    p.set_defaults(func=_cmd_append)

    p = sub.add_parser("digest", help="print the log digest")
    add_log_arg(p)
    p.add_argument("--at", type=int)
    p.add_argument("--base", type=int)
    p.set_defaults(func=_cmd_digest)

    p = sub.add_parser("prove", help="write a prefix certificate")
    add_log_arg(p)
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--base", type=int)
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("verify", help="verify a prefix certificate")
    p.add_argument("cert")
    p.add_argument("--digest-s", required=True)
    p.add_argument("--digest-t", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("pool", help="print a certificate pool")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", type=int)
    p.add_argument("--round", type=int)
    p.add_argument("--chained", action="store_true")
    p.add_argument("--labels", help="log file supplying labels")
    p.set_defaults(func=_cmd_pool)

    p = sub.add_parser("table", help="certificate-size table (CSV/text + figure)")
    p.add_argument("--max-exp", type=int, required=True)
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--out", help="report path (stdout when omitted)")
    p.add_argument("--plot", help="figure path (derived from --out when omitted)")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("stats", help="graph statistics up to position n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", type=int)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("path", help="print the canonical path between commits")
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--base", type=int)
    p.set_defaults(func=_cmd_path)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
