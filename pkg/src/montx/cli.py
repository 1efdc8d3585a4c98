"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 ECM found no factor.
Hex values are lowercase, fixed-length, little-endian.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import curve as C
from .chains import prac, stats_campaign, write_campaign_csv
from .curve import CurveConfig, MontgomeryCurve, SingularCurve
from .ecm import EcmConfig, EcmInputError, stage1
from .ladder import dh_keypair, dh_shared, dh_public, named_curve, scalar_mul, uniform_ladder, x_ladder
from .modarith import Modulus, decode, encode, is_probable_prime
from .xline import XZPoint

EXIT_USAGE, EXIT_DOMAIN, EXIT_NOT_FOUND = 1, 2, 3


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int(text: str) -> int:
    return int(text, 0)


def _add_curve_args(p, explicit=True):
    g = p.add_argument_group("curve selection")
    g.add_argument("--curve", help="named curve: curve25519 or curve448")
    g.add_argument("--config", type=Path, help="curve config file (key = value lines)")
    if explicit:
        g.add_argument("--q", type=_int)
        g.add_argument("--A", type=_int)
        g.add_argument("--B", type=_int)


def _load_curve(args) -> CurveConfig:
    if args.curve:
        try:
            return named_curve(args.curve)
        except KeyError as exc:
            raise DomainError(exc.args[0]) from None
    if args.config:
        try:
            return C.parse_curve_config(args.config.read_text())
        except (OSError, ValueError) as exc:
            raise DomainError(str(exc)) from None
    if getattr(args, "q", None) is not None and args.A is not None and args.B is not None:
        if args.q < 3 or args.q % 2 == 0 or not is_probable_prime(args.q):
            raise DomainError(f"q = {args.q} is not an odd prime")
        m = Modulus(args.q, is_prime=True)
        return CurveConfig(MontgomeryCurve(m(args.A), m(args.B)))
    raise argparse.ArgumentTypeError("give --curve, --config, or all of --q --A --B")


def _hex_element(text: str, m: Modulus):
    try:
        data = bytes.fromhex(text)
    except ValueError:
        raise DomainError(f"malformed hex: {text!r}") from None
    if len(data) != m.nbytes:
        raise DomainError(f"expected {m.nbytes} bytes ({2 * m.nbytes} hex digits), got {len(data)}")
    return decode(data, m)


def _hex(x) -> str:
    return encode(x).hex()


# -- commands ----------------------------------------------------------------

def cmd_curve_info(args, out):
    cfg = _load_curve(args)
    E = cfg.curve
    rep = C.classify_torsion(E)
    ed = C.to_edwards(E)
    lines = []
    if cfg.name:
        lines.append(f"name: {cfg.name}")
    lines += [
        f"q: {E.q}",
        f"A: {E.A.value}",
        f"B: {E.B.value}",
        f"j-invariant: {C.j_invariant(E).value}",
        f"(A+2)/4: {E.a24.value}",
        f"B square: {'yes' if rep.b_square else 'no'}",
        f"B(A+2) square: {'yes' if rep.a_plus_2_square else 'no'}",
        f"B(A-2) square: {'yes' if rep.a_minus_2_square else 'no'}",
        f"A^2-4 square: {'yes' if rep.full_two_torsion else 'no'}",
        f"4-torsion curve contains: {rep.curve}",
        f"4-torsion twist contains: {rep.twist}",
        f"edwards a: {ed.a.value}",
        f"edwards d: {ed.d.value}",
    ]
    if E.q <= 1 << 20:
        n = C.group_order_naive(E)
        lines += [f"order: {n}", f"twist order: {2 * E.q + 2 - n}"]
    out.write("\n".join(lines) + "\n")


def _read_secret(path: Path, cfg: CurveConfig) -> int:
    try:
        text = path.read_text().strip()
    except OSError as exc:
        raise DomainError(str(exc)) from None
    try:
        data = bytes.fromhex(text)
    except ValueError:
        raise DomainError("secret file is not hex") from None
    if len(data) != cfg.curve.modulus.nbytes:
        raise DomainError(f"secret must be {cfg.curve.modulus.nbytes} bytes")
    k = int.from_bytes(data, "little")
    if k >> cfg.scalar_bits:
        raise DomainError(f"secret exceeds {cfg.scalar_bits} bits")
    return k


def cmd_dh(args, out):
    cfg = _load_curve(args)
    if cfg.base_x is None or cfg.cofactor is None:
        raise DomainError("curve needs base_x and cofactor for dh")
    nbytes = cfg.curve.modulus.nbytes
    if args.action == "keygen":
        secret, public = dh_keypair(cfg, args.seed)
        args.secret_file.write_text(secret.to_bytes(nbytes, "little").hex() + "\n")
        out.write(_hex(public) + "\n")
        return
    secret = _read_secret(args.secret_file, cfg)
    if args.action == "pub":
        out.write(_hex(dh_public(cfg, secret)) + "\n")
    else:
        if args.peer is None:
            raise argparse.ArgumentTypeError("shared needs --peer")
        peer = _hex_element(args.peer, cfg.curve.modulus)
        out.write(_hex(dh_shared(cfg, secret, peer)) + "\n")


def cmd_mul(args, out):
    cfg = _load_curve(args)
    E = cfg.curve
    m = E.modulus
    x = _hex_element(args.x, m)
    k = args.k
    if k < 1:
        raise DomainError("k must be at least 1")
    if args.recover:
        if args.y is None:
            raise argparse.ArgumentTypeError("--recover needs --y")
        P = C.AffinePoint(x, _hex_element(args.y, m))
        if not C.on_curve(E, P):
            raise DomainError("(x, y) is not on the curve")
        try:
            R = scalar_mul(E, k, P)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
        if R.is_infinity:
            out.write("infinity\n")
        else:
            out.write(f"{_hex(R.x)}\n{_hex(R.y)}\n")
        return
    xP = XZPoint(x, m.one())
    if args.prac:
        r = prac(E, k, xP)
    elif args.uniform:
        r = uniform_ladder(E, k, xP)
    else:
        r = x_ladder(E, k, xP).xk
    if r.Z.value == 0:
        out.write("infinity-or-T\n")
    else:
        out.write(_hex(r.X / r.Z) + "\n")


def cmd_chain_stats(args, out):
    cfg = named_curve(args.curve) if args.curve else named_curve("curve25519")
    xP = XZPoint(cfg.base_x, cfg.curve.modulus.one())
    if args.bits < 8 or args.samples < 1:
        raise DomainError("need --bits >= 8 and --samples >= 1")
    summary = stats_campaign(cfg.curve, xP, args.bits, args.samples, args.seed)
    write_campaign_csv(summary, out)
    if args.plot:
        from .plotting import plot_chain_ratios
        plot_chain_ratios(summary, args.plot)


def cmd_ecm(args, out):
    try:
        cfg = EcmConfig(args.N, args.B1, args.curves, args.seed)
    except EcmInputError as exc:
        raise DomainError(str(exc)) from None
    res = stage1(cfg)
    if res.factor is None:
        out.write(f"no factor (tried {res.curves_tried} curves)\n")
        return EXIT_NOT_FOUND
    out.write(f"factor: {res.factor}\ncofactor: {args.N // res.factor}\n"
              f"curve: {res.curves_tried}\nsigma: {res.seed_of_success}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="montx", description="Montgomery-curve x-line arithmetic toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ci = sub.add_parser("curve-info", help="curve parameters, torsion and group order")
    _add_curve_args(ci)
    ci.set_defaults(func=cmd_curve_info)

    dh = sub.add_parser("dh", help="x-only Diffie-Hellman")
    dh.add_argument("action", choices=["keygen", "pub", "shared"])
    _add_curve_args(dh, explicit=False)
    dh.add_argument("--seed", type=_int, default=None, help="RNG seed for keygen")
    dh.add_argument("--secret-file", type=Path, required=True)
    dh.add_argument("--peer", help="peer public key, hex")
    dh.set_defaults(func=cmd_dh)

    mu = sub.add_parser("mul", help="pseudomultiplication x(P) -> x([k]P)")
    _add_curve_args(mu)
    mu.add_argument("--k", type=_int, required=True)
    mu.add_argument("--x", required=True, help="x(P), hex")
    alg = mu.add_mutually_exclusive_group()
    alg.add_argument("--uniform", action="store_true")
    alg.add_argument("--prac", action="store_true")
    mu.add_argument("--recover", action="store_true", help="full [k]P via y-recovery")
    mu.add_argument("--y", help="y(P), hex (with --recover)")
    mu.set_defaults(func=cmd_mul)

    cs = sub.add_parser("chain-stats", help="ladder vs PRAC chain lengths, CSV on stdout")
    cs.add_argument("--bits", type=int, default=64)
    cs.add_argument("--samples", type=int, default=1000)
    cs.add_argument("--seed", type=_int, default=0)
    cs.add_argument("--curve", default=None)
    cs.add_argument("--plot", type=Path, metavar="FILE", help="also write a ratio histogram (png, pdf, svg)")
    cs.set_defaults(func=cmd_chain_stats)

    ec = sub.add_parser("ecm", help="ECM stage 1")
    ec.add_argument("--N", type=_int, required=True)
    ec.add_argument("--B1", type=_int, default=1000)
    ec.add_argument("--curves", type=_int, default=20)
    ec.add_argument("--seed", type=_int, default=0)
    ec.set_defaults(func=cmd_ecm)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out) or 0
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"montx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, SingularCurve, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"montx: {msg}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
