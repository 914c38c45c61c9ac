"""Command-line front end.

Single evaluation::

    ncgamma cdf-central --a 1 --x 2.5
    ncgamma inv-noncentral --target x --mu 1 --y 5 --q 1e-3

Batch mode reads one ``command,key=value,...`` request per line from a file
(``-`` for standard input)::

    ncgamma --batch requests.txt

Every evaluation prints one line of ``key=value`` pairs ending in
``ierr=N``.  The exit code is the routine's error flag, 64 for usage errors
and 66 for an unreadable batch file.
"""

import argparse
import math
import sys
from decimal import Decimal

from .central import cdf_central, inv_central
from .erf import erf, erfc, erfc_scaled, inverfc, normal_cdf, normal_quantile
from .gamma import gammafun, gamstar, loggam, quotgamm
from .noncentral import cdf_noncentral, inv_noncentral
from .types import DomainError, DistributionKind, InversionTarget, to_kind, to_target

EXIT_USAGE = 64
EXIT_NO_INPUT = 66
DEFAULT_DIGITS = 17

# scalar functions: domain errors and overflow are reported through ierr
IERR_SCALAR_OVERFLOW = 1
IERR_SCALAR_DOMAIN = 2


class UsageError(Exception):
    """Malformed request: unknown command, missing or bad option."""


def format_value(v: float, digits: int = DEFAULT_DIGITS) -> str:
    """Scientific notation with ``digits`` significant digits, e.g. 1.5e-3.

    With 17 digits the text always parses back to the same double.
    """
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == 0:
        return f"{0.0:.{digits - 1}f}e0" if digits > 1 else "0e0"
    # shortest round-trip digits, zero padded; rounded when they are more
    # than requested
    shortest = Decimal(repr(v))
    if len(shortest.as_tuple().digits) <= digits:
        text = f"{shortest:.{digits - 1}e}"
    else:
        text = f"{v:.{digits - 1}e}"
    mantissa, exponent = text.lower().split("e")
    return f"{mantissa}e{int(exponent)}"


def _pair_probabilities(args):
    p, q = args.get("p"), args.get("q")
    if p is None and q is None:
        raise UsageError("one of p, q is required")
    if p is None:
        p = 1.0 - q
    elif q is None:
        q = 1.0 - p
    return p, q


def _cdf_central(args):
    pq, st = cdf_central(args["a"], args["x"], kind=args["kind"])
    return [("p", pq.p), ("q", pq.q)], st.ierr


def _inv_central(args):
    p, q = _pair_probabilities(args)
    x, st = inv_central(args["a"], p, q, kind=args["kind"])
    return [("x", x)], st.ierr


def _cdf_noncentral(args):
    pq, st = cdf_noncentral(args["mu"], args["x"], args["y"], kind=args["kind"])
    return [("p", pq.p), ("q", pq.q)], st.ierr


def _inv_noncentral(args):
    target = args["target"]
    p, q = _pair_probabilities(args)
    key = "y" if target is InversionTarget.NONCENTRALITY_X else "x"
    if args.get(key) is None:
        raise UsageError(f"target {'x' if key == 'y' else 'y'} needs --{key}")
    v, st = inv_noncentral(target, args["mu"], p, q, args[key], kind=args["kind"])
    return [("x", v)], st.ierr


def _scalar(func, keys, name="value"):
    def run(args):
        try:
            v = func(*(args[k] for k in keys))
        except DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return [(name, math.nan)], IERR_SCALAR_DOMAIN
        except OverflowError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return [(name, math.inf)], IERR_SCALAR_OVERFLOW
        return [(name, v)], 0

    return run


def _normal_cdf(args):
    pq = normal_cdf(args["x"])
    return [("p", pq.p), ("q", pq.q)], 0


# name -> (handler, required options, optional options)
COMMANDS = {
    "cdf-central": (_cdf_central, ("a", "x"), ("kind",)),
    "inv-central": (_inv_central, ("a",), ("p", "q", "kind")),
    "cdf-noncentral": (_cdf_noncentral, ("mu", "x", "y"), ("kind",)),
    "inv-noncentral": (_inv_noncentral, ("target", "mu"), ("p", "q", "x", "y", "kind")),
    "erf": (_scalar(erf, ("x",)), ("x",), ()),
    "erfc": (_scalar(erfc, ("x",)), ("x",), ()),
    "erfc-scaled": (_scalar(erfc_scaled, ("x",)), ("x",), ()),
    "inverfc": (_scalar(inverfc, ("y",), "x"), ("y",), ()),
    "normal-cdf": (_normal_cdf, ("x",), ()),
    "normal-quantile": (_scalar(normal_quantile, ("p",), "x"), ("p",), ()),
    "gamma": (_scalar(gammafun, ("x",)), ("x",), ()),
    "loggam": (_scalar(loggam, ("x",)), ("x",), ()),
    "gamstar": (_scalar(gamstar, ("x",)), ("x",), ()),
    "quotgamm": (_scalar(quotgamm, ("x", "y")), ("x", "y"), ()),
}


def _parse_number(key, text):
    try:
        v = float(text)
    except ValueError:
        raise UsageError(f"option {key} expects a number, got {text!r}") from None
    if not math.isfinite(v):
        raise UsageError(f"option {key} must be finite, got {text!r}")
    return v


def _convert(key, text):
    if key == "kind":
        try:
            return to_kind(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if key == "target":
        try:
            return to_target(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return _parse_number(key, text)


def evaluate(command: str, options: dict, digits: int = DEFAULT_DIGITS):
    """Run one request given as text options; returns ``(line, ierr)``.

    Raises UsageError for unknown commands, unknown or missing options and
    unparsable values.
    """
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    handler, required, optional = COMMANDS[command]
    unknown = set(options) - set(required) - set(optional)
    if unknown:
        raise UsageError(f"{command}: unknown option(s) {', '.join(sorted(unknown))}")
    missing = [k for k in required if options.get(k) is None]
    if missing:
        raise UsageError(f"{command}: missing option(s) {', '.join(missing)}")
    args = {k: (None if v is None else _convert(k, v)) for k, v in options.items()}
    args.setdefault("kind", DistributionKind.GAMMA)
    if args["kind"] is None:
        args["kind"] = DistributionKind.GAMMA
    fields, ierr = handler(args)
    parts = [f"{k}={format_value(v, digits)}" for k, v in fields]
    parts.append(f"ierr={ierr}")
    return " ".join(parts), ierr


def _parse_batch_line(line):
    tokens = [t.strip() for t in line.split(",")]
    command, options = tokens[0], {}
    digits = None
    for token in tokens[1:]:
        if not token:
            continue
        key, sep, value = token.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not key:
            raise UsageError(f"expected key=value, got {token!r}")
        if key == "digits":
            digits = _parse_digits(value.strip())
        else:
            options[key] = value.strip()
    return command, options, digits


def _parse_digits(text):
    try:
        d = int(text)
    except ValueError:
        raise UsageError(f"digits expects an integer, got {text!r}") from None
    if not 1 <= d <= 17:
        raise UsageError("digits must be between 1 and 17")
    return d


def run_batch(stream, out=None, digits=None) -> int:
    """Evaluate every request line of ``stream``; returns the exit code.

    Output goes to ``out`` (standard output by default).  Blank lines and
    lines starting with ``#`` are skipped.  A malformed line prints
    ``ierr=64`` and the batch continues.
    """
    if out is None:
        out = sys.stdout
    exit_code = 0
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            command, options, line_digits = _parse_batch_line(line)
            text, ierr = evaluate(command, options, line_digits or digits or DEFAULT_DIGITS)
        except UsageError as exc:
            print(f"line {lineno}: {exc}", file=sys.stderr)
            text, ierr = f"ierr={EXIT_USAGE}", EXIT_USAGE
        print(text, file=out)
        if exit_code == 0:
            exit_code = ierr
    return exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncgamma", description="Gamma, chi-square and error function evaluations.")
    parser.add_argument("--digits", type=int, default=None, help="significant digits (default 17)")
    parser.add_argument("--batch", metavar="PATH", help="read command,key=value lines from PATH ('-' = stdin)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, (_, required, optional) in COMMANDS.items():
        cmd = sub.add_parser(name)
        for key in required + optional:
            cmd.add_argument(f"--{key}", required=key in required, default=None)
        cmd.add_argument("--digits", type=int, default=None, dest="cmd_digits")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        digits = ns.digits
        if getattr(ns, "cmd_digits", None) is not None:
            digits = ns.cmd_digits
        if digits is not None:
            digits = _parse_digits(str(digits))
        if ns.batch is not None:
            if ns.command is not None:
                raise UsageError("--batch takes no command")
            if ns.batch == "-":
                return run_batch(sys.stdin, digits=digits)
            try:
                with open(ns.batch, encoding="utf-8") as fh:
                    lines = fh.readlines()
            except OSError as exc:
                print(f"ncgamma: cannot read {ns.batch}: {exc.strerror}", file=sys.stderr)
                return EXIT_NO_INPUT
            return run_batch(lines, digits=digits)
        if ns.command is None:
            raise UsageError("a command or --batch is required")
        _, required, optional = COMMANDS[ns.command]
        options = {k: getattr(ns, k) for k in required + optional if getattr(ns, k) is not None}
        text, ierr = evaluate(ns.command, options, digits or DEFAULT_DIGITS)
    except UsageError as exc:
        print(f"ncgamma: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    if ierr:
        print(f"ncgamma: {ns.command} returned ierr={ierr}", file=sys.stderr)
    return ierr


if __name__ == "__main__":
    sys.exit(main())
