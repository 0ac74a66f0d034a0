"""symtree command line: tips, extents, critical factors, sweeps, oracles and SVG output.

Results go to stdout, logs to stderr (and optionally a log file). Exit codes:
0 success, 2 usage or address syntax error or unwritable output, 3 any other
domain error. An undefined critical value is a result, not an error.
"""
import functools
import json
import logging
import os
import sys

import click

from src.address import format_address, parse_address
from src.config import get_setting
from src.critical import critical_factor, sweep
from src.errors import AddressSyntaxError, SymTreeError
from src.extremal import ExtremeKind, check_theta, extent
from src.oracle import certified_extent, certify_extent, classify_overlap
from src.render import (SceneSpec, critical_samples, difference_samples, numerator_samples,
                        plot_function, render_tree, write_document, write_sweep_table, write_table)
from src.tipcalc import TreeParams, tip_position
from src.utils import fmt_fixed, json_number

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_DOMAIN = 3
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

KIND_CHOICE = click.Choice([kind.value for kind in ExtremeKind], case_sensitive=False)


def configure_logging(verbose=False, log_file=None):
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        directory = os.path.dirname(os.path.abspath(log_file))
        os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format=LOG_FORMAT, handlers=handlers, force=True)


def _fail(message, code):
    click.echo(f"Error: {message}", err=True)
    click.get_current_context().exit(code)


def reports_errors(f):
    """Map library exceptions onto the documented exit codes."""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except AddressSyntaxError as e:
            _fail(e, EXIT_USAGE)
        except SymTreeError as e:
            logger.debug(f"{f.__name__} failed: {e}")
            _fail(e, EXIT_DOMAIN)
        except OSError as e:
            _fail(f"cannot write output: {e}", EXIT_USAGE)
    return wrapper


def _params(theta, r):
    return TreeParams(theta, r)


def _echo_fields(fields):
    width = max(len(name) for name, _ in fields)
    for name, value in fields:
        click.echo(f"{name.ljust(width)} = {value}")


def _echo_json(payload):
    click.echo(json.dumps(payload, indent=2))


def _emit(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        write_document(text, out)
        click.echo(f"Wrote {out}", err=True)


tree_options = [
    click.option('--theta', type=float, required=True, help='Branching angle in degrees, 0 < theta < 180'),
    click.option('--r', type=float, required=True, help='Scaling factor, 0 < r < 1'),
]


def with_tree_options(f):
    for option in reversed(tree_options):
        f = option(f)
    return f


@click.group()
@click.option('--verbose', is_flag=True, help='Log progress at INFO level')
@click.option('--log-file', type=click.Path(dir_okay=False), default=None, help='Also write the log to this file')
def main(verbose, log_file):
    """Geometry of symmetric binary fractal trees."""
    configure_logging(verbose, log_file)


@main.command()
@with_tree_options
@click.option('--address', required=True, help='Tip address, e.g. "R^3(LR)^inf"')
@click.option('--json', 'as_json', is_flag=True, help='Print a JSON object')
@reports_errors
def tip(theta, r, address, as_json):
    """Position of the tip with the given address."""
    p = _params(theta, r)
    a = parse_address(address)
    point = tip_position(p, a)
    if as_json:
        _echo_json({'theta': json_number(p.theta), 'r': json_number(p.r),
                    'address': format_address(a), 'x': json_number(point.x), 'y': json_number(point.y)})
    else:
        _echo_fields([('x', fmt_fixed(point.x)), ('y', fmt_fixed(point.y))])


@main.command(name='extent')
@with_tree_options
@click.option('--certify', is_flag=True, help='Check the extent against the finite-depth oracle')
@click.option('--depth', type=int, default=None, help='Oracle depth (default from settings)')
@click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--json', 'as_json', is_flag=True, help='Print a JSON object')
@reports_errors
def extent_cmd(theta, r, certify, depth, workers, as_json):
    """Top, bottom, left and right of the tree with the witnessing tips."""
    p = _params(theta, r)
    if certify:
        depth = get_setting('certify_depth') if depth is None else depth
        ext = certified_extent(p, depth, workers)
    else:
        ext = extent(p)
    rows = [('top', ext.top, ext.witness_top), ('bottom', ext.bottom, ext.witness_bottom),
            ('right', ext.right, ext.witness_right), ('left', ext.left, ext.witness_left)]
    if as_json:
        payload = {}
        for name, value, witness in rows:
            payload[name] = json_number(value)
            payload[f'witness_{name}'] = format_address(witness)
        payload['certified'] = ext.certified
        _echo_json(payload)
        return
    _echo_fields([(name, f"{fmt_fixed(value)}  {format_address(witness)}") for name, value, witness in rows])
    if certify:
        click.echo(f"certified = {'yes' if ext.certified else 'no'} (depth {depth})")


@main.command()
@click.option('--kind', type=KIND_CHOICE, required=True)
@click.option('--theta', type=float, required=True, help='Branching angle in degrees')
@click.option('--json', 'as_json', is_flag=True, help='Print a JSON object')
@reports_errors
def critical(kind, theta, as_json):
    """Critical scaling factor r_T, r_B or r_S at one angle."""
    result = critical_factor(ExtremeKind.parse(kind), theta)
    if as_json:
        _echo_json({'kind': result.kind.value, 'theta': json_number(result.theta),
                    'status': result.status.value, 'method': result.method.value,
                    'r_value': json_number(result.r_value), 'residual': json_number(result.residual),
                    'sign_changes': result.sign_changes, 'precise': result.precise})
        return
    if result.found:
        click.echo(f"{result.symbol} = {fmt_fixed(result.r_value)} ({result.method.value})")
        _echo_fields([('residual', f"{result.residual:.3e}"), ('sign_changes', result.sign_changes),
                      ('precise', 'yes' if result.precise else 'no')])
    else:
        click.echo(f"{result.symbol}: {result.status.value}")


@main.command(name='sweep')
@click.option('--kind', type=KIND_CHOICE, required=True)
@click.option('--from', 'theta_from', type=float, required=True, help='First angle in degrees')
@click.option('--to', 'theta_to', type=float, required=True, help='Last angle in degrees')
@click.option('--step', type=float, required=True, help='Angle step in degrees')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='CSV file (stdout if omitted)')
@click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True)
@reports_errors
def sweep_cmd(kind, theta_from, theta_to, step, out, workers):
    """Critical factor over a range of angles as a CSV table."""
    rows = sweep(ExtremeKind.parse(kind), theta_from, theta_to, step, workers)
    write_sweep_table(rows, click.get_text_stream('stdout') if out is None else out)
    if out is not None:
        click.echo(f"Wrote {len(rows)} rows to {out}", err=True)


def _parse_highlight(text):
    address, sep, color = text.rpartition(':')
    if not sep or not address or not color:
        raise click.BadParameter(f"expected ADDRESS:COLOR, got {text!r}", param_hint='--highlight')
    return parse_address(address), color


@main.command()
@with_tree_options
@click.option('--depth', type=int, required=True, help='Branch levels to draw (0..16)')
@click.option('--highlight', multiple=True, metavar='ADDR:COLOR', help='Path to draw on top, repeatable')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='SVG file (stdout if omitted)')
@click.option('--width', type=int, default=None, help='Canvas width in px')
@click.option('--height', type=int, default=None, help='Canvas height in px')
@click.option('--margin', type=int, default=None, help='Canvas margin in px')
@reports_errors
def render(theta, r, depth, highlight, out, width, height, margin):
    """SVG drawing of the tree with highlighted tip paths."""
    p = _params(theta, r)
    highlights = tuple(_parse_highlight(item) for item in highlight)
    spec = SceneSpec(p, depth, highlights, width=width, height=height, margin=margin)
    _emit(render_tree(spec), out)


@main.command()
@with_tree_options
@click.option('--depth', type=int, default=None, help='Truncation depth (1..16, default from settings)')
@click.option('--tol', type=float, default=None, help='Contact tolerance (default from settings)')
@click.option('--json', 'as_json', is_flag=True, help='Print a JSON object')
@reports_errors
def classify(theta, r, depth, tol, as_json):
    """Self-avoiding, near-contact or overlapping at a finite depth."""
    result = classify_overlap(_params(theta, r), depth, tol)
    witness = None
    if result.witness_pair is not None:
        witness = [format_address(a) for a in result.witness_pair]
    if as_json:
        _echo_json({'class': result.kind.value, 'depth': result.depth,
                    'min_separation': json_number(result.min_separation),
                    'witness_pair': witness, 'crossing_level': result.crossing_level})
        return
    fields = [('class', result.kind.value), ('depth', result.depth)]
    if result.min_separation is not None:
        fields.append(('min_separation', fmt_fixed(result.min_separation)))
    if witness is not None:
        # the trunk has the empty address
        fields.append(('witness_pair', ', '.join(w or 'trunk' for w in witness)))
    if result.crossing_level is not None:
        fields.append(('crossing_level', result.crossing_level))
    _echo_fields(fields)


@main.command()
@with_tree_options
@click.option('--depth', type=int, default=None, help='Enumeration depth (1..24, default from settings)')
@click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--json', 'as_json', is_flag=True, help='Print a JSON object')
@reports_errors
def certify(theta, r, depth, workers, as_json):
    """Certified intervals for the extremes and whether extent() falls inside them."""
    p = _params(theta, r)
    depth = get_setting('certify_depth') if depth is None else depth
    box = certify_extent(p, depth, workers)
    intervals = [('top', box.top, box.analytic.top), ('bottom', box.bottom, box.analytic.bottom),
                 ('right', box.right, box.analytic.right)]
    if as_json:
        payload = {'depth': box.depth, 'tail': json_number(box.tail), 'consistent': box.consistent}
        for name, interval, value in intervals:
            payload[name] = {'low': json_number(interval.low), 'high': json_number(interval.high),
                             'analytic': json_number(value)}
        _echo_json(payload)
        return
    _echo_fields([(name, f"[{fmt_fixed(interval.low)}, {fmt_fixed(interval.high)}]  "
                         f"analytic {fmt_fixed(value)}")
                  for name, interval, value in intervals]
                 + [('tail', fmt_fixed(box.tail)), ('consistent', 'yes' if box.consistent else 'no')])


@main.command()
@click.option('--what', type=click.Choice(['numerator', 'critical', 'difference']), required=True)
@click.option('--kind', type=KIND_CHOICE, required=True)
@click.option('--theta', type=float, default=None, help='Angle for --what difference')
@click.option('--from', 'theta_from', type=float, default=0.25, show_default=True)
@click.option('--to', 'theta_to', type=float, default=179.75, show_default=True)
@click.option('--step', type=float, default=0.25, show_default=True)
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='SVG file (stdout if omitted)')
@click.option('--csv', 'csv_out', type=click.Path(dir_okay=False), default=None, help='Also write the samples as CSV')
@click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True)
@reports_errors
def plot(what, kind, theta, theta_from, theta_to, step, out, csv_out, workers):
    """Plot N(θ), the critical factor against θ, or f_θ(r)."""
    kind = ExtremeKind.parse(kind)
    if what == 'numerator':
        samples = numerator_samples(kind, theta_from, theta_to, step)
        table, key = [(t, value, 'defined') for t, value in samples], 'theta_deg'
        svg = plot_function(samples, 'theta (deg)', f'N_{kind.value}', title=f'N_{kind.value}(theta)')
    elif what == 'critical':
        rows = sweep(kind, theta_from, theta_to, step, workers)
        samples = critical_samples(rows)
        table, key = [(row.theta, row.result.r_value, row.result.status.value) for row in rows], 'theta_deg'
        symbol = rows[0].result.symbol
        svg = plot_function(samples, 'theta (deg)', symbol, title=f'{symbol}(theta)')
    else:
        if theta is None:
            raise click.UsageError('--theta is required for --what difference')
        check_theta(theta)
        samples = difference_samples(kind, theta)
        table, key = [(x, value, 'defined') for x, value in samples], 'r'
        svg = plot_function(samples, 'r', f'f_{kind.value}',
                            title=f'f_{kind.value}(r) at theta = {fmt_fixed(theta, 3)}')
    if csv_out is not None:
        write_table(table, csv_out, key=key)
    _emit(svg, out)


def run(argv=None):
    """Run the CLI on ``argv`` and return the exit code instead of exiting."""
    try:
        code = main.main(args=argv, prog_name='symtree', standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo('Aborted!', err=True)
        return 1
    return code if isinstance(code, int) else 0
