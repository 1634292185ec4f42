"""
Command line entry point.

Every subcommand accepts ``--config FILE`` holding flat ``key=value`` lines whose keys are option names
(``family=augmented``, ``n=4``, ``T=11``); flags given on the command line override the file.

Exit codes: 0 success, 2 configuration error, 3 resource limit, 4 coin strategy not applicable, 5 verification failed.
"""
from __future__ import annotations
import argparse
import contextlib
import csv
import logging
import sys
import orjson  # type: ignore
from typing import IO, Iterator, List, Optional, Sequence
from cubewalk import IndexableNamespace, settings, version
from cubewalk.core import (CubelikeGraph, FAMILIES, family_graph, load_generating_set, target_vertex,
                           format_generating_set)
from cubewalk.core.types import BitString
from cubewalk.walk import (CoinPadding, initial_state, evolve, trace, position_distribution, write_distribution_csv,
                           write_trace_csv)
from cubewalk.circuit import (CoinStrategy, McxLowering, GateProgram, compile_walk, compile_shift, emit_qasm,
                              parse_qasm, gate_counts, verify_equivalence, verify_walk)
from cubewalk.hitting import (default_window, find_hitting_time, probability_curve, family_sweep, degree_sweep,
                              conjecture_check)
from cubewalk.exceptions import ConfigError, DegreeNotPowerOfTwo, ResourceLimitExceeded

__all__ = ['RunConfig', 'build_parser', 'main', 'EXIT_OK', 'EXIT_CONFIG', 'EXIT_RESOURCE', 'EXIT_STRATEGY',
           'EXIT_VERIFICATION']

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_STRATEGY = 4
EXIT_VERIFICATION = 5

COMMANDS = ('walk', 'compile', 'hit', 'sweep', 'verify', 'families')

logger = logging.getLogger('cubewalk.cli')


class RunConfig(IndexableNamespace):
    """ Parsed options of one invocation. Missing options read as ``None``. """

    def __getattr__(self, item):
        # only reached for options the subcommand does not define
        if item.startswith('__'):
            raise AttributeError(item)
        return None

    def graph(self) -> CubelikeGraph:
        """
        Build the graph from exactly one source: ``--family`` with ``-n``, or ``--generating-set``.

        Raises:
            ConfigError: if zero or two graph sources are configured, or ``-n`` is missing.
        """
        if self.family and self.generating_set:
            raise ConfigError("Give exactly one graph source: --family or --generating-set, not both")
        if self.generating_set:
            return load_generating_set(self.generating_set)
        if not self.family:
            raise ConfigError("No graph given, use --family with -n or --generating-set")
        if self.n is None:
            raise ConfigError(f"Family {self.family} needs a dimension, use -n")
        return family_graph(self.family, self.n, self.extra or 0, self.seed or 0)

    def steps(self, default: Optional[int] = None) -> int:
        T = self.T if self.T is not None else default
        if T is None:
            raise ConfigError("Missing step count, use -T")
        if T < 0:
            raise ConfigError(f"Step count must be non-negative, got {T}")
        return T

    def vertex(self, option: str, g: CubelikeGraph) -> Optional[BitString]:
        text = self[option] if option in self.__dict__ else None
        if text is None:
            return None
        try:
            v = BitString.from_string(str(text))
        except ValueError as e:
            raise ConfigError(f"Invalid --{option} vertex: {e}")
        if v.width != g.n:
            raise ConfigError(f"--{option} {text} has width {v.width}, the graph has n={g.n}")
        return v


@contextlib.contextmanager
def _output(path: Optional[str]) -> Iterator[IO[str]]:
    if path is None or path == '-':
        yield sys.stdout
    else:
        with open(path, 'w', newline='') as f:
            yield f


def _dump_json(data, stream: IO[str]) -> None:
    stream.write(orjson.dumps(data, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS).decode())
    stream.write('\n')


def cmd_walk(config: RunConfig) -> int:
    g = config.graph()
    T = config.steps()
    start = config.vertex('start', g)
    state = initial_state(g, start if start is not None else BitString.zero(g.n), _padding(config, g))
    if config.trace:
        distributions = trace(state, T)
        with _output(config.trace) as f:
            write_trace_csv(distributions, f)
        final = distributions[-1]
    else:
        final = position_distribution(evolve(state, T))
    with _output(config.output) as f:
        write_distribution_csv(final, f, by_probability=config.sort == 'probability')
    return EXIT_OK


def _padding(config: RunConfig, g: CubelikeGraph) -> CoinPadding:
    if config.padding:
        return CoinPadding(config.padding)
    return CoinPadding.default_for(g)


def _strategy(config: RunConfig, g: CubelikeGraph) -> CoinStrategy:
    if config.strategy:
        return CoinStrategy(config.strategy)
    return CoinStrategy.default_for(g)


def cmd_compile(config: RunConfig) -> int:
    g = config.graph()
    T = config.steps(default=1)
    if T < 1:
        raise ConfigError("Compiling needs at least one step")
    strategy = _strategy(config, g)
    lowering = McxLowering(config.mcx_lowering or McxLowering.OPAQUE.value)
    program = compile_walk(g, T, strategy)

    with _output(config.output) as f:
        f.write(emit_qasm(program, lowering))
    if config.program:
        with _output(config.program) as f:
            f.write(program.to_text())

    total = gate_counts(program).to_json()
    shift = gate_counts(compile_shift(g))
    counts = {'graph': g.descriptor,
              'n': g.n,
              'delta': g.delta,
              'm': g.m,
              'T': T,
              'strategy': strategy.value,
              'mcx_lowering': lowering.value,
              'total': total,
              'shift': {'x': shift.x_count, 'mcx': shift.mcx_count},
              'shift_predicted': {'x': (1 << (g.m + 1)) - 2, 'mcx': sum(w.weight() for w in g.omega)}}
    # whole program tallies also at the top level
    counts.update((key, total[key]) for key in ('x', 'mcx', 'h', 'rotations'))
    if config.counts:
        with _output(config.counts) as f:
            _dump_json(counts, f)
    elif config.output not in (None, '-'):
        _dump_json(counts, sys.stdout)
    return EXIT_OK


def cmd_hit(config: RunConfig) -> int:
    g = config.graph()
    start = config.vertex('start', g)
    target = config.vertex('target', g)
    first, last = default_window(g)
    if config.window_from is not None:
        first = config.window_from
    if config.window_to is not None:
        last = config.window_to
    record = find_hitting_time(g, start, target, (first, last), _padding(config, g))
    result = record.to_json()
    result.update({'n': g.n, 'delta': g.delta})
    with _output(config.output) as f:
        _dump_json(result, f)

    if config.curve:
        T_max = config.curve_max if config.curve_max is not None else last
        curve = probability_curve(g, T_max, record.start, record.target, CoinPadding(record.padding))
        with _output(config.curve) as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['T', 'p'])
            for T, p in enumerate(curve):
                writer.writerow([T, f"{p:.12g}"])
    return EXIT_OK


def cmd_sweep(config: RunConfig) -> int:
    if config.fixed_n is not None:
        if config.k_from is None or config.k_to is None:
            raise ConfigError("A degree sweep needs --k-from and --k-to")
        report = degree_sweep(config.fixed_n, range(config.k_from, config.k_to + 1), config.seed or 0,
                              config.workers, config.padding)
    else:
        if not config.family:
            raise ConfigError("A sweep needs --family (or --fixed-n for a degree sweep)")
        if config.n_from is None or config.n_to is None:
            raise ConfigError("A family sweep needs --n-from and --n-to")
        if config.n_to < config.n_from:
            raise ConfigError(f"Empty dimension range {config.n_from}..{config.n_to}")
        report = family_sweep(config.family, range(config.n_from, config.n_to + 1), config.extra or 0,
                              config.seed or 0, config.workers, config.padding)

    with _output(config.output) as f:
        report.write_csv(f)
    if config.plot_data:
        with _output(config.plot_data) as f:
            report.write_plot_data(f)
    if len(report) >= 3:
        verdict = conjecture_check(report)
        logger.info(f"slope={verdict.slope:.4f} |slope-pi/2|={verdict.slope_error:.4f} "
                    f"max|T-pi*delta/2|={verdict.max_deviation:.4f} parity_violations={verdict.parity_violations}")
    return EXIT_OK


def _load_program(path: str) -> GateProgram:
    with open(path, 'r') as f:
        text = f.read()
    if text.lstrip().startswith('OPENQASM'):
        return parse_qasm(text)
    return GateProgram.from_text(text)


def cmd_verify(config: RunConfig) -> int:
    g = config.graph()
    T = config.steps(default=1)
    reports = []
    if config.program:
        reports.append(verify_walk(g, T, program=_load_program(config.program)))
    else:
        if config.strategy:
            strategies = [CoinStrategy(config.strategy)]
        elif g.delta == g.coin_slots:
            strategies = [CoinStrategy.PAPER_DIFFUSION, CoinStrategy.PREPARE_REFLECT]
        else:
            strategies = [CoinStrategy.PREPARE_REFLECT]
        for strategy in strategies:
            reports.append(verify_equivalence(g, T, strategy))
            if T >= 1:
                reports.append(verify_walk(g, T, strategy))

    passed = all(r.passed for r in reports)
    with _output(config.output) as f:
        _dump_json({'graph': g.descriptor,
                    'T': T,
                    'checks': [r.to_json() for r in reports],
                    'pass': passed}, f)
    if passed:
        logger.info(f"Verification of {g.descriptor} passed")
        return EXIT_OK
    worst = max(r.max_deviation for r in reports)
    logger.warning(f"Verification of {g.descriptor} failed, max deviation {worst:.3e}")
    return EXIT_VERIFICATION


def cmd_families(config: RunConfig) -> int:
    if config.n is None:
        raise ConfigError("families needs -n")
    entries = []
    for family in FAMILIES:
        extra = config.extra if config.extra is not None else 1
        try:
            g = family_graph(family, config.n, extra if family == 'random' else 0, config.seed or 0)
        except ValueError as e:
            entries.append({'family': family, 'error': str(e)})
            continue
        entries.append({'family': family,
                        'graph': g.descriptor,
                        'n': g.n,
                        'delta': g.delta,
                        'm': g.m,
                        'target': str(target_vertex(g)),
                        'generators': format_generating_set(g).splitlines()[2:]})
    with _output(config.output) as f:
        _dump_json(entries, f)
    return EXIT_OK


HANDLERS = {'walk': cmd_walk,
            'compile': cmd_compile,
            'hit': cmd_hit,
            'sweep': cmd_sweep,
            'verify': cmd_verify,
            'families': cmd_families}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help="flat key=value file, flags override its values")
    common.add_argument('-v', '--verbose', action='count', default=0, help="-v for info, -vv for debug logging")
    common.add_argument('--limit-wires', type=int, help="largest n+m accepted")
    common.add_argument('-o', '--output', help="output file, '-' for stdout (default)")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument('--family', choices=FAMILIES)
    graph.add_argument('-n', type=int, help="dimension")
    graph.add_argument('-k', '--extra', type=int, help="extra generators of the random family")
    graph.add_argument('--seed', type=int, help="seed of the random family")
    graph.add_argument('--generating-set', help="generating set file")

    walk_model = argparse.ArgumentParser(add_help=False)
    walk_model.add_argument('--padding', choices=[p.value for p in CoinPadding],
                            help="coin padding mode, loop for complete graphs and reflect otherwise by default")

    circuit = argparse.ArgumentParser(add_help=False)
    circuit.add_argument('--strategy', choices=[s.value for s in CoinStrategy])

    parser = argparse.ArgumentParser(prog='cubewalk', description="Coined quantum walks on cubelike graphs")
    parser.add_argument('--version', action='version', version=f"%(prog)s {version}")
    sub = parser.add_subparsers(dest='command', required=True)

    walk = sub.add_parser('walk', parents=[common, graph, walk_model], help="position distribution after T steps")
    walk.add_argument('-T', '--steps', dest='T', type=int)
    walk.add_argument('--start', help="start vertex bits, 0^n by default")
    walk.add_argument('--sort', choices=('vertex', 'probability'), default='vertex')
    walk.add_argument('--trace', help="write the distribution after every step to this CSV file")

    compile_ = sub.add_parser('compile', parents=[common, graph, circuit], help="gate level circuit as QASM")
    compile_.add_argument('-T', '--steps', dest='T', type=int)
    compile_.add_argument('--mcx-lowering', choices=[m.value for m in McxLowering])
    compile_.add_argument('--counts', help="gate count JSON file")
    compile_.add_argument('--program', help="also write the program dump format to this file")

    hit = sub.add_parser('hit', parents=[common, graph, walk_model], help="one-shot hitting time")
    hit.add_argument('--start')
    hit.add_argument('--target', help="target vertex bits, XOR of the generators by default")
    hit.add_argument('--window-from', type=int)
    hit.add_argument('--window-to', type=int)
    hit.add_argument('--curve', help="write the target probability for T=0..curve-max to this CSV file")
    hit.add_argument('--curve-max', type=int)

    sweep = sub.add_parser('sweep', parents=[common, graph, walk_model], help="hitting times over a family")
    sweep.add_argument('--n-from', type=int)
    sweep.add_argument('--n-to', type=int)
    sweep.add_argument('--fixed-n', type=int, help="degree sweep at fixed dimension with random extras")
    sweep.add_argument('--k-from', type=int)
    sweep.add_argument('--k-to', type=int)
    sweep.add_argument('--workers', type=int)
    sweep.add_argument('--plot-data', help="two column delta/T TSV file")

    verify = sub.add_parser('verify', parents=[common, graph, circuit], help="check circuits against dense math")
    verify.add_argument('-T', '--steps', dest='T', type=int)
    verify.add_argument('--program', help="compiled walk to check, QASM or program dump")

    sub.add_parser('families', parents=[common, graph], help="describe the built-in families")
    return parser


def _config_tokens(text: str) -> List[str]:
    tokens: List[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"Invalid config line {lineno}: expected key=value, got {raw!r}")
        option = f"-{key}" if len(key) == 1 else f"--{key.replace('_', '-')}"
        tokens.extend([option, value.strip()])
    return tokens


def _expand_config(argv: List[str]) -> List[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument('--config')
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    try:
        with open(known.config, 'r') as f:
            tokens = _config_tokens(f.read())
    except OSError as e:
        raise ConfigError(f"Cannot read config file: {e}")
    position = next((i for i, a in enumerate(argv) if a in COMMANDS), -1)
    return argv[:position + 1] + tokens + argv[position + 1:]


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand and return its exit code.
    """
    arguments = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_expand_config(arguments))
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as e:
        # argparse reports usage errors with exit code 2, --help and --version with 0
        return int(e.code or 0)

    config = RunConfig(**vars(args))
    _configure_logging(config.verbose)
    # --limit-wires holds for this invocation only
    limits = dict(settings.limits.__dict__)
    if config.limit_wires is not None:
        settings.limits.max_wires = config.limit_wires
        settings.limits.executor_wires = min(settings.limits.executor_wires, config.limit_wires)
        settings.limits.dense_wires = min(settings.limits.dense_wires, config.limit_wires)

    try:
        return HANDLERS[config.command](config)
    except DegreeNotPowerOfTwo as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_STRATEGY
    except ResourceLimitExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    finally:
        settings.limits.__dict__.update(limits)


def run() -> None:
    sys.exit(main())


if __name__ == '__main__':
    run()
