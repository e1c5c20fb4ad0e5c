#!/usr/bin/env python
# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.
"""Modulus of families of objects on weighted graphs, blocking duality,
graph metrics, sensitivity diagnostics and Monte Carlo bounds.
"""

__authors__ = ["pmodulus developers"]
__license__ = "MIT"
__date__ = "19/10/2026"
__status__ = "production"

import os
import io
import sys
import json
import math
import logging
import argparse

import numpy

import pmodulus
from pmodulus import solver
from pmodulus import duality
from pmodulus import metrics
from pmodulus import sensitivity
from pmodulus import stochastic
from pmodulus.families import family_factory
from pmodulus.modutils import ConfigError, GuardExceeded, StochasticCheckFailed, to_json, versions, timed


logger = logging.getLogger("pmodulus-app")

LOGLEVEL_VARIABLE = "PMODULUS_LOGLEVEL"

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_ARGUMENT_FAILURE = 2
EXIT_NOT_CONVERGED = 3
EXIT_GUARD_EXCEEDED = 4
EXIT_STOCHASTIC_FAILURE = 5

COMMANDS = ("solve", "duality", "blocker", "metric", "sensitivity", "random", "verify")

NEEDS_FAMILY = ("solve", "duality", "blocker", "sensitivity", "random")
NEEDS_P = ("solve", "duality", "metric", "sensitivity", "random")


class RunConfig(object):
    """Validated parameters of one run.

    Values come from the defaults, then from the ``--config`` JSON file,
    then from the command line flags.
    """

    DEFAULTS = {"graph": None,
                "format": None,
                "directed": None,
                "family": None,
                "p": None,
                "rel_tol": 1e-6,
                "adm_tol": 1e-8,
                "output": None,
                "csv": False,
                "seed": 0,
                "jobs": None,
                "trials": 1000,
                "rates": 1.0,
                "edge": None,
                "grid": None,
                "check": "gradient",
                "metric": "delta_p",
                "max_edges": duality.MAX_EDGES,
                "max_rows": duality.MAX_ROWS}

    CHECKS = ("gradient", "monotonicity", "concavity")
    METRICS = ("delta_p", "mod_inverse")

    def __init__(self, subcommand, **values):
        if subcommand not in COMMANDS:
            raise ConfigError("Unknown subcommand '%s'" % subcommand)
        unknown = sorted(set(values) - set(self.DEFAULTS))
        if unknown:
            raise ConfigError("Unknown configuration keys: %s" % ", ".join(unknown))
        self.subcommand = subcommand
        for name, default in self.DEFAULTS.items():
            setattr(self, name, values.get(name, default))

    @classmethod
    def from_file(cls, subcommand, filename):
        """Read a JSON object of options, rejecting unknown keys"""
        try:
            with open(filename) as f:
                doc = json.load(f)
        except (IOError, ValueError) as err:
            raise ConfigError("Can not read configuration '%s': %s" % (filename, err))
        if not isinstance(doc, dict):
            raise ConfigError("Configuration '%s' is not a JSON object" % filename)
        doc = dict(doc)
        written = doc.pop("subcommand", subcommand)
        if written != subcommand:
            raise ConfigError("Configuration written for '%s', not '%s'" % (written, subcommand))
        return cls(subcommand, **doc)

    def update(self, **values):
        for name, value in values.items():
            if name not in self.DEFAULTS:
                raise ConfigError("Unknown configuration key '%s'" % name)
            if value is not None:
                setattr(self, name, value)

    def validate(self):
        """Check and normalize every field; nothing is computed before"""
        if self.subcommand == "verify":
            return self
        if not self.graph:
            raise ConfigError("No graph given, use --graph")
        if self.subcommand in NEEDS_FAMILY and not self.family:
            raise ConfigError("Subcommand '%s' needs a family, use --family" % self.subcommand)
        if self.subcommand in NEEDS_P:
            if self.p is None:
                raise ConfigError("Subcommand '%s' needs an exponent, use --p" % self.subcommand)
            self.p = _positive(self.p, "p", minimum=1.0)
        elif self.p is not None:
            self.p = _positive(self.p, "p", minimum=1.0)
        self.rel_tol = _positive(self.rel_tol, "rel_tol")
        self.adm_tol = _positive(self.adm_tol, "adm_tol")
        self.seed = _integer(self.seed, "seed", minimum=0)
        if self.jobs is not None:
            self.jobs = _integer(self.jobs, "jobs", minimum=1)
        self.trials = _integer(self.trials, "trials", minimum=1)
        self.max_edges = _integer(self.max_edges, "max_edges", minimum=1)
        self.max_rows = _integer(self.max_rows, "max_rows", minimum=1)
        if self.check not in self.CHECKS:
            raise ConfigError("Unknown sensitivity check '%s', expected one of %s" % (self.check, ", ".join(self.CHECKS)))
        if self.metric not in self.METRICS:
            raise ConfigError("Unknown metric '%s', expected one of %s" % (self.metric, ", ".join(self.METRICS)))
        if isinstance(self.rates, dict):
            self.rates = {str(k): _positive(v, "rates[%s]" % k) for k, v in self.rates.items()}
        else:
            self.rates = _positive(self.rates, "rates")
        if self.grid is not None:
            if isinstance(self.grid, str):
                self.grid = [i for i in self.grid.split(",") if i.strip()]
            self.grid = [_positive(v, "grid") for v in self.grid]
        if self.subcommand == "sensitivity" and self.check == "monotonicity":
            if self.edge is None or not self.grid:
                raise ConfigError("The monotonicity sweep needs --edge and --grid")
        if self.subcommand == "random" and self.trials < stochastic.MIN_TRIALS:
            raise ConfigError("At least %d trials are needed" % stochastic.MIN_TRIALS)
        return self

    def options(self):
        return solver.SolverOptions(rel_tol=self.rel_tol, adm_tol=self.adm_tol)

    def to_dict(self):
        doc = {"subcommand": self.subcommand}
        doc.update({name: getattr(self, name) for name in self.DEFAULTS})
        return doc


def _positive(value, name, minimum=0.0):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ConfigError("%s must be a number, got %r" % (name, value))
    if math.isnan(value) or value < minimum or (minimum == 0.0 and value <= 0):
        raise ConfigError("%s out of range: %r" % (name, value))
    return value


def _integer(value, name, minimum):
    if isinstance(value, bool):
        raise ConfigError("%s must be an integer, got %r" % (name, value))
    try:
        result = int(value)
    except (TypeError, ValueError):
        raise ConfigError("%s must be an integer, got %r" % (name, value))
    if result != value and str(result) != str(value):
        raise ConfigError("%s must be an integer, got %r" % (name, value))
    if result < minimum:
        raise ConfigError("%s must be >= %d, got %d" % (name, minimum, result))
    return result


def load_inputs(config, timings):
    """Graph and family of a validated config"""
    with timed(timings, "load"):
        try:
            graph = pmodulus.load_graph(config.graph, format=config.format, directed=config.directed)
        except (IOError, OSError) as err:
            raise ConfigError("Can not read graph '%s': %s" % (config.graph, err))
        family = None
        if config.family:
            try:
                family = family_factory(config.family, graph)
            except (IOError, OSError) as err:
                raise ConfigError("Can not read family '%s': %s" % (config.family, err))
    logger.debug("Loaded %r, family %s", graph, None if family is None else family.describe())
    return graph, family


def make_report(config, result, timings):
    """Envelope shared by every subcommand"""
    return {"command": config.subcommand,
            "config": config.to_dict(),
            "versions": versions(),
            "seed": config.seed,
            "timings": timings,
            "result": result}


def cmd_solve(config):
    timings = {}
    graph, family = load_inputs(config, timings)
    with timed(timings, "solve"):
        solution = solver.solve(solver.ModulusProblem(family, config.p, config.options()))
    summary = "Mod_%g(%s) = %.12g in [%.12g, %.12g]" % (config.p, family.describe(), solution.value,
                                                          solution.lower, solution.upper)
    if not solution.converged:
        summary += " (NOT converged)"
    rows = None
    if config.csv:
        rows = [["edge", "rho", "eta"]]
        for e in range(graph.m):
            eta = "" if solution.eta is None else "%.12g" % solution.eta[e]
            rows.append([graph.edge_key(e), "%.12g" % solution.rho[e], eta])
    report = make_report(config, solution.to_dict(graph), timings)
    return report, rows, summary, EXIT_SUCCESS if solution.converged else EXIT_NOT_CONVERGED


def cmd_duality(config):
    timings = {}
    graph, family = load_inputs(config, timings)
    with timed(timings, "duality"):
        if config.p == 1 or math.isinf(config.p):
            result = duality.verify_p1_pinf_duality(family, max_edges=config.max_edges, max_rows=config.max_rows)
            converged = True
        else:
            problem = solver.ModulusProblem(family, config.p, config.options())
            solution = solver.solve_modulus(problem)
            result = duality.verify_duality_product(family, config.p, problem.options, solution=solution,
                                                    max_edges=config.max_edges, max_rows=config.max_rows)
            lhs, rhs, residual = duality.prob_interp_value(solution, problem)
            result["expected_usage_deviation"] = duality.verify_expected_usage(solution, graph.m)
            result["probabilistic"] = {"modulus_inverse": lhs, "minimum_energy": rhs, "residual": residual}
            converged = result["converged"]
    summary = "%s at p=%g: product %.12g, residual %.3g" % (family.describe(), config.p, result["product"], result["residual"])
    report = make_report(config, result, timings)
    return report, None, summary, EXIT_SUCCESS if converged else EXIT_NOT_CONVERGED


def cmd_blocker(config):
    timings = {}
    graph, family = load_inputs(config, timings)
    with timed(timings, "blocker"):
        result = duality.blocker_report(family, max_edges=config.max_edges, max_rows=config.max_rows)
    rows = None
    if config.csv:
        rows = [["provenance"] + list(graph.edge_keys())]
        for vertex in result["vertices"]:
            rows.append([vertex["provenance"]] + ["%.12g" % vertex["coords"].get(k, 0.0) for k in graph.edge_keys()])
    summary = "%d blocker vertices for %s" % (result["counts"]["vertices"], family.describe())
    return make_report(config, result, timings), rows, summary, EXIT_SUCCESS


def cmd_metric(config):
    timings = {}
    graph, _ = load_inputs(config, timings)
    with timed(timings, "metric"):
        if config.metric == "delta_p":
            report = metrics.delta_p_matrix(graph, config.p, config.options(), config.jobs)
        else:
            report = metrics.mod_inverse_metric(graph, config.p, config.options(), config.jobs)
    rows = None
    if config.csv:
        stream = io.StringIO()
        report.to_csv(stream)
        rows = stream.getvalue()
    summary = "%s at p=%g on %d vertices, triangle slack %.3g" % (report.kind, config.p, graph.n, report.triangle_slack)
    return make_report(config, report.to_dict(), timings), rows, summary, \
        EXIT_SUCCESS if report.converged else EXIT_NOT_CONVERGED


def cmd_sensitivity(config):
    timings = {}
    graph, family = load_inputs(config, timings)
    with timed(timings, config.check):
        if config.check == "gradient":
            report = sensitivity.gradient_check(family, config.p, jobs=config.jobs)
        elif config.check == "monotonicity":
            try:
                edge = graph.find_edge(config.edge)
            except KeyError as err:
                raise ConfigError(str(err))
            report = sensitivity.monotonicity_sweep(family, config.p, edge, config.grid, jobs=config.jobs)
        else:
            rng = numpy.random.default_rng(config.seed)
            other = graph.weights * rng.uniform(0.5, 2.0, size=graph.m)
            report = sensitivity.concavity_check(family, config.p, graph.weights, other, jobs=config.jobs)
    rows = None
    if config.csv and report.sweep:
        stream = io.StringIO()
        report.to_csv(stream)
        rows = stream.getvalue()
    summary = "%s check of %s at p=%g: %s" % (config.check, family.describe(), config.p,
                                            "passed" if report.passed else "FAILED")
    return make_report(config, report.to_dict(), timings), rows, summary, \
        EXIT_SUCCESS if report.passed else EXIT_FAILURE


def _sampler(config, graph):
    if isinstance(config.rates, dict):
        rates = numpy.ones(graph.m)
        for key, value in config.rates.items():
            try:
                rates[graph.find_edge(key)] = value
            except KeyError as err:
                raise ConfigError(str(err))
        return stochastic.WeightSampler(rates, config.seed)
    return stochastic.WeightSampler.uniform(graph.m, config.rates, config.seed)


def cmd_random(config):
    timings = {}
    graph, family = load_inputs(config, timings)
    sampler = _sampler(config, graph)
    with timed(timings, "trials"):
        experiments = stochastic.run_experiment(family, sampler, config.p, config.trials,
                                                options=config.options(), jobs=config.jobs)
        sane = stochastic.no_contradiction_check(family, sampler, config.p, config.options())
    result = {"experiments": [r.to_dict(values=config.csv) for r in experiments],
              "no_contradiction": sane}
    rows = None
    if config.csv:
        rows = [["trial"] + [r.name for r in experiments]]
        for i in range(config.trials):
            rows.append([str(i)] + ["%.12g" % r.values[i] for r in experiments])
    passed = all(r.passed for r in experiments) and sane["holds"]
    summary = "; ".join("%s: mean %.6g +- %.2g %s" % (r.name, r.mean, r.standard_error,
                                                      "passed" if r.passed else "FAILED") for r in experiments)
    return make_report(config, result, timings), rows, summary, \
        EXIT_SUCCESS if passed else EXIT_STOCHASTIC_FAILURE


def cmd_verify(config):
    from pmodulus import test
    succeeded = test.run_tests() == 0
    return None, None, "test suite %s" % ("passed" if succeeded else "FAILED"), \
        EXIT_SUCCESS if succeeded else EXIT_FAILURE


_commands = {"solve": cmd_solve,
             "duality": cmd_duality,
             "blocker": cmd_blocker,
             "metric": cmd_metric,
             "sensitivity": cmd_sensitivity,
             "random": cmd_random,
             "verify": cmd_verify}


def write_output(config, report, rows, summary):
    """JSON (or CSV) to --output or to standard output.

    The human readable summary goes to standard output when the report is
    written to a file, to standard error otherwise.
    """
    if rows is not None:
        if isinstance(rows, str):
            text = rows
        else:
            text = "".join(",".join(row) + "\n" for row in rows)
    elif report is not None:
        text = to_json(report) + "\n"
    else:
        text = None
    if config.output is None:
        if text is not None:
            sys.stdout.write(text)
            print(summary, file=sys.stderr)
        else:
            print(summary)
    else:
        with open(config.output, "w") as f:
            f.write(text or "")
        print(summary)


def configure_logging(debug=False):
    logging.basicConfig()
    level = os.environ.get(LOGLEVEL_VARIABLE, "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        logging.getLogger("pmodulus").warning("Invalid %s=%s, using WARNING", LOGLEVEL_VARIABLE, level)
        level = "WARNING"
    if debug:
        level = "DEBUG"
    logging.getLogger("pmodulus").setLevel(level)
    logger.setLevel(level)


def create_parser():
    epilog = """return codes: 0 means a success. 1 means a check failed,
                2 means there was an error in the arguments or inputs,
                3 means the solver did not converge, 4 means an
                enumeration guard was exceeded, 5 means a Monte Carlo
                bound failed"""

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--debug", action="store_true", dest="debug", default=False,
                        help="show debug information")
    common.add_argument("--config", dest="config", type=str, default=None,
                        help="JSON file of options, overridden by the flags")
    group = common.add_argument_group("inputs")
    group.add_argument("--graph", dest="graph", type=str, help="graph file")
    group.add_argument("--format", dest="format", type=str, help="graph format (edge-list or json)")
    group.add_argument("--directed", dest="directed", action="store_const", const=True,
                       help="read the graph as directed")
    group.add_argument("--family", dest="family", type=str,
                       help="connect:a,b or cut:a,b or tree or explicit:rows.json")
    group.add_argument("--p", dest="p", type=str, help="exponent, 1 <= p <= inf")
    group = common.add_argument_group("solver")
    group.add_argument("--rel-tol", dest="rel_tol", type=float, help="relative duality gap")
    group.add_argument("--adm-tol", dest="adm_tol", type=float, help="admissibility slack")
    group.add_argument("--jobs", dest="jobs", type=int, help="worker threads, CPU count by default")
    group = common.add_argument_group("outputs")
    group.add_argument("-o", "--output", dest="output", type=str, help="output file, standard output by default")
    group.add_argument("--csv", dest="csv", action="store_const", const=True,
                       help="write tables as CSV instead of the JSON report")
    group.add_argument("--seed", dest="seed", type=int, help="random seed, 0 by default")

    parser = argparse.ArgumentParser(prog="pmodulus", description=__doc__, epilog=epilog)
    parser.add_argument("-V", "--version", action='version', version=pmodulus.version,
                        help="output version and exit")
    subparsers = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    subparsers.add_parser("solve", parents=[common], help="modulus of a family")
    guards = argparse.ArgumentParser(add_help=False)
    group = guards.add_argument_group("enumeration")
    group.add_argument("--max-edges", dest="max_edges", type=int, help="enumeration guard on the edges")
    group.add_argument("--max-rows", dest="max_rows", type=int, help="enumeration guard on the objects")
    subparsers.add_parser("duality", parents=[common, guards], help="modulus of the family and of its blocker")
    subparsers.add_parser("blocker", parents=[common, guards], help="vertices of the blocking polyhedron")
    sub = subparsers.add_parser("metric", parents=[common], help="all pairs modulus metric")
    sub.add_argument("--metric", dest="metric", choices=RunConfig.METRICS, help="delta_p by default")
    sub = subparsers.add_parser("sensitivity", parents=[common], help="dependence on the weights")
    sub.add_argument("--check", dest="check", choices=RunConfig.CHECKS, help="gradient by default")
    sub.add_argument("--edge", dest="edge", type=str, help="edge of the monotonicity sweep")
    sub.add_argument("--grid", dest="grid", type=str, help="comma separated weights of the sweep")
    sub = subparsers.add_parser("random", parents=[common], help="Monte Carlo bounds on random weights")
    sub.add_argument("--trials", dest="trials", type=int, help="number of trials, 1000 by default")
    sub.add_argument("--rates", dest="rates", type=str,
                     help="exponential rate of every edge, or a JSON object {edge: rate}")
    subparsers.add_parser("verify", parents=[common], help="run the test suite")
    return parser


def parse_config(args):
    """Merge the config file and the flags into a validated RunConfig"""
    if args.config:
        config = RunConfig.from_file(args.subcommand, args.config)
    else:
        config = RunConfig(args.subcommand)
    values = {name: getattr(args, name, None) for name in RunConfig.DEFAULTS}
    rates = values.get("rates")
    if isinstance(rates, str) and rates.lstrip().startswith("{"):
        try:
            values["rates"] = json.loads(rates)
        except ValueError as err:
            raise ConfigError("Invalid --rates: %s" % err)
    config.update(**values)
    return config.validate()


def main(argv=None):
    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(args.debug if args.subcommand else False)
    if not args.subcommand:
        parser.print_usage(sys.stderr)
        logger.error("No subcommand given")
        return EXIT_ARGUMENT_FAILURE

    try:
        config = parse_config(args)
    except ConfigError as e:
        logger.error(e)
        logger.debug("Backtrace", exc_info=True)
        return EXIT_ARGUMENT_FAILURE
    if config.subcommand != "verify":
        print("seed: %d" % config.seed, file=sys.stderr)

    try:
        report, rows, summary, status = _commands[config.subcommand](config)
    except KeyboardInterrupt:
        raise
    except GuardExceeded as e:
        logger.error("Enumeration refused: %s", e)
        logger.debug("Backtrace", exc_info=True)
        return EXIT_GUARD_EXCEEDED
    except StochasticCheckFailed as e:
        logger.error("%s", e)
        logger.debug("Backtrace", exc_info=True)
        return EXIT_STOCHASTIC_FAILURE
    except ValueError as e:
        # ConfigError and the input validation errors of the library
        logger.error("%s", e)
        logger.debug("Backtrace", exc_info=True)
        return EXIT_ARGUMENT_FAILURE
    except RuntimeError as e:
        logger.error("%s failed: %s. You can try with --debug to have more output information.", config.subcommand, e)
        logger.debug("Backtrace", exc_info=True)
        return EXIT_FAILURE

    write_output(config, report, rows, summary)
    if status == EXIT_NOT_CONVERGED:
        logger.warning("The solver did not converge, the bounds were written anyway")
    return status


if __name__ == "__main__":
    result = main()
    sys.exit(result)
