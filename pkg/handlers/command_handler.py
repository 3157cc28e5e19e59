# ===============================================================
#  File: command_handler.py
#  Description: Command-line surface for Combgraft. Resolves the
#               graft (file or named instance), runs one command,
#               prints the JSON report to stdout and a human
#               summary to stderr, and maps errors to exit codes.
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

# ================================
#  Module and Library Imports
# ================================
import argparse
import json
import logging
import sys
from dataclasses import dataclass

from config_loader import load_engine_options, load_log_settings
from core import decomposition, generators, tjoin, verifier
from core.errors import CapExceeded, GraftError, NotComb, UnknownComponent
from core.logger import log_report, setup_logging
from handlers.document_handler import document_from_graft, parse_graft_file, serialize_graft
from handlers.dot_handler import class_label, dot_export

logger = logging.getLogger(__name__)

# ================================
#  Configuration
# ================================
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3

GEN_FAMILIES = ("random", "comb", "path", "cycle", "star", "named")
DEFAULT_MAX_TRIES = 200


@dataclass
class Session:
    """Everything a command needs: the graft, its source document and the caps"""
    G: object
    document: object
    options: object
    args: argparse.Namespace


# ================================
#  Report Helpers
# ================================

def _edge(G, e):
    u, v = G.graph.edges[e]
    return {"id": e, "ends": [str(G.graph.label(u)), str(G.graph.label(v))]}


def _names(G, vertices):
    return [str(G.graph.label(v)) for v in sorted(vertices)]


def _designation_payload(G, d):
    return {"spine": _names(G, d.spine), "teeth": _names(G, d.teeth)}


def _vertex(G, label):
    return G.graph.vertex_id(label)


def _designation(session):
    """The document's spine hint if present, else the first comb designation"""
    G, options = session.G, session.options
    d = session.document.designation(G)
    if d is not None:
        decomposition.check_designation(G, d, options)
        return d
    found = decomposition.comb_designations(G, options)
    if not found:
        raise NotComb("the graft admits no comb-bipartite designation")
    return found[0]


def _component_arg(session, poset, raw):
    """A component id, or a vertex label standing for its component"""
    try:
        c = int(raw)
    except ValueError:
        return poset.component_of(_vertex(session.G, raw))
    if not 0 <= c < len(poset):
        raise UnknownComponent(c)
    return c


# ================================
#  Commands
# ================================

def cmd_nu(session):
    value = tjoin.nu(session.G, session.options)
    return {"nu": value}, f"nu = {value}"


def cmd_minjoin(session):
    G = session.G
    result = tjoin.min_join(G, session.options)
    edges = [_edge(G, e) for e in sorted(result.join)]
    shown = ", ".join(f"e{edge['id']} ({edge['ends'][0]}-{edge['ends'][1]})" for edge in edges)
    return {"nu": result.nu, "join": edges}, f"minimum join ({result.nu} edges): {shown or 'empty'}"


def cmd_dist(session):
    G, args = session.G, session.args
    if len(args.params) != 2:
        raise GraftError("dist needs two vertex labels")
    x, y = (_vertex(G, label) for label in args.params)
    value = tjoin.dist(G, x, y, session.options)
    witness = None
    if x != y:
        path = tjoin.shortest_path_witness(G, x, y, session.options).walk
        witness = {"vertices": [str(G.graph.label(v)) for v in path.vertices], "edges": list(path.edges)}
    report = {"x": args.params[0], "y": args.params[1], "dist": value, "witness": witness}
    return report, f"dist({args.params[0]}, {args.params[1]}) = {value}"


def cmd_allowed(session):
    G = session.G
    allowed = tjoin.allowed_edges(G, session.options)
    report = {
        "allowed": [_edge(G, e) for e in sorted(allowed)],
        "not_allowed": [_edge(G, e) for e in range(G.graph.m) if e not in allowed],
    }
    return report, f"{len(allowed)} of {G.graph.m} edges are allowed"


def cmd_components(session):
    G = session.G
    components = decomposition.factor_components(G, session.options)
    report = {"components": [
        {"id": c.id, "vertices": _names(G, c.vertices), "edges": sorted(c.edges)} for c in components
    ]}
    summary = "\n".join(f"C{c.id}: {class_label(G, c.vertices)}" for c in components)
    return report, f"{len(components)} factor-components\n{summary}"


def cmd_kl(session):
    G = session.G
    components = decomposition.factor_components(G, session.options)
    partition = decomposition.kl_partition(G, session.options, components)
    report = {
        "classes": [_names(G, members) for members in partition.classes],
        "component_classes": [list(indices) for indices in partition.component_classes],
    }
    summary = " ".join(class_label(G, members) for members in partition.classes)
    return report, f"{len(partition.classes)} KL classes: {summary}"


def cmd_comb(session):
    G, options = session.G, session.options
    found = decomposition.comb_designations(G, options)
    report = {"comb": bool(found), "designations": [_designation_payload(G, d) for d in found]}
    hint = session.document.designation(G)
    if hint is not None:
        report["hint_is_comb"] = decomposition.is_comb(G, hint, options)
    verdict = "comb-bipartite" if found else "not comb-bipartite"
    return report, f"graft is {verdict} ({len(found)} designations)"


def _poset_payload(G, poset):
    k = len(poset)
    return {
        "designation": _designation_payload(G, poset.designation),
        "components": [_names(G, c.vertices) for c in poset.components],
        "relation": [[i, j] for i in range(k) for j in range(k) if i != j and poset.leq(i, j)],
        "hasse": [list(pair) for pair in poset.hasse],
        "minimal": list(poset.minimal()),
        "maximal": list(poset.maximal()),
    }


def cmd_poset(session):
    G = session.G
    poset = decomposition.dm_relation(G, _designation(session), session.options)
    covers = ", ".join(f"C{i} < C{j}" for i, j in poset.hasse)
    return _poset_payload(G, poset), f"{len(poset)} components; covers: {covers or 'none'}"


def _attribute_payload(G, attribute_map):
    return {
        "base": attribute_map.base,
        "classes": [_names(G, members) for members in attribute_map.classes],
        "upper_bounds": [
            {"component": c, "attribute": _names(G, attribute_map.classes[i])}
            for c, i in attribute_map.labels.items()
        ],
        "buckets": [list(bucket) for bucket in attribute_map.buckets],
    }


def cmd_attributes(session):
    G, options, args = session.G, session.options, session.args
    if len(args.params) != 1:
        raise GraftError("attributes needs one component id or vertex label")
    d = _designation(session)
    poset = decomposition.dm_relation(G, d, options)
    c0 = _component_arg(session, poset, args.params[0])
    attribute_map = decomposition.attributes(G, d, poset, c0, options)
    lines = [f"C{c}: {class_label(G, attribute_map.classes[i])}" for c, i in attribute_map.labels.items()]
    summary = "\n".join([f"attributes of upper bounds of C{c0}"] + lines)
    return _attribute_payload(G, attribute_map), summary


def cmd_classic_dm(session):
    G = session.G
    poset = decomposition.classic_dm(G.graph, session.options)
    return _poset_payload(G, poset), f"classical DM poset with {len(poset)} components"


def cmd_verify(session):
    G, options = session.G, session.options
    designations = None
    hint = session.document.designation(G)
    if hint is not None:
        decomposition.check_designation(G, hint, options)
        designations = [hint]
    results = verifier.verify_all(G, designations, options)
    failed = [r.name for r in results if r.status is verifier.CheckStatus.FAIL]
    capped = [r.name for r in results if r.status is verifier.CheckStatus.CAP]
    report = {"checks": [r.to_dict() for r in results], "failed": failed, "cap_exceeded": capped}
    lines = [f"{r.status.value:>12}  {r.name}  witnessed={r.witnessed}" for r in results]
    return report, "\n".join(lines)


def cmd_dot(session):
    G, options, args = session.G, session.options, session.args
    components = decomposition.factor_components(G, options)
    partition = decomposition.kl_partition(G, options, components)
    allowed = tjoin.allowed_edges(G, options)
    poset = attribute_map = None
    try:
        d = _designation(session)
    except NotComb:
        d = None
    if d is not None:
        poset = decomposition.dm_relation(G, d, options)
        if args.c0 is not None:
            c0 = _component_arg(session, poset, args.c0)
            attribute_map = decomposition.attributes(G, d, poset, c0, options, partition)
    text = dot_export(G, components, partition, allowed, poset, attribute_map)
    return text, f"{len(components)} clusters, {len(poset.hasse) if poset else 0} Hasse edges"


def cmd_gen(session):
    args = session.args
    if not args.params or args.params[0] not in GEN_FAMILIES:
        raise GraftError(f"gen needs a family, one of: {', '.join(GEN_FAMILIES)}")
    family, params = args.params[0], list(args.params[1:])
    designation = None
    if family == "comb" and len(params) == 3:
        params.append(DEFAULT_MAX_TRIES)
    try:
        if family == "comb":
            n_spine, n_teeth, m, max_tries = (int(p) for p in params)
            G, designation = generators.gen_comb_random(n_spine, n_teeth, m, args.seed, max_tries)
        else:
            G = generators.build_instance(generators.InstanceSpec(family, tuple(params), args.seed))
    except (ValueError, IndexError):
        raise GraftError(f"bad parameters for family {family!r}: {params}") from None
    text = serialize_graft(document_from_graft(G, designation))
    return text, f"generated {family} graft with {G.graph.n} vertices and {G.graph.m} edges"


COMMANDS = {
    "nu": cmd_nu,
    "minjoin": cmd_minjoin,
    "dist": cmd_dist,
    "allowed": cmd_allowed,
    "components": cmd_components,
    "kl": cmd_kl,
    "comb": cmd_comb,
    "poset": cmd_poset,
    "attributes": cmd_attributes,
    "classic-dm": cmd_classic_dm,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "dot": cmd_dot,
}

# Commands whose stdout is a document rather than a JSON report
RAW_OUTPUT = ("gen", "dot")


# ================================
#  Argument Parsing
# ================================

def build_parser():
    parser = argparse.ArgumentParser(prog="combgraft", description="Minimum joins and canonical decompositions of grafts")
    parser.add_argument("command", choices=sorted(COMMANDS), help="what to compute")
    parser.add_argument("params", nargs="*", help="command arguments (vertex labels, component, generator params)")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--file", help="graft document (JSON)")
    source.add_argument("--instance", help="named instance, e.g. two-pendant")
    parser.add_argument("--max-t", type=int, help="terminal cap for the join engine")
    parser.add_argument("--max-e", type=int, help="edge cap for exhaustive oracles")
    parser.add_argument("--max-path-len", type=int, help="path and circuit enumeration cap")
    parser.add_argument("--c0", help="base component for attribute labels in dot output")
    parser.add_argument("--seed", type=int, default=0, help="generator seed")
    parser.add_argument("--json-only", action="store_true", help="suppress the human summary")
    parser.add_argument("--journal", help="append the report to this JSON run journal")
    parser.add_argument("--log-level", help="logging level (default from settings)")
    parser.add_argument("--log-file", help="also write logs to this file")
    return parser


def _load_session(args, options):
    if args.file:
        try:
            with open(args.file, 'rb') as f:
                data = f.read()
        except OSError as e:
            raise GraftError(f"cannot read {args.file}: {e.strerror}") from None
        document = parse_graft_file(data)
        return Session(document.to_graft(), document, options, args)
    if args.instance:
        instances = generators.named_instances()
        if args.instance not in instances:
            raise GraftError(f"unknown named instance {args.instance!r}")
        G = instances[args.instance]
        return Session(G, document_from_graft(G), options, args)
    raise GraftError("no graft given; use --file or --instance")


# ================================
#  Entry Point
# ================================

def run(argv, stdout=None, stderr=None):
    """Run one command and return its exit code"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else EXIT_OK

    level, log_file = load_log_settings()
    report_logger = setup_logging((args.log_level or level).upper(), args.log_file or log_file)
    options = load_engine_options({
        "max_terminals": args.max_t,
        "max_edges": args.max_e,
        "max_path_len": args.max_path_len,
    })

    code = EXIT_OK
    try:
        session = _load_session(args, options) if args.command != "gen" else Session(None, None, options, args)
        output, summary = COMMANDS[args.command](session)
        if args.command == "verify" and output["failed"]:
            code = EXIT_CHECK_FAILED
        elif args.command == "verify" and output["cap_exceeded"]:
            code = EXIT_CAP_EXCEEDED
    except CapExceeded as e:
        code, output, summary = EXIT_CAP_EXCEEDED, _error_report(e), f"ERROR: {e}"
    except GraftError as e:
        code, output, summary = EXIT_INPUT_ERROR, _error_report(e), f"ERROR: {e}"

    if args.command in RAW_OUTPUT and code == EXIT_OK:
        stdout.write(output)
        journal_entry = {"output": output}
    else:
        if isinstance(output, dict):
            output = dict(output, command=args.command, exit_code=code)
        stdout.write(json.dumps(output, sort_keys=True, indent=2) + "\n")
        journal_entry = output
    if not args.json_only:
        stderr.write(summary + "\n")
    if args.journal:
        log_report(args.journal, [args.command] + list(args.params), journal_entry)
    report_logger.info("%s finished with exit code %d", args.command, code)
    return code


def _error_report(error):
    return {"error": {"type": type(error).__name__, "message": str(error)}}
