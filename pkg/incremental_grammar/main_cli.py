# SPDX-FileCopyrightText: © 2025 Big Ladder Software <info@bigladdersoftware.com>
# SPDX-License-Identifier: BSD-3-Clause

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import typer
from rich.markup import escape
from typing_extensions import Annotated

from incremental_grammar import automaton, core, fitting, grammar, morphism, render, weighted
from incremental_grammar.core import BoundExceededError, CliConfig, OutputFormat
from incremental_grammar.semiring import SemiringName

console_log = logging.getLogger("incgram")

app = typer.Typer(add_completion=False, pretty_exceptions_enable=False)
weights_app = typer.Typer(help="Export or import generator weights as JSON.")
app.add_typer(weights_app, name="weights")

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_BOUND = 3


@contextmanager
def exit_codes() -> Iterator[None]:
    """Log errors raised by a command and convert them to exit codes."""
    try:
        yield
    except typer.Exit:
        raise
    except BoundExceededError as err:
        console_log.error(escape(str(err)))
        raise typer.Exit(code=EXIT_BOUND) from err
    except (FileNotFoundError, RuntimeError, ValueError, TypeError, KeyError) as err:
        console_log.error(escape(str(err)))
        raise typer.Exit(code=EXIT_USAGE) from err


def _config(ctx: typer.Context) -> CliConfig:
    return ctx.obj if isinstance(ctx.obj, CliConfig) else CliConfig()


def _depth_bound(config: CliConfig) -> int | None:
    return config.depth_bound


def _load(config: CliConfig, grammar_name: str = "", with_weights: bool = True) -> weighted.WeightedGrammar:
    name = grammar_name or config.grammar
    if not name:
        raise ValueError("No grammar given; use --grammar or set 'grammar' in the configuration file")
    weights_file = Path(config.weights) if config.weights and with_weights else None
    return weighted.load_weighted_grammar(
        core.resolve_grammar_path(name), config.semiring, config.adjoint_bound, weights_file
    )


def _words(sentence: str) -> list[str]:
    return sentence.split()


def _echo_json(data: object) -> None:
    typer.echo(core.dump_json(data), nl=False)


def _reject_dot(config: CliConfig, command: str) -> None:
    if config.format == OutputFormat.dot.value:
        raise ValueError(f"'{command}' has no DOT output; use --format text or json")


@app.callback()
def main(  # noqa: PLR0913, PLR0917
    ctx: typer.Context,
    config: Annotated[Optional[Path], typer.Option(help="TOML configuration file (default: ./incgram.toml).")] = None,
    grammar_path: Annotated[
        Optional[str], typer.Option("--grammar", help="Grammar file, or the name of a bundled grammar.")
    ] = None,
    semiring: Annotated[
        Optional[SemiringName], typer.Option(help="Read the grammar's weights in this semiring.")
    ] = None,
    weights: Annotated[Optional[Path], typer.Option(help="JSON weights applied over the grammar file.")] = None,
    depth_bound: Annotated[
        Optional[int], typer.Option(help="Generator applications per closure (default 10 * (words + 1)).")
    ] = None,
    max_len: Annotated[Optional[int], typer.Option(help="Longest sentence enumerated.")] = None,
    tol: Annotated[Optional[float], typer.Option(help="Tolerance for numeric weight comparisons.")] = None,
    format: Annotated[Optional[OutputFormat], typer.Option(help="Output format.")] = None,
    adjoint_bound: Annotated[Optional[int], typer.Option(help="Largest adjoint order of pregroup types.")] = None,
) -> None:
    """
    Incremental parsing with monoidal grammars: parse, trace, compare and fit weighted grammars.
    Settings resolve as defaults < configuration file < flags.
    """
    flags = {
        "grammar": grammar_path,
        "semiring": semiring.value if semiring else None,
        "weights": str(weights) if weights else None,
        "depth_bound": depth_bound,
        "max_len": max_len,
        "tolerance": tol,
        "format": format.value if format else None,
        "adjoint_bound": adjoint_bound,
    }
    try:
        ctx.obj = core.merge_config(core.load_config(config), flags)
    except (FileNotFoundError, RuntimeError, TypeError) as err:
        console_log.error(escape(str(err)))
        raise typer.Exit(code=EXIT_USAGE) from err


@app.command("parse")
def parse_sentence(
    ctx: typer.Context,
    sentence: Annotated[str, typer.Argument(help="Words separated by spaces.")],
) -> None:
    """
    List every parsing of the sentence with its weight. Exits 1 when there is none.
    """
    config = _config(ctx)
    with exit_codes():
        wg = _load(config)
        words = _words(sentence)
        parsings = grammar.enumerate_parsings(wg.grammar, words, _depth_bound(config))
        weights = [weighted.arrow_weight(wg, p) for p in parsings]
        total = wg.semiring.sum(weights)
        if config.format == OutputFormat.json.value:
            _echo_json(
                {
                    "sentence": words,
                    "parsings": [{"state": p.canonical(), "weight": str(w)} for p, w in zip(parsings, weights)],
                    "weight": str(total),
                    "accepted": bool(parsings),
                }
            )
        elif config.format == OutputFormat.dot.value:
            for index, parsing in enumerate(parsings):
                typer.echo(render.render_state(parsing, f"parse{index}"), nl=False)
        else:
            for index, (parsing, weight) in enumerate(zip(parsings, weights)):
                typer.echo(f"{index}\t{parsing.canonical()}\t{weight}")
            typer.echo(f"weight\t{total}")
    verdict = "ACCEPT" if parsings else "REJECT"
    console_log.info(f"{verdict}: {len(parsings)} parsing(s) of '{escape(sentence)}'")
    if not parsings:
        raise typer.Exit(code=EXIT_REJECT)


@app.command("step")
def step_sentence(
    ctx: typer.Context,
    sentence: Annotated[str, typer.Argument(help="Words separated by spaces; may be empty.")] = "",
) -> None:
    """
    Feed the sentence one word at a time and print the weighted frontier after each word.
    """
    config = _config(ctx)
    with exit_codes():
        _reject_dot(config, "step")
        wg = _load(config)
        trace = automaton.run(wg, _words(sentence), _depth_bound(config), record_steps=True)
        if config.format == OutputFormat.json.value:
            data = trace.to_json()
            data["steps"] = [[distribution.to_json() for distribution in layer] for layer in trace.steps]
            _echo_json(data)
        else:
            for word, frontier in zip(("",) + trace.sentence, trace.frontiers):
                heading = f"after '{word}'" if word else "start"
                typer.echo(f"{heading}: {len(frontier)} state(s)")
                for state, weight in sorted(frontier.items(), key=lambda item: item[0].sort_key()):
                    typer.echo(f"  {state.canonical()}\t{weight}")
            typer.echo(f"acceptance\t{trace.acceptance}")


@app.command("language")
def list_language(ctx: typer.Context) -> None:
    """
    List every sentence of at most --max-len words that has a parsing.
    """
    config = _config(ctx)
    with exit_codes():
        _reject_dot(config, "language")
        wg = _load(config, with_weights=False)
        sentences = grammar.language(wg.grammar, config.max_len, _depth_bound(config))
        if config.format == OutputFormat.json.value:
            _echo_json([list(s) for s in sentences])
        else:
            for s in sentences:
                typer.echo(" ".join(s) if s else "ε")


@app.command("equiv")
def compare_grammars(
    ctx: typer.Context,
    other: Annotated[str, typer.Argument(help="Grammar to compare against --grammar.")],
    morphism_file: Annotated[
        Optional[Path], typer.Option("--morphism", help="TOML morphism from --grammar to OTHER.")
    ] = None,
    word_depth: Annotated[int, typer.Option(help="Words explored by truncations and homomorphism checks.")] = 3,
) -> None:
    """
    Compare two grammars. Boolean grammars are compared by bisimulation of their automata, other
    semirings by word weights up to --max-len. With --morphism the homomorphism square is checked too.
    Exits 1 when the grammars differ.
    """
    config = _config(ctx)
    with exit_codes():
        _reject_dot(config, "equiv")
        first = _load(config)
        second = _load(config, other, with_weights=False)
        report: dict = {}
        equivalent = True
        depth_bound = _depth_bound(config)
        if morphism_file is not None:
            m = morphism.load_morphism(morphism_file, first.grammar, second.grammar)
            preserving = weighted.check_weight_preserving(m, first, second, config.tolerance)
            hom = automaton.check_coalgebra_hom(
                m, first, second, word_depth, depth_bound, config.tolerance, config.state_cap
            )
            report["weight_preserving"] = preserving
            report["homomorphism"] = hom.holds
            if not hom:
                report["violation"] = {
                    "state": hom.state.canonical() if hom.state else None,
                    "word": hom.word,
                    "reason": hom.reason,
                }
        if first.semiring.name == SemiringName.bool:
            bisimilar = automaton.boolean_bisimilar(
                automaton.truncate(first, word_depth, depth_bound, config.state_cap),
                automaton.truncate(second, word_depth, depth_bound, config.state_cap),
            )
            report["bisimilar"] = bisimilar
            equivalent = bisimilar
        result = automaton.language_equiv(first, second, config.max_len, config.tolerance, depth_bound)
        report["language_equivalent"] = result.equivalent
        if not result:
            assert result.counterexample is not None
            report["counterexample"] = {
                "sentence": list(result.counterexample),
                "weights": [str(result.first_weight), str(result.second_weight)],
            }
        equivalent = equivalent and result.equivalent
        report["equivalent"] = equivalent
        if config.format == OutputFormat.json.value:
            _echo_json(report)
        else:
            for key, value in report.items():
                if key == "counterexample":
                    sentence_text = " ".join(value["sentence"]) or "ε"
                    typer.echo(f"counterexample\t{sentence_text}\t{value['weights'][0]} vs {value['weights'][1]}")
                elif key == "violation":
                    typer.echo(f"violation\t{value['state']}\t{value['word']}\t{value['reason']}")
                else:
                    typer.echo(f"{key}\t{str(value).lower()}")
    console_log.info("EQUIVALENT" if equivalent else "DIFFERENT")
    if not equivalent:
        raise typer.Exit(code=EXIT_REJECT)


@app.command("fit")
def fit_corpus(
    ctx: typer.Context,
    corpus: Annotated[Path, typer.Argument(help="JSON corpus of {sentence, parsing, prob} entries.")],
    method: Annotated[
        fitting.FitMethod, typer.Option(help="Least-squares solver.")
    ] = fitting.FitMethod.normal_equations,
    output: Annotated[
        Optional[Path],
        typer.Option(help="Write the fitted weights JSON here; with --format json and no file it goes to stdout."),
    ] = None,
) -> None:
    """
    Fit generator weights to the maximal parse state likelihoods of a corpus.
    """
    config = _config(ctx)
    with exit_codes():
        _reject_dot(config, "fit")
        wg = _load(config, with_weights=False)
        model = fitting.load_corpus(corpus, wg.grammar)
        result = fitting.fit_weights(model, method=method)
        weights_json = result.weight_map.to_json()
        if output is not None:
            output.write_text(core.dump_json(weights_json), encoding="utf-8")
        if config.format == OutputFormat.json.value and output is None:
            # stdout stays loadable by --weights; the fit summary goes to the log.
            console_log.info(
                f"{result.method.value}: rows_used={result.rows_used} rows_dropped={result.rows_dropped} "
                f"residual={result.residual:.17g} rank_deficient={str(result.rank_deficient).lower()}"
            )
            _echo_json(weights_json)
        elif config.format == OutputFormat.json.value:
            _echo_json(
                {
                    "method": result.method.value,
                    "rows_used": result.rows_used,
                    "rows_dropped": result.rows_dropped,
                    "residual": result.residual,
                    "rank_deficient": result.rank_deficient,
                    "weights": weights_json,
                }
            )
        else:
            typer.echo(f"rows_used\t{result.rows_used}")
            typer.echo(f"residual\t{result.residual:.17g}")
            typer.echo(f"rank_deficient\t{str(result.rank_deficient).lower()}")
            for name, value in result.weight_map.weights.items():
                typer.echo(f"{name}\t{value}")


@app.command("render")
def render_parsing(
    ctx: typer.Context,
    sentence: Annotated[str, typer.Argument(help="Words separated by spaces.")],
    index: Annotated[int, typer.Option(help="Which parsing to draw, in listing order.")] = 0,
) -> None:
    """
    Print a parsing of the sentence as a Graphviz DOT digraph.
    """
    config = _config(ctx)
    with exit_codes():
        wg = _load(config, with_weights=False)
        parsings = grammar.enumerate_parsings(wg.grammar, _words(sentence), _depth_bound(config))
        if not 0 <= index < len(parsings):
            raise ValueError(f"Parsing index {index} is out of range; the sentence has {len(parsings)} parsing(s)")
        typer.echo(render.render_state(parsings[index]), nl=False)


@app.command("automaton")
def show_automaton(
    ctx: typer.Context,
    word_depth: Annotated[int, typer.Option(help="Number of words to explore.")] = 1,
) -> None:
    """
    Explore the incremental automaton up to a number of words and print its states and transitions.
    """
    config = _config(ctx)
    with exit_codes():
        wg = _load(config)
        truncated = automaton.truncate(wg, word_depth, _depth_bound(config), config.state_cap)
        if config.format == OutputFormat.dot.value:
            typer.echo(truncated.to_dot(), nl=False)
        elif config.format == OutputFormat.json.value:
            _echo_json(
                {
                    "states": [
                        {"state": s.canonical(), "output": str(o)} for s, o in zip(truncated.states, truncated.outputs)
                    ],
                    "transitions": [
                        {"source": source, "word": word, "target": target, "weight": str(weight)}
                        for (source, word), successors in sorted(truncated.transitions.items())
                        for target, weight in sorted(successors.items())
                    ],
                }
            )
        else:
            for i, (state, output) in enumerate(zip(truncated.states, truncated.outputs)):
                typer.echo(f"q{i}\t{state.canonical()}\t{output}")
            for (source, word), successors in sorted(truncated.transitions.items()):
                for target, weight in sorted(successors.items()):
                    typer.echo(f"q{source} -{word}/{weight}-> q{target}")


@weights_app.command("export")
def export_weights(
    ctx: typer.Context,
    output: Annotated[Optional[Path], typer.Option(help="Write to this file instead of stdout.")] = None,
) -> None:
    """
    Write the grammar's generator weights as JSON.
    """
    config = _config(ctx)
    with exit_codes():
        text = core.dump_json(_load(config).weight_map.to_json())
        if output is None:
            typer.echo(text, nl=False)
        else:
            output.write_text(text, encoding="utf-8")


@weights_app.command("import")
def import_weights(
    ctx: typer.Context,
    weights_file: Annotated[Path, typer.Argument(help="JSON map of generator name to weight.")],
    output: Annotated[Optional[Path], typer.Option(help="Write to this file instead of stdout.")] = None,
) -> None:
    """
    Print the grammar file rewritten with the weights from WEIGHTS_FILE.
    """
    config = _config(ctx)
    with exit_codes():
        base = _load(config, with_weights=False)
        wg = weighted.WeightedGrammar(base.grammar, base.weight_map.updated(core.read_json(weights_file)))
        text = weighted.format_grammar(wg)
        if output is None:
            typer.echo(text, nl=False)
        else:
            output.write_text(text, encoding="utf-8")


@app.command("init-config")
def initialize_configuration(
    path: Annotated[Path, typer.Argument(help="Configuration file to create.")] = Path(core.DEFAULT_CONFIG_FILE),
    force: Annotated[bool, typer.Option(help="Overwrite an existing configuration file.")] = False,
) -> None:
    """
    Write a commented configuration file with the default settings. (Existing files are not
    overwritten without the --force flag.)
    """
    if path.exists() and not force:
        console_log.error(f"{escape(str(path))} already exists; use --force to overwrite it.")
        raise typer.Exit(code=EXIT_USAGE)
    path.write_text(core.create_config_toml(), encoding="utf-8")
    console_log.info(f"Wrote {escape(str(path))}")
