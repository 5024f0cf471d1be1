# SPDX-FileCopyrightText: © 2025 Big Ladder Software <info@bigladdersoftware.com>
# SPDX-License-Identifier: BSD-3-Clause

import json
import logging
from dataclasses import dataclass, fields
from enum import Enum
from pathlib import Path
from typing import Any

import tomli_w

try:
    import tomllib
except ImportError:
    import tomli as tomllib  # type: ignore [no-redef] # for Python <3.11
from jinja2 import Environment, FileSystemLoader, StrictUndefined

log = logging.getLogger("incgram")

THIS_DIR = Path(__file__).resolve().parent
TEMPLATE_DIR = THIS_DIR / "templates"
GRAMMAR_DIR = THIS_DIR / "grammars"
DEFAULT_CONFIG_FILE = "incgram.toml"


class GrammarSyntaxError(ValueError):
    """A grammar file line could not be read."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class GrammarValidationError(ValueError):
    pass


class UnknownWordError(ValueError):
    pass


class InapplicableGeneratorError(ValueError):
    pass


class BoundExceededError(RuntimeError):
    """A closure or exploration outgrew its configured bound."""


class SemiringMismatchError(TypeError):
    pass


class MorphismError(ValueError):
    pass


class ZeroMassError(ValueError):
    pass


class ComplianceError(ValueError):
    pass


class FittingError(ValueError):
    pass


class VocabularyMismatchError(ValueError):
    pass


class OutputFormat(str, Enum):
    text = "text"
    json = "json"
    dot = "dot"


def read_toml(input_file: Path) -> dict:
    """Read and return a dictionary from toml file.

    Args:
        input_file (Path): Input .toml file path

    Raises:
        RuntimeError: Badly configured input file.
        FileNotFoundError: No input file.

    Returns:
        dict: Key-value pairs extracted from toml format.
    """
    if input_file.is_file():
        try:
            with open(input_file, "rb") as fid:
                return tomllib.load(fid)
        except tomllib.TOMLDecodeError as err:
            log.error(f"Incorrect input file format detected in {input_file}: {err}")
            raise RuntimeError(f"Malformed TOML file {input_file}") from None
    else:
        log.error(f"{input_file} does not exist.")
        raise FileNotFoundError(f"{input_file} does not exist.")


def resolve_grammar_path(name: str) -> Path:
    """A grammar file path, or the name of a bundled grammar such as 'alice_loves_bob'."""
    path = Path(name)
    if path.is_file():
        return path
    bundled = GRAMMAR_DIR / f"{name}.grammar"
    if bundled.is_file():
        return bundled
    log.error(f"{path} does not exist.")
    raise FileNotFoundError(f"{path} does not exist.")


def read_text(input_file: Path) -> str:
    """Read a UTF-8 text file, logging and raising FileNotFoundError when absent."""
    if not input_file.is_file():
        log.error(f"{input_file} does not exist.")
        raise FileNotFoundError(f"{input_file} does not exist.")
    return input_file.read_text(encoding="utf-8")


def read_json(input_file: Path) -> Any:
    """Read a JSON document; malformed content raises RuntimeError like read_toml."""
    text = read_text(input_file)
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        log.error(f"Incorrect JSON detected in {input_file}: {err}")
        raise RuntimeError(f"Malformed JSON file {input_file}") from None


def dump_json(data: Any) -> str:
    """Serialize with a fixed layout so repeated runs are byte-identical."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def dot_escape(text: object) -> str:
    return str(text).replace("\\", "\\\\").replace('"', '\\"')


def template_environment() -> Environment:
    env = Environment(
        loader=FileSystemLoader(TEMPLATE_DIR, encoding="utf-8"),
        keep_trailing_newline=True,
        trim_blocks=True,
        lstrip_blocks=True,
        undefined=StrictUndefined,
    )
    env.filters["dot"] = dot_escape
    return env


def render(template_name: str, context: dict) -> str:
    """Render a bundled template using the given data

    Args:
        template_name (str): file name under the templates directory
        context (dict): values to insert into template

    Returns:
        str: the rendered template
    """
    return template_environment().get_template(template_name).render(context)


@dataclass
class CliConfig:
    grammar: str = ""
    semiring: str = ""
    weights: str = ""
    depth_bound: int | None = None  # None selects 10 * (words + 1) per sentence
    max_len: int = 4
    tolerance: float = 1e-9
    format: str = "text"
    adjoint_bound: int = 2
    state_cap: int = 1_000_000


# Parameter table in the manner of a template manifest: type, options and description.
CONFIG_PARAMETERS: dict[str, dict[str, Any]] = {
    "grammar": {"type": "str", "description": "grammar file path"},
    "semiring": {"type": "enum", "options": ["", "bool", "real", "viterbi"], "description": "semiring override"},
    "weights": {"type": "str", "description": "weights JSON applied over the grammar file weights"},
    "depth_bound": {"type": "int:>=1", "description": "generator applications per closure (unset: 10 * (words + 1))"},
    "max_len": {"type": "int:>=0", "description": "longest sentence enumerated by language/equiv"},
    "tolerance": {"type": "float:>=0", "description": "numeric comparison tolerance"},
    "format": {"type": "enum", "options": ["text", "json", "dot"], "description": "output format"},
    "adjoint_bound": {"type": "int:>=0", "description": "largest |adjoint order| of pregroup types"},
    "state_cap": {"type": "int:>=1", "description": "largest truncated automaton"},
}


def _check_parameter(key: str, value: Any) -> None:
    data_type: str = CONFIG_PARAMETERS[key]["type"]
    type_error = f"Type mismatch in attribute {key}\n... expected type: {data_type}\n... actual value : {value!r}"
    if data_type.startswith("str") and not isinstance(value, str):
        raise TypeError(type_error)
    if data_type.startswith("int") and (isinstance(value, bool) or not isinstance(value, int)):
        raise TypeError(type_error)
    if data_type.startswith("float") and (isinstance(value, bool) or not isinstance(value, (int, float))):
        raise TypeError(type_error)
    if data_type.startswith("enum"):
        if not isinstance(value, str):
            raise TypeError(type_error)
        options = CONFIG_PARAMETERS[key].get("options", [])
        if value not in options:
            raise TypeError(f"Enum error; {value} not in {options}")
    if data_type.endswith(">=0") and value < 0:
        raise TypeError(f"{key} must be non-negative, got {value!r}")
    if data_type.endswith(">=1") and value < 1:
        raise TypeError(f"{key} must be at least 1, got {value!r}")


def merge_config(base: CliConfig, overrides: dict) -> CliConfig:
    """Overlay validated values from a TOML table or CLI flags onto a configuration."""
    values = {f.name: getattr(base, f.name) for f in fields(CliConfig)}
    for key, value in overrides.items():
        key = key.replace("-", "_")
        if key not in CONFIG_PARAMETERS:
            log.warning(f"Unrecognized key '{key}' in config")
            continue
        if value is None:
            continue
        _check_parameter(key, value)
        values[key] = float(value) if CONFIG_PARAMETERS[key]["type"].startswith("float") else value
    return CliConfig(**values)


def load_config(config_file: Path | None) -> CliConfig:
    """Read defaults from a TOML configuration; the working-directory file is used when present."""
    if config_file is None:
        candidate = Path.cwd() / DEFAULT_CONFIG_FILE
        if not candidate.is_file():
            return CliConfig()
        config_file = candidate
    return merge_config(CliConfig(), read_toml(config_file))


def create_config_toml() -> str:
    """Create commented configuration TOML from the defaults and the parameter table."""
    defaults = CliConfig()
    entries = []
    for key in CONFIG_PARAMETERS:
        default = getattr(defaults, key)
        # TOML has no null; unset defaults are shown with a sample value.
        value_str = tomli_w.dumps({key: default if default is not None else 10}).strip()
        entries.append(f"# {CONFIG_PARAMETERS[key]['description']}")
        entries.append(f"# {value_str}" if key != "grammar" else value_str)
    return "\n".join(entries) + "\n"
