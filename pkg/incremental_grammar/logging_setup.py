import logging.config

from rich.console import Console
from rich.highlighter import RegexHighlighter
from rich.theme import Theme


class VerdictHighlighter(RegexHighlighter):
    """Apply style to parse and equivalence verdicts."""

    base_style = "verdict."
    highlights = [
        r"(?P<accept>ACCEPT)",
        r"(?P<reject>REJECT)",
        r"(?P<equivalent>EQUIVALENT)",
        r"(?P<different>DIFFERENT)",
    ]


console = Console(
    stderr=True,
    theme=Theme(
        {
            "verdict.accept": "spring_green3",
            "verdict.reject": "red3",
            "verdict.equivalent": "spring_green3",
            "verdict.different": "dark_magenta",
        }
    ),
)


config = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {"defaultFormatter": {"format": "%(asctime)s  [%(levelname)s]   %(message)s"}},
    "handlers": {
        "defaultFileHandler": {
            "formatter": "defaultFormatter",
            "class": "logging.FileHandler",
            "filename": "incremental_grammar.log",
            "level": "ERROR",
            "delay": True,
        },
        "richHandler-cli": {
            "class": "rich.logging.RichHandler",
            "level": "INFO",
            "show_time": False,
            "highlighter": VerdictHighlighter(),
            "console": console,
            "markup": True,
        },
    },
    "loggers": {
        "incgram": {
            "handlers": ["defaultFileHandler", "richHandler-cli"],
            "level": "INFO",
            "propagate": False,
        }
    },
}

logging.config.dictConfig(config)
