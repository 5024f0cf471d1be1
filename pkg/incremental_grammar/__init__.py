from incremental_grammar import logging_setup
from incremental_grammar._version import __version__
