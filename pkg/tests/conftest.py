"""Shared grammars for the test suite: the bundled examples and a few small variants of them."""

import pytest

from tests.grammar_cases import CYCLIC_TEXT, EXTRA_RULE_TEXT, RENAMED_TEXT, SPLIT_TEXT, bundled


@pytest.fixture
def complex_houses():
    return bundled("complex_houses")


@pytest.fixture
def alice():
    return bundled("alice_loves_bob")


@pytest.fixture
def fishing():
    return bundled("fishing")


@pytest.fixture
def split_text():
    return SPLIT_TEXT


@pytest.fixture
def renamed_text():
    return RENAMED_TEXT


@pytest.fixture
def extra_rule_text():
    return EXTRA_RULE_TEXT


@pytest.fixture
def cyclic_text():
    return CYCLIC_TEXT
