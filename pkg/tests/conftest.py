"""Shared fixtures: small reference trees used across the suite.

The 4-leaf pair (`quartet_a`, `quartet_b`) differ by one NNI around the
{1,2,3} configuration; their segment bends at the tree where leaves 1, 2, 3
form a polytomy.  The 5-leaf pair (`clade_a`, `clade_b`) share the clade
{S1,S2,S3} with the same induced shape.  The 8-leaf `ladder8` tree has seven
distinct speciation times (0.2, 0.3, 0.4, 0.6, 0.7, 1.0, 1.2).
"""

import pytest

from troptree import parse_newick

QUARTET_A = "(((1:0.2,2:0.2):0.2,3:0.4):0.6,4:1);"
QUARTET_B = "(((2:0.2,3:0.2):0.2,1:0.4):0.6,4:1);"

CLADE_A = "((((S1:0.5,S2:0.5):0.5,S3:1):0.9,S4:1.9):0.1,S5:2);"
CLADE_B = "(((S1:0.5,S2:0.5):0.5,S3:1):1,(S4:1.5,S5:1.5):0.5);"

LADDER8 = ("((1:1,(2:0.6,(3:0.3,4:0.3):0.3):0.4):0.2,"
           "((5:0.4,6:0.4):0.3,(7:0.2,8:0.2):0.5):0.5);")


@pytest.fixture
def quartet_a():
    return parse_newick(QUARTET_A)


@pytest.fixture
def quartet_b():
    return parse_newick(QUARTET_B)


@pytest.fixture
def clade_a():
    return parse_newick(CLADE_A)


@pytest.fixture
def clade_b():
    return parse_newick(CLADE_B)


@pytest.fixture
def ladder8():
    return parse_newick(LADDER8)
