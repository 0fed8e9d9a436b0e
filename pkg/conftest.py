import pytest

from backend import counts

# p_-k(n) for k = 2..10 (rows) and n = 1..11 (columns).
REFERENCE_TABLE = {
    2: [2, 5, 10, 20, 36, 65, 110, 185, 300, 481, 752],
    3: [3, 9, 22, 51, 108, 221, 429, 810, 1479, 2640, 4599],
    4: [4, 14, 40, 105, 252, 574, 1240, 2580, 5180, 10108, 19208],
    5: [5, 20, 65, 190, 506, 1265, 2990, 6765, 14725, 31027, 63505],
    6: [6, 27, 98, 315, 918, 2492, 6372, 15525, 36280, 81816, 178794],
    7: [7, 35, 140, 490, 1547, 4522, 12405, 32305, 80465, 192899, 447146],
    8: [8, 44, 192, 726, 2464, 7704, 22528, 62337, 164560, 417140, 1020416],
    9: [9, 54, 255, 1035, 3753, 12483, 38709, 113265, 315445, 841842, 2164185],
    10: [10, 65, 330, 1430, 5512, 19415, 63570, 195910, 573430, 1605340, 4322110],
}


@pytest.fixture
def reference_table():
    return REFERENCE_TABLE


@pytest.fixture
def fresh_tables():
    """Drop memoized count tables before and after the test."""
    counts.reset_tables()
    yield
    counts.reset_tables()
