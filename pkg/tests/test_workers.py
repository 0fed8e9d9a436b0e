from backend.workers import ordered_map


def test_serial_map():
    assert ordered_map(abs, [-3, 2, -1]) == [3, 2, 1]


def test_pool_keeps_input_order():
    items = list(range(-40, 40))
    assert ordered_map(abs, items, workers=2) == [abs(i) for i in items]


def test_single_item_and_empty_input():
    assert ordered_map(abs, [-5], workers=4) == [5]
    assert ordered_map(abs, [], workers=4) == []
