"""Data tables from the worked examples and exercises, transcribed by hand."""

import math

PROCESSING_TIMES = [
    3.5, 4.7, 3.7, 2.9, 1.3, 1.7, 4.2, 3.7, 4.0, 3.7,
    3.4, 5.6, 3.5, 3.2, 2.7, 5.9, 6.1, 7.2, 2.4, 6.8,
    4.3, 5.3, 1.6, 4.7, 5.7, 3.8, 4.1, 5.4, 7.9, 8.4,
    3.5, 4.3, 5.6, 6.3, 2.3, 2.6, 3.1, 2.1, 2.8, 4.6,
    6.7, 3.9, 4.8, 4.9, 2.5, 3.9, 5.3, 2.5, 3.2, 2.1,
]
GOF_EDGES = (0.01, 1, 2, 3, 4, 5, 6, 7, 8, math.inf)
GOF_OBSERVED = [0, 3, 10, 14, 9, 7, 4, 2, 1]
GOF_EXPECTED = [
    0.0299429, 2.8731703, 10.8857644, 13.1414340, 9.9169312,
    6.0680828, 3.3643072, 1.7816774, 1.9386896,
]

CARRIER_PAIRS = [
    ("A", "Y"), ("B", "N"), ("A", "N"), ("A", "N"), ("B", "Y"), ("A", "N"),
    ("B", "N"), ("B", "Y"), ("A", "Y"), ("B", "N"), ("B", "N"),
]

DELAY_RAIN = [tuple(p) for p in (
    "LL LN LN LN HM HH LM LL LM HH HH LN LH HL LN HH LL "
    "LL HN HH HN HM HL HH HL LM LL HH HN HM HM LL HM LL "
    "LL HL LM LH LH HL HL LN HH HM LN LM HM LH HN HH"
).split()]

PORT_TRIPS = [3, 1, 2, 4, 3, 2, 6, 4, 5, 2]
TRUCKS = [4, 2, 3, 4, 2, 4, 8, 6, 6, 2]

QUEUE_LENGTH = [1, 3, 2, 4, 2]
GATE_TIME = [2, 2, 3, 8, 4]
QUEUEING_TIME = [2, 5, 7, 15, 10]

COSTS = [5.0, 4.8, 6.5, 6.5, 5.3, 6.5, 7.0, 6.8, 7.5, 5.7]
DISTANCE = [500, 550, 600, 650, 550, 700, 800, 600, 700, 550]
TRANSFERS = [2, 2, 3, 3, 2, 4, 4, 2, 3, 2]
DELIVERY_TIME = [7, 7, 14, 7, 14, 7, 7, 14, 7, 7]
