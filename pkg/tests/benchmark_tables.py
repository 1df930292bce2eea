"""Reference confusion matrices used as replication targets.

BENCH_6X6 is the published text-cluster x community confusion matrix this
toolkit is validated against; BENCH_5X5 is the same matrix with text
cluster 2 and community 2 removed. The frozen expectations: optimal
matching on BENCH_6X6 selects the diagonal (matched sum 4627 of 13099,
accuracy 0.3532...), and on BENCH_5X5 the diagonal again (1864 of 4288,
accuracy 0.4347...).
"""

import numpy as np

from chamberlens.concordance import ConfusionMatrix

BENCH_6X6_IDS = ["1", "2", "3", "4", "5", "6"]
BENCH_6X6_COUNTS = [
    [445, 942, 172, 128, 70, 58],
    [720, 2763, 413, 323, 239, 156],
    [262, 974, 355, 71, 111, 71],
    [237, 827, 94, 264, 86, 64],
    [202, 736, 162, 82, 308, 41],
    [205, 718, 145, 92, 71, 492],
]

BENCH_5X5_IDS = ["1", "3", "4", "5", "6"]
BENCH_5X5_COUNTS = [
    [445, 172, 128, 70, 58],
    [262, 355, 71, 111, 71],
    [237, 94, 264, 86, 64],
    [202, 162, 82, 308, 41],
    [205, 145, 92, 71, 492],
]

BENCH_6X6_MATCHED_SUM = 4627
BENCH_6X6_TOTAL = 13099
BENCH_5X5_MATCHED_SUM = 1864
BENCH_5X5_TOTAL = 4288


def bench_6x6() -> ConfusionMatrix:
    return ConfusionMatrix(tuple(BENCH_6X6_IDS), tuple(BENCH_6X6_IDS),
                           np.array(BENCH_6X6_COUNTS, dtype=np.int64))


def bench_5x5() -> ConfusionMatrix:
    return ConfusionMatrix(tuple(BENCH_5X5_IDS), tuple(BENCH_5X5_IDS),
                           np.array(BENCH_5X5_COUNTS, dtype=np.int64))
