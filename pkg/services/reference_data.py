"""
Published coefficient tables used as golden values by the verification driver
"""
from typing import Dict, List, Tuple

# alpha_n^(g) for generic cumulants, keyed by (g, n)
PERMUTATION_MOMENTS: Dict[Tuple[int, int], str] = {
    (1, 3): "k3",
    (1, 4): "4*k1*k3 + k2^2 + 5*k4",
    (1, 5): "10*k1^2*k3 + 5*k1*k2^2 + 25*k1*k4 + 15*k2*k3 + 15*k5",
    (1, 6): "20*k1^3*k3 + 15*k1^2*k2^2 + 75*k1^2*k4 + 90*k1*k2*k3 + 10*k2^3 + 90*k1*k5"
            " + 60*k2*k4 + 25*k3^2 + 35*k6",
    (2, 5): "8*k5",
    (2, 6): "48*k1*k5 + 24*k2*k4 + 12*k3^2 + 84*k6",
    (2, 7): "168*k1^2*k5 + 168*k1*k2*k4 + 84*k1*k3^2 + 49*k2^2*k3 + 588*k1*k6 + 322*k2*k5"
            " + 273*k3*k4 + 469*k7",
    (3, 7): "180*k7",
    (3, 8): "1440*k1*k7 + 720*k2*k6 + 608*k3*k5 + 276*k4^2 + 3044*k8",
}

# m_n^(g) for generic cumulants, keyed by (g, n)
PARTITION_MOMENTS: Dict[Tuple[int, int], str] = {
    (1, 4): "k2^2",
    (1, 5): "5*k1*k2^2 + 5*k3*k2",
    (1, 6): "10*k2^3 + 15*k1^2*k2^2 + 30*k1*k3*k2 + 9*k4*k2 + 6*k3^2",
    (1, 7): "35*k2^2*k1^3 + 105*k2*k3*k1^2 + 70*k2^3*k1 + 42*k3^2*k1 + 63*k2*k4*k1 + 70*k2^2*k3"
            " + 21*k3*k4 + 14*k2*k5",
    (2, 6): "k3^2",
    (2, 7): "14*k3*k2^2 + 7*k1*k3^2 + 7*k3*k4",
    (2, 8): "21*k2^4 + 112*k1*k3*k2^2 + 54*k4*k2^2 + 100*k3^2*k2 + 28*k1^2*k3^2 + 12*k4^2"
            " + 56*k1*k3*k4 + 16*k3*k5",
}

# m^(0)_{i,j} for partitions of cylinder type, keyed by (i, j)
CYLINDER_MOMENTS: Dict[Tuple[int, int], str] = {
    (1, 1): "k1_1 + k2",
    (1, 2): "k1_2 + 2*k1*k1_1 + k3 + 2*k1*k2",
    (2, 2): "k2_2 + 4*k1*k1_2 + 4*k1^2*k1_1 + k4 + 4*k1*k3 + 2*k2^2 + 4*k1^2*k2",
    (1, 3): "k1_3 + 3*k1*k1_2 + 3*k2*k1_1 + 3*k1^2*k1_1 + k4 + 3*k1*k3 + 3*k1^2*k2 + 3*k2^2",
    (2, 3): "k2_3 + 3*k1*k2_2 + 2*k1*k1_3 + 3*k2*k1_2 + 9*k1^2*k1_2 + 6*k1*k2*k1_1 + 6*k1^3*k1_1"
            " + k5 + 5*k1*k4 + 9*k2*k3 + 9*k1^2*k3 + 6*k1^3*k2 + 12*k1*k2^2",
    (3, 3): "k3_3 + 6*k1*k2_3 + 6*k1^2*k1_3 + 6*k2*k1_3 + 9*k1^2*k2_2 + 18*k1*k2*k1_2 + 18*k1^3*k1_2"
            " + 9*k2^2*k1_1 + 18*k1^2*k2*k1_1 + 9*k1^4*k1_1 + k6 + 6*k1*k5 + 15*k2*k4 + 9*k1^4*k2"
            " + 18*k1^3*k3 + 36*k1^2*k2^2 + 9*k3^2 + 15*k1^2*k4 + 54*k1*k2*k3 + 12*k2^3",
}

# First-order part of the permutation cylinder moment with boundaries (2, 2)
CYLINDER_PERMUTATION_FIRST_ORDER: Dict[Tuple[int, int], str] = {
    (1, 1): "k2",
    (2, 2): "4*k4 + 8*k1*k3 + 2*k2^2 + 4*k1^2*k2",
}

# Specialized series: preset -> kind -> genus -> (first n, coefficients from that n on)
SPECIALIZED_SERIES: Dict[str, Dict[str, Dict[int, Tuple[int, List[str]]]]] = {
    "factorials": {
        "permutation": {
            0: (0, ["1", "1", "2", "5", "14", "42", "132", "429", "1430", "4862"]),
            1: (3, ["1", "10", "70", "420", "2310", "12012", "60060"]),
            2: (5, ["8", "168", "2121", "20790", "174174"]),
            3: (7, ["180", "6088", "115720"]),
        },
    },
    "stirling1": {
        "permutation": {
            1: (3, ["k", "5*k^2 + 5*k", "15*k^3 + 40*k^2 + 15*k", "35*k^4 + 175*k^3 + 175*k^2 + 35*k"]),
            2: (5, ["8*k", "84*k^2 + 84*k", "469*k^3 + 1183*k^2 + 469*k"]),
        },
    },
    "harer-zagier": {
        "permutation": {
            1: (4, ["1", "0", "10", "0", "70", "0", "420", "0", "2310", "0", "12012", "0", "60060", "0",
                    "291720"]),
            2: (8, ["21", "0", "483", "0", "6468", "0", "66066", "0", "570570", "0", "4390386"]),
            3: (12, ["1485", "0", "56628", "0", "1169740", "0", "17454580"]),
        },
    },
}

# (p, k) -> genus-1 partitions of pk points into k blocks of size p
FAA_DI_BRUNO_ANCHORS: Dict[Tuple[int, int], int] = {(2, 2): 1, (3, 2): 6, (2, 3): 10}

# (r, p, q) -> genus-1 partitions into three blocks of those sizes
THREE_BLOCK_ANCHORS: Dict[Tuple[int, int, int], int] = {(1, 2, 3): 30, (1, 2, 4): 63}
