import math

from hamming_centroid import BinaryStringSet, PExponent, approx_factor2, solve_bruteforce

P2 = PExponent(2, 1)


def test_intro_approximation(intro):
    r = approx_factor2(intro, P2)
    assert r.centroid.text == "0000100"
    assert r.cost.exact == 69
    assert r.algorithm == "approx2"


def test_intro_ratio(intro):
    apx = approx_factor2(intro, P2).cost.exact
    opt = solve_bruteforce(intro, P2).cost.exact
    ratio = math.sqrt(apx / opt)
    assert abs(ratio - math.sqrt(69 / 56)) < 1e-9
    assert ratio <= 2 ** (1 - 1 / 2)


def test_row_sums(intro):
    # per-input-string total squared distances: picking each input as center
    from hamming_centroid.core import distance_vector

    sums = [
        sum(d * d for d in distance_vector(s, intro)) for s in intro
    ]
    assert sums == [117, 84, 69, 69, 69]


def test_tie_prefers_earliest_input():
    S = BinaryStringSet.from_texts(["0101", "1010"])
    r = approx_factor2(S, P2)
    assert r.centroid.text == "0101"


def test_idempotent_when_an_input_is_optimal():
    S = BinaryStringSet.from_texts(["0000", "0001", "0000"])
    apx = approx_factor2(S, P2)
    opt = solve_bruteforce(S, P2)
    assert apx.cost.exact == opt.cost.exact == 1


def test_two_opposite_strings():
    S = BinaryStringSet.from_texts(["0000", "1111"])
    r = approx_factor2(S, P2)
    assert r.centroid.text == "0000" and r.cost.exact == 16
    # optimum is 8 (any balanced string), so the ratio is sqrt(2) = 2^(1-1/p)
    assert solve_bruteforce(S, P2).cost.exact == 8


def test_guarantee_over_random_instances():
    import numpy as np

    from hamming_centroid.generator import gen_uniform

    rng = np.random.Generator(np.random.PCG64(31337))
    worst = 1.0
    for _ in range(40):
        n = int(rng.integers(1, 11))
        m = int(rng.integers(1, 6))
        S = gen_uniform(n, m, int(rng.integers(0, 2 ** 63)))
        for p in (P2, PExponent(3, 1), PExponent(3, 2)):
            apx = approx_factor2(S, p)
            opt = solve_bruteforce(S, p)
            a, o = float(apx.cost.approx), float(opt.cost.approx)
            if a > 0:
                worst = max(worst, (a / o) ** (1 / float(p)))
    assert worst <= 2.0
