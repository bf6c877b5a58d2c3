"""Random torsion / transcendental points shared by the property tests."""
from fractions import Fraction

from rootstrata.strata import EllipticPoint, FormalValue, TorusPoint


def random_coordinate(rng, max_den=12, trans_names=("t1", "t2")):
    q = Fraction(rng.randrange(max_den * 2), rng.randint(1, max_den))
    trans = []
    if rng.random() < 0.25:
        trans.append((rng.choice(trans_names), Fraction(rng.randint(-2, 2))))
    return FormalValue(q, tuple(trans))


def random_torus_point(rng, rank, max_den=12):
    # a shared denominator makes nontrivial Sigma_p likely
    if rng.random() < 0.5:
        n = rng.randint(1, max_den)
        return TorusPoint(tuple(FormalValue(Fraction(rng.randrange(n), n))
                                for _ in range(rank)))
    return TorusPoint(tuple(random_coordinate(rng, max_den)
                            for _ in range(rank)))


def random_point(rng, rank, max_den=12):
    x1 = random_torus_point(rng, rank, max_den)
    if rng.random() < 0.3:
        return x1
    return EllipticPoint(x1, random_torus_point(rng, rank, max_den))
