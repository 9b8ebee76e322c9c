import random

import pytest

from toricmrc.fan import builtin_fan, star_subdivide

ACCEPTANCE_RESULTS = []

BUILTIN_ARGS = [
    ("projective_space", 1), ("projective_space", 2), ("projective_space", 3),
    ("projective_space", 4), ("del_pezzo_s3",), ("split_bundle", 2), ("split_bundle", 3),
    ("split_bundle", 4), ("oda_3fold",), ("oda_blowup_e1e3",), ("oda_blowup_e3e7",),
    ("hirzebruch", 0), ("hirzebruch", 1), ("hirzebruch", 2), ("pn_times_p1", 3),
    ("pn_times_p1", 4), ("blowup_pn_times_p1", 3), ("blowup_pn_times_p1", 4),
]


def all_builtins():
    return [builtin_fan(*a) for a in BUILTIN_ARGS]


def random_subdivisions(count, seed, bases=None, max_steps=3):
    """Fans made by 1..max_steps star subdivisions along random cones of dimension >= 2."""
    rng = random.Random(seed)
    bases = [f for f in (bases or all_builtins()) if f.dim >= 2]
    out = []
    for _ in range(count):
        fan = rng.choice(bases)
        for _ in range(rng.randint(1, max_steps)):
            cands = sorted(c for c in fan.faces if len(c) >= 2)
            fan = star_subdivide(fan, rng.choice(cands))
        out.append(fan)
    return out


@pytest.fixture(scope="session")
def builtins():
    return all_builtins()


@pytest.fixture(scope="session")
def fuzz_fans():
    return random_subdivisions(40, seed=2024)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
