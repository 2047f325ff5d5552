"""Shared helpers for the test suite: fixture loading and random elements."""
import random

from thompsonf import generator, invert, multiply
from thompsonf.elements import IDENTITY
from thompsonf.cli import fixture_paths, load_spec

FIXTURES = {s.name: s.generators
            for s in (load_spec(str(p)) for p in fixture_paths())}

LETTERS = [generator(0), generator(1), generator(2)]
LETTERS += [invert(g) for g in LETTERS]


def product(elements):
    acc = IDENTITY
    for e in elements:
        acc = multiply(acc, e)
    return acc


def random_word_element(rng: random.Random, max_len: int):
    """A random product of x0, x1, x2 and their inverses."""
    return product(rng.choice(LETTERS)
                   for _ in range(rng.randint(0, max_len)))


def random_subgroup_element(rng: random.Random, generators, max_len: int):
    """A random word in the given generators and their inverses."""
    letters = list(generators) + [invert(g) for g in generators]
    if not letters:
        return IDENTITY
    return product(rng.choice(letters)
                   for _ in range(rng.randint(0, max_len)))


def unreduce(rng: random.Random, pairs, steps: int):
    """Insert random sibling splits, producing an unreduced branch list."""
    out = list(pairs)
    for _ in range(steps):
        i = rng.randrange(len(out))
        u, v = out[i]
        out[i:i + 1] = [(u + "0", v + "0"), (u + "1", v + "1")]
    rng.shuffle(out)
    return out
