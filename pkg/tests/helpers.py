"""Shared test utilities: random elements and an exhaustive rewriting oracle."""

import itertools
import random

from hypothesis import strategies as st

from hdeform.algebra import Element
from hdeform.scalar import Q, Q_INV, Scalar

COEFFS = [Scalar.coerce(n) for n in (1, -1, 2, -3)] + [Q, Q_INV, Q - Q_INV]


def random_word(rng, names, max_len):
    return tuple(rng.choice(names) for _ in range(rng.randint(0, max_len)))


def random_element(rng, system, max_len=3, max_terms=3):
    names = system.alphabet.names
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_word(rng, names, max_len)] = rng.choice(COEFFS)
    return Element(system.alphabet, terms)


def elements(system, max_len=3, max_terms=3):
    """Hypothesis strategy for elements over the system's alphabet."""
    names = system.alphabet.names
    word = st.lists(st.sampled_from(names), max_size=max_len).map(tuple)
    coeff = st.sampled_from(COEFFS)
    return st.dictionaries(word, coeff, min_size=0, max_size=max_terms).map(
        lambda d: Element(system.alphabet, d))


def one_step_reducts(system, word):
    """Every element obtained by one rule application anywhere in ``word``."""
    out = []
    for i, rule in enumerate(system.rules):
        n = len(rule.pattern)
        for pos in range(len(word) - n + 1):
            if word[pos:pos + n] == rule.pattern:
                out.append(system.rewrite_at(word, pos, i))
    return out


def all_normal_forms(system, word, memo=None, cap=64):
    """Normal forms of ``word`` over every rewriting order.

    Each redex of each word is tried; the reducts of the monomials of a
    rewritten element are combined in every way.  The result is a set of
    elements; a confluent, terminating system yields exactly one.
    """
    memo = {} if memo is None else memo
    if word in memo:
        return memo[word]
    reducts = one_step_reducts(system, word)
    if not reducts:
        result = {Element.monomial(system.alphabet, word)}
    else:
        result = set()
        for e in reducts:
            terms = list(e.terms.items())
            choices = [all_normal_forms(system, w, memo, cap) for w, _ in terms]
            for combo in itertools.islice(itertools.product(*choices), cap):
                acc = Element.zero(system.alphabet)
                for (w, c), nf in zip(terms, combo):
                    acc = acc + nf.scale(c)
                result.add(acc)
    memo[word] = result
    return result


def rng(seed):
    return random.Random(seed)
