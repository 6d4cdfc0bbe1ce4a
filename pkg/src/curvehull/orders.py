"""Monomial orders.

An order exposes a `key` function mapping an exponent tuple to something
comparable; larger key means larger monomial. Keys are plain nested tuples of
ints so they can be cached, compared and negated cheaply.
"""


def _grevlex_key(monom):
    return (sum(monom), tuple(-e for e in reversed(monom)))


def _lex_key(monom):
    return monom


class MonomialOrder:
    name = "?"

    def key(self, monom):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and repr(self) == repr(other)

    def __hash__(self):
        return hash(repr(self))


class Grevlex(MonomialOrder):
    name = "grevlex"

    def key(self, monom):
        return _grevlex_key(monom)


class Lex(MonomialOrder):
    name = "lex"

    def key(self, monom):
        return _lex_key(monom)


class Block(MonomialOrder):
    """Elimination order: grevlex within each block, blocks compared first.

    `splits` are cumulative split points; Block(3) on six variables compares
    grevlex on vars 0..2 first, then grevlex on vars 3..5.
    """

    def __init__(self, *splits):
        self.splits = tuple(splits)
        self.name = "block" + repr(self.splits)

    def key(self, monom):
        parts = []
        prev = 0
        for s in self.splits:
            parts.append(_grevlex_key(monom[prev:s]))
            prev = s
        parts.append(_grevlex_key(monom[prev:]))
        return tuple(parts)


GREVLEX = Grevlex()
LEX = Lex()


def negate_key(k):
    """Elementwise negation of a nested int-tuple key (for min-heaps)."""
    if isinstance(k, tuple):
        return tuple(negate_key(x) for x in k)
    return -k
