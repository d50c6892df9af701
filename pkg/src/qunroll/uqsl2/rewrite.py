"""Reference normal forms by single-step rewriting of words.

Letters: ``E``, ``F``, ``K``, ``k`` (``k = K^-1``). Rules applied to the leftmost
out-of-order pair until the word reads ``E...E K^b F...F``:

    K E -> v^2 E K      k E -> v^-2 E k      F K -> v^2 K F      F k -> v^-2 k F
    F E -> E F - (K - k)/(v - v^-1)          K k -> 1            k K -> 1

Independent of the closed-form straightening in :mod:`qunroll.uqsl2.pbw`;
the result is in the plain basis ``E^a K^b F^c``.
"""

from __future__ import annotations

from functools import lru_cache

from qunroll.arith import RATONE, RatFunc, V, quantum_factorial, vpow
from qunroll.uqsl2.pbw import UqElement

_RANK = {"E": 0, "K": 1, "k": 1, "F": 2}
_LINK = RatFunc(1, V - V ** -1)


def _is_normal(w: str) -> bool:
    ranks = [_RANK[x] for x in w]
    if ranks != sorted(ranks):
        return False
    mid = [x for x in w if x in "Kk"]
    return not ("K" in mid and "k" in mid)


def _mono(w: str) -> tuple[int, int, int]:
    return w.count("E"), w.count("K") - w.count("k"), w.count("F")


def _add(acc: dict, key, c):
    s = acc.get(key)
    s = c if s is None else s + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


@lru_cache(maxsize=None)
def normal_form_word(w: str) -> tuple:
    """Plain-basis normal form of a word, as a tuple of ``(mono, coeff)``."""
    if _is_normal(w):
        return ((_mono(w), RATONE),)
    for i in range(len(w) - 1):
        pair = w[i:i + 2]
        pre, post = w[:i], w[i + 2:]
        if pair == "KE":
            rewrites = [(pre + "EK" + post, RatFunc(vpow(2)))]
        elif pair == "kE":
            rewrites = [(pre + "Ek" + post, RatFunc(vpow(-2)))]
        elif pair == "FK":
            rewrites = [(pre + "KF" + post, RatFunc(vpow(2)))]
        elif pair == "Fk":
            rewrites = [(pre + "kF" + post, RatFunc(vpow(-2)))]
        elif pair == "FE":
            rewrites = [(pre + "EF" + post, RATONE),
                        (pre + "K" + post, -_LINK),
                        (pre + "k" + post, _LINK)]
        elif pair in ("Kk", "kK"):
            rewrites = [(pre + post, RATONE)]
        else:
            continue
        acc: dict = {}
        for w2, c in rewrites:
            for m, x in normal_form_word(w2):
                _add(acc, m, c * x)
        return tuple(sorted(acc.items()))
    raise AssertionError(f"no rule applies to non-normal word {w!r}")


def word_element(w: str) -> UqElement:
    """The product of the letters of ``w``, in the plain basis."""
    return UqElement(dict(normal_form_word(w)), mode="plain")


def divided_word_element(a: int, c: int, first: str = "E") -> UqElement:
    """``E^(a) F^(c)`` (or ``F^(c) E^(a)``) via rewriting and exact factorial division."""
    w = "E" * a + "F" * c if first == "E" else "F" * c + "E" * a
    f = quantum_factorial(a, 1) * quantum_factorial(c, 1)
    return word_element(w).scale(RatFunc(1, f))
