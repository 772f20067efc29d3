"""Text normalization shared by discovery, survey ingestion, and indexing.

Free text is split on non-alphanumeric boundaries, lowercased, and each
token is reduced with a small rule-based suffix stripper. The stripper
re-applies its rules until none fire, so every normalized form is a fixed
point: ``normalize_and_stem(normalize_and_stem(t)) == normalize_and_stem(t)``
holds for any input.
"""

from __future__ import annotations

import re

from .errors import InputError

_TOKEN_RE = re.compile(r"[^\W_]+")

# Function words dropped while indexing documents. The list is fixed on
# purpose: a configurable list would make index contents, and everything
# derived from them, irreproducible between runs. It is checked against the
# raw lowercased token, before stemming.
STOPWORDS = frozenset("""
    a about above after again against all am an and any are as at be because
    been before being below between both but by can cannot could did do does
    doing down during each few for from further had has have having he her
    here hers herself him himself his how i if in into is it its itself just
    me more most my myself no nor not now of off on once only or other ought
    our ours ourselves out over own same she should so some such than that
    the their theirs them themselves then there these they this those through
    to too under until up upon very was we were what when where which while
    who whom why will with would you your yours yourself yourselves
""".split())

# Suffix rules, tried in order; the first that fits is applied and the scan
# restarts. "ies" is a rewrite, the rest are plain strips. The length guards
# keep short words like "king", "red", or "gas" intact.
_MIN_ING_STEM = 4
_MIN_ED_STEM = 3
_MIN_S_STEM = 3


def stem_token(token: str) -> str:
    """Reduce one lowercase token to its suffix-stripped stem."""
    word = token
    while True:
        if word.endswith("ations"):
            word = word[:-6]
        elif word.endswith("ation"):
            word = word[:-5]
        elif word.endswith("izes") or word.endswith("ized"):
            word = word[:-4]
        elif word.endswith("ize"):
            word = word[:-3]
        elif word.endswith("ies"):
            word = word[:-3] + "y"
        elif word.endswith("ing") and len(word) - 3 >= _MIN_ING_STEM:
            word = word[:-3]
        elif word.endswith("ed") and len(word) - 2 >= _MIN_ED_STEM:
            word = word[:-2]
        elif word.endswith("s") and len(word) - 1 >= _MIN_S_STEM:
            word = word[:-1]
        else:
            return word


def tokenize(text: str) -> list[str]:
    """Split text into lowercase tokens on non-alphanumeric boundaries."""
    return _TOKEN_RE.findall(text.lower())


def normalize_and_stem(term: str) -> str:
    """Map a raw keyword, topic, or method string to its canonical form.

    Multi-word terms are normalized token by token and rejoined with single
    spaces. Raises :class:`InputError` for input that is empty, whitespace,
    or reduces to nothing (e.g. pure punctuation).
    """
    if not term or not term.strip():
        raise InputError("cannot normalize an empty term")
    stems = [stem_token(tok) for tok in tokenize(term)]
    stems = [s for s in stems if s]
    if not stems:
        raise InputError(f"term normalizes to nothing: {term!r}")
    return " ".join(stems)
