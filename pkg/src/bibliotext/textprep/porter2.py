"""Snowball English (Porter2) stemmer.

Suffix matching follows the published algorithm's semantics exactly: within
each step the longest listed suffix present on the word is selected first,
and only then are the region (R1/R2) and context conditions checked. A
failed condition ends the step without trying shorter suffixes.

The y/Y marking trick from the reference algorithm distinguishes consonant
y (marked upper-case during processing) from vocalic y.
"""
from __future__ import annotations

_VOWELS = frozenset("aeiouy")
_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_LI_ENDING = frozenset("cdeghkmnrt")
_R1_PREFIXES = ("gener", "commun", "arsen")

_EXCEPTIONS = {
    "skis": "ski", "skies": "sky", "dying": "die", "lying": "lie",
    "tying": "tie", "idly": "idl", "gently": "gentl", "ugly": "ugli",
    "early": "earli", "only": "onli", "singly": "singl",
    "sky": "sky", "news": "news", "howe": "howe",
    "atlas": "atlas", "cosmos": "cosmos", "bias": "bias", "andes": "andes",
}

_STOP_AFTER_1A = frozenset(
    ["inning", "outing", "canning", "herring", "earring",
     "proceed", "exceed", "succeed"]
)

_STEP2_SUFFIXES = (
    ("ational", "ate"), ("fulness", "ful"), ("iveness", "ive"),
    ("ization", "ize"), ("ousness", "ous"), ("biliti", "ble"),
    ("lessli", "less"), ("tional", "tion"), ("alism", "al"),
    ("aliti", "al"), ("ation", "ate"), ("entli", "ent"),
    ("fulli", "ful"), ("iviti", "ive"), ("ousli", "ous"),
    ("abli", "able"), ("alli", "al"), ("anci", "ance"),
    ("ator", "ate"), ("enci", "ence"), ("izer", "ize"),
    ("bli", "ble"), ("ogi", "og"), ("li", ""),
)

_STEP3_SUFFIXES = (
    ("ational", "ate"), ("tional", "tion"), ("alize", "al"),
    ("icate", "ic"), ("iciti", "ic"), ("ative", ""),
    ("ical", "ic"), ("ness", ""), ("ful", ""),
)

_STEP4_SUFFIXES = (
    "ement", "ance", "ence", "able", "ible", "ment",
    "ant", "ate", "ent", "ion", "ism", "iti", "ive", "ize", "ous",
    "al", "er", "ic",
)


def _is_vowel(ch: str) -> bool:
    return ch in _VOWELS


def _mark_ys(word: str) -> str:
    chars = list(word)
    for i, ch in enumerate(chars):
        if ch == "y" and (i == 0 or chars[i - 1] in _VOWELS):
            chars[i] = "Y"
    return "".join(chars)


def _region_after_vc(word: str, start: int) -> int:
    """Position after the first non-vowel that follows a vowel, from ``start``."""
    i = start
    n = len(word)
    while i < n and not _is_vowel(word[i]):
        i += 1
    while i < n and _is_vowel(word[i]):
        i += 1
    return i + 1 if i < n else n


def _mark_regions(word: str) -> tuple[int, int]:
    r1 = -1
    for prefix in _R1_PREFIXES:
        if word.startswith(prefix):
            r1 = len(prefix)
            break
    if r1 < 0:
        r1 = _region_after_vc(word, 0)
    r2 = _region_after_vc(word, r1)
    return r1, r2


def _ends_short_syllable(word: str) -> bool:
    if len(word) >= 3 and not _is_vowel(word[-3]) and _is_vowel(word[-2]) \
            and word[-1] not in _VOWELS and word[-1] not in "wxY":
        return True
    if len(word) == 2 and _is_vowel(word[0]) and not _is_vowel(word[1]):
        return True
    return False


def _step_0(word: str) -> str:
    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            return word[: -len(suffix)]
    return word


def _step_1a(word: str) -> str:
    if word.endswith("sses"):
        return word[:-4] + "ss"
    if word.endswith("ied") or word.endswith("ies"):
        return word[:-3] + ("i" if len(word) > 4 else "ie")
    if word.endswith("us") or word.endswith("ss"):
        return word
    if word.endswith("s"):
        # delete only if a vowel occurs before the char preceding the s
        if any(_is_vowel(ch) for ch in word[:-2]):
            return word[:-1]
    return word


def _step_1b(word: str, r1: int) -> str:
    if word.endswith("eedly"):
        return word[:-3] if len(word) - 5 >= r1 else word
    if word.endswith("eed"):
        return word[:-1] if len(word) - 3 >= r1 else word
    for suffix in ("ingly", "edly", "ing", "ed"):
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if not any(_is_vowel(ch) for ch in stem):
                return word
            if stem.endswith(("at", "bl", "iz")):
                return stem + "e"
            if stem.endswith(_DOUBLES):
                return stem[:-1]
            if len(stem) == r1 and _ends_short_syllable(stem):
                return stem + "e"
            return stem
    return word


def _step_1c(word: str) -> str:
    if len(word) > 2 and word[-1] in "yY" and not _is_vowel(word[-2]):
        return word[:-1] + "i"
    return word


def _step_2(word: str, r1: int) -> str:
    for suffix, repl in _STEP2_SUFFIXES:
        if word.endswith(suffix):
            if len(word) - len(suffix) < r1:
                return word
            if suffix == "ogi":
                return word[:-3] + "og" if word[:-3].endswith("l") else word
            if suffix == "li":
                return word[:-2] if word[:-2] and word[-3] in _LI_ENDING else word
            return word[: -len(suffix)] + repl
    return word


def _step_3(word: str, r1: int, r2: int) -> str:
    for suffix, repl in _STEP3_SUFFIXES:
        if word.endswith(suffix):
            if len(word) - len(suffix) < r1:
                return word
            if suffix == "ative":
                return word[:-5] if len(word) - 5 >= r2 else word
            return word[: -len(suffix)] + repl
    return word


def _step_4(word: str, r2: int) -> str:
    for suffix in _STEP4_SUFFIXES:
        if word.endswith(suffix):
            if len(word) - len(suffix) < r2:
                return word
            if suffix == "ion":
                return word[:-3] if word[:-3].endswith(("s", "t")) else word
            return word[: -len(suffix)]
    return word


def _step_5(word: str, r1: int, r2: int) -> str:
    if word.endswith("e"):
        if len(word) - 1 >= r2:
            return word[:-1]
        if len(word) - 1 >= r1 and not _ends_short_syllable(word[:-1]):
            return word[:-1]
        return word
    if word.endswith("l") and len(word) - 1 >= r2 and len(word) >= 2 and word[-2] == "l":
        return word[:-1]
    return word


def stem(word: str) -> str:
    """Stem one lowercase word."""
    if word in _EXCEPTIONS:
        return _EXCEPTIONS[word]
    if len(word) < 3:
        return word

    if word.startswith("'"):
        word = word[1:]
    word = _mark_ys(word)
    r1, r2 = _mark_regions(word)

    word = _step_0(word)
    word = _step_1a(word)
    if word not in _STOP_AFTER_1A:
        word = _step_1b(word, r1)
        word = _step_1c(word)
        word = _step_2(word, r1)
        word = _step_3(word, r1, r2)
        word = _step_4(word, r2)
        word = _step_5(word, r1, r2)
    return word.replace("Y", "y")
