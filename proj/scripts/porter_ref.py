"""Reference Porter stemmer (original 1980 rule set), used to cross-check
the C++ implementation during development. Kept deliberately independent
in structure: letter-class strings + rule tables."""


def classes(word):
    """Return 'c'/'v' classification per letter."""
    out = []
    for i, ch in enumerate(word):
        if ch in "aeiou":
            out.append("v")
        elif ch == "y":
            out.append("c" if i == 0 else ("v" if out[i - 1] == "c" else "c"))
        else:
            out.append("c")
    return "".join(out)


def measure(stem):
    cls = classes(stem)
    # collapse runs, count 'vc' transitions
    collapsed = []
    for c in cls:
        if not collapsed or collapsed[-1] != c:
            collapsed.append(c)
    return "".join(collapsed).count("vc")


def has_vowel(stem):
    return "v" in classes(stem)


def ends_double_c(stem):
    return len(stem) >= 2 and stem[-1] == stem[-2] and classes(stem)[-1] == "c"


def ends_cvc(stem):
    if len(stem) < 3:
        return False
    cls = classes(stem)
    return cls[-3:] == "cvc" and stem[-1] not in "wxy"


def step1a(w):
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def step1b(w):
    if w.endswith("eed"):
        return w[:-1] if measure(w[:-3]) > 0 else w
    stem = None
    if w.endswith("ed") and has_vowel(w[:-2]):
        stem = w[:-2]
    elif w.endswith("ing") and has_vowel(w[:-3]):
        stem = w[:-3]
    if stem is None:
        return w
    if stem.endswith(("at", "bl", "iz")):
        return stem + "e"
    if ends_double_c(stem) and stem[-1] not in "lsz":
        return stem[:-1]
    if measure(stem) == 1 and ends_cvc(stem):
        return stem + "e"
    return stem


def step1c(w):
    return w[:-1] + "i" if w.endswith("y") and has_vowel(w[:-1]) else w


RULES2 = [
    ("ational", "ate"), ("ization", "ize"), ("iveness", "ive"),
    ("fulness", "ful"), ("ousness", "ous"), ("tional", "tion"),
    ("biliti", "ble"), ("entli", "ent"), ("ousli", "ous"), ("ation", "ate"),
    ("alism", "al"), ("aliti", "al"), ("iviti", "ive"), ("enci", "ence"),
    ("anci", "ance"), ("izer", "ize"), ("abli", "able"), ("alli", "al"),
    ("ator", "ate"), ("eli", "e"),
]

RULES3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

RULES4 = [
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ion",
    "ism", "ate", "iti", "ous", "ive", "ize", "al", "er", "ic", "ou",
]


def apply_table(w, rules, min_m):
    for suf, repl in sorted(rules, key=lambda r: -len(r[0])):
        if w.endswith(suf):
            stem = w[: -len(suf)]
            if measure(stem) > min_m:
                return stem + repl
            return w
    return w


def step2(w):
    return apply_table(w, RULES2, 0)


def step3(w):
    return apply_table(w, RULES3, 0)


def step4(w):
    for suf in sorted(RULES4, key=lambda s: -len(s)):
        if w.endswith(suf):
            stem = w[: -len(suf)]
            if suf == "ion":
                if stem.endswith(("s", "t")) and measure(stem) > 1:
                    return stem
                return w
            if measure(stem) > 1:
                return stem
            return w
    return w


def step5a(w):
    if not w.endswith("e"):
        return w
    stem = w[:-1]
    m = measure(stem)
    if m > 1 or (m == 1 and not ends_cvc(stem)):
        return stem
    return w


def step5b(w):
    if w.endswith("ll") and measure(w) > 1:
        return w[:-1]
    return w


def stem(word):
    w = word.lower()
    if len(w) < 3:
        return w
    for step in (step1a, step1b, step1c, step2, step3, step4, step5a, step5b):
        w = step(w)
    return w


if __name__ == "__main__":
    import sys
    for line in sys.stdin:
        w = line.strip()
        if w:
            print(f"{w}\t{stem(w)}")
