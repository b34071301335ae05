#!/usr/bin/env python3
"""Print the reference values frozen into the C++ tests.

Each section is computed here independently of the library: sacreBLEU 2.0.0
for the metrics, and plain-Python reimplementations of the hash embedding,
FNV-1a and SplitMix64.

    pip install sacrebleu==2.0.0
    python3 tools/oracles.py tests/fixtures
"""

import os
import sys
import unicodedata

import sacrebleu
from sacrebleu.metrics import BLEU, CHRF
from sacrebleu.tokenizers.tokenizer_13a import Tokenizer13a

MASK = (1 << 64) - 1

TOKENIZER_CASES = [
    "Hello, world!",
    "It costs $5.00 (approx.) -- really?",
    "A&amp;B &lt;tag&gt; &quot;quoted&quot;",
    "2,5 million euros; 3.14 - 1,000",
    "l'économie, c'est-à-dire",
    "end.",
    "e.g. U.S.A. vs. U.K.",
    "tab\tand  spaces\n",
    "<skipped> text",
    "unicode — dash «quotes»",
]

EMBED_CASES = ["a", "Energy systems.", "  Mixed   CASE  text ", "investigação"]


DEGENERATE_CASES = [
    ("the cat", "the the the the"),
    ("sat the on mat cat the", "the cat sat on the mat"),
    ("the cat sat on the mat today", "the cat sat on the mat"),
    ("", "the cat sat on the mat"),
    ("Ação e reação!", "Ação, reação."),
]


def fnv1a64(data):
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & MASK
    return h


def hash_features(text, dim=256):
    s = " " + unicodedata.normalize("NFC", " ".join(text.split())).casefold() + " "
    v = [0] * dim
    for n in range(1, 5):
        for i in range(len(s) - n + 1):
            h = fnv1a64(s[i:i + n].encode("utf-8"))
            v[h % dim] += -1 if h >> 63 else 1
    return v


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n):
        limit = (-n) % n
        while True:
            r = self.next()
            if r >= limit:
                return r % n


def seeded_shuffle(items, rng):
    for i in range(len(items), 1, -1):
        j = rng.below(i)
        items[i - 1], items[j] = items[j], items[i - 1]


def main(fixtures):
    print("== sacrebleu", sacrebleu.__version__)
    mdir = os.path.join(fixtures, "metrics")
    hyps = open(os.path.join(mdir, "hyp.txt"), encoding="utf-8").read().splitlines()
    refs = open(os.path.join(mdir, "ref.txt"), encoding="utf-8").read().splitlines()
    bleu, chrf = BLEU(), CHRF(word_order=2)
    print("corpus BLEU   %.10f" % bleu.corpus_score(hyps, [refs]).score)
    print("corpus chrF++ %.10f" % chrf.corpus_score(hyps, [refs]).score)
    print("signatures", bleu.get_signature(), chrf.get_signature())
    for i, (h, r) in enumerate(zip(hyps, refs)):
        print("seg %d BLEU %.10f chrF++ %.10f" % (
            i, bleu.corpus_score([h], [[r]]).score, chrf.corpus_score([h], [[r]]).score))
    print("== degenerate pairs")
    for h, r in DEGENERATE_CASES:
        print(repr(h), repr(r), "BLEU %.10f chrF++ %.10f" % (
            bleu.corpus_score([h], [[r]]).score, chrf.corpus_score([h], [[r]]).score))
    tok = Tokenizer13a()
    print("== tokenizer 13a")
    for case in TOKENIZER_CASES:
        print(repr(case), "->", repr(tok(case.rstrip())))

    print("== fnv1a64")
    for s in ["", "a", "foobar"]:
        print(repr(s), hex(fnv1a64(s.encode())))

    print("== hash embedding (raw bucket counts, d=256)")
    for s in EMBED_CASES:
        v = hash_features(s)
        print(repr(s), {i: x for i, x in enumerate(v) if x})

    print("== splitmix64 seed 0 / 42")
    for seed in (0, 42):
        rng = SplitMix64(seed)
        print(seed, [hex(rng.next()) for _ in range(4)])
    rng = SplitMix64(7)
    items = list(range(10))
    seeded_shuffle(items, rng)
    print("shuffle(range(10), seed 7)", items)
    rng = SplitMix64(12345)
    print("below(10) x8 seed 12345", [rng.below(10) for _ in range(8)])

    # Benchmark selection on a toy pool: records 0..6 with these group sizes,
    # groups in record-key order, pairs in input order within a group.
    print("== benchmark selection (7 records, sample 4, seed 99)")
    sizes = [1, 2, 3, 1, 2, 1, 3]
    records = [["record %d pair %d" % (r, j) for j in range(n)] for r, n in enumerate(sizes)]
    rng = SplitMix64(99)
    for i in range(4):
        j = i + rng.below(len(records) - i)
        records[i], records[j] = records[j], records[i]
    chosen = [g[rng.below(len(g))] for g in records[:4]]
    seeded_shuffle(chosen, rng)
    print("dev", chosen[0::2], "test", chosen[1::2])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
