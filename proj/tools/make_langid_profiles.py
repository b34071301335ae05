#!/usr/bin/env python3
"""Regenerate data/langid/*.profile from the n-gram frequency tables shipped
with the `langdetect` package (Apache-2.0).

The tables count 1..3-grams of Wikipedia abstracts with ' ' marking word
boundaries. We lowercase, merge, keep pure-letter n-grams, write '_' for the
boundary, and keep the 300 most frequent (ties in code-point order).

    pip install langdetect
    python3 tools/make_langid_profiles.py data/langid
"""

import collections
import json
import os
import sys

import langdetect

LANGS = ("en", "es", "fr", "pt")
PROFILE_SIZE = 300


def convert(path):
    with open(path, encoding="utf-8") as f:
        freq = json.load(f)["freq"]
    merged = collections.Counter()
    for gram, count in freq.items():
        gram = gram.lower()
        if gram.strip() == "":
            continue
        if not all(c.isalpha() or c == " " for c in gram):
            continue
        merged[gram.replace(" ", "_")] += count
    ranked = sorted(merged.items(), key=lambda kv: (-kv[1], kv[0]))
    return [g for g, _ in ranked[:PROFILE_SIZE]]


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "data/langid"
    src = os.path.join(os.path.dirname(langdetect.__file__), "profiles")
    os.makedirs(out_dir, exist_ok=True)
    for lang in LANGS:
        grams = convert(os.path.join(src, lang))
        with open(os.path.join(out_dir, lang + ".profile"), "w", encoding="utf-8") as f:
            f.write(f"# {lang}: top {PROFILE_SIZE} character 1..3-grams, derived from langdetect profiles\n")
            for rank, g in enumerate(grams):
                f.write(f"{g}\t{rank}\n")


if __name__ == "__main__":
    main()
