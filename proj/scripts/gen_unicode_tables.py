#!/usr/bin/env python3
"""Regenerates src/unicode_tables.cpp from the Python unicodedata module.

The table file is committed; rerun only to move to a new Unicode version.
Classification rule (in priority order):
  1. category Nd            -> DIGIT
  2. first character-name token equal to LATIN / ARABIC / BENGALI / HANGUL /
     CJK / HIRAGANA / KATAKANA (scanning tokens left to right) -> that script
  3. anything else          -> SYMBOL
Also emits canonical decomposition, combining class and primary composition
tables used by the NFC normalizer. Hangul syllables (U+AC00..U+D7A3) are
excluded from the tables; the normalizer handles them algorithmically.
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE, HANGUL_S_COUNT = 0xAC00, 11172

CLASSES = ["LATIN", "ARABIC", "BENGALI", "HANGUL", "CJK", "HIRAGANA",
           "KATAKANA", "DIGIT", "SYMBOL"]
KEYWORDS = {name: i for i, name in enumerate(CLASSES[:7])}
DIGIT, SYMBOL = 7, 8


def classify(cp):
    ch = chr(cp)
    if unicodedata.category(ch) == "Nd":
        return DIGIT
    name = unicodedata.name(ch, "")
    for token in name.split(" "):
        if token in KEYWORDS:
            return KEYWORDS[token]
    return SYMBOL


def script_ranges():
    ranges = []
    run_start, run_cls = None, SYMBOL
    for cp in range(MAX_CP + 1):
        cls = classify(cp) if cp < MAX_CP else SYMBOL
        if cls != run_cls:
            if run_cls != SYMBOL:
                ranges.append((run_start, cp - 1, run_cls))
            run_start, run_cls = cp, cls
    return ranges


def decomposition_entries():
    pool, entries = [], []
    for cp in range(MAX_CP):
        if HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT:
            continue
        ch = chr(cp)
        nfd = unicodedata.normalize("NFD", ch)
        if nfd != ch:
            cps = [ord(c) for c in nfd]
            entries.append((cp, len(pool), len(cps)))
            pool.extend(cps)
    return entries, pool


def combining_entries():
    return [(cp, unicodedata.combining(chr(cp)))
            for cp in range(MAX_CP) if unicodedata.combining(chr(cp)) != 0]


def composition_entries():
    pairs = []
    for cp in range(MAX_CP):
        if HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT:
            continue
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        parts = d.split()
        if len(parts) != 2:
            continue
        first, second = int(parts[0], 16), int(parts[1], 16)
        # Skip excluded compositions: NFC would not recombine them.
        if unicodedata.normalize("NFC", chr(first) + chr(second)) == chr(cp):
            pairs.append(((first << 21) | second, cp))
    pairs.sort()
    return pairs


def main():
    out = sys.stdout
    ranges = script_ranges()
    dec_entries, dec_pool = decomposition_entries()
    ccc = combining_entries()
    comp = composition_entries()

    out.write("// Generated by scripts/gen_unicode_tables.py from Python "
              "unicodedata %s.\n" % unicodedata.unidata_version)
    out.write("// Do not edit by hand; rerun the script to regenerate.\n\n")
    out.write('#include "unicode_tables.hpp"\n\n')
    out.write("namespace textspot::detail {\n\n")

    out.write("const ScriptRange kScriptRanges[] = {\n")
    for first, last, cls in ranges:
        out.write("    {0x%X, 0x%X, %d},\n" % (first, last, cls))
    out.write("};\n")
    out.write("const std::size_t kScriptRangeCount = %d;\n\n" % len(ranges))

    out.write("const DecompEntry kDecomp[] = {\n")
    for cp, off, n in dec_entries:
        out.write("    {0x%X, %d, %d},\n" % (cp, off, n))
    out.write("};\n")
    out.write("const std::size_t kDecompCount = %d;\n\n" % len(dec_entries))

    out.write("const char32_t kDecompPool[] = {\n")
    for i in range(0, len(dec_pool), 12):
        out.write("    " + ", ".join("0x%X" % c for c in dec_pool[i:i + 12]) + ",\n")
    out.write("};\n\n")

    out.write("const CombiningEntry kCombining[] = {\n")
    for cp, k in ccc:
        out.write("    {0x%X, %d},\n" % (cp, k))
    out.write("};\n")
    out.write("const std::size_t kCombiningCount = %d;\n\n" % len(ccc))

    out.write("const CompositionEntry kComposition[] = {\n")
    for key, cp in comp:
        out.write("    {0x%XULL, 0x%X},\n" % (key, cp))
    out.write("};\n")
    out.write("const std::size_t kCompositionCount = %d;\n\n" % len(comp))

    out.write("}  // namespace textspot::detail\n")


if __name__ == "__main__":
    main()
