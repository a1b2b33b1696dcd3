#include <string>

#include "doctest.h"
#include "textspot/unicode.hpp"

using namespace textspot;

namespace {
std::u32string cps(std::initializer_list<char32_t> list) { return std::u32string(list); }
}  // namespace

TEST_CASE("utf8 round-trips across plane boundaries") {
    std::u32string s = cps({U'A', 0x00E9, 0x0928, 0x4E2D, 0xAC00, 0x1F600});
    std::string enc = utf8_encode(s);
    CHECK(enc.size() == 1 + 2 + 3 + 3 + 3 + 4);
    CHECK(utf8_decode(enc) == s);
}

TEST_CASE("malformed utf8 becomes U+FFFD without throwing") {
    // lone continuation byte
    CHECK(utf8_decode(std::string("\x80", 1)) == cps({0xFFFD}));
    // truncated two-byte lead
    CHECK(utf8_decode(std::string("\xC3", 1)) == cps({0xFFFD}));
    // overlong encoding of '/' (0xC0 0xAF)
    CHECK(utf8_decode(std::string("\xC0\xAF", 2)) == cps({0xFFFD, 0xFFFD}));
    // CESU-style surrogate (0xED 0xA0 0x80 = U+D800)
    CHECK(utf8_decode(std::string("\xED\xA0\x80", 3)) == cps({0xFFFD, 0xFFFD, 0xFFFD}));
    // out of range (0xF4 0x90 0x80 0x80 = U+110000)
    auto bad = utf8_decode(std::string("\xF4\x90\x80\x80", 4));
    CHECK(!bad.empty());
    for (char32_t c : bad) CHECK(c == 0xFFFD);
    // valid text resumes after the bad byte
    CHECK(utf8_decode(std::string("a\x80z", 3)) == cps({U'a', 0xFFFD, U'z'}));
}

TEST_CASE("nfc composes combining marks") {
    // e + combining acute -> e-acute
    CHECK(nfc(cps({U'e', 0x0301})) == cps({0x00E9}));
    // already composed text is untouched
    CHECK(nfc(cps({0x00E9})) == cps({0x00E9}));
    // canonical reordering: marks of different combining class sort before composing
    CHECK(nfc(cps({U'a', 0x0301, 0x0316})) == nfc(cps({U'a', 0x0316, 0x0301})));
    CHECK(nfc(cps({U'a', 0x0316, 0x0301})) == cps({0x00E1, 0x0316}));
}

TEST_CASE("nfc composes across lower-class marks but blocks same-class ones") {
    // cedilla (ccc 202) does not block the acute (ccc 230)
    CHECK(nfc(cps({U'a', 0x0327, 0x0301})) == cps({0x00E1, 0x0327}));
    // a second acute is blocked by the first
    CHECK(nfc(cps({U'a', 0x0301, 0x0301})) == cps({0x00E1, 0x0301}));
}

TEST_CASE("nfc resolves singleton decompositions") {
    // Angstrom sign -> A with ring
    CHECK(nfc(cps({0x212B})) == cps({0x00C5}));
    // Ohm sign -> Greek capital omega
    CHECK(nfc(cps({0x2126})) == cps({0x03A9}));
}

TEST_CASE("nfc handles hangul jamo algorithmically") {
    // HAN = choseong hieuh + jungseong a + jongseong nieun
    CHECK(nfc(cps({0x1112, 0x1161, 0x11AB})) == cps({0xD55C}));
    // LV without trailing consonant
    CHECK(nfc(cps({0x1100, 0x1161})) == cps({0xAC00}));
    // LV syllable + trailing jamo fuses into LVT
    CHECK(nfc(cps({0xAC00, 0x11A8})) == cps({0xAC01}));
    // precomposed syllables pass through
    CHECK(nfc(cps({0xD55C, 0xAD6D})) == cps({0xD55C, 0xAD6D}));
}

TEST_CASE("nfc leaves plain text alone") {
    std::u32string s = cps({U'm', U'a', U'r', U'k', U'e', U't', U' ', 0x4E2D, 0x56FD});
    CHECK(nfc(s) == s);
    CHECK(nfc(std::u32string()) == std::u32string());
}

TEST_CASE("nfc_utf8 glues decode and normalize") {
    // "cafe" with decomposed accent
    std::string decomposed = "cafe\xCC\x81";
    auto composed = nfc_utf8(decomposed);
    CHECK(utf8_encode(composed) == "caf\xC3\xA9");
}

TEST_CASE("composition exclusions stay decomposed") {
    // U+0958 DEVANAGARI LETTER QA decomposes to U+0915 U+093C and is excluded
    // from recomposition.
    auto out = nfc(cps({0x0958}));
    CHECK(out == cps({0x0915, 0x093C}));
    // feeding the decomposed pair gives the same (stable) answer
    CHECK(nfc(cps({0x0915, 0x093C})) == cps({0x0915, 0x093C}));
}
