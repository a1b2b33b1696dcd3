#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "textspot/annotation.hpp"
#include "textspot/error.hpp"
#include "textspot/rng.hpp"
#include "textspot/script.hpp"
#include "textspot/script_stats.hpp"
#include "textspot/unicode.hpp"

using namespace textspot;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a textspot::Error");
    return ErrorCode::InvalidArgument;
}

WordAnnotation word(std::string text, bool dont_care = false) {
    WordAnnotation w;
    w.transcription = std::move(text);
    w.dont_care = dont_care;
    return w;
}

}  // namespace

TEST_CASE("classify_char puts representative codepoints in the right bucket") {
    CHECK(classify_char(U'A') == ScriptClass::Latin);
    CHECK(classify_char(U'z') == ScriptClass::Latin);
    CHECK(classify_char(0x00E9) == ScriptClass::Latin);   // e-acute
    CHECK(classify_char(0x0627) == ScriptClass::Arabic);  // alef
    CHECK(classify_char(0x0995) == ScriptClass::Bengali); // ka
    CHECK(classify_char(0x1100) == ScriptClass::Hangul);  // jamo
    CHECK(classify_char(0xAC00) == ScriptClass::Hangul);  // syllable
    CHECK(classify_char(0x4E2D) == ScriptClass::Cjk);
    CHECK(classify_char(0x3042) == ScriptClass::Hiragana);
    CHECK(classify_char(0x30AB) == ScriptClass::Katakana);
    CHECK(classify_char(U'7') == ScriptClass::Digit);
    CHECK(classify_char(0x0661) == ScriptClass::Digit);   // Arabic-Indic one
    CHECK(classify_char(0x09E7) == ScriptClass::Digit);   // Bengali one
    CHECK(classify_char(U'!') == ScriptClass::Symbol);
    CHECK(classify_char(U' ') == ScriptClass::Symbol);
    CHECK(classify_char(0x1F600) == ScriptClass::Symbol); // emoji
}

TEST_CASE("word_script takes the majority named script") {
    CHECK(word_script_utf8("abc") == ScriptClass::Latin);
    CHECK(word_script_utf8("ab1!") == ScriptClass::Latin);
    CHECK(word_script_utf8("\xE5\xB8\x82\xE5\xA0\xB4") == ScriptClass::Cjk);  // 市場
    // prolonged-sound marks are symbols, but the kana still dominate
    CHECK(word_script_utf8("\xE3\x82\xB3\xE3\x83\xBC\xE3\x83\x92\xE3\x83\xBC") ==
          ScriptClass::Katakana);  // コーヒー
}

TEST_CASE("words without named-script characters fall back to digit, then symbol") {
    CHECK(word_script_utf8("2024") == ScriptClass::Digit);
    CHECK(word_script_utf8("1!") == ScriptClass::Digit);
    CHECK(word_script_utf8("!!") == ScriptClass::Symbol);
}

TEST_CASE("word_script ties break toward the smaller enum value") {
    // one Latin + one Arabic char
    CHECK(word_script_utf8("a\xD8\xA7") == ScriptClass::Latin);
    // one Hangul + one CJK: Hangul enumerates first
    CHECK(word_script_utf8("\xEA\xB0\x80\xE4\xB8\xAD") == ScriptClass::Hangul);
}

TEST_CASE("word_script rejects the empty word") {
    CHECK(code_of([] { word_script_utf8(""); }) == ErrorCode::EmptyWord);
}

TEST_CASE("script token parsing accepts aliases and rejects junk") {
    CHECK(parse_script_token("Latin") == ScriptClass::Latin);
    CHECK(parse_script_token("Bangla") == ScriptClass::Bengali);
    CHECK(parse_script_token("Korean") == ScriptClass::Hangul);
    CHECK(parse_script_token("Chinese") == ScriptClass::Cjk);
    CHECK(parse_script_token("Japanese") == ScriptClass::Cjk);
    CHECK(parse_script_token("Symbols") == ScriptClass::Symbol);
    CHECK(parse_script_token("Digits") == ScriptClass::Digit);
    CHECK(!parse_script_token("Unknown").has_value());
    CHECK(!parse_script_token("Mixed").has_value());
    CHECK(!parse_script_token("None").has_value());
    CHECK(code_of([] { parse_script_token("Klingon"); }) == ErrorCode::UnknownScript);
}

TEST_CASE("script_name/parse round-trip for every class") {
    for (int i = 0; i < kScriptClassCount; ++i) {
        auto s = static_cast<ScriptClass>(i);
        auto back = parse_script_token(script_name(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
}

TEST_CASE("annotation line parses fields and keeps commas in the transcription") {
    auto w = parse_annotation_line("0,0,10,0,10,5,0,5,Latin,hello", 1);
    CHECK(w.quad[0] == Vec2{0, 0});
    CHECK(w.quad[1] == Vec2{10, 0});
    CHECK(w.quad[2] == Vec2{10, 5});
    CHECK(w.quad[3] == Vec2{0, 5});
    CHECK(w.script == ScriptClass::Latin);
    CHECK(w.transcription == "hello");
    CHECK(!w.dont_care);

    auto c = parse_annotation_line("0,0,1,0,1,1,0,1,Unknown,a,b,c", 1);
    CHECK(c.transcription == "a,b,c");
    CHECK(!c.script.has_value());

    auto d = parse_annotation_line("0,0,1,0,1,1,0,1,Unknown,###", 1);
    CHECK(d.dont_care);
}

TEST_CASE("annotation corners are normalized to clockwise on screen") {
    // same rectangle given counter-clockwise (y down)
    auto w = parse_annotation_line("0,0,0,5,10,5,10,0,Latin,x", 1);
    CHECK(signed_area(w.quad) > 0.0);
    CHECK(w.quad[0] == Vec2{0, 0});
    CHECK(w.quad[1] == Vec2{10, 0});
    CHECK(w.quad[2] == Vec2{10, 5});
    CHECK(w.quad[3] == Vec2{0, 5});
}

TEST_CASE("annotation parser rejects malformed lines") {
    CHECK(code_of([] { parse_annotation_line("0,0,1,0,1,1,0,1,Latin", 3); }) ==
          ErrorCode::MalformedLine);  // 8 commas only
    CHECK(code_of([] { parse_annotation_line("x,0,1,0,1,1,0,1,Latin,t", 3); }) ==
          ErrorCode::MalformedLine);
    CHECK(code_of([] { parse_annotation_line("0,0,1,0,1,1,0,1,Klingon,t", 3); }) ==
          ErrorCode::UnknownScript);
}

TEST_CASE("annotation file round-trip, including BOM and fractional coords") {
    auto dir = std::filesystem::temp_directory_path() / "textspot_annotation_test";
    std::filesystem::create_directories(dir);
    auto p = dir / "gt.txt";

    std::vector<WordAnnotation> words;
    auto w0 = parse_annotation_line("0.5,1.25,10,1.25,10,7,0.5,7,Arabic,\xD8\xB3\xD9\x88\xD9\x82", 1);
    auto w1 = parse_annotation_line("20,20,30,20,30,25,20,25,Unknown,###", 2);
    words = {w0, w1};
    write_annotations(words, p);

    auto back = read_annotations(p);
    REQUIRE(back.size() == 2);
    CHECK(back[0].quad == w0.quad);
    CHECK(back[0].script == ScriptClass::Arabic);
    CHECK(back[0].transcription == w0.transcription);
    CHECK(back[1].dont_care);

    // BOM + CRLF + blank lines are tolerated
    {
        std::ofstream out(dir / "bom.txt", std::ios::binary);
        out << "\xEF\xBB\xBF" << format_annotation_line(w0) << "\r\n\r\n"
            << format_annotation_line(w1) << "\r\n";
    }
    auto bom = read_annotations(dir / "bom.txt");
    REQUIRE(bom.size() == 2);
    CHECK(bom[0].quad == w0.quad);
    std::filesystem::remove_all(dir);
}

TEST_CASE("image co-occurrence counts images, not words") {
    std::vector<std::vector<WordAnnotation>> corpus = {
        {word("ab"), word("12")},   // scripts {Latin, Digit}
        {word("\xE6\xBC\xA2\xE5\xAD\x97"), word("abc")},  // {Cjk, Latin}
    };
    auto m = image_cooccurrence(corpus);
    auto L = static_cast<int>(ScriptClass::Latin);
    auto D = static_cast<int>(ScriptClass::Digit);
    auto C = static_cast<int>(ScriptClass::Cjk);
    CHECK(m[L][L] == 2);
    CHECK(m[D][D] == 1);
    CHECK(m[C][C] == 1);
    CHECK(m[L][D] == 1);
    CHECK(m[D][L] == 1);
    CHECK(m[L][C] == 1);
    CHECK(m[C][L] == 1);
    CHECK(m[D][C] == 0);
}

TEST_CASE("word co-occurrence groups rows by dominant script and counts characters") {
    std::vector<std::vector<WordAnnotation>> corpus = {
        {word("ab"), word("12"), word("\xE6\xBC\xA2\xE5\xAD\x97")},
        {word("abc")},
    };
    auto m = word_cooccurrence(corpus);
    auto lat = static_cast<int>(WordGroup::Latin);
    auto ckh = static_cast<int>(WordGroup::Ckh);
    CHECK(m[lat][static_cast<int>(ScriptClass::Latin)] == 5);
    CHECK(m[ckh][static_cast<int>(ScriptClass::Cjk)] == 2);
    // digit-dominant word contributes to no row
    long long total = 0;
    for (int g = 0; g < kWordGroupCount; ++g)
        for (int s = 0; s < kScriptClassCount; ++s) total += m[g][s];
    CHECK(total == 7);
}

TEST_CASE("don't-care regions are excluded unless asked for") {
    std::vector<std::vector<WordAnnotation>> corpus = {{word("ab"), word("###", true)}};
    auto skip = image_cooccurrence(corpus, false);
    auto keep = image_cooccurrence(corpus, true);
    auto L = static_cast<int>(ScriptClass::Latin);
    auto S = static_cast<int>(ScriptClass::Symbol);
    CHECK(skip[S][S] == 0);
    CHECK(skip[L][L] == 1);
    CHECK(keep[S][S] == 1);  // "###" is three symbol chars
}

TEST_CASE("script confusion skips pairs with an empty side") {
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"abc", "abc"},
        {"abc", "ab1"},
        {"\xE6\xBC\xA2\xE5\xAD\x97", "\xE6\xBC\xA2\xE5\xAD\x97"},
        {"", "x"},
        {"x", ""},
    };
    auto m = script_confusion(pairs);
    auto L = static_cast<int>(ScriptClass::Latin);
    auto C = static_cast<int>(ScriptClass::Cjk);
    CHECK(m[L][L] == 2);
    CHECK(m[C][C] == 1);
    long long total = 0;
    for (auto& row : m)
        for (auto v : row) total += v;
    CHECK(total == 3);
}

TEST_CASE("co-occurrence invariants hold on random corpora") {
    const char* pool[] = {"ab", "xyz", "12", "!!", "\xE6\xBC\xA2\xE5\xAD\x97",
                          "\xEC\x8B\x9C\xEC\x9E\xA5", "\xD8\xB3\xD9\x88\xD9\x82",
                          "\xE0\xA6\x98\xE0\xA6\xB0", "a1", "\xE3\x81\x8B"};
    SplitMix64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<WordAnnotation>> corpus(1 + rng.uniform_int(6));
        for (auto& image : corpus) {
            int n = 1 + rng.uniform_int(5);
            for (int i = 0; i < n; ++i) image.push_back(word(pool[rng.uniform_int(10)]));
        }
        auto m = image_cooccurrence(corpus);
        auto wm = word_cooccurrence(corpus);

        for (int a = 0; a < kScriptClassCount; ++a) {
            for (int b = 0; b < kScriptClassCount; ++b) {
                CHECK(m[a][b] == m[b][a]);
                CHECK(m[a][b] <= m[a][a]);  // both-present is at most one-present
            }
            CHECK(m[a][a] <= static_cast<long long>(corpus.size()));
        }

        // row sums equal the total character count of words in that group
        std::array<long long, kWordGroupCount> expected{};
        for (const auto& image : corpus) {
            for (const auto& w : image) {
                auto cps = utf8_decode(w.transcription);
                auto s = word_script(cps);
                int g = -1;
                if (s == ScriptClass::Latin) g = 0;
                else if (s == ScriptClass::Arabic) g = 1;
                else if (s == ScriptClass::Bengali) g = 2;
                else if (s == ScriptClass::Hangul) g = 3;
                else if (is_ckh(s)) g = 4;
                if (g >= 0) expected[g] += static_cast<long long>(cps.size());
            }
        }
        for (int g = 0; g < kWordGroupCount; ++g) {
            long long sum = 0;
            for (int s = 0; s < kScriptClassCount; ++s) sum += wm[g][s];
            CHECK(sum == expected[g]);
        }
    }
}
