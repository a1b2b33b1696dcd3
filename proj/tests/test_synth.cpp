#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "textspot/ctc.hpp"
#include "textspot/error.hpp"
#include "textspot/eval.hpp"
#include "textspot/geometry.hpp"
#include "textspot/pipeline.hpp"
#include "textspot/synth.hpp"
#include "textspot/tensor_io.hpp"
#include "textspot/unicode.hpp"

using namespace textspot;

namespace {
constexpr double kPi = 3.14159265358979323846;

SceneSpec small_spec(std::uint64_t seed) {
    SceneSpec spec;
    spec.width = 192;
    spec.height = 192;
    spec.word_count = 3;
    spec.seed = seed;
    return spec;
}
}  // namespace

TEST_CASE("scene generation is deterministic in the seed") {
    Scene a = generate_scene(small_spec(7));
    Scene b = generate_scene(small_spec(7));
    CHECK(a.image.data == b.image.data);
    CHECK(a.geo.channels.data == b.geo.channels.data);
    REQUIRE(a.words.size() == b.words.size());
    for (std::size_t i = 0; i < a.words.size(); ++i) {
        CHECK(a.words[i].transcription == b.words[i].transcription);
        CHECK(a.words[i].quad == b.words[i].quad);
    }

    Scene c = generate_scene(small_spec(8));
    CHECK(a.image.data != c.image.data);
}

TEST_CASE("scene words stay inside the canvas and never overlap") {
    Scene s = generate_scene(small_spec(21));
    REQUIRE(!s.words.empty());
    CHECK(!s.placement_failed);
    CHECK(static_cast<int>(s.words.size()) == s.requested_words);
    for (const auto& w : s.words) {
        for (const auto& p : w.quad) {
            CHECK(p.x >= 0.0);
            CHECK(p.y >= 0.0);
            CHECK(p.x <= 192.0);
            CHECK(p.y <= 192.0);
        }
    }
    for (std::size_t i = 0; i < s.words.size(); ++i)
        for (std::size_t j = i + 1; j < s.words.size(); ++j)
            CHECK(quad_iou(s.words[i].quad, s.words[j].quad) == 0.0);
}

TEST_CASE("scene geometry map equals re-encoding the placed words") {
    Scene s = generate_scene(small_spec(33));
    GeometryMap redo = GeometryMap::zeros(s.geo.width, s.geo.height);
    for (const auto& w : s.words) {
        int n = encode_box(redo, w.quad, kDefaultScale, kDefaultShrink);
        CHECK(n > 0);
    }
    CHECK(redo.channels.data == s.geo.channels.data);
}

TEST_CASE("scene words carry per-character cells and a known script") {
    Scene s = generate_scene(small_spec(5));
    for (const auto& w : s.words) {
        auto cps = utf8_decode(w.transcription);
        CHECK(w.char_quads.size() == cps.size());
        REQUIRE(w.script.has_value());
        CHECK(*w.script == word_script(cps));
    }
}

TEST_CASE("image values are glyph intensities on a zero background") {
    Scene s = generate_scene(small_spec(13));
    double mx = *std::max_element(s.image.data.begin(), s.image.data.end());
    double mn = *std::min_element(s.image.data.begin(), s.image.data.end());
    CHECK(mx > 0.3);
    CHECK(mx < 1.0);
    CHECK(mn == 0.0);
    // rendering writes only inside word quads
    std::size_t lit = 0;
    for (double v : s.image.data) lit += v > 0.0;
    double covered = 0.0;
    for (const auto& w : s.words) covered += quad_area(w.quad);
    CHECK(static_cast<double>(lit) < 1.2 * covered + 64.0);
}

TEST_CASE("vertical words come out at exactly a quarter turn") {
    SceneSpec spec = small_spec(3);
    spec.vertical_probability = 1.0;
    Scene s = generate_scene(spec);
    REQUIRE(!s.words.empty());
    for (const auto& w : s.words) CHECK(box_angle(w.quad) == doctest::Approx(kPi / 2));
}

TEST_CASE("impossible requests set placement_failed instead of looping forever") {
    SceneSpec spec;
    spec.width = 64;
    spec.height = 64;
    spec.word_count = 60;
    spec.seed = 2;
    Scene s = generate_scene(spec);
    CHECK(s.placement_failed);
    CHECK(static_cast<int>(s.words.size()) < 60);
}

TEST_CASE("render_word rotated copies carry identical cell intensities") {
    Quad h = make_box_quad({20, 20}, 12, 6, 0.0);
    Quad v = make_box_quad({20, 20}, 12, 6, kPi / 2);
    Tensor img_h = Tensor::zeros({1, 40, 40});
    Tensor img_v = Tensor::zeros({1, 40, 40});
    std::vector<Quad> cells_h, cells_v;
    render_word(img_h, h, U"ab", &cells_h);
    render_word(img_v, v, U"ab", &cells_v);
    REQUIRE(cells_h.size() == 2);
    REQUIRE(cells_v.size() == 2);

    std::set<double> vals_h, vals_v;
    for (double x : img_h.data) if (x > 0) vals_h.insert(x);
    for (double x : img_v.data) if (x > 0) vals_v.insert(x);
    CHECK(vals_h == vals_v);
    CHECK(vals_h.size() == 2);  // one intensity per distinct character
}

TEST_CASE("default alphabet covers every built-in word") {
    Alphabet a = default_alphabet();
    for (int s = 0; s < kScriptClassCount; ++s) {
        for (const auto& w : default_wordlist(static_cast<ScriptClass>(s))) {
            auto label = encode_label(w, a);
            CHECK(label.size() == utf8_decode(w).size());
        }
    }
    // symbols are sorted by codepoint and unique
    const auto& syms = a.symbols();
    CHECK(std::is_sorted(syms.begin(), syms.end()));
    CHECK(std::adjacent_find(syms.begin(), syms.end()) == syms.end());
}

TEST_CASE("forced logits drive the greedy decoder to the requested text") {
    Alphabet a = default_alphabet();
    for (const char* text : {"market", "2024", "\xEC\xBB\xA4\xED\x94\xBC", "!!"}) {
        LogitMatrix m = forced_logits(text, a);
        CHECK(greedy_decode(m, a) == text);
    }
}

TEST_CASE("forced logits insert separator blanks only between repeats") {
    Alphabet a = Alphabet::from_symbols(U"ab");
    LogitMatrix plain = forced_logits("ab", a, 3);
    CHECK(plain.frames == 6);
    LogitMatrix repeated = forced_logits("aa", a, 3);
    CHECK(repeated.frames == 7);
    CHECK(greedy_decode(repeated, a) == "aa");

    LogitMatrix empty = forced_logits("", a, 3);
    CHECK(empty.frames == 3);
    CHECK(greedy_decode(empty, a).empty());
}

TEST_CASE("forced logits reject a frame rate that cannot survive collapsing") {
    Alphabet a = Alphabet::from_symbols(U"ab");
    CHECK_THROWS_AS(forced_logits("ab", a, 1), Error);
}

TEST_CASE("run_spot with the oracle recognizer reproduces the scene text") {
    Scene s = generate_scene(small_spec(42));
    Alphabet a = default_alphabet();
    auto preds = run_spot(s.geo, oracle_logits_provider(s.words, a), a);
    REQUIRE(preds.size() == s.words.size());

    MatchConfig cfg;
    auto m = match_detections(s.words, preds, cfg);
    CHECK(m.counts.matched == static_cast<long long>(s.words.size()));
    auto r = make_report(m.counts);
    CHECK(r.f1 == 1.0);
    for (const auto& p : preds) CHECK(p.script.has_value());
}

TEST_CASE("run_spot without recognition yields empty transcripts, not failures") {
    Scene s = generate_scene(small_spec(11));
    Alphabet a = default_alphabet();
    LogitsProvider blanks = [&](int, const OrientedBox&) {
        return LogitMatrix::zeros(1, a.size());
    };
    auto preds = run_spot(s.geo, blanks, a);
    REQUIRE(preds.size() == s.words.size());
    for (const auto& p : preds) {
        CHECK(p.transcription.empty());
        CHECK(!p.script.has_value());
    }
}

TEST_CASE("directory provider loads logits by detection index") {
    Scene s = generate_scene(small_spec(19));
    Alphabet a = default_alphabet();

    // first pass with the oracle to learn the detection order
    auto oracle = oracle_logits_provider(s.words, a);
    auto expected = run_spot(s.geo, oracle, a);

    auto dir = std::filesystem::temp_directory_path() / "textspot_dirlogits_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto boxes = run_nms(threshold_and_decode(s.geo, kDefaultScoreThreshold));
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "roi_%04zu.e2et", i);
        write_tensor(oracle(static_cast<int>(i), boxes[i]).to_tensor(), dir / name);
    }

    auto preds = run_spot(s.geo, directory_logits_provider(dir), a);
    REQUIRE(preds.size() == expected.size());
    for (std::size_t i = 0; i < preds.size(); ++i)
        CHECK(preds[i].transcription == expected[i].transcription);

    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(run_spot(s.geo, directory_logits_provider(dir), a), Error);
}
