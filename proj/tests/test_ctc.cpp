#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "textspot/alphabet.hpp"
#include "textspot/ctc.hpp"
#include "textspot/error.hpp"
#include "textspot/losses.hpp"
#include "textspot/rng.hpp"

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

LogitMatrix random_logits(int frames, int classes, SplitMix64& rng, double span = 2.0) {
    LogitMatrix m = LogitMatrix::zeros(frames, classes);
    for (auto& v : m.values) v = rng.uniform(-span, span);
    return m;
}

}  // namespace

TEST_CASE("min_frames counts separator blanks for repeats") {
    CHECK(min_frames({}) == 0);
    CHECK(min_frames({1}) == 1);
    CHECK(min_frames({1, 2}) == 2);
    CHECK(min_frames({1, 1}) == 3);
    CHECK(min_frames({1, 1, 1}) == 5);
    CHECK(min_frames({1, 2, 2, 1}) == 5);
}

TEST_CASE("uniform two-frame case has closed-form loss -ln(3/4)") {
    // all-zero logits: each frame gives P(blank) = P(a) = 1/2; label "a" is
    // produced by the paths a-, -a and aa, so P = 3/4.
    LogitMatrix m = LogitMatrix::zeros(2, 2);
    LabelSequence label = {1};
    auto r = ctc_loss(m, label);
    CHECK(r.loss == doctest::Approx(-std::log(0.75)).epsilon(1e-12));
    CHECK(ctc_loss_brute_force(m, label) == doctest::Approx(-std::log(0.75)).epsilon(1e-12));
}

TEST_CASE("single-frame single-label reduces to softmax cross-entropy") {
    LogitMatrix m = LogitMatrix::zeros(1, 3);
    m.at(0, 0) = 0.2;
    m.at(0, 1) = 1.3;
    m.at(0, 2) = -0.4;
    double z = std::exp(0.2) + std::exp(1.3) + std::exp(-0.4);
    auto r = ctc_loss(m, {1});
    CHECK(r.loss == doctest::Approx(-(1.3 - std::log(z))).epsilon(1e-12));
    // gradient is softmax minus one-hot
    CHECK(r.grad.at(0, 0) == doctest::Approx(std::exp(0.2) / z));
    CHECK(r.grad.at(0, 1) == doctest::Approx(std::exp(1.3) / z - 1.0));
    CHECK(r.grad.at(0, 2) == doctest::Approx(std::exp(-0.4) / z));
}

TEST_CASE("forward-backward equals brute-force path enumeration") {
    SplitMix64 rng(2024);
    int done = 0;
    while (done < 200) {
        int frames = 1 + rng.uniform_int(5);
        int classes = 2 + rng.uniform_int(3);
        int len = rng.uniform_int(4);
        LabelSequence label;
        for (int i = 0; i < len; ++i) label.push_back(1 + rng.uniform_int(classes - 1));
        if (min_frames(label) > frames) continue;
        LogitMatrix m = random_logits(frames, classes, rng);
        auto r = ctc_loss(m, label);
        double ref = ctc_loss_brute_force(m, label);
        CHECK(std::abs(r.loss - ref) <= 1e-10);
        ++done;
    }
}

TEST_CASE("empty label scores the all-blank path") {
    SplitMix64 rng(5);
    LogitMatrix m = random_logits(3, 3, rng);
    double expect = 0.0;
    for (int t = 0; t < 3; ++t) {
        double z = std::exp(m.at(t, 0)) + std::exp(m.at(t, 1)) + std::exp(m.at(t, 2));
        expect -= m.at(t, 0) - std::log(z);
    }
    auto r = ctc_loss(m, {});
    CHECK(r.loss == doctest::Approx(expect).epsilon(1e-12));
    CHECK(ctc_loss_brute_force(m, {}) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("ctc gradient agrees with central differences") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        int frames = 4 + rng.uniform_int(2);
        int classes = 3 + rng.uniform_int(2);
        LabelSequence label = {1, 2};
        LogitMatrix m = random_logits(frames, classes, rng);

        LossFn f = [&](const std::vector<double>& x) {
            LogitMatrix probe = m;
            probe.values = x;
            auto r = ctc_loss(probe, label);
            return std::make_pair(r.loss, r.grad.values);
        };
        CHECK(grad_check(f, m.values) < 1e-7);
    }
}

TEST_CASE("infeasible and oversized inputs are rejected") {
    LogitMatrix m = LogitMatrix::zeros(2, 3);
    CHECK(code_of([&] { ctc_loss(m, {1, 1}); }) == ErrorCode::InfeasibleLength);
    CHECK(code_of([&] { ctc_loss(m, {0}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { ctc_loss(m, {3}); }) == ErrorCode::InvalidArgument);

    // brute force refuses 10^7 paths but reports impossible labels as +inf
    LogitMatrix big = LogitMatrix::zeros(7, 10);
    CHECK(code_of([&] { ctc_loss_brute_force(big, {1}); }) == ErrorCode::TooLarge);
    LogitMatrix tiny = LogitMatrix::zeros(2, 3);
    CHECK(std::isinf(ctc_loss_brute_force(tiny, {1, 1, 1})));
}

TEST_CASE("greedy path collapses repeats then strips blanks") {
    LogitMatrix m = LogitMatrix::zeros(5, 3);
    auto set_best = [&](int t, int k) {
        for (int c = 0; c < 3; ++c) m.at(t, c) = c == k ? 5.0 : 0.0;
    };
    set_best(0, 1);
    set_best(1, 1);
    set_best(2, 0);
    set_best(3, 2);
    set_best(4, 2);
    CHECK(greedy_path(m) == LabelSequence{1, 2});

    // blank between repeats keeps both copies
    set_best(0, 2);
    set_best(1, 0);
    set_best(2, 2);
    set_best(3, 0);
    set_best(4, 0);
    CHECK(greedy_path(m) == LabelSequence{2, 2});

    // ties pick the lowest class index: all-zero logits decode to blanks only
    LogitMatrix z = LogitMatrix::zeros(4, 3);
    CHECK(greedy_path(z).empty());
}

TEST_CASE("greedy_decode and encode_label are inverse through an alphabet") {
    Alphabet a = Alphabet::from_symbols(U"abé");
    LabelSequence label = encode_label("ab\xC3\xA9", a);
    CHECK(label == LabelSequence{1, 2, 3});

    // decomposed input normalizes onto the precomposed symbol
    CHECK(encode_label("e\xCC\x81", a) == LabelSequence{3});

    CHECK(code_of([&] { encode_label("az", a); }) == ErrorCode::UnknownCharacter);

    LogitMatrix m = LogitMatrix::zeros(6, a.size());
    int frames_per = 2;
    for (std::size_t i = 0; i < label.size(); ++i)
        for (int f = 0; f < frames_per; ++f)
            for (int k = 0; k < a.size(); ++k)
                m.at(static_cast<int>(i) * frames_per + f, k) = k == label[i] ? 10.0 : -10.0;
    CHECK(greedy_decode(m, a) == "ab\xC3\xA9");
}

TEST_CASE("greedy_decode validates the class count against the alphabet") {
    Alphabet a = Alphabet::from_symbols(U"ab");
    LogitMatrix m = LogitMatrix::zeros(2, 5);
    CHECK(code_of([&] { greedy_decode(m, a); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("logit matrices round-trip through tensors") {
    SplitMix64 rng(9);
    LogitMatrix m = LogitMatrix::zeros(3, 4);
    for (auto& v : m.values) v = rng.uniform(-1, 1);
    for (auto& v : m.values) v = static_cast<double>(static_cast<float>(v));
    Tensor t = m.to_tensor();
    CHECK(t.dims == std::vector<std::uint32_t>{3, 4});
    LogitMatrix back = LogitMatrix::from_tensor(t);
    CHECK(back.frames == 3);
    CHECK(back.classes == 4);
    CHECK(back.values == m.values);
}
