#include "textspot/ctc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "textspot/error.hpp"
#include "textspot/unicode.hpp"

namespace textspot {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lse2(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

void validate_logits(const LogitMatrix& logits) {
    require(logits.frames >= 1, ErrorCode::InvalidArgument, "need at least one frame");
    require(logits.classes >= 2, ErrorCode::InvalidArgument,
            "need at least two classes (blank plus one symbol)");
    require(logits.values.size() ==
                static_cast<std::size_t>(logits.frames) * logits.classes,
            ErrorCode::ShapeMismatch, "logit buffer does not match frames*classes");
    for (double v : logits.values)
        require(std::isfinite(v), ErrorCode::InvalidArgument, "logits must be finite");
}

void validate_label(const LabelSequence& label, int classes) {
    for (int l : label)
        require(l >= 1 && l < classes, ErrorCode::InvalidArgument,
                "label index " + std::to_string(l) + " out of range [1, " +
                    std::to_string(classes) + ")");
}

// Row-major [T, K] log-softmax.
std::vector<double> log_probs(const LogitMatrix& logits) {
    std::vector<double> lp(logits.values.size());
    for (int t = 0; t < logits.frames; ++t) {
        const double* row = logits.values.data() + static_cast<std::size_t>(t) * logits.classes;
        double* out = lp.data() + static_cast<std::size_t>(t) * logits.classes;
        double m = row[0];
        for (int k = 1; k < logits.classes; ++k) m = std::max(m, row[k]);
        double sum = 0.0;
        for (int k = 0; k < logits.classes; ++k) sum += std::exp(row[k] - m);
        double log_z = m + std::log(sum);
        for (int k = 0; k < logits.classes; ++k) out[k] = row[k] - log_z;
    }
    return lp;
}

}  // namespace

LogitMatrix LogitMatrix::zeros(int frames, int classes) {
    require(frames >= 1 && classes >= 1, ErrorCode::InvalidArgument,
            "logit matrix dimensions must be positive");
    LogitMatrix m;
    m.frames = frames;
    m.classes = classes;
    m.values.assign(static_cast<std::size_t>(frames) * classes, 0.0);
    return m;
}

LogitMatrix LogitMatrix::from_tensor(const Tensor& t) {
    require(t.dims.size() == 2, ErrorCode::ShapeMismatch,
            "logit tensor must have shape [frames, classes]");
    LogitMatrix m;
    m.frames = static_cast<int>(t.dims[0]);
    m.classes = static_cast<int>(t.dims[1]);
    m.values = t.data;
    return m;
}

Tensor LogitMatrix::to_tensor() const {
    Tensor t;
    t.dims = {static_cast<std::uint32_t>(frames), static_cast<std::uint32_t>(classes)};
    t.data = values;
    return t;
}

int min_frames(const LabelSequence& label) {
    int n = static_cast<int>(label.size());
    for (std::size_t i = 1; i < label.size(); ++i)
        if (label[i] == label[i - 1]) ++n;
    return n;
}

CtcResult ctc_loss(const LogitMatrix& logits, const LabelSequence& label) {
    validate_logits(logits);
    validate_label(label, logits.classes);
    require(logits.frames >= min_frames(label), ErrorCode::InfeasibleLength,
            "label needs at least " + std::to_string(min_frames(label)) + " frames, got " +
                std::to_string(logits.frames));

    const int T = logits.frames;
    const int K = logits.classes;
    const int L = static_cast<int>(label.size());
    const int S = 2 * L + 1;

    // Blank-extended label: blank, l1, blank, l2, ..., blank.
    std::vector<int> ext(S, kBlankIndex);
    for (int i = 0; i < L; ++i) ext[2 * i + 1] = label[i];

    std::vector<double> lp = log_probs(logits);
    auto lpat = [&](int t, int k) { return lp[static_cast<std::size_t>(t) * K + k]; };

    std::vector<double> alpha(static_cast<std::size_t>(T) * S, kNegInf);
    std::vector<double> beta(static_cast<std::size_t>(T) * S, kNegInf);
    auto a = [&](int t, int s) -> double& { return alpha[static_cast<std::size_t>(t) * S + s]; };
    auto b = [&](int t, int s) -> double& { return beta[static_cast<std::size_t>(t) * S + s]; };

    a(0, 0) = lpat(0, ext[0]);
    if (S > 1) a(0, 1) = lpat(0, ext[1]);
    for (int t = 1; t < T; ++t) {
        for (int s = 0; s < S; ++s) {
            double v = a(t - 1, s);
            if (s >= 1) v = lse2(v, a(t - 1, s - 1));
            if (s >= 2 && ext[s] != kBlankIndex && ext[s] != ext[s - 2])
                v = lse2(v, a(t - 1, s - 2));
            if (v != kNegInf) a(t, s) = v + lpat(t, ext[s]);
        }
    }

    // beta includes the emission at its own frame, so alpha+beta double-counts
    // exactly one emission term per state.
    b(T - 1, S - 1) = lpat(T - 1, ext[S - 1]);
    if (S > 1) b(T - 1, S - 2) = lpat(T - 1, ext[S - 2]);
    for (int t = T - 2; t >= 0; --t) {
        for (int s = S - 1; s >= 0; --s) {
            double v = b(t + 1, s);
            if (s + 1 < S) v = lse2(v, b(t + 1, s + 1));
            if (s + 2 < S && ext[s + 2] != kBlankIndex && ext[s + 2] != ext[s])
                v = lse2(v, b(t + 1, s + 2));
            if (v != kNegInf) b(t, s) = v + lpat(t, ext[s]);
        }
    }

    double log_p = a(T - 1, S - 1);
    if (S > 1) log_p = lse2(log_p, a(T - 1, S - 2));

    CtcResult result;
    result.loss = -log_p;
    result.grad = LogitMatrix::zeros(T, K);
    for (int t = 0; t < T; ++t) {
        for (int k = 0; k < K; ++k) result.grad.at(t, k) = std::exp(lpat(t, k));
        for (int s = 0; s < S; ++s) {
            double occ = a(t, s) + b(t, s) - lpat(t, ext[s]) - log_p;
            if (occ != kNegInf && !std::isnan(occ))
                result.grad.at(t, ext[s]) -= std::exp(occ);
        }
    }
    return result;
}

double ctc_loss_brute_force(const LogitMatrix& logits, const LabelSequence& label) {
    validate_logits(logits);
    validate_label(label, logits.classes);
    const int T = logits.frames;
    const int K = logits.classes;
    require(std::pow(static_cast<double>(K), static_cast<double>(T)) <= 1e6,
            ErrorCode::TooLarge, "path enumeration needs classes^frames <= 1e6");

    std::vector<double> lp = log_probs(logits);
    auto lpat = [&](int t, int k) { return lp[static_cast<std::size_t>(t) * K + k]; };

    std::vector<int> path(T, 0);
    LabelSequence collapsed;
    double total = kNegInf;
    while (true) {
        collapsed.clear();
        int prev = -1;
        double lp_path = 0.0;
        for (int t = 0; t < T; ++t) {
            int c = path[t];
            if (c != prev && c != kBlankIndex) collapsed.push_back(c);
            prev = c;
            lp_path += lpat(t, c);
        }
        if (collapsed == label) total = lse2(total, lp_path);

        int i = T - 1;
        while (i >= 0 && ++path[i] == K) path[i--] = 0;
        if (i < 0) break;
    }
    return -total;  // +inf when no path produces the label
}

LabelSequence greedy_path(const LogitMatrix& logits) {
    validate_logits(logits);
    LabelSequence out;
    int prev = -1;
    for (int t = 0; t < logits.frames; ++t) {
        int best = 0;
        for (int k = 1; k < logits.classes; ++k)
            if (logits.at(t, k) > logits.at(t, best)) best = k;
        if (best != prev && best != kBlankIndex) out.push_back(best);
        prev = best;
    }
    return out;
}

std::string greedy_decode(const LogitMatrix& logits, const Alphabet& alphabet) {
    require(logits.classes == alphabet.size(), ErrorCode::ShapeMismatch,
            "logit classes (" + std::to_string(logits.classes) +
                ") do not match alphabet size (" + std::to_string(alphabet.size()) + ")");
    std::u32string text;
    for (int idx : greedy_path(logits)) text.push_back(alphabet.symbol(idx));
    return utf8_encode(text);
}

LabelSequence encode_label(std::string_view text, const Alphabet& alphabet) {
    LabelSequence out;
    for (char32_t c : nfc_utf8(text)) {
        int idx = alphabet.index_of(c);
        if (idx <= 0) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(c));
            fail(ErrorCode::UnknownCharacter,
                 std::string("character ") + buf + " is not in the alphabet");
        }
        out.push_back(idx);
    }
    return out;
}

}  // namespace textspot
