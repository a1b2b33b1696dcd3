#pragma once

#include <string>
#include <vector>

#include "textspot/alphabet.hpp"
#include "textspot/tensor_io.hpp"

namespace textspot {

// Unnormalized per-frame class scores, shape [frames, classes].
struct LogitMatrix {
    int frames = 0;
    int classes = 0;
    std::vector<double> values;

    static LogitMatrix zeros(int frames, int classes);
    static LogitMatrix from_tensor(const Tensor& t);  // [T, K]
    Tensor to_tensor() const;

    double at(int t, int k) const { return values[static_cast<std::size_t>(t) * classes + k]; }
    double& at(int t, int k) { return values[static_cast<std::size_t>(t) * classes + k]; }
};

// Class indices in [1, classes); index 0 is the blank.
using LabelSequence = std::vector<int>;

struct CtcResult {
    double loss = 0.0;
    LogitMatrix grad;  // d loss / d logits, same shape as the input
};

// Fewest frames that can emit the label: length plus one separator blank per
// adjacent repeated pair.
int min_frames(const LabelSequence& label);

// Negative log-probability of the label under the standard blank-separated
// alignment model, with gradient through the per-frame softmax.  Computed in
// log space (forward-backward).  Throws InfeasibleLength when frames <
// min_frames(label) and InvalidArgument for malformed shapes or indices.
CtcResult ctc_loss(const LogitMatrix& logits, const LabelSequence& label);

// Reference implementation summing every alignment path explicitly.
// Requires classes^frames <= 10^6 (else TooLarge).  Returns +infinity when
// no path emits the label.
double ctc_loss_brute_force(const LogitMatrix& logits, const LabelSequence& label);

// Per-frame argmax (ties pick the lowest class index), collapse consecutive
// repeats, drop blanks.
LabelSequence greedy_path(const LogitMatrix& logits);
std::string greedy_decode(const LogitMatrix& logits, const Alphabet& alphabet);

// Maps UTF-8 text to class indices; throws UnknownCharacter.
LabelSequence encode_label(std::string_view text, const Alphabet& alphabet);

}  // namespace textspot
