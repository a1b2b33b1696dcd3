#include "textspot/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "textspot/error.hpp"
#include "textspot/rng.hpp"
#include "textspot/unicode.hpp"

namespace textspot {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCharAspect = 0.62;  // cell width / cell height
constexpr int kMaxAttempts = 1000;
constexpr double kPlacementPad = 2.0;  // pixels kept clear around every word

double char_intensity(char32_t c) {
    // Stable per-character gray level, clearly above the zero background.
    std::uint32_t h = static_cast<std::uint32_t>(c) * 2654435761u;
    return 0.35 + 0.6 * static_cast<double>(h % 997u) / 996.0;
}

Quad inflate(const Quad& q, double pad) {
    Vec2 c = quad_centroid(q);
    double min_half = std::min(norm(q[1] - q[0]), norm(q[3] - q[0])) / 2.0;
    double factor = min_half > 0.0 ? (min_half + pad) / min_half : 1.0;
    Quad out;
    for (int i = 0; i < 4; ++i) out[i] = c + factor * (q[i] - c);
    return out;
}

}  // namespace

std::vector<std::string> default_wordlist(ScriptClass s) {
    switch (s) {
    case ScriptClass::Latin:
        return {"market", "coffee", "hotel", "exit", "river", "stone"};
    case ScriptClass::Arabic:
        return {"سوق", "قهوة", "فندق", "باب"};
    case ScriptClass::Bengali:
        return {"বাজার", "নদী", "ঘর"};
    case ScriptClass::Hangul:
        return {"시장", "커피", "호텔"};
    case ScriptClass::Cjk:
        return {"市場", "咖啡", "旅館"};
    case ScriptClass::Hiragana:
        return {"みせ", "かわ", "やま"};
    case ScriptClass::Katakana:
        return {"ホテル", "コーヒー"};
    case ScriptClass::Digit:
        return {"2024", "7", "365"};
    case ScriptClass::Symbol:
        return {"!!", "&", "++"};
    }
    return {};
}

Alphabet default_alphabet() {
    std::set<char32_t> chars;
    for (int s = 0; s < kScriptClassCount; ++s)
        for (const std::string& word : default_wordlist(static_cast<ScriptClass>(s)))
            for (char32_t c : utf8_decode(word)) chars.insert(c);
    std::u32string symbols(chars.begin(), chars.end());
    return Alphabet::from_symbols(symbols);
}

void render_word(Tensor& image, const Quad& quad, std::u32string_view text,
                 std::vector<Quad>* char_quads_out) {
    require(image.dims.size() == 3, ErrorCode::ShapeMismatch,
            "image tensor must have shape [channels, height, width]");
    require(!text.empty(), ErrorCode::EmptyWord, "cannot render an empty word");
    const int h = static_cast<int>(image.dims[1]);
    const int w = static_cast<int>(image.dims[2]);
    const std::size_t n = text.size();

    for (std::size_t i = 0; i < n; ++i) {
        double t0 = static_cast<double>(i) / static_cast<double>(n);
        double t1 = static_cast<double>(i + 1) / static_cast<double>(n);
        // Equal split along the reading direction: lerp the top and bottom edges.
        Quad cell{quad[0] + t0 * (quad[1] - quad[0]), quad[0] + t1 * (quad[1] - quad[0]),
                  quad[3] + t1 * (quad[2] - quad[3]), quad[3] + t0 * (quad[2] - quad[3])};
        if (char_quads_out) char_quads_out->push_back(cell);

        double intensity = char_intensity(text[i]);
        double min_x = cell[0].x, max_x = cell[0].x, min_y = cell[0].y, max_y = cell[0].y;
        for (int k = 1; k < 4; ++k) {
            min_x = std::min(min_x, cell[k].x);
            max_x = std::max(max_x, cell[k].x);
            min_y = std::min(min_y, cell[k].y);
            max_y = std::max(max_y, cell[k].y);
        }
        int x0 = std::max(0, static_cast<int>(std::floor(min_x - 1.0)));
        int x1 = std::min(w - 1, static_cast<int>(std::ceil(max_x + 1.0)));
        int y0 = std::max(0, static_cast<int>(std::floor(min_y - 1.0)));
        int y1 = std::min(h - 1, static_cast<int>(std::ceil(max_y + 1.0)));
        for (int py = y0; py <= y1; ++py) {
            for (int px = x0; px <= x1; ++px) {
                // Pixel centers sit at half-integers, matching the sampler.
                if (point_in_quad({px + 0.5, py + 0.5}, cell))
                    image.data[static_cast<std::size_t>(py) * w + px] = intensity;
            }
        }
    }
}

Scene generate_scene(const SceneSpec& spec) {
    require(spec.width >= 16 && spec.height >= 16, ErrorCode::InvalidArgument,
            "scene must be at least 16x16 pixels");
    require(spec.word_count >= 0, ErrorCode::InvalidArgument, "word_count must be >= 0");
    require(spec.scale > 0.0, ErrorCode::InvalidArgument, "scale must be positive");
    require(spec.angle_min <= spec.angle_max && spec.angle_min > -kPi &&
                spec.angle_max <= kPi,
            ErrorCode::InvalidArgument, "angle range must be within (-pi, pi]");
    require(spec.vertical_probability >= 0.0 && spec.vertical_probability <= 1.0,
            ErrorCode::InvalidArgument, "vertical_probability must be in [0, 1]");
    require(spec.min_char_height > 0.0 && spec.min_char_height <= spec.max_char_height,
            ErrorCode::InvalidArgument, "bad character height range");

    auto wordlists = spec.wordlists;
    if (wordlists.empty()) {
        for (int s = 0; s < kScriptClassCount; ++s) {
            auto list = default_wordlist(static_cast<ScriptClass>(s));
            if (!list.empty()) wordlists[static_cast<ScriptClass>(s)] = std::move(list);
        }
    }
    std::vector<const std::vector<std::string>*> lists;
    for (const auto& [script, list] : wordlists) {
        require(!list.empty(), ErrorCode::InvalidArgument,
                "empty wordlist for " + std::string(script_name(script)));
        lists.push_back(&list);
    }
    require(spec.word_count == 0 || !lists.empty(), ErrorCode::InvalidArgument,
            "no wordlists to draw from");

    Scene scene;
    scene.requested_words = spec.word_count;
    scene.image = Tensor::zeros({1, static_cast<std::uint32_t>(spec.height),
                                 static_cast<std::uint32_t>(spec.width)});
    int grid_w = static_cast<int>(std::ceil(spec.width / spec.scale));
    int grid_h = static_cast<int>(std::ceil(spec.height / spec.scale));
    scene.geo = GeometryMap::zeros(grid_w, grid_h);

    SplitMix64 rng(spec.seed);
    for (int word_idx = 0; word_idx < spec.word_count; ++word_idx) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            const auto& list = *lists[rng.uniform_int(static_cast<int>(lists.size()))];
            const std::string& word = list[rng.uniform_int(static_cast<int>(list.size()))];
            std::u32string text = utf8_decode(word);

            bool vertical = rng.next_double() < spec.vertical_probability;
            double theta = vertical ? kPi / 2.0
                                    : rng.uniform(spec.angle_min, spec.angle_max);
            double cell_h = rng.uniform(spec.min_char_height, spec.max_char_height);
            double box_h = cell_h;
            double box_w = kCharAspect * cell_h * static_cast<double>(text.size());

            double margin = std::hypot(box_w, box_h) / 2.0 + kPlacementPad;
            if (2.0 * margin >= spec.width || 2.0 * margin >= spec.height) continue;
            Vec2 center{rng.uniform(margin, spec.width - margin),
                        rng.uniform(margin, spec.height - margin)};
            Quad quad = make_box_quad(center, box_w, box_h, theta);

            Quad padded = inflate(quad, kPlacementPad);
            bool overlaps = false;
            for (const WordAnnotation& other : scene.words) {
                if (quad_iou(padded, inflate(other.quad, kPlacementPad)) > 0.0) {
                    overlaps = true;
                    break;
                }
            }
            if (overlaps) continue;
            if (count_positive_pixels(quad, grid_w, grid_h, spec.scale, spec.shrink) < 1)
                continue;

            WordAnnotation ann;
            ann.quad = quad;
            ann.transcription = word;
            ann.script = word_script(text);
            render_word(scene.image, quad, text, &ann.char_quads);
            encode_box(scene.geo, quad, spec.scale, spec.shrink);
            scene.words.push_back(std::move(ann));
            placed = true;
        }
        if (!placed) {
            scene.placement_failed = true;
            break;
        }
    }
    return scene;
}

LogitMatrix forced_logits(std::string_view text, const Alphabet& alphabet,
                          int frames_per_char, double magnitude) {
    require(frames_per_char >= 2, ErrorCode::InvalidArgument,
            "frames_per_char must be >= 2 so repeats survive collapsing");
    require(magnitude > 0.0 && std::isfinite(magnitude), ErrorCode::InvalidArgument,
            "magnitude must be positive and finite");
    LabelSequence label = encode_label(text, alphabet);

    std::vector<int> frame_classes;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i > 0 && label[i] == label[i - 1]) frame_classes.push_back(kBlankIndex);
        frame_classes.insert(frame_classes.end(), frames_per_char, label[i]);
    }
    if (frame_classes.empty()) frame_classes.assign(frames_per_char, kBlankIndex);

    LogitMatrix m = LogitMatrix::zeros(static_cast<int>(frame_classes.size()),
                                       alphabet.size());
    for (int t = 0; t < m.frames; ++t)
        for (int k = 0; k < m.classes; ++k)
            m.at(t, k) = k == frame_classes[t] ? magnitude : -magnitude;
    return m;
}

}  // namespace textspot
