#pragma once

#include <map>
#include <string>
#include <vector>

#include "textspot/alphabet.hpp"
#include "textspot/annotation.hpp"
#include "textspot/ctc.hpp"
#include "textspot/geometry.hpp"
#include "textspot/tensor_io.hpp"

namespace textspot {

struct SceneSpec {
    int width = 256;
    int height = 256;
    int word_count = 5;
    std::uint64_t seed = 1;

    // Candidate words per script; empty map selects the built-in lists.
    std::map<ScriptClass, std::vector<std::string>> wordlists;

    double angle_min = -0.5;  // radians, sampled uniformly
    double angle_max = 0.5;
    double vertical_probability = 0.0;  // exact 90-degree words
    double min_char_height = 14.0;      // pixels
    double max_char_height = 24.0;

    double scale = kDefaultScale;   // geometry grid is (width/scale, height/scale)
    double shrink = kDefaultShrink;
};

struct Scene {
    Tensor image;  // [1, height, width], background 0, glyph cells > 0
    GeometryMap geo;
    std::vector<WordAnnotation> words;
    int requested_words = 0;
    bool placement_failed = false;  // fewer words than requested
};

// Deterministic synthetic scene: same spec (including seed) gives identical
// bytes on every platform.  Words are placed by rejection sampling so that
// every accepted quad lies inside the canvas, overlaps no other word, and
// covers at least one positive geometry pixel.  After 1000 failed draws for
// a word the scene is returned short with placement_failed set.
Scene generate_scene(const SceneSpec& spec);

// Renders one word: the quad is split into equal per-character cells along
// the reading direction and each cell is filled with a constant intensity
// derived from the character alone (so a rotated copy of a word renders the
// same values).  Cell rectangles are also appended to char_quads_out when
// given.
void render_word(Tensor& image, const Quad& quad, std::u32string_view text,
                 std::vector<Quad>* char_quads_out = nullptr);

std::vector<std::string> default_wordlist(ScriptClass s);

// Every character reachable from the built-in wordlists, ordered by codepoint.
Alphabet default_alphabet();

// Logits that force a specific transcription through the greedy decoder:
// frames_per_char consecutive frames per character at +magnitude (everything
// else -magnitude), with one blank frame between repeated characters.
// frames_per_char must be at least 2 so repeats survive collapsing.
LogitMatrix forced_logits(std::string_view text, const Alphabet& alphabet,
                          int frames_per_char = 4, double magnitude = 1e3);

}  // namespace textspot
