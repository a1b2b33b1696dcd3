#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "textspot/script.hpp"
#include "textspot/types.hpp"

namespace textspot {

// One ground-truth or predicted word region.  Line format:
//   x1,y1,x2,y2,x3,y3,x4,y4,script,transcription
// The transcription is everything after the ninth comma and may itself
// contain commas.  A transcription of "###" marks a don't-care region.
struct WordAnnotation {
    Quad quad{};
    std::optional<ScriptClass> script;  // nullopt = Unknown
    std::string transcription;          // UTF-8
    bool dont_care = false;

    // Per-character cells, populated by the synthesizer only (not serialized).
    std::vector<Quad> char_quads;
};

WordAnnotation parse_annotation_line(std::string_view line, int line_number);
std::string format_annotation_line(const WordAnnotation& w);

// Reads one annotation per non-empty line.  Corner order is normalized so the
// stored quad always has positive shoelace area (clockwise on screen).
std::vector<WordAnnotation> read_annotations(const std::filesystem::path& path);
void write_annotations(const std::vector<WordAnnotation>& words,
                       const std::filesystem::path& path);

}  // namespace textspot
