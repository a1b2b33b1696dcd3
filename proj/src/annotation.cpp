#include "textspot/annotation.hpp"

#include <charconv>
#include <fstream>

#include "textspot/error.hpp"

namespace textspot {
namespace {

constexpr std::string_view kDontCare = "###";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_coord(std::string_view field, int line_number) {
    field = trim(field);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    require(ec == std::errc() && ptr == field.data() + field.size(), ErrorCode::MalformedLine,
            "line " + std::to_string(line_number) + ": bad coordinate '" +
                std::string(field) + "'");
    return v;
}

void append_coord(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

WordAnnotation parse_annotation_line(std::string_view line, int line_number) {
    // Nine comma-separated fields, then the transcription (commas allowed).
    std::array<std::string_view, 9> fields;
    std::string_view rest = line;
    for (int i = 0; i < 9; ++i) {
        std::size_t comma = rest.find(',');
        require(comma != std::string_view::npos, ErrorCode::MalformedLine,
                "line " + std::to_string(line_number) + ": expected 9 commas");
        fields[i] = rest.substr(0, comma);
        rest.remove_prefix(comma + 1);
    }

    WordAnnotation w;
    for (int i = 0; i < 4; ++i) {
        w.quad[i].x = parse_coord(fields[2 * i], line_number);
        w.quad[i].y = parse_coord(fields[2 * i + 1], line_number);
    }
    try {
        w.script = parse_script_token(trim(fields[8]));
    } catch (const Error& e) {
        fail(ErrorCode::UnknownScript,
             "line " + std::to_string(line_number) + ": " + e.what());
    }
    w.transcription = std::string(rest);
    w.dont_care = w.transcription == kDontCare;

    // Store corners clockwise on screen (positive shoelace area with y down),
    // keeping the first corner in place.
    if (signed_area(w.quad) < 0.0) {
        std::swap(w.quad[1], w.quad[3]);
    }
    return w;
}

std::string format_annotation_line(const WordAnnotation& w) {
    std::string out;
    for (int i = 0; i < 4; ++i) {
        append_coord(out, w.quad[i].x);
        out.push_back(',');
        append_coord(out, w.quad[i].y);
        out.push_back(',');
    }
    out += w.script ? script_name(*w.script) : std::string_view("Unknown");
    out.push_back(',');
    out += w.dont_care ? std::string(kDontCare) : w.transcription;
    return out;
}

std::vector<WordAnnotation> read_annotations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::IoFailure, "cannot open " + path.string());

    std::vector<WordAnnotation> words;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        // Tolerate a UTF-8 byte-order mark on the first line.
        if (line_number == 1 && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' &&
            line[2] == '\xBF') {
            line.erase(0, 3);
            if (line.empty()) continue;
        }
        words.push_back(parse_annotation_line(line, line_number));
    }
    require(!in.bad(), ErrorCode::IoFailure, "read failed for " + path.string());
    return words;
}

void write_annotations(const std::vector<WordAnnotation>& words,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    for (const auto& w : words) out << format_annotation_line(w) << '\n';
    out.flush();
    require(out.good(), ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace textspot
