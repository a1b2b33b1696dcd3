#include "textspot/alphabet.hpp"

#include <fstream>

#include "textspot/error.hpp"
#include "textspot/unicode.hpp"

namespace textspot {

Alphabet Alphabet::from_symbols(std::u32string_view symbols) {
    require(!symbols.empty(), ErrorCode::EmptyAlphabet, "alphabet has no symbols");
    require(symbols.size() <= kMaxAlphabetSize, ErrorCode::TooLarge,
            "alphabet exceeds " + std::to_string(kMaxAlphabetSize) + " symbols");
    Alphabet a;
    a.symbols_.assign(symbols.begin(), symbols.end());
    a.index_.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        auto [it, inserted] = a.index_.emplace(symbols[i], static_cast<int>(i) + 1);
        require(inserted, ErrorCode::DuplicateSymbol,
                "duplicate alphabet symbol at line " + std::to_string(i + 1));
    }
    return a;
}

Alphabet read_alphabet(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::IoFailure, "cannot open " + path.string());

    std::u32string symbols;
    std::string line;
    int line_number = 0;
    int pending_blank = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // Class index equals line number, so blank lines are only legal at
        // the end of the file.
        if (line.empty()) {
            pending_blank = line_number;
            continue;
        }
        require(pending_blank == 0, ErrorCode::MalformedLine,
                path.string() + ":" + std::to_string(pending_blank) + ": blank alphabet line");
        std::u32string cps = utf8_decode(line);
        require(cps.size() == 1, ErrorCode::MalformedLine,
                path.string() + ":" + std::to_string(line_number) +
                    ": expected exactly one character per line");
        symbols.push_back(cps[0]);
    }
    require(!in.bad(), ErrorCode::IoFailure, "read failed for " + path.string());
    return Alphabet::from_symbols(symbols);
}

void write_alphabet(const Alphabet& a, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    for (char32_t c : a.symbols()) out << utf8_encode(std::u32string_view(&c, 1)) << '\n';
    out.flush();
    require(out.good(), ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace textspot
