#pragma once

#include <filesystem>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace textspot {

inline constexpr int kBlankIndex = 0;
inline constexpr std::size_t kMaxAlphabetSize = 7500;

// Maps recognizable characters to dense class indices.  Index 0 is reserved
// for the CTC blank; real symbols occupy 1..size()-1.
class Alphabet {
public:
    static Alphabet from_symbols(std::u32string_view symbols);

    // Total class count including the blank.
    int size() const { return static_cast<int>(symbols_.size()) + 1; }

    // Class index of a symbol, or -1 when absent.
    int index_of(char32_t c) const {
        auto it = index_.find(c);
        return it == index_.end() ? -1 : it->second;
    }

    bool contains(char32_t c) const { return index_.count(c) != 0; }

    // Valid for idx in [1, size()).
    char32_t symbol(int idx) const { return symbols_[static_cast<std::size_t>(idx) - 1]; }

    const std::u32string& symbols() const { return symbols_; }

private:
    std::u32string symbols_;
    std::unordered_map<char32_t, int> index_;
};

// One UTF-8 character per line; line number (1-based) is the class index.
Alphabet read_alphabet(const std::filesystem::path& path);
void write_alphabet(const Alphabet& a, const std::filesystem::path& path);

}  // namespace textspot
