#include "textspot/unicode.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "unicode_tables.hpp"

namespace textspot {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Hangul syllable arithmetic (Unicode 3.12, Conjoining Jamo Behavior).
constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161, kTBase = 0x11A7;
constexpr int kLCount = 19, kVCount = 21, kTCount = 28;
constexpr int kNCount = kVCount * kTCount;
constexpr int kSCount = kLCount * kNCount;

int combining_class(char32_t c) {
    const auto* begin = detail::kCombining;
    const auto* end = detail::kCombining + detail::kCombiningCount;
    const auto* it = std::lower_bound(begin, end, c,
        [](const detail::CombiningEntry& e, char32_t cp) { return e.cp < cp; });
    return (it != end && it->cp == c) ? it->ccc : 0;
}

void decompose_into(char32_t c, std::u32string& out) {
    if (c >= kSBase && c < kSBase + kSCount) {
        int s = static_cast<int>(c - kSBase);
        out.push_back(kLBase + s / kNCount);
        out.push_back(kVBase + (s % kNCount) / kTCount);
        if (s % kTCount != 0) out.push_back(kTBase + s % kTCount);
        return;
    }
    const auto* begin = detail::kDecomp;
    const auto* end = detail::kDecomp + detail::kDecompCount;
    const auto* it = std::lower_bound(begin, end, c,
        [](const detail::DecompEntry& e, char32_t cp) { return e.cp < cp; });
    if (it != end && it->cp == c) {
        for (int k = 0; k < it->length; ++k)
            out.push_back(detail::kDecompPool[it->offset + k]);
    } else {
        out.push_back(c);
    }
}

std::optional<char32_t> compose_pair(char32_t a, char32_t b) {
    if (a >= kLBase && a < kLBase + kLCount && b >= kVBase && b < kVBase + kVCount) {
        int l = static_cast<int>(a - kLBase);
        int v = static_cast<int>(b - kVBase);
        return kSBase + (l * kVCount + v) * kTCount;
    }
    if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 &&
        b > kTBase && b < kTBase + kTCount) {
        return a + (b - kTBase);
    }
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 21) | b;
    const auto* begin = detail::kComposition;
    const auto* end = detail::kComposition + detail::kCompositionCount;
    const auto* it = std::lower_bound(begin, end, key,
        [](const detail::CompositionEntry& e, std::uint64_t k) { return e.key < k; });
    if (it != end && it->key == key) return it->composed;
    return std::nullopt;
}

// Stable sort of combining marks by class (canonical ordering, UAX #15).
void canonical_order(std::u32string& s) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        int cc = combining_class(s[i]);
        if (cc == 0) continue;
        std::size_t j = i;
        while (j > 0 && combining_class(s[j - 1]) > cc) {
            std::swap(s[j - 1], s[j]);
            --j;
        }
    }
}

}  // namespace

std::u32string utf8_decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        if (b < 0x80) {
            out.push_back(b);
            ++i;
            continue;
        }
        int len = 0;
        char32_t cp = 0, min_cp = 0;
        if ((b & 0xE0) == 0xC0) { len = 2; cp = b & 0x1F; min_cp = 0x80; }
        else if ((b & 0xF0) == 0xE0) { len = 3; cp = b & 0x0F; min_cp = 0x800; }
        else if ((b & 0xF8) == 0xF0) { len = 4; cp = b & 0x07; min_cp = 0x10000; }
        else { out.push_back(kReplacement); ++i; continue; }
        bool ok = i + len <= s.size();
        for (int k = 1; ok && k < len; ++k) {
            unsigned char c = static_cast<unsigned char>(s[i + k]);
            if ((c & 0xC0) != 0x80) ok = false;
            else cp = (cp << 6) | (c & 0x3F);
        }
        if (!ok || cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(kReplacement);
            ++i;  // resync on the next byte
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacement;
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::u32string nfc(std::u32string_view s) {
    std::u32string d;
    d.reserve(s.size());
    for (char32_t c : s) decompose_into(c, d);
    canonical_order(d);

    if (d.empty()) return d;
    std::u32string out;
    out.reserve(d.size());
    out.push_back(d[0]);
    // Index of the last starter in `out`, or npos while none has been seen.
    std::size_t starter = combining_class(d[0]) == 0 ? 0 : std::u32string::npos;
    int prev_cc = combining_class(d[0]);
    for (std::size_t i = 1; i < d.size(); ++i) {
        char32_t c = d[i];
        int cc = combining_class(c);
        if (starter != std::u32string::npos) {
            bool blocked = starter != out.size() - 1 && prev_cc >= cc;
            if (!blocked) {
                if (auto fused = compose_pair(out[starter], c)) {
                    out[starter] = *fused;
                    continue;
                }
            }
        }
        if (cc == 0) starter = out.size();
        out.push_back(c);
        prev_cc = cc;
    }
    return out;
}

}  // namespace textspot
