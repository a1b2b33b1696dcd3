#pragma once

#include <string>
#include <string_view>

namespace textspot {

// Decodes UTF-8; malformed sequences become U+FFFD (one replacement per
// rejected byte run, never an exception).
std::u32string utf8_decode(std::string_view s);

std::string utf8_encode(std::u32string_view s);

// Canonical composition (NFC).  Hangul syllables are handled algorithmically;
// everything else comes from tables generated from the Unicode 13.0 database.
std::u32string nfc(std::u32string_view s);

inline std::u32string nfc_utf8(std::string_view s) { return nfc(utf8_decode(s)); }

}  // namespace textspot
