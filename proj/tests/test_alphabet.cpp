#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "doctest.h"
#include "textspot/alphabet.hpp"
#include "textspot/error.hpp"

using namespace textspot;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "textspot_alphabet_test";
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a textspot::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("class indices are one-based and dense; blank owns index 0") {
    Alphabet a = Alphabet::from_symbols(U"abc");
    CHECK(a.size() == 4);
    CHECK(kBlankIndex == 0);
    CHECK(a.index_of(U'a') == 1);
    CHECK(a.index_of(U'b') == 2);
    CHECK(a.index_of(U'c') == 3);
    CHECK(a.index_of(U'z') == -1);
    CHECK(a.symbol(1) == U'a');
    CHECK(a.symbol(3) == U'c');
    CHECK(a.contains(U'b'));
    CHECK(!a.contains(U'0'));
}

TEST_CASE("duplicate and empty symbol sets are rejected") {
    CHECK(code_of([] { Alphabet::from_symbols(U"aba"); }) == ErrorCode::DuplicateSymbol);
    CHECK(code_of([] { Alphabet::from_symbols(U""); }) == ErrorCode::EmptyAlphabet);
}

TEST_CASE("alphabet size cap") {
    std::u32string many;
    for (char32_t c = 0x4E00; c < 0x4E00 + 7500; ++c) many.push_back(c);
    CHECK(Alphabet::from_symbols(many).size() == 7501);
    many.push_back(0x9FFF);
    CHECK(code_of([&] { Alphabet::from_symbols(many); }) == ErrorCode::TooLarge);
}

TEST_CASE("file line number equals class index") {
    TempDir tmp;
    auto p = tmp.path / "alpha.txt";
    write_file(p, "a\n\xC3\xA9\n\xE4\xB8\xAD\n");
    Alphabet a = read_alphabet(p);
    CHECK(a.size() == 4);
    CHECK(a.index_of(U'a') == 1);
    CHECK(a.index_of(0x00E9) == 2);
    CHECK(a.index_of(0x4E2D) == 3);
}

TEST_CASE("crlf and trailing newline variants parse identically") {
    TempDir tmp;
    auto p1 = tmp.path / "unix.txt";
    auto p2 = tmp.path / "dos.txt";
    auto p3 = tmp.path / "noeol.txt";
    write_file(p1, "x\ny\n");
    write_file(p2, "x\r\ny\r\n");
    write_file(p3, "x\ny");
    for (const auto& p : {p1, p2, p3}) {
        Alphabet a = read_alphabet(p);
        CHECK(a.size() == 3);
        CHECK(a.index_of(U'y') == 2);
    }
}

TEST_CASE("interior blank lines break the line-number contract and are rejected") {
    TempDir tmp;
    auto bad = tmp.path / "gap.txt";
    write_file(bad, "a\n\nb\n");
    CHECK(code_of([&] { read_alphabet(bad); }) == ErrorCode::MalformedLine);

    auto ok = tmp.path / "tail.txt";
    write_file(ok, "a\nb\n\n");
    CHECK(read_alphabet(ok).size() == 3);
}

TEST_CASE("multi-character lines are rejected") {
    TempDir tmp;
    auto p = tmp.path / "multi.txt";
    write_file(p, "ab\n");
    CHECK(code_of([&] { read_alphabet(p); }) == ErrorCode::MalformedLine);
}

TEST_CASE("empty file is an empty alphabet error") {
    TempDir tmp;
    auto p = tmp.path / "empty.txt";
    write_file(p, "");
    CHECK(code_of([&] { read_alphabet(p); }) == ErrorCode::EmptyAlphabet);
}

TEST_CASE("write/read round-trip preserves order") {
    TempDir tmp;
    auto p = tmp.path / "roundtrip.txt";
    Alphabet a = Alphabet::from_symbols(U"zé中가!");
    write_alphabet(a, p);
    Alphabet b = read_alphabet(p);
    CHECK(b.symbols() == a.symbols());
    CHECK(b.size() == a.size());
    CHECK(b.index_of(0xAC00) == a.index_of(0xAC00));
}
