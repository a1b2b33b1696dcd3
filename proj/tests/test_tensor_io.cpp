#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "doctest.h"
#include "textspot/error.hpp"
#include "textspot/tensor_io.hpp"

using namespace textspot;

namespace {

Tensor small_tensor() {
    Tensor t;
    t.dims = {2, 3};
    t.data = {0.0, 1.0, 2.5, -3.0, 0.25, 100.0};
    return t;
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

TEST_CASE("tensor header bytes are laid out exactly as documented") {
    auto bytes = serialize_tensor(small_tensor());
    REQUIRE(bytes.size() == 17 + 4 * 2 + 4 * 6);
    CHECK(bytes[0] == 'E');
    CHECK(bytes[1] == '2');
    CHECK(bytes[2] == 'E');
    CHECK(bytes[3] == 'T');
    CHECK(bytes[4] == 1);  // version
    CHECK(bytes[5] == 1);  // dtype f32
    CHECK(bytes[6] == 2);  // ndim
    for (int i = 7; i < 17; ++i) CHECK(bytes[i] == 0);
    // dims as little-endian u32
    CHECK(bytes[17] == 2);
    CHECK(bytes[18] == 0);
    CHECK(bytes[19] == 0);
    CHECK(bytes[20] == 0);
    CHECK(bytes[21] == 3);
    // first value 0.0f
    CHECK(bytes[25] == 0);
    CHECK(bytes[26] == 0);
    CHECK(bytes[27] == 0);
    CHECK(bytes[28] == 0);
    // second value 1.0f = 0x3F800000 little-endian
    CHECK(bytes[29] == 0x00);
    CHECK(bytes[30] == 0x00);
    CHECK(bytes[31] == 0x80);
    CHECK(bytes[32] == 0x3F);
}

TEST_CASE("serialize/parse round-trips float-exact values") {
    auto t = small_tensor();
    auto bytes = serialize_tensor(t);
    Tensor back = parse_tensor(bytes.data(), bytes.size());
    REQUIRE(back.dims == t.dims);
    REQUIRE(back.data.size() == t.data.size());
    for (std::size_t i = 0; i < t.data.size(); ++i) CHECK(back.data[i] == t.data[i]);
}

TEST_CASE("file round-trip through write_tensor/read_tensor") {
    auto dir = std::filesystem::temp_directory_path() / "textspot_tensor_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "t.e2et";
    auto t = small_tensor();
    write_tensor(t, path);
    Tensor back = read_tensor(path);
    CHECK(back.dims == t.dims);
    CHECK(back.data == t.data);
    std::filesystem::remove_all(dir);
}

TEST_CASE("doubles are narrowed to float32 on disk") {
    Tensor t;
    t.dims = {1};
    t.data = {0.1};  // not representable in f32
    auto bytes = serialize_tensor(t);
    Tensor back = parse_tensor(bytes.data(), bytes.size());
    CHECK(back.data[0] == doctest::Approx(0.1).epsilon(1e-7));
    CHECK(back.data[0] != 0.1);
    CHECK(back.data[0] == static_cast<double>(static_cast<float>(0.1)));
}

TEST_CASE("parse rejects malformed headers with specific codes") {
    auto good = serialize_tensor(small_tensor());

    SUBCASE("bad magic") {
        auto b = good;
        b[0] = 'X';
        CHECK(code_of([&] { parse_tensor(b.data(), b.size()); }) == ErrorCode::BadMagic);
    }
    SUBCASE("unknown version") {
        auto b = good;
        b[4] = 2;
        CHECK(code_of([&] { parse_tensor(b.data(), b.size()); }) == ErrorCode::UnsupportedVersion);
    }
    SUBCASE("unknown dtype") {
        auto b = good;
        b[5] = 7;
        CHECK(code_of([&] { parse_tensor(b.data(), b.size()); }) == ErrorCode::UnsupportedVersion);
    }
    SUBCASE("nonzero reserved byte") {
        auto b = good;
        b[10] = 1;
        CHECK(code_of([&] { parse_tensor(b.data(), b.size()); }) == ErrorCode::UnsupportedVersion);
    }
    SUBCASE("zero rank") {
        auto b = good;
        b[6] = 0;
        CHECK(code_of([&] { parse_tensor(b.data(), b.size()); }) == ErrorCode::TruncatedPayload);
    }
    SUBCASE("zero dimension") {
        auto b = good;
        b[17] = 0;  // dims[0] = 0
        CHECK(code_of([&] { parse_tensor(b.data(), b.size()); }) == ErrorCode::TruncatedPayload);
    }
    SUBCASE("truncated header") {
        CHECK(code_of([&] { parse_tensor(good.data(), 10); }) == ErrorCode::TruncatedPayload);
    }
    SUBCASE("truncated dimension list") {
        CHECK(code_of([&] { parse_tensor(good.data(), 19); }) == ErrorCode::TruncatedPayload);
    }
    SUBCASE("truncated payload") {
        CHECK(code_of([&] { parse_tensor(good.data(), good.size() - 4); }) ==
              ErrorCode::TruncatedPayload);
    }
    SUBCASE("trailing bytes") {
        auto b = good;
        b.push_back(0);
        CHECK(code_of([&] { parse_tensor(b.data(), b.size()); }) == ErrorCode::TruncatedPayload);
    }
}

TEST_CASE("serialize validates shape metadata") {
    Tensor t;
    SUBCASE("empty dims") {
        t.data = {1.0};
        CHECK(code_of([&] { serialize_tensor(t); }) == ErrorCode::InvalidArgument);
    }
    SUBCASE("zero dim") {
        t.dims = {0};
        CHECK(code_of([&] { serialize_tensor(t); }) == ErrorCode::InvalidArgument);
    }
    SUBCASE("data size mismatch") {
        t.dims = {2, 2};
        t.data = {1.0, 2.0, 3.0};
        CHECK(code_of([&] { serialize_tensor(t); }) == ErrorCode::ShapeMismatch);
    }
}

TEST_CASE("read_tensor reports missing files as IoFailure") {
    CHECK(code_of([] { read_tensor("/nonexistent/definitely/missing.e2et"); }) ==
          ErrorCode::IoFailure);
}

TEST_CASE("huge dimension product is rejected, not wrapped") {
    std::vector<std::uint8_t> b = {'E', '2', 'E', 'T', 1, 1, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        b.push_back(0xFF);
        b.push_back(0xFF);
        b.push_back(0xFF);
        b.push_back(0xFF);
    }
    CHECK(code_of([&] { parse_tensor(b.data(), b.size()); }) == ErrorCode::TooLarge);
}
