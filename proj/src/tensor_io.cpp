#include "textspot/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

#include "textspot/error.hpp"

namespace textspot {
namespace {

constexpr char kMagic[4] = {'E', '2', 'E', 'T'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kDtypeF32 = 1;
constexpr std::size_t kReservedBytes = 10;
constexpr std::size_t kFixedHeader = 4 + 1 + 1 + 1 + kReservedBytes;  // 17

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t get_u32le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

static_assert(std::endian::native == std::endian::little,
              "float payload is written via memcpy and assumes a little-endian host");

}  // namespace

Tensor Tensor::zeros(std::vector<std::uint32_t> dims) {
    Tensor t;
    t.dims = std::move(dims);
    t.data.assign(t.numel(), 0.0);
    return t;
}

std::vector<std::uint8_t> serialize_tensor(const Tensor& t) {
    require(!t.dims.empty() && t.dims.size() <= 255, ErrorCode::InvalidArgument,
            "tensor rank must be in [1, 255]");
    for (auto d : t.dims)
        require(d > 0, ErrorCode::InvalidArgument, "tensor dimensions must be positive");
    require(t.data.size() == t.numel(), ErrorCode::ShapeMismatch,
            "tensor data size does not match dims");

    std::vector<std::uint8_t> out;
    out.reserve(kFixedHeader + 4 * t.dims.size() + 4 * t.data.size());
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    out.push_back(kDtypeF32);
    out.push_back(static_cast<std::uint8_t>(t.dims.size()));
    out.insert(out.end(), kReservedBytes, 0);
    for (auto d : t.dims) put_u32le(out, d);
    for (double v : t.data) {
        float f = static_cast<float>(v);
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        put_u32le(out, bits);
    }
    return out;
}

Tensor parse_tensor(const std::uint8_t* bytes, std::size_t size) {
    require(size >= kFixedHeader, ErrorCode::TruncatedPayload, "tensor header truncated");
    require(std::memcmp(bytes, kMagic, 4) == 0, ErrorCode::BadMagic,
            "not a tensor file (bad magic)");
    require(bytes[4] == kVersion, ErrorCode::UnsupportedVersion,
            "unsupported tensor version " + std::to_string(bytes[4]));
    require(bytes[5] == kDtypeF32, ErrorCode::UnsupportedVersion,
            "unsupported tensor dtype " + std::to_string(bytes[5]));
    std::size_t ndim = bytes[6];
    require(ndim >= 1, ErrorCode::TruncatedPayload, "tensor has no dimensions");
    for (std::size_t i = 0; i < kReservedBytes; ++i)
        require(bytes[7 + i] == 0, ErrorCode::UnsupportedVersion,
                "reserved header bytes must be zero");

    std::size_t header = kFixedHeader + 4 * ndim;
    require(size >= header, ErrorCode::TruncatedPayload, "tensor dimension list truncated");

    Tensor t;
    t.dims.resize(ndim);
    std::size_t numel = 1;
    for (std::size_t i = 0; i < ndim; ++i) {
        t.dims[i] = get_u32le(bytes + kFixedHeader + 4 * i);
        require(t.dims[i] > 0, ErrorCode::TruncatedPayload, "zero tensor dimension");
        require(numel <= std::numeric_limits<std::size_t>::max() / t.dims[i],
                ErrorCode::TooLarge, "tensor element count overflows");
        numel *= t.dims[i];
    }
    require(size == header + 4 * numel, ErrorCode::TruncatedPayload,
            size < header + 4 * numel ? "tensor payload truncated"
                                      : "trailing bytes after tensor payload");

    t.data.resize(numel);
    const std::uint8_t* p = bytes + header;
    for (std::size_t i = 0; i < numel; ++i, p += 4) {
        std::uint32_t bits = get_u32le(p);
        float f;
        std::memcpy(&f, &bits, 4);
        t.data[i] = f;
    }
    return t;
}

Tensor read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::IoFailure, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    require(!in.bad(), ErrorCode::IoFailure, "read failed for " + path.string());
    return parse_tensor(bytes.data(), bytes.size());
}

void write_tensor(const Tensor& t, const std::filesystem::path& path) {
    auto bytes = serialize_tensor(t);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    require(out.good(), ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace textspot
