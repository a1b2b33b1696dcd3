#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace textspot {

// Dense row-major float tensor.  Values are held as double in memory and
// serialized as little-endian float32.
struct Tensor {
    std::vector<std::uint32_t> dims;
    std::vector<double> data;

    static Tensor zeros(std::vector<std::uint32_t> dims);

    std::size_t numel() const {
        std::size_t n = 1;
        for (auto d : dims) n *= d;
        return n;
    }
};

// Binary layout (all integers little-endian):
//   bytes 0..3   magic "E2ET"
//   byte  4      version (1)
//   byte  5      dtype (1 = float32)
//   byte  6      ndim
//   bytes 7..16  reserved, must be zero
//   then ndim  u32 dimension sizes
//   then prod(dims) float32 values, row-major
Tensor read_tensor(const std::filesystem::path& path);
void write_tensor(const Tensor& t, const std::filesystem::path& path);

std::vector<std::uint8_t> serialize_tensor(const Tensor& t);
Tensor parse_tensor(const std::uint8_t* bytes, std::size_t size);

}  // namespace textspot
