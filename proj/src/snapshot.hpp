#pragma once

#include <string>

#include "field.hpp"

namespace ch6 {

// Binary field snapshot: magic "CH6F", little-endian u32 version (= 1),
// u32 dim, u32 n, f64 box length, then n^dim f64 samples in row-major order.
void write_snapshot(const RealField& f, const std::string& path);
RealField read_snapshot(const std::string& path);

}  // namespace ch6
