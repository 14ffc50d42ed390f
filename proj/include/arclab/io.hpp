#pragma once

#include "arclab/geometry.hpp"

#include <iosfwd>
#include <string>

namespace arclab {

/// Header line shared by both PointSet encodings: "q=<q> p=<p> r=<r>",
/// with a trailing "modulus=c0,...,cr" only for a non-default modulus.
std::string point_set_header(const FieldSpec& field);

/// One "x y" pair of canonical element indices per line.
void write_point_set(std::ostream& os, const PointSet& set);
/// Single "hex=<digits>" line; digit j holds points 4j..4j+3, lowest id in the lowest bit.
void write_point_set_hex(std::ostream& os, const PointSet& set);

std::string hex_bits(const PointSet& set);

/// Reads either encoding. Throws std::invalid_argument on malformed input.
PointSet read_point_set(std::istream& is);
PointSet read_point_set_file(const std::string& path);
void write_point_set_file(const std::string& path, const PointSet& set, bool hex = false);

}  // namespace arclab
