#pragma once

#include "arclab/field.hpp"

#include <bit>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace arclab {

using PointId = std::uint32_t;
using LineId = std::uint32_t;

struct Point {
    FieldElement x, y;
    PointId id = 0;
};

/// y = m x + b (sloped) or x = c (vertical; c stored in `b`).
struct Line {
    enum class Kind { Sloped, Vertical };
    Kind kind = Kind::Sloped;
    FieldElement m, b;
    LineId id = 0;
};

/// AG(2,q): points id = x*q + y; sloped line id = m*q + b, vertical x = c
/// has id q^2 + c. Immutable after build.
class Plane {
public:
    /// Dense pair table is kept up to this order.
    static constexpr std::uint32_t kDensePairLimit = 32;

    static std::shared_ptr<const Plane> build(FieldSpec field);
    static std::shared_ptr<const Plane> of_order(std::uint64_t q) { return build(FieldSpec::of_order(q)); }

    const FieldSpec& field() const { return field_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t num_points() const { return q_ * q_; }
    std::uint32_t num_lines() const { return q_ * q_ + q_; }
    /// 64-bit words per point bit-vector.
    std::uint32_t words() const { return words_; }

    Point point(PointId id) const;
    Point point(FieldElement x, FieldElement y) const { return {x, y, x.index * q_ + y.index}; }
    Line line(LineId id) const;

    /// Points of a line, ordered by id (q entries).
    std::span<const PointId> line_points(LineId l) const {
        return {line_points_.data() + std::size_t{l} * q_, q_};
    }
    /// Lines through a point; entry j lies in parallel class j (slope j, or vertical for j = q).
    std::span<const LineId> point_lines(PointId p) const {
        return {point_lines_.data() + std::size_t{p} * (q_ + 1), q_ + 1};
    }
    /// Slope class of a line: m for sloped lines, q for verticals.
    std::uint32_t parallel_class(LineId l) const { return l < q_ * q_ ? l / q_ : q_; }

    std::span<const std::uint64_t> line_mask(LineId l) const {
        return {line_masks_.data() + std::size_t{l} * words_, words_};
    }

    /// The unique line through two distinct points.
    LineId line_through(PointId a, PointId b) const;
    bool on_line(PointId p, LineId l) const {
        return (line_masks_[std::size_t{l} * words_ + p / 64] >> (p % 64)) & 1u;
    }
    /// Throws std::invalid_argument for repeated points.
    bool collinear(PointId a, PointId b, PointId c) const;
    /// Determinant form (b - a) x (c - a) = 0, independent of the line tables.
    bool collinear_det(const Point& a, const Point& b, const Point& c) const;

private:
    explicit Plane(FieldSpec field) : field_(std::move(field)) {}
    LineId compute_line_through(PointId a, PointId b) const;

    FieldSpec field_;
    std::uint32_t q_ = 0;
    std::uint32_t words_ = 0;
    std::vector<PointId> line_points_;
    std::vector<LineId> point_lines_;
    std::vector<std::uint64_t> line_masks_;
    std::vector<std::uint16_t> pair_line_;  // triangular, empty above kDensePairLimit
};

using PlanePtr = std::shared_ptr<const Plane>;

/// Subset of the plane as a bit-vector of length q^2 with a cached size.
class PointSet {
public:
    explicit PointSet(PlanePtr plane);
    static PointSet from_ids(PlanePtr plane, std::span<const PointId> ids);
    static PointSet full(PlanePtr plane);
    /// Bit-vector words (bit i of word w is point 64w + i).
    static PointSet from_words(PlanePtr plane, std::span<const std::uint64_t> words);

    const Plane& plane() const { return *plane_; }
    const PlanePtr& plane_ptr() const { return plane_; }
    std::uint32_t q() const { return plane_->q(); }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool contains(PointId p) const { return (bits_[p / 64] >> (p % 64)) & 1u; }
    void insert(PointId p);
    void erase(PointId p);

    std::span<const std::uint64_t> words() const { return bits_; }
    std::vector<PointId> ids() const;

    /// |P ∩ line|
    std::uint32_t richness(LineId l) const;
    bool subset_of(const PointSet& other) const;
    PointSet operator|(const PointSet& other) const;
    PointSet operator-(const PointSet& other) const;

    bool operator==(const PointSet& other) const { return bits_ == other.bits_ && plane_->field() == other.plane_->field(); }

private:
    PlanePtr plane_;
    std::vector<std::uint64_t> bits_;
    std::size_t size_ = 0;
};

/// {(x, x^2)}: an arc of size q in every characteristic.
PointSet parabola(const PlanePtr& plane);
/// All points of one line.
PointSet line_set(const PlanePtr& plane, LineId l);

inline std::uint32_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::uint32_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::uint32_t>(std::popcount(a[i] & b[i]));
    return n;
}

}  // namespace arclab
