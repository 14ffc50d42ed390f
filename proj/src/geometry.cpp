#include "arclab/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace arclab {

namespace {

std::size_t pair_index(PointId a, PointId b) {
    if (a > b) std::swap(a, b);
    return std::size_t{b} * (b - 1) / 2 + a;
}

}  // namespace

std::shared_ptr<const Plane> Plane::build(FieldSpec field) {
    std::shared_ptr<Plane> plane(new Plane(std::move(field)));
    Plane& pl = *plane;
    const FieldSpec& f = pl.field_;
    const std::uint32_t q = f.q();
    pl.q_ = q;
    const std::uint32_t n = q * q;
    const std::uint32_t lines = n + q;
    pl.words_ = (n + 63) / 64;

    pl.line_points_.resize(std::size_t{lines} * q);
    pl.point_lines_.resize(std::size_t{n} * (q + 1));
    pl.line_masks_.assign(std::size_t{lines} * pl.words_, 0);

    std::vector<std::uint32_t> fill(lines, 0);
    for (std::uint32_t x = 0; x < q; ++x) {
        for (std::uint32_t y = 0; y < q; ++y) {
            const PointId p = x * q + y;
            for (std::uint32_t m = 0; m < q; ++m) {
                // b = y - m x
                FieldElement b = f.sub(FieldElement{y}, f.mul(FieldElement{m}, FieldElement{x}));
                const LineId l = m * q + b.index;
                pl.point_lines_[std::size_t{p} * (q + 1) + m] = l;
                pl.line_points_[std::size_t{l} * q + fill[l]++] = p;
            }
            const LineId v = n + x;
            pl.point_lines_[std::size_t{p} * (q + 1) + q] = v;
            pl.line_points_[std::size_t{v} * q + fill[v]++] = p;
        }
    }
    for (LineId l = 0; l < lines; ++l) {
        if (fill[l] != q) throw std::logic_error("line " + std::to_string(l) + " does not have q points");
        auto pts = std::span<PointId>(pl.line_points_.data() + std::size_t{l} * q, q);
        std::sort(pts.begin(), pts.end());
        for (PointId p : pts) pl.line_masks_[std::size_t{l} * pl.words_ + p / 64] |= std::uint64_t{1} << (p % 64);
    }

    if (q <= kDensePairLimit) {
        pl.pair_line_.assign(std::size_t{n} * (n - 1) / 2, 0);
        for (LineId l = 0; l < lines; ++l) {
            auto pts = pl.line_points(l);
            for (std::uint32_t i = 0; i < q; ++i)
                for (std::uint32_t j = i + 1; j < q; ++j) pl.pair_line_[pair_index(pts[i], pts[j])] = static_cast<std::uint16_t>(l);
        }
    }
    return plane;
}

Point Plane::point(PointId id) const {
    if (id >= num_points()) throw std::out_of_range("point id " + std::to_string(id) + " out of range");
    return {FieldElement{id / q_}, FieldElement{id % q_}, id};
}

Line Plane::line(LineId id) const {
    if (id >= num_lines()) throw std::out_of_range("line id " + std::to_string(id) + " out of range");
    if (id < q_ * q_) return {Line::Kind::Sloped, FieldElement{id / q_}, FieldElement{id % q_}, id};
    return {Line::Kind::Vertical, FieldElement{0}, FieldElement{id - q_ * q_}, id};
}

LineId Plane::compute_line_through(PointId a, PointId b) const {
    const Point pa = point(a), pb = point(b);
    if (pa.x == pb.x) return q_ * q_ + pa.x.index;
    const FieldElement m = field_.mul(field_.sub(pb.y, pa.y), field_.inv(field_.sub(pb.x, pa.x)));
    const FieldElement c = field_.sub(pa.y, field_.mul(m, pa.x));
    return m.index * q_ + c.index;
}

LineId Plane::line_through(PointId a, PointId b) const {
    if (a == b) throw std::invalid_argument("line_through needs two distinct points");
    if (a >= num_points() || b >= num_points()) throw std::out_of_range("point id out of range");
    if (!pair_line_.empty()) return pair_line_[pair_index(a, b)];
    return compute_line_through(a, b);
}

bool Plane::collinear(PointId a, PointId b, PointId c) const {
    if (a == b || b == c || a == c) throw std::invalid_argument("collinear needs three distinct points");
    return on_line(c, line_through(a, b));
}

bool Plane::collinear_det(const Point& a, const Point& b, const Point& c) const {
    const FieldSpec& f = field_;
    FieldElement lhs = f.mul(f.sub(b.x, a.x), f.sub(c.y, a.y));
    FieldElement rhs = f.mul(f.sub(b.y, a.y), f.sub(c.x, a.x));
    return lhs == rhs;
}

PointSet::PointSet(PlanePtr plane) : plane_(std::move(plane)), bits_(plane_->words(), 0) {}

PointSet PointSet::from_ids(PlanePtr plane, std::span<const PointId> ids) {
    PointSet s(std::move(plane));
    for (PointId p : ids) s.insert(p);
    return s;
}

PointSet PointSet::full(PlanePtr plane) {
    PointSet s(std::move(plane));
    for (PointId p = 0; p < s.plane().num_points(); ++p) s.insert(p);
    return s;
}

PointSet PointSet::from_words(PlanePtr plane, std::span<const std::uint64_t> words) {
    PointSet s(std::move(plane));
    if (words.size() != s.bits_.size()) throw std::invalid_argument("bit-vector length does not match the plane");
    const std::uint32_t n = s.plane().num_points();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t word = words[w];
        if (w == words.size() - 1 && n % 64 != 0 && (word >> (n % 64)) != 0)
            throw std::invalid_argument("bit-vector has bits beyond q^2");
        s.bits_[w] = word;
        s.size_ += static_cast<std::size_t>(std::popcount(word));
    }
    return s;
}

void PointSet::insert(PointId p) {
    if (p >= plane_->num_points()) throw std::out_of_range("point id " + std::to_string(p) + " out of range");
    std::uint64_t& w = bits_[p / 64];
    const std::uint64_t bit = std::uint64_t{1} << (p % 64);
    if (!(w & bit)) {
        w |= bit;
        ++size_;
    }
}

void PointSet::erase(PointId p) {
    if (p >= plane_->num_points()) throw std::out_of_range("point id " + std::to_string(p) + " out of range");
    std::uint64_t& w = bits_[p / 64];
    const std::uint64_t bit = std::uint64_t{1} << (p % 64);
    if (w & bit) {
        w &= ~bit;
        --size_;
    }
}

std::vector<PointId> PointSet::ids() const {
    std::vector<PointId> out;
    out.reserve(size_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            out.push_back(static_cast<PointId>(w * 64 + std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

std::uint32_t PointSet::richness(LineId l) const { return popcount_and(bits_, plane_->line_mask(l)); }

bool PointSet::subset_of(const PointSet& other) const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~other.bits_[w]) return false;
    return true;
}

PointSet PointSet::operator|(const PointSet& other) const {
    std::vector<std::uint64_t> w(bits_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = bits_[i] | other.bits_[i];
    return from_words(plane_, w);
}

PointSet PointSet::operator-(const PointSet& other) const {
    std::vector<std::uint64_t> w(bits_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = bits_[i] & ~other.bits_[i];
    return from_words(plane_, w);
}

PointSet parabola(const PlanePtr& plane) {
    PointSet s(plane);
    const FieldSpec& f = plane->field();
    for (std::uint32_t x = 0; x < plane->q(); ++x) {
        FieldElement e{x};
        s.insert(plane->point(e, f.mul(e, e)).id);
    }
    return s;
}

PointSet line_set(const PlanePtr& plane, LineId l) {
    auto pts = plane->line_points(l);
    return PointSet::from_ids(plane, pts);
}

}  // namespace arclab
