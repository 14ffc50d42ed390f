#include "arclab/field.hpp"

#include <sstream>
#include <stdexcept>

namespace arclab {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t r = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++r;
    }
    if (rest != 1) return std::nullopt;
    return std::make_pair(static_cast<std::uint32_t>(p), r);
}

namespace {

void trim(Polynomial& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over GF(p).
Polynomial poly_mod(Polynomial a, const Polynomial& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            std::uint32_t sub = lead * b[i] % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

Polynomial digits_of(std::uint64_t index, std::uint32_t p, std::uint32_t len) {
    Polynomial out(len, 0);
    for (std::uint32_t i = 0; i < len; ++i) {
        out[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
    return out;
}

std::uint32_t index_of(const Polynomial& digits, std::uint32_t p) {
    std::uint32_t idx = 0;
    for (std::size_t i = digits.size(); i-- > 0;) idx = idx * p + digits[i];
    return idx;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t out = 1;
    while (e--) out *= b;
    return out;
}

}  // namespace

bool is_irreducible(const Polynomial& poly, std::uint32_t p) {
    Polynomial f = poly;
    trim(f);
    if (f.size() < 2) return false;
    const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
    if (f.back() != 1) {
        // normalize to monic
        std::uint32_t lead = f.back(), inv = 1;
        while (lead * inv % p != 1) ++inv;
        for (auto& c : f) c = c * inv % p;
    }
    if (deg == 1) return true;
    for (std::uint32_t d = 1; d <= deg / 2; ++d) {
        const std::uint64_t count = ipow(p, d);
        for (std::uint64_t low = 0; low < count; ++low) {
            Polynomial g = digits_of(low, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

Polynomial least_irreducible(std::uint32_t p, std::uint32_t r) {
    // Index order with c_0 least significant is lexicographic on (c_{r-1}, ..., c_0).
    const std::uint64_t count = ipow(p, r);
    for (std::uint64_t low = 0; low < count; ++low) {
        Polynomial f = digits_of(low, p, r);
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

FieldSpec FieldSpec::build(std::uint32_t p, std::uint32_t r, std::optional<Polynomial> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (r == 0) throw std::invalid_argument("field degree r must be at least 1");
    std::uint64_t q64 = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q64 *= p;
        if (q64 > kMaxOrder)
            throw std::invalid_argument("field order " + std::to_string(p) + "^" + std::to_string(r) +
                                        " exceeds the table limit " + std::to_string(kMaxOrder));
    }

    FieldSpec f;
    f.p_ = p;
    f.r_ = r;
    f.q_ = static_cast<std::uint32_t>(q64);
    const std::uint32_t q = f.q_;

    if (r > 1) {
        if (modulus) {
            Polynomial m = *modulus;
            for (auto c : m)
                if (c >= p) throw std::invalid_argument("modulus coefficient out of range for GF(" + std::to_string(p) + ")");
            trim(m);
            if (m.size() != r + 1) throw std::invalid_argument("modulus has degree " + std::to_string(m.empty() ? 0 : m.size() - 1) + ", expected " + std::to_string(r));
            if (m.back() != 1) throw std::invalid_argument("modulus must be monic");
            if (!is_irreducible(m, p)) throw std::invalid_argument("modulus is reducible over GF(" + std::to_string(p) + ")");
            f.modulus_ = m;
        } else {
            f.modulus_ = least_irreducible(p, r);
        }
    } else if (modulus && !modulus->empty()) {
        Polynomial m = *modulus;
        trim(m);
        if (m.size() != 2 || m.back() != 1) throw std::invalid_argument("prime field modulus must be monic of degree 1");
    }

    f.add_.resize(std::size_t{q} * q);
    f.mul_.resize(std::size_t{q} * q);
    f.neg_.resize(q);
    f.inv_.assign(q, 0);

    std::vector<Polynomial> digits(q);
    for (std::uint32_t a = 0; a < q; ++a) digits[a] = digits_of(a, p, r);

    for (std::uint32_t a = 0; a < q; ++a) {
        Polynomial n(r);
        for (std::uint32_t i = 0; i < r; ++i) n[i] = (p - digits[a][i]) % p;
        f.neg_[a] = static_cast<std::uint16_t>(index_of(n, p));
        for (std::uint32_t b = 0; b < q; ++b) {
            Polynomial s(r);
            for (std::uint32_t i = 0; i < r; ++i) s[i] = (digits[a][i] + digits[b][i]) % p;
            f.add_[std::size_t{a} * q + b] = static_cast<std::uint16_t>(index_of(s, p));

            if (r == 1) {
                f.mul_[std::size_t{a} * q + b] = static_cast<std::uint16_t>(std::uint64_t{a} * b % p);
            } else {
                Polynomial prod(2 * r - 1, 0);
                for (std::uint32_t i = 0; i < r; ++i)
                    for (std::uint32_t j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
                Polynomial rem = poly_mod(prod, f.modulus_, p);
                rem.resize(r, 0);
                f.mul_[std::size_t{a} * q + b] = static_cast<std::uint16_t>(index_of(rem, p));
            }
        }
    }
    for (std::uint32_t a = 1; a < q; ++a) {
        for (std::uint32_t b = 1; b < q; ++b) {
            if (f.mul_[std::size_t{a} * q + b] == 1) {
                f.inv_[a] = static_cast<std::uint16_t>(b);
                break;
            }
        }
        if (f.inv_[a] == 0) throw std::logic_error("field table has no inverse for element " + std::to_string(a));
    }
    return f;
}

FieldSpec FieldSpec::of_order(std::uint64_t q) {
    auto pr = prime_power(q);
    if (!pr) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return build(pr->first, pr->second);
}

FieldElement FieldSpec::element(std::uint32_t index) const {
    if (index >= q_) throw std::out_of_range("field element index " + std::to_string(index) + " >= q = " + std::to_string(q_));
    return {index};
}

FieldElement FieldSpec::inv(FieldElement a) const {
    if (a.index == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) + ")");
    return {inv_[a.index]};
}

FieldElement FieldSpec::pow(FieldElement a, std::uint64_t e) const {
    FieldElement result = one();
    FieldElement base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::string FieldSpec::modulus_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    return os.str();
}

std::string FieldSpec::describe() const {
    std::ostringstream os;
    os << "p=" << p_ << " r=" << r_;
    if (!modulus_.empty()) os << " modulus=" << modulus_string();
    return os.str();
}

}  // namespace arclab
