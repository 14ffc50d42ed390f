#include "arclab/exact.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace arclab {

namespace mp = boost::multiprecision;

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return num / den;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    BigInt digits = 0;
    long scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            if (seen_point) --scale;
            seen_digit = true;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational '" + text + "'");
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') throw std::invalid_argument("malformed rational '" + text + "'");
        std::string exp_text = s.substr(pos + 1);
        if (exp_text.empty()) throw std::invalid_argument("malformed exponent in '" + text + "'");
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(exp_text, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed exponent in '" + text + "'");
        }
        if (used != exp_text.size()) throw std::invalid_argument("malformed exponent in '" + text + "'");
        scale += e;
    }
    Rational value = pow_rational(Rational(10), scale) * Rational(digits);
    return negative ? Rational(-value) : value;
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
    if (mp::denominator(v) == 1) return mp::numerator(v).str();
    return mp::numerator(v).str() + "/" + mp::denominator(v).str();
}

double to_double(const Rational& v) { return v.convert_to<double>(); }

BigInt binomial(const BigInt& n, std::uint64_t k) {
    if (n < 0 || BigInt(k) > n) return 0;
    BigInt kk = k;
    if (kk > n - kk) kk = n - kk;
    BigInt result = 1;
    for (BigInt i = 1; i <= kk; ++i) result = result * (n - kk + i) / i;
    return result;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) { return binomial(BigInt(n), k); }

BigInt floor_of(const Rational& v) {
    BigInt num = mp::numerator(v), den = mp::denominator(v);
    BigInt quo = num / den;  // truncates toward zero
    if (num < 0 && quo * den != num) --quo;
    return quo;
}

BigInt ceil_of(const Rational& v) { return -floor_of(Rational(-v)); }

BigInt floor_root(const BigInt& x, unsigned n) {
    if (x < 0) throw std::invalid_argument("floor_root of a negative number");
    if (n == 0) throw std::invalid_argument("floor_root with n = 0");
    if (n == 1 || x < 2) return x;
    unsigned bits = mp::msb(x) + 1;
    BigInt guess = BigInt(1) << ((bits + n - 1) / n);  // >= true root
    for (;;) {
        BigInt power = mp::pow(guess, n - 1);
        BigInt next = ((n - 1) * guess + x / power) / n;
        if (next >= guess) break;
        guess = next;
    }
    while (mp::pow(guess, n) > x) --guess;
    while (mp::pow(guess + 1, n) <= x) ++guess;
    return guess;
}

Rational pow_rational(const Rational& base, long exponent) {
    if (exponent == 0) return 1;
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        Rational inv = 1 / base;
        return pow_rational(inv, -exponent);
    }
    BigInt num = mp::pow(mp::numerator(base), static_cast<unsigned>(exponent));
    BigInt den = mp::pow(mp::denominator(base), static_cast<unsigned>(exponent));
    return Rational(num, den);
}

namespace {

constexpr std::uint64_t kFactorLimit = std::uint64_t{1} << 50;

// Prime factorization by trial division; bases here are plane sizes,
// triple counts and small constants.
std::map<std::uint64_t, long> factorize(const BigInt& value) {
    if (value <= 0) throw std::domain_error("factorize expects a positive integer");
    if (value > BigInt(kFactorLimit)) throw std::domain_error("radical base too large to factor: " + value.str());
    auto n = value.convert_to<std::uint64_t>();
    std::map<std::uint64_t, long> factors;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++factors[p];
            n /= p;
        }
    }
    if (n > 1) ++factors[n];
    return factors;
}

long floor_long(const Rational& v) { return floor_of(v).convert_to<long>(); }

BigInt lcm_of(const BigInt& a, const BigInt& b) { return a / mp::gcd(a, b) * b; }

}  // namespace

Term::Term(const Rational& value) : coeff_(value) {}

Term Term::power(const Rational& base, const Rational& exponent) {
    if (base <= 0) throw std::domain_error("Term::power needs a positive base");
    Term out(Rational(1));
    for (auto [p, e] : factorize(mp::numerator(base))) out.radicals_[p] += Rational(e) * exponent;
    for (auto [p, e] : factorize(mp::denominator(base))) out.radicals_[p] -= Rational(e) * exponent;
    out.normalize();
    return out;
}

void Term::normalize() {
    if (coeff_ == 0) {
        radicals_.clear();
        return;
    }
    for (auto it = radicals_.begin(); it != radicals_.end();) {
        long whole = floor_long(it->second);
        if (whole != 0) {
            coeff_ *= pow_rational(Rational(it->first), whole);
            it->second -= whole;
        }
        if (it->second == 0)
            it = radicals_.erase(it);
        else
            ++it;
    }
}

int Term::sign() const { return coeff_ > 0 ? 1 : (coeff_ < 0 ? -1 : 0); }

Term Term::operator*(const Term& o) const {
    Term out;
    out.coeff_ = coeff_ * o.coeff_;
    out.radicals_ = radicals_;
    for (const auto& [p, e] : o.radicals_) out.radicals_[p] += e;
    out.normalize();
    return out;
}

Term Term::operator/(const Term& o) const {
    if (o.is_zero()) throw std::domain_error("division by a zero term");
    Term inv;
    inv.coeff_ = 1 / o.coeff_;
    for (const auto& [p, e] : o.radicals_) inv.radicals_[p] = -e;
    inv.normalize();
    return *this * inv;
}

Term Term::operator-() const {
    Term out = *this;
    out.coeff_ = -out.coeff_;
    return out;
}

Term Term::pow(const Rational& exponent) const {
    if (mp::denominator(exponent) == 1) {
        long n = mp::numerator(exponent).convert_to<long>();
        if (n < 0 && is_zero()) throw std::domain_error("zero term to a negative power");
        Term out;
        out.coeff_ = pow_rational(coeff_, n);
        for (const auto& [p, e] : radicals_) out.radicals_[p] = e * n;
        out.normalize();
        return out;
    }
    if (coeff_ < 0) throw std::domain_error("fractional power of a negative term");
    if (coeff_ == 0) {
        if (exponent < 0) throw std::domain_error("zero term to a negative power");
        return Term(Rational(0));
    }
    Term out = power(coeff_, exponent);
    Term rest(Rational(1));
    for (const auto& [p, e] : radicals_) rest.radicals_[p] = e * exponent;
    rest.normalize();
    return out * rest;
}

std::pair<Rational, Rational> Term::enclose(unsigned bits) const {
    if (radicals_.empty()) return {coeff_, coeff_};
    // prod p^(n_p/D) = (prod p^n_p)^(1/D)
    BigInt common = 1;
    for (const auto& [p, e] : radicals_) common = lcm_of(common, mp::denominator(e));
    auto root_degree = common.convert_to<unsigned>();
    BigInt radicand = 1;
    for (const auto& [p, e] : radicals_) {
        BigInt n = mp::numerator(e) * (common / mp::denominator(e));
        radicand *= mp::pow(BigInt(p), n.convert_to<unsigned>());
    }
    BigInt scaled = radicand << (static_cast<std::size_t>(bits) * root_degree);
    BigInt r = floor_root(scaled, root_degree);
    Rational scale = Rational(BigInt(1) << bits);
    Rational lo = Rational(r) / scale;
    Rational hi = Rational(r + 1) / scale;
    if (coeff_ > 0) return {coeff_ * lo, coeff_ * hi};
    return {coeff_ * hi, coeff_ * lo};
}

double Term::approx() const {
    auto [lo, hi] = enclose(64);
    return to_double((lo + hi) / 2);
}

std::string Term::str() const {
    std::ostringstream os;
    os << to_string(coeff_);
    for (const auto& [p, e] : radicals_) os << "*" << p << "^(" << to_string(e) << ")";
    return os.str();
}

TermSum& TermSum::add(const Term& t) {
    if (t.is_zero()) return *this;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->same_radical(t)) {
            Term unit = t / Term(t.coefficient());
            Term merged = Term(it->coefficient() + t.coefficient()) * unit;
            if (merged.is_zero())
                terms_.erase(it);
            else
                *it = merged;
            return *this;
        }
    }
    terms_.push_back(t);
    return *this;
}

TermSum TermSum::operator+(const TermSum& o) const {
    TermSum out = *this;
    for (const auto& t : o.terms_) out.add(t);
    return out;
}

TermSum TermSum::operator-(const TermSum& o) const {
    TermSum out = *this;
    for (const auto& t : o.terms_) out.sub(t);
    return out;
}

TermSum TermSum::operator*(const Term& t) const {
    TermSum out;
    for (const auto& s : terms_) out.add(s * t);
    return out;
}

bool TermSum::is_rational() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.is_rational(); });
}

std::pair<Rational, Rational> TermSum::enclose(unsigned bits) const {
    Rational lo = 0, hi = 0;
    for (const auto& t : terms_) {
        auto [a, b] = t.enclose(bits);
        lo += a;
        hi += b;
    }
    return {lo, hi};
}

double TermSum::approx() const {
    auto [lo, hi] = enclose(64);
    return to_double((lo + hi) / 2);
}

std::string TermSum::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += " + ";
        out += terms_[i].str();
    }
    return out;
}

int compare(const TermSum& a, const TermSum& b) {
    TermSum diff = a - b;
    if (diff.terms().empty()) return 0;
    if (diff.is_rational()) {
        Rational v = diff.enclose(0).first;
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    for (unsigned bits = 32; bits <= (1u << 16); bits *= 2) {
        auto [lo, hi] = diff.enclose(bits);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
    }
    throw std::logic_error("compare: refinement did not separate " + diff.str());
}

BigInt floor_of(const TermSum& v) {
    if (v.is_rational()) return floor_of(v.enclose(0).first);
    for (unsigned bits = 32; bits <= (1u << 16); bits *= 2) {
        auto [lo, hi] = v.enclose(bits);
        BigInt a = floor_of(lo), b = floor_of(hi);
        if (a == b) return a;
    }
    throw std::logic_error("floor_of: refinement did not converge for " + v.str());
}

BigInt ceil_of(const TermSum& v) {
    TermSum neg;
    for (const auto& t : v.terms()) neg.add(-t);
    return -floor_of(neg);
}

std::string to_decimal(const TermSum& v, int digits) {
    unsigned bits = static_cast<unsigned>(digits * 4 + 32);
    auto [lo, hi] = v.enclose(bits);
    const Rational mid_q = (lo + hi) / 2;
    mp::cpp_bin_float_100 mid = mp::cpp_bin_float_100(mp::numerator(mid_q)) / mp::cpp_bin_float_100(mp::denominator(mid_q));
    return mid.str(digits);
}

}  // namespace arclab
