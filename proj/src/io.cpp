#include "arclab/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace arclab {

std::string point_set_header(const FieldSpec& field) {
    std::ostringstream os;
    os << "q=" << field.q() << " p=" << field.p() << " r=" << field.r();
    if (field.r() > 1 && field.modulus() != least_irreducible(field.p(), field.r()))
        os << " modulus=" << field.modulus_string();
    return os.str();
}

void write_point_set(std::ostream& os, const PointSet& set) {
    os << point_set_header(set.plane().field()) << '\n';
    for (PointId id : set.ids()) {
        Point pt = set.plane().point(id);
        os << pt.x.index << ' ' << pt.y.index << '\n';
    }
}

std::string hex_bits(const PointSet& set) {
    static const char* digits = "0123456789abcdef";
    const std::uint32_t n = set.plane().num_points();
    std::string out;
    out.reserve((n + 3) / 4);
    auto words = set.words();
    for (std::uint32_t j = 0; j * 4 < n; ++j) {
        const std::uint32_t bit = j * 4;
        unsigned nibble = static_cast<unsigned>((words[bit / 64] >> (bit % 64)) & 0xF);
        out.push_back(digits[nibble]);
    }
    return out;
}

void write_point_set_hex(std::ostream& os, const PointSet& set) {
    os << point_set_header(set.plane().field()) << '\n' << "hex=" << hex_bits(set) << '\n';
}

namespace {

std::uint32_t parse_uint(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("PointSet: bad " + what + " '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("PointSet: bad " + what + " '" + s + "'");
    return static_cast<std::uint32_t>(v);
}

bool skip_line(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

PointSet read_point_set(std::istream& is) {
    std::string line;
    while (std::getline(is, line) && skip_line(line)) {
    }
    if (!is && line.empty()) throw std::invalid_argument("PointSet: missing header");

    std::map<std::string, std::string> header;
    {
        std::istringstream hs(line);
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("PointSet: malformed header token '" + tok + "'");
            header[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }
    for (const char* key : {"q", "p", "r"})
        if (!header.count(key)) throw std::invalid_argument(std::string("PointSet: header lacks ") + key);
    const std::uint32_t q = parse_uint(header["q"], "q");
    const std::uint32_t p = parse_uint(header["p"], "p");
    const std::uint32_t r = parse_uint(header["r"], "r");
    std::optional<Polynomial> modulus;
    if (header.count("modulus")) {
        Polynomial m;
        std::istringstream ms(header["modulus"]);
        std::string c;
        while (std::getline(ms, c, ',')) m.push_back(parse_uint(c, "modulus coefficient"));
        modulus = m;
    }
    FieldSpec field = FieldSpec::build(p, r, modulus);
    if (field.q() != q) throw std::invalid_argument("PointSet: header q does not equal p^r");
    PointSet set(Plane::build(field));

    while (std::getline(is, line)) {
        if (skip_line(line)) continue;
        auto start = line.find_first_not_of(" \t");
        if (line.compare(start, 4, "hex=") == 0) {
            std::string digits = line.substr(start + 4);
            while (!digits.empty() && (digits.back() == '\r' || digits.back() == ' ')) digits.pop_back();
            const std::uint32_t n = set.plane().num_points();
            if (digits.size() != (n + 3) / 4) throw std::invalid_argument("PointSet: hex length does not match q^2");
            for (std::uint32_t j = 0; j < digits.size(); ++j) {
                char ch = digits[j];
                unsigned v;
                if (ch >= '0' && ch <= '9')
                    v = static_cast<unsigned>(ch - '0');
                else if (ch >= 'a' && ch <= 'f')
                    v = static_cast<unsigned>(ch - 'a' + 10);
                else if (ch >= 'A' && ch <= 'F')
                    v = static_cast<unsigned>(ch - 'A' + 10);
                else
                    throw std::invalid_argument("PointSet: bad hex digit");
                for (unsigned b = 0; b < 4; ++b) {
                    if (!((v >> b) & 1u)) continue;
                    const std::uint32_t id = j * 4 + b;
                    if (id >= n) throw std::invalid_argument("PointSet: hex sets a bit beyond q^2");
                    set.insert(id);
                }
            }
            continue;
        }
        std::istringstream ls(line);
        std::string xs, ys, extra;
        if (!(ls >> xs >> ys) || (ls >> extra)) throw std::invalid_argument("PointSet: expected 'x y', got '" + line + "'");
        const std::uint32_t x = parse_uint(xs, "x"), y = parse_uint(ys, "y");
        if (x >= q || y >= q) throw std::invalid_argument("PointSet: coordinate out of range in '" + line + "'");
        set.insert(x * q + y);
    }
    return set;
}

PointSet read_point_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open PointSet file " + path);
    return read_point_set(in);
}

void write_point_set_file(const std::string& path, const PointSet& set, bool hex) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (hex)
        write_point_set_hex(out, set);
    else
        write_point_set(out, set);
}

}  // namespace arclab
