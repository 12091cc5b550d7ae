#include "kwise/family_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kwise {

namespace {

    std::string trim(const std::string& s)
    {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            return {};
        const auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    }

    template <typename T>
    bool parse_number(const std::string& s, T& value, int base = 10)
    {
        if (s.empty())
            return false;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
        return ec == std::errc{} && ptr == s.data() + s.size();
    }

} // namespace

std::string format_set(Mask m)
{
    if (m == 0)
        return "{}";
    std::string out;
    for (int e : elements_of(m)) {
        if (!out.empty())
            out += ',';
        out += std::to_string(e);
    }
    return out;
}

std::string format_hex(Mask m)
{
    std::ostringstream s;
    s << "0x" << std::hex << m;
    return s.str();
}

Mask parse_set(const std::string& text, const Universe& u)
{
    std::string s = trim(text);
    if (s.size() > 2 && (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)) {
        Mask m = 0;
        if (!parse_number(s.substr(2), m, 16))
            throw FormatError("bad hex mask: " + s);
        if (!u.valid(m))
            throw FormatError("mask " + s + " outside universe");
        return m;
    }
    if (s.size() >= 2 && s.front() == '{' && s.back() == '}')
        s = trim(s.substr(1, s.size() - 2));
    if (s.empty())
        return 0;

    Mask m = 0;
    int previous = 0;
    std::istringstream items(s);
    std::string item;
    while (std::getline(items, item, ',')) {
        int e = 0;
        if (!parse_number(trim(item), e))
            throw FormatError("bad element '" + item + "' in: " + text);
        if (e < 1 || e > u.size())
            throw FormatError("element " + std::to_string(e) + " outside [1," + std::to_string(u.size()) + "]");
        if (e <= previous)
            throw FormatError("elements must be strictly ascending: " + text);
        previous = e;
        m |= element_bit(e);
    }
    return m;
}

Family read_family(std::istream& in)
{
    std::string line;
    std::optional<Universe> universe;
    std::vector<Mask> members;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty() || s.front() == '#')
            continue;
        try {
            if (!universe) {
                int n = 0;
                if (s.rfind("n=", 0) != 0 || !parse_number(trim(s.substr(2)), n))
                    throw FormatError("expected header n=<int>");
                try {
                    universe.emplace(n);
                }
                catch (const std::invalid_argument& e) {
                    throw FormatError(e.what());
                }
                continue;
            }
            members.push_back(parse_set(s, *universe));
        }
        catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!universe)
        throw FormatError("missing header n=<int>");
    return Family(*universe, std::move(members));
}

void write_family(std::ostream& out, const Family& f)
{
    out << "n=" << f.universe().size() << '\n';
    for (Mask m : f)
        out << format_set(m) << '\n';
}

Family read_family_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_family(in);
}

void write_family_file(const std::string& path, const Family& f)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_family(out, f);
}

} // namespace kwise
