#include "vbsf/model_io.hpp"

#include <charconv>
#include <sstream>

#include "vbsf/common.hpp"

namespace vbsf::io {

namespace {

constexpr std::string_view kMagic = "VBSF-MODEL";
constexpr std::string_view kVersion = "v1";

template <class T>
T parse_number(const std::string& s, std::string_view section) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw FormatError("bad value '" + s + "' in model section " + std::string(section));
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw FormatError("cannot format value");
    return std::string(buf, ptr);
}

ModelWriter::ModelWriter(std::ostream& out, std::string_view kind) : out_(out) {
    out_ << kMagic << ' ' << kVersion << ' ' << kind << '\n';
}

void ModelWriter::section(std::string_view name, std::size_t count, const std::string& values) {
    out_ << prefix_ << name << ' ' << count << '\n' << values << '\n';
    if (!out_) throw IoFailure("failed writing model section " + std::string(name));
}

void ModelWriter::doubles(std::string_view name, const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += format_double(v[i]);
    }
    section(name, v.size(), s);
}

void ModelWriter::ints(std::string_view name, const std::vector<long long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    section(name, v.size(), s);
}

void ModelWriter::u64s(std::string_view name, const std::vector<std::uint64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    section(name, v.size(), s);
}

void ModelWriter::strings(std::string_view name, const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].empty() || v[i].find_first_of(" \t\r\n") != std::string::npos)
            throw FormatError("model strings must be nonempty and free of whitespace");
        if (i) s += ' ';
        s += v[i];
    }
    section(name, v.size(), s);
}

ModelReader::ModelReader(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty model file");
    {
        std::istringstream hs(line);
        std::string magic, version, extra;
        hs >> magic >> version >> kind_;
        if (magic != kMagic || version != kVersion || kind_.empty() || (hs >> extra))
            throw FormatError("bad model header: " + line);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream hs(line);
        std::string name;
        std::size_t count = 0;
        if (!(hs >> name >> count)) throw FormatError("bad model section header: " + line);
        std::string values;
        if (!std::getline(in, values)) throw FormatError("missing values for model section " + name);
        std::istringstream vs(values);
        std::vector<std::string> items;
        std::string item;
        while (vs >> item) items.push_back(item);
        if (items.size() != count) throw FormatError("model section " + name + " has the wrong value count");
        if (!sections_.emplace(name, std::move(items)).second) throw FormatError("duplicate model section " + name);
    }
}

bool ModelReader::has(std::string_view name) const {
    return sections_.find(prefix_ + std::string(name)) != sections_.end();
}

const std::vector<std::string>& ModelReader::raw(std::string_view name) const {
    auto it = sections_.find(prefix_ + std::string(name));
    if (it == sections_.end()) throw FormatError("missing model section " + prefix_ + std::string(name));
    return it->second;
}

std::vector<double> ModelReader::doubles(std::string_view name) const {
    std::vector<double> out;
    for (const auto& s : raw(name)) out.push_back(parse_number<double>(s, name));
    return out;
}

std::vector<long long> ModelReader::ints(std::string_view name) const {
    std::vector<long long> out;
    for (const auto& s : raw(name)) out.push_back(parse_number<long long>(s, name));
    return out;
}

std::vector<std::uint64_t> ModelReader::u64s(std::string_view name) const {
    std::vector<std::uint64_t> out;
    for (const auto& s : raw(name)) out.push_back(parse_number<std::uint64_t>(s, name));
    return out;
}

std::vector<std::string> ModelReader::strings(std::string_view name) const { return raw(name); }

double ModelReader::scalar(std::string_view name) const {
    auto v = doubles(name);
    if (v.size() != 1) throw FormatError("model section " + std::string(name) + " must hold one value");
    return v[0];
}

long long ModelReader::integer(std::string_view name) const {
    auto v = ints(name);
    if (v.size() != 1) throw FormatError("model section " + std::string(name) + " must hold one value");
    return v[0];
}

}  // namespace vbsf::io
