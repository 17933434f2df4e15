#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace vbsf::io {

/// Text model files: a header line "VBSF-MODEL v1 <kind>" followed by named
/// sections, each a "<name> <count>" line and one line of whitespace-separated
/// values. Doubles use the shortest form that parses back to the same bits.
class ModelWriter {
public:
    ModelWriter(std::ostream& out, std::string_view kind);

    /// Sections written while a prefix is set are named "<prefix><name>", which
    /// lets composite models embed their parts in one file.
    void set_prefix(std::string prefix) { prefix_ = std::move(prefix); }

    void doubles(std::string_view name, const std::vector<double>& v);
    void ints(std::string_view name, const std::vector<long long>& v);
    void u64s(std::string_view name, const std::vector<std::uint64_t>& v);
    void strings(std::string_view name, const std::vector<std::string>& v);
    void scalar(std::string_view name, double v) { doubles(name, {v}); }
    void integer(std::string_view name, long long v) { ints(name, {v}); }

private:
    void section(std::string_view name, std::size_t count, const std::string& values);

    std::ostream& out_;
    std::string prefix_;
};

class ModelReader {
public:
    /// Parses the whole stream. Throws FormatError on a bad header or layout.
    explicit ModelReader(std::istream& in);

    const std::string& kind() const { return kind_; }
    void set_prefix(std::string prefix) { prefix_ = std::move(prefix); }
    bool has(std::string_view name) const;

    std::vector<double> doubles(std::string_view name) const;
    std::vector<long long> ints(std::string_view name) const;
    std::vector<std::uint64_t> u64s(std::string_view name) const;
    std::vector<std::string> strings(std::string_view name) const;
    double scalar(std::string_view name) const;
    long long integer(std::string_view name) const;

private:
    const std::vector<std::string>& raw(std::string_view name) const;

    std::string kind_;
    std::string prefix_;
    std::map<std::string, std::vector<std::string>, std::less<>> sections_;
};

std::string format_double(double v);

}  // namespace vbsf::io
