#pragma once

// File formats: instance files (one side per line), packing documents
// (versioned JSON) and SVG renderings.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sqdisk/packer.hpp"

namespace sqdisk {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kDocumentSchemaVersion = 1;

// Round-trip exact decimal form of a double.
std::string format_double(double x);

Instance parse_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& instance);

struct PackingDocument {
    int schema_version = kDocumentSchemaVersion;
    double container_radius = 1.0;
    double total_area = 0.0;
    std::string case_tag;
    Packing packing;
    std::size_t outside_count = 0;
    std::size_t overlap_count = 0;
    double tol = kDefaultTol;
};

PackingDocument make_document(const PackResult& result, const Instance& instance, double tol);
std::string to_json(const PackingDocument& doc);
PackingDocument parse_document(const std::string& text);

std::string to_svg(const Packing& packing, std::size_t highlight);

}  // namespace sqdisk
