#include "sqdisk/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace sqdisk {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Instance parse_instance(std::istream& in) {
    Instance inst;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size()) {
            throw ParseError("line " + std::to_string(lineno) + ": not a number: " + t);
        }
        if (!std::isfinite(v) || v <= 0.0) {
            throw InputError("line " + std::to_string(lineno) + ": side must be positive and finite");
        }
        inst.sides.push_back(v);
    }
    return inst;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
    for (double s : instance.sides) out << format_double(s) << '\n';
}

PackingDocument make_document(const PackResult& result, const Instance& instance, double tol) {
    PackingDocument doc;
    doc.total_area = instance.total_area();
    doc.case_tag = to_string(result.case_tag);
    doc.packing = result.packing;
    doc.tol = tol;
    const ValidationReport rep = validate(result.packing, tol);
    doc.outside_count = rep.outside.size();
    doc.overlap_count = rep.overlaps.size();
    return doc;
}

std::string to_json(const PackingDocument& doc) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema_version\": " << doc.schema_version << ",\n";
    os << "  \"container\": {\"radius\": " << format_double(doc.container_radius) << "},\n";
    os << "  \"total_area\": " << format_double(doc.total_area) << ",\n";
    os << "  \"case_tag\": \"" << doc.case_tag << "\",\n";
    os << "  \"placements\": [";
    const auto& ps = doc.packing.placements;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        os << (i == 0 ? "\n" : ",\n");
        os << "    {\"x\": " << format_double(ps[i].x) << ", \"y\": " << format_double(ps[i].y)
           << ", \"side\": " << format_double(ps[i].side) << "}";
    }
    os << (ps.empty() ? "],\n" : "\n  ],\n");
    os << "  \"validation\": {\"tol\": " << format_double(doc.tol) << ", \"outside\": " << doc.outside_count
       << ", \"overlaps\": " << doc.overlap_count << ", \"valid\": "
       << (doc.outside_count == 0 && doc.overlap_count == 0 ? "true" : "false") << "}\n";
    os << "}\n";
    return os.str();
}

PackingDocument parse_document(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    try {
        PackingDocument doc;
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != kDocumentSchemaVersion) {
            throw ParseError("unsupported schema version " + std::to_string(doc.schema_version));
        }
        doc.container_radius = j.at("container").at("radius").get<double>();
        doc.total_area = j.value("total_area", 0.0);
        doc.case_tag = j.value("case_tag", std::string());
        for (const auto& p : j.at("placements")) {
            doc.packing.placements.push_back({p.at("x").get<double>(), p.at("y").get<double>(), p.at("side").get<double>()});
        }
        doc.packing.container_radius = doc.container_radius;
        if (j.contains("validation")) {
            const auto& v = j.at("validation");
            doc.tol = v.value("tol", kDefaultTol);
            doc.outside_count = v.value("outside", std::size_t{0});
            doc.overlap_count = v.value("overlaps", std::size_t{0});
        }
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

std::string to_svg(const Packing& packing, std::size_t highlight) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"800\" height=\"800\">\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
    for (std::size_t i = 0; i < packing.placements.size(); ++i) {
        const PlacedSquare& p = packing.placements[i];
        const char* fill = i == highlight ? "#9a9a9a" : "#dce8f5";
        os << "<rect x=\"" << format_double(p.x) << "\" y=\"" << format_double(p.y) << "\" width=\""
           << format_double(p.side) << "\" height=\"" << format_double(p.side) << "\" fill=\"" << fill
           << "\" stroke=\"#234\" stroke-width=\"0.002\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace sqdisk
