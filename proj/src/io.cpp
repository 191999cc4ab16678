#include "holonorm/io.hpp"

#include "holonorm/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace holonorm {

namespace {

using json = nlohmann::ordered_json;

std::string line_column(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void schema_error(const std::string& what) {
    throw Error(ErrorKind::parse_error, "curve file: " + what);
}

double number_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(where + ": missing \"" + key + "\"");
    if (!it->is_number()) schema_error(where + ": \"" + key + "\" must be a number");
    return it->get<double>();
}

int int_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(where + ": missing \"" + key + "\"");
    if (!it->is_number_integer()) schema_error(where + ": \"" + key + "\" must be an integer");
    const auto v = it->get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        schema_error(where + ": \"" + key + "\" out of range");
    return static_cast<int>(v);
}

} // namespace

LoadedCurve parse_curve(std::string_view text, double zero_tolerance) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::parse_error,
                    "malformed JSON at " + line_column(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) schema_error("top level must be an object");

    std::string label;
    if (auto it = doc.find("label"); it != doc.end()) {
        if (!it->is_string()) schema_error("\"label\" must be a string");
        label = it->get<std::string>();
    }
    auto coords_it = doc.find("coordinates");
    if (coords_it == doc.end() || !coords_it->is_array())
        schema_error("\"coordinates\" must be an array");

    struct Raw {
        double log_a;
        double arg_a;
        int m;
        std::vector<Zero> zeros;
    };
    std::vector<Raw> raw;
    for (std::size_t j = 0; j < coords_it->size(); ++j) {
        const json& c = (*coords_it)[j];
        const std::string where = "coordinates[" + std::to_string(j) + "]";
        if (!c.is_object()) schema_error(where + " must be an object");
        Raw r{number_field(c, "logA", where), 0.0, int_field(c, "m", where), {}};
        if (c.contains("argA")) r.arg_a = number_field(c, "argA", where);
        if (auto zit = c.find("zeros"); zit != c.end()) {
            if (!zit->is_array()) schema_error(where + ": \"zeros\" must be an array");
            for (std::size_t k = 0; k < zit->size(); ++k) {
                const json& z = (*zit)[k];
                const std::string zwhere = where + ".zeros[" + std::to_string(k) + "]";
                if (!z.is_object()) schema_error(zwhere + " must be an object");
                Zero zero{LogPoint(number_field(z, "t", zwhere), number_field(z, "theta", zwhere)), 1};
                if (z.contains("mult")) zero.multiplicity = int_field(z, "mult", zwhere);
                if (zero.multiplicity < 1)
                    violated_invariant(zwhere + ": multiplicity must be at least 1");
                r.zeros.push_back(zero);
            }
        }
        raw.push_back(std::move(r));
    }
    if (raw.size() < 2) violated_invariant("a curve needs at least two coordinates (n >= 1)");

    int shift = raw[0].m;
    for (const auto& r : raw) shift = std::min(shift, r.m);
    std::vector<CanonicalCoordinate> coords;
    for (auto& r : raw) coords.emplace_back(r.log_a, r.m - shift, std::move(r.zeros), r.arg_a);
    return {Curve(std::move(coords), std::move(label), zero_tolerance), shift};
}

LoadedCurve load_curve(const std::filesystem::path& path, double zero_tolerance) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io_error, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_curve(buf.str(), zero_tolerance);
}

std::string curve_to_json(const Curve& curve) {
    json doc;
    doc["label"] = curve.label();
    json coords = json::array();
    for (const auto& c : curve.coordinates()) {
        json jc;
        jc["logA"] = c.log_a();
        jc["argA"] = c.arg_a();
        jc["m"] = c.m();
        json zeros = json::array();
        for (const auto& z : c.zeros())
            zeros.push_back({{"t", z.point.t}, {"theta", z.point.theta}, {"mult", z.multiplicity}});
        jc["zeros"] = std::move(zeros);
        coords.push_back(std::move(jc));
    }
    doc["coordinates"] = std::move(coords);
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::io_error, "cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error(ErrorKind::io_error, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::io_error, "cannot rename onto " + path.string() + ": " + ec.message());
}

} // namespace holonorm
