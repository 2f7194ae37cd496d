#include "riskmix/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "riskmix/numeric.hpp"

namespace riskmix {

namespace {

using nlohmann::json;

void escape_into(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
}

json parse_json_text(const std::string& text, const char* what) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        throw Error(Errc::ParseError, std::string(what) + ": invalid JSON");
    }
    return parsed;
}

double require_number(const json& node, const char* what) {
    if (!node.is_number()) {
        throw Error(Errc::ParseError, std::string(what) + ": expected a number");
    }
    return node.get<double>();
}

}  // namespace

JsonWriter& JsonWriter::begin_object() {
    element_prefix();
    out_ += '{';
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    element_prefix();
    out_ += '[';
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
    if (!needs_comma_.empty() && needs_comma_.back()) out_ += ',';
    out_ += '"';
    escape_into(out_, name);
    out_ += "\":";
    if (!needs_comma_.empty()) needs_comma_.back() = true;
    after_key_ = true;
    return *this;
}

void JsonWriter::element_prefix() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!needs_comma_.empty()) {
        if (needs_comma_.back()) out_ += ',';
        needs_comma_.back() = true;
    }
}

JsonWriter& JsonWriter::value(double v) {
    element_prefix();
    out_ += format_real(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
    element_prefix();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    element_prefix();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    element_prefix();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    element_prefix();
    out_ += '"';
    escape_into(out_, s);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::null() {
    element_prefix();
    out_ += "null";
    return *this;
}

JsonWriter& JsonWriter::raw(std::string_view json_text) {
    element_prefix();
    out_ += json_text;
    return *this;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::ParseError, "cannot open file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

DiscreteDistribution parse_distribution_json(const std::string& text) {
    const json parsed = parse_json_text(text, "distribution");
    if (!parsed.is_object() || !parsed.contains("atoms") || !parsed["atoms"].is_array() ||
        parsed["atoms"].empty()) {
        throw Error(Errc::ParseError,
                    "distribution: expected {\"atoms\":[{\"x\":...,\"p\":...},...]}");
    }
    std::vector<Atom> atoms;
    for (const json& node : parsed["atoms"]) {
        if (!node.is_object() || !node.contains("x") || !node.contains("p")) {
            throw Error(Errc::ParseError, "distribution: atom needs \"x\" and \"p\"");
        }
        atoms.push_back({require_number(node["x"], "distribution atom x"),
                         require_number(node["p"], "distribution atom p")});
    }
    return make_discrete(std::move(atoms));
}

DiscreteDistribution parse_samples_csv(const std::string& text) {
    std::vector<double> samples;
    std::istringstream lines(text);
    std::string line;
    bool first_content = true;
    while (std::getline(lines, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        std::size_t start = 0;
        while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
        line.erase(0, start);
        if (line.empty()) continue;

        if (first_content) {
            first_content = false;
            std::string lower = line;
            for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (lower == "value") continue;  // optional header
        }
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end != line.c_str() + line.size()) {
            throw Error(Errc::ParseError, "samples: bad line \"" + line + "\"");
        }
        samples.push_back(v);
    }
    if (samples.empty()) {
        throw Error(Errc::ParseError, "samples: no values found");
    }
    return from_samples(samples);
}

DiscreteDistribution load_distribution_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_distribution_json(text);
        break;
    }
    return parse_samples_csv(text);
}

SpectralMeasure parse_spectral_json(const std::string& text) {
    const json parsed = parse_json_text(text, "spectral measure");
    if (!parsed.is_object() || !parsed.contains("points") || !parsed["points"].is_array() ||
        parsed["points"].empty()) {
        throw Error(Errc::ParseError,
                    "spectral measure: expected {\"points\":[{\"alpha\":...,\"weight\":...},...]}");
    }
    std::vector<SpectralPoint> points;
    for (const json& node : parsed["points"]) {
        if (!node.is_object() || !node.contains("alpha") || !node.contains("weight")) {
            throw Error(Errc::ParseError,
                        "spectral measure: point needs \"alpha\" and \"weight\"");
        }
        points.push_back({require_number(node["alpha"], "spectral alpha"),
                          require_number(node["weight"], "spectral weight")});
    }
    return SpectralMeasure(std::move(points));
}

SpectralMeasure load_spectral_file(const std::filesystem::path& path) {
    return parse_spectral_json(read_file(path));
}

JointScenarios parse_joint_json(const std::string& text) {
    const json parsed = parse_json_text(text, "joint scenarios");
    if (!parsed.is_object() || !parsed.contains("probs") || !parsed.contains("values") ||
        !parsed["probs"].is_array() || !parsed["values"].is_array()) {
        throw Error(Errc::ParseError,
                    "joint scenarios: expected {\"probs\":[...],\"values\":[[...],...]}");
    }
    std::vector<double> probs;
    for (const json& node : parsed["probs"]) {
        probs.push_back(require_number(node, "joint probability"));
    }
    std::vector<std::vector<double>> values;
    for (const json& row : parsed["values"]) {
        if (!row.is_array()) {
            throw Error(Errc::ParseError, "joint scenarios: value rows must be arrays");
        }
        std::vector<double> parsed_row;
        for (const json& node : row) {
            parsed_row.push_back(require_number(node, "joint value"));
        }
        values.push_back(std::move(parsed_row));
    }
    return JointScenarios(std::move(probs), std::move(values));
}

JointScenarios load_joint_file(const std::filesystem::path& path) {
    return parse_joint_json(read_file(path));
}

void write_json(JsonWriter& w, const DiscreteDistribution& d) {
    w.begin_object().key("atoms").begin_array();
    for (const Atom& a : d.atoms()) {
        w.begin_object().key("x").value(a.value).key("p").value(a.mass).end_object();
    }
    w.end_array().end_object();
}

void write_json(JsonWriter& w, const SpectralMeasure& nu) {
    w.begin_object().key("points").begin_array();
    for (const SpectralPoint& p : nu.points()) {
        w.begin_object().key("alpha").value(p.alpha).key("weight").value(p.weight).end_object();
    }
    w.end_array().end_object();
}

void write_json(JsonWriter& w, const JointScenarios& joint) {
    w.begin_object().key("probs").begin_array();
    for (double p : joint.probs()) w.value(p);
    w.end_array().key("values").begin_array();
    for (const auto& row : joint.values()) {
        w.begin_array();
        for (double v : row) w.value(v);
        w.end_array();
    }
    w.end_array().end_object();
}

void write_fields(JsonWriter& w, const DecompositionReport& report) {
    w.key("alpha").value(report.alpha);
    w.key("q_alpha").value(report.q_alpha);
    w.key("alphas").begin_array();
    for (const auto& a : report.alphas) {
        if (a.has_value()) {
            w.value(*a);
        } else {
            w.null();
        }
    }
    w.end_array();
    w.key("weighted_level_sum").value(report.weighted_level_sum);
    w.key("lhs").value(report.lhs);
    w.key("rhs").value(report.rhs);
    w.key("decomposition_residual").value(report.decomposition_residual);
}

void write_fields(JsonWriter& w, const GapReport& report) {
    w.key("alpha").value(report.alpha);
    w.key("lhs").value(report.lhs);
    w.key("rhs").value(report.rhs);
    w.key("gap").value(report.gap);
    w.key("equality_expected").value(report.equality_expected);
}

std::string to_json(const DiscreteDistribution& d) {
    JsonWriter w;
    write_json(w, d);
    return w.str();
}

std::string to_json(const DecompositionReport& report) {
    JsonWriter w;
    w.begin_object();
    write_fields(w, report);
    w.end_object();
    return w.str();
}

std::string to_json(const GapReport& report) {
    JsonWriter w;
    w.begin_object();
    write_fields(w, report);
    w.end_object();
    return w.str();
}

}  // namespace riskmix
