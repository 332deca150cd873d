#include "qkd/io.hpp"

#include <cctype>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qkd {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_field(const std::string& text, const char* name, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse field '"
                         + std::string(name) + "' from \"" + text + "\"");
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<MeasuredRow> parse_measured_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    ++line_no;
    if (trim(line) != "loss_db,q_mu,e_mu,q_nu,e_nu,y0")
        throw ParseError("line 1: expected header 'loss_db,q_mu,e_mu,q_nu,e_nu,y0'");

    std::vector<MeasuredRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 6)
            throw ParseError("line " + std::to_string(line_no) + ": expected 6 fields, got "
                             + std::to_string(fields.size()));
        static constexpr const char* names[6] = {"loss_db", "q_mu", "e_mu",
                                                 "q_nu",    "e_nu", "y0"};
        double v[6];
        for (int i = 0; i < 6; ++i) v[i] = parse_field(trim(fields[i]), names[i], line_no);
        try {
            rows.emplace_back(ChannelPoint(v[0]),
                              MeasuredStats(v[1], v[2], v[3], v[4], v[5]));
        } catch (const std::invalid_argument& ex) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": "
                                        + ex.what());
        }
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_measured_table(const std::string& path,
                          const std::vector<MeasuredRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "loss_db,q_mu,e_mu,q_nu,e_nu,y0\n";
    for (const auto& [channel, stats] : rows) {
        out << format_double(channel.loss_db) << ',' << format_double(stats.q_mu)
            << ',' << format_double(stats.e_mu) << ',' << format_double(stats.q_nu)
            << ',' << format_double(stats.e_nu) << ',' << format_double(stats.y0)
            << '\n';
    }
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for digest: " + path);
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 0x100000001B3ULL;
        }
        if (!in) break;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

nlohmann::json make_manifest(const std::string& command,
                             const nlohmann::json& parameters,
                             const std::vector<std::string>& input_files) {
    nlohmann::json digests = nlohmann::json::object();
    for (const auto& f : input_files) digests[f] = file_digest(f);

    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&now));

    return nlohmann::json{{"command", command},
                          {"parameters", parameters},
                          {"input_digests", digests},
                          {"tool_version", kToolVersion},
                          {"timestamp", stamp}};
}

} // namespace qkd
