#include "isoloc/cli/record.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "isoloc/numkit/linalg.hpp"

namespace isoloc {

namespace {

using ojson = nlohmann::ordered_json;

std::string csv_cell(const ojson& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_structured()) return csv_cell(ojson(v.dump()));
    return v.dump();
}

}  // namespace

std::string version_string() {
#ifdef ISOLOC_VERSION
    return ISOLOC_VERSION;
#else
    return "dev";
#endif
}

void ExperimentRecord::add_row(const std::string& table, ojson row) {
    ojson out;
    out["table"] = table;
    for (auto& [k, v] : row.items()) out[k] = v;
    rows.push_back(std::move(out));
}

std::size_t ExperimentRecord::violations() const {
    return std::count_if(rows.begin(), rows.end(), [](const ojson& r) { return r.contains("ok") && !r["ok"].get<bool>(); });
}

std::vector<std::string> ExperimentRecord::tables() const {
    std::vector<std::string> out;
    for (const auto& r : rows) {
        const auto name = r.at("table").get<std::string>();
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    return out;
}

std::vector<ojson> ExperimentRecord::table(const std::string& name) const {
    std::vector<ojson> out;
    for (const auto& r : rows)
        if (r.at("table") == name) out.push_back(r);
    return out;
}

void write_record(const std::filesystem::path& path, const ExperimentRecord& record) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    ojson header;
    header["type"] = "header";
    header["version"] = record.version;
    header["config"] = record.config;
    out << header.dump() << "\n";
    for (const auto& r : record.rows) {
        ojson line;
        line["type"] = "row";
        for (const auto& [k, v] : r.items()) line[k] = v;
        out << line.dump() << "\n";
    }
    for (const auto& c : record.certificates) {
        ojson line;
        line["type"] = "certificate";
        for (const auto& [k, v] : c.items()) line[k] = v;
        out << line.dump() << "\n";
    }
    ojson summary;
    summary["type"] = "summary";
    summary["rows"] = record.rows.size();
    summary["certificates"] = record.certificates.size();
    summary["violations"] = record.violations();
    summary["wall_clock_s"] = record.wall_clock;
    out << summary.dump() << "\n";
}

ExperimentRecord read_record(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read record " + path.string());
    ExperimentRecord rec;
    bool header = false;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (line.empty()) continue;
        ojson j;
        try {
            j = ojson::parse(line);
        } catch (const std::exception& e) {
            throw Error("corrupt record line " + std::to_string(lineno) + ": " + e.what());
        }
        const std::string type = j.value("type", "");
        j.erase("type");
        if (type == "header") {
            header = true;
            rec.version = j.value("version", "");
            rec.config = j.value("config", ojson::object());
        } else if (type == "row") {
            if (!j.contains("table")) throw Error("corrupt record: row without table at line " + std::to_string(lineno));
            rec.rows.push_back(std::move(j));
        } else if (type == "certificate") {
            rec.certificates.push_back(std::move(j));
        } else if (type == "summary") {
            rec.wall_clock = j.value("wall_clock_s", 0.0);
            rec.stated_violations = j.value("violations", std::size_t{0});
        } else {
            throw Error("corrupt record: unknown line type at line " + std::to_string(lineno));
        }
    }
    if (!header) throw Error("corrupt record: missing header");
    return rec;
}

void write_table_csv(const std::filesystem::path& path, const std::vector<ojson>& rows) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (const auto& [k, v] : r.items())
            if (k != "table" && std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << (r.contains(cols[i]) ? csv_cell(r[cols[i]]) : "");
        out << "\n";
    }
}

void write_outputs(const std::filesystem::path& outdir, const ExperimentRecord& record) {
    std::filesystem::create_directories(outdir / "tables");
    write_record(outdir / "record.jsonl", record);
    std::ofstream(outdir / "config.json") << record.config.dump(2) << "\n";
    for (const auto& name : record.tables()) write_table_csv(outdir / "tables" / (name + ".csv"), record.table(name));
}

}  // namespace isoloc
