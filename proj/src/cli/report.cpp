#include "wulffsym/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wulffsym/error.hpp"
#include "wulffsym/version.hpp"

namespace wulffsym::cli {
namespace {

using json = nlohmann::ordered_json;

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

json number_json(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << content;
}

}  // namespace

bool TaskReport::pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

bool Report::pass() const
{
    return std::all_of(tasks.begin(), tasks.end(), [](const TaskReport& t) { return t.pass(); });
}

std::string format_number(double x)
{
    if (std::isnan(x)) {
        return "";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string task_csv(const TaskReport& task)
{
    std::ostringstream out;
    out << "task,item,k,p,lhs,rhs,value,reference,error,tolerance,pass,note\n";
    for (const Row& r : task.rows) {
        out << task.task << ',' << csv_escape(r.item) << ',' << r.k << ',' << format_number(r.p) << ','
            << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.value) << ','
            << format_number(r.reference) << ',' << format_number(r.error) << ','
            << format_number(r.tolerance) << ','
            << (r.pass ? "pass" : "fail") << ',' << csv_escape(r.note) << '\n';
    }
    return out.str();
}

std::string data_csv(const DataFile& file)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < file.columns.size(); ++i) {
        out << (i ? "," : "") << file.columns[i];
    }
    out << '\n';
    for (const auto& row : file.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

json report_json(const Report& report, bool with_runtime)
{
    json doc;
    doc["version"] = kVersion;
    doc["config"] = report.config;
    json tasks = json::array();
    for (const TaskReport& t : report.tasks) {
        json task;
        task["task"] = t.task;
        task["pass"] = t.pass();
        json rows = json::array();
        for (const Row& r : t.rows) {
            json row;
            row["item"] = r.item;
            row["k"] = r.k;
            row["p"] = number_json(r.p);
            row["lhs"] = number_json(r.lhs);
            row["rhs"] = number_json(r.rhs);
            row["value"] = number_json(r.value);
            row["reference"] = number_json(r.reference);
            row["error"] = number_json(r.error);
            row["tolerance"] = number_json(r.tolerance);
            row["pass"] = r.pass;
            row["note"] = r.note;
            rows.push_back(std::move(row));
        }
        task["rows"] = std::move(rows);
        json files = json::array();
        for (const DataFile& f : t.files) {
            files.push_back(t.task + "_" + f.name + ".csv");
        }
        task["data_files"] = std::move(files);
        tasks.push_back(std::move(task));
    }
    doc["tasks"] = std::move(tasks);
    json summary;
    summary["all_pass"] = report.pass();
    std::size_t total = 0;
    std::size_t failed = 0;
    for (const TaskReport& t : report.tasks) {
        total += t.rows.size();
        failed += static_cast<std::size_t>(
            std::count_if(t.rows.begin(), t.rows.end(), [](const Row& r) { return !r.pass; }));
    }
    summary["rows"] = total;
    summary["failed_rows"] = failed;
    if (with_runtime) {
        summary["runtime_seconds"] = report.runtime_seconds;
    }
    doc["summary"] = std::move(summary);
    return doc;
}

std::vector<std::string> write_report(const Report& report, const std::string& directory,
                                      const std::vector<std::string>& formats)
{
    namespace fs = std::filesystem;
    const fs::path dir(directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create output directory '" + directory + "': " + ec.message());
    }
    const bool csv = std::find(formats.begin(), formats.end(), "csv") != formats.end();
    const bool js = std::find(formats.begin(), formats.end(), "json") != formats.end();
    std::vector<std::string> written;
    for (const TaskReport& t : report.tasks) {
        if (csv) {
            const fs::path p = dir / (t.task + ".csv");
            write_file(p, task_csv(t));
            written.push_back(p.string());
        }
        // profile tables are plot input, emitted whatever the report format
        for (const DataFile& f : t.files) {
            const fs::path p = dir / (t.task + "_" + f.name + ".csv");
            write_file(p, data_csv(f));
            written.push_back(p.string());
        }
    }
    if (js) {
        const fs::path p = dir / "report.json";
        write_file(p, report_json(report).dump(2) + "\n");
        written.push_back(p.string());
    }
    return written;
}

std::string summary_text(const Report& report)
{
    std::ostringstream out;
    for (const TaskReport& t : report.tasks) {
        const auto failed = std::count_if(t.rows.begin(), t.rows.end(), [](const Row& r) { return !r.pass; });
        out << (t.pass() ? "PASS " : "FAIL ") << t.task << "  (" << t.rows.size() << " rows, " << failed
            << " failed)\n";
        for (const Row& r : t.rows) {
            if (!r.pass) {
                out << "    fail: " << r.item;
                if (r.k) {
                    out << " k=" << r.k;
                }
                if (std::isfinite(r.p)) {
                    out << " p=" << r.p;
                }
                out << " value=" << format_number(r.value);
                if (std::isfinite(r.reference)) {
                    out << " reference=" << format_number(r.reference);
                }
                if (!r.note.empty()) {
                    out << " (" << r.note << ")";
                }
                out << '\n';
            }
        }
    }
    out << (report.pass() ? "all checks passed" : "some checks FAILED") << '\n';
    return out.str();
}

}  // namespace wulffsym::cli
