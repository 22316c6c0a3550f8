#pragma once

#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

namespace wulffsym::cli {

inline constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

/// One verdict-carrying line of a task table. NaN numeric fields are "not applicable".
struct Row {
    std::string item;
    int k = 0;  // 0: not order specific
    double p = kNone;
    double lhs = kNone;  // two-sided checks: the inequality sides
    double rhs = kNone;
    double value = kNone;
    double reference = kNone;
    double error = kNone;
    double tolerance = kNone;
    bool pass = false;
    std::string note;
};

/// Plot-ready numeric table written next to the task report.
struct DataFile {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct TaskReport {
    std::string task;
    std::vector<Row> rows;
    std::vector<DataFile> files;
    double runtime_seconds = 0.0;
    [[nodiscard]] bool pass() const;
};

struct Report {
    nlohmann::ordered_json config;
    std::vector<TaskReport> tasks;
    double runtime_seconds = 0.0;
    [[nodiscard]] bool pass() const;
};

/// 17 significant digits, '.' separator; NaN becomes the empty string.
[[nodiscard]] std::string format_number(double x);

[[nodiscard]] std::string task_csv(const TaskReport& task);
[[nodiscard]] std::string data_csv(const DataFile& file);

/// Deterministic document; runtimes appear only when `with_runtime` is set, under "summary".
[[nodiscard]] nlohmann::ordered_json report_json(const Report& report, bool with_runtime = true);

/// Writes <task>.csv, <task>_<file>.csv and/or report.json into `directory`
/// (created if needed). Returns the written paths in order.
std::vector<std::string> write_report(const Report& report, const std::string& directory,
                                      const std::vector<std::string>& formats);

/// Human-readable summary table for the terminal.
[[nodiscard]] std::string summary_text(const Report& report);

}  // namespace wulffsym::cli
