#pragma once

#include "arclab/cli/manifest.hpp"
#include "arclab/exact.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace arclab::cli {

enum class RowVerdict { AssertedPass, AssertedFail, ReportOnly, SkippedHypothesis };
std::string to_string(RowVerdict v);

struct ReportRow {
    std::string run;
    std::string quantity;
    std::string exact;
    std::string bound;
    std::string tag;
    std::string holds;  // "yes", "no" or "" when not compared
    RowVerdict verdict = RowVerdict::ReportOnly;
};

struct ReportOptions {
    Rational delta = Rational(3, 10);
};

/// Rows for every run directory; throws ManifestError on bad input.
std::vector<ReportRow> build_report(const std::vector<std::filesystem::path>& dirs, const ReportOptions& options);

std::string report_csv(const std::vector<ReportRow>& rows);
Json report_json(const std::vector<ReportRow>& rows);

}  // namespace arclab::cli
