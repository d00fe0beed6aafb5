#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msm::cli {

/// Runs one `msm` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 when a validation or computation fails and 2
/// on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `x` rounded to 12 significant digits, as printed in every report.
std::string format_number(double x);
double round_significant(double x);

}  // namespace msm::cli
