#pragma once

#include "dbn/zeros.hpp"

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dbn::cli {

enum class Format { Auto, JsonLines, Csv };

struct RunConfig {
  unsigned digits = 50;
  std::optional<double> target_tol;  // default 10^-(digits-2)
  std::optional<Rectangle> window;
  Format format = Format::Auto;
  int workers = 1;

  /// digits >= 15, workers >= 1, tolerance admissible for digits.
  void validate() const;
  PrecisionContext context() const;
};

/// "RE" or "RE,IM".
std::complex<double> parse_complex(const std::string& s);
/// "A,B,C,D" as re_min, re_max, im_min, im_max.
Rectangle parse_rect(const std::string& s);

/// Runs one subcommand. Exit code 0 on success, 1 on a failed check or
/// numerical failure, 2 on a usage or schema error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dbn::cli
