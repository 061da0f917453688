#pragma once

#include <ostream>
#include <string_view>

#include "udc/cooccur.hpp"
#include "udc/pipeline.hpp"

namespace udc {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitParse = 3,
};

// Tree dump, classes under both counting methods, both length metrics and
// the link trace for one string.
int cmd_parse(std::string_view input, const LinkPolicy& policy, std::ostream& out,
              std::ostream& err);

// summary.json, class_distribution_<method>.csv, length_distribution.tsv
int cmd_profile(const RunConfig& config, std::ostream& err);

// matrix_<op>.csv, edges_<op>.tsv, network.dot (+ normalized_<op>.csv)
int cmd_cooccur(const RunConfig& config, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace udc
