#pragma once

// CLI11 config reader for JSON files. Top-level keys set root options;
// an object under a subcommand name sets that subcommand's options:
//   {"verify": {"suite": "jacobi", "n": 4, "seed": 7}}
// Command-line flags take precedence over the file.

#include <istream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace toda::cli {

class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace toda::cli
