#pragma once

#include <string>
#include <vector>

namespace frozencheck::testing {

std::string read_text(const std::string& path);
std::string fixture_path(const std::string& relative);
std::string docs_path(const std::string& relative);

/// Source of tests/fixtures/corpus/listing<n>.mrb.
std::string listing(int n);
std::string listing_path(int n);

/// Every `.mrb` file under the fixtures directory, sorted.
std::vector<std::string> all_fixture_files();

}  // namespace frozencheck::testing
