#include "support/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace frozencheck::testing {

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture_path(const std::string& relative) { return std::string(FROZENCHECK_FIXTURE_DIR) + "/" + relative; }

std::string docs_path(const std::string& relative) { return std::string(FROZENCHECK_DOCS_DIR) + "/" + relative; }

std::string listing_path(int n) { return fixture_path("corpus/listing" + std::to_string(n) + ".mrb"); }

std::string listing(int n) { return read_text(listing_path(n)); }

std::vector<std::string> all_fixture_files() {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(FROZENCHECK_FIXTURE_DIR)) {
        if (entry.is_regular_file() && entry.path().extension() == ".mrb") out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace frozencheck::testing
