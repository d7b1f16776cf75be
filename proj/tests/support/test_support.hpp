#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "claimcheck/gateway.hpp"

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(CLAIMCHECK_FIXTURES) / name;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("claimcheck-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

/// NLI predictor that returns the same triple for every pair and records premises.
class FixedNli final : public claimcheck::NliPredictor {
public:
    explicit FixedNli(claimcheck::NliScores scores) : scores_(scores) {}
    std::string id() const override { return "fixed"; }
    std::vector<claimcheck::NliScores> predict(std::span<const claimcheck::NliPair> pairs) const override {
        for (const auto& p : pairs) {
            premises.push_back(p.premise);
        }
        return std::vector<claimcheck::NliScores>(pairs.size(), scores_);
    }
    mutable std::vector<std::string> premises;

private:
    claimcheck::NliScores scores_;
};

} // namespace testing_support
