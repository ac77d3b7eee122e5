#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace cohult {

// Accumulates key/value result lines for a verification run.  Rendering is
// canonical -- keys sorted, one "key = value" per line, no timestamps -- so
// two runs with the same inputs produce byte-identical text.
class Report {
public:
    void set(const std::string& key, const std::string& value) {
        entries_[key] = value;
    }
    void set(const std::string& key, const char* value) {
        entries_[key] = value;
    }
    template <typename T>
        requires std::integral<T>
    void set(const std::string& key, T value) {
        entries_[key] = std::to_string(value);
    }

    // A named check.  Failures feed the process exit status.
    void set_pass(const std::string& key, bool ok) {
        entries_[key + ".pass"] = ok ? "true" : "false";
        if (!ok) ++failures_;
    }

    // Records the first counterexample for a named check; later ones are
    // dropped so reports stay small and stable.
    void counterexample(const std::string& key, const std::string& text) {
        entries_.emplace(key + ".counterexample", text);
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    const std::string& at(const std::string& key) const {
        return entries_.at(key);
    }
    std::uint64_t failures() const { return failures_; }
    bool all_pass() const { return failures_ == 0; }

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& [key, value] : entries_) {
            out << key << " = " << value << "\n";
        }
        return out.str();
    }

private:
    std::map<std::string, std::string> entries_;
    std::uint64_t failures_ = 0;
};

}  // namespace cohult
