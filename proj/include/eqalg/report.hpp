#pragma once

#include <string>
#include <vector>

namespace eqa {

// Outcome of a validation: ok, plus one line per violated identity.
struct Report {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string msg)
    {
        ok = false;
        failures.push_back(std::move(msg));
    }
    void merge(const Report& o, const std::string& prefix = "")
    {
        for (const auto& f : o.failures) fail(prefix + f);
    }
    std::string summary() const
    {
        if (ok) return "pass";
        std::string s = "fail";
        for (const auto& f : failures) s += "\n  " + f;
        return s;
    }
};

}  // namespace eqa
